#include "qctl/mc_structure.hpp"

#include "qctl/word_automata.hpp"
#include "scc.hpp"

namespace qctl {

namespace {

std::vector<bool> prop_values(const cks& k, const std::string& p, const valuation& env) {
  if (auto it = env.find(p); it != env.end()) return it->second;
  if (!k.knows(p)) throw model_error("proposition '" + p + "' is neither quantified nor an atom of the model");
  std::vector<bool> v(k.num_states());
  for (int s = 0; s < k.num_states(); ++s) v[s] = k.holds(s, p);
  return v;
}

std::vector<bool> pre_exists(const cks& k, const std::vector<bool>& target) {
  std::vector<bool> v(k.num_states(), false);
  for (int s = 0; s < k.num_states(); ++s)
    for (int t : k.succ[s])
      if (target[t]) v[s] = true;
  return v;
}

// Least fixpoint of Z = b ∨ (a ∧ EX Z).
std::vector<bool> until_fix(const cks& k, const std::vector<bool>& a, const std::vector<bool>& b) {
  std::vector<bool> z = b;
  for (bool changed = true; changed;) {
    changed = false;
    auto pre = pre_exists(k, z);
    for (int s = 0; s < k.num_states(); ++s)
      if (!z[s] && a[s] && pre[s]) z[s] = changed = true;
  }
  return z;
}

// Greatest fixpoint of Z = ¬b ∧ (¬a ∨ EX Z): some path avoids a U b.
std::vector<bool> not_until_fix(const cks& k, const std::vector<bool>& a, const std::vector<bool>& b) {
  std::vector<bool> z(k.num_states());
  for (int s = 0; s < k.num_states(); ++s) z[s] = !b[s];
  for (bool changed = true; changed;) {
    changed = false;
    auto pre = pre_exists(k, z);
    for (int s = 0; s < k.num_states(); ++s)
      if (z[s] && !(!a[s] || pre[s])) {
        z[s] = false;
        changed = true;
      }
  }
  return z;
}

std::vector<bool> negate(std::vector<bool> v) {
  v.flip();
  return v;
}

std::vector<bool> eval_exists_path(const cks& k, const formula_ptr& f, const valuation& env);

std::vector<bool> eval(const cks& k, const formula_ptr& f, const valuation& env) {
  const int ns = k.num_states();
  switch (f->kind) {
    case op::tt:
      return std::vector<bool>(ns, true);
    case op::prop:
      return prop_values(k, f->name, env);
    case op::neg:
      return negate(eval(k, f->lhs, env));
    case op::disj:
    case op::conj: {
      auto a = eval(k, f->lhs, env);
      auto b = eval(k, f->rhs, env);
      for (int s = 0; s < ns; ++s) a[s] = f->kind == op::disj ? (a[s] || b[s]) : (a[s] && b[s]);
      return a;
    }
    case op::exists_path:
      return eval_exists_path(k, f, env);
    case op::exists_prop: {
      observation J = f->full_obs ? observation::full(k.dimension()) : f->obs.restrict_to(k.dimension());
      std::map<local_tuple, int> class_of;
      std::vector<int> cls(ns);
      for (int s = 0; s < ns; ++s)
        cls[s] = class_of.emplace(project_state(k.tuple(s), J), static_cast<int>(class_of.size())).first->second;
      const int classes = static_cast<int>(class_of.size());
      if (classes > 20) throw resource_error("too many observation classes to enumerate");
      std::vector<bool> result(ns, false);
      valuation inner = env;
      for (long mask = 0; mask < (1L << classes); ++mask) {
        std::vector<bool> lab(ns);
        for (int s = 0; s < ns; ++s) lab[s] = (mask >> cls[s]) & 1;
        inner[f->name] = std::move(lab);
        auto v = eval(k, f->lhs, inner);
        for (int s = 0; s < ns; ++s) result[s] = result[s] || v[s];
      }
      return result;
    }
    case op::next:
    case op::until:
      break;
  }
  throw unsupported_formula("state formula expected, found '" + to_string(f) + "'");
}

std::vector<bool> eval_exists_path(const cks& k, const formula_ptr& f, const valuation& env) {
  const int ns = k.num_states();
  auto maximal = max_state_subformulas(f->lhs);
  std::vector<std::string> names;
  std::vector<std::vector<bool>> values;
  for (std::size_t i = 0; i < maximal.size(); ++i) {
    names.push_back("#" + std::to_string(i));
    values.push_back(eval(k, maximal[i], env));
  }
  nbw b = ltl_to_nbw(ltl_skeleton(f->lhs, maximal, names), names);
  std::vector<unsigned> letter(ns, 0);
  for (int s = 0; s < ns; ++s)
    for (std::size_t i = 0; i < values.size(); ++i)
      if (values[i][s]) letter[s] |= 1u << i;

  // Product node (s, q): at state s, about to read s's letter from q.
  auto node = [&](int s, int q) { return s * b.num_states + q; };
  std::vector<std::vector<int>> succ(ns * b.num_states);
  for (int s = 0; s < ns; ++s)
    for (int q = 0; q < b.num_states; ++q)
      for (int q2 : b.delta[q][letter[s]])
        for (int t : k.succ[s]) succ[node(s, q)].push_back(node(t, q2));
  auto scc = detail::strongly_connected(succ);
  // Components come in reverse topological order, so successors are settled first.
  std::vector<bool> good_comp(scc.count, false);
  std::vector<std::vector<int>> members(scc.count);
  for (int v = 0; v < static_cast<int>(succ.size()); ++v) members[scc.comp[v]].push_back(v);
  for (int c = 0; c < scc.count; ++c) {
    bool good = false;
    if (scc.nontrivial[c])
      for (int v : members[c]) good = good || b.accepting[v % b.num_states];
    for (int v : members[c])
      for (int w : succ[v])
        if (scc.comp[w] != c && good_comp[scc.comp[w]]) good = true;
    good_comp[c] = good;
  }
  std::vector<bool> out(ns);
  for (int s = 0; s < ns; ++s) out[s] = good_comp[scc.comp[node(s, b.initial)]];
  return out;
}

std::vector<bool> eval_ctl(const cks& k, const formula_ptr& f, const valuation& env) {
  const int ns = k.num_states();
  switch (f->kind) {
    case op::tt:
      return std::vector<bool>(ns, true);
    case op::prop:
      return prop_values(k, f->name, env);
    case op::neg:
      return negate(eval_ctl(k, f->lhs, env));
    case op::disj:
    case op::conj: {
      auto a = eval_ctl(k, f->lhs, env);
      auto b = eval_ctl(k, f->rhs, env);
      for (int s = 0; s < ns; ++s) a[s] = f->kind == op::disj ? (a[s] || b[s]) : (a[s] && b[s]);
      return a;
    }
    case op::exists_path: {
      auto m = match_ctl(*f);
      if (!m) throw unsupported_formula("not a CTL formula: '" + to_string(f) + "'");
      auto a = eval_ctl(k, m->first, env);
      switch (m->shape) {
        case ctl_shape::ex:
          return pre_exists(k, a);
        case ctl_shape::ax:
          return pre_exists(k, negate(a));
        case ctl_shape::eu:
          return until_fix(k, a, eval_ctl(k, m->second, env));
        case ctl_shape::au:
          return not_until_fix(k, a, eval_ctl(k, m->second, env));
      }
      break;
    }
    default:
      break;
  }
  throw unsupported_formula("not a quantifier-free CTL formula: '" + to_string(f) + "'");
}

void check_state(const cks& k, int s) {
  if (s < 0 || s >= k.num_states()) throw model_error("state index out of range");
}

}  // namespace

std::vector<bool> evaluate_structure(const cks& k, const formula_ptr& f, const valuation& env) {
  return eval(k, f, env);
}

bool check_structure(const cks& k, int s, const formula_ptr& f) {
  check_state(k, s);
  return eval(k, f, {})[s];
}

std::vector<bool> evaluate_ctl_fixpoint(const cks& k, const formula_ptr& f, const valuation& env) {
  return eval_ctl(k, f, env);
}

bool check_ctl_fixpoint(const cks& k, int s, const formula_ptr& f) {
  check_state(k, s);
  return eval_ctl(k, f, {})[s];
}

}  // namespace qctl
