#include "qctl/logic.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace qctl {

observation::observation(std::initializer_list<int> indices) : observation(std::vector<int>(indices)) {}

observation::observation(std::vector<int> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
  if (!indices_.empty() && indices_.front() < 1)
    throw error("observation indices must be positive, got " + std::to_string(indices_.front()));
}

observation observation::full(int n) {
  std::vector<int> v;
  for (int i = 1; i <= n; ++i) v.push_back(i);
  return observation(std::move(v));
}

bool observation::contains(int i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

bool observation::subset_of(const observation& other) const {
  return std::includes(other.indices_.begin(), other.indices_.end(), indices_.begin(), indices_.end());
}

observation observation::intersect(const observation& other) const {
  std::vector<int> out;
  std::set_intersection(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
                        std::back_inserter(out));
  return observation(std::move(out));
}

observation observation::restrict_to(int n) const {
  std::vector<int> out;
  for (int i : indices_)
    if (i <= n) out.push_back(i);
  return observation(std::move(out));
}

std::string observation::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(indices_[i]);
  }
  return s + "}";
}

bool operator==(const formula& a, const formula& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind || a.name != b.name || a.obs != b.obs || a.full_obs != b.full_obs) return false;
  auto same = [](const formula_ptr& x, const formula_ptr& y) {
    if (!x || !y) return !x && !y;
    return *x == *y;
  };
  return same(a.lhs, b.lhs) && same(a.rhs, b.rhs);
}

namespace {

formula_ptr node(op kind, formula_ptr lhs = nullptr, formula_ptr rhs = nullptr) {
  auto f = std::make_shared<formula>();
  f->kind = kind;
  f->lhs = std::move(lhs);
  f->rhs = std::move(rhs);
  return f;
}

}  // namespace

formula_ptr make_true() {
  static const formula_ptr t = node(op::tt);
  return t;
}

formula_ptr make_false() { return make_not(make_true()); }

formula_ptr make_prop(std::string name) {
  auto f = std::make_shared<formula>();
  f->kind = op::prop;
  f->name = std::move(name);
  return f;
}

formula_ptr make_not(formula_ptr f) {
  if (f->kind == op::neg) return f->lhs;
  return node(op::neg, std::move(f));
}

formula_ptr make_or(formula_ptr a, formula_ptr b) { return node(op::disj, std::move(a), std::move(b)); }
formula_ptr make_and(formula_ptr a, formula_ptr b) { return node(op::conj, std::move(a), std::move(b)); }
formula_ptr make_implies(formula_ptr a, formula_ptr b) { return make_or(make_not(std::move(a)), std::move(b)); }
formula_ptr make_E(formula_ptr path) { return node(op::exists_path, std::move(path)); }
formula_ptr make_A(formula_ptr path) { return make_not(make_E(make_not(std::move(path)))); }
formula_ptr make_next(formula_ptr path) { return node(op::next, std::move(path)); }
formula_ptr make_until(formula_ptr a, formula_ptr b) { return node(op::until, std::move(a), std::move(b)); }
formula_ptr make_F(formula_ptr path) { return make_until(make_true(), std::move(path)); }
formula_ptr make_G(formula_ptr path) { return make_not(make_F(make_not(std::move(path)))); }

formula_ptr make_exists(std::string prop, observation obs, formula_ptr body) {
  auto f = std::make_shared<formula>();
  f->kind = op::exists_prop;
  f->name = std::move(prop);
  f->obs = std::move(obs);
  f->lhs = std::move(body);
  return f;
}

formula_ptr make_exists(std::string prop, formula_ptr body) {
  auto f = std::make_shared<formula>();
  f->kind = op::exists_prop;
  f->name = std::move(prop);
  f->full_obs = true;
  f->lhs = std::move(body);
  return f;
}

formula_ptr make_and_all(const std::vector<formula_ptr>& fs) {
  if (fs.empty()) return make_true();
  formula_ptr acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = make_and(fs[i], acc);
  return acc;
}

formula_ptr make_or_all(const std::vector<formula_ptr>& fs) {
  if (fs.empty()) return make_false();
  formula_ptr acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = make_or(fs[i], acc);
  return acc;
}

std::size_t formula_size(const formula& f) {
  std::size_t s = 1;
  if (f.kind == op::exists_prop) s += f.obs.size();
  if (f.lhs) s += formula_size(*f.lhs);
  if (f.rhs) s += formula_size(*f.rhs);
  return s;
}

bool is_state_formula(const formula& f) {
  switch (f.kind) {
    case op::tt:
    case op::prop:
    case op::exists_path:
      return true;
    case op::next:
    case op::until:
      return false;
    case op::exists_prop:
      return true;
    case op::neg:
      return is_state_formula(*f.lhs);
    case op::disj:
    case op::conj:
      return is_state_formula(*f.lhs) && is_state_formula(*f.rhs);
  }
  return false;
}

bool is_quantifier_free(const formula& f) {
  if (f.kind == op::exists_prop) return false;
  return (!f.lhs || is_quantifier_free(*f.lhs)) && (!f.rhs || is_quantifier_free(*f.rhs));
}

int quantifier_depth(const formula& f) {
  int d = 0;
  if (f.lhs) d = std::max(d, quantifier_depth(*f.lhs));
  if (f.rhs) d = std::max(d, quantifier_depth(*f.rhs));
  return d + (f.kind == op::exists_prop ? 1 : 0);
}

formula_ptr bind_full_observations(const formula_ptr& f, int n) {
  if (is_quantifier_free(*f)) return f;
  auto lhs = f->lhs ? bind_full_observations(f->lhs, n) : nullptr;
  auto rhs = f->rhs ? bind_full_observations(f->rhs, n) : nullptr;
  auto g = std::make_shared<formula>(*f);
  g->lhs = std::move(lhs);
  g->rhs = std::move(rhs);
  if (g->kind == op::exists_prop && g->full_obs) {
    g->full_obs = false;
    g->obs = observation::full(n);
  }
  return g;
}

std::string hierarchy_violation::describe() const {
  return "quantifier on " + inner_prop + " observes " + inner.to_string() + ", which does not contain " +
         outer.to_string() + " observed by the enclosing quantifier on " + outer_prop;
}

namespace {

struct scoped_obs {
  std::string prop;
  observation obs;
  bool everything;  // unbound plain quantifier
};

bool obs_included(const scoped_obs& outer, const scoped_obs& inner) {
  if (inner.everything) return true;
  if (outer.everything) return false;
  return outer.obs.subset_of(inner.obs);
}

std::optional<hierarchy_violation> find_violation(const formula& f, std::vector<scoped_obs>& stack,
                                                  std::optional<int> n) {
  if (f.kind == op::exists_prop) {
    scoped_obs here{f.name, f.obs, f.full_obs};
    if (n) {
      if (f.full_obs) {
        here.obs = observation::full(*n);
        here.everything = false;
      } else {
        here.obs = f.obs.restrict_to(*n);
      }
    }
    for (const auto& outer : stack) {
      if (!obs_included(outer, here)) {
        auto show = [](const scoped_obs& s) { return s.everything ? observation{} : s.obs; };
        return hierarchy_violation{outer.prop, show(outer), here.prop, show(here)};
      }
    }
    stack.push_back(here);
    auto r = find_violation(*f.lhs, stack, n);
    stack.pop_back();
    return r;
  }
  if (f.lhs)
    if (auto r = find_violation(*f.lhs, stack, n)) return r;
  if (f.rhs)
    if (auto r = find_violation(*f.rhs, stack, n)) return r;
  return std::nullopt;
}

}  // namespace

std::optional<hierarchy_violation> find_hierarchy_violation(const formula& f, std::optional<int> n) {
  std::vector<scoped_obs> stack;
  return find_violation(f, stack, n);
}

bool is_hierarchical(const formula& f, std::optional<int> n) { return !find_hierarchy_violation(f, n); }

observation obs_intersection(const formula& f, int n) {
  observation acc = observation::full(n);
  std::function<void(const formula&)> walk = [&](const formula& g) {
    if (g.kind == op::exists_prop && !g.full_obs) acc = acc.intersect(g.obs);
    if (g.lhs) walk(*g.lhs);
    if (g.rhs) walk(*g.rhs);
  };
  walk(f);
  return acc;
}

namespace {

void collect_free(const formula& f, std::multiset<std::string>& bound, std::set<std::string>& out) {
  if (f.kind == op::prop) {
    if (!bound.count(f.name)) out.insert(f.name);
    return;
  }
  if (f.kind == op::exists_prop) {
    auto it = bound.insert(f.name);
    collect_free(*f.lhs, bound, out);
    bound.erase(it);
    return;
  }
  if (f.lhs) collect_free(*f.lhs, bound, out);
  if (f.rhs) collect_free(*f.rhs, bound, out);
}

void collect_names(const formula& f, std::set<std::string>& out) {
  if (f.kind == op::prop || f.kind == op::exists_prop) out.insert(f.name);
  if (f.lhs) collect_names(*f.lhs, out);
  if (f.rhs) collect_names(*f.rhs, out);
}

}  // namespace

std::set<std::string> free_props(const formula& f) {
  std::multiset<std::string> bound;
  std::set<std::string> out;
  collect_free(f, bound, out);
  return out;
}

std::pair<formula_ptr, prop_partition> rename_apart(const formula_ptr& f) {
  std::set<std::string> used;
  collect_names(*f, used);
  prop_partition part;
  part.free = free_props(*f);

  std::map<std::string, int> counters;
  auto fresh = [&](const std::string& base) {
    for (;;) {
      std::string candidate = base + std::to_string(counters[base]++);
      if (used.insert(candidate).second) return candidate;
    }
  };

  std::function<formula_ptr(const formula_ptr&, std::map<std::string, std::string>&)> go =
      [&](const formula_ptr& g, std::map<std::string, std::string>& env) -> formula_ptr {
    switch (g->kind) {
      case op::tt:
        return g;
      case op::prop: {
        auto it = env.find(g->name);
        return it == env.end() ? g : make_prop(it->second);
      }
      case op::exists_prop: {
        std::string renamed = fresh(g->name);
        part.quantified.insert(renamed);
        auto saved = env.find(g->name) != env.end() ? std::optional<std::string>(env[g->name]) : std::nullopt;
        env[g->name] = renamed;
        auto body = go(g->lhs, env);
        if (saved)
          env[g->name] = *saved;
        else
          env.erase(g->name);
        auto r = std::make_shared<formula>(*g);
        r->name = renamed;
        r->lhs = std::move(body);
        return r;
      }
      default: {
        auto r = std::make_shared<formula>(*g);
        if (g->lhs) r->lhs = go(g->lhs, env);
        if (g->rhs) r->rhs = go(g->rhs, env);
        return r;
      }
    }
  };
  std::map<std::string, std::string> env;
  auto out = go(f, env);
  return {out, part};
}

namespace {

void collect_maximal(const formula_ptr& f, std::vector<formula_ptr>& out) {
  if (f->kind == op::tt) return;
  if (is_state_formula(*f)) {
    for (const auto& g : out)
      if (*g == *f) return;
    out.push_back(f);
    return;
  }
  if (f->lhs) collect_maximal(f->lhs, out);
  if (f->rhs) collect_maximal(f->rhs, out);
}

}  // namespace

std::vector<formula_ptr> max_state_subformulas(const formula_ptr& path) {
  std::vector<formula_ptr> out;
  collect_maximal(path, out);
  return out;
}

formula_ptr ltl_skeleton(const formula_ptr& path, const std::vector<formula_ptr>& maximal,
                         const std::vector<std::string>& atom_names) {
  if (path->kind == op::tt) return path;
  for (std::size_t i = 0; i < maximal.size(); ++i)
    if (*maximal[i] == *path) return make_prop(atom_names[i]);
  auto r = std::make_shared<formula>(*path);
  if (path->lhs) r->lhs = ltl_skeleton(path->lhs, maximal, atom_names);
  if (path->rhs) r->rhs = ltl_skeleton(path->rhs, maximal, atom_names);
  return r;
}

std::optional<ctl_match> match_ctl(const formula& f) {
  if (f.kind != op::exists_path) return std::nullopt;
  const formula* body = f.lhs.get();
  bool negated = false;
  if (body->kind == op::neg) {
    negated = true;
    body = body->lhs.get();
  }
  if (body->kind == op::next && is_state_formula(*body->lhs))
    return ctl_match{negated ? ctl_shape::ax : ctl_shape::ex, body->lhs, nullptr, negated};
  if (body->kind == op::until && is_state_formula(*body->lhs) && is_state_formula(*body->rhs))
    return ctl_match{negated ? ctl_shape::au : ctl_shape::eu, body->lhs, body->rhs, negated};
  return std::nullopt;
}

bool is_ctl(const formula& f) {
  if (f.kind == op::exists_path) {
    auto m = match_ctl(f);
    if (!m) return false;
    if (!is_ctl(*m->first)) return false;
    return !m->second || is_ctl(*m->second);
  }
  if (f.kind == op::next || f.kind == op::until) return false;
  return (!f.lhs || is_ctl(*f.lhs)) && (!f.rhs || is_ctl(*f.rhs));
}

std::string local_prop_name(const std::string& local) { return "at_" + local; }

std::optional<std::string> local_of_prop(const std::string& prop) {
  if (prop.size() > 3 && prop.compare(0, 3, "at_") == 0) return prop.substr(3);
  return std::nullopt;
}

}  // namespace qctl
