#include "qctl/mc_tree.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "qctl/word_automata.hpp"
#include "scc.hpp"

namespace qctl {

namespace {

const formula* find_parallel(const formula& orig, const formula& ren, const formula& target) {
  if (orig == target) return &ren;
  if (orig.lhs) {
    if (auto r = find_parallel(*orig.lhs, *ren.lhs, target)) return r;
  }
  if (orig.rhs) {
    if (auto r = find_parallel(*orig.rhs, *ren.rhs, target)) return r;
  }
  return nullptr;
}

formula_ptr find_node(const formula_ptr& root, const formula* target) {
  if (root.get() == target) return root;
  for (const auto& c : {root->lhs, root->rhs})
    if (c)
      if (auto r = find_node(c, target)) return r;
  return nullptr;
}

// Polarities of proposition `name` in f: bit 0 positive, bit 1 negative.
int polarity(const formula& f, const std::string& name, bool negated) {
  switch (f.kind) {
    case op::prop:
      return f.name == name ? (negated ? 2 : 1) : 0;
    case op::neg:
      return polarity(*f.lhs, name, !negated);
    default: {
      int p = 0;
      if (f.lhs) p |= polarity(*f.lhs, name, negated);
      if (f.rhs) p |= polarity(*f.rhs, name, negated);
      return p;
    }
  }
}

// Büchi states accepting every word (greatest set of accepting states that
// can always stay inside) and states accepting nothing.
std::pair<std::vector<bool>, std::vector<bool>> classify(const nbw& b) {
  std::vector<bool> universal(b.accepting);
  for (bool changed = true; changed;) {
    changed = false;
    for (int q = 0; q < b.num_states; ++q) {
      if (!universal[q]) continue;
      for (int l = 0; l < b.num_letters() && universal[q]; ++l) {
        bool stay = false;
        for (int r : b.delta[q][l]) stay = stay || universal[r];
        if (!stay) universal[q] = false, changed = true;
      }
    }
  }
  std::vector<std::vector<int>> succ(b.num_states);
  for (int q = 0; q < b.num_states; ++q)
    for (const auto& row : b.delta[q]) succ[q].insert(succ[q].end(), row.begin(), row.end());
  auto scc = detail::strongly_connected(succ);
  std::vector<bool> live_comp(scc.count, false);
  std::vector<std::vector<int>> members(scc.count);
  for (int q = 0; q < b.num_states; ++q) members[scc.comp[q]].push_back(q);
  for (int c = 0; c < scc.count; ++c) {
    bool live = false;
    for (int q : members[c]) {
      live = live || (scc.nontrivial[c] && b.accepting[q]);
      for (int r : succ[q]) live = live || (scc.comp[r] != c && live_comp[scc.comp[r]]);
    }
    live_comp[c] = live;
  }
  std::vector<bool> empty(b.num_states);
  for (int q = 0; q < b.num_states; ++q) empty[q] = !live_comp[scc.comp[q]];
  return {universal, empty};
}

std::vector<std::string> merge_atoms(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

}  // namespace

tree_checker::tree_checker(const cks& k, const formula_ptr& phi, tree_check_options opts)
    : k_(k), original_(phi), opts_(std::move(opts)) {
  if (!is_state_formula(*phi)) throw unsupported_formula("state formula expected");
  const int n = k.dimension();
  if (auto v = find_hierarchy_violation(*phi, n)) throw hierarchy_error(*v);
  if (quantifier_depth(*phi) > opts_.max_quantifier_depth)
    throw resource_error("quantifier nesting depth " + std::to_string(quantifier_depth(*phi)) +
                         " exceeds the limit of " + std::to_string(opts_.max_quantifier_depth));
  auto [renamed, part] = rename_apart(bind_full_observations(phi, n));
  phi_ = renamed;
  props_ = part;
  for (const auto& p : free_props(*phi_))
    if (!k.knows(p)) throw model_error("proposition '" + p + "' is neither quantified nor an atom of the model");
}

formula_ptr tree_checker::renamed(const formula_ptr& original_sub) const {
  const qctl::formula* r = find_parallel(*original_, *phi_, *original_sub);
  if (!r) throw unsupported_formula("'" + to_string(original_sub) + "' is not a subformula");
  return find_node(phi_, r);
}

observation tree_checker::directions_of(const formula_ptr& sub) const {
  return obs_intersection(*sub, k_.dimension());
}

void tree_checker::record(const ata& a, const std::string& what) {
  ++stats_.automata_built;
  stats_.largest_automaton = std::max(stats_.largest_automaton, a.num_states);
  if (opts_.dump_dir.empty()) return;
  std::filesystem::create_directories(opts_.dump_dir);
  auto path = std::filesystem::path(opts_.dump_dir) / ("automaton_" + std::to_string(stats_.automata_built) + ".txt");
  std::ofstream out(path);
  out << "# " << what << "\n" << dump(a);
}

const automaton_family& tree_checker::family(const formula_ptr& sub) {
  const std::string key = to_string(sub);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  automaton_family f = build(sub);
  record(f.automaton, key);
  return memo_.emplace(key, std::move(f)).first->second;
}

ata tree_checker::automaton(const formula_ptr& sub, int s) {
  if (s < 0 || s >= k_.num_states()) throw model_error("state index out of range");
  ata a = family(sub).automaton;
  a.initial = family(sub).initial[s];
  return trim(a);
}

automaton_family tree_checker::build(const formula_ptr& sub) {
  const int ns = k_.num_states();
  const observation I = directions_of(sub);
  const direction_space dirs(k_.locals, I);
  automaton_family out;
  ata& a = out.automaton;
  a.dirs = dirs;

  switch (sub->kind) {
    case op::tt:
      a = accept_all(dirs);
      out.initial.assign(ns, 0);
      return out;

    case op::prop:
      if (props_.quantified.count(sub->name)) {
        a.atoms = {sub->name};
        a.add_state(0, false);
        a.set_transition(0, 1, pbf_store::top);
        out.initial.assign(ns, 0);
      } else {
        int top = a.add_state(0, true);
        int bottom = a.add_state(1, false);
        a.set_transition(top, 0, pbf_store::top);
        for (int s = 0; s < ns; ++s) out.initial.push_back(k_.holds(s, sub->name) ? top : bottom);
      }
      return out;

    case op::neg: {
      const auto& child = family(sub->lhs);
      out.automaton = normalize_colours(dualize(child.automaton));
      out.initial = child.initial;
      return out;
    }

    case op::disj:
    case op::conj: {
      const auto& f1 = family(sub->lhs);
      const auto& f2 = family(sub->rhs);
      ata n1 = narrow(f1.automaton, I);
      ata n2 = narrow(f2.automaton, I);
      a.atoms = merge_atoms(n1.atoms, n2.atoms);
      const int o1 = append_states(a, n1);
      const int o2 = append_states(a, n2);
      std::map<std::pair<int, int>, int> made;
      for (int s = 0; s < ns; ++s) {
        auto key = std::pair{f1.initial[s], f2.initial[s]};
        auto [it, fresh] = made.emplace(key, a.num_states);
        if (fresh) {
          int q = a.add_state(0, false);
          for (unsigned l = 0; l < a.num_letters(); ++l) {
            auto x = a.transition(o1 + key.first, l), y = a.transition(o2 + key.second, l);
            a.set_transition(q, l, sub->kind == op::disj ? a.pbf.disj(x, y) : a.pbf.conj(x, y));
          }
        }
        out.initial.push_back(it->second);
      }
      break;
    }

    case op::exists_path: {
      auto maximal = max_state_subformulas(sub->lhs);
      std::vector<std::string> names;
      for (std::size_t i = 0; i < maximal.size(); ++i) names.push_back("#" + std::to_string(i));
      formula_ptr skeleton = ltl_skeleton(sub->lhs, maximal, names);
      nbw b = ltl_to_nbw(skeleton, names);
      auto [universal, empty] = classify(b);
      std::vector<int> pol;
      for (const auto& n : names) pol.push_back(polarity(*skeleton, n, false));

      std::vector<const automaton_family*> fams;
      std::vector<ata> pos, neg;
      for (const auto& m : maximal) {
        fams.push_back(&family(m));
        pos.push_back(narrow(fams.back()->automaton, I));
        neg.push_back(normalize_colours(dualize(pos.back())));
        a.atoms = merge_atoms(a.atoms, pos.back().atoms);
      }
      std::vector<int> pos_off, neg_off;
      for (std::size_t i = 0; i < maximal.size(); ++i) {
        pos_off.push_back(append_states(a, pos[i]));
        neg_off.push_back(append_states(a, neg[i]));
      }
      const int base = a.num_states;
      auto product = [&](int qb, int s) { return base + qb * ns + s; };
      for (int qb = 0; qb < b.num_states; ++qb)
        for (int s = 0; s < ns; ++s) a.add_state(b.accepting[qb] ? 2 : 1, false);
      std::vector<int> dir_of(ns);
      for (int s = 0; s < ns; ++s) dir_of[s] = dirs.index_of(project_state(k_.tuple(s), I));

      const unsigned guesses = 1u << maximal.size();
      for (int qb = 0; qb < b.num_states; ++qb) {
        for (int s = 0; s < ns; ++s) {
          std::vector<pbf_store::id> moves(guesses);
          for (unsigned g = 0; g < guesses; ++g) {
            std::vector<pbf_store::id> m;
            for (int qb2 : b.delta[qb][g]) {
              if (empty[qb2]) continue;
              for (int t : k_.succ[s])
                m.push_back(universal[qb2] ? pbf_store::top : a.pbf.atom(dir_of[t], product(qb2, t)));
            }
            moves[g] = a.pbf.disj_all(std::move(m));
          }
          for (unsigned l = 0; l < a.num_letters(); ++l) {
            std::vector<pbf_store::id> options;
            for (unsigned g = 0; g < guesses; ++g) {
              if (moves[g] == pbf_store::bottom) continue;
              std::vector<pbf_store::id> parts{moves[g]};
              for (std::size_t i = 0; i < maximal.size(); ++i) {
                int init = fams[i]->initial[s];
                bool claimed = g >> i & 1;
                // A claim that can only make ψ harder to satisfy needs no proof.
                if (claimed && (pol[i] & 1)) parts.push_back(a.transition(pos_off[i] + init, l));
                if (!claimed && (pol[i] & 2)) parts.push_back(a.transition(neg_off[i] + init, l));
              }
              options.push_back(a.pbf.conj_all(std::move(parts)));
            }
            a.set_transition(product(qb, s), l, a.pbf.disj_all(std::move(options)));
          }
        }
      }
      for (int s = 0; s < ns; ++s) out.initial.push_back(product(b.initial, s));
      break;
    }

    case op::exists_prop: {
      const auto& child = family(sub->lhs);
      ata narrowed = narrow(child.automaton, I);
      a.atoms = child.automaton.atoms;
      a.atoms.erase(std::remove(a.atoms.begin(), a.atoms.end(), sub->name), a.atoms.end());
      std::map<int, int> made;
      for (int s = 0; s < ns; ++s) {
        int init = child.initial[s];
        auto [it, fresh] = made.emplace(init, 0);
        if (fresh) {
          ata start = narrowed;
          start.initial = init;
          start = trim(start);
          ata nta = simulate(start, {opts_.max_simulated_states});
          record(nta, "simulation of " + to_string(sub->lhs));
          ata projected = trim(project(nta, sub->name));
          it->second = append_states(a, projected) + projected.initial;
        }
        out.initial.push_back(it->second);
      }
      break;
    }

    case op::next:
    case op::until:
      throw unsupported_formula("state formula expected, found '" + to_string(sub) + "'");
  }
  if (a.num_states == 0) a.add_state(1, false);
  a.initial = out.initial.empty() ? 0 : out.initial[0];
  a = trim(a, out.initial);
  return out;
}

bool tree_checker::check(int s) {
  if (s < 0 || s >= k_.num_states()) throw model_error("state index out of range");
  ata a = automaton(phi_, s);
  stats_.final_states = a.num_states;
  regular_tree t = full_tree(a.dirs, a.dirs.index_of(project_state(k_.tuple(s), a.dirs.coords())));
  membership_stats ms;
  bool result = membership(a, t, t.root, &ms);
  stats_.game_positions = ms.positions;
  return result;
}

ata build_automaton(const formula_ptr& Phi, const cks& k, int s, const formula_ptr& phi,
                    const tree_check_options& opts) {
  tree_checker checker(k, Phi, opts);
  return checker.automaton(checker.renamed(phi), s);
}

bool check_tree(const cks& k, int s, const formula_ptr& Phi, const tree_check_options& opts,
                tree_check_stats* stats) {
  tree_checker checker(k, Phi, opts);
  bool r = checker.check(s);
  if (stats) *stats = checker.stats();
  return r;
}

}  // namespace qctl
