#include <algorithm>
#include <map>
#include <unordered_map>

#include "qctl/tree_automata.hpp"
#include "qctl/word_automata.hpp"

namespace qctl {

namespace {

using id = pbf_store::id;
using kind = pbf_store::kind;
using model = std::vector<std::pair<int, int>>;  // sorted atoms (direction, state)

bool subset(const model& a, const model& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

void keep_minimal(std::vector<model>& ms) {
  std::sort(ms.begin(), ms.end(), [](const model& x, const model& y) { return x.size() < y.size() || (x.size() == y.size() && x < y); });
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  std::vector<model> out;
  for (auto& m : ms) {
    bool dominated = false;
    for (const auto& o : out)
      if (subset(o, m)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(std::move(m));
  }
  ms = std::move(out);
}

// Minimal sets of atoms satisfying f.
const std::vector<model>& minimal_models(const pbf_store& s, id f, std::unordered_map<id, std::vector<model>>& memo) {
  if (auto it = memo.find(f); it != memo.end()) return it->second;
  const auto& n = s.at(f);
  std::vector<model> out;
  switch (n.k) {
    case kind::top:
      out.push_back({});
      break;
    case kind::bottom:
      break;
    case kind::atom:
      out.push_back({{n.dir, n.state}});
      break;
    case kind::disj:
      for (id k : n.kids) {
        const auto& km = minimal_models(s, k, memo);
        out.insert(out.end(), km.begin(), km.end());
      }
      keep_minimal(out);
      break;
    case kind::conj:
      out.push_back({});
      for (id k : n.kids) {
        const auto km = minimal_models(s, k, memo);
        std::vector<model> next;
        for (const auto& a : out)
          for (const auto& b : km) {
            model u;
            std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
            next.push_back(std::move(u));
          }
        keep_minimal(next);
        out = std::move(next);
        if (out.empty()) break;
      }
      break;
  }
  return memo.emplace(f, std::move(out)).first->second;
}

// One annotation per direction.
using slice = std::vector<annotation>;

bool slice_leq(const slice& a, const slice& b) {
  for (std::size_t d = 0; d < a.size(); ++d)
    if (!std::includes(b[d].begin(), b[d].end(), a[d].begin(), a[d].end())) return false;
  return true;
}

void keep_minimal(std::vector<slice>& ss) {
  std::sort(ss.begin(), ss.end());
  ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
  std::vector<bool> drop(ss.size(), false);
  for (std::size_t i = 0; i < ss.size(); ++i)
    for (std::size_t j = 0; j < ss.size() && !drop[i]; ++j)
      if (i != j && !drop[j] && slice_leq(ss[j], ss[i])) drop[i] = true;
  std::vector<slice> out;
  for (std::size_t i = 0; i < ss.size(); ++i)
    if (!drop[i]) out.push_back(std::move(ss[i]));
  ss = std::move(out);
}

}  // namespace

ata simulate(const ata& a, const simulate_options& opts) {
  const int ndirs = a.dirs.size();
  all_traces_automaton traces(a.num_states, a.colour);
  std::unordered_map<id, std::vector<model>> models;

  ata out;
  out.dirs = a.dirs;
  out.atoms = a.atoms;
  std::map<std::pair<int, int>, int> ids;  // (trace state, colour)
  std::vector<std::pair<int, int>> todo;
  auto state_of = [&](int D, int c) {
    auto [it, fresh] = ids.emplace(std::pair{D, c}, out.num_states);
    if (fresh) {
      if (out.num_states >= opts.max_states)
        throw resource_error("simulation exceeded " + std::to_string(opts.max_states) + " states");
      bool top = true;
      for (int q : traces.active(D)) top = top && a.accept_missing[q];
      out.add_state(c, top);
      todo.emplace_back(D, c);
    }
    return it->second;
  };
  out.initial = state_of(traces.initial({a.initial}), 0);

  for (std::size_t i = 0; i < todo.size(); ++i) {
    const int D = todo[i].first;
    const int me = static_cast<int>(i);
    const std::vector<int> active = traces.active(D);
    for (unsigned l = 0; l < a.num_letters(); ++l) {
      std::vector<slice> slices{slice(ndirs)};
      for (int q : active) {
        const auto& ms = minimal_models(a.pbf, a.transition(q, l), models);
        std::vector<slice> next;
        for (const auto& s : slices)
          for (const auto& m : ms) {
            slice t = s;
            for (auto [d, r] : m) t[d].emplace_back(q, r);
            for (auto& ann : t) {
              std::sort(ann.begin(), ann.end());
              ann.erase(std::unique(ann.begin(), ann.end()), ann.end());
            }
            next.push_back(std::move(t));
          }
        keep_minimal(next);
        slices = std::move(next);
        if (slices.empty()) break;
      }
      std::vector<id> disjuncts;
      for (const auto& s : slices) {
        std::vector<id> conj;
        for (int d = 0; d < ndirs; ++d) {
          auto [D2, c] = traces.step(D, s[d]);
          conj.push_back(out.pbf.atom(d, state_of(D2, c)));
        }
        disjuncts.push_back(out.pbf.conj_all(std::move(conj)));
      }
      out.set_transition(me, l, out.pbf.disj_all(std::move(disjuncts)));
    }
  }
  return normalize_colours(out);
}

}  // namespace qctl
