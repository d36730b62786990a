#include "qctl/tree_automata.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>

namespace qctl {

namespace {

using id = pbf_store::id;
using kind = pbf_store::kind;

// Rebuilds f from `from` inside `to`, renaming atoms and optionally swapping
// the connectives and constants.
id rebuild(const pbf_store& from, id f, pbf_store& to, const std::function<id(int, int)>& atom, bool swap,
           std::unordered_map<id, id>& memo) {
  if (auto it = memo.find(f); it != memo.end()) return it->second;
  const auto& n = from.at(f);
  id r;
  switch (n.k) {
    case kind::top:
      r = swap ? pbf_store::bottom : pbf_store::top;
      break;
    case kind::bottom:
      r = swap ? pbf_store::top : pbf_store::bottom;
      break;
    case kind::atom:
      r = atom(n.dir, n.state);
      break;
    default: {
      std::vector<id> kids;
      for (id k : n.kids) kids.push_back(rebuild(from, k, to, atom, swap, memo));
      r = (n.k == kind::conj) != swap ? to.conj_all(std::move(kids)) : to.disj_all(std::move(kids));
    }
  }
  memo.emplace(f, r);
  return r;
}

void collect_atoms(const pbf_store& s, id f, std::vector<std::pair<int, int>>& out) {
  const auto& n = s.at(f);
  if (n.k == kind::atom) {
    out.emplace_back(n.dir, n.state);
  } else {
    for (id k : n.kids) collect_atoms(s, k, out);
  }
}

}  // namespace

int ata::add_state(int c, bool top) {
  colour.push_back(c);
  accept_missing.push_back(top);
  delta.resize(delta.size() + num_letters(), pbf_store::bottom);
  return num_states++;
}

unsigned ata::letter_of(const std::set<std::string>& label) const {
  unsigned l = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (label.count(atoms[i])) l |= 1u << i;
  return l;
}

void ata::validate() const {
  if (num_states < 1) throw shape_error("automaton without states");
  if (initial < 0 || initial >= num_states) throw shape_error("initial state out of range");
  if (static_cast<int>(colour.size()) != num_states || static_cast<int>(accept_missing.size()) != num_states ||
      delta.size() != static_cast<std::size_t>(num_states) * num_letters())
    throw shape_error("inconsistent automaton tables");
  for (int c : colour)
    if (c < 0) throw shape_error("negative colour");
  for (id f : delta) {
    if (f < 0 || f >= pbf.size()) throw shape_error("dangling transition formula");
    std::vector<std::pair<int, int>> at;
    collect_atoms(pbf, f, at);
    for (auto [d, q] : at)
      if (d < 0 || d >= dirs.size() || q < 0 || q >= num_states) throw shape_error("atom out of range");
  }
}

ata accept_all(const direction_space& dirs) {
  ata a;
  a.dirs = dirs;
  a.add_state(0, true);
  a.set_transition(0, 0, pbf_store::top);
  return a;
}

ata reject_all(const direction_space& dirs) {
  ata a;
  a.dirs = dirs;
  a.add_state(1, false);
  return a;
}

unsigned restrict_letter(const std::vector<std::string>& wide, unsigned letter,
                         const std::vector<std::string>& narrow_atoms) {
  unsigned out = 0;
  for (std::size_t i = 0; i < narrow_atoms.size(); ++i) {
    auto it = std::find(wide.begin(), wide.end(), narrow_atoms[i]);
    if (it == wide.end()) throw shape_error("atom '" + narrow_atoms[i] + "' missing from the wider alphabet");
    if (letter >> (it - wide.begin()) & 1) out |= 1u << i;
  }
  return out;
}

id import_formula(ata& into, const ata& from, id f, int offset) {
  std::unordered_map<id, id> memo;
  return rebuild(from.pbf, f, into.pbf, [&](int d, int q) { return into.pbf.atom(d, q + offset); }, false, memo);
}

int append_states(ata& into, const ata& from) {
  if (!(into.dirs == from.dirs)) throw shape_error("cannot combine automata over different directions");
  const int offset = into.num_states;
  for (int q = 0; q < from.num_states; ++q) into.add_state(from.colour[q], from.accept_missing[q]);
  std::unordered_map<id, id> memo;
  auto atom = [&](int d, int q) { return into.pbf.atom(d, q + offset); };
  std::vector<unsigned> restricted(into.num_letters());
  for (unsigned l = 0; l < into.num_letters(); ++l) restricted[l] = restrict_letter(into.atoms, l, from.atoms);
  for (int q = 0; q < from.num_states; ++q)
    for (unsigned l = 0; l < into.num_letters(); ++l)
      into.set_transition(offset + q, l, rebuild(from.pbf, from.transition(q, restricted[l]), into.pbf, atom, false, memo));
  return offset;
}

ata dualize(const ata& a) {
  ata d;
  d.dirs = a.dirs;
  d.atoms = a.atoms;
  d.initial = a.initial;
  for (int q = 0; q < a.num_states; ++q) d.add_state(a.colour[q] + 1, !a.accept_missing[q]);
  std::unordered_map<id, id> memo;
  auto atom = [&](int dir, int q) { return d.pbf.atom(dir, q); };
  for (std::size_t i = 0; i < a.delta.size(); ++i) d.delta[i] = rebuild(a.pbf, a.delta[i], d.pbf, atom, true, memo);
  return d;
}

ata normalize_colours(const ata& a) {
  std::vector<int> used(a.colour);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::map<int, int> to;
  int cur = -1;
  for (int c : used) {
    int next = cur + 1;
    if (next % 2 != c % 2) ++next;
    to[c] = next;
    cur = next;
  }
  ata out = a;
  for (int& c : out.colour) c = to[c];
  return out;
}

ata trim(const ata& a, std::vector<int>& roots) {
  std::vector<int> index(a.num_states, -1), order;
  auto visit = [&](int q) {
    if (index[q] >= 0) return;
    index[q] = static_cast<int>(order.size());
    order.push_back(q);
  };
  visit(a.initial);
  for (int r : roots) visit(r);
  for (std::size_t i = 0; i < order.size(); ++i) {
    int q = order[i];
    for (unsigned l = 0; l < a.num_letters(); ++l) {
      std::vector<std::pair<int, int>> at;
      collect_atoms(a.pbf, a.transition(q, l), at);
      for (auto [d, r] : at) visit(r);
    }
  }
  ata out;
  out.dirs = a.dirs;
  out.atoms = a.atoms;
  for (int q : order) out.add_state(a.colour[q], a.accept_missing[q]);
  out.initial = index[a.initial];
  std::unordered_map<id, id> memo;
  auto atom = [&](int d, int q) { return out.pbf.atom(d, index[q]); };
  for (std::size_t i = 0; i < order.size(); ++i)
    for (unsigned l = 0; l < a.num_letters(); ++l)
      out.set_transition(static_cast<int>(i), l, rebuild(a.pbf, a.transition(order[i], l), out.pbf, atom, false, memo));
  for (int& r : roots) r = index[r];
  return out;
}

ata narrow(const ata& a, const observation& J) {
  if (!J.subset_of(a.dirs.coords()))
    throw shape_error("narrowing to " + J.to_string() + " which is not a subset of " + a.dirs.coords().to_string());
  if (J == a.dirs.coords()) return a;
  direction_space target(a.dirs.locals(), J);
  std::vector<int> proj(a.dirs.size());
  for (int d = 0; d < a.dirs.size(); ++d) proj[d] = a.dirs.project(d, target);
  ata out;
  out.dirs = target;
  out.atoms = a.atoms;
  out.initial = a.initial;
  for (int q = 0; q < a.num_states; ++q) out.add_state(a.colour[q], a.accept_missing[q]);
  std::unordered_map<id, id> memo;
  auto atom = [&](int d, int q) { return out.pbf.atom(proj[d], q); };
  for (std::size_t i = 0; i < a.delta.size(); ++i) out.delta[i] = rebuild(a.pbf, a.delta[i], out.pbf, atom, false, memo);
  return out;
}

bool is_nondeterministic(const ata& a) {
  for (id f : a.delta) {
    const auto& n = a.pbf.at(f);
    if (n.k == kind::bottom) continue;
    std::vector<id> disjuncts = n.k == kind::disj ? n.kids : std::vector<id>{f};
    for (id g : disjuncts) {
      const auto& m = a.pbf.at(g);
      std::vector<id> conjuncts = m.k == kind::conj ? m.kids : std::vector<id>{g};
      std::vector<int> seen(a.dirs.size(), 0);
      for (id c : conjuncts) {
        const auto& at = a.pbf.at(c);
        if (at.k != kind::atom) return false;
        ++seen[at.dir];
      }
      for (int s : seen)
        if (s != 1) return false;
    }
  }
  return true;
}

ata project(const ata& nta, const std::string& p) {
  if (!is_nondeterministic(nta)) throw shape_error("projection needs a nondeterministic automaton");
  auto it = std::find(nta.atoms.begin(), nta.atoms.end(), p);
  if (it == nta.atoms.end()) return nta;
  const unsigned bit = static_cast<unsigned>(it - nta.atoms.begin());
  ata out;
  out.dirs = nta.dirs;
  out.atoms = nta.atoms;
  out.atoms.erase(out.atoms.begin() + bit);
  out.initial = nta.initial;
  out.pbf = nta.pbf;
  for (int q = 0; q < nta.num_states; ++q) out.add_state(nta.colour[q], nta.accept_missing[q]);
  for (int q = 0; q < nta.num_states; ++q) {
    for (unsigned l = 0; l < out.num_letters(); ++l) {
      unsigned low = l & ((1u << bit) - 1);
      unsigned without = low | ((l >> bit) << (bit + 1));
      unsigned with = without | (1u << bit);
      out.set_transition(q, l, out.pbf.disj(nta.transition(q, with), nta.transition(q, without)));
    }
  }
  return out;
}

int regular_tree::add_vertex(std::set<std::string> label) {
  labels.push_back(std::move(label));
  child.emplace_back(dirs.size(), -1);
  return size() - 1;
}

void regular_tree::validate() const {
  if (labels.empty()) throw shape_error("regular tree without vertices");
  if (root < 0 || root >= size()) throw shape_error("root out of range");
  if (static_cast<int>(child.size()) != size()) throw shape_error("inconsistent successor table");
  for (const auto& row : child) {
    if (static_cast<int>(row.size()) != dirs.size()) throw shape_error("successor row of the wrong width");
    bool any = false;
    for (int w : row) {
      if (w < -1 || w >= size()) throw shape_error("successor out of range");
      any = any || w >= 0;
    }
    if (!any) throw shape_error("vertex without successors");
  }
}

regular_tree full_tree(const direction_space& dirs, int root_dir) {
  regular_tree t;
  t.dirs = dirs;
  for (int d = 0; d < dirs.size(); ++d) t.add_vertex();
  for (int v = 0; v < dirs.size(); ++v)
    for (int d = 0; d < dirs.size(); ++d) t.child[v][d] = d;
  t.root = root_dir;
  return t;
}

regular_tree lift(const regular_tree& t, const observation& I) {
  if (!t.dirs.coords().subset_of(I)) throw shape_error("lift target must contain the tree coordinates");
  direction_space wide(t.dirs.locals(), I);
  regular_tree out;
  out.dirs = wide;
  out.root = t.root;
  for (int v = 0; v < t.size(); ++v) out.add_vertex(t.labels[v]);
  for (int v = 0; v < t.size(); ++v)
    for (int d = 0; d < wide.size(); ++d) out.child[v][d] = t.child[v][wide.project(d, t.dirs)];
  return out;
}

parity_game acceptance_game(const ata& a, const regular_tree& t, int start) {
  if (!(a.dirs == t.dirs)) throw shape_error("automaton and tree have different direction sets");
  if (start < 0 || start >= t.size()) throw shape_error("start vertex out of range");
  parity_game g;
  std::map<std::tuple<int, int, id>, int> ids;
  std::vector<std::tuple<int, int, id>> todo;
  auto position = [&](int v, int q, id f) {
    auto [it, fresh] = ids.emplace(std::tuple(v, q, f), g.size());
    if (fresh) {
      auto k = a.pbf.at(f).k;
      g.add_position(k == kind::conj ? player::adam : player::eve, a.colour[q]);
      todo.emplace_back(v, q, f);
    }
    return it->second;
  };
  g.initial = position(start, a.initial, a.transition(a.initial, a.letter_of(t.labels[start])));
  while (!todo.empty()) {
    auto [v, q, f] = todo.back();
    todo.pop_back();
    const int me = ids.at({v, q, f});
    const auto& n = a.pbf.at(f);
    switch (n.k) {
      case kind::top:
        g.deadlock[me] = player::eve;
        break;
      case kind::bottom:
        g.deadlock[me] = player::adam;
        break;
      case kind::atom: {
        int w = t.child[v][n.dir];
        int next = w >= 0 ? position(w, n.state, a.transition(n.state, a.letter_of(t.labels[w])))
                          : position(v, q, a.accept_missing[n.state] ? pbf_store::top : pbf_store::bottom);
        g.succ[me].push_back(next);
        break;
      }
      default:
        for (id k : n.kids) {
          int next = position(v, q, k);
          g.succ[me].push_back(next);
        }
    }
  }
  return g;
}

bool membership(const ata& a, const regular_tree& t, int start, membership_stats* stats) {
  parity_game g = acceptance_game(a, t, start);
  if (stats) stats->positions = g.size();
  return solve_zielonka(g).winner[g.initial] == player::eve;
}

std::string to_string(const ata& a, id f) {
  const auto& n = a.pbf.at(f);
  switch (n.k) {
    case kind::top:
      return "true";
    case kind::bottom:
      return "false";
    case kind::atom:
      return "[" + a.dirs.name(n.dir) + "," + std::to_string(n.state) + "]";
    default: {
      std::string s = "(";
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        if (i) s += n.k == kind::conj ? " & " : " | ";
        s += to_string(a, n.kids[i]);
      }
      return s + ")";
    }
  }
}

std::string dump(const ata& a) {
  std::ostringstream out;
  out << "ata directions " << a.dirs.coords().to_string() << " (" << a.dirs.size() << ") atoms {";
  for (std::size_t i = 0; i < a.atoms.size(); ++i) out << (i ? "," : "") << a.atoms[i];
  out << "} states " << a.num_states << " initial " << a.initial << "\n";
  for (int q = 0; q < a.num_states; ++q) {
    out << "state " << q << " colour " << a.colour[q] << (a.accept_missing[q] ? " top" : " bottom") << "\n";
    for (unsigned l = 0; l < a.num_letters(); ++l) {
      out << "  {";
      bool first = true;
      for (std::size_t i = 0; i < a.atoms.size(); ++i) {
        if (!(l >> i & 1)) continue;
        out << (first ? "" : ",") << a.atoms[i];
        first = false;
      }
      out << "} " << to_string(a, a.transition(q, l)) << "\n";
    }
  }
  return out.str();
}

}  // namespace qctl
