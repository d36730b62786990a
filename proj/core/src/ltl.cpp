#include <algorithm>
#include <map>
#include <sstream>

#include "qctl/word_automata.hpp"
#include "scc.hpp"

namespace qctl {

namespace {

void check_atoms(const formula& f, const std::vector<std::string>& alphabet) {
  switch (f.kind) {
    case op::tt:
      return;
    case op::prop:
      if (!alphabet.empty() && std::find(alphabet.begin(), alphabet.end(), f.name) == alphabet.end())
        throw unsupported_formula("unknown atom '" + f.name + "'");
      return;
    case op::exists_path:
    case op::exists_prop:
      throw unsupported_formula("LTL formula expected, found '" + to_string(f) + "'");
    default:
      if (f.lhs) check_atoms(*f.lhs, alphabet);
      if (f.rhs) check_atoms(*f.rhs, alphabet);
  }
}

std::vector<bool> eval(const formula& f, const std::vector<const std::set<std::string>*>& pos,
                       const std::vector<int>& next) {
  const std::size_t L = pos.size();
  std::vector<bool> v(L);
  switch (f.kind) {
    case op::tt:
      v.assign(L, true);
      break;
    case op::prop:
      for (std::size_t i = 0; i < L; ++i) v[i] = pos[i]->count(f.name) != 0;
      break;
    case op::neg: {
      auto a = eval(*f.lhs, pos, next);
      for (std::size_t i = 0; i < L; ++i) v[i] = !a[i];
      break;
    }
    case op::disj:
    case op::conj: {
      auto a = eval(*f.lhs, pos, next);
      auto b = eval(*f.rhs, pos, next);
      for (std::size_t i = 0; i < L; ++i) v[i] = f.kind == op::disj ? (a[i] || b[i]) : (a[i] && b[i]);
      break;
    }
    case op::next: {
      auto a = eval(*f.lhs, pos, next);
      for (std::size_t i = 0; i < L; ++i) v[i] = a[next[i]];
      break;
    }
    case op::until: {
      auto a = eval(*f.lhs, pos, next);
      auto b = eval(*f.rhs, pos, next);
      v = b;
      for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = L; i-- > 0;) {
          if (!v[i] && a[i] && v[next[i]]) {
            v[i] = true;
            changed = true;
          }
        }
      }
      break;
    }
    default:
      throw unsupported_formula("LTL formula expected");
  }
  return v;
}

// Formulas in negation normal form, hash-consed.
enum class nk : unsigned char { tt, ff, lit, conj, disj, next, until, release };

struct nnf {
  struct node {
    nk kind;
    int atom = -1;
    bool positive = true;
    int a = -1, b = -1;
    auto key() const { return std::tuple(kind, atom, positive, a, b); }
  };
  std::vector<node> nodes;
  std::map<std::tuple<nk, int, bool, int, int>, int> ids;
  const std::vector<std::string>& alphabet;

  explicit nnf(const std::vector<std::string>& alph) : alphabet(alph) {}

  int make(node n) {
    auto [it, fresh] = ids.emplace(n.key(), static_cast<int>(nodes.size()));
    if (fresh) nodes.push_back(n);
    return it->second;
  }

  int build(const formula& f, bool neg) {
    switch (f.kind) {
      case op::tt:
        return make({neg ? nk::ff : nk::tt});
      case op::prop: {
        auto it = std::find(alphabet.begin(), alphabet.end(), f.name);
        if (it == alphabet.end()) throw unsupported_formula("unknown atom '" + f.name + "'");
        return make({nk::lit, static_cast<int>(it - alphabet.begin()), !neg});
      }
      case op::neg:
        return build(*f.lhs, !neg);
      case op::disj:
      case op::conj: {
        bool is_or = (f.kind == op::disj) != neg;
        return make({is_or ? nk::disj : nk::conj, -1, true, build(*f.lhs, neg), build(*f.rhs, neg)});
      }
      case op::next:
        return make({nk::next, -1, true, build(*f.lhs, neg)});
      case op::until:
        return make({neg ? nk::release : nk::until, -1, true, build(*f.lhs, neg), build(*f.rhs, neg)});
      default:
        throw unsupported_formula("LTL formula expected, found '" + to_string(f) + "'");
    }
  }
};

struct cover {
  unsigned pos = 0, neg = 0;
  std::vector<int> next;
  std::vector<int> postponed;
  bool operator<(const cover& o) const {
    return std::tie(pos, neg, next, postponed) < std::tie(o.pos, o.neg, o.next, o.postponed);
  }
};

void expand(const nnf& t, std::vector<int> todo, std::set<int> done, cover c, std::set<cover>& out) {
  while (!todo.empty()) {
    int f = todo.back();
    todo.pop_back();
    if (!done.insert(f).second) continue;
    const auto& n = t.nodes[f];
    switch (n.kind) {
      case nk::tt:
        break;
      case nk::ff:
        return;
      case nk::lit:
        (n.positive ? c.pos : c.neg) |= 1u << n.atom;
        if (c.pos & c.neg) return;
        break;
      case nk::conj:
        todo.push_back(n.a);
        todo.push_back(n.b);
        break;
      case nk::disj: {
        auto left = todo;
        left.push_back(n.a);
        expand(t, std::move(left), done, c, out);
        todo.push_back(n.b);
        break;
      }
      case nk::next:
        c.next.push_back(n.a);
        break;
      case nk::until: {
        auto now = todo;
        now.push_back(n.b);
        expand(t, std::move(now), done, c, out);
        todo.push_back(n.a);
        c.next.push_back(f);
        c.postponed.push_back(f);
        break;
      }
      case nk::release: {
        auto now = todo;
        now.push_back(n.a);
        now.push_back(n.b);
        expand(t, std::move(now), done, c, out);
        todo.push_back(n.b);
        c.next.push_back(f);
        break;
      }
    }
  }
  std::sort(c.next.begin(), c.next.end());
  c.next.erase(std::unique(c.next.begin(), c.next.end()), c.next.end());
  std::sort(c.postponed.begin(), c.postponed.end());
  c.postponed.erase(std::unique(c.postponed.begin(), c.postponed.end()), c.postponed.end());
  out.insert(std::move(c));
}

}  // namespace

bool ltl_eval_lasso(const formula_ptr& psi, const lasso_word& w, const std::vector<std::string>& alphabet) {
  if (w.loop.empty()) throw shape_error("lasso loop must be nonempty");
  check_atoms(*psi, alphabet);
  std::vector<const std::set<std::string>*> pos;
  for (const auto& l : w.prefix) pos.push_back(&l);
  for (const auto& l : w.loop) pos.push_back(&l);
  std::vector<int> next(pos.size());
  for (std::size_t i = 0; i < pos.size(); ++i)
    next[i] = i + 1 < pos.size() ? static_cast<int>(i + 1) : static_cast<int>(w.prefix.size());
  return eval(*psi, pos, next)[0];
}

unsigned nbw::letter_of(const std::set<std::string>& atoms) const {
  unsigned letter = 0;
  for (const auto& p : atoms) {
    auto it = std::find(alphabet.begin(), alphabet.end(), p);
    if (it == alphabet.end()) throw shape_error("atom '" + p + "' is not in the automaton alphabet");
    letter |= 1u << (it - alphabet.begin());
  }
  return letter;
}

nbw ltl_to_nbw(const formula_ptr& psi, const std::vector<std::string>& alphabet) {
  if (alphabet.size() > 16) throw resource_error("too many atoms for an explicit alphabet");
  nnf t(alphabet);
  const int root = t.build(*psi, false);
  std::vector<int> untils;
  for (int i = 0; i < static_cast<int>(t.nodes.size()); ++i)
    if (t.nodes[i].kind == nk::until) untils.push_back(i);
  const int k = static_cast<int>(untils.size());

  nbw a;
  a.alphabet = alphabet;
  const int letters = a.num_letters();
  using key = std::pair<std::vector<int>, int>;
  std::map<key, int> ids;
  std::vector<key> states;
  std::map<std::vector<int>, std::vector<cover>> covers;
  auto id_of = [&](key s) {
    auto [it, fresh] = ids.emplace(s, static_cast<int>(states.size()));
    if (fresh) states.push_back(std::move(s));
    return it->second;
  };
  a.initial = id_of({{root}, 0});
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [obligations, j] = states[i];
    auto cit = covers.find(obligations);
    if (cit == covers.end()) {
      std::set<cover> out;
      expand(t, obligations, {}, {}, out);
      cit = covers.emplace(obligations, std::vector<cover>(out.begin(), out.end())).first;
    }
    std::vector<std::vector<int>> row(letters);
    for (const auto& c : cit->second) {
      int nj = j == k ? 0 : j;
      while (nj < k && !std::binary_search(c.postponed.begin(), c.postponed.end(), untils[nj])) ++nj;
      int target = id_of({c.next, nj});
      for (int l = 0; l < letters; ++l)
        if ((c.pos & ~static_cast<unsigned>(l)) == 0 && (c.neg & static_cast<unsigned>(l)) == 0) row[l].push_back(target);
    }
    a.delta.push_back(std::move(row));
  }
  a.num_states = static_cast<int>(states.size());
  for (const auto& s : states) a.accepting.push_back(s.second == k);

  int sink = -1;
  for (auto& row : a.delta) {
    for (auto& succ : row) {
      std::sort(succ.begin(), succ.end());
      succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
      if (succ.empty()) {
        if (sink < 0) sink = a.num_states;
        succ.push_back(sink);
      }
    }
  }
  if (sink >= 0) {
    ++a.num_states;
    a.accepting.push_back(false);
    a.delta.emplace_back(letters, std::vector<int>{sink});
  }
  return a;
}

bool nbw_accepts_lasso(const nbw& a, const lasso_word& w) {
  if (w.loop.empty()) throw shape_error("lasso loop must be nonempty");
  std::vector<unsigned> letters;
  for (const auto& l : w.prefix) letters.push_back(a.letter_of(l));
  for (const auto& l : w.loop) letters.push_back(a.letter_of(l));
  const int L = static_cast<int>(letters.size());
  const int P = static_cast<int>(w.prefix.size());
  auto id = [L](int q, int i) { return q * L + i; };
  std::vector<std::vector<int>> succ(a.num_states * L);
  for (int q = 0; q < a.num_states; ++q)
    for (int i = 0; i < L; ++i)
      for (int r : a.delta[q][letters[i]]) succ[id(q, i)].push_back(id(r, i + 1 < L ? i + 1 : P));

  std::vector<bool> reach(succ.size(), false);
  std::vector<int> work{id(a.initial, 0)};
  reach[work[0]] = true;
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    for (int u : succ[v]) {
      if (reach[u]) continue;
      reach[u] = true;
      work.push_back(u);
    }
  }
  auto scc = detail::strongly_connected(succ);
  for (int v = 0; v < static_cast<int>(succ.size()); ++v)
    if (reach[v] && a.accepting[v / L] && scc.nontrivial[scc.comp[v]]) return true;
  return false;
}

std::string dump(const nbw& a) {
  std::ostringstream out;
  out << "nbw states " << a.num_states << " initial " << a.initial << " alphabet";
  for (const auto& p : a.alphabet) out << " " << p;
  out << "\n";
  for (int q = 0; q < a.num_states; ++q) {
    out << "state " << q << (a.accepting[q] ? " accepting" : "") << "\n";
    for (int l = 0; l < a.num_letters(); ++l) {
      out << "  {";
      bool first = true;
      for (std::size_t i = 0; i < a.alphabet.size(); ++i) {
        if (!(l >> i & 1)) continue;
        out << (first ? "" : ",") << a.alphabet[i];
        first = false;
      }
      out << "} ->";
      for (int r : a.delta[q][l]) out << " " << r;
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace qctl
