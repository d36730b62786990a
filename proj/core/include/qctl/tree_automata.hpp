#pragma once

// Alternating parity tree automata over Λ_I-trees with the Q⊤/Q⊥
// convention for missing children, regular input trees, and the automaton
// constructions used by the tree-semantics checker.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "qctl/locals.hpp"
#include "qctl/parity_game.hpp"

namespace qctl {

/// Hash-consed positive boolean formulas over atoms [direction, state].
/// Conjunctions and disjunctions are flattened, sorted and constant-folded.
class pbf_store {
public:
  using id = int;
  static constexpr id top = 0;
  static constexpr id bottom = 1;
  enum class kind : unsigned char { top, bottom, atom, conj, disj };
  struct node {
    kind k = kind::top;
    int dir = -1;
    int state = -1;
    std::vector<id> kids;
  };

  pbf_store();

  id atom(int dir, int state);
  id conj(id a, id b) { return conj_all({a, b}); }
  id disj(id a, id b) { return disj_all({a, b}); }
  id conj_all(std::vector<id> fs);
  id disj_all(std::vector<id> fs);

  const node& at(id f) const { return nodes_[f]; }
  int size() const noexcept { return static_cast<int>(nodes_.size()); }

private:
  id intern(node n);
  id combine(kind k, std::vector<id> fs);

  std::vector<node> nodes_;
  std::map<std::tuple<kind, int, int, std::vector<id>>, id> ids_;
};

/// A = (Q, δ, q_init, C) with the partition Q⊤ (accept_missing) / Q⊥.
/// Letters are subsets of `atoms` encoded as bitmasks; δ is a total table.
struct ata {
  direction_space dirs;
  std::vector<std::string> atoms;
  int num_states = 0;
  int initial = 0;
  std::vector<int> colour;
  std::vector<bool> accept_missing;
  pbf_store pbf;
  std::vector<pbf_store::id> delta;  // [q * num_letters() + letter]

  unsigned num_letters() const { return 1u << atoms.size(); }
  /// Adds a state whose transitions are all ⊥.
  int add_state(int colour, bool accept_missing);
  pbf_store::id transition(int q, unsigned letter) const { return delta[q * num_letters() + letter]; }
  void set_transition(int q, unsigned letter, pbf_store::id f) { delta[q * num_letters() + letter] = f; }
  /// Letter read at a node labelled by `label`; other propositions are ignored.
  unsigned letter_of(const std::set<std::string>& label) const;
  /// Throws shape_error on inconsistent tables or out-of-range atoms.
  void validate() const;
};

ata accept_all(const direction_space& dirs);
ata reject_all(const direction_space& dirs);

/// Copies the states of `from` into `into` (same directions, atoms of
/// `from` ⊆ atoms of `into`) and returns the offset of the copies.
int append_states(ata& into, const ata& from);
/// Copies formula f of `from` into `into.pbf`, shifting states by offset.
pbf_store::id import_formula(ata& into, const ata& from, pbf_store::id f, int offset);
/// Restriction of a letter of `wide` to the atoms of `narrow_atoms`.
unsigned restrict_letter(const std::vector<std::string>& wide, unsigned letter,
                         const std::vector<std::string>& narrow_atoms);

/// Complement: ∧/∨ and ⊤/⊥ swapped, colours + 1, Q⊤ and Q⊥ swapped.
ata dualize(const ata& a);

/// Compresses the colour set while preserving order and parity.
ata normalize_colours(const ata& a);

/// Drops states unreachable from the initial state and from `roots`,
/// which are renumbered in place.
ata trim(const ata& a, std::vector<int>& roots);
inline ata trim(const ata& a) {
  std::vector<int> roots;
  return trim(a, roots);
}

/// Automaton over Λ_J accepting t iff the original accepts every lift of
/// t to Λ_I. Throws shape_error unless J ⊆ I.
ata narrow(const ata& a, const observation& J);

/// Every δ(q, a) is a disjunction of conjunctions holding exactly one atom
/// per direction.
bool is_nondeterministic(const ata& a);

struct simulate_options {
  int max_states = 20000;
};

/// Nondeterministic automaton with the same language, built by guessing
/// positional strategy annotations and checking their traces with
/// all_traces_automaton. Throws resource_error above max_states.
ata simulate(const ata& a, const simulate_options& opts = {});

/// δ'(q, a) = δ(q, a ∪ {p}) ∨ δ(q, a ∖ {p}); p leaves the atom set.
/// Throws shape_error unless nta is nondeterministic.
ata project(const ata& nta, const std::string& p);

/// A finite pointed graph whose unfolding is the input tree. child[v][d]
/// is the d-successor of v, or -1 when that child is missing.
struct regular_tree {
  direction_space dirs;
  std::vector<std::set<std::string>> labels;
  std::vector<std::vector<int>> child;
  int root = 0;

  int size() const noexcept { return static_cast<int>(labels.size()); }
  int add_vertex(std::set<std::string> label = {});
  /// Throws shape_error on bad successor tables.
  void validate() const;
};

/// The full Λ_I-tree with empty labels: one vertex per direction, each
/// with every direction as a child. Rooted at the vertex of `root_dir`.
regular_tree full_tree(const direction_space& dirs, int root_dir = 0);

/// Same vertices, presented over Λ_I ⊇ Λ_J: the d-child of v is the
/// proj_J(d)-child of v. Its unfolding is the lift of t's unfolding.
regular_tree lift(const regular_tree& t, const observation& I);

struct membership_stats {
  std::size_t positions = 0;
};

/// The acceptance game G(A, t, start) on the unfolding of t.
parity_game acceptance_game(const ata& a, const regular_tree& t, int start);

/// Eve wins the acceptance game. Throws shape_error on a direction mismatch.
bool membership(const ata& a, const regular_tree& t, int start, membership_stats* stats = nullptr);
inline bool membership(const ata& a, const regular_tree& t) { return membership(a, t, t.root); }

std::string to_string(const ata& a, pbf_store::id f);
std::string dump(const ata& a);

}  // namespace qctl
