#pragma once

// ω-word automata: LTL on lasso words, LTL to Büchi, and the deterministic
// parity automaton that checks all traces of an annotation sequence.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qctl/logic.hpp"

namespace qctl {

/// prefix · loop^ω. Letters are sets of atom names.
struct lasso_word {
  std::vector<std::set<std::string>> prefix;
  std::vector<std::set<std::string>> loop;  // nonempty
};

/// Truth of the LTL formula psi at position 0 of w. psi may use true,
/// propositions, ¬, ∨, ∧, X and U. With a nonempty alphabet every atom
/// of psi must belong to it. Throws unsupported_formula otherwise.
bool ltl_eval_lasso(const formula_ptr& psi, const lasso_word& w, const std::vector<std::string>& alphabet = {});

/// Büchi automaton over the letters 2^alphabet, encoded as bitmasks (bit i
/// set iff alphabet[i] holds). The transition relation is total.
struct nbw {
  std::vector<std::string> alphabet;
  int num_states = 0;
  int initial = 0;
  std::vector<bool> accepting;
  std::vector<std::vector<std::vector<int>>> delta;  // [state][letter] -> successors

  int num_letters() const { return 1 << alphabet.size(); }
  /// Throws shape_error for atoms outside the alphabet.
  unsigned letter_of(const std::set<std::string>& atoms) const;
};

/// Tableau translation; psi may use the connectives of ltl_eval_lasso over
/// atoms drawn from `alphabet`. Throws unsupported_formula otherwise.
nbw ltl_to_nbw(const formula_ptr& psi, const std::vector<std::string>& alphabet);

/// Some run of a on w visits accepting states infinitely often.
bool nbw_accepts_lasso(const nbw& a, const lasso_word& w);

std::string dump(const nbw& a);

/// A trace annotation: pairs (q, q') meaning "the copy in q continues in q'".
/// Kept sorted and duplicate-free.
using annotation = std::vector<std::pair<int, int>>;

/// Deterministic parity automaton (max colour seen infinitely often even)
/// over annotation sequences, accepting iff every infinite trace through
/// the sequence has an even maximal state colour. Traces start in the
/// initial set. Colours sit on transitions. States are built on demand by
/// a Safra construction on the Büchi automaton for "some trace is bad".
class all_traces_automaton {
public:
  all_traces_automaton(int q_count, std::vector<int> colours);

  int q_count() const noexcept { return q_count_; }
  /// State whose traces start in `start`.
  int initial(const std::vector<int>& start);
  /// Successor and transition colour.
  std::pair<int, int> step(int state, const annotation& a);
  /// Automaton states q in which some trace currently sits.
  const std::vector<int>& active(int state) const { return active_[state]; }
  int num_states() const noexcept { return static_cast<int>(trees_.size()); }
  /// Colours are in [0, max_colour()].
  int max_colour() const noexcept { return max_colour_; }

private:
  struct node {
    int parent;               // index in the node list, -1 for the root
    std::vector<int> label;   // sorted Büchi states
  };
  using tree = std::vector<node>;  // in age order, root first

  int intern(tree t);
  std::vector<int> post(const std::vector<int>& label, const annotation& a) const;

  int q_count_;
  std::vector<int> colours_;
  std::vector<int> odd_;  // odd colours used by the Büchi phase
  int buchi_states_;
  int max_colour_;
  int neutral_;
  std::vector<tree> trees_;
  std::vector<std::vector<int>> active_;
  std::map<std::vector<int>, int> index_;
  std::map<std::pair<int, annotation>, std::pair<int, int>> cache_;
};

/// Explicit deterministic parity word automaton.
struct dpw {
  int num_states = 0;
  int initial = 0;
  std::vector<std::vector<int>> delta;   // [state][letter]
  std::vector<std::vector<int>> colour;  // [state][letter]
};

/// All-traces automaton over letters 2^(q_count²): bit q·q_count+q' of a
/// letter stands for the pair (q, q'). Traces start in every state unless
/// `start` is given. Only meant for small q_count.
dpw det_all_traces(int q_count, const std::vector<int>& colours, std::vector<int> start = {});

/// Annotation encoded by a letter of det_all_traces.
annotation annotation_of_letter(int q_count, unsigned letter);

}  // namespace qctl
