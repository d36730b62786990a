#pragma once

// Model checking hierarchical formulas under the tree semantics, where
// quantifiers label the unfolding. Each subformula φ is compiled into an
// alternating automaton over Λ_{I_φ}-trees; the final answer is membership
// of the full tree with the empty labelling.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qctl/kripke.hpp"
#include "qctl/logic.hpp"
#include "qctl/tree_automata.hpp"

namespace qctl {

struct tree_check_options {
  int max_quantifier_depth = 2;
  int max_simulated_states = 20000;
  std::string dump_dir;  // write every built automaton there when nonempty
};

struct tree_check_stats {
  int automata_built = 0;
  int largest_automaton = 0;
  int final_states = 0;
  std::size_t game_positions = 0;
};

/// One automaton shared by all states of K, with the initial state to use
/// when the current node stands for each state.
struct automaton_family {
  ata automaton;
  std::vector<int> initial;
};

class tree_checker {
public:
  /// Renames binders apart, binds plain quantifiers to [n] and validates
  /// the formula. Throws hierarchy_error, model_error (unknown free
  /// propositions) or resource_error (quantifier nesting too deep) before
  /// building anything.
  tree_checker(const cks& k, const formula_ptr& phi, tree_check_options opts = {});

  /// The formula after renaming and binding.
  const formula_ptr& formula() const noexcept { return phi_; }
  /// Subformula of formula() corresponding to a subformula of the input.
  formula_ptr renamed(const formula_ptr& original_sub) const;

  /// Automata for a subformula of formula(), memoized.
  const automaton_family& family(const formula_ptr& sub);
  /// The family's automaton started in the state for s, trimmed.
  ata automaton(const formula_ptr& sub, int s);

  bool check(int s);
  const tree_check_stats& stats() const noexcept { return stats_; }

private:
  automaton_family build(const formula_ptr& sub);
  observation directions_of(const formula_ptr& sub) const;
  void record(const ata& a, const std::string& what);

  const cks& k_;
  formula_ptr original_;
  formula_ptr phi_;
  prop_partition props_;
  tree_check_options opts_;
  tree_check_stats stats_;
  std::map<std::string, automaton_family> memo_;
};

/// The automaton for the subformula phi of Phi at state s.
ata build_automaton(const formula_ptr& Phi, const cks& k, int s, const formula_ptr& phi,
                    const tree_check_options& opts = {});

/// K, s ⊨t Phi.
bool check_tree(const cks& k, int s, const formula_ptr& Phi, const tree_check_options& opts = {},
                tree_check_stats* stats = nullptr);

}  // namespace qctl
