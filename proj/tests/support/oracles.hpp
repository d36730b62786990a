#pragma once

// Reference implementations used to cross-check the library. They share
// no code with the decision procedures beyond data types, parsing and the
// fixpoint CTL evaluator, which is itself an oracle.

#include <string>
#include <vector>

#include "qctl/kripke.hpp"
#include "qctl/logic.hpp"
#include "qctl/parity_game.hpp"
#include "qctl/word_automata.hpp"

namespace qctl::testing {

/// Structure semantics by brute force: a quantifier tries all 2^|S|
/// labellings of a relabelled copy of K and keeps the uniform ones. CTL
/// shapes go to evaluate_ctl_fixpoint, other path formulas to
/// oracle_exists_path.
std::vector<bool> oracle_structure(const cks& k, const formula_ptr& f);

/// E ψ by a Lichtenstein–Pnueli tableau: `truth[i][s]` is the value of
/// atom names[i] at s; ψ may use true, props, ¬, ∧, ∨, X and U. Returns the
/// states with some path satisfying ψ.
std::vector<bool> oracle_exists_path(const cks& k, const formula_ptr& psi, const std::vector<std::string>& names,
                                     const std::vector<std::vector<bool>>& truth);

/// Winners by enumerating every pair of positional strategies.
std::vector<player> oracle_game_winners(const parity_game& g);

/// All infinite traces through prefix·loop^ω starting in `start` have an
/// even maximal colour. Decided on the finite trace graph.
bool oracle_all_traces(int q_count, const std::vector<int>& colours, const std::vector<int>& start,
                       const std::vector<annotation>& prefix, const std::vector<annotation>& loop);

/// Drops every path quantifier: on a structure with a single infinite path
/// E and A coincide and a state formula becomes an LTL formula.
formula_ptr erase_path_quantifiers(const formula_ptr& f);

/// Every binder made plain, i.e. observing everything.
formula_ptr observe_fully(const formula_ptr& f);

/// The oracle verdicts of f and observe_fully(f) differ on K: the
/// observations actually restrict some quantifier.
bool observation_sensitive(const cks& k, const formula_ptr& f);

}  // namespace qctl::testing
