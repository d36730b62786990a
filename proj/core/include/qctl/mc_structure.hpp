#pragma once

// Model checking under the structure semantics: quantifiers range over
// uniform labellings of the finite structure itself.

#include <map>
#include <string>
#include <vector>

#include "qctl/kripke.hpp"
#include "qctl/logic.hpp"

namespace qctl {

/// Labellings of quantified propositions, one truth value per state.
using valuation = std::map<std::string, std::vector<bool>>;

/// Truth value of the state formula f at every state of K. Quantifiers
/// enumerate all labellings that are constant on o-classes; path
/// quantifiers go through a Büchi product. Throws model_error for
/// propositions unknown to K and unsupported_formula for path formulas.
std::vector<bool> evaluate_structure(const cks& k, const formula_ptr& f, const valuation& env = {});

/// K, s ⊨s f. Plain quantifiers observe [n].
bool check_structure(const cks& k, int s, const formula_ptr& f);

/// Classic fixpoint evaluation of a quantifier-free CTL formula (after
/// desugaring: EX, ¬AX, EU and ¬AU shapes). Quantified propositions may be
/// supplied through env. Throws unsupported_formula outside the fragment.
std::vector<bool> evaluate_ctl_fixpoint(const cks& k, const formula_ptr& f, const valuation& env = {});
bool check_ctl_fixpoint(const cks& k, int s, const formula_ptr& f);

}  // namespace qctl
