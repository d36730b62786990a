#pragma once

// Reduction of QCTL_ii under the structure semantics to plain QCTL.

#include "qctl/locals.hpp"
#include "qctl/logic.hpp"

namespace qctl {

/// Replaces every ∃^o p. φ by the plain ∃p. (U_o(p) ∧ φ'), where U_o(p)
/// says that p is uniform, on the reachable part, in each class of states
/// sharing their local states in o ∩ [n]. Local states are referred to by
/// their dedicated propositions (see local_prop_name). f must be a state
/// formula whose path quantifiers all have CTL shape; otherwise throws
/// unsupported_formula.
formula_ptr translate_structural(const formula_ptr& f, const local_alphabets& locals);

}  // namespace qctl
