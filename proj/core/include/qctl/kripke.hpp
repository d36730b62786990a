#pragma once

// Compound Kripke structures.

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qctl/locals.hpp"
#include "qctl/trees.hpp"

namespace qctl {

/// A Kripke structure whose states are tuples over Λ_[n]. Immutable once
/// validated; build it with parse_model or fill the fields and call
/// validate().
struct cks {
  local_alphabets locals;
  std::vector<std::string> state_names;
  std::vector<std::vector<int>> tuples;  // per state, local index for coordinates 1..n
  std::vector<std::vector<int>> succ;    // sorted successor lists
  std::vector<std::set<std::string>> labels;
  std::set<std::string> atoms;           // AP_f, ⊇ all labels

  int num_states() const noexcept { return static_cast<int>(state_names.size()); }
  int dimension() const noexcept { return locals.dimension(); }
  /// Throws model_error for unknown names.
  int state_index(const std::string& name) const;
  local_tuple tuple(int s) const;

  /// p ∈ ℓ(s), where the dedicated proposition at_l holds iff l is one of
  /// s's local states.
  bool holds(int s, const std::string& p) const;
  /// p ∈ AP_f, dedicated propositions included.
  bool knows(const std::string& p) const;

  /// Checks left-totality, tuple typing, label/atom consistency and that
  /// distinct states are distinct tuples. Throws model_error.
  void validate() const;
};

/// Line-oriented model format, `#` starts a comment:
///
///   locals 1: a b
///   locals 2: x y
///   state s1 = (a,x)
///   edge s1 -> s2
///   label s1: p q
///   atoms r          # optional: propositions labelled nowhere
///
/// Throws model_error with the offending line number.
cks parse_model(std::string_view text);
cks load_model(const std::string& path);

/// Inverse of parse_model.
std::string to_string(const cks& k);

/// K is o-uniform in p: every pair of o-indistinguishable states agrees on p.
bool is_uniform_labelling(const cks& k, const std::string& p, const observation& o);

/// Finite paths from s with at most depth+1 states, labelled by their last
/// state. Throws model_error if s is out of range.
finite_tree unfold_bounded(const cks& k, int s, int depth);

}  // namespace qctl
