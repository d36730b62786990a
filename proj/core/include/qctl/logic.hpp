#pragma once

// Formulas of quantified CTL* with imperfect information: AST, surface
// syntax, and syntactic analyses.

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qctl/error.hpp"

namespace qctl {

/// A finite set of local-state coordinates (positive integers), kept sorted
/// and duplicate-free. The empty observation is blind.
class observation {
public:
  observation() = default;
  observation(std::initializer_list<int> indices);
  explicit observation(std::vector<int> indices);

  /// The full observation [n] = {1..n}.
  static observation full(int n);

  const std::vector<int>& indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  bool contains(int i) const;

  bool subset_of(const observation& other) const;
  observation intersect(const observation& other) const;
  /// o ∩ [n]
  observation restrict_to(int n) const;

  std::string to_string() const;  // "{1,2}"

  friend bool operator==(const observation&, const observation&) = default;
  friend auto operator<=>(const observation&, const observation&) = default;

private:
  std::vector<int> indices_;
};

enum class op : unsigned char {
  tt,           // true
  prop,         // atomic proposition
  neg,          // ¬
  disj,         // ∨
  conj,         // ∧
  exists_path,  // E ψ
  exists_prop,  // ∃^o p. φ
  next,         // X ψ   (path)
  until,        // ψ U ψ (path)
};

struct formula;
using formula_ptr = std::shared_ptr<const formula>;

/// Immutable AST node. State and path formulas share one node type: a path
/// formula is any node that contains `next` or `until` outside an
/// `exists_path`. Build nodes with the factory functions below.
struct formula {
  op kind = op::tt;
  std::string name;      // prop, exists_prop
  observation obs;       // exists_prop
  bool full_obs = false; // exists_prop written without ^{...}: stands for [n]
  formula_ptr lhs;       // unary operand / left operand / quantifier body
  formula_ptr rhs;       // right operand
};

bool operator==(const formula& a, const formula& b);
inline bool equal(const formula_ptr& a, const formula_ptr& b) { return *a == *b; }

// Factories. make_not cancels double negation.
formula_ptr make_true();
formula_ptr make_false();
formula_ptr make_prop(std::string name);
formula_ptr make_not(formula_ptr f);
formula_ptr make_or(formula_ptr a, formula_ptr b);
formula_ptr make_and(formula_ptr a, formula_ptr b);
formula_ptr make_implies(formula_ptr a, formula_ptr b);
formula_ptr make_E(formula_ptr path);
formula_ptr make_A(formula_ptr path);
formula_ptr make_next(formula_ptr path);
formula_ptr make_until(formula_ptr a, formula_ptr b);
formula_ptr make_F(formula_ptr path);
formula_ptr make_G(formula_ptr path);
formula_ptr make_exists(std::string prop, observation obs, formula_ptr body);
/// Plain ∃p, i.e. ∃^{[n]} p with n fixed by the model at check time.
formula_ptr make_exists(std::string prop, formula_ptr body);

/// Conjunction / disjunction of a list; empty lists give true / false.
formula_ptr make_and_all(const std::vector<formula_ptr>& fs);
formula_ptr make_or_all(const std::vector<formula_ptr>& fs);

/// Parses the concrete syntax:
///
///   state ::= true | false | ident | "!" state | state (& | "|" | ->) state
///           | ( state ) | (E|A) path | exists ident ^{n,...} . state
///           | exists ident . state
///   path  ::= state | ! path | path (&|"|"|->) path | X path | path U path
///           | F path | G path
///
/// Precedence: unary > U > & > | > ->, binary operators right-associative;
/// a quantifier body extends as far to the right as possible. Identifiers may
/// be double-quoted (escapes \" and \\). Throws parse_error.
formula_ptr parse_formula(std::string_view text);

/// Inverse of parse_formula on ASTs.
std::string to_string(const formula& f);
inline std::string to_string(const formula_ptr& f) { return to_string(*f); }

/// Inductive size; a quantifier contributes 1 + |o|.
std::size_t formula_size(const formula& f);

/// True iff f contains no next/until outside an exists_path.
bool is_state_formula(const formula& f);

/// True iff f contains no exists_prop node.
bool is_quantifier_free(const formula& f);

/// Maximum number of nested exists_prop nodes.
int quantifier_depth(const formula& f);

/// Replaces every plain quantifier by ∃^{[n]}.
formula_ptr bind_full_observations(const formula_ptr& f, int n);

struct hierarchy_violation {
  std::string outer_prop;
  observation outer;
  std::string inner_prop;
  observation inner;
  std::string describe() const;
};

/// Thrown by the tree-semantics checker on non-hierarchical input.
class hierarchy_error : public unsupported_formula {
public:
  explicit hierarchy_error(hierarchy_violation v)
      : unsupported_formula("formula is not hierarchical: " + v.describe()), violation_(std::move(v)) {}
  const hierarchy_violation& violation() const noexcept { return violation_; }

private:
  hierarchy_violation violation_;
};

/// First pair of nested quantifiers ∃^{o1} ... ∃^{o2} with o1 ⊄ o2, if any.
/// When n is given observations are compared after intersecting with [n];
/// an unbound plain quantifier observes everything.
std::optional<hierarchy_violation> find_hierarchy_violation(const formula& f,
                                                            std::optional<int> n = std::nullopt);
bool is_hierarchical(const formula& f, std::optional<int> n = std::nullopt);

/// Intersection of all observations occurring in f (each taken ∩ [n]);
/// [n] when f has no quantifier.
observation obs_intersection(const formula& f, int n);

/// Propositions split into quantified (bound somewhere) and free ones.
struct prop_partition {
  std::set<std::string> quantified;
  std::set<std::string> free;
};

/// Free propositions of f (those not captured by an enclosing binder).
std::set<std::string> free_props(const formula& f);

/// Renames binders so that each quantifier binds a fresh proposition that
/// occurs nowhere else; free occurrences are untouched.
std::pair<formula_ptr, prop_partition> rename_apart(const formula_ptr& f);

/// Maximal state subformulas of a path formula, in first-occurrence order
/// (`true` is kept as a constant and never listed).
std::vector<formula_ptr> max_state_subformulas(const formula_ptr& path);

/// Replaces the maximal state subformulas of `path` by propositions named
/// by `atom_names` (parallel to max_state_subformulas(path)).
formula_ptr ltl_skeleton(const formula_ptr& path, const std::vector<formula_ptr>& maximal,
                         const std::vector<std::string>& atom_names);

/// Shapes of CTL path-quantifier applications after desugaring.
enum class ctl_shape { ex, ax, eu, au };
struct ctl_match {
  ctl_shape shape;
  formula_ptr first;   // EX/AX operand, or left until operand
  formula_ptr second;  // right until operand (EU/AU)
  bool negated_operand = false;  // AX / AU come as E¬X φ / E¬(φ U φ), see below
};

/// Recognises E X φ, E ¬X φ, E (φ U φ') and E ¬(φ U φ') with state-formula
/// operands. For E ¬X φ the match is {ax, φ} and means "some successor
/// violates φ", i.e. ¬AX φ; likewise E ¬(φ U φ') is ¬AU. The caller is the
/// exists_path node.
std::optional<ctl_match> match_ctl(const formula& exists_path);

/// True iff every exists_path in f has a CTL shape.
bool is_ctl(const formula& f);

/// Name of the dedicated proposition that holds exactly in states whose
/// local state in the owning coordinate is `local`.
std::string local_prop_name(const std::string& local);
/// Inverse of local_prop_name.
std::optional<std::string> local_of_prop(const std::string& prop);

}  // namespace qctl
