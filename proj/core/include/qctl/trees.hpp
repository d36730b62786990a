#pragma once

// Explicit labelled trees truncated at a finite depth. Used as a reference
// surface for the tree semantics in tests, never by the decision procedure.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "qctl/locals.hpp"

namespace qctl {

using tree_node = std::vector<local_tuple>;
using label_set = std::set<std::string>;

/// A (AP, Λ_I)-labelled tree cut at `depth`: nodes are nonempty direction
/// words of length ≤ depth+1 starting with the root direction.
struct finite_tree {
  local_alphabets locals;
  observation coords;  // I
  int depth = 0;
  std::map<tree_node, label_set> nodes;

  bool contains(const tree_node& u) const { return nodes.count(u) != 0; }
  const label_set& label(const tree_node& u) const { return nodes.at(u); }
  /// Throws shape_error when a tree invariant fails.
  void validate() const;
};

/// Image of t under coordinatewise projection to J ⊆ I. Throws shape_error if
/// J ⊄ I or if two merged nodes carry different labels.
finite_tree project_tree(const finite_tree& t, const observation& J);

/// Lift of t (over Λ_J) to Λ_I for I ⊇ J, rooted in (root, extra); labels
/// are pulled back through projection. `extra` ranges over I∖J.
finite_tree lift_tree(const finite_tree& t, const observation& I, const local_tuple& extra);

/// Domain intersection with per-node label union. Throws shape_error on
/// different direction sets.
finite_tree merge_trees(const finite_tree& a, const finite_tree& b);

/// Equal length and letterwise o-indistinguishable.
bool node_obs_equiv(const tree_node& u, const tree_node& v, const observation& o);

/// All o-indistinguishable node pairs agree on p.
bool is_tree_uniform(const finite_tree& t, const std::string& p, const observation& o);

/// One node per line: `node <d1>.<d2>...: p q`.
std::string dump(const finite_tree& t);

}  // namespace qctl
