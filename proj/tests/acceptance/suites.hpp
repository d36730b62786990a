#pragma once

// Acceptance gate: one check per release criterion, each printing a single
// PASS/FAIL line with its measured figures and pinned limits.

#include <ostream>
#include <string>
#include <vector>

namespace qctl::acceptance {

struct result {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

result structure_differential();
result translation_invariance();
result unfolding_invariance();
result curated_tree_suite();
result automata_laws();
result parity_solver();
result ltl_pipeline();
result hierarchy_gate();

/// Runs every criterion in order, printing one line each to out.
std::vector<result> run_all(std::ostream& out);

}  // namespace qctl::acceptance
