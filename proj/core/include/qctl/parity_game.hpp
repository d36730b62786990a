#pragma once

// Finite parity games, max-even convention: a play is won by Eve iff the
// largest colour seen infinitely often is even.

#include <optional>
#include <string>
#include <vector>

namespace qctl {

enum class player : unsigned char { eve, adam };

inline player opponent(player p) { return p == player::eve ? player::adam : player::eve; }

struct parity_game {
  std::vector<player> owner;
  std::vector<int> colour;
  std::vector<std::vector<int>> succ;
  /// Winner of a position without successors; required for every deadlock.
  std::vector<std::optional<player>> deadlock;
  int initial = 0;

  int size() const noexcept { return static_cast<int>(owner.size()); }
  int add_position(player who, int c) {
    owner.push_back(who);
    colour.push_back(c);
    succ.emplace_back();
    deadlock.emplace_back();
    return size() - 1;
  }
  /// Throws shape_error on dangling moves, negative colours or untagged
  /// deadlocks.
  void validate() const;
};

struct parity_solution {
  std::vector<player> winner;
  /// Chosen successor for positions owned by their winner; -1 elsewhere
  /// and at deadlocks.
  std::vector<int> strategy;
};

/// Recursive Zielonka algorithm with attractor strategies.
parity_solution solve_zielonka(const parity_game& g);

/// Checks the solution as a certificate, without solving: each region is
/// a trap for the loser, winner moves stay inside, deadlocks inside are won
/// by the region owner, and every cycle consistent with the winner's
/// strategy has a winning maximal colour.
bool verify_strategy(const parity_game& g, const parity_solution& sol);

/// PGSolver-like text: `parity <last id>;` then `<id> <colour> <owner> <succ,...>;`
/// with owner 0 for Eve. Deadlocks are listed with their winner as a comment.
std::string dump(const parity_game& g);

}  // namespace qctl
