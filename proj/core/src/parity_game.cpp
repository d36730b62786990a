#include "qctl/parity_game.hpp"

#include <algorithm>
#include <sstream>

#include "qctl/error.hpp"
#include "scc.hpp"

namespace qctl {

void parity_game::validate() const {
  const int n = size();
  if (static_cast<int>(colour.size()) != n || static_cast<int>(succ.size()) != n ||
      static_cast<int>(deadlock.size()) != n)
    throw shape_error("inconsistent game tables");
  if (n > 0 && (initial < 0 || initial >= n)) throw shape_error("initial position out of range");
  for (int v = 0; v < n; ++v) {
    if (colour[v] < 0) throw shape_error("negative colour");
    if (succ[v].empty() && !deadlock[v]) throw shape_error("position " + std::to_string(v) + " is a deadlock without a winner");
    for (int w : succ[v])
      if (w < 0 || w >= n) throw shape_error("move to an unknown position");
  }
}

namespace {

constexpr int max_depth = 10000;

struct solver {
  const parity_game& g;
  std::vector<std::vector<int>> succ;  // deadlocks closed by self-loops
  std::vector<std::vector<int>> pred;
  std::vector<int> colour;

  explicit solver(const parity_game& game) : g(game) {
    const int n = g.size();
    succ = g.succ;
    colour = g.colour;
    pred.assign(n, {});
    for (int v = 0; v < n; ++v) {
      if (succ[v].empty()) {
        succ[v].push_back(v);
        colour[v] = *g.deadlock[v] == player::eve ? 0 : 1;
      }
      std::sort(succ[v].begin(), succ[v].end());
      succ[v].erase(std::unique(succ[v].begin(), succ[v].end()), succ[v].end());
      for (int w : succ[v]) pred[w].push_back(v);
    }
  }

  // Attractor of `target` for p inside `alive`; records p's attracting moves.
  std::vector<char> attractor(const std::vector<char>& alive, const std::vector<int>& target, player p,
                              std::vector<int>& strategy) const {
    const int n = g.size();
    std::vector<char> in(n, 0);
    std::vector<int> count(n, 0);
    std::vector<int> work;
    for (int v : target) {
      in[v] = 1;
      work.push_back(v);
    }
    for (int v = 0; v < n; ++v)
      if (alive[v])
        for (int w : succ[v]) count[v] += alive[w];
    while (!work.empty()) {
      int w = work.back();
      work.pop_back();
      for (int v : pred[w]) {
        if (!alive[v] || in[v]) continue;
        if (g.owner[v] == p) {
          in[v] = 1;
          strategy[v] = w;
          work.push_back(v);
        } else if (--count[v] == 0) {
          in[v] = 1;
          work.push_back(v);
        }
      }
    }
    return in;
  }

  // Fills winner/strategy for every alive position.
  void solve(const std::vector<char>& alive, std::vector<player>& winner, std::vector<int>& strategy, int depth) {
    if (depth > max_depth) throw resource_error("parity solver recursion too deep");
    const int n = g.size();
    int d = -1;
    for (int v = 0; v < n; ++v)
      if (alive[v]) d = std::max(d, colour[v]);
    if (d < 0) return;
    const player p = d % 2 == 0 ? player::eve : player::adam;
    std::vector<int> top;
    for (int v = 0; v < n; ++v)
      if (alive[v] && colour[v] == d) top.push_back(v);
    std::vector<int> attr_strategy(n, -1);
    auto A = attractor(alive, top, p, attr_strategy);
    std::vector<char> rest(n, 0);
    for (int v = 0; v < n; ++v) rest[v] = alive[v] && !A[v];
    std::vector<player> sub_winner(n, player::eve);
    std::vector<int> sub_strategy(n, -1);
    solve(rest, sub_winner, sub_strategy, depth + 1);
    std::vector<int> opp_region;
    for (int v = 0; v < n; ++v)
      if (rest[v] && sub_winner[v] != p) opp_region.push_back(v);
    if (opp_region.empty()) {
      for (int v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        winner[v] = p;
        strategy[v] = -1;
        if (g.owner[v] != p) continue;
        if (rest[v]) {
          strategy[v] = sub_strategy[v];
        } else if (attr_strategy[v] >= 0) {
          strategy[v] = attr_strategy[v];
        } else {
          for (int w : succ[v])
            if (alive[w]) {
              strategy[v] = w;
              break;
            }
        }
      }
      return;
    }
    const player o = opponent(p);
    std::vector<int> b_strategy(n, -1);
    auto B = attractor(alive, opp_region, o, b_strategy);
    std::vector<char> remaining(n, 0);
    for (int v = 0; v < n; ++v) remaining[v] = alive[v] && !B[v];
    solve(remaining, winner, strategy, depth + 1);
    for (int v = 0; v < n; ++v) {
      if (!B[v]) continue;
      winner[v] = o;
      strategy[v] = -1;
      if (g.owner[v] != o) continue;
      strategy[v] = rest[v] && sub_winner[v] == o ? sub_strategy[v] : b_strategy[v];
    }
  }
};

}  // namespace

parity_solution solve_zielonka(const parity_game& g) {
  g.validate();
  solver s(g);
  parity_solution sol;
  sol.winner.assign(g.size(), player::eve);
  sol.strategy.assign(g.size(), -1);
  std::vector<char> alive(g.size(), 1);
  s.solve(alive, sol.winner, sol.strategy, 0);
  for (int v = 0; v < g.size(); ++v)
    if (g.succ[v].empty()) sol.strategy[v] = -1;
  return sol;
}

bool verify_strategy(const parity_game& g, const parity_solution& sol) {
  const int n = g.size();
  if (static_cast<int>(sol.winner.size()) != n || static_cast<int>(sol.strategy.size()) != n) return false;
  for (player p : {player::eve, player::adam}) {
    std::vector<std::vector<int>> edges(n);
    for (int v = 0; v < n; ++v) {
      if (sol.winner[v] != p) continue;
      if (g.succ[v].empty()) {
        if (g.deadlock[v] != p) return false;
        continue;
      }
      if (g.owner[v] == p) {
        int w = sol.strategy[v];
        if (std::find(g.succ[v].begin(), g.succ[v].end(), w) == g.succ[v].end()) return false;
        if (sol.winner[w] != p) return false;
        edges[v].push_back(w);
      } else {
        for (int w : g.succ[v]) {
          if (sol.winner[w] != p) return false;
          edges[v].push_back(w);
        }
      }
    }
    // No cycle whose maximal colour favours the opponent.
    const int bad_parity = p == player::eve ? 1 : 0;
    std::vector<int> bad;
    for (int v = 0; v < n; ++v)
      if (sol.winner[v] == p && g.colour[v] % 2 == bad_parity) bad.push_back(g.colour[v]);
    std::sort(bad.begin(), bad.end());
    bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
    for (int c : bad) {
      std::vector<std::vector<int>> sub(n);
      for (int v = 0; v < n; ++v) {
        if (sol.winner[v] != p || g.colour[v] > c) continue;
        for (int w : edges[v])
          if (g.colour[w] <= c) sub[v].push_back(w);
      }
      auto scc = detail::strongly_connected(sub);
      for (int v = 0; v < n; ++v)
        if (sol.winner[v] == p && g.colour[v] == c && scc.nontrivial[scc.comp[v]]) return false;
    }
  }
  return true;
}

std::string dump(const parity_game& g) {
  std::ostringstream out;
  out << "parity " << g.size() - 1 << ";\n";
  for (int v = 0; v < g.size(); ++v) {
    out << v << " " << g.colour[v] << " " << (g.owner[v] == player::eve ? 0 : 1) << " ";
    if (g.succ[v].empty()) {
      out << v << "; // deadlock won by " << (*g.deadlock[v] == player::eve ? "eve" : "adam") << "\n";
      continue;
    }
    for (std::size_t i = 0; i < g.succ[v].size(); ++i) out << (i ? "," : "") << g.succ[v][i];
    out << (v == g.initial ? " \"init\"" : "") << ";\n";
  }
  return out.str();
}

}  // namespace qctl
