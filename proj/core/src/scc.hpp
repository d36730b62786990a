#pragma once

#include <algorithm>
#include <vector>

namespace qctl::detail {

/// Strongly connected components of a digraph (iterative Tarjan). comp[v]
/// numbers components in reverse topological order.
struct scc_result {
  std::vector<int> comp;
  int count = 0;
  std::vector<bool> nontrivial;  // has a cycle: size > 1 or a self-loop
};

inline scc_result strongly_connected(const std::vector<std::vector<int>>& succ) {
  const int n = static_cast<int>(succ.size());
  scc_result r;
  r.comp.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::pair<int, std::size_t>> call;
  std::vector<int> size;
  int counter = 0;
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, i] = call.back();
      if (i == 0 && index[v] == -1) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (i < succ[v].size()) {
        int w = succ[v][i++];
        if (index[w] == -1) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        int sz = 0;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          r.comp[w] = r.count;
          ++sz;
        } while (w != v);
        size.push_back(sz);
        ++r.count;
      }
      int done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  r.nontrivial.assign(r.count, false);
  for (int c = 0; c < r.count; ++c) r.nontrivial[c] = size[c] > 1;
  for (int v = 0; v < n; ++v)
    for (int w : succ[v])
      if (w == v) r.nontrivial[r.comp[v]] = true;
  return r;
}

}  // namespace qctl::detail
