#include <algorithm>
#include <numeric>

#include "qctl/word_automata.hpp"

namespace qctl {

// Büchi states: q in phase 1 is q; (q, c) in phase 2 is q_count + q·|odd| + index of c.
// Phase 2 guesses that from now on the trace stays at colours ≤ c and
// accepts on seeing c, so it accepts exactly the traces whose maximal
// recurring colour is the odd colour c.

all_traces_automaton::all_traces_automaton(int q_count, std::vector<int> colours)
    : q_count_(q_count), colours_(std::move(colours)) {
  if (static_cast<int>(colours_.size()) != q_count_) throw shape_error("one colour per state expected");
  for (int c : colours_)
    if (c % 2 == 1) odd_.push_back(c);
  std::sort(odd_.begin(), odd_.end());
  odd_.erase(std::unique(odd_.begin(), odd_.end()), odd_.end());
  buchi_states_ = q_count_ * (1 + static_cast<int>(odd_.size()));
  neutral_ = 4 * buchi_states_ + 1;
  max_colour_ = 4 * buchi_states_ + 2;
}

std::vector<int> all_traces_automaton::post(const std::vector<int>& label, const annotation& a) const {
  const int k = static_cast<int>(odd_.size());
  std::vector<int> out;
  for (int b : label) {
    if (b < q_count_) {
      auto it = std::lower_bound(a.begin(), a.end(), std::pair{b, -1});
      for (; it != a.end() && it->first == b; ++it) {
        int q2 = it->second;
        out.push_back(q2);
        for (int i = 0; i < k; ++i)
          if (colours_[q2] <= odd_[i]) out.push_back(q_count_ + q2 * k + i);
      }
    } else {
      int q = (b - q_count_) / k, i = (b - q_count_) % k;
      auto it = std::lower_bound(a.begin(), a.end(), std::pair{q, -1});
      for (; it != a.end() && it->first == q; ++it)
        if (colours_[it->second] <= odd_[i]) out.push_back(q_count_ + it->second * k + i);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int all_traces_automaton::intern(tree t) {
  std::vector<int> key;
  for (const auto& n : t) {
    key.push_back(n.parent);
    key.push_back(static_cast<int>(n.label.size()));
    key.insert(key.end(), n.label.begin(), n.label.end());
  }
  auto [it, fresh] = index_.emplace(std::move(key), static_cast<int>(trees_.size()));
  if (fresh) {
    std::vector<int> act;
    if (!t.empty())
      for (int b : t[0].label)
        if (b < q_count_) act.push_back(b);
    active_.push_back(std::move(act));
    trees_.push_back(std::move(t));
  }
  return it->second;
}

int all_traces_automaton::initial(const std::vector<int>& start) {
  std::vector<int> label(start);
  std::sort(label.begin(), label.end());
  label.erase(std::unique(label.begin(), label.end()), label.end());
  for (int q : label)
    if (q < 0 || q >= q_count_) throw shape_error("initial trace state out of range");
  tree t;
  if (!label.empty()) t.push_back({-1, std::move(label)});
  return intern(std::move(t));
}

std::pair<int, int> all_traces_automaton::step(int state, const annotation& a) {
  if (auto it = cache_.find({state, a}); it != cache_.end()) return it->second;
  const int k = static_cast<int>(odd_.size());
  auto accepting = [&](int b) {
    if (b < q_count_) return false;
    int q = (b - q_count_) / k, i = (b - q_count_) % k;
    return colours_[q] == odd_[i];
  };

  tree t = trees_[state];
  const int m = static_cast<int>(t.size());
  for (int i = 0; i < m; ++i) {
    std::vector<int> acc;
    for (int b : t[i].label)
      if (accepting(b)) acc.push_back(b);
    if (!acc.empty()) t.push_back({i, std::move(acc)});
  }
  for (auto& n : t) n.label = post(n.label, a);

  const int size = static_cast<int>(t.size());
  std::vector<std::vector<int>> claimed(size);
  for (int i = 1; i < size; ++i) {
    int p = t[i].parent;
    std::vector<int> inside, fresh;
    std::set_intersection(t[i].label.begin(), t[i].label.end(), t[p].label.begin(), t[p].label.end(),
                          std::back_inserter(inside));
    std::set_difference(inside.begin(), inside.end(), claimed[p].begin(), claimed[p].end(),
                        std::back_inserter(fresh));
    t[i].label = std::move(fresh);
    std::vector<int> merged;
    std::set_union(claimed[p].begin(), claimed[p].end(), t[i].label.begin(), t[i].label.end(),
                   std::back_inserter(merged));
    claimed[p] = std::move(merged);
  }

  constexpr int none = 1 << 30;
  int f = none, e = none;
  std::vector<bool> removed(size, false);
  for (int i = 0; i < size; ++i) {
    if (t[i].label.empty() || (i > 0 && removed[t[i].parent])) {
      removed[i] = true;
      f = std::min(f, i + 1);
    }
  }
  for (int i = 0; i < size; ++i) {
    if (removed[i]) continue;
    std::vector<int> below;
    bool has_child = false;
    for (int j = i + 1; j < size; ++j) {
      if (removed[j] || t[j].parent != i) continue;
      has_child = true;
      std::vector<int> u;
      std::set_union(below.begin(), below.end(), t[j].label.begin(), t[j].label.end(), std::back_inserter(u));
      below = std::move(u);
    }
    if (!has_child || below != t[i].label) continue;
    e = std::min(e, i + 1);
    std::vector<bool> under(size, false);
    under[i] = true;
    for (int j = i + 1; j < size; ++j) {
      if (t[j].parent >= 0 && under[t[j].parent]) {
        under[j] = true;
        if (!removed[j]) {
          removed[j] = true;
          f = std::min(f, j + 1);
        }
      }
    }
  }

  tree out;
  std::vector<int> renumber(size, -1);
  for (int i = 0; i < size; ++i) {
    if (removed[i]) continue;
    renumber[i] = static_cast<int>(out.size());
    out.push_back({t[i].parent < 0 ? -1 : renumber[t[i].parent], std::move(t[i].label)});
  }

  int min_colour = neutral_;
  if (e != none && e < f) {
    min_colour = 2 * e;
  } else if (f != none) {
    min_colour = 2 * f - 1;
  }
  const int K = neutral_ + 1;  // even
  int colour = K - min_colour + 1;
  auto result = std::pair{intern(std::move(out)), colour};
  cache_.emplace(std::pair{state, a}, result);
  return result;
}

annotation annotation_of_letter(int q_count, unsigned letter) {
  annotation a;
  for (int q = 0; q < q_count; ++q)
    for (int r = 0; r < q_count; ++r)
      if (letter >> (q * q_count + r) & 1) a.emplace_back(q, r);
  return a;
}

dpw det_all_traces(int q_count, const std::vector<int>& colours, std::vector<int> start) {
  if (q_count * q_count > 16) throw resource_error("explicit all-traces automaton is limited to 4 states");
  if (start.empty()) {
    start.resize(q_count);
    std::iota(start.begin(), start.end(), 0);
  }
  all_traces_automaton lazy(q_count, colours);
  dpw out;
  out.initial = lazy.initial(start);
  const unsigned letters = 1u << (q_count * q_count);
  for (int s = 0; s < lazy.num_states(); ++s) {
    std::vector<int> row(letters), col(letters);
    for (unsigned l = 0; l < letters; ++l) std::tie(row[l], col[l]) = lazy.step(s, annotation_of_letter(q_count, l));
    out.delta.push_back(std::move(row));
    out.colour.push_back(std::move(col));
  }
  out.num_states = lazy.num_states();
  return out;
}

}  // namespace qctl
