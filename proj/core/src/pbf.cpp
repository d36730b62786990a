#include <algorithm>

#include "qctl/tree_automata.hpp"

namespace qctl {

pbf_store::pbf_store() {
  intern({kind::top, -1, -1, {}});
  intern({kind::bottom, -1, -1, {}});
}

pbf_store::id pbf_store::intern(node n) {
  auto key = std::tuple(n.k, n.dir, n.state, n.kids);
  auto [it, fresh] = ids_.emplace(std::move(key), static_cast<id>(nodes_.size()));
  if (fresh) nodes_.push_back(std::move(n));
  return it->second;
}

pbf_store::id pbf_store::atom(int dir, int state) { return intern({kind::atom, dir, state, {}}); }

pbf_store::id pbf_store::combine(kind k, std::vector<id> fs) {
  const id unit = k == kind::conj ? top : bottom;
  const id zero = k == kind::conj ? bottom : top;
  std::vector<id> flat;
  for (id f : fs) {
    if (f == zero) return zero;
    if (f == unit) continue;
    if (nodes_[f].k == k) {
      flat.insert(flat.end(), nodes_[f].kids.begin(), nodes_[f].kids.end());
    } else {
      flat.push_back(f);
    }
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  if (flat.empty()) return unit;
  if (flat.size() == 1) return flat[0];
  return intern({k, -1, -1, std::move(flat)});
}

pbf_store::id pbf_store::conj_all(std::vector<id> fs) { return combine(kind::conj, std::move(fs)); }
pbf_store::id pbf_store::disj_all(std::vector<id> fs) { return combine(kind::disj, std::move(fs)); }

}  // namespace qctl
