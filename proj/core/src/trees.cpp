#include "qctl/trees.hpp"

#include <algorithm>
#include <sstream>

namespace qctl {

void finite_tree::validate() const {
  if (nodes.empty()) throw shape_error("tree has no nodes");
  const local_tuple& root = nodes.begin()->first.front();
  for (const auto& [u, lab] : nodes) {
    if (u.empty()) throw shape_error("empty node word");
    if (u.front() != root) throw shape_error("node does not start with the root");
    if (static_cast<int>(u.size()) > depth + 1) throw shape_error("node deeper than the cutoff");
    for (const auto& d : u)
      if (d.coords != coords.indices()) throw shape_error("direction over the wrong coordinates");
    if (u.size() > 1) {
      tree_node parent(u.begin(), u.end() - 1);
      if (!nodes.count(parent)) throw shape_error("tree is not prefix-closed");
    }
  }
  // Every node above the cutoff has a child; children of u sort right after u.
  for (auto it = nodes.begin(); it != nodes.end(); ++it) {
    if (static_cast<int>(it->first.size()) > depth) continue;
    auto next = std::next(it);
    bool has_child = next != nodes.end() && next->first.size() == it->first.size() + 1 &&
                     std::equal(it->first.begin(), it->first.end(), next->first.begin());
    if (!has_child) throw shape_error("inner node without a child");
  }
}

finite_tree project_tree(const finite_tree& t, const observation& J) {
  if (!J.subset_of(t.coords)) throw shape_error("projection target is not a subset of the tree coordinates");
  finite_tree out;
  out.locals = t.locals;
  out.coords = J;
  out.depth = t.depth;
  for (const auto& [u, lab] : t.nodes) {
    tree_node v;
    v.reserve(u.size());
    for (const auto& d : u) v.push_back(project_state(d, J));
    auto [it, fresh] = out.nodes.emplace(v, lab);
    if (!fresh && it->second != lab) throw shape_error("projection merges nodes with different labels");
  }
  return out;
}

finite_tree lift_tree(const finite_tree& t, const observation& I, const local_tuple& extra) {
  if (!t.coords.subset_of(I)) throw shape_error("lift target must contain the tree coordinates");
  std::vector<int> rest;
  std::set_difference(I.indices().begin(), I.indices().end(), t.coords.indices().begin(), t.coords.indices().end(),
                      std::back_inserter(rest));
  if (extra.coords != rest) throw shape_error("lift: extra tuple must range over I minus the tree coordinates");
  direction_space wide(t.locals, I);

  auto combine = [&](const local_tuple& narrow, const local_tuple& ext) {
    local_tuple d;
    std::size_t a = 0, b = 0;
    while (a < narrow.coords.size() || b < ext.coords.size()) {
      if (b == ext.coords.size() || (a < narrow.coords.size() && narrow.coords[a] < ext.coords[b])) {
        d.coords.push_back(narrow.coords[a]);
        d.values.push_back(narrow.values[a++]);
      } else {
        d.coords.push_back(ext.coords[b]);
        d.values.push_back(ext.values[b++]);
      }
    }
    return d;
  };

  finite_tree out;
  out.locals = t.locals;
  out.coords = I;
  out.depth = t.depth;
  if (t.nodes.empty()) return out;
  const local_tuple& root = t.nodes.begin()->first.front();
  std::vector<std::pair<tree_node, tree_node>> frontier{{{combine(root, extra)}, {root}}};
  out.nodes[frontier[0].first] = t.label(frontier[0].second);
  for (int depth = 0; depth < t.depth; ++depth) {
    std::vector<std::pair<tree_node, tree_node>> next;
    for (const auto& [u, pu] : frontier) {
      for (int d = 0; d < wide.size(); ++d) {
        local_tuple dir = wide.at(d);
        tree_node pv = pu;
        pv.push_back(project_state(dir, t.coords));
        auto it = t.nodes.find(pv);
        if (it == t.nodes.end()) continue;
        tree_node v = u;
        v.push_back(dir);
        out.nodes[v] = it->second;
        next.emplace_back(std::move(v), std::move(pv));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

finite_tree merge_trees(const finite_tree& a, const finite_tree& b) {
  if (a.coords != b.coords || !(a.locals == b.locals)) throw shape_error("merge needs the same direction set");
  finite_tree out;
  out.locals = a.locals;
  out.coords = a.coords;
  out.depth = std::min(a.depth, b.depth);
  for (const auto& [u, lab] : a.nodes) {
    auto it = b.nodes.find(u);
    if (it == b.nodes.end()) continue;
    label_set merged = lab;
    merged.insert(it->second.begin(), it->second.end());
    out.nodes.emplace(u, std::move(merged));
  }
  return out;
}

bool node_obs_equiv(const tree_node& u, const tree_node& v, const observation& o) {
  if (u.size() != v.size()) return false;
  for (std::size_t k = 0; k < u.size(); ++k)
    if (!obs_equiv_states(u[k], v[k], o)) return false;
  return true;
}

bool is_tree_uniform(const finite_tree& t, const std::string& p, const observation& o) {
  // Group nodes by their o-projection; equivalence classes are exactly the groups.
  std::vector<int> visible;
  for (int c : t.coords.indices())
    if (o.contains(c)) visible.push_back(c);
  std::map<tree_node, bool> seen;
  for (const auto& [u, lab] : t.nodes) {
    tree_node key;
    for (const auto& d : u) key.push_back(project_state(d, visible));
    bool has = lab.count(p) != 0;
    auto [it, fresh] = seen.emplace(std::move(key), has);
    if (!fresh && it->second != has) return false;
  }
  return true;
}

std::string dump(const finite_tree& t) {
  std::ostringstream out;
  for (const auto& [u, lab] : t.nodes) {
    out << "node ";
    for (std::size_t k = 0; k < u.size(); ++k) {
      if (k) out << ".";
      out << to_string(t.locals, u[k]);
    }
    out << ":";
    for (const auto& p : lab) out << " " << p;
    out << "\n";
  }
  return out.str();
}

}  // namespace qctl
