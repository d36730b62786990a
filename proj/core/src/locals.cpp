#include "qctl/locals.hpp"

#include <algorithm>
#include <set>

namespace qctl {

local_alphabets::local_alphabets(std::vector<std::vector<std::string>> names) : names_(std::move(names)) {
  if (names_.empty()) throw model_error("at least one local alphabet is required");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw model_error("local alphabet " + std::to_string(i + 1) + " is empty");
    for (const auto& l : names_[i])
      if (!seen.insert(l).second) throw model_error("local state '" + l + "' occurs in two alphabets");
  }
}

std::optional<std::pair<int, int>> local_alphabets::find(const std::string& local) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    auto it = std::find(names_[i].begin(), names_[i].end(), local);
    if (it != names_[i].end())
      return std::pair<int, int>{static_cast<int>(i) + 1, static_cast<int>(it - names_[i].begin())};
  }
  return std::nullopt;
}

std::string to_string(const local_alphabets& locals, const local_tuple& t) {
  if (t.is_blank()) return "#blank";
  std::string s = "(";
  for (std::size_t i = 0; i < t.coords.size(); ++i) {
    if (i) s += ",";
    s += locals.alphabet(t.coords[i]).at(t.values[i]);
  }
  return s + ")";
}

local_tuple project_state(const local_tuple& d, const std::vector<int>& J) {
  local_tuple out;
  for (int j : J) {
    auto it = std::lower_bound(d.coords.begin(), d.coords.end(), j);
    if (it == d.coords.end() || *it != j)
      throw shape_error("cannot project: coordinate " + std::to_string(j) + " is not present");
    out.coords.push_back(j);
    out.values.push_back(d.values[it - d.coords.begin()]);
  }
  return out;
}

bool obs_equiv_states(const local_tuple& d, const local_tuple& e, const observation& o) {
  if (d.coords != e.coords) throw shape_error("tuples range over different coordinates");
  for (std::size_t i = 0; i < d.coords.size(); ++i)
    if (o.contains(d.coords[i]) && d.values[i] != e.values[i]) return false;
  return true;
}

direction_space::direction_space(local_alphabets locals, observation coords)
    : locals_(std::make_shared<local_alphabets>(std::move(locals))), coords_(std::move(coords)) {
  size_ = 1;
  for (int c : coords_.indices()) {
    if (c > locals_->dimension())
      throw shape_error("coordinate " + std::to_string(c) + " exceeds dimension " +
                        std::to_string(locals_->dimension()));
    size_ *= locals_->alphabet_size(c);
  }
}

local_tuple direction_space::at(int index) const {
  local_tuple t;
  t.coords = coords_.indices();
  t.values.assign(t.coords.size(), 0);
  for (std::size_t k = t.coords.size(); k-- > 0;) {
    int m = locals_->alphabet_size(t.coords[k]);
    t.values[k] = index % m;
    index /= m;
  }
  return t;
}

int direction_space::index_of(const local_tuple& t) const {
  if (t.coords != coords_.indices()) throw shape_error("tuple does not range over the direction coordinates");
  int index = 0;
  for (std::size_t k = 0; k < t.coords.size(); ++k) {
    int m = locals_->alphabet_size(t.coords[k]);
    if (t.values[k] < 0 || t.values[k] >= m) throw shape_error("local index out of range");
    index = index * m + t.values[k];
  }
  return index;
}

int direction_space::project(int index, const direction_space& target) const {
  return target.index_of(project_state(at(index), target.coords()));
}

}  // namespace qctl
