#pragma once

// Local-state alphabets L_1..L_n, tuples over Λ_I = ×_{i∈I} L_i, and
// indexed direction spaces.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qctl/logic.hpp"

namespace qctl {

/// The fixed family of pairwise disjoint, nonempty local-state alphabets.
/// Coordinates are numbered from 1.
class local_alphabets {
public:
  local_alphabets() = default;
  /// Throws model_error on an empty family, an empty alphabet or a name
  /// shared between alphabets.
  explicit local_alphabets(std::vector<std::vector<std::string>> names);

  int dimension() const noexcept { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& alphabet(int coord) const { return names_.at(coord - 1); }
  int alphabet_size(int coord) const { return static_cast<int>(alphabet(coord).size()); }

  /// (coordinate, index in that alphabet) of a local-state name.
  std::optional<std::pair<int, int>> find(const std::string& local) const;

  friend bool operator==(const local_alphabets&, const local_alphabets&) = default;

private:
  std::vector<std::vector<std::string>> names_;
};

/// An element of Λ_I: one local-state index per coordinate of I (sorted).
/// With I = ∅ this is the blank symbol.
struct local_tuple {
  std::vector<int> coords;
  std::vector<int> values;

  bool is_blank() const noexcept { return coords.empty(); }
  friend bool operator==(const local_tuple&, const local_tuple&) = default;
  friend auto operator<=>(const local_tuple&, const local_tuple&) = default;
};

/// "(a,x)", or "#blank" for the blank symbol.
std::string to_string(const local_alphabets& locals, const local_tuple& t);

/// Restriction of d to the coordinates J. Blank when J = ∅.
/// Throws shape_error if J ⊄ coords(d).
local_tuple project_state(const local_tuple& d, const std::vector<int>& J);
inline local_tuple project_state(const local_tuple& d, const observation& J) {
  return project_state(d, J.indices());
}

/// d ~_o d' iff proj_{I∩o}(d) = proj_{I∩o}(d'). Throws shape_error when
/// the tuples range over different coordinates.
bool obs_equiv_states(const local_tuple& d, const local_tuple& e, const observation& o);

/// Λ_I with a fixed enumeration (lexicographic in coordinate order), so that
/// directions can be handled as small integers.
class direction_space {
public:
  direction_space() = default;
  direction_space(local_alphabets locals, observation coords);

  const local_alphabets& locals() const noexcept { return *locals_; }
  const observation& coords() const noexcept { return coords_; }
  int size() const noexcept { return size_; }

  local_tuple at(int index) const;
  int index_of(const local_tuple& t) const;
  /// Index in `target` of proj_{target coords}(at(index)).
  int project(int index, const direction_space& target) const;
  std::string name(int index) const { return to_string(*locals_, at(index)); }

  friend bool operator==(const direction_space& a, const direction_space& b) {
    return a.coords_ == b.coords_ && *a.locals_ == *b.locals_;
  }

private:
  std::shared_ptr<const local_alphabets> locals_ = std::make_shared<local_alphabets>();
  observation coords_;
  int size_ = 1;
};

}  // namespace qctl
