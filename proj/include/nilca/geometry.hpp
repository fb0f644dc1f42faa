#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nilca {

using Coord = std::int64_t;

// A point of the integer lattice Z^d. The dimension is the coordinate count
// and is checked wherever two vectors meet.
class CellVector {
 public:
  CellVector() = default;
  CellVector(std::initializer_list<Coord> coords) : coords_(coords) {}
  explicit CellVector(std::vector<Coord> coords) : coords_(std::move(coords)) {}

  static CellVector zero(int dim) { return CellVector(std::vector<Coord>(dim, 0)); }
  static CellVector unit(int dim, int axis, Coord length = 1);

  int dimension() const { return static_cast<int>(coords_.size()); }
  Coord operator[](int i) const { return coords_[i]; }
  Coord& operator[](int i) { return coords_[i]; }
  std::span<const Coord> coords() const { return coords_; }

  CellVector operator+(const CellVector& o) const;
  CellVector operator-(const CellVector& o) const;
  CellVector operator-() const;
  CellVector& operator+=(const CellVector& o);

  // Drops coordinate `axis`, keeping the order of the others.
  CellVector without_axis(int axis) const;
  // Inverse of without_axis: inserts `value` at position `axis`.
  CellVector with_axis(int axis, Coord value) const;

  friend auto operator<=>(const CellVector&, const CellVector&) = default;
  friend bool operator==(const CellVector&, const CellVector&) = default;

  std::string to_string() const;

 private:
  std::vector<Coord> coords_;
};

// Parses "(3,-4)"; whitespace around tokens is allowed.
CellVector parse_vector(std::string_view text);

struct CellVectorHash {
  std::size_t operator()(const CellVector& v) const noexcept;
};

// Max-norm |v| = max_i |v_i|.
Coord norm(const CellVector& v);

Coord floor_mod(Coord a, Coord m);

// Finite set of equal-dimension lattice points, kept sorted and unique.
class CellSet {
 public:
  CellSet() = default;
  explicit CellSet(std::vector<CellVector> cells);
  CellSet(std::initializer_list<CellVector> cells)
      : CellSet(std::vector<CellVector>(cells)) {}

  bool empty() const { return cells_.empty(); }
  std::size_t size() const { return cells_.size(); }
  // 0 for the empty set.
  int dimension() const { return cells_.empty() ? 0 : cells_.front().dimension(); }
  bool contains(const CellVector& v) const;

  auto begin() const { return cells_.begin(); }
  auto end() const { return cells_.end(); }
  const std::vector<CellVector>& elements() const { return cells_; }

  CellSet united(const CellSet& other) const;
  bool is_subset_of(const CellSet& other) const;

  friend bool operator==(const CellSet&, const CellSet&) = default;

 private:
  std::vector<CellVector> cells_;
};

// B_k(V): all u with |u - v| <= k for some v in V, in lexicographic order.
// Throws InvalidArgument for an empty V.
CellSet ball_enumerate(Coord k, const CellSet& base);

// The cube B_k(center) in lexicographic order. Same as ball_enumerate of a
// singleton but without the set bookkeeping.
std::vector<CellVector> cube(const CellVector& center, Coord k);

// tower(axis, k, base): the B_k-widening of the axis-parallel lines through
// the base points. Infinite, so only a membership predicate is offered.
struct TowerDescriptor {
  int axis = 0;
  Coord width = 0;
  CellSet base;
};

bool tower_contains(const TowerDescriptor& tower, const CellVector& u);

// Dense row-major indexing of the box center + [-radius, radius]^d; the
// linear order coincides with lexicographic order of the cells.
class Box {
 public:
  Box(CellVector center, Coord radius);

  int dimension() const { return center_.dimension(); }
  Coord radius() const { return radius_; }
  Coord side() const { return 2 * radius_ + 1; }
  std::size_t size() const { return size_; }
  const CellVector& center() const { return center_; }

  bool contains(const CellVector& v) const;
  std::size_t index_of(const CellVector& v) const;
  CellVector cell_at(std::size_t index) const;

 private:
  CellVector center_;
  Coord radius_;
  std::size_t size_;
};

}  // namespace nilca
