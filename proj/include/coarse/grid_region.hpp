#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coarse/geometry.hpp"

namespace coarse {

enum class Adjacency { kFace, kVertex };

std::string to_string(Adjacency a);
Adjacency adjacency_from_string(const std::string& s);

// A finite set of lattice points inside a reference box, stored as a
// row-major byte mask, together with the adjacency used for connectivity.
class GridRegion {
 public:
  GridRegion() = default;
  explicit GridRegion(Box box, Adjacency adjacency = Adjacency::kFace);

  static GridRegion full(Box box, Adjacency adjacency = Adjacency::kFace);
  // DomainError if a point lies outside the box.
  static GridRegion from_points(Box box, const PointSet& points,
                                Adjacency adjacency = Adjacency::kFace);

  const Box& box() const noexcept { return box_; }
  std::size_t dim() const noexcept { return box_.dim(); }
  Adjacency adjacency() const noexcept { return adjacency_; }
  void set_adjacency(Adjacency a) noexcept { adjacency_ = a; }

  std::size_t volume() const noexcept { return mask_.size(); }
  bool test(std::size_t index) const { return mask_[index] != 0; }
  void set(std::size_t index, bool on = true) { mask_[index] = on ? 1 : 0; }
  bool contains(std::span<const Coord> p) const;
  void insert(std::span<const Coord> p);

  const std::vector<std::uint8_t>& mask() const noexcept { return mask_; }
  std::vector<std::uint8_t>& mask() noexcept { return mask_; }

  std::size_t count() const;
  bool empty() const { return count() == 0; }
  PointSet points() const;
  // Smallest point in row-major (= lexicographic) order.
  std::optional<Point> min_point() const;

  // Set algebra; DomainError when boxes differ.
  GridRegion operator&(const GridRegion& other) const;
  GridRegion operator|(const GridRegion& other) const;
  GridRegion operator-(const GridRegion& other) const;
  bool subset_of(const GridRegion& other) const;
  bool disjoint_from(const GridRegion& other) const;

  // Points on the face x_axis = lo (negative) or x_axis = hi (positive).
  GridRegion face(std::size_t axis, bool positive) const;

  // Run lengths of alternating 0/1 runs, starting with a (possibly empty) 0 run.
  std::string rle() const;
  static GridRegion from_rle(Box box, Adjacency adjacency, const std::string& rle);

  friend bool operator==(const GridRegion&, const GridRegion&) = default;

 private:
  void check_same_box(const GridRegion& other) const;

  Box box_;
  Adjacency adjacency_ = Adjacency::kFace;
  std::vector<std::uint8_t> mask_;
};

// Index offsets of neighbours for the given adjacency. `neighbors` fills
// `out` with in-box neighbour indices of `index`.
class NeighborTable {
 public:
  NeighborTable(const Box& box, Adjacency adjacency);
  // Returns the number of neighbours written into out (sized >= max_degree()).
  std::size_t neighbors(std::size_t index, std::span<std::size_t> out) const;
  std::size_t max_degree() const noexcept { return offsets_.size(); }

 private:
  Box box_;
  std::vector<Point> offsets_;
  std::vector<std::ptrdiff_t> deltas_;
  std::vector<std::size_t> strides_;
  std::vector<Coord> extents_;
};

// Connected-component labels (-1 outside the region), numbered in order of
// each component's smallest point. Uses `adjacency`.
std::vector<std::int32_t> component_labels(const GridRegion& region, Adjacency adjacency,
                                           std::int32_t* count = nullptr);

// Does a path inside `region` join `from` to `to` under `adjacency`?
bool connects(const GridRegion& region, const GridRegion& from, const GridRegion& to,
              Adjacency adjacency);

}  // namespace coarse
