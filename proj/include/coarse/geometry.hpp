#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace coarse {

using Coord = std::int64_t;
using Point = std::vector<Coord>;

// l_inf distance. Throws DomainError on length mismatch.
Coord chebyshev(std::span<const Coord> a, std::span<const Coord> b);

std::string to_string(std::span<const Coord> p);

// Global cap on the number of lattice points any single box scan may touch.
// Read once from COARSELAB_POINT_CAP (default 2^25).
std::size_t point_cap();

// Flat storage for equal-length points.
class PointSet {
 public:
  explicit PointSet(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? zero_dim_count_ : coords_.size() / dim_; }
  bool empty() const noexcept { return size() == 0; }

  std::span<const Coord> operator[](std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  Point point(std::size_t i) const {
    auto s = (*this)[i];
    return {s.begin(), s.end()};
  }

  void push_back(std::span<const Coord> p);
  void reserve(std::size_t n) { coords_.reserve(n * dim_); }

  // Lexicographic sort with duplicates removed.
  void normalize();
  bool contains_sorted(std::span<const Coord> p) const;

  const std::vector<Coord>& raw() const noexcept { return coords_; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t dim_;
  std::size_t zero_dim_count_ = 0;
  std::vector<Coord> coords_;
};

// Closed axis-aligned integer box [lo, hi]. Points are indexed row-major with
// the last axis fastest.
struct Box {
  Point lo;
  Point hi;

  static Box cube(std::size_t dim, Coord lo, Coord hi);

  std::size_t dim() const noexcept { return lo.size(); }
  bool empty() const;
  Coord extent(std::size_t axis) const { return hi[axis] - lo[axis] + 1; }
  // ResourceError if the volume exceeds `cap`.
  std::size_t volume(std::size_t cap = point_cap()) const;
  // l_inf diameter.
  Coord diameter() const;
  bool contains(std::span<const Coord> p) const;

  std::size_t index_of(std::span<const Coord> p) const;
  void point_at(std::size_t index, std::span<Coord> out) const;
  Point point_at(std::size_t index) const;
  std::vector<std::size_t> strides() const;

  friend bool operator==(const Box&, const Box&) = default;
};

Box bounding_box(const PointSet& pts);

}  // namespace coarse
