#pragma once

#include <compare>
#include <vector>

#include "coarse/grid_region.hpp"

namespace coarse {

// A closed axis-aligned cube, possibly lower-dimensional: along axis i it
// spans [lo_i, lo_i + extent_i], with extent_i = 0 on fixed axes.
struct Cube {
  Point lo;
  std::vector<Coord> extent;

  std::size_t ambient_dim() const noexcept { return lo.size(); }
  std::size_t dim() const;
  bool contains(std::span<const Coord> p) const;
  // Number of free axes on which p is strictly inside the cube.
  std::size_t interior_axes(std::span<const Coord> p) const;
  Box bounds() const;

  friend auto operator<=>(const Cube&, const Cube&) = default;
};

// The cubes Q(t) of edge `edge` tiling `box`. cubes[t-1] has its lower corner
// at box.lo + edge * psi(t), psi being lexicographic unranking.
struct Subdivision {
  Box box;
  Coord edge = 0;
  std::vector<Coord> cells_per_axis;
  std::vector<Cube> cubes;

  // psi(t) for t in 1..cubes.size().
  Point psi(std::size_t t) const;
  // Indices (0-based) of every cube containing p.
  std::vector<std::size_t> cubes_containing(std::span<const Coord> p) const;
};

// DomainError when edge does not divide every side length of the box.
Subdivision subdivide(const Box& box, Coord edge);

// Union of the <= d dimensional faces of the cubes, as lattice points of
// `reference`. DomainError if d >= ambient dimension.
GridRegion skeleton(const std::vector<Cube>& cubes, std::size_t d, const Box& reference,
                    Adjacency adjacency = Adjacency::kFace);
GridRegion skeleton_serial(const std::vector<Cube>& cubes, std::size_t d, const Box& reference,
                           Adjacency adjacency = Adjacency::kFace);
// Reference box = bounding box of the cubes.
GridRegion skeleton(const std::vector<Cube>& cubes, std::size_t d);

}  // namespace coarse
