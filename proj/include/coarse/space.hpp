#pragma once

#include <vector>

#include "coarse/geometry.hpp"

namespace coarse {

// X(p, q): points of (2^{p_1} Z)^N, N = sum q_j, with at most q_1+..+q_k
// coordinates outside 2^{p_k} Z for every k. A spec whose p is not
// nondecreasing, or with some q_j < 0, denotes the empty space.
struct SpaceSpec {
  std::vector<int> p;
  std::vector<int> q;

  // DomainError if p and q have different lengths or some p_k is outside [0, 62].
  void validate() const;
  bool is_empty() const;
  // Sum of q (meaningful only for nonempty specs).
  std::size_t ambient_dim() const;
  // q_1 + .. + q_k for k = 1..n.
  std::vector<long> budgets() const;

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

// DomainError on dimension mismatch; the empty space has no members.
bool is_member(std::span<const Coord> point, const SpaceSpec& spec);

// Members of the space inside the box, in row-major box order.
// ResourceError when the box volume exceeds `cap`.
PointSet enumerate_truncation(const SpaceSpec& spec, const Box& box, std::size_t cap = point_cap());
PointSet enumerate_truncation_serial(const SpaceSpec& spec, const Box& box,
                                     std::size_t cap = point_cap());

// Membership flags for every box point (row-major); OpenMP and serial versions.
std::vector<std::uint8_t> membership_mask(const SpaceSpec& spec, const Box& box,
                                          std::size_t cap = point_cap());
std::vector<std::uint8_t> membership_mask_serial(const SpaceSpec& spec, const Box& box,
                                                 std::size_t cap = point_cap());

Coord dist(std::span<const Coord> a, std::span<const Coord> b);

// Finitely many truncated components glued as a coarse disjoint union.
// Points in distinct components k != m are k + m + diam(box_k) + diam(box_m) apart.
struct CoarseUnionSpec {
  struct Component {
    int index;
    SpaceSpec spec;
    Box box;
  };
  std::vector<Component> components;

  // DomainError on non-positive or repeated indices.
  void validate() const;
  const Component& component(int index) const;
};

Coord union_dist(int comp_a, std::span<const Coord> a, int comp_b, std::span<const Coord> b,
                 const CoarseUnionSpec& spec);

}  // namespace coarse
