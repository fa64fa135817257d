#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coarse/geometry.hpp"

namespace coarse {

// A family of finite point sets claimed to be r-disjoint and B-bounded.
struct CoverFamily {
  std::string name;
  std::vector<PointSet> sets;
  Coord r = 0;
  Coord B = 0;

  std::size_t dim() const;
};

struct GapResult {
  std::optional<Coord> gap;  // nullopt when fewer than two nonempty sets
  std::size_t set_a = 0;
  std::size_t set_b = 0;
};

// Exact min over distinct sets of the l_inf inf-distance.
GapResult min_gap(const std::vector<PointSet>& sets, std::size_t cap = point_cap());
// O(n^2) reference used as a test oracle and as a fallback above the cap.
GapResult min_gap_pairwise(const std::vector<PointSet>& sets);

// l_inf diameter; 0 for the empty set.
Coord diameter(const PointSet& set);

struct FamilyReport {
  bool pass = true;
  std::optional<Coord> gap;
  Coord diam = 0;
  std::size_t widest_set = 0;
  // Closest pair of sets, meaningful when `gap` is set.
  std::size_t set_a = 0;
  std::size_t set_b = 0;
  std::string failure;  // empty on pass
};

FamilyReport verify_family(const CoverFamily& family);

struct CoverReport {
  bool pass = true;
  PointSet uncovered;
};

CoverReport verify_cover(const std::vector<CoverFamily>& families, const PointSet& carrier,
                         std::size_t cap = point_cap());
CoverReport verify_cover_serial(const std::vector<CoverFamily>& families,
                                const PointSet& carrier, std::size_t cap = point_cap());

// d+1 families of shifted bricks of period (d+1)r covering `box`. Each family
// is r-disjoint with diameter at most d*r - 1, recorded as bound 2(d+1)r.
std::vector<CoverFamily> brick_cover(std::size_t d, Coord r, const Box& box);

// Every lattice point of the box as a PointSet.
PointSet box_points(const Box& box, std::size_t cap = point_cap());

}  // namespace coarse
