#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coarse/adversary.hpp"
#include "coarse/partition.hpp"

namespace coarse {

// A 2-d slice: the plotted axes, and a point fixing every other coordinate
// (its entries on the plotted axes are ignored).
struct Slice {
  std::size_t x_axis = 0;
  std::size_t y_axis = 1;
  Point at;
};

struct SliceLayer {
  std::string label;
  std::string fill;  // CSS colour
  GridRegion cells;
};

// Deterministic SVG of the layers (drawn in order) over the box frame. Faces
// of `face_axis` are labelled F- and F+. DomainError when the slice leaves
// the box, names a bad axis, or the layers live in a different box.
std::string plot_slice(const Box& box, const Slice& slice, const std::vector<SliceLayer>& layers,
                       std::optional<std::size_t> face_axis = std::nullopt);

// Region cells in grey, separator L in red, obstacles hatched dark.
std::string plot_partition(const PartitionCertificate& cert, const Slice& slice,
                           std::size_t face_axis, const std::vector<PointSet>& obstacles = {});

// Component C in blue over the last chain region, family sets in dark grey.
std::string plot_obstruction(const ObstructionCertificate& cert, const Slice& slice,
                             const std::vector<CoverFamily>& families = {});

}  // namespace coarse
