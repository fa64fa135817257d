#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "coarse/geometry.hpp"

namespace coarse {

inline constexpr std::int32_t kUnreachable = std::numeric_limits<std::int32_t>::max();

// l_inf distance from every box point to the nearest source cell (mask != 0),
// over the whole box. kUnreachable when there is no source.
//
// Parallel version: separable min-max passes, one axis at a time,
//   D_k(x) = min_y max(|x_k - y|, D_{k-1}(x with x_k = y)),
// with lines of each pass distributed over OpenMP threads.
std::vector<std::int32_t> chebyshev_transform(const Box& box,
                                              const std::vector<std::uint8_t>& sources);
// Serial reference: multi-source BFS over the 3^d - 1 vertex neighbours.
std::vector<std::int32_t> chebyshev_transform_serial(const Box& box,
                                                     const std::vector<std::uint8_t>& sources);

// Closed l_inf neighbourhood {x : d(x, sources) <= radius} within the box.
std::vector<std::uint8_t> dilate(const Box& box, const std::vector<std::uint8_t>& sources,
                                 Coord radius);

}  // namespace coarse
