#include "coarse/cube.hpp"

#include <algorithm>

#include "coarse/errors.hpp"

namespace coarse {

std::size_t Cube::dim() const {
  return static_cast<std::size_t>(
      std::count_if(extent.begin(), extent.end(), [](Coord e) { return e > 0; }));
}

bool Cube::contains(std::span<const Coord> p) const {
  if (p.size() != lo.size()) return false;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (p[i] < lo[i] || p[i] > lo[i] + extent[i]) return false;
  }
  return true;
}

std::size_t Cube::interior_axes(std::span<const Coord> p) const {
  std::size_t k = 0;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (extent[i] > 0 && p[i] > lo[i] && p[i] < lo[i] + extent[i]) ++k;
  }
  return k;
}

Box Cube::bounds() const {
  Box b{lo, lo};
  for (std::size_t i = 0; i < lo.size(); ++i) b.hi[i] += extent[i];
  return b;
}

Point Subdivision::psi(std::size_t t) const {
  if (t == 0 || t > cubes.size()) throw DomainError("psi index out of range");
  Point out(cells_per_axis.size());
  std::size_t rem = t - 1;
  for (std::size_t i = cells_per_axis.size(); i-- > 0;) {
    auto c = static_cast<std::size_t>(cells_per_axis[i]);
    out[i] = static_cast<Coord>(rem % c);
    rem /= c;
  }
  return out;
}

std::vector<std::size_t> Subdivision::cubes_containing(std::span<const Coord> p) const {
  const std::size_t d = cells_per_axis.size();
  std::vector<std::vector<Coord>> choices(d);
  for (std::size_t i = 0; i < d; ++i) {
    const Coord rel = p[i] - box.lo[i];
    if (rel < 0 || rel > box.hi[i] - box.lo[i]) return {};
    const Coord c = rel / edge;
    if (c < cells_per_axis[i]) choices[i].push_back(c);
    if (rel % edge == 0 && c > 0) choices[i].push_back(c - 1);
  }
  std::vector<std::size_t> out;
  std::vector<std::size_t> pick(d, 0);
  while (true) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < d; ++i) {
      idx = idx * static_cast<std::size_t>(cells_per_axis[i]) +
            static_cast<std::size_t>(choices[i][pick[i]]);
    }
    out.push_back(idx);
    std::size_t i = 0;
    while (i < d && pick[i] + 1 == choices[i].size()) pick[i++] = 0;
    if (i == d) break;
    ++pick[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

Subdivision subdivide(const Box& box, Coord edge) {
  if (edge <= 0) throw DomainError("subdivision edge must be positive");
  if (box.empty()) throw DomainError("cannot subdivide an empty box");
  Subdivision s;
  s.box = box;
  s.edge = edge;
  std::size_t total = 1;
  for (std::size_t i = 0; i < box.dim(); ++i) {
    const Coord side = box.hi[i] - box.lo[i];
    if (side == 0 || side % edge != 0) {
      throw DomainError("edge " + std::to_string(edge) + " does not divide side " +
                        std::to_string(side));
    }
    s.cells_per_axis.push_back(side / edge);
    total *= static_cast<std::size_t>(side / edge);
    if (total > point_cap()) throw ResourceError("too many subdivision cubes");
  }
  s.cubes.reserve(total);
  for (std::size_t t = 1; t <= total; ++t) {
    Point idx(box.dim());
    std::size_t rem = t - 1;
    for (std::size_t i = box.dim(); i-- > 0;) {
      auto c = static_cast<std::size_t>(s.cells_per_axis[i]);
      idx[i] = static_cast<Coord>(rem % c);
      rem /= c;
    }
    Cube q{Point(box.dim()), std::vector<Coord>(box.dim(), edge)};
    for (std::size_t i = 0; i < box.dim(); ++i) q.lo[i] = box.lo[i] + edge * idx[i];
    s.cubes.push_back(std::move(q));
  }
  return s;
}

namespace {

void check_skeleton_args(const std::vector<Cube>& cubes, std::size_t d, const Box& reference) {
  if (d >= reference.dim()) {
    throw DomainError("skeleton dimension " + std::to_string(d) +
                      " must be below the ambient dimension " + std::to_string(reference.dim()));
  }
  for (const auto& q : cubes) {
    if (q.ambient_dim() != reference.dim() || q.extent.size() != q.lo.size()) {
      throw DomainError("cube dimension does not match the reference box");
    }
  }
}

template <bool Parallel>
GridRegion skeleton_impl(const std::vector<Cube>& cubes, std::size_t d, const Box& reference,
                         Adjacency adjacency) {
  check_skeleton_args(cubes, d, reference);
  GridRegion out(reference, adjacency);
  auto& mask = out.mask();
  const auto n = static_cast<std::int64_t>(cubes.size());
#pragma omp parallel for schedule(dynamic) if (Parallel)
  for (std::int64_t c = 0; c < n; ++c) {
    const Cube& q = cubes[static_cast<std::size_t>(c)];
    const Box b = q.bounds();
    const std::size_t vol = b.volume();
    Point x(b.dim());
    for (std::size_t i = 0; i < vol; ++i) {
      b.point_at(i, x);
      if (q.interior_axes(x) > d || !reference.contains(x)) continue;
#pragma omp atomic write
      mask[reference.index_of(x)] = 1;
    }
  }
  return out;
}

}  // namespace

GridRegion skeleton(const std::vector<Cube>& cubes, std::size_t d, const Box& reference,
                    Adjacency adjacency) {
  return skeleton_impl<true>(cubes, d, reference, adjacency);
}

GridRegion skeleton_serial(const std::vector<Cube>& cubes, std::size_t d, const Box& reference,
                           Adjacency adjacency) {
  return skeleton_impl<false>(cubes, d, reference, adjacency);
}

GridRegion skeleton(const std::vector<Cube>& cubes, std::size_t d) {
  if (cubes.empty()) throw DomainError("skeleton of no cubes needs an explicit reference box");
  Box ref = cubes.front().bounds();
  for (const auto& q : cubes) {
    Box b = q.bounds();
    if (b.dim() != ref.dim()) throw DomainError("cubes of different ambient dimension");
    for (std::size_t i = 0; i < ref.dim(); ++i) {
      ref.lo[i] = std::min(ref.lo[i], b.lo[i]);
      ref.hi[i] = std::max(ref.hi[i], b.hi[i]);
    }
  }
  return skeleton(cubes, d, ref);
}

}  // namespace coarse
