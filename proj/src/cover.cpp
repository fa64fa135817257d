#include "coarse/cover.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "coarse/errors.hpp"
#include "coarse/grid_region.hpp"

namespace coarse {

std::size_t CoverFamily::dim() const {
  for (const auto& s : sets) {
    if (!s.empty()) return s.dim();
  }
  return sets.empty() ? 0 : sets.front().dim();
}

Coord diameter(const PointSet& set) {
  if (set.empty()) return 0;
  Box b = bounding_box(set);
  return b.diameter();
}

namespace {

// Offsets of the 3^d - 1 vertex neighbours.
std::vector<Point> vertex_offsets(std::size_t d) {
  std::vector<Point> out;
  Point cur(d, -1);
  while (true) {
    if (std::any_of(cur.begin(), cur.end(), [](Coord c) { return c != 0; })) out.push_back(cur);
    std::size_t i = 0;
    while (i < d && cur[i] == 1) cur[i++] = -1;
    if (i == d) break;
    ++cur[i];
  }
  return out;
}

bool is_interior(const PointSet& sorted, std::span<const Coord> p,
                 const std::vector<Point>& offsets) {
  Point q(p.size());
  for (const auto& off : offsets) {
    for (std::size_t i = 0; i < p.size(); ++i) q[i] = p[i] + off[i];
    if (!sorted.contains_sorted(q)) return false;
  }
  return true;
}

Coord box_distance(const Box& a, const Box& b) {
  Coord d = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Coord gap = std::max({Coord{0}, b.lo[i] - a.hi[i], a.lo[i] - b.hi[i]});
    d = std::max(d, gap);
  }
  return d;
}

}  // namespace

GapResult min_gap_pairwise(const std::vector<PointSet>& sets) {
  GapResult best;
  if (sets.empty()) return best;
  const std::size_t d = sets.front().dim();
  const auto offsets = vertex_offsets(d);
  // Closest pairs are attained at non-interior points (step toward the partner).
  std::vector<PointSet> rims;
  std::vector<Box> boxes;
  for (const auto& s : sets) {
    PointSet sorted = s;
    sorted.normalize();
    PointSet rim(d);
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      if (!is_interior(sorted, sorted[k], offsets)) rim.push_back(sorted[k]);
    }
    boxes.push_back(rim.empty() ? Box{} : bounding_box(rim));
    rims.push_back(std::move(rim));
  }
  for (std::size_t a = 0; a < rims.size(); ++a) {
    if (rims[a].empty()) continue;
    for (std::size_t b = a + 1; b < rims.size(); ++b) {
      if (rims[b].empty()) continue;
      if (best.gap && box_distance(boxes[a], boxes[b]) >= *best.gap) continue;
      for (std::size_t i = 0; i < rims[a].size(); ++i) {
        for (std::size_t j = 0; j < rims[b].size(); ++j) {
          Coord g = chebyshev(rims[a][i], rims[b][j]);
          if (!best.gap || g < *best.gap) best = {g, a, b};
        }
      }
    }
  }
  return best;
}

GapResult min_gap(const std::vector<PointSet>& sets, std::size_t cap) {
  std::size_t nonempty = 0;
  PointSet all(sets.empty() ? 0 : sets.front().dim());
  for (const auto& s : sets) {
    if (s.empty()) continue;
    ++nonempty;
    for (std::size_t k = 0; k < s.size(); ++k) all.push_back(s[k]);
  }
  if (nonempty < 2) return {};
  const std::size_t d = all.dim();
  if (d == 0) {
    GapResult r{0, 0, 0};
    bool first = true;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (sets[i].empty()) continue;
      if (first) {
        r.set_a = i;
        first = false;
      } else {
        r.set_b = i;
        break;
      }
    }
    return r;
  }
  const Box box = bounding_box(all);
  std::size_t vol = 0;
  try {
    vol = box.volume(cap);
  } catch (const ResourceError&) {
    return min_gap_pairwise(sets);
  }

  // Labelled multi-source BFS in the Chebyshev grid graph. For any pair of
  // adjacent cells with different labels, d(u) + 1 + d(v) bounds the gap of
  // their sources from above, and the minimum over such pairs is exact.
  std::vector<std::int32_t> label(vol, -1);
  std::vector<std::int32_t> depth(vol, 0);
  std::deque<std::size_t> queue;
  GapResult best;
  auto consider = [&](std::int32_t la, std::int32_t lb, Coord g) {
    if (!best.gap || g < *best.gap) {
      best.gap = g;
      best.set_a = static_cast<std::size_t>(std::min(la, lb));
      best.set_b = static_cast<std::size_t>(std::max(la, lb));
    }
  };
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto li = static_cast<std::int32_t>(i);
    for (std::size_t k = 0; k < sets[i].size(); ++k) {
      const std::size_t idx = box.index_of(sets[i][k]);
      if (label[idx] == -1) {
        label[idx] = li;
        queue.push_back(idx);
      } else if (label[idx] != li) {
        consider(label[idx], li, 0);
      }
    }
  }
  if (best.gap) return best;

  NeighborTable table(box, Adjacency::kVertex);
  std::vector<std::size_t> nb(table.max_degree());
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    if (best.gap && 2 * static_cast<Coord>(depth[u]) >= *best.gap) break;
    const std::size_t k = table.neighbors(u, nb);
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t v = nb[j];
      if (label[v] == -1) {
        label[v] = label[u];
        depth[v] = depth[u] + 1;
        queue.push_back(v);
      } else if (label[v] != label[u]) {
        consider(label[u], label[v], static_cast<Coord>(depth[u]) + 1 + depth[v]);
      }
    }
  }
  return best;
}

FamilyReport verify_family(const CoverFamily& family) {
  FamilyReport rep;
  for (std::size_t i = 0; i < family.sets.size(); ++i) {
    Coord dm = diameter(family.sets[i]);
    if (dm > rep.diam) {
      rep.diam = dm;
      rep.widest_set = i;
    }
  }
  GapResult g = min_gap(family.sets);
  rep.gap = g.gap;
  rep.set_a = g.set_a;
  rep.set_b = g.set_b;
  if (g.gap && *g.gap < family.r) {
    rep.pass = false;
    rep.failure = "family '" + family.name + "' is not " + std::to_string(family.r) +
                  "-disjoint: sets " + std::to_string(g.set_a) + " and " +
                  std::to_string(g.set_b) + " are " + std::to_string(*g.gap) + " apart";
  } else if (rep.diam > family.B) {
    rep.pass = false;
    rep.failure = "family '" + family.name + "' is not " + std::to_string(family.B) +
                  "-bounded: set " + std::to_string(rep.widest_set) + " has diameter " +
                  std::to_string(rep.diam);
  }
  return rep;
}

namespace {

template <bool Parallel>
CoverReport verify_cover_impl(const std::vector<CoverFamily>& families, const PointSet& carrier,
                              std::size_t cap) {
  CoverReport rep;
  rep.uncovered = PointSet(carrier.dim());
  if (carrier.empty()) return rep;
  const Box box = bounding_box(carrier);
  const auto n = static_cast<std::int64_t>(carrier.size());
  std::vector<std::uint8_t> hit(carrier.size(), 0);

  bool use_mask = true;
  std::size_t vol = 0;
  try {
    vol = box.volume(cap);
  } catch (const ResourceError&) {
    use_mask = false;
  }

  if (use_mask) {
    std::vector<std::uint8_t> covered(vol, 0);
    for (const auto& fam : families) {
      for (const auto& s : fam.sets) {
        if (s.empty()) continue;
        if (s.dim() != carrier.dim()) throw DomainError("family and carrier dimensions differ");
        const auto m = static_cast<std::int64_t>(s.size());
#pragma omp parallel for schedule(static) if (Parallel)
        for (std::int64_t k = 0; k < m; ++k) {
          auto p = s[static_cast<std::size_t>(k)];
          if (box.contains(p)) {
#pragma omp atomic write
            covered[box.index_of(p)] = 1;
          }
        }
      }
    }
#pragma omp parallel for schedule(static) if (Parallel)
    for (std::int64_t k = 0; k < n; ++k) {
      hit[static_cast<std::size_t>(k)] = covered[box.index_of(carrier[static_cast<std::size_t>(k)])];
    }
  } else {
    PointSet all(carrier.dim());
    for (const auto& fam : families) {
      for (const auto& s : fam.sets) {
        for (std::size_t k = 0; k < s.size(); ++k) all.push_back(s[k]);
      }
    }
    all.normalize();
#pragma omp parallel for schedule(static) if (Parallel)
    for (std::int64_t k = 0; k < n; ++k) {
      hit[static_cast<std::size_t>(k)] = all.contains_sorted(carrier[static_cast<std::size_t>(k)]);
    }
  }
  for (std::size_t k = 0; k < carrier.size(); ++k) {
    if (!hit[k]) rep.uncovered.push_back(carrier[k]);
  }
  rep.pass = rep.uncovered.empty();
  return rep;
}

}  // namespace

CoverReport verify_cover(const std::vector<CoverFamily>& families, const PointSet& carrier,
                         std::size_t cap) {
  return verify_cover_impl<true>(families, carrier, cap);
}

CoverReport verify_cover_serial(const std::vector<CoverFamily>& families,
                                const PointSet& carrier, std::size_t cap) {
  return verify_cover_impl<false>(families, carrier, cap);
}

namespace {

Coord floor_div(Coord a, Coord b) {
  Coord q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

std::vector<CoverFamily> brick_cover(std::size_t d, Coord r, const Box& box) {
  if (r <= 0) throw DomainError("brick_cover: gap r must be positive");
  if (box.dim() != d) throw DomainError("brick_cover: box dimension differs from d");
  if (box.empty()) throw DomainError("brick_cover: empty box");
  box.volume();
  const Coord period = static_cast<Coord>(d + 1) * r;
  std::vector<CoverFamily> out;
  for (std::size_t j = 0; j <= d; ++j) {
    const Coord offset = static_cast<Coord>(j) * r;
    CoverFamily fam;
    fam.name = "brick" + std::to_string(j);
    fam.r = r;
    fam.B = 2 * static_cast<Coord>(d + 1) * r;
    // Bricks are [offset + kS + r, offset + kS + S - 1] per axis.
    std::vector<Coord> kmin(d), kmax(d);
    for (std::size_t i = 0; i < d; ++i) {
      kmin[i] = floor_div(box.lo[i] - offset, period);
      kmax[i] = floor_div(box.hi[i] - offset, period);
    }
    std::vector<Coord> k = kmin;
    bool done = false;
    while (!done) {
      Box brick{Point(d), Point(d)};
      for (std::size_t i = 0; i < d; ++i) {
        brick.lo[i] = std::max(box.lo[i], offset + k[i] * period + r);
        brick.hi[i] = std::min(box.hi[i], offset + k[i] * period + period - 1);
      }
      if (!brick.empty()) fam.sets.push_back(box_points(brick));
      std::size_t i = d;
      while (true) {
        if (i == 0) {
          done = true;
          break;
        }
        --i;
        if (k[i] < kmax[i]) {
          ++k[i];
          break;
        }
        k[i] = kmin[i];
      }
    }
    out.push_back(std::move(fam));
  }
  return out;
}

PointSet box_points(const Box& box, std::size_t cap) {
  PointSet out(box.dim());
  const std::size_t vol = box.volume(cap);
  out.reserve(vol);
  Point x(box.dim());
  for (std::size_t i = 0; i < vol; ++i) {
    box.point_at(i, x);
    out.push_back(x);
  }
  return out;
}

}  // namespace coarse
