#include "coarse/adversary.hpp"

#include <algorithm>
#include <cstdlib>

#include "coarse/distance.hpp"
#include "coarse/errors.hpp"
#include "coarse/partition.hpp"

namespace coarse {

namespace {

Coord mod(Coord x, Coord k) { return ((x % k) + k) % k; }

std::size_t offgrid(std::span<const Coord> p, Coord edge) {
  std::size_t k = 0;
  for (Coord x : p) k += mod(x, edge) != 0;
  return k;
}

std::size_t max_offgrid(const GridRegion& region, Coord edge) {
  std::size_t best = 0;
  Point x(region.dim());
  for (std::size_t i = 0; i < region.volume(); ++i) {
    if (!region.test(i)) continue;
    region.box().point_at(i, x);
    best = std::max(best, offgrid(x, edge));
  }
  return best;
}

GridRegion union_region(const Box& box, const std::vector<const CoverFamily*>& families) {
  GridRegion out(box);
  for (const auto* f : families) {
    for (const auto& s : f->sets) {
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (box.contains(s[k])) out.insert(s[k]);
      }
    }
  }
  return out;
}

// (m+2)-dimensional cubes of edge e whose fixed coordinates lie on the
// coarse grid and whose lattice points all belong to the region.
std::vector<Cube> fine_cubes(const GridRegion& region, std::size_t free_count, Coord coarse,
                             Coord fine) {
  const Box& box = region.box();
  const std::size_t N = box.dim();
  std::vector<Cube> out;
  std::vector<std::uint8_t> is_free(N, 0);
  std::fill(is_free.end() - static_cast<std::ptrdiff_t>(free_count), is_free.end(), 1);
  do {
    // Odometer over lower corners.
    Point lo = box.lo;
    std::vector<Coord> extent(N, 0);
    for (std::size_t i = 0; i < N; ++i) extent[i] = is_free[i] ? fine : 0;
    auto step = [&](std::size_t i) { return is_free[i] ? fine : coarse; };
    auto last = [&](std::size_t i) { return is_free[i] ? box.hi[i] - fine : box.hi[i]; };
    bool done = false;
    for (std::size_t i = 0; i < N; ++i) done = done || last(i) < box.lo[i];
    while (!done) {
      Cube q{lo, extent};
      const Box qb = q.bounds();
      bool inside = true;
      const std::size_t vol = qb.volume();
      Point x(N);
      for (std::size_t k = 0; k < vol && inside; ++k) {
        qb.point_at(k, x);
        inside = region.contains(x);
      }
      if (inside) out.push_back(std::move(q));
      std::size_t i = N;
      while (i > 0) {
        --i;
        lo[i] += step(i);
        if (lo[i] <= last(i)) break;
        lo[i] = box.lo[i];
        if (i == 0) done = true;
      }
      if (N == 0) done = true;
    }
  } while (std::next_permutation(is_free.begin(), is_free.end()));
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Coord> set_distance(const PointSet& set, const GridRegion& C,
                                  const std::vector<std::int32_t>& dt, const PointSet& c_points) {
  std::optional<Coord> best;
  for (std::size_t k = 0; k < set.size(); ++k) {
    auto p = set[k];
    Coord d;
    if (C.box().contains(p)) {
      const auto v = dt[C.box().index_of(p)];
      if (v == kUnreachable) continue;
      d = v;
    } else {
      if (c_points.empty()) continue;
      d = chebyshev(p, c_points[0]);
      for (std::size_t j = 1; j < c_points.size(); ++j) d = std::min(d, chebyshev(p, c_points[j]));
    }
    if (!best || d < *best) best = d;
  }
  return best;
}

void check_family(const CoverFamily& f, Coord gap, Coord bound, std::size_t dim,
                  const std::string& role) {
  if (!f.sets.empty() && f.dim() != dim) {
    throw DomainError("family '" + f.name + "' (" + role + ") has dimension " +
                      std::to_string(f.dim()) + ", expected " + std::to_string(dim));
  }
  CoverFamily probe = f;
  probe.r = gap;
  probe.B = bound;
  const auto rep = verify_family(probe);
  if (!rep.pass) throw DomainError(role + " precondition failed: " + rep.failure);
}

struct Cascade {
  const AdversaryParams& params;
  const CoverFamily& U;
  const std::vector<CoverFamily>& V;
  const std::vector<CoverFamily>& W;
  AdversaryResult result;
  std::vector<GridRegion> chain;

  void hold(const std::string& reason) {
    const Box box = params.box();
    std::vector<CoverFamily> all{U};
    all.insert(all.end(), V.begin(), V.end());
    all.insert(all.end(), W.begin(), W.end());
    const auto carrier = enumerate_truncation(params.space(), box);
    const auto rep = verify_cover(all, carrier);
    result.holds = CoverHolds{reason, rep.pass, rep.uncovered.size()};
  }

  // One partition-and-snap step. Returns the snapped region, or nullopt.
  std::optional<GridRegion> stage(std::size_t index, const std::string& kind, std::size_t family,
                                  const CoverFamily& fam, const GridRegion& region,
                                  std::vector<Cube>& cubes, std::size_t skeleton_dim,
                                  Coord fattening, Coord target, Coord grid_edge,
                                  const std::vector<const CoverFamily*>& processed) {
    const Box box = params.box();
    const std::size_t axis = index - 1;
    StageReport rep;
    rep.stage = index;
    rep.kind = kind;
    rep.family = family;
    rep.axis = axis;
    rep.fattening = fattening;
    rep.region_before = region.count();
    rep.target_margin = target;

    std::vector<PointSet> obstacles;
    for (const auto& s : fam.sets) obstacles.push_back(fatten(s, fattening, box));
    std::vector<Coord> margins;
    if (target > 0) margins.push_back(target);
    margins.push_back(0);
    const auto built = build_level_partition(region, axis, obstacles, margins);
    if (!built) {
      rep.failed = true;
      rep.note = "no admissible level";
      result.trace.push_back(rep);
      return std::nullopt;
    }
    rep.separator_size = built->cert.L.count();
    rep.achieved_margin = built->margin;
    rep.partition_verified = verify_partition(built->cert, region, FacePair{axis}).pass;

    cubes = cubes_meeting(cubes, built->cert.L);
    rep.cubes_selected = cubes.size();
    GridRegion snapped = cubes.empty() ? GridRegion(box) : skeleton(cubes, skeleton_dim, box);
    rep.region_after = snapped.count();
    rep.snapped_separates = !connects(region - snapped, region.face(axis, false),
                                      region.face(axis, true), Adjacency::kFace);
    rep.avoids_processed_families = snapped.disjoint_from(union_region(box, processed));
    rep.on_skeleton = max_offgrid(snapped, grid_edge) <= skeleton_dim;
    rep.max_coarse_offgrid = max_offgrid(snapped, params.coarse_edge());
    if (snapped.empty()) {
      rep.failed = true;
      rep.note = "snapped region is empty";
    }
    result.trace.push_back(rep);
    if (snapped.empty()) return std::nullopt;
    return snapped;
  }

  void run() {
    params.validate();
    const std::size_t N = params.dim();
    const Box box = params.box();
    box.volume();  // ResourceError above the point cap
    if (V.size() != static_cast<std::size_t>(params.m + 1)) {
      throw DomainError("expected " + std::to_string(params.m + 1) + " V families, got " +
                        std::to_string(V.size()));
    }
    if (W.size() != static_cast<std::size_t>(params.n + 1)) {
      throw DomainError("expected " + std::to_string(params.n + 1) + " W families, got " +
                        std::to_string(W.size()));
    }
    check_family(U, params.a, params.B, N, "U");
    for (const auto& f : V) check_family(f, params.b, params.B, N, "V");
    for (const auto& f : W) check_family(f, params.c, params.B, N, "W");
    result.regime = regime_checks(params);

    const Coord E = params.coarse_edge();
    const Coord e = params.fine_edge();
    GridRegion region = GridRegion::full(box);
    {
      StageReport init;
      init.kind = "init";
      init.region_before = init.region_after = region.count();
      init.avoids_processed_families = true;
      init.on_skeleton = true;
      init.max_coarse_offgrid = max_offgrid(region, E);
      init.partition_verified = true;
      init.snapped_separates = true;
      result.trace.push_back(init);
    }

    std::vector<const CoverFamily*> processed;
    std::vector<Cube> cubes = subdivide(box, E).cubes;
    std::size_t index = 0;
    for (std::size_t j = 0; j < W.size(); ++j) {
      ++index;
      processed.push_back(&W[j]);
      auto next = stage(index, "W", j, W[j], region, cubes, N - index, E,
                        params.c - 2 * E, E, processed);
      if (!next) return hold("W stage " + std::to_string(index) + " produced no region");
      region = std::move(*next);
      chain.push_back(region);
    }

    if (!V.empty()) {
      const std::size_t free = static_cast<std::size_t>(params.m + 2);
      cubes = fine_cubes(region, free, E, e);
      for (std::size_t i = 0; i < V.size(); ++i) {
        ++index;
        processed.push_back(&V[i]);
        auto next = stage(index, "V", i, V[i], region, cubes, free - (i + 1), e,
                          params.b - 2 * e, e, processed);
        if (!next) return hold("V stage " + std::to_string(index) + " produced no region");
        region = std::move(*next);
        chain.push_back(region);
      }
    }

    const std::size_t axis = N - 1;
    GridRegion final_region = region;
    final_region.set_adjacency(Adjacency::kVertex);
    std::int32_t count = 0;
    const auto labels = component_labels(final_region, Adjacency::kVertex, &count);
    std::vector<std::uint8_t> lo_hit(static_cast<std::size_t>(count), 0), hi_hit(lo_hit);
    Point x(N);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] < 0) continue;
      box.point_at(i, x);
      if (x[axis] == box.lo[axis]) lo_hit[static_cast<std::size_t>(labels[i])] = 1;
      if (x[axis] == box.hi[axis]) hi_hit[static_cast<std::size_t>(labels[i])] = 1;
    }
    std::int32_t pick = -1;
    for (std::int32_t k = 0; k < count && pick < 0; ++k) {
      if (lo_hit[static_cast<std::size_t>(k)] && hi_hit[static_cast<std::size_t>(k)]) pick = k;
    }
    if (pick < 0) return hold("no component of the final region crosses axis " +
                              std::to_string(axis));

    ObstructionCertificate cert;
    cert.C = GridRegion(box, Adjacency::kVertex);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == pick) cert.C.set(i);
    }
    cert.chain = std::move(chain);
    cert.crossing_axis = axis;

    const auto dt = chebyshev_transform(box, cert.C.mask());
    const auto c_points = cert.C.points();
    auto add_rows = [&](const CoverFamily& f) {
      for (std::size_t s = 0; s < f.sets.size(); ++s) {
        cert.avoidance.push_back({f.name, s, set_distance(f.sets[s], cert.C, dt, c_points)});
      }
    };
    add_rows(U);
    for (const auto& f : V) add_rows(f);
    for (const auto& f : W) add_rows(f);

    PointSet covered(N);
    for (const auto& s : U.sets) {
      for (std::size_t k = 0; k < s.size(); ++k) covered.push_back(s[k]);
    }
    covered.normalize();
    for (std::size_t k = 0; k < c_points.size(); ++k) {
      if (!covered.contains_sorted(c_points[k])) {
        cert.uncovered_witness = c_points.point(k);
        break;
      }
    }
    if (cert.uncovered_witness.empty()) return hold("U covers the crossing component");

    const auto check = verify_obstruction(cert, params, U, V, W);
    if (!check.pass) return hold("certificate failed re-verification: " + check.failure);
    result.certificate = std::move(cert);
  }
};

}  // namespace

SpaceSpec AdversaryParams::space() const {
  return SpaceSpec{{0, m + 1, m + n + 2}, {1, m + 1, n + 1}};
}

void AdversaryParams::validate() const {
  if (m < -1 || n < -1) throw DomainError("m and n must be >= -1");
  if (a <= 0 || b <= 0 || c <= 0 || B <= 0) throw DomainError("a, b, c, B must be positive");
  if (!(a < b && b < c)) throw DomainError("gaps must satisfy a < b < c");
  if (m + n + 2 > 40) throw DomainError("m + n too large");
  if (side() % coarse_edge() != 0) {
    throw DomainError("coarse edge " + std::to_string(coarse_edge()) + " does not divide 6B = " +
                      std::to_string(side()));
  }
}

std::vector<RegimeCheck> regime_checks(const AdversaryParams& p) {
  const Coord E = p.coarse_edge(), e = p.fine_edge();
  std::vector<RegimeCheck> out;
  out.push_back({"a >= 2", p.a >= 2,
                 "U sets may be vertex-adjacent, so a connected C can be covered by U"});
  if (p.n >= 0) {
    out.push_back({"0 < c - 2^{m+n+3}", p.c - 2 * E > 0,
                   "fattened W sets may touch; W partitions fall back to margin 0"});
    out.push_back({"c - 2^{m+n+3} < B", p.c - 2 * E < p.B,
                   "W-stage margin exceeds the admissible partition range"});
    out.push_back({"B + 2^{m+n+3} <= 2B", p.B + 2 * E <= 2 * p.B,
                   "fattened W sets exceed one third of the box side"});
  }
  if (p.m >= 0) {
    out.push_back({"0 < b - 2^{m+2}", p.b - 2 * e > 0,
                   "fattened V sets may touch; V partitions fall back to margin 0"});
    out.push_back({"b - 2^{m+2} < B", p.b - 2 * e < p.B,
                   "V-stage margin exceeds the admissible partition range"});
    out.push_back({"B + 2^{m+2} <= 2B", p.B + 2 * e <= 2 * p.B,
                   "fattened V sets exceed one third of the box side"});
  }
  return out;
}

PointSet fatten(const PointSet& set, Coord radius, const Box& clip) {
  PointSet out(clip.dim());
  if (set.empty()) return out;
  if (set.dim() != clip.dim()) throw DomainError("fatten: dimension mismatch");
  Box local = bounding_box(set);
  for (std::size_t i = 0; i < local.dim(); ++i) {
    local.lo[i] = std::max(local.lo[i] - radius, clip.lo[i] - radius);
    local.hi[i] = std::min(local.hi[i] + radius, clip.hi[i] + radius);
    if (local.lo[i] > local.hi[i]) return out;
  }
  std::vector<std::uint8_t> src(local.volume(), 0);
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (local.contains(set[k])) src[local.index_of(set[k])] = 1;
  }
  const auto near = dilate(local, src, radius);
  Point x(local.dim());
  for (std::size_t i = 0; i < near.size(); ++i) {
    if (!near[i]) continue;
    local.point_at(i, x);
    if (clip.contains(x)) out.push_back(x);
  }
  return out;
}

namespace {
bool cube_meets(const Cube& q, const GridRegion& region) {
  const Box qb = q.bounds();
  const std::size_t vol = qb.volume();
  Point x(qb.dim());
  for (std::size_t k = 0; k < vol; ++k) {
    qb.point_at(k, x);
    if (region.contains(x)) return true;
  }
  return false;
}
}  // namespace

std::vector<Cube> cubes_meeting(const std::vector<Cube>& cubes, const GridRegion& region) {
  std::vector<std::uint8_t> keep(cubes.size(), 0);
  const auto n = static_cast<std::ptrdiff_t>(cubes.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    keep[static_cast<std::size_t>(i)] = cube_meets(cubes[static_cast<std::size_t>(i)], region);
  }
  std::vector<Cube> out;
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    if (keep[i]) out.push_back(cubes[i]);
  }
  return out;
}

std::vector<Cube> cubes_meeting_serial(const std::vector<Cube>& cubes, const GridRegion& region) {
  std::vector<Cube> out;
  for (const auto& q : cubes) {
    if (cube_meets(q, region)) out.push_back(q);
  }
  return out;
}

ObstructionCheck verify_obstruction(const ObstructionCertificate& cert,
                                    const AdversaryParams& params, const CoverFamily& U,
                                    const std::vector<CoverFamily>& V,
                                    const std::vector<CoverFamily>& W) {
  ObstructionCheck out;
  auto fail = [&](std::string why) {
    out.pass = false;
    out.failure = std::move(why);
    return out;
  };
  const Box box = params.box();
  if (cert.C.box() != box) return fail("C lives in the wrong box");
  if (cert.C.empty()) return fail("C is empty");
  std::int32_t count = 0;
  component_labels(cert.C, Adjacency::kVertex, &count);
  if (count != 1) return fail("C has " + std::to_string(count) + " components");
  const std::size_t axis = cert.crossing_axis;
  if (axis >= box.dim()) return fail("crossing axis out of range");
  if (cert.C.face(axis, false).empty() || cert.C.face(axis, true).empty()) {
    return fail("C does not meet both faces of axis " + std::to_string(axis));
  }
  const auto pts = cert.C.points();
  for (const auto* group : {&V, &W}) {
    for (const auto& f : *group) {
      for (std::size_t s = 0; s < f.sets.size(); ++s) {
        for (std::size_t k = 0; k < f.sets[s].size(); ++k) {
          if (cert.C.box().contains(f.sets[s][k]) && cert.C.contains(f.sets[s][k])) {
            return fail("C meets set " + std::to_string(s) + " of family '" + f.name + "' at " +
                        to_string(f.sets[s][k]));
          }
        }
      }
    }
  }
  const SpaceSpec space = params.space();
  const Coord E = params.coarse_edge();
  const auto budget = static_cast<std::size_t>(params.m + 2);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (!is_member(pts[k], space)) return fail("point " + to_string(pts[k]) + " is not in X");
    if (offgrid(pts[k], E) > budget) {
      return fail("point " + to_string(pts[k]) + " has more than " + std::to_string(budget) +
                  " coordinates outside " + std::to_string(E) + "Z");
    }
  }
  const auto& w = cert.uncovered_witness;
  if (w.size() != box.dim() || !box.contains(w) || !cert.C.contains(w)) {
    return fail("uncovered witness is not a point of C");
  }
  for (const auto& s : U.sets) {
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (std::equal(w.begin(), w.end(), s[k].begin(), s[k].end())) {
        return fail("witness " + to_string(w) + " is covered by U");
      }
    }
  }
  return out;
}

AdversaryResult refute_cover(const AdversaryParams& params, const CoverFamily& U,
                             const std::vector<CoverFamily>& V,
                             const std::vector<CoverFamily>& W) {
  Cascade c{params, U, V, W, {}, {}};
  c.run();
  return std::move(c.result);
}

std::vector<StageReport> stage_trace(const AdversaryParams& params, const CoverFamily& U,
                                     const std::vector<CoverFamily>& V,
                                     const std::vector<CoverFamily>& W) {
  return refute_cover(params, U, V, W).trace;
}

}  // namespace coarse
