#include "coarse/partition.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "coarse/distance.hpp"
#include "coarse/errors.hpp"

namespace coarse {

namespace {

std::optional<Coord> min_over(const GridRegion& set, const std::vector<std::int32_t>& dist) {
  std::optional<Coord> best;
  for (std::size_t i = 0; i < set.volume(); ++i) {
    if (!set.test(i) || dist[i] == kUnreachable) continue;
    if (!best || dist[i] < *best) best = dist[i];
  }
  return best;
}

PartitionReport fail(PartitionReport rep, std::string clause, std::string detail) {
  rep.pass = false;
  rep.failed_clause = std::move(clause);
  rep.detail = std::move(detail);
  return rep;
}

}  // namespace

PartitionReport verify_partition(const PartitionCertificate& cert, const GridRegion& region,
                                 FacePair faces) {
  PartitionReport rep;
  const Box& box = region.box();
  if (!(cert.U.box() == box) || !(cert.L.box() == box) || !(cert.W.box() == box)) {
    return fail(rep, "box", "certificate sets use a different reference box");
  }
  if (faces.axis >= box.dim()) return fail(rep, "box", "face axis out of range");

  Point x(box.dim());
  for (std::size_t i = 0; i < region.volume(); ++i) {
    const int n = cert.U.test(i) + cert.L.test(i) + cert.W.test(i);
    if (n > 1) {
      box.point_at(i, x);
      return fail(rep, "disjoint", "point " + to_string(x) + " lies in more than one of U, L, W");
    }
    if ((n == 1) != region.test(i)) {
      box.point_at(i, x);
      return fail(rep, "union", "U + L + W differs from the region at " + to_string(x));
    }
  }

  NeighborTable table(box, region.adjacency());
  std::vector<std::size_t> nb(table.max_degree());
  for (std::size_t i = 0; i < region.volume(); ++i) {
    if (!cert.U.test(i)) continue;
    const std::size_t k = table.neighbors(i, nb);
    for (std::size_t j = 0; j < k; ++j) {
      if (cert.W.test(nb[j])) {
        box.point_at(i, x);
        return fail(rep, "separation",
                    "U point " + to_string(x) + " is " + to_string(region.adjacency()) +
                        "-adjacent to W point " + to_string(box.point_at(nb[j])));
      }
    }
  }

  const GridRegion A = region.face(faces.axis, false);
  const GridRegion B = region.face(faces.axis, true);
  if (!A.subset_of(cert.U)) return fail(rep, "faces", "face A is not contained in U");
  if (!B.subset_of(cert.W)) return fail(rep, "faces", "face B is not contained in W");

  rep.margin_negative = min_over(cert.L, chebyshev_transform(box, A.mask()));
  rep.margin_positive = min_over(cert.L, chebyshev_transform(box, B.mask()));
  if (cert.epsilon > 0) {
    if (rep.margin_negative && *rep.margin_negative <= cert.epsilon) {
      return fail(rep, "margin",
                  "d(L, A) = " + std::to_string(*rep.margin_negative) +
                      " <= epsilon = " + std::to_string(cert.epsilon));
    }
    if (rep.margin_positive && *rep.margin_positive <= cert.epsilon) {
      return fail(rep, "margin",
                  "d(L, B) = " + std::to_string(*rep.margin_positive) +
                      " <= epsilon = " + std::to_string(cert.epsilon));
    }
  }
  return rep;
}

namespace {

class LevelBuilder {
 public:
  LevelBuilder(const GridRegion& region, std::size_t axis, const std::vector<PointSet>& obstacles)
      : region_(region),
        box_(region.box()),
        axis_(axis),
        table_(region.box(), region.adjacency()),
        nb_(table_.max_degree()) {
    index_obstacles(obstacles);
    compute_levels();
    A_ = region.face(axis, false);
    B_ = region.face(axis, true);
    dist_a_ = chebyshev_transform(box_, A_.mask());
    dist_b_ = chebyshev_transform(box_, B_.mask());
    for (std::size_t i = 0; i < B_.volume(); ++i) {
      if (B_.test(i)) b_cells_.push_back(i);
    }
  }

  std::optional<LevelPartition> build(std::span<const Coord> margins) {
    const auto order = candidate_order(margins.empty() ? 0 : margins.front());
    for (Coord eps : margins) {
      for (std::int32_t t : order) {
        if (auto r = try_level(t, eps)) return r;
      }
      for (Coord s : cut_order()) {
        if (auto r = try_cut(s, eps)) return r;
      }
      if (auto r = try_zone(eps)) return r;
    }
    return std::nullopt;
  }

 private:
  void index_obstacles(const std::vector<PointSet>& obstacles) {
    // Overlapping obstacle sets are contracted together.
    std::vector<std::int32_t> parent(obstacles.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::int32_t a) {
      while (parent[static_cast<std::size_t>(a)] != a) a = parent[static_cast<std::size_t>(a)];
      return a;
    };
    std::vector<std::int32_t> raw(region_.volume(), -1);
    for (std::size_t o = 0; o < obstacles.size(); ++o) {
      for (std::size_t k = 0; k < obstacles[o].size(); ++k) {
        auto p = obstacles[o][k];
        if (!region_.contains(p)) continue;
        const std::size_t i = box_.index_of(p);
        if (raw[i] == -1) {
          raw[i] = static_cast<std::int32_t>(o);
        } else {
          const auto a = find(raw[i]), b = find(static_cast<std::int32_t>(o));
          if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
        }
      }
    }
    std::vector<std::int32_t> compact(obstacles.size(), -1);
    obstacle_of_.assign(region_.volume(), -1);
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] < 0) continue;
      const auto root = static_cast<std::size_t>(find(raw[i]));
      if (compact[root] < 0) {
        compact[root] = static_cast<std::int32_t>(cells_.size());
        cells_.emplace_back();
      }
      obstacle_of_[i] = compact[root];
      cells_[static_cast<std::size_t>(compact[root])].push_back(i);
    }
  }

  void compute_levels() {
    level_.assign(region_.volume(), kUnreachable);
    std::deque<std::size_t> queue;
    std::vector<std::uint8_t> expanded(cells_.size(), 0);
    auto reach = [&](std::size_t v, std::int32_t d) {
      if (level_[v] != kUnreachable) return;
      const std::int32_t o = obstacle_of_[v];
      if (o < 0) {
        level_[v] = d;
        queue.push_back(v);
        return;
      }
      if (expanded[static_cast<std::size_t>(o)]) return;
      expanded[static_cast<std::size_t>(o)] = 1;
      for (std::size_t c : cells_[static_cast<std::size_t>(o)]) {
        if (level_[c] == kUnreachable) {
          level_[c] = d;
          queue.push_back(c);
        }
      }
    };
    Point x(box_.dim());
    for (std::size_t i = 0; i < region_.volume(); ++i) {
      if (!region_.test(i)) continue;
      box_.point_at(i, x);
      if (x[axis_] == box_.lo[axis_]) reach(i, 0);
    }
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      const std::size_t k = table_.neighbors(u, nb_);
      for (std::size_t j = 0; j < k; ++j) {
        if (region_.test(nb_[j])) reach(nb_[j], level_[u] + 1);
      }
    }
    max_level_ = -1;
    for (std::size_t i = 0; i < level_.size(); ++i) {
      if (level_[i] != kUnreachable) max_level_ = std::max(max_level_, level_[i]);
    }
    by_level_.assign(static_cast<std::size_t>(max_level_ + 1), {});
    for (std::size_t i = 0; i < level_.size(); ++i) {
      if (level_[i] != kUnreachable) by_level_[static_cast<std::size_t>(level_[i])].push_back(i);
    }
  }

  std::vector<std::int32_t> candidate_order(Coord eps) const {
    std::int32_t min_b = kUnreachable;
    for (std::size_t i = 0; i < level_.size(); ++i) {
      if (B_.test(i)) min_b = std::min(min_b, level_[i]);
    }
    const std::int32_t top = std::max(max_level_ + 1, 1);
    const auto e = static_cast<std::int32_t>(std::clamp<Coord>(eps, 0, top));
    std::int64_t lo = e + 1;
    std::int64_t hi = min_b == kUnreachable ? top : static_cast<std::int64_t>(min_b) - e - 1;
    if (hi < lo) {
      lo = 1;
      hi = min_b == kUnreachable ? top : std::max<std::int64_t>(1, min_b - 1);
    }
    std::vector<std::int32_t> order;
    for (std::int32_t t = 1; t <= top; ++t) order.push_back(t);
    const std::int64_t mid2 = lo + hi;
    std::stable_sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
      return std::llabs(2 * a - mid2) < std::llabs(2 * b - mid2);
    });
    return order;
  }

  bool in_u(std::size_t i, std::int32_t t) const {
    if (level_[i] < t) return true;
    const std::int32_t o = obstacle_of_[i];
    return o >= 0 && absorbed_[static_cast<std::size_t>(o)];
  }

  std::optional<LevelPartition> try_level(std::int32_t t, Coord eps) {
    absorbed_.assign(cells_.size(), 0);
    std::vector<std::size_t> frontier;
    if (t - 1 <= max_level_ && t >= 1) {
      frontier = by_level_[static_cast<std::size_t>(t - 1)];
    }
    // Obstacles below level t are already inside {rho < t}.
    for (std::size_t o = 0; o < cells_.size(); ++o) {
      const auto lv = level_[cells_[o].front()];
      if (lv != kUnreachable && lv < t) absorbed_[o] = 1;
    }
    std::vector<std::size_t> boundary;
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      const std::size_t u = frontier[head];
      boundary.push_back(u);
      const std::size_t k = table_.neighbors(u, nb_);
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t v = nb_[j];
        if (!region_.test(v)) continue;
        const std::int32_t o = obstacle_of_[v];
        if (o >= 0 && !absorbed_[static_cast<std::size_t>(o)]) {
          absorbed_[static_cast<std::size_t>(o)] = 1;
          for (std::size_t c : cells_[static_cast<std::size_t>(o)]) frontier.push_back(c);
        }
      }
    }
    std::vector<std::size_t> sep;
    for (std::size_t u : boundary) {
      const std::size_t k = table_.neighbors(u, nb_);
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t v = nb_[j];
        if (region_.test(v) && !in_u(v, t) && obstacle_of_[v] < 0) sep.push_back(v);
      }
    }
    std::sort(sep.begin(), sep.end());
    sep.erase(std::unique(sep.begin(), sep.end()), sep.end());

    for (std::size_t i : b_cells_) {
      if (in_u(i, t)) return std::nullopt;
    }
    std::optional<Coord> margin;
    for (std::size_t v : sep) {
      if (B_.test(v) || A_.test(v)) return std::nullopt;
      for (std::int32_t d : {dist_a_[v], dist_b_[v]}) {
        if (d != kUnreachable && (!margin || d < *margin)) margin = d;
      }
    }
    if (margin && *margin <= eps) return std::nullopt;

    LevelPartition out;
    out.level = t;
    out.margin = margin;
    out.cert.epsilon = std::max<Coord>(eps, 0);
    out.cert.U = GridRegion(box_, region_.adjacency());
    out.cert.L = GridRegion(box_, region_.adjacency());
    for (std::size_t v : sep) out.cert.L.set(v);
    out.cert.W = region_;
    for (std::size_t i = 0; i < region_.volume(); ++i) {
      if (!region_.test(i)) continue;
      if (in_u(i, t)) {
        out.cert.U.set(i);
        out.cert.W.set(i, false);
      } else if (out.cert.L.test(i)) {
        out.cert.W.set(i, false);
      }
    }
    return out;
  }

  std::vector<Coord> cut_order() const {
    const Coord lo = box_.lo[axis_], hi = box_.hi[axis_];
    std::vector<Coord> order;
    for (Coord s = lo + 1; s <= hi; ++s) order.push_back(s);
    const Coord mid2 = lo + hi;
    std::stable_sort(order.begin(), order.end(), [&](Coord a, Coord b) {
      return std::llabs(2 * a - mid2) < std::llabs(2 * b - mid2);
    });
    return order;
  }

  // Half-space cut {x_axis < s}; every obstacle met by the separator is pushed
  // wholly into U (forward) or has its closed 1-neighbourhood removed from U
  // (backward), whichever leaves more room to the faces. With gap >= 2 these
  // choices do not interact; with gap 1 a backward obstacle may flip forward.
  std::optional<LevelPartition> try_cut(Coord s, Coord eps) {
    const std::size_t n_obs = cells_.size();
    std::vector<std::int8_t> dir(n_obs, 0);
    std::vector<Coord> omin(n_obs, 0), omax(n_obs, 0);
    Point x(box_.dim());
    for (std::size_t o = 0; o < n_obs; ++o) {
      omin[o] = box_.hi[axis_];
      omax[o] = box_.lo[axis_];
      for (std::size_t c : cells_[o]) {
        box_.point_at(c, x);
        omin[o] = std::min(omin[o], x[axis_]);
        omax[o] = std::max(omax[o], x[axis_]);
      }
    }
    std::vector<Coord> coord(region_.volume());
    for (std::size_t i = 0; i < region_.volume(); ++i) {
      box_.point_at(i, x);
      coord[i] = x[axis_];
    }
    const Coord lo = box_.lo[axis_], hi = box_.hi[axis_];
    std::vector<std::uint8_t> in_u(region_.volume());
    std::vector<std::size_t> sep;
    for (std::size_t round = 0; round <= 2 * n_obs + 1; ++round) {
      std::vector<std::uint8_t> back(region_.volume(), 0);
      bool any_back = false;
      for (std::size_t o = 0; o < n_obs; ++o) {
        if (dir[o] >= 0) continue;
        any_back = true;
        for (std::size_t c : cells_[o]) back[c] = 1;
      }
      const auto removed = any_back ? dilate(box_, back, 1) : back;
      for (std::size_t i = 0; i < region_.volume(); ++i) {
        const std::int32_t o = obstacle_of_[i];
        in_u[i] = region_.test(i) &&
                  ((o >= 0 && dir[static_cast<std::size_t>(o)] > 0) ||
                   (coord[i] < s && !removed[i] && (o < 0 || dir[static_cast<std::size_t>(o)] == 0)));
      }
      sep.clear();
      for (std::size_t i = 0; i < region_.volume(); ++i) {
        if (!region_.test(i) || in_u[i]) continue;
        const std::size_t k = table_.neighbors(i, nb_);
        for (std::size_t j = 0; j < k; ++j) {
          if (in_u[nb_[j]]) {
            sep.push_back(i);
            break;
          }
        }
      }
      std::vector<std::size_t> hit;
      for (std::size_t v : sep) {
        if (obstacle_of_[v] >= 0) hit.push_back(static_cast<std::size_t>(obstacle_of_[v]));
      }
      if (hit.empty()) break;
      std::sort(hit.begin(), hit.end());
      hit.erase(std::unique(hit.begin(), hit.end()), hit.end());
      for (std::size_t o : hit) {
        if (dir[o] != 0) {
          dir[o] = 1;  // a backward obstacle touched by U
          continue;
        }
        const Coord room_fwd = hi - (omax[o] + 1);
        const Coord room_back = (omin[o] - 1) - lo;
        dir[o] = room_fwd >= room_back ? 1 : -1;
      }
      if (round == 2 * n_obs + 1) return std::nullopt;
    }
    std::optional<Coord> margin;
    for (std::size_t v : sep) {
      if (obstacle_of_[v] >= 0 || A_.test(v) || B_.test(v)) return std::nullopt;
      for (std::int32_t d : {dist_a_[v], dist_b_[v]}) {
        if (d != kUnreachable && (!margin || d < *margin)) margin = d;
      }
    }
    if (margin && *margin <= eps) return std::nullopt;
    for (std::size_t i = 0; i < region_.volume(); ++i) {
      if (A_.test(i) && !in_u[i]) return std::nullopt;
      if (B_.test(i) && in_u[i]) return std::nullopt;
    }
    LevelPartition out;
    out.level = -1;
    out.margin = margin;
    out.cert.epsilon = std::max<Coord>(eps, 0);
    out.cert.U = GridRegion(box_, region_.adjacency());
    out.cert.L = GridRegion(box_, region_.adjacency());
    out.cert.W = region_;
    for (std::size_t v : sep) {
      out.cert.L.set(v);
      out.cert.W.set(v, false);
    }
    for (std::size_t i = 0; i < region_.volume(); ++i) {
      if (in_u[i]) {
        out.cert.U.set(i);
        out.cert.W.set(i, false);
      }
    }
    return out;
  }

  // Complete fallback. Z = non-obstacle points farther than eps from both
  // faces. Any admissible L lies in Z, so a partition exists iff A cannot
  // reach B off Z; then U = reach(A) and L = its outer boundary (inside Z).
  std::optional<LevelPartition> try_zone(Coord eps) {
    const std::size_t vol = region_.volume();
    auto in_zone = [&](std::size_t i) {
      return obstacle_of_[i] < 0 && dist_a_[i] != kUnreachable && dist_a_[i] > eps &&
             dist_b_[i] != kUnreachable && dist_b_[i] > eps;
    };
    std::vector<std::uint8_t> in_u(vol, 0);
    std::vector<std::size_t> queue;
    for (std::size_t i = 0; i < vol; ++i) {
      if (A_.test(i) && !in_zone(i)) {
        in_u[i] = 1;
        queue.push_back(i);
      }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t k = table_.neighbors(queue[head], nb_);
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t v = nb_[j];
        if (in_u[v] || !region_.test(v) || in_zone(v)) continue;
        in_u[v] = 1;
        queue.push_back(v);
      }
    }
    LevelPartition out;
    out.level = -2;
    out.cert.epsilon = std::max<Coord>(eps, 0);
    out.cert.U = GridRegion(box_, region_.adjacency());
    out.cert.L = GridRegion(box_, region_.adjacency());
    out.cert.W = region_;
    for (std::size_t i = 0; i < vol; ++i) {
      if (B_.test(i) && in_u[i]) return std::nullopt;
      if (A_.test(i) && !in_u[i]) return std::nullopt;
      if (!in_u[i]) continue;
      out.cert.U.set(i);
      out.cert.W.set(i, false);
      const std::size_t k = table_.neighbors(i, nb_);
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t v = nb_[j];
        if (!region_.test(v) || in_u[v] || out.cert.L.test(v)) continue;
        out.cert.L.set(v);
        out.cert.W.set(v, false);
        const Coord d = std::min(dist_a_[v], dist_b_[v]);
        if (!out.margin || d < *out.margin) out.margin = d;
      }
    }
    return out;
  }

  const GridRegion& region_;
  const Box& box_;
  std::size_t axis_;
  NeighborTable table_;
  std::vector<std::size_t> nb_;
  std::vector<std::int32_t> obstacle_of_;
  std::vector<std::vector<std::size_t>> cells_;
  std::vector<std::int32_t> level_;
  std::vector<std::vector<std::size_t>> by_level_;
  std::int32_t max_level_ = -1;
  std::vector<std::uint8_t> absorbed_;
  GridRegion A_, B_;
  std::vector<std::int32_t> dist_a_, dist_b_;
  std::vector<std::size_t> b_cells_;
};

}  // namespace

std::optional<LevelPartition> build_level_partition(const GridRegion& region, std::size_t axis,
                                                    const std::vector<PointSet>& obstacles,
                                                    std::span<const Coord> margins) {
  if (axis >= region.dim()) throw DomainError("face axis out of range");
  return LevelBuilder(region, axis, obstacles).build(margins);
}

PartitionCertificate build_partition(const GridRegion& region, FacePair faces,
                                     const CoverFamily& obstacles, Coord epsilon, Coord B) {
  if (epsilon <= 0 || 6 * epsilon >= B) {
    throw DomainError("build_partition needs 0 < epsilon < B/6 (epsilon = " +
                      std::to_string(epsilon) + ", B = " + std::to_string(B) + ")");
  }
  if (faces.axis >= region.dim()) throw DomainError("face axis out of range");
  CoverFamily inside{obstacles.name, {}, epsilon, B / 3};
  for (const auto& s : obstacles.sets) {
    if (!s.empty() && s.dim() != region.dim()) {
      throw DomainError("obstacle dimension differs from the region");
    }
    PointSet kept(region.dim());
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (region.contains(s[k])) kept.push_back(s[k]);
    }
    inside.sets.push_back(std::move(kept));
  }
  const FamilyReport fr = verify_family(inside);
  if (fr.gap && *fr.gap < epsilon) {
    throw DomainError("obstacles are not " + std::to_string(epsilon) + "-disjoint: " + fr.failure);
  }
  if (3 * fr.diam > B) {
    throw DomainError("obstacles are not B/3-bounded: diameter " + std::to_string(fr.diam) +
                      " with B = " + std::to_string(B));
  }
  const Coord margins[] = {epsilon};
  auto built = build_level_partition(region, faces.axis, inside.sets, margins);
  if (!built) {
    throw NoAdmissibleLevel("no " + std::to_string(epsilon) +
                            "-partition avoids the obstacles: the faces stay connected outside "
                            "the admissible zone");
  }
  return std::move(built->cert);
}

NestedReport check_nested(const std::vector<GridRegion>& sequence,
                          const std::vector<FacePair>& faces,
                          const std::vector<PartitionCertificate>& certs) {
  if (sequence.empty()) throw DomainError("nested sequence is empty");
  if (faces.size() + 1 != sequence.size() || certs.size() + 1 != sequence.size()) {
    throw DomainError("nested sequence needs one face pair and one certificate per step");
  }
  for (std::size_t i = 1; i < sequence.size(); ++i) {
    if (!(sequence[i].box() == sequence[0].box())) {
      throw DomainError("nested regions use different boxes");
    }
    if (!sequence[i].subset_of(sequence[i - 1])) {
      throw DomainError("region " + std::to_string(i) + " is not contained in its predecessor");
    }
  }
  NestedReport rep;
  for (std::size_t i = 0; i < certs.size(); ++i) {
    const PartitionReport pr = verify_partition(certs[i], sequence[i], faces[i]);
    if (!pr.pass) {
      rep.certificates_ok = false;
      rep.failed_index = i;
      rep.failure = pr.failed_clause + ": " + pr.detail;
      return rep;
    }
    if (!(certs[i].L.mask() == sequence[i + 1].mask())) {
      rep.certificates_ok = false;
      rep.failed_index = i;
      rep.failure = "separator of step " + std::to_string(i) + " differs from the next region";
      return rep;
    }
  }
  rep.final_count = sequence.back().count();
  rep.final_nonempty = rep.final_count > 0;
  return rep;
}

NestedChain build_nested_chain(const GridRegion& start, const std::vector<CoverFamily>& obstacles,
                               Coord epsilon, Coord B) {
  if (obstacles.size() > start.dim()) throw DomainError("more chain steps than axes");
  NestedChain chain;
  chain.sequence.push_back(start);
  for (std::size_t axis = 0; axis < obstacles.size(); ++axis) {
    const FacePair faces{axis};
    auto cert = build_partition(chain.sequence.back(), faces, obstacles[axis], epsilon, B);
    chain.sequence.push_back(cert.L);
    chain.faces.push_back(faces);
    chain.certs.push_back(std::move(cert));
  }
  return chain;
}

}  // namespace coarse
