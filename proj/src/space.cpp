#include "coarse/space.hpp"

#include <algorithm>
#include <set>

#include "coarse/errors.hpp"

namespace coarse {

namespace {

bool divisible_by_pow2(Coord x, int p) {
  if (p == 0) return true;
  const Coord mask = (Coord{1} << p) - 1;
  return (x & mask) == 0;
}

// Precomputed form of the membership predicate.
struct MembershipRule {
  std::vector<int> p;
  std::vector<long> budget;
  bool empty;
  std::size_t dim;

  explicit MembershipRule(const SpaceSpec& spec)
      : p(spec.p), budget(spec.budgets()), empty(spec.is_empty()), dim(0) {
    if (!empty) dim = spec.ambient_dim();
  }

  bool test(std::span<const Coord> x) const {
    if (empty) return false;
    if (p.empty()) return true;
    for (Coord c : x) {
      if (!divisible_by_pow2(c, p[0])) return false;
    }
    for (std::size_t k = 0; k < p.size(); ++k) {
      long outside = 0;
      for (Coord c : x) outside += divisible_by_pow2(c, p[k]) ? 0 : 1;
      if (outside > budget[k]) return false;
    }
    return true;
  }
};

void check_box(const SpaceSpec& spec, const Box& box) {
  spec.validate();
  if (!spec.is_empty() && box.dim() != spec.ambient_dim()) {
    throw DomainError("box dimension " + std::to_string(box.dim()) +
                      " does not match ambient dimension " + std::to_string(spec.ambient_dim()));
  }
}

}  // namespace

void SpaceSpec::validate() const {
  if (p.size() != q.size()) throw DomainError("p and q must have the same length");
  for (int pk : p) {
    if (pk < 0 || pk > 62) throw DomainError("scale exponents must lie in [0, 62]");
  }
}

bool SpaceSpec::is_empty() const {
  for (int qk : q) {
    if (qk < 0) return true;
  }
  return !std::is_sorted(p.begin(), p.end());
}

std::size_t SpaceSpec::ambient_dim() const {
  long n = 0;
  for (int qk : q) n += qk;
  return n < 0 ? 0 : static_cast<std::size_t>(n);
}

std::vector<long> SpaceSpec::budgets() const {
  std::vector<long> b;
  long acc = 0;
  for (int qk : q) {
    acc += qk;
    b.push_back(acc);
  }
  return b;
}

bool is_member(std::span<const Coord> point, const SpaceSpec& spec) {
  spec.validate();
  if (spec.is_empty()) return false;
  if (point.size() != spec.ambient_dim()) {
    throw DomainError("point " + to_string(point) + " has dimension " +
                      std::to_string(point.size()) + ", space has " +
                      std::to_string(spec.ambient_dim()));
  }
  return MembershipRule(spec).test(point);
}

std::vector<std::uint8_t> membership_mask(const SpaceSpec& spec, const Box& box, std::size_t cap) {
  check_box(spec, box);
  const std::size_t vol = box.volume(cap);
  std::vector<std::uint8_t> mask(vol, 0);
  if (spec.is_empty() || vol == 0) return mask;
  const MembershipRule rule(spec);
  const auto n = static_cast<std::int64_t>(vol);
#pragma omp parallel
  {
    Point x(box.dim());
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      box.point_at(static_cast<std::size_t>(i), x);
      mask[static_cast<std::size_t>(i)] = rule.test(x) ? 1 : 0;
    }
  }
  return mask;
}

std::vector<std::uint8_t> membership_mask_serial(const SpaceSpec& spec, const Box& box,
                                                 std::size_t cap) {
  check_box(spec, box);
  const std::size_t vol = box.volume(cap);
  std::vector<std::uint8_t> mask(vol, 0);
  if (spec.is_empty() || vol == 0) return mask;
  const MembershipRule rule(spec);
  Point x(box.dim());
  for (std::size_t i = 0; i < vol; ++i) {
    box.point_at(i, x);
    mask[i] = rule.test(x) ? 1 : 0;
  }
  return mask;
}

namespace {

PointSet collect(const std::vector<std::uint8_t>& mask, const Box& box) {
  PointSet out(box.dim());
  Point x(box.dim());
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) continue;
    box.point_at(i, x);
    out.push_back(x);
  }
  return out;
}

}  // namespace

PointSet enumerate_truncation(const SpaceSpec& spec, const Box& box, std::size_t cap) {
  if (spec.is_empty()) return PointSet(box.dim());
  return collect(membership_mask(spec, box, cap), box);
}

PointSet enumerate_truncation_serial(const SpaceSpec& spec, const Box& box, std::size_t cap) {
  if (spec.is_empty()) return PointSet(box.dim());
  return collect(membership_mask_serial(spec, box, cap), box);
}

Coord dist(std::span<const Coord> a, std::span<const Coord> b) { return chebyshev(a, b); }

void CoarseUnionSpec::validate() const {
  std::set<int> seen;
  for (const auto& c : components) {
    if (c.index <= 0) throw DomainError("component indices must be positive");
    if (!seen.insert(c.index).second) {
      throw DomainError("component index " + std::to_string(c.index) + " is repeated");
    }
  }
}

const CoarseUnionSpec::Component& CoarseUnionSpec::component(int index) const {
  for (const auto& c : components) {
    if (c.index == index) return c;
  }
  throw DomainError("unknown component index " + std::to_string(index));
}

Coord union_dist(int comp_a, std::span<const Coord> a, int comp_b, std::span<const Coord> b,
                 const CoarseUnionSpec& spec) {
  const auto& ca = spec.component(comp_a);
  const auto& cb = spec.component(comp_b);
  if (comp_a == comp_b) return chebyshev(a, b);
  return static_cast<Coord>(comp_a) + comp_b + ca.box.diameter() + cb.box.diameter();
}

}  // namespace coarse
