#include "coarse/geometry.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "coarse/errors.hpp"

namespace coarse {

Coord chebyshev(std::span<const Coord> a, std::span<const Coord> b) {
  if (a.size() != b.size()) {
    throw DomainError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                      std::to_string(b.size()));
  }
  Coord d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, a[i] > b[i] ? a[i] - b[i] : b[i] - a[i]);
  }
  return d;
}

std::string to_string(std::span<const Coord> p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

std::size_t point_cap() {
  if (const char* env = std::getenv("COARSELAB_POINT_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return std::size_t{1} << 25;
}

void PointSet::push_back(std::span<const Coord> p) {
  if (p.size() != dim_) {
    throw DomainError("point " + to_string(p) + " has dimension " + std::to_string(p.size()) +
                      ", expected " + std::to_string(dim_));
  }
  if (dim_ == 0) {
    ++zero_dim_count_;
    return;
  }
  coords_.insert(coords_.end(), p.begin(), p.end());
}

void PointSet::normalize() {
  if (dim_ == 0) {
    zero_dim_count_ = std::min<std::size_t>(zero_dim_count_, 1);
    return;
  }
  const std::size_t n = size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    auto pa = (*this)[a], pb = (*this)[b];
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  };
  std::sort(order.begin(), order.end(), less);
  std::vector<Coord> out;
  out.reserve(coords_.size());
  for (std::size_t k = 0; k < n; ++k) {
    auto p = (*this)[order[k]];
    if (k > 0) {
      auto prev = (*this)[order[k - 1]];
      if (std::equal(p.begin(), p.end(), prev.begin())) continue;
    }
    out.insert(out.end(), p.begin(), p.end());
  }
  coords_ = std::move(out);
}

bool PointSet::contains_sorted(std::span<const Coord> p) const {
  if (p.size() != dim_) return false;
  if (dim_ == 0) return zero_dim_count_ > 0;
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    auto q = (*this)[mid];
    if (std::lexicographical_compare(q.begin(), q.end(), p.begin(), p.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo == size()) return false;
  auto q = (*this)[lo];
  return std::equal(q.begin(), q.end(), p.begin());
}

Box Box::cube(std::size_t dim, Coord lo, Coord hi) {
  return Box{Point(dim, lo), Point(dim, hi)};
}

bool Box::empty() const {
  for (std::size_t i = 0; i < dim(); ++i) {
    if (hi[i] < lo[i]) return true;
  }
  return false;
}

std::size_t Box::volume(std::size_t cap) const {
  if (lo.size() != hi.size()) throw DomainError("box bounds have different lengths");
  if (empty()) return 0;
  std::size_t v = 1;
  for (std::size_t i = 0; i < dim(); ++i) {
    auto e = static_cast<std::size_t>(extent(i));
    if (e > cap || v > cap / e) {
      throw ResourceError("box volume exceeds point cap " + std::to_string(cap));
    }
    v *= e;
  }
  return v;
}

Coord Box::diameter() const {
  if (empty()) return 0;
  Coord d = 0;
  for (std::size_t i = 0; i < dim(); ++i) d = std::max(d, hi[i] - lo[i]);
  return d;
}

bool Box::contains(std::span<const Coord> p) const {
  if (p.size() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (p[i] < lo[i] || p[i] > hi[i]) return false;
  }
  return true;
}

std::vector<std::size_t> Box::strides() const {
  std::vector<std::size_t> s(dim(), 1);
  for (std::size_t i = dim(); i-- > 1;) {
    s[i - 1] = s[i] * static_cast<std::size_t>(extent(i));
  }
  return s;
}

std::size_t Box::index_of(std::span<const Coord> p) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    idx = idx * static_cast<std::size_t>(extent(i)) + static_cast<std::size_t>(p[i] - lo[i]);
  }
  return idx;
}

void Box::point_at(std::size_t index, std::span<Coord> out) const {
  for (std::size_t i = dim(); i-- > 0;) {
    auto e = static_cast<std::size_t>(extent(i));
    out[i] = lo[i] + static_cast<Coord>(index % e);
    index /= e;
  }
}

Point Box::point_at(std::size_t index) const {
  Point p(dim());
  point_at(index, p);
  return p;
}

Box bounding_box(const PointSet& pts) {
  Box b{Point(pts.dim(), std::numeric_limits<Coord>::max()),
        Point(pts.dim(), std::numeric_limits<Coord>::min())};
  for (std::size_t k = 0; k < pts.size(); ++k) {
    auto p = pts[k];
    for (std::size_t i = 0; i < pts.dim(); ++i) {
      b.lo[i] = std::min(b.lo[i], p[i]);
      b.hi[i] = std::max(b.hi[i], p[i]);
    }
  }
  return b;
}

}  // namespace coarse
