#include "coarse/grid_region.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "coarse/errors.hpp"

namespace coarse {

std::string to_string(Adjacency a) { return a == Adjacency::kFace ? "face" : "vertex"; }

Adjacency adjacency_from_string(const std::string& s) {
  if (s == "face") return Adjacency::kFace;
  if (s == "vertex") return Adjacency::kVertex;
  throw DomainError("unknown adjacency '" + s + "'");
}

GridRegion::GridRegion(Box box, Adjacency adjacency)
    : box_(std::move(box)), adjacency_(adjacency), mask_(box_.volume(), 0) {}

GridRegion GridRegion::full(Box box, Adjacency adjacency) {
  GridRegion r(std::move(box), adjacency);
  std::fill(r.mask_.begin(), r.mask_.end(), 1);
  return r;
}

GridRegion GridRegion::from_points(Box box, const PointSet& points, Adjacency adjacency) {
  GridRegion r(std::move(box), adjacency);
  for (std::size_t k = 0; k < points.size(); ++k) r.insert(points[k]);
  return r;
}

bool GridRegion::contains(std::span<const Coord> p) const {
  return box_.contains(p) && mask_[box_.index_of(p)] != 0;
}

void GridRegion::insert(std::span<const Coord> p) {
  if (!box_.contains(p)) throw DomainError("point " + to_string(p) + " lies outside the region box");
  mask_[box_.index_of(p)] = 1;
}

std::size_t GridRegion::count() const {
  return static_cast<std::size_t>(std::count_if(mask_.begin(), mask_.end(),
                                                [](std::uint8_t v) { return v != 0; }));
}

PointSet GridRegion::points() const {
  PointSet out(dim());
  Point x(dim());
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (!mask_[i]) continue;
    box_.point_at(i, x);
    out.push_back(x);
  }
  return out;
}

std::optional<Point> GridRegion::min_point() const {
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i]) return box_.point_at(i);
  }
  return std::nullopt;
}

void GridRegion::check_same_box(const GridRegion& other) const {
  if (!(box_ == other.box_)) throw DomainError("regions live in different boxes");
}

GridRegion GridRegion::operator&(const GridRegion& other) const {
  check_same_box(other);
  GridRegion r = *this;
  for (std::size_t i = 0; i < mask_.size(); ++i) r.mask_[i] = mask_[i] && other.mask_[i];
  return r;
}

GridRegion GridRegion::operator|(const GridRegion& other) const {
  check_same_box(other);
  GridRegion r = *this;
  for (std::size_t i = 0; i < mask_.size(); ++i) r.mask_[i] = mask_[i] || other.mask_[i];
  return r;
}

GridRegion GridRegion::operator-(const GridRegion& other) const {
  check_same_box(other);
  GridRegion r = *this;
  for (std::size_t i = 0; i < mask_.size(); ++i) r.mask_[i] = mask_[i] && !other.mask_[i];
  return r;
}

bool GridRegion::subset_of(const GridRegion& other) const {
  check_same_box(other);
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i] && !other.mask_[i]) return false;
  }
  return true;
}

bool GridRegion::disjoint_from(const GridRegion& other) const {
  check_same_box(other);
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i] && other.mask_[i]) return false;
  }
  return true;
}

GridRegion GridRegion::face(std::size_t axis, bool positive) const {
  if (axis >= dim()) throw DomainError("face axis " + std::to_string(axis) + " out of range");
  GridRegion r(box_, adjacency_);
  const Coord target = positive ? box_.hi[axis] : box_.lo[axis];
  Point x(dim());
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (!mask_[i]) continue;
    box_.point_at(i, x);
    if (x[axis] == target) r.mask_[i] = 1;
  }
  return r;
}

std::string GridRegion::rle() const {
  std::ostringstream os;
  std::uint8_t current = 0;
  std::size_t run = 0;
  bool first = true;
  auto flush = [&] {
    if (!first) os << ',';
    os << run;
    first = false;
  };
  for (std::uint8_t v : mask_) {
    std::uint8_t b = v ? 1 : 0;
    if (b != current) {
      flush();
      current = b;
      run = 0;
    }
    ++run;
  }
  flush();
  return os.str();
}

GridRegion GridRegion::from_rle(Box box, Adjacency adjacency, const std::string& rle) {
  GridRegion r(std::move(box), adjacency);
  std::size_t pos = 0, cursor = 0;
  std::uint8_t value = 0;
  while (pos < rle.size()) {
    std::size_t end = rle.find(',', pos);
    if (end == std::string::npos) end = rle.size();
    const std::string tok = rle.substr(pos, end - pos);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError("malformed run length '" + tok + "'", pos);
    }
    const std::size_t len = std::stoull(tok);
    if (cursor + len > r.mask_.size()) throw ParseError("runs overflow the box volume", pos);
    std::fill_n(r.mask_.begin() + static_cast<std::ptrdiff_t>(cursor), len, value);
    cursor += len;
    value ^= 1;
    pos = end + 1;
  }
  if (cursor != r.mask_.size()) throw ParseError("runs do not cover the box volume", rle.size());
  return r;
}

NeighborTable::NeighborTable(const Box& box, Adjacency adjacency)
    : box_(box), strides_(box.strides()) {
  const std::size_t d = box.dim();
  if (d > 16) throw DomainError("regions above 16 dimensions are not supported");
  if (adjacency == Adjacency::kFace) {
    for (std::size_t i = 0; i < d; ++i) {
      for (Coord s : {Coord{-1}, Coord{1}}) {
        Point off(d, 0);
        off[i] = s;
        offsets_.push_back(off);
      }
    }
  } else {
    Point cur(d, -1);
    while (d > 0) {
      if (std::any_of(cur.begin(), cur.end(), [](Coord c) { return c != 0; })) {
        offsets_.push_back(cur);
      }
      std::size_t i = 0;
      while (i < d && cur[i] == 1) cur[i++] = -1;
      if (i == d) break;
      ++cur[i];
    }
  }
  for (const auto& off : offsets_) {
    std::ptrdiff_t delta = 0;
    for (std::size_t i = 0; i < d; ++i) delta += off[i] * static_cast<std::ptrdiff_t>(strides_[i]);
    deltas_.push_back(delta);
  }
  for (std::size_t i = 0; i < d; ++i) extents_.push_back(box.extent(i));
}

std::size_t NeighborTable::neighbors(std::size_t index, std::span<std::size_t> out) const {
  const std::size_t d = box_.dim();
  // Per-axis position of the cell, to reject offsets that leave the box.
  Coord pos[16];
  std::size_t rem = index;
  bool interior = true;
  for (std::size_t i = d; i-- > 0;) {
    const Coord e = extents_[i];
    pos[i] = static_cast<Coord>(rem % static_cast<std::size_t>(e));
    rem /= static_cast<std::size_t>(e);
    interior = interior && pos[i] > 0 && pos[i] + 1 < e;
  }
  const auto base = static_cast<std::ptrdiff_t>(index);
  if (interior) {
    for (std::size_t k = 0; k < deltas_.size(); ++k) {
      out[k] = static_cast<std::size_t>(base + deltas_[k]);
    }
    return deltas_.size();
  }
  std::size_t n = 0;
  for (std::size_t k = 0; k < offsets_.size(); ++k) {
    bool inside = true;
    for (std::size_t i = 0; i < d; ++i) {
      const Coord c = pos[i] + offsets_[k][i];
      if (c < 0 || c >= extents_[i]) {
        inside = false;
        break;
      }
    }
    if (inside) out[n++] = static_cast<std::size_t>(base + deltas_[k]);
  }
  return n;
}

std::vector<std::int32_t> component_labels(const GridRegion& region, Adjacency adjacency,
                                           std::int32_t* count) {
  std::vector<std::int32_t> label(region.volume(), -1);
  NeighborTable table(region.box(), adjacency);
  std::vector<std::size_t> nb(table.max_degree());
  std::int32_t next = 0;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < region.volume(); ++s) {
    if (!region.test(s) || label[s] != -1) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      const std::size_t k = table.neighbors(u, nb);
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t v = nb[j];
        if (region.test(v) && label[v] == -1) {
          label[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

bool connects(const GridRegion& region, const GridRegion& from, const GridRegion& to,
              Adjacency adjacency) {
  std::int32_t n = 0;
  const auto label = component_labels(region, adjacency, &n);
  std::vector<std::uint8_t> hit(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (label[i] >= 0 && from.test(i)) hit[static_cast<std::size_t>(label[i])] = 1;
  }
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (label[i] >= 0 && to.test(i) && hit[static_cast<std::size_t>(label[i])]) return true;
  }
  return false;
}

}  // namespace coarse
