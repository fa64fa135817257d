#include "coarse/generators.hpp"

#include <algorithm>

#include "coarse/errors.hpp"

namespace coarse {

namespace {

Coord box_distance(const Box& x, const Box& y) {
  Coord d = 0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    d = std::max({d, y.lo[i] - x.hi[i], x.lo[i] - y.hi[i]});
  }
  return d;
}

Coord uniform(Rng& rng, Coord lo, Coord hi) {
  return std::uniform_int_distribution<Coord>(lo, hi)(rng);
}

}  // namespace

CoverFamily random_family(Rng& rng, const std::string& name, const Box& box, Coord gap,
                          Coord bound, std::size_t max_sets) {
  if (box.empty() || gap < 0 || bound < 0) throw DomainError("random_family: bad arguments");
  const std::size_t d = box.dim();
  CoverFamily fam{name, {}, gap, bound};
  std::vector<Box> placed;
  for (std::size_t attempt = 0; attempt < 20 * max_sets && placed.size() < max_sets; ++attempt) {
    Box b{Point(d), Point(d)};
    for (std::size_t i = 0; i < d; ++i) {
      const Coord side = uniform(rng, 0, std::min(bound, box.hi[i] - box.lo[i]));
      b.lo[i] = uniform(rng, box.lo[i], box.hi[i] - side);
      b.hi[i] = b.lo[i] + side;
    }
    bool ok = true;
    for (const auto& q : placed) ok = ok && box_distance(b, q) >= gap;
    if (!ok) continue;
    PointSet s = box_points(b);
    if (s.size() > 1 && std::bernoulli_distribution(0.25)(rng)) {
      PointSet sparse(d);
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (std::bernoulli_distribution(0.3)(rng)) sparse.push_back(s[k]);
      }
      if (sparse.empty()) sparse.push_back(s[0]);
      s = std::move(sparse);
    }
    placed.push_back(bounding_box(s));
    fam.sets.push_back(std::move(s));
  }
  return fam;
}

SetSystem random_set_system(Rng& rng, int universe, std::size_t members) {
  if (universe < 1 || universe > 64) throw DomainError("random_set_system: universe out of range");
  std::vector<int> u(static_cast<std::size_t>(universe));
  for (int i = 0; i < universe; ++i) u[static_cast<std::size_t>(i)] = i + 1;
  std::vector<std::vector<int>> ms;
  for (std::size_t k = 0; k < members; ++k) {
    std::vector<int> m;
    for (int i = 1; i <= universe; ++i) {
      if (std::bernoulli_distribution(0.35)(rng)) m.push_back(i);
    }
    if (m.empty()) m.push_back(static_cast<int>(uniform(rng, 1, universe)));
    ms.push_back(std::move(m));
  }
  return SetSystem(u, ms);
}

SpaceSpec random_space(Rng& rng, std::size_t max_n, std::size_t max_dim) {
  if (max_n == 0 || max_dim == 0) throw DomainError("random_space: bounds must be positive");
  const auto n = static_cast<std::size_t>(uniform(rng, 1, static_cast<Coord>(max_n)));
  SpaceSpec s;
  int p = static_cast<int>(uniform(rng, 0, 2));
  for (std::size_t k = 0; k < n; ++k) {
    s.p.push_back(p);
    p += static_cast<int>(uniform(rng, 0, 2));
  }
  std::size_t left = max_dim;
  for (std::size_t k = 0; k < n; ++k) {
    const auto q = left == 0 ? 0 : static_cast<int>(uniform(rng, 0, static_cast<Coord>(left)));
    s.q.push_back(q);
    left -= static_cast<std::size_t>(q);
  }
  if (s.ambient_dim() == 0) s.q.front() = 1;
  // Occasionally an empty space.
  if (std::bernoulli_distribution(0.05)(rng) && n > 1) std::swap(s.p.front(), s.p.back());
  if (std::bernoulli_distribution(0.03)(rng)) s.q.back() = -1;
  return s;
}

}  // namespace coarse
