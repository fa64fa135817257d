#include <doctest.h>

#include <random>

#include "coarse/distance.hpp"
#include "coarse/generators.hpp"

using namespace coarse;

namespace {
std::vector<std::uint8_t> random_mask(Rng& rng, std::size_t n, double p) {
  std::vector<std::uint8_t> m(n);
  std::bernoulli_distribution coin(p);
  for (auto& x : m) x = coin(rng);
  return m;
}

// Brute force: min over sources of the l_inf distance.
std::vector<std::int32_t> brute_transform(const Box& box, const std::vector<std::uint8_t>& src) {
  const std::size_t vol = src.size();
  std::vector<std::int32_t> out(vol, kUnreachable);
  for (std::size_t i = 0; i < vol; ++i) {
    const Point x = box.point_at(i);
    for (std::size_t j = 0; j < vol; ++j) {
      if (!src[j]) continue;
      const auto d = static_cast<std::int32_t>(chebyshev(x, box.point_at(j)));
      out[i] = std::min(out[i], d);
    }
  }
  return out;
}
}  // namespace

TEST_CASE("chebyshev transform: separable, BFS and brute force agree") {
  Rng rng(1);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 1 + trial % 4;
    Box box{Point(d), Point(d)};
    for (std::size_t i = 0; i < d; ++i) {
      box.lo[i] = std::uniform_int_distribution<Coord>(-5, 5)(rng);
      box.hi[i] = box.lo[i] + std::uniform_int_distribution<Coord>(0, d >= 3 ? 6 : 20)(rng);
    }
    const double p = std::uniform_real_distribution<double>(0.0, 0.2)(rng);
    const auto src = random_mask(rng, box.volume(), p);
    const auto fast = chebyshev_transform(box, src);
    CHECK(fast == chebyshev_transform_serial(box, src));
    CHECK(fast == brute_transform(box, src));
  }
}

TEST_CASE("chebyshev transform without sources is unreachable everywhere") {
  const Box box = Box::cube(2, 0, 3);
  const auto t = chebyshev_transform(box, std::vector<std::uint8_t>(16, 0));
  for (auto v : t) CHECK(v == kUnreachable);
}

TEST_CASE("dilate matches thresholded transform") {
  Rng rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 1 + trial % 4;
    const Box box = Box::cube(d, 0, d >= 3 ? 7 : 25);
    const auto src = random_mask(rng, box.volume(), 0.03);
    const Coord r = trial % 5;
    const auto dist = chebyshev_transform_serial(box, src);
    const auto dil = dilate(box, src, r);
    for (std::size_t i = 0; i < dist.size(); ++i) {
      CHECK(dil[i] == (dist[i] != kUnreachable && dist[i] <= r ? 1 : 0));
    }
  }
}
