#include "coarse/distance.hpp"

#include <algorithm>
#include <deque>

#include "coarse/grid_region.hpp"

namespace coarse {

namespace {

// f(x) = min_y max(|x - y|, g(y)) along one line, by the lower-envelope
// scan of Meijster, Roerdink and Hesselink for the chessboard metric.
struct LineScratch {
  std::vector<std::int64_t> g;
  std::vector<std::int64_t> s;
  std::vector<std::int64_t> t;
};

void minmax_line(const std::int32_t* in, std::int32_t* out, std::size_t n, std::size_t stride,
                 LineScratch& w) {
  constexpr std::int64_t inf = std::int64_t{1} << 40;
  w.g.resize(n);
  w.s.resize(n);
  w.t.resize(n);
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int32_t v = in[i * stride];
    w.g[i] = v == kUnreachable ? inf : v;
    any = any || v != kUnreachable;
  }
  if (!any) return;
  const auto& g = w.g;
  auto f = [&](std::int64_t x, std::int64_t i) {
    return std::max(x > i ? x - i : i - x, g[static_cast<std::size_t>(i)]);
  };
  auto sep = [&](std::int64_t i, std::int64_t u) {
    const std::int64_t gi = g[static_cast<std::size_t>(i)], gu = g[static_cast<std::size_t>(u)];
    const std::int64_t mid = (i + u) / 2;
    return gi <= gu ? std::max(i + gu, mid) : std::min(u - gi, mid);
  };
  const auto m = static_cast<std::int64_t>(n);
  std::int64_t q = 0;
  w.s[0] = 0;
  w.t[0] = 0;
  for (std::int64_t u = 1; u < m; ++u) {
    while (q >= 0 && f(w.t[static_cast<std::size_t>(q)], w.s[static_cast<std::size_t>(q)]) >
                         f(w.t[static_cast<std::size_t>(q)], u)) {
      --q;
    }
    if (q < 0) {
      q = 0;
      w.s[0] = u;
    } else {
      const std::int64_t x = 1 + sep(w.s[static_cast<std::size_t>(q)], u);
      if (x < m) {
        ++q;
        w.s[static_cast<std::size_t>(q)] = u;
        w.t[static_cast<std::size_t>(q)] = x;
      }
    }
  }
  for (std::int64_t u = m - 1; u >= 0; --u) {
    const std::int64_t v = f(u, w.s[static_cast<std::size_t>(q)]);
    out[static_cast<std::size_t>(u) * stride] = v >= inf ? kUnreachable : static_cast<std::int32_t>(v);
    if (u == w.t[static_cast<std::size_t>(q)]) --q;
  }
}

// Runs `fn(start, stride, n)` over every line parallel to `axis`.
template <class Fn>
void for_each_line(const Box& box, std::size_t axis, Fn&& fn) {
  const auto strides = box.strides();
  std::size_t vol = 1;
  for (std::size_t i = 0; i < box.dim(); ++i) vol *= static_cast<std::size_t>(box.extent(i));
  const auto n = static_cast<std::size_t>(box.extent(axis));
  const std::size_t stride = strides[axis];
  const auto nlines = static_cast<std::int64_t>(vol / n);
#pragma omp parallel for schedule(static)
  for (std::int64_t l = 0; l < nlines; ++l) {
    const auto lu = static_cast<std::size_t>(l);
    fn((lu / stride) * stride * n + lu % stride, stride, n);
  }
}

}  // namespace

std::vector<std::int32_t> chebyshev_transform(const Box& box,
                                              const std::vector<std::uint8_t>& sources) {
  const std::size_t vol = sources.size();
  std::vector<std::int32_t> dist(vol);
  for (std::size_t i = 0; i < vol; ++i) dist[i] = sources[i] ? 0 : kUnreachable;
  for (std::size_t axis = 0; axis < box.dim(); ++axis) {
    for_each_line(box, axis, [&](std::size_t start, std::size_t stride, std::size_t n) {
      thread_local LineScratch scratch;
      minmax_line(dist.data() + start, dist.data() + start, n, stride, scratch);
    });
  }
  return dist;
}

std::vector<std::int32_t> chebyshev_transform_serial(const Box& box,
                                                     const std::vector<std::uint8_t>& sources) {
  std::vector<std::int32_t> dist(sources.size(), kUnreachable);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (sources[i]) {
      dist[i] = 0;
      queue.push_back(i);
    }
  }
  NeighborTable table(box, Adjacency::kVertex);
  std::vector<std::size_t> nb(table.max_degree());
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    const std::size_t k = table.neighbors(u, nb);
    for (std::size_t j = 0; j < k; ++j) {
      if (dist[nb[j]] == kUnreachable) {
        dist[nb[j]] = dist[u] + 1;
        queue.push_back(nb[j]);
      }
    }
  }
  return dist;
}

std::vector<std::uint8_t> dilate(const Box& box, const std::vector<std::uint8_t>& sources,
                                 Coord radius) {
  // The l_inf ball is a product of intervals: dilate axis by axis with a
  // sliding-window "any" filter.
  std::vector<std::uint8_t> out(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) out[i] = sources[i] ? 1 : 0;
  if (radius < 0) return std::vector<std::uint8_t>(sources.size(), 0);
  for (std::size_t axis = 0; axis < box.dim(); ++axis) {
    for_each_line(box, axis, [&](std::size_t start, std::size_t stride, std::size_t n) {
      thread_local std::vector<std::uint8_t> line;
      line.resize(n);
      for (std::size_t i = 0; i < n; ++i) line[i] = out[start + i * stride];
      const auto len = static_cast<std::int64_t>(n);
      std::int64_t last = -(std::int64_t{1} << 40);  // position of the latest set cell seen
      std::int64_t next = -1;                        // next set cell at or after x
      auto advance = [&](std::int64_t from) {
        for (std::int64_t k = from; k < len; ++k) {
          if (line[static_cast<std::size_t>(k)]) return k;
        }
        return len + (std::int64_t{1} << 40);
      };
      next = advance(0);
      for (std::int64_t x = 0; x < len; ++x) {
        if (x > next) next = advance(x);
        if (line[static_cast<std::size_t>(x)]) last = x;
        const bool hit = x - last <= radius || next - x <= radius;
        out[start + static_cast<std::size_t>(x) * stride] = hit ? 1 : 0;
      }
    });
  }
  return out;
}

}  // namespace coarse
