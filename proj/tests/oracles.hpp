// Independent reference implementations used as test oracles. Deliberately
// naive: no shared code paths with the library beyond plain data types.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "coarse/adversary.hpp"
#include "coarse/set_system.hpp"

namespace oracle {

using coarse::Coord;
using coarse::Point;

inline bool divisible(Coord x, int p) {
  const Coord m = Coord{1} << p;
  return x % m == 0;
}

// The space predicate, transcribed literally.
inline bool member(const Point& x, const std::vector<int>& p, const std::vector<int>& q) {
  for (std::size_t k = 1; k < p.size(); ++k) {
    if (p[k] < p[k - 1]) return false;
  }
  for (int v : q) {
    if (v < 0) return false;
  }
  for (Coord c : x) {
    if (!divisible(c, p[0])) return false;
  }
  long budget = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    budget += q[k];
    long outside = 0;
    for (Coord c : x) outside += !divisible(c, p[k]);
    if (outside > budget) return false;
  }
  return true;
}

using Set = std::set<int>;
using System = std::set<Set>;

inline System derive(const System& M, int a) {
  System out;
  for (const auto& m : M) {
    if (!m.count(a) || m.size() < 2) continue;
    Set t = m;
    t.erase(a);
    out.insert(t);
  }
  return out;
}

// Ord by explicit derivations, no memo.
inline int ord(const System& M, const Set& universe) {
  if (M.empty()) return 0;
  int best = 0;
  for (int a : universe) best = std::max(best, ord(derive(M, a), universe));
  return best + 1;
}

inline System to_system(const coarse::SetSystem& s) {
  System out;
  for (const auto& m : s.members()) out.insert(Set(m.begin(), m.end()));
  return out;
}

inline Coord cheb(const Point& a, const Point& b) {
  Coord d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, a[i] > b[i] ? a[i] - b[i] : b[i] - a[i]);
  return d;
}

// Can `pts` be split into sets that are pairwise >= gap apart with diameter
// <= bound? The finest admissible split is the components of "distance < gap".
inline bool class_ok(const std::vector<Point>& pts, Coord gap, Coord bound) {
  const std::size_t n = pts.size();
  std::vector<std::size_t> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (cheb(pts[i], pts[j]) < gap && comp[i] != comp[j]) {
          const auto lo = std::min(comp[i], comp[j]);
          comp[i] = comp[j] = lo;
          changed = true;
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (comp[i] == comp[j] && cheb(pts[i], pts[j]) > bound) return false;
    }
  }
  return true;
}

// Tries every assignment of points to |sigma| classes.
inline bool coverable(const std::vector<Point>& carrier, const std::vector<Coord>& sigma,
                      Coord bound) {
  const std::size_t k = sigma.size(), n = carrier.size();
  std::vector<std::size_t> assign(n, 0);
  while (true) {
    bool ok = true;
    for (std::size_t c = 0; c < k && ok; ++c) {
      std::vector<Point> cls;
      for (std::size_t i = 0; i < n; ++i) {
        if (assign[i] == c) cls.push_back(carrier[i]);
      }
      ok = class_ok(cls, sigma[c], bound);
    }
    if (ok) return true;
    std::size_t i = 0;
    while (i < n && assign[i] == k - 1) assign[i++] = 0;
    if (i == n) return false;
    ++assign[i];
  }
}

// Re-checks an obstruction certificate from its point list alone. Returns
// an empty string on success.
inline std::string check_certificate(const coarse::ObstructionCertificate& cert,
                                     const coarse::AdversaryParams& params,
                                     const coarse::CoverFamily& U,
                                     const std::vector<coarse::CoverFamily>& V,
                                     const std::vector<coarse::CoverFamily>& W) {
  std::vector<Point> C;
  const auto ps = cert.C.points();
  for (std::size_t i = 0; i < ps.size(); ++i) C.push_back(ps.point(i));
  if (C.empty()) return "empty C";
  const std::set<Point> in(C.begin(), C.end());
  // Connectivity: flood fill over vertex neighbours by coordinate search.
  std::set<Point> seen{C.front()};
  std::vector<Point> stack{C.front()};
  const std::size_t N = params.dim();
  while (!stack.empty()) {
    const Point u = stack.back();
    stack.pop_back();
    Point off(N, -1);
    while (true) {
      Point v = u;
      for (std::size_t i = 0; i < N; ++i) v[i] += off[i];
      if (in.count(v) && !seen.count(v)) {
        seen.insert(v);
        stack.push_back(v);
      }
      std::size_t i = 0;
      while (i < N && off[i] == 1) off[i++] = -1;
      if (i == N) break;
      ++off[i];
    }
  }
  if (seen.size() != C.size()) return "C is not vertex-connected";
  const std::size_t ax = N - 1;
  const Coord side = 6 * params.B;
  bool lo = false, hi = false;
  for (const auto& x : C) {
    lo = lo || x[ax] == 0;
    hi = hi || x[ax] == side;
  }
  if (!lo || !hi) return "C does not cross the last axis";
  for (const auto* fams : {&V, &W}) {
    for (const auto& f : *fams) {
      for (const auto& s : f.sets) {
        for (std::size_t k = 0; k < s.size(); ++k) {
          if (in.count(s.point(k))) return "C meets family " + f.name;
        }
      }
    }
  }
  const std::vector<int> p{0, params.m + 1, params.m + params.n + 2};
  const std::vector<int> q{1, params.m + 1, params.n + 1};
  for (const auto& x : C) {
    if (!member(x, p, q)) return "C leaves the space";
    int off = 0;
    for (Coord c : x) off += !divisible(c, params.m + params.n + 2);
    if (off > params.m + 2) return "coordinate profile violated";
    for (Coord c : x) {
      if (c < 0 || c > side) return "C leaves the box";
    }
  }
  std::set<Point> covered;
  for (const auto& s : U.sets) {
    for (std::size_t k = 0; k < s.size(); ++k) covered.insert(s.point(k));
  }
  if (!in.count(cert.uncovered_witness)) return "witness not in C";
  if (covered.count(cert.uncovered_witness)) return "witness covered by U";
  return {};
}

}  // namespace oracle
