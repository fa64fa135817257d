// Acceptance harness: one PASS/FAIL line per criterion, each with a pinned
// wall-clock limit. Usage: acceptance [--only N] [--seed S]
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <functional>
#include <string>

#include "coarse/adversary.hpp"
#include "coarse/cover.hpp"
#include "coarse/cover_search.hpp"
#include "coarse/errors.hpp"
#include "coarse/generators.hpp"
#include "coarse/ordinal.hpp"
#include "coarse/partition.hpp"
#include "coarse/set_system.hpp"
#include "coarse/space.hpp"
#include "oracles.hpp"

using namespace coarse;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

Coord uni(Rng& rng, Coord lo, Coord hi) { return std::uniform_int_distribution<Coord>(lo, hi)(rng); }

// 1. Membership oracle.
Verdict membership(Rng& rng) {
  std::size_t mismatches = 0, checked = 0, members = 0;
  for (int s = 0; s < 50; ++s) {
    SpaceSpec spec = random_space(rng, 4, 8);
    while (spec.ambient_dim() == 0) spec = random_space(rng, 4, 8);
    const std::size_t N = spec.ambient_dim();
    Point x(N);
    for (int k = 0; k < 10000; ++k) {
      for (auto& c : x) c = uni(rng, -8, 8) << uni(rng, 0, 6);
      const bool got = is_member(x, spec);
      mismatches += got != oracle::member(x, spec.p, spec.q);
      members += got;
      ++checked;
    }
  }
  return {mismatches == 0, std::to_string(checked) + " points, " + std::to_string(members) +
                               " members, " + std::to_string(mismatches) + " mismatches"};
}

// 2. Ord of bounded subset systems; memoized vs naive recursion.
Verdict ord_values(Rng& rng) {
  Verdict v;
  int cases = 0, naive = 0;
  for (int N = 1; N <= 10; ++N) {
    for (int k = 1; k <= std::min(N, 4); ++k) {
      const auto sys = SetSystem::bounded_subsets(N, k);
      const Ordinal got = ord(sys);
      ++cases;
      if (!(got == Ordinal::finite(static_cast<std::uint64_t>(k)))) {
        v.pass = false;
        v.detail += " ord(bounded_subsets(" + std::to_string(N) + "," + std::to_string(k) +
                    "))=" + got.to_string();
      }
      if (N <= 6) {
        oracle::Set u;
        for (int i = 1; i <= N; ++i) u.insert(i);
        const int expect = oracle::ord(oracle::to_system(sys), u);
        ++naive;
        if (!(got == Ordinal::finite(static_cast<std::uint64_t>(expect)))) v.pass = false;
      }
    }
  }
  for (int t = 0; t < 60; ++t) {
    const int N = static_cast<int>(uni(rng, 1, 6));
    const auto sys = random_set_system(rng, N, static_cast<std::size_t>(uni(rng, 1, 12)));
    const std::vector<int>& uv = sys.universe();
    const int expect = oracle::ord(oracle::to_system(sys), oracle::Set(uv.begin(), uv.end()));
    ++naive;
    if (!(ord(sys) == Ordinal::finite(static_cast<std::uint64_t>(expect)))) {
      v.pass = false;
      v.detail += " random system disagrees with naive recursion";
    }
  }
  v.detail = std::to_string(cases) + " bounded systems, " + std::to_string(naive) +
             " naive comparisons" + v.detail;
  return v;
}

// 3. Ordinal order axioms against a coefficient-vector oracle, and round trips.
Verdict ordinal_order(Rng& rng) {
  struct Sample {
    Ordinal o;
    bool inf = false;
    std::array<std::uint64_t, 5> coef{};  // coef[e] multiplies w^e
  };
  auto draw = [&] {
    Sample s;
    if (uni(rng, 0, 49) == 0) {
      s.inf = true;
      s.o = Ordinal::infinity();
      return s;
    }
    std::map<std::uint32_t, std::uint64_t> terms;
    for (std::uint32_t e = 0; e < 5; ++e) {
      if (uni(rng, 0, 2) == 0) continue;
      s.coef[e] = static_cast<std::uint64_t>(uni(rng, 0, 3));
      if (s.coef[e]) terms[e] = s.coef[e];
    }
    s.o = Ordinal::from_terms(terms);
    return s;
  };
  auto oracle_cmp = [](const Sample& a, const Sample& b) {
    if (a.inf || b.inf) return static_cast<int>(a.inf) - static_cast<int>(b.inf);
    for (int e = 4; e >= 0; --e) {
      if (a.coef[e] != b.coef[e]) return a.coef[e] < b.coef[e] ? -1 : 1;
    }
    return 0;
  };
  auto sign = [](std::strong_ordering o) { return o < 0 ? -1 : (o > 0 ? 1 : 0); };
  std::size_t bad = 0;
  for (int t = 0; t < 10000; ++t) {
    const Sample a = draw(), b = draw(), c = draw();
    const int ab = sign(ordinal_compare(a.o, b.o)), ba = sign(ordinal_compare(b.o, a.o));
    const int bc = sign(ordinal_compare(b.o, c.o)), ac = sign(ordinal_compare(a.o, c.o));
    if (ab != -ba) ++bad;                                                          // totality
    if (ab == 0 && a.o.to_string() != b.o.to_string()) ++bad;                      // antisymmetry
    if (ab <= 0 && bc <= 0 && ac > 0) ++bad;                                       // transitivity
    if (ab != oracle_cmp(a, b) || bc != oracle_cmp(b, c) || ac != oracle_cmp(a, c)) ++bad;
    for (const auto* s : {&a, &b, &c}) {
      if (!(parse_ordinal(s->o.to_string()) == s->o)) ++bad;
    }
  }
  for (const char* text : {"2w+1", "0", "w", "w^2+3w+1", "w^4", "inf", "7"}) {
    if (parse_ordinal(text).to_string() != text) ++bad;
  }
  const auto title = parse_ordinal("2w+1");
  if (!(title == Ordinal::from_terms({{1, 2}, {0, 1}}))) ++bad;
  return {bad == 0, "10000 triples, " + std::to_string(bad) + " violations"};
}

// 4. Brick covers.
Verdict bricks(Rng&) {
  Verdict v;
  int checked = 0;
  for (std::size_t d = 1; d <= 4; ++d) {
    auto side = static_cast<Coord>(std::floor(std::pow(1e6, 1.0 / static_cast<double>(d)) + 1e-9)) - 1;
    side = std::min<Coord>(side, 40);
    const Box box = Box::cube(d, 0, side);
    const auto carrier = box_points(box);
    for (Coord r : {1, 2, 3, 5, 8}) {
      const auto fams = brick_cover(d, r, box);
      bool ok = fams.size() == d + 1;
      for (const auto& f : fams) ok = ok && verify_family(f).pass;
      ok = ok && verify_cover(fams, carrier).pass;
      ++checked;
      if (!ok) {
        v.pass = false;
        v.detail += " d=" + std::to_string(d) + ",r=" + std::to_string(r);
      }
    }
  }
  v.detail = std::to_string(checked) + " (d, r) cases, boxes up to 40^d within 1e6 points" +
             (v.pass ? "" : "; failing:" + v.detail);
  return v;
}

// Face-adjacency reachability from the negative face to the positive face of
// `axis`, over region minus L, computed without the library's graph code.
bool faces_connected(const GridRegion& region, const GridRegion& L, std::size_t axis) {
  const Box& box = region.box();
  const std::size_t d = box.dim();
  std::vector<std::uint8_t> seen(region.volume(), 0);
  std::deque<Point> queue;
  for (std::size_t i = 0; i < region.volume(); ++i) {
    if (!region.test(i) || L.test(i)) continue;
    Point p = box.point_at(i);
    if (p[axis] == box.lo[axis]) {
      seen[i] = 1;
      queue.push_back(p);
    }
  }
  while (!queue.empty()) {
    Point p = queue.front();
    queue.pop_front();
    if (p[axis] == box.hi[axis]) return true;
    for (std::size_t k = 0; k < d; ++k) {
      for (Coord s : {-1, 1}) {
        Point q = p;
        q[k] += s;
        if (!box.contains(q)) continue;
        const std::size_t j = box.index_of(q);
        if (seen[j] || !region.test(j) || L.test(j)) continue;
        seen[j] = 1;
        queue.push_back(q);
      }
    }
  }
  return false;
}

// 5. Obstacle-avoiding eps-partitions of [0,B]^d.
Verdict avoiding_partitions(Rng& rng) {
  std::size_t runs = 0, fails = 0, fails_eps1 = 0, runs_eps1 = 0, impossible = 0;
  std::string first;
  for (std::size_t d = 2; d <= 4; ++d) {
    for (int t = 0; t < 500; ++t) {
      const Coord B = uni(rng, 7, 24);
      const Coord eps = uni(rng, 1, (B - 1) / 6);
      const Box box = Box::cube(d, 0, B);
      const auto fam = random_family(rng, "O", box, eps, B / 3, static_cast<std::size_t>(uni(rng, 1, 24)));
      const auto axis = static_cast<std::size_t>(uni(rng, 0, static_cast<Coord>(d) - 1));
      const auto region = GridRegion::full(box);
      ++runs;
      runs_eps1 += eps == 1;
      std::string why;
      try {
        const auto cert = build_partition(region, {axis}, fam, eps, B);
        const auto rep = verify_partition(cert, region, {axis});
        if (!rep.pass) why = "verify_partition: " + rep.failed_clause;
        if (cert.epsilon != eps) why = "certificate margin differs";
        for (const auto& s : fam.sets) {
          for (std::size_t k = 0; k < s.size() && why.empty(); ++k) {
            if (cert.L.contains(s[k])) why = "L meets an obstacle";
          }
        }
        if (why.empty() && faces_connected(region, cert.L, axis)) why = "faces connected off L";
      } catch (const NoAdmissibleLevel& e) {
        why = e.what();
        ++impossible;
      }
      if (!why.empty()) {
        ++fails;
        fails_eps1 += eps == 1;
        if (first.empty()) {
          first = "d=" + std::to_string(d) + " B=" + std::to_string(B) + " eps=" +
                  std::to_string(eps) + ": " + why;
        }
      }
    }
  }
  std::string detail = std::to_string(runs) + " families, " + std::to_string(fails) + " failures (" +
                       std::to_string(fails_eps1) + " of " + std::to_string(runs_eps1) +
                       " eps=1 runs; " + std::to_string(fails - fails_eps1) + " with eps>=2; " +
                       std::to_string(impossible) + " proved to admit no partition)";
  if (!first.empty()) detail += "; first: " + first;
  return {fails == 0, detail};
}

// 6. Chained partitions over all axes stay nonempty.
Verdict nested_chains(Rng& rng) {
  std::size_t built = 0, empty = 0, not_built = 0, attempts = 0;
  for (std::size_t d = 2; d <= 4; ++d) {
    for (int t = 0; t < 80; ++t) {
      const Coord B = uni(rng, 7, d == 4 ? 16 : 24);
      const Coord eps = uni(rng, 1, (B - 1) / 6);
      const Box box = Box::cube(d, 0, B);
      std::vector<CoverFamily> obstacles;
      for (std::size_t k = 0; k < d; ++k) {
        obstacles.push_back(random_family(rng, "O" + std::to_string(k + 1), box, eps, B / 3,
                                          static_cast<std::size_t>(uni(rng, 0, 12))));
      }
      ++attempts;
      try {
        const auto chain = build_nested_chain(GridRegion::full(box, Adjacency::kVertex), obstacles, eps, B);
        const auto rep = check_nested(chain.sequence, chain.faces, chain.certs);
        ++built;
        if (!rep.certificates_ok || !rep.final_nonempty) ++empty;
      } catch (const NoAdmissibleLevel&) {
        ++not_built;
      }
    }
  }
  return {built >= 200 && empty == 0,
          std::to_string(attempts) + " attempts, " + std::to_string(built) + " chains built, " +
              std::to_string(empty) + " empty or unverified, " + std::to_string(not_built) +
              " stopped by a step with no admissible level"};
}

struct Instance {
  AdversaryParams p;
  CoverFamily U;
  std::vector<CoverFamily> V, W;
};

// Random parameters with E | 6B and gaps on the proof's scale.
Instance random_instance(Rng& rng, int m, int n, Coord B) {
  Instance in;
  auto& p = in.p;
  p.m = m;
  p.n = n;
  p.B = B;
  const Coord E = Coord{1} << (m + n + 2), e = Coord{1} << (m + 1);
  p.c = uni(rng, 2 * E + 1, 2 * E + B - 1);
  p.b = uni(rng, std::min(2 * e + 1, p.c - 1), std::min(2 * e + B - 1, p.c - 1));
  p.a = uni(rng, 1, p.b - 1);
  const Box box = Box::cube(p.dim(), 0, p.side());
  in.U = random_family(rng, "U", box, p.a, B, static_cast<std::size_t>(uni(rng, 0, 60)));
  for (int i = 0; i <= m; ++i) {
    in.V.push_back(random_family(rng, "V" + std::to_string(i + 1), box, p.b, B,
                                 static_cast<std::size_t>(uni(rng, 0, 30))));
  }
  for (int j = 0; j <= n; ++j) {
    in.W.push_back(random_family(rng, "W" + std::to_string(j + 1), box, p.c, B,
                                 static_cast<std::size_t>(uni(rng, 0, 30))));
  }
  return in;
}

// 7. Adversary soundness: every certificate re-checks independently.
Verdict adversary_soundness(Rng& rng) {
  std::size_t certs = 0, holds = 0, capped = 0, unsound = 0;
  std::string first;
  for (int t = 0; t < 100; ++t) {
    const int m = static_cast<int>(uni(rng, 0, 1)), n = static_cast<int>(uni(rng, 0, 1));
    const Coord E = Coord{1} << (m + n + 2);
    std::vector<Coord> Bs;  // E | 6B
    for (Coord B = 1; B <= 16; ++B) {
      if ((6 * B) % E == 0) Bs.push_back(B);
    }
    const Coord B = Bs[static_cast<std::size_t>(uni(rng, 0, static_cast<Coord>(Bs.size()) - 1))];
    const Instance in = random_instance(rng, m, n, B);
    try {
      const auto res = refute_cover(in.p, in.U, in.V, in.W);
      if (res.certificate) {
        ++certs;
        const auto why = oracle::check_certificate(*res.certificate, in.p, in.U, in.V, in.W);
        if (!why.empty()) {
          ++unsound;
          if (first.empty()) first = why;
        }
      } else {
        ++holds;
      }
    } catch (const ResourceError&) {
      ++capped;
    }
  }
  std::string detail = "100 runs: " + std::to_string(certs) + " certificates, " +
                       std::to_string(unsound) + " unsound, " + std::to_string(holds) +
                       " CoverHolds, " + std::to_string(capped) + " over the point cap";
  if (!first.empty()) detail += "; first: " + first;
  return {unsound == 0 && certs > 0, detail};
}

// 8. Mutual exclusion: a U tiling the cube (a = 1) forces CoverHolds. Half
// the instances punch holes into the tiling where V or W sets already cover.
Verdict mutual_exclusion(Rng& rng) {
  std::size_t ok = 0;
  std::string first;
  for (int t = 0; t < 50; ++t) {
    const bool four = t % 5 == 4;
    const int m = four ? static_cast<int>(uni(rng, 0, 1)) : 0;
    const int n = four ? 1 - m : 0;
    const Coord B = four ? 4 : 2 * uni(rng, 1, 8);
    Instance in = random_instance(rng, m, n, B);
    in.p.a = 1;
    const Box box = Box::cube(in.p.dim(), 0, in.p.side());
    std::vector<std::uint8_t> hole(box.volume(), 0);
    if (t % 2 == 1) {
      for (const auto* fams : {&in.V, &in.W}) {
        for (const auto& f : *fams) {
          for (const auto& s : f.sets) {
            for (std::size_t k = 0; k < s.size(); ++k) hole[box.index_of(s[k])] = 1;
          }
        }
      }
    }
    in.U = CoverFamily{"U", {}, 1, B};
    const Coord step = B + 1;  // blocks of B + 1 points have diameter B
    const Coord blocks = in.p.side() / step + 1;
    const auto corners = box_points(Box::cube(box.dim(), 0, blocks - 1));
    for (std::size_t c = 0; c < corners.size(); ++c) {
      Box cell{Point(box.dim()), Point(box.dim())};
      for (std::size_t i = 0; i < box.dim(); ++i) {
        cell.lo[i] = corners[c][i] * step;
        cell.hi[i] = std::min(cell.lo[i] + B, in.p.side());
      }
      PointSet s(box.dim());
      const auto pts = box_points(cell);
      for (std::size_t k = 0; k < pts.size(); ++k) {
        if (!hole[box.index_of(pts[k])]) s.push_back(pts[k]);
      }
      if (!s.empty()) in.U.sets.push_back(std::move(s));
    }
    std::string why;
    try {
      const auto res = refute_cover(in.p, in.U, in.V, in.W);
      if (res.certificate) why = "certificate issued for a covered cube";
      else if (!res.holds || !res.holds->families_cover_truncation) why = "cover not confirmed";
    } catch (const std::exception& e) {
      why = e.what();
    }
    if (why.empty()) {
      ++ok;
    } else if (first.empty()) {
      first = why;
    }
  }
  std::string detail = std::to_string(ok) + "/50 covered instances gave CoverHolds";
  if (!first.empty()) detail += "; first failure: " + first;
  return {ok == 50, detail};
}

// 9. Interval search.
Verdict interval_search(Rng&) {
  const PointSet carrier = box_points(Box::cube(1, 0, 100));
  const auto small = search_cover(CoverProblem{carrier, {10}, 20});
  const auto large = search_cover(CoverProblem{carrier, {10}, 200});
  const bool ok = !small.covered() && small.exact && small.proves_not_covered() && large.covered() &&
                  verify_cover(large.witness, carrier).pass;
  return {ok, std::string("B_max=20: ") + (small.proves_not_covered() ? "NotCovered (exact)" : "not proven") +
                  ", B_max=200: " + (large.covered() ? "Covered" : "not covered")};
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Verdict(Rng&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  std::uint64_t seed = 20240601;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (a == "--seed" && i + 1 < argc) {
      seed = std::strtoull(argv[++i], nullptr, 10);
    } else {
      std::fprintf(stderr, "usage: acceptance [--only N] [--seed S]\n");
      return 2;
    }
  }
  const Criterion criteria[] = {
      {1, "membership oracle", 1, membership},
      {2, "Ord of bounded subsets", 30, ord_values},
      {3, "ordinal order and round trips", 1, ordinal_order},
      {4, "brick covers", 60, bricks},
      {5, "obstacle-avoiding partitions", 300, avoiding_partitions},
      {6, "nested chains nonempty", 300, nested_chains},
      {7, "adversary soundness", 600, adversary_soundness},
      {8, "mutual exclusion", 120, mutual_exclusion},
      {9, "interval search", 10, interval_search},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    Rng rng(seed + static_cast<std::uint64_t>(c.id));
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run(rng);
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = s <= c.limit_s;
    const bool pass = v.pass && in_time;
    failed += !pass;
    std::printf("criterion %d: %s  %s  [%.2f s / limit %.0f s%s]  %s\n", c.id, pass ? "PASS" : "FAIL",
                c.name, s, c.limit_s, in_time ? "" : ", TIME EXCEEDED", v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
