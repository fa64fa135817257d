#include <doctest.h>

#include "coarse/adversary.hpp"
#include "coarse/distance.hpp"
#include "coarse/errors.hpp"
#include "coarse/generators.hpp"
#include "oracles.hpp"

using namespace coarse;

namespace {

CoverFamily empty_family(const std::string& name) { return CoverFamily{name, {}, 0, 0}; }

// Blocks of side `s` tiling the box: a 1-disjoint (s-1)-bounded family.
CoverFamily tiling(const Box& box, Coord s) {
  CoverFamily f{"U", {}, 1, s - 1};
  const std::size_t d = box.dim();
  Point k(d, 0);
  while (true) {
    Box b{Point(d), Point(d)};
    for (std::size_t i = 0; i < d; ++i) {
      b.lo[i] = box.lo[i] + k[i] * s;
      b.hi[i] = std::min(b.lo[i] + s - 1, box.hi[i]);
    }
    f.sets.push_back(box_points(b));
    std::size_t i = 0;
    while (i < d && box.lo[i] + (k[i] + 1) * s > box.hi[i]) k[i++] = 0;
    if (i == d) break;
    ++k[i];
  }
  return f;
}

std::vector<CoverFamily> empties(int count, const std::string& prefix) {
  std::vector<CoverFamily> out;
  for (int i = 0; i < count; ++i) out.push_back(empty_family(prefix + std::to_string(i + 1)));
  return out;
}

}  // namespace

TEST_CASE("adversary params validation") {
  AdversaryParams p{2, 5, 20, 0, 0, 8};
  CHECK_NOTHROW(p.validate());
  CHECK(p.dim() == 3);
  CHECK(p.coarse_edge() == 4);
  CHECK(p.fine_edge() == 2);
  CHECK(p.space() == SpaceSpec{{0, 1, 2}, {1, 1, 1}});
  AdversaryParams bad = p;
  bad.B = 5;  // 30 is not a multiple of 4
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = p;
  bad.b = 30;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = p;
  bad.m = -2;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("refute_cover rejects families that break their preconditions") {
  AdversaryParams p{2, 5, 20, 0, 0, 8};
  const Box box = p.box();
  CoverFamily w{"W1", {box_points(Box::cube(3, 0, 1)), box_points(Box::cube(3, 5, 6))}, 0, 0};
  auto run = [&] { refute_cover(p, empty_family("U"), empties(1, "V"), {w}); };
  CHECK_THROWS_AS(run(), DomainError);
  try {
    run();
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("W1") != std::string::npos);
  }
  CHECK_THROWS_AS(refute_cover(p, empty_family("U"), {}, empties(1, "W")), DomainError);
  CoverFamily wide{"U", {box_points(Box::cube(3, 0, 9))}, 0, 0};
  CHECK_THROWS_AS(refute_cover(p, wide, empties(1, "V"), empties(1, "W")), DomainError);
}

TEST_CASE("toy 2-d run: one W family yields a crossing path that avoids it") {
  AdversaryParams p{2, 5, 20, -1, 0, 8};
  Rng rng(3);
  const auto W = random_family(rng, "W1", p.box(), p.c, p.B, 12);
  REQUIRE(W.sets.size() > 1);
  const auto U = empty_family("U");
  const auto res = refute_cover(p, U, {}, {W});
  REQUIRE(res.certificate);
  CHECK(oracle::check_certificate(*res.certificate, p, U, {}, {W}) == "");
  CHECK(verify_obstruction(*res.certificate, p, U, {}, {W}).pass);
  for (const auto& row : res.certificate->avoidance) {
    if (row.family == "W1") CHECK((row.distance && *row.distance > 0));
  }
}

TEST_CASE("empty families give a certificate crossing the last axis") {
  AdversaryParams p{2, 5, 20, 0, 0, 8};
  const auto res = refute_cover(p, empty_family("U"), empties(1, "V"), empties(1, "W"));
  REQUIRE(res.certificate);
  const auto& cert = *res.certificate;
  CHECK(cert.crossing_axis == 2);
  CHECK(cert.chain.size() == 2);
  CHECK(oracle::check_certificate(cert, p, empty_family("U"), empties(1, "V"), empties(1, "W")) ==
        "");
  CHECK(cert.uncovered_witness == *cert.C.min_point());
}

TEST_CASE("a covering family set yields CoverHolds") {
  for (auto [m, n] : {std::pair{-1, 0}, std::pair{0, -1}, std::pair{0, 0}}) {
    AdversaryParams p{1, 3, 9, m, n, 8};
    const Box box = p.box();
    const auto U = tiling(box, 8);
    Rng rng(5);
    std::vector<CoverFamily> V, W;
    for (int i = 0; i <= m; ++i) V.push_back(random_family(rng, "V", box, p.b, p.B, 10));
    for (int i = 0; i <= n; ++i) W.push_back(random_family(rng, "W", box, p.c, p.B, 10));
    const auto res = refute_cover(p, U, V, W);
    CHECK_FALSE(res.certificate);
    REQUIRE(res.holds);
    CHECK(res.holds->families_cover_truncation);
    CHECK(res.holds->uncovered_count == 0);
  }
}

TEST_CASE("stage trace on [0,12]^3 with empty families") {
  AdversaryParams p{1, 5, 9, 0, 0, 2};
  const auto trace =
      stage_trace(p, empty_family("U"), empties(1, "V"), empties(1, "W"));
  REQUIRE(trace.size() == 3);
  CHECK(trace[0].kind == "init");
  CHECK(trace[0].region_after == 13u * 13u * 13u);
  CHECK(trace[1].kind == "W");
  CHECK(trace[1].target_margin == 9 - 8);
  CHECK(trace[2].target_margin == 5 - 4);
  for (std::size_t i = 1; i < trace.size(); ++i) {
    const auto& s = trace[i];
    CHECK_FALSE(s.failed);
    CHECK(s.partition_verified);
    REQUIRE(s.achieved_margin);
    CHECK(*s.achieved_margin > s.target_margin);
    CHECK(s.region_after < s.region_before);
    CHECK(s.region_before == trace[i - 1].region_after);
    CHECK(s.on_skeleton);
    CHECK(s.avoids_processed_families);
    CHECK(s.max_coarse_offgrid <= 2);
  }
}

TEST_CASE("zero stages: the trace is just the initial box") {
  AdversaryParams p{1, 2, 3, -1, -1, 2};
  CHECK(p.dim() == 1);
  const auto res = refute_cover(p, empty_family("U"), {}, {});
  REQUIRE(res.trace.size() == 1);
  CHECK(res.trace[0].kind == "init");
  REQUIRE(res.certificate);
  CHECK(res.certificate->C.count() == 13);
}

TEST_CASE("random 3-d runs: certificates survive independent re-checks") {
  Rng rng(17);
  int certificates = 0;
  for (int run = 0; run < 12; ++run) {
    AdversaryParams p{2, 5, 9 + run % 6, 0, 0, 8};
    const Box box = p.box();
    const auto U = random_family(rng, "U", box, p.a, p.B, 30 + 5 * run);
    std::vector<CoverFamily> V{random_family(rng, "V1", box, p.b, p.B, 5 + 3 * run)};
    std::vector<CoverFamily> W{random_family(rng, "W1", box, p.c, p.B, 5 + 2 * run)};
    const auto res = refute_cover(p, U, V, W);
    REQUIRE(res.trace.size() >= 2);
    if (!res.trace[1].failed) CHECK(res.trace[1].max_coarse_offgrid <= 2);
    for (const auto& s : res.trace) CHECK(s.avoids_processed_families);
    if (res.certificate) {
      ++certificates;
      CHECK(oracle::check_certificate(*res.certificate, p, U, V, W) == "");
    } else {
      CHECK(res.holds);
    }
  }
  CHECK(certificates > 0);
}

TEST_CASE("regime checks flag forfeited guarantees") {
  const auto checks = regime_checks(AdversaryParams{1, 5, 20, 0, 0, 8});
  REQUIRE_FALSE(checks.empty());
  CHECK(checks[0].inequality == "a >= 2");
  CHECK_FALSE(checks[0].holds);
  for (const auto& c : regime_checks(AdversaryParams{2, 5, 12, 0, 0, 8})) CHECK(c.holds);
}

TEST_CASE("fatten agrees with a brute-force neighbourhood") {
  Rng rng(9);
  const Box clip = Box::cube(2, 0, 15);
  for (int trial = 0; trial < 20; ++trial) {
    const auto fam = random_family(rng, "F", Box::cube(2, -3, 18), 1, 4, 1);
    REQUIRE(fam.sets.size() == 1);
    const Coord r = trial % 4;
    const auto fat = fatten(fam.sets[0], r, clip);
    PointSet expect(2);
    const auto all = box_points(clip);
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t k = 0; k < fam.sets[0].size(); ++k) {
        if (chebyshev(all[i], fam.sets[0][k]) <= r) {
          expect.push_back(all[i]);
          break;
        }
      }
    }
    PointSet got = fat;
    got.normalize();
    CHECK(got == expect);
  }
}

TEST_CASE("cubes_meeting parallel and serial agree") {
  const Box box = Box::cube(3, 0, 16);
  const auto cubes = subdivide(box, 4).cubes;
  GridRegion r(box);
  Rng rng(4);
  for (int k = 0; k < 30; ++k) {
    Point x(3);
    for (auto& c : x) c = std::uniform_int_distribution<Coord>(0, 16)(rng);
    r.insert(x);
  }
  const auto fast = cubes_meeting(cubes, r);
  CHECK(fast == cubes_meeting_serial(cubes, r));
  CHECK_FALSE(fast.empty());
}
