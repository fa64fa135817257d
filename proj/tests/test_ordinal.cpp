#include <doctest.h>

#include "coarse/errors.hpp"
#include "coarse/generators.hpp"
#include "coarse/ordinal.hpp"
#include "coarse/set_system.hpp"
#include "oracles.hpp"

using namespace coarse;

TEST_CASE("parse_ordinal examples") {
  const auto t = parse_ordinal("2w+1");
  CHECK(t.terms() == Ordinal::Terms{{1, 2}, {0, 1}});
  CHECK(parse_ordinal("0").terms().empty());
  CHECK(parse_ordinal("0").is_zero());
  CHECK(parse_ordinal("w^2").terms() == Ordinal::Terms{{2, 1}});
  CHECK(parse_ordinal("3*w^2+w+5").to_string() == "3w^2+w+5");
  CHECK(parse_ordinal("1+w") == Ordinal::omega_power(1));
  CHECK(parse_ordinal("inf").is_infinite());
  CHECK(parse_ordinal(" w + 2 ").to_string() == "w+2");
}

TEST_CASE("parse_ordinal errors carry a position") {
  for (const char* bad : {"", "2w+", "w^", "x", "2**w", "w+-1", "w^2^3", "+w"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_ordinal(bad), ParseError);
  }
  try {
    parse_ordinal("w+?");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
}

TEST_CASE("ordinal_compare examples") {
  CHECK(ordinal_compare(parse_ordinal("2w+1"), parse_ordinal("w+1000")) > 0);
  CHECK(ordinal_compare(parse_ordinal("w+3"), parse_ordinal("w+3")) == 0);
  CHECK(ordinal_compare(Ordinal::finite(0), Ordinal::infinity()) < 0);
  CHECK(ordinal_compare(Ordinal::infinity(), Ordinal::infinity()) == 0);
  CHECK(Ordinal::omega_power(3) > parse_ordinal("1000w^2+7"));
}

TEST_CASE("successor and addition") {
  CHECK(Ordinal::finite(4).successor() == Ordinal::finite(5));
  CHECK((parse_ordinal("2w") + Ordinal::finite(1)).to_string() == "2w+1");
  CHECK((Ordinal::finite(7) + Ordinal::omega_power(1)).to_string() == "w");
  CHECK((parse_ordinal("w+3") + parse_ordinal("w")).to_string() == "2w");
  CHECK((parse_ordinal("w^2") + Ordinal::infinity()).is_infinite());
}

TEST_CASE("print/parse round trip on random ordinals") {
  Rng rng(1);
  for (int i = 0; i < 500; ++i) {
    std::map<std::uint32_t, std::uint64_t> terms;
    const int k = std::uniform_int_distribution<int>(0, 4)(rng);
    for (int j = 0; j < k; ++j) {
      terms[std::uniform_int_distribution<std::uint32_t>(0, 5)(rng)] =
          std::uniform_int_distribution<std::uint64_t>(1, 50)(rng);
    }
    const auto o = Ordinal::from_terms(terms);
    CHECK(parse_ordinal(o.to_string()) == o);
  }
}

TEST_CASE("derive examples") {
  const SetSystem singletons({1, 2, 3}, {{1}, {2}, {3}});
  CHECK(derive(singletons, {1}).empty());
  const SetSystem none({1, 2, 3}, {});
  CHECK(derive(none, {2}).empty());
  const auto pairs = SetSystem::bounded_subsets(3, 2);
  CHECK(derive(pairs, {2}).members() == std::vector<std::vector<int>>{{1}, {3}});
  CHECK_THROWS_AS(derive(pairs, {4}), DomainError);
}

TEST_CASE("set system validation") {
  CHECK_THROWS_AS(SetSystem({1, 2}, {{}}), DomainError);
  CHECK_THROWS_AS(SetSystem({1, 2}, {{3}}), DomainError);
  CHECK_THROWS_AS(SetSystem({0, 1}, {{1}}), DomainError);
  CHECK_THROWS_AS(SetSystem({1, 1}, {{1}}), DomainError);
  CHECK(SetSystem({1, 2}, {{1}, {1}}).size() == 1);
}

TEST_CASE("ord examples") {
  CHECK(ord(SetSystem({1, 2, 3}, {})) == Ordinal::finite(0));
  CHECK(ord(SetSystem({1, 2, 3}, {{1}, {2}, {3}})) == Ordinal::finite(1));
  CHECK(ord(SetSystem::bounded_subsets(4, 2)) == Ordinal::finite(2));
}

TEST_CASE("ord matches the naive recursion on random systems") {
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    const int u = std::uniform_int_distribution<int>(1, 6)(rng);
    const auto s = random_set_system(rng, u, std::uniform_int_distribution<std::size_t>(0, 8)(rng));
    const oracle::Set universe(s.universe().begin(), s.universe().end());
    const int expect = oracle::ord(oracle::to_system(s), universe);
    CHECK(ord(s) == Ordinal::finite(static_cast<std::uint64_t>(expect)));
  }
}

TEST_CASE("ord properties: monotone, strictly decreasing under derivation") {
  Rng rng(3);
  for (int i = 0; i < 150; ++i) {
    const auto big = random_set_system(rng, 8, 10);
    auto members = big.members();
    std::vector<std::vector<int>> half;
    for (std::size_t k = 0; k < members.size(); k += 2) half.push_back(members[k]);
    const SetSystem small(big.universe(), half);
    CHECK(ord(small) <= ord(big));
    for (int a : big.universe()) CHECK(ord(derive(big, {a})) < ord(big));
  }
}

TEST_CASE("ord of bounded subsets") {
  for (int n = 1; n <= 8; ++n) {
    for (int k = 1; k <= std::min(n, 4); ++k) {
      CHECK(ord(SetSystem::bounded_subsets(n, k)) == Ordinal::finite(static_cast<std::uint64_t>(k)));
    }
  }
}
