#pragma once

#include <cstdint>
#include <vector>

#include "coarse/cover.hpp"

namespace coarse {

// Can `carrier` be covered by |sigma| families, family i sigma[i]-disjoint,
// all sets at most B_max wide? A finite surrogate of A(X) membership.
struct CoverProblem {
  PointSet carrier;
  std::vector<Coord> sigma;
  Coord B_max = 0;

  void validate() const;
};

enum class SearchMode { kExact, kGreedy };

struct SearchOptions {
  SearchMode mode = SearchMode::kExact;
  std::uint64_t node_budget = 50'000'000;
  std::size_t carrier_cap = 4096;
};

struct SearchResult {
  enum class Outcome { kCovered, kNotCoveredWithinBudget };
  Outcome outcome = Outcome::kNotCoveredWithinBudget;
  // True only when an exact search ran to completion: a NotCovered answer
  // is then a proof for this (carrier, B_max).
  bool exact = false;
  bool budget_exhausted = false;
  std::uint64_t nodes = 0;
  std::vector<CoverFamily> witness;

  bool covered() const { return outcome == Outcome::kCovered; }
  // sigma lies in the truncated A(X): proven uncoverable.
  bool proves_not_covered() const { return !covered() && exact; }
};

// Points are assigned in lexicographic order to families. A family's sets
// are the sigma_i-chain components of its points, which is the finest
// sigma_i-disjoint grouping, so a family is feasible iff each component
// fits in B_max. Families with equal gaps are opened in index order.
SearchResult search_cover(const CoverProblem& problem, const SearchOptions& options = {});

}  // namespace coarse
