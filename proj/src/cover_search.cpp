#include "coarse/cover_search.hpp"

#include <algorithm>

#include "coarse/errors.hpp"

namespace coarse {

void CoverProblem::validate() const {
  if (carrier.empty()) throw DomainError("cover problem carrier is empty");
  if (sigma.empty()) throw DomainError("cover problem needs at least one gap");
  for (Coord g : sigma) {
    if (g <= 0) throw DomainError("cover problem gaps must be positive");
  }
  if (B_max < 0) throw DomainError("cover problem bound must be nonnegative");
}

namespace {

struct Component {
  Box bbox;
  std::vector<std::size_t> members;
};

class Search {
 public:
  Search(const CoverProblem& problem, const SearchOptions& options)
      : problem_(problem), options_(options), points_(problem.carrier) {
    points_.normalize();
    classes_.resize(problem.sigma.size());
  }

  SearchResult run() {
    SearchResult res;
    bool found = false;
    if (options_.mode == SearchMode::kExact) {
      found = exact(0);
      res.exact = !aborted_;
    } else {
      found = greedy();
    }
    res.nodes = nodes_;
    res.budget_exhausted = aborted_;
    if (found) {
      res.outcome = SearchResult::Outcome::kCovered;
      res.witness = witness();
    }
    return res;
  }

 private:
  // Adds point k to class c. Returns false (state unchanged) if a component
  // would exceed B_max.
  bool try_add(std::size_t c, std::size_t k) {
    auto& comps = classes_[c];
    const Coord gap = problem_.sigma[c];
    const auto p = points_[k];
    Component merged{Box{Point(p.begin(), p.end()), Point(p.begin(), p.end())}, {k}};
    std::vector<Component> rest;
    for (auto& comp : comps) {
      bool touches = false;
      for (std::size_t q : comp.members) {
        if (chebyshev(p, points_[q]) < gap) {
          touches = true;
          break;
        }
      }
      if (!touches) {
        rest.push_back(comp);
        continue;
      }
      for (std::size_t i = 0; i < merged.bbox.dim(); ++i) {
        merged.bbox.lo[i] = std::min(merged.bbox.lo[i], comp.bbox.lo[i]);
        merged.bbox.hi[i] = std::max(merged.bbox.hi[i], comp.bbox.hi[i]);
      }
      merged.members.insert(merged.members.end(), comp.members.begin(), comp.members.end());
    }
    if (merged.bbox.diameter() > problem_.B_max) return false;
    rest.push_back(std::move(merged));
    comps = std::move(rest);
    return true;
  }

  bool class_open(std::size_t c) const {
    for (std::size_t j = 0; j < c; ++j) {
      if (problem_.sigma[j] == problem_.sigma[c] && classes_[j].empty()) return false;
    }
    return true;
  }

  bool exact(std::size_t k) {
    if (k == points_.size()) return true;
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      if (++nodes_ > options_.node_budget) {
        aborted_ = true;
        return false;
      }
      if (!class_open(c)) continue;
      auto saved = classes_[c];
      if (!try_add(c, k)) continue;
      if (exact(k + 1)) return true;
      if (aborted_) return false;
      classes_[c] = std::move(saved);
    }
    return false;
  }

  bool greedy() {
    for (std::size_t k = 0; k < points_.size(); ++k) {
      bool placed = false;
      for (std::size_t c = 0; c < classes_.size() && !placed; ++c) {
        ++nodes_;
        placed = try_add(c, k);
      }
      if (!placed) return false;
    }
    return true;
  }

  std::vector<CoverFamily> witness() const {
    std::vector<CoverFamily> out;
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      CoverFamily fam;
      fam.name = "family" + std::to_string(c);
      fam.r = problem_.sigma[c];
      fam.B = problem_.B_max;
      for (const auto& comp : classes_[c]) {
        PointSet s(points_.dim());
        for (std::size_t q : comp.members) s.push_back(points_[q]);
        s.normalize();
        fam.sets.push_back(std::move(s));
      }
      std::sort(fam.sets.begin(), fam.sets.end(), [](const PointSet& a, const PointSet& b) {
        return std::lexicographical_compare(a.raw().begin(), a.raw().end(), b.raw().begin(),
                                            b.raw().end());
      });
      out.push_back(std::move(fam));
    }
    return out;
  }

  const CoverProblem& problem_;
  const SearchOptions& options_;
  PointSet points_;
  std::vector<std::vector<Component>> classes_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

SearchResult search_cover(const CoverProblem& problem, const SearchOptions& options) {
  problem.validate();
  if (problem.carrier.size() > options.carrier_cap) {
    throw ResourceError("carrier has " + std::to_string(problem.carrier.size()) +
                        " points, cap is " + std::to_string(options.carrier_cap));
  }
  if (options.mode == SearchMode::kExact && problem.sigma.size() > 3) {
    throw DomainError("exact cover search supports at most 3 families");
  }
  return Search(problem, options).run();
}

}  // namespace coarse
