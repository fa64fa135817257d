#pragma once

#include <cstdint>
#include <vector>

#include "coarse/ordinal.hpp"

namespace coarse {

// A finite family of nonempty subsets of a finite universe of positive
// integers. Members are stored as bitmasks over the sorted universe, which
// limits the universe to 64 elements.
class SetSystem {
 public:
  using Mask = std::uint64_t;

  SetSystem() = default;
  // DomainError on a non-positive or repeated universe element, an empty
  // member, a member outside the universe, or a universe above 64 elements.
  // Duplicate members are collapsed.
  SetSystem(std::vector<int> universe, const std::vector<std::vector<int>>& members);

  // All nonempty subsets of {1..n} with at most k elements.
  static SetSystem bounded_subsets(int n, int k);

  const std::vector<int>& universe() const noexcept { return universe_; }
  const std::vector<Mask>& member_masks() const noexcept { return members_; }
  std::vector<std::vector<int>> members() const;
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }

  Mask mask_of(const std::vector<int>& subset) const;
  std::vector<int> elements_of(Mask m) const;
  bool contains(const std::vector<int>& subset) const;

  friend bool operator==(const SetSystem&, const SetSystem&) = default;

 private:
  struct FromMasks {};
  SetSystem(FromMasks, std::vector<int> universe, std::vector<Mask> masks);
  std::vector<int> universe_;
  std::vector<Mask> members_;  // sorted, unique, nonzero

  friend SetSystem derive(const SetSystem&, const std::vector<int>&);
};

// M^sigma = { tau nonempty : tau | sigma in M, tau & sigma = {} }.
SetSystem derive(const SetSystem& system, const std::vector<int>& sigma);

// Ord M for a finite system: 0 iff M is empty, else 1 + max_a Ord M^a.
// Memoized per call on the derivation mask.
Ordinal ord(const SetSystem& system);

}  // namespace coarse
