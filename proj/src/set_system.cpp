#include "coarse/set_system.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "coarse/errors.hpp"

namespace coarse {

SetSystem::SetSystem(FromMasks, std::vector<int> universe, std::vector<Mask> masks)
    : universe_(std::move(universe)), members_(std::move(masks)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

SetSystem::SetSystem(std::vector<int> universe, const std::vector<std::vector<int>>& members) {
  std::sort(universe.begin(), universe.end());
  if (std::adjacent_find(universe.begin(), universe.end()) != universe.end()) {
    throw DomainError("universe has a repeated element");
  }
  if (!universe.empty() && universe.front() <= 0) {
    throw DomainError("universe elements must be positive integers");
  }
  if (universe.size() > 64) throw DomainError("universe larger than 64 elements");
  universe_ = std::move(universe);
  for (const auto& m : members) {
    if (m.empty()) throw DomainError("set system members must be nonempty");
    members_.push_back(mask_of(m));
  }
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

SetSystem SetSystem::bounded_subsets(int n, int k) {
  if (n < 0 || n > 64) throw DomainError("bounded_subsets: n must be in [0, 64]");
  std::vector<int> universe(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) universe[static_cast<std::size_t>(i)] = i + 1;
  std::vector<Mask> masks;
  if (n <= 24) {
    const Mask full = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
    for (Mask m = 1; m != 0 && m <= full; ++m) {
      if (std::popcount(m) <= k) masks.push_back(m);
    }
  } else {
    throw DomainError("bounded_subsets: n above 24 is not enumerable");
  }
  return SetSystem(FromMasks{}, std::move(universe), std::move(masks));
}

SetSystem::Mask SetSystem::mask_of(const std::vector<int>& subset) const {
  Mask m = 0;
  for (int x : subset) {
    auto it = std::lower_bound(universe_.begin(), universe_.end(), x);
    if (it == universe_.end() || *it != x) {
      throw DomainError("element " + std::to_string(x) + " is not in the universe");
    }
    m |= Mask{1} << (it - universe_.begin());
  }
  return m;
}

std::vector<int> SetSystem::elements_of(Mask m) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < universe_.size(); ++i) {
    if (m >> i & 1) out.push_back(universe_[i]);
  }
  return out;
}

std::vector<std::vector<int>> SetSystem::members() const {
  std::vector<std::vector<int>> out;
  out.reserve(members_.size());
  for (Mask m : members_) out.push_back(elements_of(m));
  return out;
}

bool SetSystem::contains(const std::vector<int>& subset) const {
  if (subset.empty()) return false;
  Mask m = mask_of(subset);
  return std::binary_search(members_.begin(), members_.end(), m);
}

SetSystem derive(const SetSystem& system, const std::vector<int>& sigma) {
  const SetSystem::Mask s = system.mask_of(sigma);
  std::vector<SetSystem::Mask> out;
  for (auto m : system.members_) {
    // tau = m \ sigma must be nonempty and tau | sigma == m.
    if ((m & s) == s && m != s) out.push_back(m & ~s);
  }
  return SetSystem(SetSystem::FromMasks{}, system.universe_, std::move(out));
}

namespace {

class OrdMemo {
 public:
  explicit OrdMemo(const SetSystem& system) : members_(system.member_masks()) {
    universe_bits_ = system.universe().size();
  }

  // Ord of M^sigma.
  std::uint64_t rank(SetSystem::Mask sigma) {
    if (auto it = memo_.find(sigma); it != memo_.end()) return it->second;
    bool any = false;
    SetSystem::Mask extensions = 0;
    for (auto m : members_) {
      if ((m & sigma) == sigma && m != sigma) {
        any = true;
        extensions |= m & ~sigma;
      }
    }
    std::uint64_t r = 0;
    if (any) {
      std::uint64_t best = 0;
      // Elements outside every strict superset derive to the empty system.
      for (std::size_t a = 0; a < universe_bits_; ++a) {
        if (extensions >> a & 1) best = std::max(best, rank(sigma | SetSystem::Mask{1} << a));
      }
      r = best + 1;
    }
    memo_.emplace(sigma, r);
    return r;
  }

 private:
  const std::vector<SetSystem::Mask>& members_;
  std::size_t universe_bits_ = 0;
  std::unordered_map<SetSystem::Mask, std::uint64_t> memo_;
};

}  // namespace

Ordinal ord(const SetSystem& system) {
  OrdMemo memo(system);
  return Ordinal::finite(memo.rank(0));
}

}  // namespace coarse
