#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace coarse {

// An ordinal below omega^omega in Cantor normal form, or the marker "inf"
// for an undefined rank. Terms map exponent -> positive coefficient.
class Ordinal {
 public:
  using Terms = std::map<std::uint32_t, std::uint64_t, std::greater<>>;

  Ordinal() = default;
  static Ordinal finite(std::uint64_t k);
  static Ordinal omega_power(std::uint32_t exponent, std::uint64_t coefficient = 1);
  static Ordinal infinity();
  static Ordinal from_terms(const std::map<std::uint32_t, std::uint64_t>& terms);

  bool is_infinite() const noexcept { return infinite_; }
  bool is_zero() const noexcept { return !infinite_ && terms_.empty(); }
  bool is_finite_natural() const noexcept;
  const Terms& terms() const noexcept { return terms_; }

  // Ordinal sum; c*w^e absorbs every lower term on its left.
  Ordinal operator+(const Ordinal& rhs) const;
  Ordinal successor() const { return *this + finite(1); }

  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
  friend bool operator==(const Ordinal& a, const Ordinal& b) { return (a <=> b) == 0; }

 private:
  Terms terms_;
  bool infinite_ = false;
};

std::strong_ordering ordinal_compare(const Ordinal& a, const Ordinal& b);

// Grammar: sum of terms joined by '+', each term one of
//   k | w | a*w | aw | w^e | a*w^e | aw^e      (also "inf")
// Terms are combined with ordinal addition, so "1+w" parses to w.
Ordinal parse_ordinal(std::string_view text);

}  // namespace coarse
