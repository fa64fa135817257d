#include "coarse/ordinal.hpp"

#include <cctype>

#include "coarse/errors.hpp"

namespace coarse {

Ordinal Ordinal::finite(std::uint64_t k) { return omega_power(0, k); }

Ordinal Ordinal::omega_power(std::uint32_t exponent, std::uint64_t coefficient) {
  Ordinal o;
  if (coefficient > 0) o.terms_[exponent] = coefficient;
  return o;
}

Ordinal Ordinal::infinity() {
  Ordinal o;
  o.infinite_ = true;
  return o;
}

Ordinal Ordinal::from_terms(const std::map<std::uint32_t, std::uint64_t>& terms) {
  Ordinal o;
  for (auto [e, c] : terms) {
    if (c > 0) o.terms_[e] = c;
  }
  return o;
}

bool Ordinal::is_finite_natural() const noexcept {
  return !infinite_ && (terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0));
}

Ordinal Ordinal::operator+(const Ordinal& rhs) const {
  if (infinite_ || rhs.infinite_) return infinity();
  if (rhs.terms_.empty()) return *this;
  Ordinal out = *this;
  const auto lead = rhs.terms_.begin()->first;
  // Drop every term of the left operand below the leading exponent of rhs.
  for (auto it = out.terms_.begin(); it != out.terms_.end();) {
    it = it->first < lead ? out.terms_.erase(it) : std::next(it);
  }
  for (auto [e, c] : rhs.terms_) out.terms_[e] += c;
  return out;
}

std::string Ordinal::to_string() const {
  if (infinite_) return "inf";
  if (terms_.empty()) return "0";
  std::string s;
  for (auto [e, c] : terms_) {
    if (!s.empty()) s += "+";
    if (e == 0) {
      s += std::to_string(c);
      continue;
    }
    if (c != 1) s += std::to_string(c);
    s += "w";
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first <=> ib->first;
    if (ia->second != ib->second) return ia->second <=> ib->second;
  }
  return (ia != a.terms_.end()) <=> (ib != b.terms_.end());
}

std::strong_ordering ordinal_compare(const Ordinal& a, const Ordinal& b) { return a <=> b; }

namespace {

class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view text) : text_(text) {}

  Ordinal parse() {
    skip_space();
    if (text_.substr(pos_) == "inf") return Ordinal::infinity();
    Ordinal acc = term();
    skip_space();
    while (pos_ < text_.size()) {
      expect('+');
      acc = acc + term();
      skip_space();
    }
    return acc;
  }

 private:
  Ordinal term() {
    skip_space();
    std::uint64_t coefficient = 1;
    bool has_number = false;
    if (peek_digit()) {
      coefficient = number();
      has_number = true;
      skip_space();
      if (accept('*')) {
        skip_space();
        if (!accept('w')) fail("expected 'w' after '*'");
        return omega_tail(coefficient);
      }
    }
    if (accept('w')) return omega_tail(coefficient);
    if (!has_number) fail("expected a natural number or 'w'");
    return Ordinal::finite(coefficient);
  }

  Ordinal omega_tail(std::uint64_t coefficient) {
    skip_space();
    std::uint64_t exponent = 1;
    if (accept('^')) {
      skip_space();
      if (!peek_digit()) fail("expected exponent");
      exponent = number();
      if (exponent > 0xffffffffULL) fail("exponent too large");
    }
    return Ordinal::omega_power(static_cast<std::uint32_t>(exponent), coefficient);
  }

  std::uint64_t number() {
    std::uint64_t v = 0;
    while (peek_digit()) {
      auto d = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (UINT64_MAX - d) / 10) fail("number overflows 64 bits");
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  bool peek_digit() const {
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }
  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal parse_ordinal(std::string_view text) { return OrdinalParser(text).parse(); }

}  // namespace coarse
