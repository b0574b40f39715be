#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <span>
#include <string>

namespace odraw {

// Exact rational with fixed 256-bit numerator and denominator. Arithmetic
// that would leave that range raises Error(overflow) instead of rounding.
class Rational {
 public:
  using Int = boost::multiprecision::checked_int256_t;

  static constexpr std::size_t kWords = 8;

  Rational() = default;
  Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den);

  const Int& num() const noexcept { return num_; }
  const Int& den() const noexcept { return den_; }

  bool is_integer() const { return den_ == 1; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  // "p/q" with q >= 1, always printed even when q == 1.
  std::string str() const;
  // Decimal with six fractional digits.
  std::string decimal() const;
  double to_double() const;

  // Throws Error(parse) on malformed text; accepts "p/q" or "p".
  static Rational parse(const std::string& text);

  // Fixed-width serialization (kWords words).
  void encode(std::span<std::int64_t, kWords> out) const;
  static Rational decode(std::span<const std::int64_t, kWords> in);

 private:
  Rational(Int num, Int den, bool normalize);
  void normalize();

  Int num_ = 0;
  Int den_ = 1;
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

}  // namespace odraw
