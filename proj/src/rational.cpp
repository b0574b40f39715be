#include "odraw/rational.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "odraw/error.hpp"

namespace odraw {
namespace mp = boost::multiprecision;

namespace {

template <typename Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::overflow_error& e) {
    throw Error(Errc::overflow, std::string("rational arithmetic overflow: ") + e.what());
  } catch (const std::range_error& e) {
    throw Error(Errc::overflow, std::string("rational arithmetic overflow: ") + e.what());
  }
}

using UInt = mp::checked_uint256_t;

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den == 0) throw Error(Errc::degenerate_input, "rational with zero denominator");
  normalize();
}

Rational::Rational(Int num, Int den, bool do_normalize) : num_(std::move(num)), den_(std::move(den)) {
  if (do_normalize) normalize();
}

void Rational::normalize() {
  guarded([&] {
    if (den_ == 0) throw Error(Errc::degenerate_input, "rational with zero denominator");
    if (den_ < 0) {
      den_ = -den_;
      num_ = -num_;
    }
    Int g = mp::gcd(num_ < 0 ? Int(-num_) : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    return 0;
  });
}

Rational operator+(const Rational& a, const Rational& b) {
  return guarded([&] {
    using Int = Rational::Int;
    Int g = mp::gcd(a.den_, b.den_);
    Int bd = b.den_ / g;
    return Rational(a.num_ * bd + b.num_ * (a.den_ / g), a.den_ * bd, true);
  });
}

Rational Rational::operator-() const { return Rational(Int(-num_), den_, false); }

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return guarded([&] {
    using Int = Rational::Int;
    auto absval = [](const Int& v) { return v < 0 ? Int(-v) : v; };
    Int g1 = mp::gcd(absval(a.num_), b.den_);
    Int g2 = mp::gcd(absval(b.num_), a.den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return Rational((a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1), true);
  });
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw Error(Errc::degenerate_input, "division by zero");
  return a * Rational(b.den_, b.num_, true);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return guarded([&] {
    const Rational::Int lhs = a.num_ * b.den_;
    const Rational::Int rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  });
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::string Rational::str() const { return num_.str() + "/" + den_.str(); }

double Rational::to_double() const {
  return static_cast<double>(mp::cpp_bin_float_50(num_) / mp::cpp_bin_float_50(den_));
}

std::string Rational::decimal() const {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6) << to_double();
  return out.str();
}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  auto parse_int = [&](const std::string& s) {
    if (s.empty()) throw Error(Errc::parse, "empty number in '" + text + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw Error(Errc::parse, "malformed number '" + text + "'");
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw Error(Errc::parse, "malformed number '" + text + "'");
    }
    return guarded([&] { return Int(s[0] == '+' ? s.substr(1) : s); });
  };
  if (slash == std::string::npos) return Rational(parse_int(text), Int(1), false);
  Int den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(Errc::parse, "zero denominator in '" + text + "'");
  return Rational(parse_int(text.substr(0, slash)), den, true);
}

void Rational::encode(std::span<std::int64_t, kWords> out) const {
  guarded([&] {
    UInt mag = static_cast<UInt>(num_ < 0 ? Int(-num_) : num_);
    UInt den = static_cast<UInt>(den_);
    if (mp::msb(den) >= 255) throw Error(Errc::overflow, "denominator too wide to serialize");
    if (num_ < 0) mp::bit_set(den, 255);
    std::vector<std::uint64_t> limbs;
    auto put = [&](const UInt& v, std::size_t offset) {
      limbs.clear();
      mp::export_bits(v, std::back_inserter(limbs), 64, false);
      for (std::size_t i = 0; i < 4; ++i) {
        out[offset + i] = i < limbs.size() ? static_cast<std::int64_t>(limbs[i]) : 0;
      }
    };
    put(mag, 0);
    put(den, 4);
    return 0;
  });
}

Rational Rational::decode(std::span<const std::int64_t, kWords> in) {
  return guarded([&] {
    auto get = [&](std::size_t offset) {
      std::uint64_t limbs[4];
      for (std::size_t i = 0; i < 4; ++i) limbs[i] = static_cast<std::uint64_t>(in[offset + i]);
      UInt v;
      mp::import_bits(v, limbs, limbs + 4, 64, false);
      return v;
    };
    UInt mag = get(0);
    UInt den = get(4);
    const bool negative = mp::bit_test(den, 255);
    if (negative) mp::bit_unset(den, 255);
    if (den == 0) throw Error(Errc::serialization, "serialized rational has zero denominator");
    Int num = static_cast<Int>(mag);
    return Rational(negative ? Int(-num) : num, static_cast<Int>(den), false);
  });
}

}  // namespace odraw
