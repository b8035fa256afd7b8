#include "lexsimp/rational.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "lexsimp/error.hpp"

namespace lexsimp {
namespace {

using Wide = __int128;

Rational make_checked(Wide num, Wide den) {
  if (den == 0) throw std::domain_error("rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide a = num < 0 ? -num : num;
  Wide b = den;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  constexpr Wide kMax = std::numeric_limits<std::int64_t>::max();
  if (num > kMax || num < -kMax || den > kMax) throw std::overflow_error("rational: 64-bit overflow");
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw ValidationError("rational: non-finite value");
  constexpr double kIntLimit = 9.0e15;
  if (std::fabs(value) >= kIntLimit) throw ValidationError("rational: value out of range");
  if (value == std::floor(value)) return Rational(static_cast<std::int64_t>(value));

  const bool negative = value < 0;
  const double target = std::fabs(value);

  // Exhaustive over small denominators, so the answer is the smallest one.
  constexpr std::int64_t kScanDen = 10000;
  for (std::int64_t q = 2; q <= kScanDen; ++q) {
    const double p = std::round(target * static_cast<double>(q));
    if (p / static_cast<double>(q) == target) {
      const auto pi = static_cast<std::int64_t>(p);
      return Rational(negative ? -pi : pi, q);
    }
  }

  // Continued-fraction convergents for anything finer.
  constexpr std::int64_t kMaxDen = 1'000'000'000'000;
  double x = target;
  Wide p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(x);
    const Wide ai = static_cast<Wide>(a);
    const Wide p2 = ai * p1 + p0;
    const Wide q2 = ai * q1 + q0;
    if (q2 > kMaxDen) break;
    if (static_cast<double>(p2) / static_cast<double>(q2) == target) {
      return make_checked(negative ? -p2 : p2, q2);
    }
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = x - a;
    if (frac == 0.0) break;
    x = 1.0 / frac;
  }
  throw ValidationError("rational: no exact fraction for value");
}

Rational operator+(const Rational& a, const Rational& b) {
  return make_checked(Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return make_checked(Wide(a.num_) * b.den_ - Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return make_checked(Wide(a.num_) * b.num_, Wide(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return make_checked(Wide(a.num_) * b.den_, Wide(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
  const Wide lhs = Wide(a.num_) * b.den_;
  const Wide rhs = Wide(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace lexsimp
