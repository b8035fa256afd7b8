#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace lexsimp {

/// Exact fraction with 64-bit terms, always kept in lowest terms with a
/// positive denominator. Used for gold ranks, fractional ranks and metrics.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_integer() const noexcept { return den_ == 1; }

  /// "n" or "n/d".
  std::string str() const;

  /// Fraction whose double value is exactly `value`: the smallest such
  /// denominator up to 10^4, else the first matching continued-fraction
  /// convergent. Throws ValidationError when nothing matches below 10^12.
  static Rational from_double(double value);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace lexsimp
