#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace vilenkin {

using BigInt = mpz_class;

/// Exact rational number in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in 63 bits are kept inline and
/// combined with 128-bit intermediates; anything larger falls back to GMP.
/// The two representations are never both valid for the same value: results
/// are demoted to the inline form whenever they fit, so equality can compare
/// representations directly.
class Rational {
 public:
  Rational() noexcept = default;

  template <std::integral T>
  Rational(T n) {  // NOLINT(google-explicit-constructor): integers are rationals
    if constexpr (std::is_signed_v<T>) {
      if (static_cast<std::int64_t>(n) != std::numeric_limits<std::int64_t>::min()) {
        rep_ = Small{static_cast<std::int64_t>(n), 1};
        return;
      }
      rep_ = demote(mpq_class(BigInt(std::to_string(n))));
    } else {
      if (static_cast<std::uint64_t>(n) <= kSmallMax) {
        rep_ = Small{static_cast<std::int64_t>(n), 1};
        return;
      }
      rep_ = demote(mpq_class(BigInt(std::to_string(n))));
    }
  }

  Rational(std::int64_t num, std::int64_t den);
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(const mpq_class& q);

  /// Exact value of a finite double (every finite double is a dyadic rational).
  static Rational from_double(double x);

  /// Accepts "a", "a/b" and decimal literals such as "-0.125" or "3e-2".
  static Rational parse(std::string_view text);

  BigInt numerator() const;
  BigInt denominator() const;
  mpq_class to_mpq() const;

  int sign() const noexcept;
  bool is_zero() const noexcept { return sign() == 0; }
  bool is_integer() const;
  double to_double() const;

  /// Lossless "numerator/denominator", e.g. "5/9", "-1/1".
  std::string to_string() const;

  Rational abs() const;
  Rational inverse() const;
  Rational pow(unsigned exponent) const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  struct Small {
    std::int64_t num = 0;
    std::int64_t den = 1;
  };
  static constexpr std::uint64_t kSmallMax =
      static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());

  static std::variant<Small, mpq_class> demote(mpq_class q);
  static Rational from_wide(__int128 num, __int128 den);

  bool small() const noexcept { return std::holds_alternative<Small>(rep_); }

  std::variant<Small, mpq_class> rep_{Small{}};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace vilenkin
