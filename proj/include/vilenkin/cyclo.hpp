#pragma once

// Exact arithmetic in Q(omega), omega = exp(2 pi i / p).
//
// Values are stored in the group ring Q[x]/(x^p - 1): a coefficient a_j for
// every power omega^j. That representation is not unique (1 + omega + ... +
// omega^(p-1) = 0), so equality goes through reduction modulo the p-th
// cyclotomic polynomial, which is the minimal polynomial of omega.

#include <complex>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "vilenkin/rational.hpp"

namespace vilenkin {

/// Floating approximation together with a bound on its absolute error.
struct ComplexApprox {
  double re = 0.0;
  double im = 0.0;
  double err = 0.0;

  std::complex<double> value() const { return {re, im}; }
  double abs() const { return std::abs(value()); }
};

/// Coefficients of Phi_p, lowest degree first. Computed once per p by exact
/// division of x^p - 1 by Phi_d for every proper divisor d of p.
const std::vector<Rational>& cyclotomic_polynomial(unsigned p);

/// Euler's totient, the degree of Phi_p.
unsigned totient(unsigned p);

class CycloValue {
 public:
  /// The zero value over base p.
  explicit CycloValue(unsigned p);
  CycloValue(unsigned p, std::vector<Rational> coeffs);

  /// omega^j with j reduced mod p.
  static CycloValue root(unsigned p, long long j);
  static CycloValue constant(unsigned p, const Rational& value);

  unsigned base() const noexcept { return static_cast<unsigned>(coeffs_.size()); }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  const Rational& coeff(unsigned j) const { return coeffs_[j]; }

  CycloValue& operator+=(const CycloValue& rhs);
  CycloValue& operator-=(const CycloValue& rhs);
  CycloValue& operator*=(const CycloValue& rhs);
  CycloValue& operator*=(const Rational& scale);

  friend CycloValue operator+(CycloValue a, const CycloValue& b) { return a += b; }
  friend CycloValue operator-(CycloValue a, const CycloValue& b) { return a -= b; }
  friend CycloValue operator*(const CycloValue& a, const CycloValue& b);
  friend CycloValue operator*(CycloValue a, const Rational& s) { return a *= s; }
  friend CycloValue operator*(const Rational& s, CycloValue a) { return a *= s; }
  CycloValue operator-() const;

  /// Complex conjugate: coefficient j moves to index -j mod p.
  CycloValue conj() const;

  /// Multiplication by omega^j, a cyclic shift of the coefficients.
  CycloValue rotated(long long j) const;

  CycloValue pow(unsigned exponent) const;

  /// this += a * b without temporaries.
  void add_product(const CycloValue& a, const CycloValue& b);

  /// Certified test for sum a_j omega^j == 0.
  bool is_zero() const;

  /// Remainder of sum a_j x^j modulo Phi_p: the unique representative of
  /// degree < totient(p). Two values are equal iff their keys are equal.
  std::vector<Rational> canonical() const;

  /// The rational number this value equals, if it is one.
  std::optional<Rational> as_rational() const;

  bool is_real() const;       // value == conj(value)
  bool is_imaginary() const;  // value == -conj(value)

  /// True if at most one coefficient is nonzero.
  bool is_monomial() const;

  ComplexApprox eval() const;

 private:
  void require_same_base(const CycloValue& other) const;

  std::vector<Rational> coeffs_;
};

/// Exact equality as complex numbers (not as coefficient vectors).
bool equal_values(const CycloValue& a, const CycloValue& b);

std::ostream& operator<<(std::ostream& os, const CycloValue& v);

}  // namespace vilenkin
