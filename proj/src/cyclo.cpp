#include "vilenkin/cyclo.hpp"

#include <cfloat>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "vilenkin/errors.hpp"
#include "vilenkin/pary.hpp"

namespace vilenkin {
namespace {

using Poly = std::vector<Rational>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Exact quotient of num by the monic divisor den; the remainder must vanish.
Poly poly_exact_div(Poly num, const Poly& den) {
  const std::size_t dd = den.size() - 1;
  Poly quot(num.size() - dd);
  for (std::size_t i = num.size(); i-- > dd;) {
    Rational c = num[i];
    quot[i - dd] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  for (std::size_t i = 0; i < dd; ++i) {
    if (!num[i].is_zero()) throw Error("cyclotomic division left a remainder");
  }
  return quot;
}

struct Tables {
  Poly phi;
  std::vector<std::complex<double>> roots;
};

std::mutex g_cache_mutex;
std::map<unsigned, std::shared_ptr<const Tables>> g_cache;

std::shared_ptr<const Tables> build_tables(unsigned p);

std::shared_ptr<const Tables> tables_for(unsigned p) {
  {
    std::lock_guard lock(g_cache_mutex);
    if (auto it = g_cache.find(p); it != g_cache.end()) return it->second;
  }
  auto built = build_tables(p);
  std::lock_guard lock(g_cache_mutex);
  return g_cache.emplace(p, std::move(built)).first->second;
}

std::shared_ptr<const Tables> build_tables(unsigned p) {
  auto t = std::make_shared<Tables>();
  if (p == 1) {
    t->phi = {Rational(-1), Rational(1)};
  } else {
    Poly num(p + 1);
    num[0] = Rational(-1);
    num[p] = Rational(1);
    Poly divisor{Rational(1)};
    for (unsigned d = 1; d < p; ++d) {
      if (p % d == 0) divisor = poly_mul(divisor, tables_for(d)->phi);
    }
    t->phi = poly_exact_div(std::move(num), divisor);
  }
  t->roots.resize(p);
  for (unsigned j = 0; j < p; ++j) {
    if (j == 0) {
      t->roots[j] = {1.0, 0.0};
    } else if (2 * j == p) {
      t->roots[j] = {-1.0, 0.0};
    } else if (4 * j == p) {
      t->roots[j] = {0.0, 1.0};
    } else if (4 * j == 3 * p) {
      t->roots[j] = {0.0, -1.0};
    } else {
      double angle = 2.0 * std::numbers::pi * (static_cast<double>(j) / static_cast<double>(p));
      t->roots[j] = {std::cos(angle), std::sin(angle)};
    }
  }
  return t;
}

unsigned reduce_exponent(long long j, unsigned p) {
  long long r = j % static_cast<long long>(p);
  return static_cast<unsigned>(r < 0 ? r + p : r);
}

}  // namespace

const std::vector<Rational>& cyclotomic_polynomial(unsigned p) {
  if (p < 1) throw DomainError("cyclotomic index must be positive");
  return tables_for(p)->phi;
}

unsigned totient(unsigned p) { return static_cast<unsigned>(cyclotomic_polynomial(p).size() - 1); }

CycloValue::CycloValue(unsigned p) : coeffs_(p) { check_base(p); }

CycloValue::CycloValue(unsigned p, std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  check_base(p);
  if (coeffs_.size() != p) {
    throw DomainError("cyclotomic value over base " + std::to_string(p) + " needs exactly " + std::to_string(p) +
                      " coefficients, got " + std::to_string(coeffs_.size()));
  }
}

CycloValue CycloValue::root(unsigned p, long long j) {
  CycloValue v(p);
  v.coeffs_[reduce_exponent(j, p)] = Rational(1);
  return v;
}

CycloValue CycloValue::constant(unsigned p, const Rational& value) {
  CycloValue v(p);
  v.coeffs_[0] = value;
  return v;
}

void CycloValue::require_same_base(const CycloValue& other) const {
  if (other.base() != base()) {
    throw BaseMismatch("cyclotomic values over bases " + std::to_string(base()) + " and " +
                       std::to_string(other.base()));
  }
}

CycloValue& CycloValue::operator+=(const CycloValue& rhs) {
  require_same_base(rhs);
  for (unsigned j = 0; j < base(); ++j) coeffs_[j] += rhs.coeffs_[j];
  return *this;
}

CycloValue& CycloValue::operator-=(const CycloValue& rhs) {
  require_same_base(rhs);
  for (unsigned j = 0; j < base(); ++j) coeffs_[j] -= rhs.coeffs_[j];
  return *this;
}

CycloValue& CycloValue::operator*=(const CycloValue& rhs) { return *this = *this * rhs; }

CycloValue& CycloValue::operator*=(const Rational& scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

CycloValue operator*(const CycloValue& a, const CycloValue& b) {
  CycloValue out(a.base());
  out.add_product(a, b);
  return out;
}

void CycloValue::add_product(const CycloValue& a, const CycloValue& b) {
  require_same_base(a);
  require_same_base(b);
  const unsigned p = base();
  for (unsigned i = 0; i < p; ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (unsigned j = 0; j < p; ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      unsigned k = i + j;
      if (k >= p) k -= p;
      coeffs_[k] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
}

CycloValue CycloValue::operator-() const {
  CycloValue out(*this);
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

CycloValue CycloValue::conj() const {
  const unsigned p = base();
  CycloValue out(p);
  out.coeffs_[0] = coeffs_[0];
  for (unsigned j = 1; j < p; ++j) out.coeffs_[p - j] = coeffs_[j];
  return out;
}

CycloValue CycloValue::rotated(long long j) const {
  const unsigned p = base();
  const unsigned shift = reduce_exponent(j, p);
  if (shift == 0) return *this;
  CycloValue out(p);
  for (unsigned i = 0; i < p; ++i) {
    unsigned k = i + shift;
    if (k >= p) k -= p;
    out.coeffs_[k] = coeffs_[i];
  }
  return out;
}

CycloValue CycloValue::pow(unsigned exponent) const {
  CycloValue result = constant(base(), Rational(1));
  CycloValue b = *this;
  while (exponent != 0) {
    if (exponent & 1U) result = result * b;
    exponent >>= 1U;
    if (exponent != 0) b = b * b;
  }
  return result;
}

std::vector<Rational> CycloValue::canonical() const {
  const Poly& phi = cyclotomic_polynomial(base());
  const std::size_t deg = phi.size() - 1;
  Poly r = coeffs_;
  for (std::size_t i = r.size(); i-- > deg;) {
    if (r[i].is_zero()) continue;
    Rational c = r[i];
    for (std::size_t j = 0; j <= deg; ++j) {
      if (!phi[j].is_zero()) r[i - deg + j] -= c * phi[j];
    }
  }
  r.resize(deg);
  return r;
}

bool CycloValue::is_zero() const {
  bool all_zero = true;
  for (const auto& c : coeffs_) all_zero = all_zero && c.is_zero();
  if (all_zero) return true;
  for (const auto& c : canonical()) {
    if (!c.is_zero()) return false;
  }
  return true;
}

std::optional<Rational> CycloValue::as_rational() const {
  auto key = canonical();
  for (std::size_t j = 1; j < key.size(); ++j) {
    if (!key[j].is_zero()) return std::nullopt;
  }
  return key.empty() ? Rational() : key[0];
}

bool CycloValue::is_real() const { return (*this - conj()).is_zero(); }

bool CycloValue::is_imaginary() const { return (*this + conj()).is_zero(); }

bool CycloValue::is_monomial() const {
  int nonzero = 0;
  for (const auto& c : coeffs_) nonzero += !c.is_zero();
  return nonzero <= 1;
}

ComplexApprox CycloValue::eval() const {
  const auto tables = tables_for(base());
  // Per term: one rounding converting a_j, at most ~14 ulp in the tabulated
  // root (argument rounding amplified by 2 pi, plus libm), one for the
  // product. The running sum adds p roundings of magnitude at most sum |a_j|.
  double re = 0.0;
  double im = 0.0;
  double magnitude = 0.0;
  for (unsigned j = 0; j < base(); ++j) {
    if (coeffs_[j].is_zero()) continue;
    double a = coeffs_[j].to_double();
    re += a * tables->roots[j].real();
    im += a * tables->roots[j].imag();
    magnitude += std::fabs(a);
  }
  double err = magnitude * (static_cast<double>(base()) + 20.0) * DBL_EPSILON;
  return {re, im, err + DBL_MIN};
}

bool equal_values(const CycloValue& a, const CycloValue& b) { return (a - b).is_zero(); }

std::ostream& operator<<(std::ostream& os, const CycloValue& v) {
  os << "[";
  for (unsigned j = 0; j < v.base(); ++j) os << (j ? ", " : "") << v.coeff(j);
  return os << "]";
}

}  // namespace vilenkin
