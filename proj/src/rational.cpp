#include "vilenkin/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

#include "vilenkin/errors.hpp"

namespace vilenkin {
namespace {

using u128 = unsigned __int128;

u128 gcd128(u128 a, u128 b) {
  if (a == 0) return b;
  if (b == 0) return a;
  int shift = 0;
  while (((a | b) & 1) == 0) {
    a >>= 1;
    b >>= 1;
    ++shift;
  }
  while ((a & 1) == 0) a >>= 1;
  do {
    while ((b & 1) == 0) b >>= 1;
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

BigInt big_from_u128(u128 v) {
  BigInt hi(static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64)));
  BigInt lo(static_cast<unsigned long>(static_cast<std::uint64_t>(v)));
  hi <<= 64;
  return hi + lo;
}

static_assert(sizeof(long) == 8, "inline rationals assume a 64-bit long");

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  rep_ = demote(std::move(q));
}

Rational::Rational(const mpq_class& q) : rep_(demote(q)) {}

std::variant<Rational::Small, mpq_class> Rational::demote(mpq_class q) {
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (n.fits_slong_p() && d.fits_slong_p()) {
    long nv = n.get_si();
    if (nv != std::numeric_limits<long>::min()) return Small{nv, d.get_si()};
  }
  return q;
}

Rational Rational::from_wide(__int128 num, __int128 den) {
  bool negative = (num < 0) != (den < 0);
  u128 un = num < 0 ? static_cast<u128>(-(num + 1)) + 1 : static_cast<u128>(num);
  u128 ud = den < 0 ? static_cast<u128>(-(den + 1)) + 1 : static_cast<u128>(den);
  u128 g = gcd128(un, ud);
  if (g > 1) {
    un /= g;
    ud /= g;
  }
  Rational r;
  if (un <= kSmallMax && ud <= kSmallMax) {
    auto n = static_cast<std::int64_t>(un);
    r.rep_ = Small{negative ? -n : n, static_cast<std::int64_t>(ud)};
    return r;
  }
  BigInt bn = big_from_u128(un);
  if (negative) bn = -bn;
  r.rep_ = mpq_class(bn, big_from_u128(ud));
  return r;
}

Rational Rational::from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("cannot convert a non-finite double to a rational");
  if (x == std::trunc(x) && std::fabs(x) < 9.2e18) return Rational(static_cast<std::int64_t>(x));
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), x);
  return Rational(q);
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw DomainError("empty rational literal");

  auto parse_int = [&](const std::string& digits) {
    BigInt v;
    std::string body = digits;
    if (!body.empty() && body[0] == '+') body = body.substr(1);
    if (body.empty() || body == "-" || v.set_str(body, 10) != 0) {
      throw DomainError("malformed rational literal '" + s + "'");
    }
    return v;
  };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigInt den = parse_int(s.substr(slash + 1));
    if (den == 0) throw DomainError("rational with zero denominator");
    return Rational(parse_int(s.substr(0, slash)), den);
  }

  std::string mantissa = s;
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    mantissa = s.substr(0, e);
    try {
      std::size_t used = 0;
      exponent = std::stol(s.substr(e + 1), &used);
      if (used != s.size() - e - 1) throw DomainError("malformed exponent");
    } catch (const std::logic_error&) {
      throw DomainError("malformed rational literal '" + s + "'");
    }
  }
  if (auto dot = mantissa.find('.'); dot != std::string::npos) {
    std::string frac = mantissa.substr(dot + 1);
    mantissa = mantissa.substr(0, dot) + frac;
    exponent -= static_cast<long>(frac.size());
    if (mantissa == "-" || mantissa == "+" || mantissa.empty()) mantissa += "0";
  }
  BigInt num = parse_int(mantissa);
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  return exponent >= 0 ? Rational(num * scale, BigInt(1)) : Rational(num, scale);
}

BigInt Rational::numerator() const {
  if (auto* s = std::get_if<Small>(&rep_)) return BigInt(s->num);
  return std::get<mpq_class>(rep_).get_num();
}

BigInt Rational::denominator() const {
  if (auto* s = std::get_if<Small>(&rep_)) return BigInt(s->den);
  return std::get<mpq_class>(rep_).get_den();
}

mpq_class Rational::to_mpq() const {
  if (auto* s = std::get_if<Small>(&rep_)) return mpq_class(BigInt(s->num), BigInt(s->den));
  return std::get<mpq_class>(rep_);
}

int Rational::sign() const noexcept {
  if (auto* s = std::get_if<Small>(&rep_)) return (s->num > 0) - (s->num < 0);
  return sgn(std::get<mpq_class>(rep_));
}

bool Rational::is_integer() const {
  if (auto* s = std::get_if<Small>(&rep_)) return s->den == 1;
  return std::get<mpq_class>(rep_).get_den() == 1;
}

double Rational::to_double() const {
  if (auto* s = std::get_if<Small>(&rep_)) {
    if (s->den == 1) return static_cast<double>(s->num);
  }
  return to_mpq().get_d();
}

std::string Rational::to_string() const {
  if (auto* s = std::get_if<Small>(&rep_)) {
    return std::to_string(s->num) + "/" + std::to_string(s->den);
  }
  const auto& q = std::get<mpq_class>(rep_);
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  if (auto* s = std::get_if<Small>(&rep_)) return from_wide(s->den, s->num);
  mpq_class q = 1 / std::get<mpq_class>(rep_);
  return Rational(q);
}

Rational Rational::pow(unsigned exponent) const {
  Rational result(1);
  Rational base = *this;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent != 0) base *= base;
  }
  return result;
}

Rational Rational::operator-() const {
  Rational r;
  if (auto* s = std::get_if<Small>(&rep_)) {
    r.rep_ = Small{-s->num, s->den};
  } else {
    r.rep_ = demote(-std::get<mpq_class>(rep_));
  }
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) return *this = rhs;
  if (small() && rhs.small()) {
    const auto& a = std::get<Small>(rep_);
    const auto& b = std::get<Small>(rhs.rep_);
    if (a.den == b.den) return *this = from_wide(static_cast<__int128>(a.num) + b.num, a.den);
    return *this = from_wide(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                             static_cast<__int128>(a.den) * b.den);
  }
  rep_ = demote(to_mpq() + rhs.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  if (is_zero()) return *this;
  if (rhs.is_zero()) return *this = Rational();
  if (small() && rhs.small()) {
    const auto& a = std::get<Small>(rep_);
    const auto& b = std::get<Small>(rhs.rep_);
    return *this = from_wide(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
  }
  rep_ = demote(to_mpq() * rhs.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) { return *this *= rhs.inverse(); }

bool operator==(const Rational& a, const Rational& b) {
  if (a.small() && b.small()) {
    const auto& x = std::get<Rational::Small>(a.rep_);
    const auto& y = std::get<Rational::Small>(b.rep_);
    return x.num == y.num && x.den == y.den;
  }
  if (a.small() != b.small()) return false;
  return std::get<mpq_class>(a.rep_) == std::get<mpq_class>(b.rep_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.small() && b.small()) {
    const auto& x = std::get<Rational::Small>(a.rep_);
    const auto& y = std::get<Rational::Small>(b.rep_);
    return static_cast<__int128>(x.num) * y.den <=> static_cast<__int128>(y.num) * x.den;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace vilenkin
