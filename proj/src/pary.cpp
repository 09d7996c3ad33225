#include "vilenkin/pary.hpp"

#include <atomic>
#include <string>

#include "vilenkin/errors.hpp"

namespace vilenkin {
namespace {

std::atomic<Index> g_cell_limit{kDefaultCellLimit};

}  // namespace

Index cell_limit() noexcept { return g_cell_limit.load(std::memory_order_relaxed); }

void set_cell_limit(Index max_cells) {
  if (max_cells == 0) throw DomainError("cell limit must be positive");
  g_cell_limit.store(max_cells, std::memory_order_relaxed);
}

void check_base(unsigned p) {
  if (p < 2) throw DomainError("base p must be at least 2, got " + std::to_string(p));
}

Index checked_pow(unsigned p, unsigned k) {
  Index result = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (__builtin_mul_overflow(result, static_cast<Index>(p), &result)) {
      throw RankOverflow("p^k overflows 64 bits (p=" + std::to_string(p) + ", k=" + std::to_string(k) + ")");
    }
  }
  return result;
}

Index cell_count(unsigned p, unsigned rank) {
  check_base(p);
  Index limit = cell_limit();
  Index result = 1;
  for (unsigned i = 0; i < rank; ++i) {
    if (__builtin_mul_overflow(result, static_cast<Index>(p), &result) || result > limit) {
      throw RankOverflow("rank " + std::to_string(rank) + " in base " + std::to_string(p) +
                         " exceeds the cell limit of " + std::to_string(limit));
    }
  }
  return result;
}

PAryInterval::PAryInterval(unsigned p, unsigned rank, Index position) : p_(p), rank_(rank), position_(position) {
  check_base(p);
  if (position >= checked_pow(p, rank)) {
    throw DomainError("interval position " + std::to_string(position) + " out of range for rank " +
                      std::to_string(rank));
  }
}

DigitString digits_of_point(const Rational& x, unsigned p, unsigned count) {
  check_base(p);
  if (x.sign() < 0 || x >= Rational(1)) throw DomainError("point must lie in [0,1), got " + x.to_string());
  DigitString out{p, {}};
  out.digits.reserve(count);
  // Exact long division of the numerator by the denominator in base p. The
  // remainder stays in [0, den) so the expansion never produces a trailing
  // run of p-1 digits.
  BigInt num = x.numerator();
  const BigInt den = x.denominator();
  for (unsigned j = 0; j < count; ++j) {
    num *= p;
    BigInt q = num / den;
    num -= q * den;
    out.digits.push_back(static_cast<unsigned>(q.get_ui()));
  }
  return out;
}

DigitString digits_of_integer(Index n, unsigned p) {
  check_base(p);
  DigitString out{p, {}};
  while (n != 0) {
    out.digits.push_back(static_cast<unsigned>(n % p));
    n /= p;
  }
  return out;
}

std::pair<Rational, Rational> interval_endpoints(const PAryInterval& cell) {
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), cell.base(), cell.rank());
  BigInt m(static_cast<unsigned long>(cell.position()));
  return {Rational(m, scale), Rational(m + 1, scale)};
}

unsigned digit_length(Index n, unsigned p) {
  check_base(p);
  unsigned len = 0;
  for (; n != 0; n /= p) ++len;
  return len;
}

unsigned nonzero_digit_count(Index n, unsigned p) {
  check_base(p);
  unsigned count = 0;
  for (; n != 0; n /= p) count += (n % p) != 0;
  return count;
}

Index digitwise_add(Index a, Index b, unsigned p) {
  check_base(p);
  Index result = 0;
  Index place = 1;
  while (a != 0 || b != 0) {
    result += ((a % p + b % p) % p) * place;
    a /= p;
    b /= p;
    if (a != 0 || b != 0) place *= p;
  }
  return result;
}

Index digitwise_negate(Index n, unsigned p) {
  check_base(p);
  Index result = 0;
  Index place = 1;
  while (n != 0) {
    result += ((p - n % p) % p) * place;
    n /= p;
    if (n != 0) place *= p;
  }
  return result;
}

Index reverse_digits(Index m, unsigned p, unsigned width) {
  Index result = 0;
  for (unsigned i = 0; i < width; ++i) {
    result = result * p + m % p;
    m /= p;
  }
  return result;
}

Index cell_of_point(const Rational& x, unsigned p, unsigned rank) {
  if (x.sign() < 0 || x >= Rational(1)) throw DomainError("point must lie in [0,1), got " + x.to_string());
  BigInt scaled = x.numerator();
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), p, rank);
  scaled *= scale;
  scaled /= x.denominator();
  return scaled.get_ui();
}

unsigned pary_rank_of(const Rational& x, unsigned p) {
  check_base(p);
  BigInt den = x.denominator();
  unsigned k = 0;
  BigInt scale(1);
  while (scale % den != 0) {
    scale *= p;
    ++k;
    if (k > 4096) throw DomainError(x.to_string() + " is not a p-ary rational for p=" + std::to_string(p));
  }
  return k;
}

}  // namespace vilenkin
