#pragma once

// p-ary positional arithmetic on [0,1) and on the naturals.

#include <cstdint>
#include <utility>
#include <vector>

#include "vilenkin/rational.hpp"

namespace vilenkin {

using Index = std::uint64_t;

/// Default bound on p^rank for any rank-indexed object.
inline constexpr Index kDefaultCellLimit = 10'000'000;

/// Process-wide cap on the number of cells p^rank. Exceeding it raises
/// RankOverflow instead of truncating.
Index cell_limit() noexcept;
void set_cell_limit(Index max_cells);

/// Throws DomainError unless p >= 2.
void check_base(unsigned p);

/// p^k, throwing RankOverflow when the result exceeds cell_limit().
Index cell_count(unsigned p, unsigned rank);

/// p^k without the cell cap; throws RankOverflow on 64-bit overflow.
Index checked_pow(unsigned p, unsigned k);

struct DigitString {
  unsigned base = 2;
  std::vector<unsigned> digits;

  bool operator==(const DigitString&) const = default;
};

/// Half-open cell [m p^-k, (m+1) p^-k).
class PAryInterval {
 public:
  PAryInterval(unsigned p, unsigned rank, Index position);

  unsigned base() const noexcept { return p_; }
  unsigned rank() const noexcept { return rank_; }
  Index position() const noexcept { return position_; }

 private:
  unsigned p_;
  unsigned rank_;
  Index position_;
};

/// First `count` digits x_0, x_1, ... of x = sum x_j p^(-j-1). At p-ary
/// rationals the terminating expansion is used.
DigitString digits_of_point(const Rational& x, unsigned p, unsigned count);

/// Least-significant-first digits of n; n = 0 gives the empty string.
DigitString digits_of_integer(Index n, unsigned p);

std::pair<Rational, Rational> interval_endpoints(const PAryInterval& cell);

/// Number of base-p digits of n, i.e. H(n)+1; zero for n = 0.
unsigned digit_length(Index n, unsigned p);

/// Number of nonzero base-p digits of n.
unsigned nonzero_digit_count(Index n, unsigned p);

/// Digitwise sum mod p of the base-p expansions of a and b.
Index digitwise_add(Index a, Index b, unsigned p);

/// Digitwise negation mod p: digitwise_add(n, digitwise_negate(n)) == 0.
Index digitwise_negate(Index n, unsigned p);

/// Reverses the lowest `width` base-p digits of m.
Index reverse_digits(Index m, unsigned p, unsigned width);

/// Smallest k with x * p^k an integer. Throws DomainError when the
/// denominator of x is not a divisor of a power of p.
unsigned pary_rank_of(const Rational& x, unsigned p);

/// Index of the rank-`rank` cell containing x in [0,1).
Index cell_of_point(const Rational& x, unsigned p, unsigned rank);

}  // namespace vilenkin
