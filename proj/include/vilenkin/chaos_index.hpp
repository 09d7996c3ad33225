#pragma once

// Index sets of the p-ary Rademacher chaos.
//
//   V(p,d)       n = p^k1 + ... + p^ks, 1 <= s <= d (every nonzero digit is 1)
//   Vtilde(p,d)  n has between 1 and d nonzero digits, any values in 1:p-1
//   Wtilde(p,s)  n has exactly s nonzero digits
//   A(p,s; j_0..j_L)  n < p^(L+1) with exactly s nonzero digits, digit k
//                     being either 0 or j_k

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vilenkin/pary.hpp"

namespace vilenkin {

enum class IndexKind { kV, kVTilde, kWTilde, kASet };

struct IndexSpec {
  IndexKind kind = IndexKind::kV;
  unsigned p = 2;
  unsigned order = 1;                   // d for V/Vtilde, s for Wtilde/ASet
  std::vector<unsigned> digit_values;   // j_0..j_L, ASet only

  static IndexSpec v(unsigned p, unsigned d);
  static IndexSpec vtilde(unsigned p, unsigned d);
  static IndexSpec wtilde(unsigned p, unsigned s);
  static IndexSpec aset(unsigned p, unsigned s, std::vector<unsigned> digit_values);

  /// Throws DomainError if the invariants of the kind are violated.
  void validate() const;

  std::string describe() const;
};

/// Membership of a natural number; n = 0 is rejected.
bool contains(const IndexSpec& spec, Index n);

/// Calls visit(n) for every member n <= max_n in increasing order, stopping
/// early if visit returns false. Members are generated digit by digit from
/// the most significant position, so the cost is proportional to the output.
void for_each_member(const IndexSpec& spec, Index max_n, const std::function<bool(Index)>& visit);

/// Members in [1, max_n], ascending.
std::vector<Index> enumerate(const IndexSpec& spec, Index max_n);

/// Upper bound accepted by enumerate.
inline constexpr Index kEnumerationCap = 1'000'000'000'000ULL;

/// Number of members below p^digits, from the closed forms.
std::uint64_t count(const IndexSpec& spec, unsigned digits);

/// Exhaustive check that every n in Wtilde(p,s) with n <= max_n lies in
/// exactly (p-1)^(L+1-s) of the (p-1)^(L+1) sets A(p,s; j_0..j_L), and that
/// Vtilde(p,d) is the disjoint union of Wtilde(p,1..d) on [1, max_n] for
/// every d <= L+1. Requires p^L <= max_n < p^(L+1).
bool aset_multiplicity_check(unsigned p, unsigned s, unsigned L, Index max_n);

}  // namespace vilenkin
