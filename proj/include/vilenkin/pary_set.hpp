#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vilenkin/pary.hpp"
#include "vilenkin/rational.hpp"

namespace vilenkin {

/// Finite union of p-ary cells of [0,1).
///
/// Stored as a membership mask over the cells of one rank. The stored rank is
/// always the smallest one that can represent the set: sibling groups of p
/// cells that agree are merged, finest rank first. Equal sets therefore have
/// identical representations.
class PArySet {
 public:
  PArySet(unsigned p, unsigned rank, std::vector<std::uint8_t> members);

  static PArySet empty(unsigned p);
  static PArySet full(unsigned p);
  static PArySet cell(const PAryInterval& interval);

  /// Union of [a, b) for p-ary rationals a <= b in [0,1].
  static PArySet half_open(unsigned p, const Rational& a, const Rational& b);

  unsigned base() const noexcept { return p_; }
  unsigned rank() const noexcept { return rank_; }
  const std::vector<std::uint8_t>& members() const noexcept { return members_; }

  /// Membership mask over the cells of a rank >= rank().
  std::vector<std::uint8_t> cells_at(unsigned rank) const;

  bool contains(const Rational& x) const;
  Rational measure() const;

  bool operator==(const PArySet&) const = default;

 private:
  void canonicalize();

  unsigned p_;
  unsigned rank_;
  std::vector<std::uint8_t> members_;
};

PArySet set_union(const PArySet& a, const PArySet& b);
PArySet set_intersection(const PArySet& a, const PArySet& b);
PArySet set_complement(const PArySet& a);

/// E - shift (mod 1): x belongs to the result iff (x + shift) mod 1 is in E.
/// The shift must be a p-ary rational.
PArySet translate_mod1(const PArySet& set, const Rational& shift);

/// Points lying in at least two of the given sets.
PArySet at_least_two(std::span<const PArySet> sets);

}  // namespace vilenkin
