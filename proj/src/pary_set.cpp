#include "vilenkin/pary_set.hpp"

#include <algorithm>
#include <string>

#include "vilenkin/errors.hpp"

namespace vilenkin {
namespace {

void require_same_base(const PArySet& a, const PArySet& b) {
  if (a.base() != b.base()) {
    throw BaseMismatch("sets over bases " + std::to_string(a.base()) + " and " + std::to_string(b.base()));
  }
}

template <class Combine>
PArySet combine(const PArySet& a, const PArySet& b, Combine op) {
  require_same_base(a, b);
  unsigned rank = std::max(a.rank(), b.rank());
  auto ma = a.cells_at(rank);
  auto mb = b.cells_at(rank);
  for (std::size_t i = 0; i < ma.size(); ++i) ma[i] = op(ma[i], mb[i]) ? 1 : 0;
  return PArySet(a.base(), rank, std::move(ma));
}

}  // namespace

PArySet::PArySet(unsigned p, unsigned rank, std::vector<std::uint8_t> members)
    : p_(p), rank_(rank), members_(std::move(members)) {
  if (members_.size() != cell_count(p, rank)) {
    throw DomainError("membership mask of length " + std::to_string(members_.size()) + " does not match rank " +
                      std::to_string(rank));
  }
  for (auto& m : members_) m = m ? 1 : 0;
  canonicalize();
}

PArySet PArySet::empty(unsigned p) { return PArySet(p, 0, {0}); }

PArySet PArySet::full(unsigned p) { return PArySet(p, 0, {1}); }

PArySet PArySet::cell(const PAryInterval& interval) {
  std::vector<std::uint8_t> mask(cell_count(interval.base(), interval.rank()), 0);
  mask[interval.position()] = 1;
  return PArySet(interval.base(), interval.rank(), std::move(mask));
}

PArySet PArySet::half_open(unsigned p, const Rational& a, const Rational& b) {
  if (a.sign() < 0 || b > Rational(1) || b < a) {
    throw DomainError("need 0 <= a <= b <= 1 for [a,b), got [" + a.to_string() + ", " + b.to_string() + ")");
  }
  unsigned rank = std::max(pary_rank_of(a, p), pary_rank_of(b, p));
  Index cells = cell_count(p, rank);
  Rational scale(static_cast<std::int64_t>(cells));
  Index lo = (a * scale).numerator().get_ui();
  Index hi = (b * scale).numerator().get_ui();
  std::vector<std::uint8_t> mask(cells, 0);
  std::fill(mask.begin() + static_cast<std::ptrdiff_t>(lo), mask.begin() + static_cast<std::ptrdiff_t>(hi), 1);
  return PArySet(p, rank, std::move(mask));
}

void PArySet::canonicalize() {
  while (rank_ > 0) {
    const std::size_t groups = members_.size() / p_;
    for (std::size_t g = 0; g < groups; ++g) {
      for (unsigned j = 1; j < p_; ++j) {
        if (members_[g * p_ + j] != members_[g * p_]) return;
      }
    }
    std::vector<std::uint8_t> coarse(groups);
    for (std::size_t g = 0; g < groups; ++g) coarse[g] = members_[g * p_];
    members_ = std::move(coarse);
    --rank_;
  }
}

std::vector<std::uint8_t> PArySet::cells_at(unsigned rank) const {
  if (rank < rank_) throw DomainError("cannot view a rank-" + std::to_string(rank_) + " set at rank " + std::to_string(rank));
  const Index factor = cell_count(p_, rank - rank_);
  cell_count(p_, rank);
  std::vector<std::uint8_t> out(members_.size() * factor);
  for (std::size_t i = 0; i < members_.size(); ++i) {
    std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(i * factor), factor, members_[i]);
  }
  return out;
}

bool PArySet::contains(const Rational& x) const { return members_[cell_of_point(x, p_, rank_)] != 0; }

Rational PArySet::measure() const {
  auto count = static_cast<std::int64_t>(std::count(members_.begin(), members_.end(), 1));
  return Rational(count, static_cast<std::int64_t>(members_.size()));
}

PArySet set_union(const PArySet& a, const PArySet& b) {
  return combine(a, b, [](std::uint8_t x, std::uint8_t y) { return x || y; });
}

PArySet set_intersection(const PArySet& a, const PArySet& b) {
  return combine(a, b, [](std::uint8_t x, std::uint8_t y) { return x && y; });
}

PArySet set_complement(const PArySet& a) {
  auto mask = a.members();
  for (auto& m : mask) m = !m;
  return PArySet(a.base(), a.rank(), std::move(mask));
}

PArySet translate_mod1(const PArySet& set, const Rational& shift) {
  const unsigned p = set.base();
  const unsigned rank = std::max(set.rank(), pary_rank_of(shift, p));
  const Index cells = cell_count(p, rank);
  // Reduce the shift into [0,1) and express it in cells of the working rank.
  Rational scaled = shift * Rational(static_cast<std::int64_t>(cells));
  BigInt offset = scaled.numerator() % BigInt(static_cast<unsigned long>(cells));
  if (offset < 0) offset += static_cast<unsigned long>(cells);
  const Index s = offset.get_ui();
  auto source = set.cells_at(rank);
  std::vector<std::uint8_t> mask(cells);
  for (Index i = 0; i < cells; ++i) mask[i] = source[(i + s) % cells];
  return PArySet(p, rank, std::move(mask));
}

PArySet at_least_two(std::span<const PArySet> sets) {
  if (sets.empty()) throw DomainError("at_least_two needs at least one set");
  unsigned rank = 0;
  for (const auto& s : sets) {
    require_same_base(sets.front(), s);
    rank = std::max(rank, s.rank());
  }
  const unsigned p = sets.front().base();
  std::vector<unsigned> hits(cell_count(p, rank), 0);
  for (const auto& s : sets) {
    auto mask = s.cells_at(rank);
    for (std::size_t i = 0; i < mask.size(); ++i) hits[i] += mask[i];
  }
  std::vector<std::uint8_t> mask(hits.size());
  for (std::size_t i = 0; i < hits.size(); ++i) mask[i] = hits[i] >= 2;
  return PArySet(p, rank, std::move(mask));
}

}  // namespace vilenkin
