#include "vilenkin/chaos_index.hpp"

#include <algorithm>
#include <map>

#include "vilenkin/errors.hpp"

namespace vilenkin {
namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw RankOverflow("index count overflows 64 bits");
  return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw RankOverflow("index count overflows 64 bits");
  return out;
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) throw RankOverflow("binomial coefficient overflows 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

unsigned max_nonzero(const IndexSpec& spec) { return spec.order; }

unsigned min_nonzero(const IndexSpec& spec) {
  return (spec.kind == IndexKind::kV || spec.kind == IndexKind::kVTilde) ? 1 : spec.order;
}

// Nonzero digit values allowed at position k, ascending.
std::vector<unsigned> allowed_digits(const IndexSpec& spec, unsigned k) {
  switch (spec.kind) {
    case IndexKind::kV:
      return {1};
    case IndexKind::kVTilde:
    case IndexKind::kWTilde: {
      std::vector<unsigned> all(spec.p - 1);
      for (unsigned j = 1; j < spec.p; ++j) all[j - 1] = j;
      return all;
    }
    case IndexKind::kASet:
      if (k < spec.digit_values.size()) return {spec.digit_values[k]};
      return {};
  }
  return {};
}

struct Generator {
  const IndexSpec& spec;
  Index max_n;
  const std::function<bool(Index)>& visit;
  std::vector<std::vector<unsigned>> digits_at;  // by position
  std::vector<Index> place;                      // p^position

  // Returns false once generation must stop (visitor stop or past max_n).
  bool run(int pos, Index prefix, unsigned used) {
    if (pos < 0) {
      if (used < min_nonzero(spec)) return true;
      if (prefix > max_n) return false;
      return visit(prefix);
    }
    const auto position = static_cast<unsigned>(pos);
    // Not enough positions left to reach the required number of nonzero digits.
    if (used + position + 1 < min_nonzero(spec)) return true;
    if (!run(pos - 1, prefix, used)) return false;
    if (used == max_nonzero(spec)) return true;
    for (unsigned digit : digits_at[position]) {
      const Index next = prefix + digit * place[position];
      if (next > max_n) return false;
      if (!run(pos - 1, next, used + 1)) return false;
    }
    return true;
  }
};

}  // namespace

IndexSpec IndexSpec::v(unsigned p, unsigned d) { return {IndexKind::kV, p, d, {}}; }
IndexSpec IndexSpec::vtilde(unsigned p, unsigned d) { return {IndexKind::kVTilde, p, d, {}}; }
IndexSpec IndexSpec::wtilde(unsigned p, unsigned s) { return {IndexKind::kWTilde, p, s, {}}; }
IndexSpec IndexSpec::aset(unsigned p, unsigned s, std::vector<unsigned> digit_values) {
  return {IndexKind::kASet, p, s, std::move(digit_values)};
}

void IndexSpec::validate() const {
  check_base(p);
  if (order < 1) throw DomainError("chaos order must be at least 1");
  if (kind == IndexKind::kASet) {
    if (digit_values.empty()) throw DomainError("A-set needs a digit value vector");
    for (unsigned j : digit_values) {
      if (j < 1 || j >= p) throw DomainError("A-set digit values must lie in 1:p-1");
    }
  } else if (!digit_values.empty()) {
    throw DomainError("digit values only apply to A-sets");
  }
}

std::string IndexSpec::describe() const {
  std::string out;
  switch (kind) {
    case IndexKind::kV: out = "V"; break;
    case IndexKind::kVTilde: out = "Vtilde"; break;
    case IndexKind::kWTilde: out = "Wtilde"; break;
    case IndexKind::kASet: out = "A"; break;
  }
  out += "(p=" + std::to_string(p) + (kind == IndexKind::kV || kind == IndexKind::kVTilde ? ", d=" : ", s=") +
         std::to_string(order);
  if (kind == IndexKind::kASet) {
    out += ", j=";
    for (std::size_t i = 0; i < digit_values.size(); ++i) out += (i ? "," : "") + std::to_string(digit_values[i]);
  }
  return out + ")";
}

bool contains(const IndexSpec& spec, Index n) {
  spec.validate();
  if (n == 0) throw DomainError("chaos index sets contain natural numbers only; got 0");
  unsigned nonzero = 0;
  unsigned k = 0;
  for (Index t = n; t != 0; t /= spec.p, ++k) {
    const auto digit = static_cast<unsigned>(t % spec.p);
    if (digit == 0) continue;
    ++nonzero;
    if (spec.kind == IndexKind::kV && digit != 1) return false;
    if (spec.kind == IndexKind::kASet && (k >= spec.digit_values.size() || digit != spec.digit_values[k])) {
      return false;
    }
  }
  return nonzero >= min_nonzero(spec) && nonzero <= max_nonzero(spec);
}

void for_each_member(const IndexSpec& spec, Index max_n, const std::function<bool(Index)>& visit) {
  spec.validate();
  if (max_n > kEnumerationCap) {
    throw RankOverflow("enumeration bound " + std::to_string(max_n) + " exceeds the cap " +
                       std::to_string(kEnumerationCap));
  }
  if (max_n == 0) return;
  const unsigned length = digit_length(max_n, spec.p);
  Generator gen{spec, max_n, visit, {}, {}};
  Index place = 1;
  for (unsigned k = 0; k < length; ++k) {
    gen.digits_at.push_back(allowed_digits(spec, k));
    gen.place.push_back(place);
    if (k + 1 < length) place *= spec.p;
  }
  gen.run(static_cast<int>(length) - 1, 0, 0);
}

std::vector<Index> enumerate(const IndexSpec& spec, Index max_n) {
  std::vector<Index> out;
  for_each_member(spec, max_n, [&out](Index n) {
    out.push_back(n);
    return true;
  });
  return out;
}

std::uint64_t count(const IndexSpec& spec, unsigned digits) {
  spec.validate();
  const std::uint64_t q = spec.p - 1;
  switch (spec.kind) {
    case IndexKind::kV: {
      std::uint64_t total = 0;
      for (unsigned s = 1; s <= spec.order; ++s) total = checked_add(total, binomial(digits, s));
      return total;
    }
    case IndexKind::kVTilde: {
      std::uint64_t total = 0;
      for (unsigned s = 1; s <= spec.order && s <= digits; ++s) {
        total = checked_add(total, checked_mul(binomial(digits, s), ipow(q, s)));
      }
      return total;
    }
    case IndexKind::kWTilde:
      if (spec.order > digits) return 0;
      return checked_mul(binomial(digits, spec.order), ipow(q, spec.order));
    case IndexKind::kASet:
      return binomial(std::min<unsigned>(digits, static_cast<unsigned>(spec.digit_values.size())), spec.order);
  }
  return 0;
}

bool aset_multiplicity_check(unsigned p, unsigned s, unsigned L, Index max_n) {
  check_base(p);
  if (s < 1) throw DomainError("s must be at least 1");
  if (max_n < checked_pow(p, L) || max_n >= checked_pow(p, L + 1)) {
    throw DomainError("need p^L <= N < p^(L+1) for the A-set decomposition");
  }
  const unsigned length = L + 1;
  const std::uint64_t vectors = ipow(p - 1, length);
  std::map<Index, std::uint64_t> multiplicity;
  std::vector<unsigned> j(length, 1);
  for (std::uint64_t v = 0; v < vectors; ++v) {
    std::uint64_t t = v;
    for (unsigned k = 0; k < length; ++k, t /= (p - 1)) j[k] = 1 + static_cast<unsigned>(t % (p - 1));
    for_each_member(IndexSpec::aset(p, s, j), max_n, [&multiplicity](Index n) {
      ++multiplicity[n];
      return true;
    });
  }
  const auto members = enumerate(IndexSpec::wtilde(p, s), max_n);
  const std::uint64_t expected = s <= length ? ipow(p - 1, length - s) : 0;
  if (multiplicity.size() != members.size()) return false;
  for (Index n : members) {
    auto it = multiplicity.find(n);
    if (it == multiplicity.end() || it->second != expected) return false;
  }

  // Vtilde(d) is the disjoint union of Wtilde(1..d).
  for (unsigned d = 1; d <= length; ++d) {
    std::vector<Index> merged;
    for (unsigned level = 1; level <= d; ++level) {
      auto part = enumerate(IndexSpec::wtilde(p, level), max_n);
      merged.insert(merged.end(), part.begin(), part.end());
    }
    const std::size_t total = merged.size();
    std::sort(merged.begin(), merged.end());
    if (std::adjacent_find(merged.begin(), merged.end()) != merged.end()) return false;
    if (merged.size() != total || merged != enumerate(IndexSpec::vtilde(p, d), max_n)) return false;
  }
  return true;
}

}  // namespace vilenkin
