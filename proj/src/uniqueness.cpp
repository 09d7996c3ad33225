#include "vilenkin/uniqueness.hpp"

#include <algorithm>
#include <string>

#include "vilenkin/errors.hpp"

namespace vilenkin {
namespace {

// Cells of rank d whose first d point digits include a zero.
PArySet some_digit_zero(unsigned p, unsigned d) {
  PArySet out = PArySet::empty(p);
  for (unsigned k = 0; k < d; ++k) {
    std::vector<std::uint8_t> mask(cell_count(p, k + 1));
    for (Index c = 0; c < mask.size(); ++c) mask[c] = (c % p) == 0;
    out = set_union(out, PArySet(p, k + 1, std::move(mask)));
  }
  return out;
}

void certify_level_set(SharpnessReport& report, const StepFn& polynomial) {
  const unsigned p = report.p;
  report.level_value = CycloValue::constant(p, Rational(-1));
  const StepFn shifted = polynomial - CycloValue::constant(p, Rational(1));
  report.level_set_measure = level_set(shifted, report.level_value).measure();

  report.witness = analyze(polynomial);
  const auto zero_it = report.witness.coeffs.find(0);
  report.constant_term_ok = zero_it != report.witness.coeffs.end() &&
                            equal_values(zero_it->second, CycloValue::constant(p, Rational(1)));
  const IndexSpec spec = report.kind == SystemKind::kV ? IndexSpec::v(p, report.d) : IndexSpec::vtilde(p, report.d);
  report.support_ok = true;
  for (const auto& [n, c] : report.witness.coeffs) {
    if (n != 0 && !contains(spec, n)) report.support_ok = false;
  }
}

void check_order(unsigned p, unsigned d) {
  check_base(p);
  if (d < 1) throw DomainError("chaos order d must be at least 1");
  cell_count(p, d);
}

}  // namespace

bool SharpnessReport::passed() const {
  return support_ok && constant_term_ok && coefficients_ok && identity_ok && !level_value.is_zero() &&
         level_set_measure + threshold == Rational(1);
}

SharpnessReport witness_v(unsigned p, unsigned d) {
  check_order(p, d);
  SharpnessReport report;
  report.p = p;
  report.d = d;
  report.kind = SystemKind::kV;
  report.threshold = Rational(p - 1, p).pow(d);

  StepFn polynomial = StepFn::constant(p, Rational(1));
  const CycloValue one = CycloValue::constant(p, Rational(1));
  for (unsigned k = 0; k < d; ++k) polynomial = polynomial * (-rademacher(p, k) + one);
  certify_level_set(report, polynomial);

  // Expanding the product: coefficient (-1)^s on every n with s unit digits.
  report.coefficients_ok = true;
  const Index cells = cell_count(p, d);
  std::size_t expected_terms = 0;
  for (Index n = 0; n < cells; ++n) {
    if (n != 0 && !contains(IndexSpec::v(p, d), n)) continue;
    ++expected_terms;
    const unsigned s = nonzero_digit_count(n, p);
    const CycloValue expected = CycloValue::constant(p, Rational(s % 2 == 0 ? 1 : -1));
    auto it = report.witness.coeffs.find(n);
    if (it == report.witness.coeffs.end() || !equal_values(it->second, expected)) report.coefficients_ok = false;
  }
  if (report.witness.coeffs.size() != expected_terms) report.coefficients_ok = false;

  report.identity_ok = zero_set(polynomial) == some_digit_zero(p, d);
  return report;
}

SharpnessReport witness_vtilde(unsigned p, unsigned d) {
  check_order(p, d);
  SharpnessReport report;
  report.p = p;
  report.d = d;
  report.kind = SystemKind::kVTilde;
  report.threshold = Rational(1, static_cast<std::int64_t>(checked_pow(p, d)));

  StepFn polynomial = StepFn::constant(p, Rational(1));
  for (unsigned k = 0; k < d; ++k) {
    StepFn geometric = StepFn::constant(p, Rational(1));
    const StepFn r = rademacher(p, k);
    for (unsigned j = 1; j < p; ++j) geometric = geometric + r.pow(j);
    polynomial = polynomial * geometric;
  }
  certify_level_set(report, polynomial);

  const Index cells = cell_count(p, d);
  report.coefficients_ok = report.witness.coeffs.size() == cells;
  for (const auto& [n, c] : report.witness.coeffs) {
    if (n >= cells || !equal_values(c, CycloValue::constant(p, Rational(1)))) report.coefficients_ok = false;
  }

  const PArySet first_cell = PArySet::cell(PAryInterval(p, d, 0));
  const StepFn expected = StepFn::indicator(first_cell) * Rational(static_cast<std::int64_t>(cells));
  report.identity_ok = equal_functions(polynomial, expected);
  return report;
}

std::vector<PArySet> shifted_family(const PArySet& set, unsigned k_tilde) {
  const unsigned p = set.base();
  const auto denominator = static_cast<std::int64_t>(cell_count(p, k_tilde + 1));
  std::vector<PArySet> family;
  family.reserve(p);
  for (unsigned m = 0; m < p; ++m) family.push_back(translate_mod1(set, Rational(m, denominator)));
  return family;
}

PArySet common_core(std::span<const PArySet> family) {
  if (family.empty()) throw DomainError("common core of an empty family");
  PArySet core = family.front();
  for (const auto& s : family.subspan(1)) core = set_intersection(core, s);
  return core;
}

Lemma1Check lemma1_bound_check(std::span<const PArySet> sets) {
  if (sets.empty()) throw DomainError("overlap bound check needs p sets");
  const unsigned p = sets.front().base();
  if (sets.size() < p) {
    throw DomainError("overlap bound check needs p = " + std::to_string(p) + " sets, got " + std::to_string(sets.size()));
  }
  Lemma1Check out;
  out.min_measure = sets.front().measure();
  for (const auto& s : sets) out.min_measure = std::min(out.min_measure, s.measure());
  out.h_measure = at_least_two(sets).measure();
  const Rational pp(static_cast<std::int64_t>(p));
  out.bound = (pp * out.min_measure - Rational(1)) / (pp - Rational(1));
  out.holds = out.h_measure >= out.bound;
  return out;
}

}  // namespace vilenkin
