#include "vilenkin/stepfun.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <map>
#include <string>

#include "vilenkin/errors.hpp"

namespace vilenkin {
namespace {

void require_same_base(unsigned a, unsigned b) {
  if (a != b) throw BaseMismatch("step functions over bases " + std::to_string(a) + " and " + std::to_string(b));
}

template <class Op>
StepFn cellwise(const StepFn& f, const StepFn& g, Op op) {
  require_same_base(f.base(), g.base());
  const unsigned rank = std::max(f.rank(), g.rank());
  const StepFn a = f.refine(rank);
  const StepFn b = g.refine(rank);
  std::vector<CycloValue> out;
  out.reserve(a.values().size());
  for (std::size_t i = 0; i < a.values().size(); ++i) out.push_back(op(a.values()[i], b.values()[i]));
  return StepFn(f.base(), rank, std::move(out));
}

template <class Op>
StepFn map_values(const StepFn& f, Op op) {
  std::vector<CycloValue> out;
  out.reserve(f.values().size());
  for (const auto& v : f.values()) out.push_back(op(v));
  return StepFn(f.base(), f.rank(), std::move(out));
}

Rational cell_measure(const StepFn& f) {
  return Rational(1, static_cast<std::int64_t>(f.values().size()));
}

}  // namespace

StepFn::StepFn(unsigned p, unsigned rank, std::vector<CycloValue> values)
    : p_(p), rank_(rank), values_(std::move(values)) {
  if (values_.size() != cell_count(p, rank)) {
    throw DomainError("step function of rank " + std::to_string(rank) + " needs " +
                      std::to_string(cell_count(p, rank)) + " values, got " + std::to_string(values_.size()));
  }
  for (const auto& v : values_) require_same_base(p, v.base());
}

StepFn StepFn::constant(const CycloValue& value) { return StepFn(value.base(), 0, {value}); }

StepFn StepFn::constant(unsigned p, const Rational& value) { return constant(CycloValue::constant(p, value)); }

StepFn StepFn::indicator(const PArySet& set) {
  const unsigned p = set.base();
  std::vector<CycloValue> values;
  values.reserve(set.members().size());
  for (auto m : set.members()) values.push_back(CycloValue::constant(p, Rational(m ? 1 : 0)));
  return StepFn(p, set.rank(), std::move(values));
}

const CycloValue& StepFn::value_at(const Rational& x) const { return values_[cell_of_point(x, p_, rank_)]; }

StepFn StepFn::refine(unsigned new_rank) const {
  if (new_rank < rank_) {
    throw DomainError("cannot refine rank " + std::to_string(rank_) + " down to " + std::to_string(new_rank));
  }
  if (new_rank == rank_) return *this;
  const Index factor = cell_count(p_, new_rank - rank_);
  cell_count(p_, new_rank);
  std::vector<CycloValue> out;
  out.reserve(values_.size() * factor);
  for (const auto& v : values_) {
    for (Index r = 0; r < factor; ++r) out.push_back(v);
  }
  return StepFn(p_, new_rank, std::move(out));
}

StepFn StepFn::conj() const {
  return map_values(*this, [](const CycloValue& v) { return v.conj(); });
}

StepFn StepFn::pow(unsigned exponent) const {
  return map_values(*this, [exponent](const CycloValue& v) { return v.pow(exponent); });
}

StepFn StepFn::operator-() const {
  return map_values(*this, [](const CycloValue& v) { return -v; });
}

StepFn operator+(const StepFn& f, const StepFn& g) {
  return cellwise(f, g, [](const CycloValue& a, const CycloValue& b) { return a + b; });
}

StepFn operator-(const StepFn& f, const StepFn& g) {
  return cellwise(f, g, [](const CycloValue& a, const CycloValue& b) { return a - b; });
}

StepFn operator*(const StepFn& f, const StepFn& g) {
  return cellwise(f, g, [](const CycloValue& a, const CycloValue& b) { return a * b; });
}

StepFn operator+(const StepFn& f, const CycloValue& c) {
  require_same_base(f.base(), c.base());
  return map_values(f, [&c](const CycloValue& v) { return v + c; });
}

StepFn operator-(const StepFn& f, const CycloValue& c) {
  require_same_base(f.base(), c.base());
  return map_values(f, [&c](const CycloValue& v) { return v - c; });
}

StepFn operator*(const StepFn& f, const CycloValue& c) {
  require_same_base(f.base(), c.base());
  return map_values(f, [&c](const CycloValue& v) { return v * c; });
}

StepFn operator*(const StepFn& f, const Rational& c) {
  return map_values(f, [&c](const CycloValue& v) { return v * c; });
}

bool equal_functions(const StepFn& f, const StepFn& g) {
  require_same_base(f.base(), g.base());
  const unsigned rank = std::max(f.rank(), g.rank());
  const StepFn a = f.refine(rank);
  const StepFn b = g.refine(rank);
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    if (!equal_values(a.values()[i], b.values()[i])) return false;
  }
  return true;
}

CycloValue integral(const StepFn& f) {
  CycloValue sum(f.base());
  for (const auto& v : f.values()) sum += v;
  return sum * cell_measure(f);
}

CycloValue inner_product(const StepFn& f, const StepFn& g) {
  require_same_base(f.base(), g.base());
  const unsigned rank = std::max(f.rank(), g.rank());
  const Index cells = cell_count(f.base(), rank);
  const Index fs = cells / f.values().size();
  const Index gs = cells / g.values().size();
  CycloValue sum(f.base());
  for (Index i = 0; i < cells; ++i) sum.add_product(f.values()[i / fs], g.values()[i / gs].conj());
  return sum * Rational(1, static_cast<std::int64_t>(cells));
}

CycloValue lq_norm_power(const StepFn& f, unsigned even_q) {
  if (even_q < 2 || even_q % 2 != 0) {
    throw DomainError("exact L_q norms need an even q >= 2, got " + std::to_string(even_q));
  }
  CycloValue sum(f.base());
  for (const auto& v : f.values()) sum += (v * v.conj()).pow(even_q / 2);
  return sum * cell_measure(f);
}

Rational lq_norm_power_rational(const StepFn& f, unsigned even_q) {
  auto r = lq_norm_power(f, even_q).as_rational();
  if (!r) throw DomainError("integral of |f|^q is not a rational number");
  return *r;
}

ApproxReal lq_norm(const StepFn& f, double q) {
  if (!(q >= 1.0)) throw DomainError("L_q norms need q >= 1");
  double sum = 0.0;
  double sum_err = 0.0;
  for (const auto& v : f.values()) {
    ComplexApprox a = v.eval();
    double m = a.abs();
    double term = std::pow(m, q);
    sum += term;
    sum_err += std::pow(m + a.err, q) - term + 4.0 * DBL_EPSILON * term;
  }
  const auto cells = static_cast<double>(f.values().size());
  sum_err += cells * DBL_EPSILON * sum;
  double mean = sum / cells;
  double mean_err = sum_err / cells;
  double value = std::pow(mean, 1.0 / q);
  double hi = std::pow(mean + mean_err, 1.0 / q);
  double lo = std::pow(std::max(mean - mean_err, 0.0), 1.0 / q);
  return {value, std::max(hi - value, value - lo) + 2.0 * DBL_EPSILON * value};
}

PArySet level_set(const StepFn& f, const CycloValue& target) {
  require_same_base(f.base(), target.base());
  std::vector<std::uint8_t> mask(f.values().size());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = equal_values(f.values()[i], target);
  return PArySet(f.base(), f.rank(), std::move(mask));
}

PArySet zero_set(const StepFn& f) { return level_set(f, CycloValue(f.base())); }

StepFn real_part(const StepFn& f) {
  const Rational half(1, 2);
  return map_values(f, [&half](const CycloValue& v) { return (v + v.conj()) * half; });
}

StepFn imaginary_part_times_i(const StepFn& f) {
  const Rational half(1, 2);
  return map_values(f, [&half](const CycloValue& v) { return (v - v.conj()) * half; });
}

Distribution::Distribution(const StepFn& f) {
  std::map<std::vector<Rational>, std::size_t> slot;
  std::vector<std::int64_t> counts;
  for (const auto& v : f.values()) {
    auto key = v.canonical();
    auto [it, inserted] = slot.emplace(key, atoms_.size());
    if (inserted) {
      atoms_.push_back({v, Rational()});
      keys_.push_back(std::move(key));
      counts.push_back(0);
    }
    ++counts[it->second];
  }
  const auto cells = static_cast<std::int64_t>(f.values().size());
  for (std::size_t i = 0; i < atoms_.size(); ++i) atoms_[i].measure = Rational(counts[i], cells);
}

Rational Distribution::measure_of(const CycloValue& value) const {
  auto key = value.canonical();
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    if (keys_[i] == key) return atoms_[i].measure;
  }
  return Rational();
}

bool Distribution::is_symmetric() const {
  const bool real = std::all_of(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.value.is_real(); });
  const bool imaginary =
      std::all_of(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.value.is_imaginary(); });
  if (!real && !imaginary) {
    throw DomainError("symmetry is only defined here for real or purely imaginary valued functions");
  }
  for (const auto& atom : atoms_) {
    if (measure_of(-atom.value) != atom.measure) return false;
  }
  return true;
}

}  // namespace vilenkin
