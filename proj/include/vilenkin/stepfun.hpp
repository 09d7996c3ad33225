#pragma once

#include <vector>

#include "vilenkin/cyclo.hpp"
#include "vilenkin/pary.hpp"
#include "vilenkin/pary_set.hpp"
#include "vilenkin/rational.hpp"

namespace vilenkin {

/// Function on [0,1) that is constant on every p-ary cell of a fixed rank.
/// Entry m of values() is the value on [m p^-k, (m+1) p^-k).
class StepFn {
 public:
  StepFn(unsigned p, unsigned rank, std::vector<CycloValue> values);

  static StepFn constant(const CycloValue& value);
  static StepFn constant(unsigned p, const Rational& value);
  /// 1 on the set, 0 elsewhere.
  static StepFn indicator(const PArySet& set);

  unsigned base() const noexcept { return p_; }
  unsigned rank() const noexcept { return rank_; }
  const std::vector<CycloValue>& values() const noexcept { return values_; }
  const CycloValue& value(Index cell) const { return values_[cell]; }
  const CycloValue& value_at(const Rational& x) const;

  /// Same function on a finer grid; each value is repeated p^(new_rank-rank) times.
  StepFn refine(unsigned new_rank) const;

  StepFn conj() const;
  StepFn pow(unsigned exponent) const;
  StepFn operator-() const;

  friend StepFn operator+(const StepFn& f, const StepFn& g);
  friend StepFn operator-(const StepFn& f, const StepFn& g);
  friend StepFn operator*(const StepFn& f, const StepFn& g);
  friend StepFn operator+(const StepFn& f, const CycloValue& c);
  friend StepFn operator-(const StepFn& f, const CycloValue& c);
  friend StepFn operator*(const StepFn& f, const CycloValue& c);
  friend StepFn operator*(const StepFn& f, const Rational& c);

 private:
  unsigned p_;
  unsigned rank_;
  std::vector<CycloValue> values_;
};

/// Cellwise exact equality.
bool equal_functions(const StepFn& f, const StepFn& g);

CycloValue integral(const StepFn& f);

/// Integral of f * conj(g), accumulated cell by cell without temporaries.
CycloValue inner_product(const StepFn& f, const StepFn& g);

/// Exact integral of |f|^q for even q >= 2. The result is real; it is a
/// rational number whenever f has rational VC coefficients.
CycloValue lq_norm_power(const StepFn& f, unsigned even_q);

/// lq_norm_power(f, q) as a rational; throws DomainError if it is irrational.
Rational lq_norm_power_rational(const StepFn& f, unsigned even_q);

struct ApproxReal {
  double value = 0.0;
  double err = 0.0;
};

/// ||f||_q for real q >= 1 evaluated in floating point, with an error bound
/// propagated from the per-cell evaluation bounds.
ApproxReal lq_norm(const StepFn& f, double q);

PArySet level_set(const StepFn& f, const CycloValue& target);
PArySet zero_set(const StepFn& f);

/// Re f = (f + conj f) / 2.
StepFn real_part(const StepFn& f);

/// i Im f = (f - conj f) / 2. Im f itself is generally outside Q(omega)
/// (e.g. sqrt(3)/2 for p = 3); this purely imaginary function carries the
/// same distribution up to the factor i.
StepFn imaginary_part_times_i(const StepFn& f);

/// Law of a step function: distinct values (up to exact equality) with the
/// measure of each level set.
class Distribution {
 public:
  struct Atom {
    CycloValue value;
    Rational measure;
  };

  explicit Distribution(const StepFn& f);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }

  /// Measure of {f = value}; zero if value is not attained.
  Rational measure_of(const CycloValue& value) const;

  /// Invariance of the law under v -> -v. Requires every value to be real or
  /// every value to be purely imaginary.
  bool is_symmetric() const;

 private:
  std::vector<Atom> atoms_;
  std::vector<std::vector<Rational>> keys_;
};

inline Distribution distribution(const StepFn& f) { return Distribution(f); }
inline bool is_symmetric(const Distribution& d) { return d.is_symmetric(); }

}  // namespace vilenkin
