#pragma once

// Lacunarity estimates for chaos systems: ratios ||sum c_n VC_n||_q / ||c||_2,
// exact fourth moments, and the structural facts used to bound them
// (symmetric decomposition of Re R_k^j and independence of digit functions).

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vilenkin/chaos_index.hpp"
#include "vilenkin/cyclo.hpp"
#include "vilenkin/rational.hpp"
#include "vilenkin/stepfun.hpp"
#include "vilenkin/vc_system.hpp"

namespace vilenkin {

/// Complex number with rational real and imaginary parts.
struct GaussRational {
  Rational re;
  Rational im;

  static GaussRational from_complex(std::complex<double> z);

  GaussRational conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }

  friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussRational& operator+=(const GaussRational& b) {
    re += b.re;
    im += b.im;
    return *this;
  }
};

using GaussCoeffs = CoeffVector<GaussRational>;

/// Exact coefficients from doubles (each double is converted losslessly).
GaussCoeffs to_exact(const FloatCoeffs& c);

/// ||c||_2^2.
double l2_norm_squared(const FloatCoeffs& c);
Rational l2_norm_squared(const GaussCoeffs& c);

struct NormRatio {
  double value = 0.0;
  double err = 0.0;
  std::optional<Rational> exact_power;  // ratio^q when q is an even integer
};

/// ||sum c_n VC_n||_q / ||c||_2 in floating point. The support of c must lie
/// inside the index set and c must be nonzero. For even integer q the exact
/// q-th power of the ratio is attached as well.
NormRatio norm_ratio(const IndexSpec& spec, const FloatCoeffs& c, double q);

/// Integral of |sum c_n VC_n|^4, as the squared l2 norm of the digitwise
/// convolution (c * c)_w = sum_{a (+) b = w} c_a c_b.
Rational fourth_moment_exact(const GaussCoeffs& c);

/// Integral of |sum c_n VC_n|^q for even q, via the (q/2)-fold digitwise
/// self-convolution of c.
Rational even_moment_exact(const GaussCoeffs& c, unsigned even_q);

/// Same quantity for coefficients in Q(omega); real but possibly irrational.
CycloValue fourth_moment_exact(const ExactCoeffs& c);

/// Convenience for real rational coefficients: the result is rational.
Rational fourth_moment_exact_rational(const ExactCoeffs& c);

enum class Optimizer { kRandom, kAscent };

struct KhinchinReport {
  IndexSpec spec;
  double q = 4.0;
  Index N = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  Optimizer optimizer = Optimizer::kAscent;
  std::size_t dimension = 0;  // number of members in [1, N]
  double best_ratio = 1.0;
  double best_ratio_err = 0.0;
  FloatCoeffs best_coefficients;
  std::optional<Rational> best_exact_power;  // ratio^q of best_coefficients for even q
  std::uint64_t ascent_runs = 0;
  std::string method;
};

/// Lower bound for the q-lacunarity constant of the index set truncated to
/// [1, N]: best ratio over `trials` seeded random unit vectors, optionally
/// refined by coordinate ascent on the sphere from every record-setting sample.
KhinchinReport estimate_constant(const IndexSpec& spec, double q, Index N, std::uint64_t trials, std::uint64_t seed,
                                 Optimizer optimizer);

/// ||sum c_n VC_n||_1 / ||c||_2 with error bound.
NormRatio l1_lower_ratio(const IndexSpec& spec, const FloatCoeffs& c);

/// Minimum of l1_lower_ratio over seeded random unit vectors.
double estimate_l1_constant(const IndexSpec& spec, Index N, std::uint64_t trials, std::uint64_t seed);

/// Random coefficient vector on the given support: independent standard
/// complex Gaussians, normalized to the unit sphere. Reproducible from
/// (seed, trial) on every platform.
FloatCoeffs random_unit_coefficients(unsigned p, std::span<const Index> support, std::uint64_t seed,
                                     std::uint64_t trial);

/// The p-1 pieces cos(2 pi m j / p) (1[x_k = m] - 1[x_k = 0]), m = 1..p-1,
/// whose sum is Re R_k^j. Each has a symmetric law.
std::vector<StepFn> symmetric_decomposition(unsigned p, unsigned k, unsigned j);

/// Exhaustive check that f_k(x) = tables[k][x_k], k = 0..n, are independent:
/// the joint measure of every combination of attainable values factors into
/// the product of the marginal measures.
bool independence_check(unsigned p, std::span<const std::vector<CycloValue>> tables);

}  // namespace vilenkin
