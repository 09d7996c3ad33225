#include "vilenkin/khinchin.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <map>
#include <numbers>

#include "vilenkin/errors.hpp"
#include "vilenkin/rng.hpp"

namespace vilenkin {
namespace {

// Uniform in (0, 1] with 53 random bits.
double unit_open(std::uint64_t word) { return static_cast<double>((word >> 11) + 1) * 0x1.0p-53; }

bool is_even_integer(double q) { return q >= 2.0 && q == std::floor(q) && static_cast<long>(q) % 2 == 0; }

template <class T>
std::map<Index, T> digitwise_convolve(const std::map<Index, T>& a, const std::map<Index, T>& b, unsigned p) {
  std::map<Index, T> out;
  for (const auto& [i, x] : a) {
    for (const auto& [j, y] : b) {
      const Index w = digitwise_add(i, j, p);
      auto it = out.find(w);
      if (it == out.end()) {
        out.emplace(w, x * y);
      } else {
        it->second += x * y;
      }
    }
  }
  return out;
}

std::vector<Index> members_or_throw(const IndexSpec& spec, Index N) {
  auto members = enumerate(spec, N);
  if (members.empty()) throw DomainError("index set " + spec.describe() + " has no members in [1, N]");
  return members;
}

void check_support(const IndexSpec& spec, const FloatCoeffs& c) {
  if (c.p != spec.p) throw BaseMismatch("coefficient base differs from the index set's base");
  bool nonzero = false;
  for (const auto& [n, v] : c.coeffs) {
    if (n == 0 || !contains(spec, n)) {
      throw DomainError("coefficient index " + std::to_string(n) + " is not in " + spec.describe());
    }
    nonzero = nonzero || v != std::complex<double>(0.0, 0.0);
  }
  if (!nonzero) throw DomainError("norm ratio of a zero coefficient vector");
}

// Evaluates ||sum x_i VC_{members[i]}||_q on a fixed grid.
class RatioEvaluator {
 public:
  RatioEvaluator(unsigned p, std::vector<Index> members, double q)
      : p_(p), members_(std::move(members)), q_(q), rank_(digit_length(members_.back(), p)) {
    buffer_.assign(cell_count(p_, rank_), {0.0, 0.0});
  }

  std::size_t dimension() const { return members_.size(); }
  const std::vector<Index>& members() const { return members_; }
  unsigned rank() const { return rank_; }

  double lq_norm(std::span<const std::complex<double>> x) {
    std::fill(buffer_.begin(), buffer_.end(), std::complex<double>(0.0, 0.0));
    for (std::size_t i = 0; i < members_.size(); ++i) buffer_[members_[i]] = x[i];
    auto values = fast_vc_transform(std::span<const std::complex<double>>(buffer_), p_, Direction::kInverse);
    double sum = 0.0;
    if (q_ == 4.0) {
      for (const auto& v : values) {
        double n = std::norm(v);
        sum += n * n;
      }
    } else if (q_ == 2.0) {
      for (const auto& v : values) sum += std::norm(v);
    } else {
      for (const auto& v : values) sum += std::pow(std::abs(v), q_);
    }
    return std::pow(sum / static_cast<double>(values.size()), 1.0 / q_);
  }

  double ratio(std::span<const std::complex<double>> x) {
    double l2 = 0.0;
    for (const auto& v : x) l2 += std::norm(v);
    return lq_norm(x) / std::sqrt(l2);
  }

  // Absolute error bound for ratio(x): each cell value carries at most
  // rank * (p + 16) eps * ||x||_1 from the butterflies, which bounds the L_q
  // error by Minkowski; the mean and the root add a few relative ulps.
  double ratio_error(std::span<const std::complex<double>> x, double value) const {
    double l1 = 0.0;
    double l2 = 0.0;
    for (const auto& v : x) {
      l1 += std::abs(v);
      l2 += std::norm(v);
    }
    const double cells = static_cast<double>(buffer_.size());
    const double cell_err = static_cast<double>(rank_) * (p_ + 16.0) * DBL_EPSILON * l1;
    return cell_err / std::sqrt(l2) + value * (cells / q_ + 8.0) * DBL_EPSILON;
  }

  FloatCoeffs to_coeffs(std::span<const std::complex<double>> x) const {
    FloatCoeffs c{p_, {}};
    for (std::size_t i = 0; i < members_.size(); ++i) c.coeffs.emplace(members_[i], x[i]);
    return c;
  }

 private:
  unsigned p_;
  std::vector<Index> members_;
  double q_;
  unsigned rank_;
  std::vector<std::complex<double>> buffer_;
};

void normalize(std::vector<std::complex<double>>& x) {
  double l2 = 0.0;
  for (const auto& v : x) l2 += std::norm(v);
  const double inv = 1.0 / std::sqrt(l2);
  for (auto& v : x) v *= inv;
}

// Coordinate ascent on the unit sphere over the real and imaginary parts.
// Each full sweep without improvement halves the step; ten such failures end
// the search.
double ascend(RatioEvaluator& eval, std::vector<std::complex<double>>& x, double current) {
  constexpr int kMaxFailures = 10;
  constexpr int kMaxSweeps = 400;
  double step = 0.5;
  int failures = 0;
  std::vector<std::complex<double>> trial;
  for (int sweep = 0; sweep < kMaxSweeps && failures < kMaxFailures; ++sweep) {
    bool improved = false;
    for (std::size_t coord = 0; coord < 2 * x.size(); ++coord) {
      for (double direction : {+1.0, -1.0}) {
        trial = x;
        const std::complex<double> delta =
            coord % 2 == 0 ? std::complex<double>(direction * step, 0.0) : std::complex<double>(0.0, direction * step);
        trial[coord / 2] += delta;
        normalize(trial);
        const double r = eval.ratio(trial);
        if (r > current) {
          current = r;
          x.swap(trial);
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      step *= 0.5;
      ++failures;
    }
  }
  return current;
}

}  // namespace

GaussRational GaussRational::from_complex(std::complex<double> z) {
  return {Rational::from_double(z.real()), Rational::from_double(z.imag())};
}

GaussCoeffs to_exact(const FloatCoeffs& c) {
  GaussCoeffs out{c.p, {}};
  for (const auto& [n, v] : c.coeffs) out.coeffs.emplace(n, GaussRational::from_complex(v));
  return out;
}

double l2_norm_squared(const FloatCoeffs& c) {
  double sum = 0.0;
  for (const auto& [n, v] : c.coeffs) sum += std::norm(v);
  return sum;
}

Rational l2_norm_squared(const GaussCoeffs& c) {
  Rational sum;
  for (const auto& [n, v] : c.coeffs) sum += v.norm();
  return sum;
}

Rational even_moment_exact(const GaussCoeffs& c, unsigned even_q) {
  if (even_q < 2 || even_q % 2 != 0) throw DomainError("exact moments need an even q >= 2");
  check_base(c.p);
  // |f|^q = |f^(q/2)|^2 and f^r = sum_w (c^{*r})_w VC_w; orthonormality gives
  // the squared l2 norm of the r-fold digitwise convolution.
  std::map<Index, GaussRational> power = c.coeffs;
  for (unsigned r = 1; r < even_q / 2; ++r) power = digitwise_convolve(power, c.coeffs, c.p);
  Rational sum;
  for (const auto& [w, g] : power) sum += g.norm();
  return sum;
}

Rational fourth_moment_exact(const GaussCoeffs& c) { return even_moment_exact(c, 4); }

CycloValue fourth_moment_exact(const ExactCoeffs& c) {
  check_base(c.p);
  for (const auto& [n, v] : c.coeffs) {
    if (v.base() != c.p) throw BaseMismatch("coefficient base differs from the vector's base");
  }
  auto square = digitwise_convolve(c.coeffs, c.coeffs, c.p);
  CycloValue sum(c.p);
  for (const auto& [w, g] : square) sum.add_product(g, g.conj());
  return sum;
}

Rational fourth_moment_exact_rational(const ExactCoeffs& c) {
  auto r = fourth_moment_exact(c).as_rational();
  if (!r) throw DomainError("fourth moment is irrational for these coefficients");
  return *r;
}

NormRatio norm_ratio(const IndexSpec& spec, const FloatCoeffs& c, double q) {
  if (!(q >= 1.0)) throw DomainError("norm ratios need q >= 1");
  check_support(spec, c);
  std::vector<Index> support;
  std::vector<std::complex<double>> x;
  for (const auto& [n, v] : c.coeffs) {
    support.push_back(n);
    x.push_back(v);
  }
  RatioEvaluator eval(c.p, support, q);
  NormRatio out;
  out.value = eval.ratio(x);
  out.err = eval.ratio_error(x, out.value);
  if (is_even_integer(q)) {
    const auto exact = to_exact(c);
    const auto q_int = static_cast<unsigned>(q);
    out.exact_power = even_moment_exact(exact, q_int) / l2_norm_squared(exact).pow(q_int / 2);
  }
  return out;
}

FloatCoeffs random_unit_coefficients(unsigned p, std::span<const Index> support, std::uint64_t seed,
                                     std::uint64_t trial) {
  std::vector<std::complex<double>> x(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    // Box-Muller: two uniforms give one standard complex Gaussian.
    const double u1 = unit_open(stream_word(seed, trial, 2 * i));
    const double u2 = unit_open(stream_word(seed, trial, 2 * i + 1));
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    x[i] = {radius * std::cos(angle), radius * std::sin(angle)};
  }
  normalize(x);
  FloatCoeffs c{p, {}};
  for (std::size_t i = 0; i < support.size(); ++i) c.coeffs.emplace(support[i], x[i]);
  return c;
}

KhinchinReport estimate_constant(const IndexSpec& spec, double q, Index N, std::uint64_t trials, std::uint64_t seed,
                                 Optimizer optimizer) {
  if (!(q > 2.0)) throw DomainError("lacunarity constants are estimated for q > 2");
  if (trials < 1) throw DomainError("need at least one trial");
  RatioEvaluator eval(spec.p, members_or_throw(spec, N), q);
  const auto& members = eval.members();

  KhinchinReport report;
  report.spec = spec;
  report.q = q;
  report.N = N;
  report.trials = trials;
  report.seed = seed;
  report.optimizer = optimizer;
  report.dimension = members.size();
  report.method = optimizer == Optimizer::kAscent
                      ? "gaussian-sampling+sphere-coordinate-ascent(step=0.5,decay=0.5,failures=10)"
                      : "gaussian-sampling";

  // A single basis function has ratio 1 for every q.
  std::vector<std::complex<double>> best(members.size());
  best[0] = 1.0;
  double best_ratio = eval.ratio(best);
  double best_sample = 0.0;

  std::vector<std::complex<double>> x(members.size());
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto sample = random_unit_coefficients(spec.p, members, seed, t);
    std::size_t i = 0;
    for (const auto& [n, v] : sample.coeffs) x[i++] = v;
    double r = eval.ratio(x);
    if (r <= best_sample) continue;
    best_sample = r;
    if (optimizer == Optimizer::kAscent) {
      r = ascend(eval, x, r);
      ++report.ascent_runs;
    }
    if (r > best_ratio) {
      best_ratio = r;
      best = x;
    }
  }

  report.best_ratio = best_ratio;
  report.best_ratio_err = eval.ratio_error(best, best_ratio);
  report.best_coefficients = eval.to_coeffs(best);
  if (is_even_integer(q)) {
    const auto exact = to_exact(report.best_coefficients);
    const auto q_int = static_cast<unsigned>(q);
    report.best_exact_power = even_moment_exact(exact, q_int) / l2_norm_squared(exact).pow(q_int / 2);
  }
  return report;
}

NormRatio l1_lower_ratio(const IndexSpec& spec, const FloatCoeffs& c) {
  auto r = norm_ratio(spec, c, 1.0);
  r.exact_power.reset();
  return r;
}

double estimate_l1_constant(const IndexSpec& spec, Index N, std::uint64_t trials, std::uint64_t seed) {
  RatioEvaluator eval(spec.p, members_or_throw(spec, N), 1.0);
  std::vector<std::complex<double>> x(eval.dimension());
  x[0] = 1.0;
  double worst = eval.ratio(x);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto sample = random_unit_coefficients(spec.p, eval.members(), seed, t);
    std::size_t i = 0;
    for (const auto& [n, v] : sample.coeffs) x[i++] = v;
    worst = std::min(worst, eval.ratio(x));
  }
  return worst;
}

std::vector<StepFn> symmetric_decomposition(unsigned p, unsigned k, unsigned j) {
  check_base(p);
  if (j < 1 || j >= p) throw DomainError("power j must lie in 1:p-1");
  const Index cells = cell_count(p, k + 1);
  const Rational half(1, 2);
  std::vector<StepFn> pieces;
  for (unsigned m = 1; m < p; ++m) {
    const long long e = static_cast<long long>(m) * j;
    const CycloValue cosine = (CycloValue::root(p, e) + CycloValue::root(p, -e)) * half;
    std::vector<CycloValue> values;
    values.reserve(cells);
    for (Index c = 0; c < cells; ++c) {
      const Index digit = c % p;  // x_k on rank k+1
      if (digit == m) {
        values.push_back(cosine);
      } else if (digit == 0) {
        values.push_back(-cosine);
      } else {
        values.emplace_back(p);
      }
    }
    pieces.emplace_back(p, k + 1, std::move(values));
  }
  return pieces;
}

bool independence_check(unsigned p, std::span<const std::vector<CycloValue>> tables) {
  check_base(p);
  if (tables.empty()) throw DomainError("independence check needs at least one function");
  const auto rank = static_cast<unsigned>(tables.size());
  const Index cells = cell_count(p, rank);

  // Intern each function's values: ids[k][digit] names the exact value.
  std::vector<std::vector<std::size_t>> ids(rank, std::vector<std::size_t>(p));
  std::vector<std::size_t> distinct(rank);
  std::vector<std::vector<std::int64_t>> marginal(rank);
  for (unsigned k = 0; k < rank; ++k) {
    if (tables[k].size() != p) throw DomainError("each value table needs exactly p entries");
    std::map<std::vector<Rational>, std::size_t> seen;
    for (unsigned d = 0; d < p; ++d) {
      if (tables[k][d].base() != p) throw BaseMismatch("value table base differs from p");
      auto [it, inserted] = seen.emplace(tables[k][d].canonical(), seen.size());
      ids[k][d] = it->second;
    }
    distinct[k] = seen.size();
    marginal[k].assign(distinct[k], 0);
  }

  std::map<std::vector<std::size_t>, std::int64_t> joint;
  std::vector<std::size_t> key(rank);
  for (Index c = 0; c < cells; ++c) {
    Index t = c;
    // Digit x_k of the cell's left endpoint is digit rank-1-k of c.
    for (unsigned pos = 0; pos < rank; ++pos, t /= p) {
      const unsigned k = rank - 1 - pos;
      key[k] = ids[k][t % p];
    }
    ++joint[key];
    for (unsigned k = 0; k < rank; ++k) ++marginal[k][key[k]];
  }

  // Every combination of attainable values, including those of joint measure 0.
  std::vector<std::size_t> combo(rank, 0);
  const auto total = static_cast<std::int64_t>(cells);
  while (true) {
    Rational product(1);
    for (unsigned k = 0; k < rank; ++k) product *= Rational(marginal[k][combo[k]], total);
    auto it = joint.find(combo);
    const Rational joint_measure(it == joint.end() ? 0 : it->second, total);
    if (joint_measure != product) return false;
    unsigned k = 0;
    while (k < rank && ++combo[k] == distinct[k]) combo[k++] = 0;
    if (k == rank) break;
  }
  return true;
}

}  // namespace vilenkin
