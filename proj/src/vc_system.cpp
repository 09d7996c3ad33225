#include "vilenkin/vc_system.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vilenkin/errors.hpp"

namespace vilenkin {
namespace {

constexpr Index kMaxMatrixEntries = 100'000'000;

std::vector<std::complex<double>> root_table(unsigned p, int sign) {
  std::vector<std::complex<double>> roots(p);
  for (unsigned j = 0; j < p; ++j) {
    auto v = CycloValue::root(p, j).eval();
    roots[j] = {v.re, sign * v.im};
  }
  return roots;
}

// In-place tensor DFT over the digit axes, kernel omega^(sign * a * t).
void tensor_dft(std::vector<std::complex<double>>& y, unsigned p, unsigned rank, int sign) {
  const auto roots = root_table(p, sign);
  std::vector<std::complex<double>> in(p);
  Index stride = 1;
  for (unsigned stage = 0; stage < rank; ++stage) {
    const Index span = stride * p;
    for (Index block = 0; block < y.size(); block += span) {
      for (Index o = 0; o < stride; ++o) {
        const Index base = block + o;
        for (unsigned a = 0; a < p; ++a) in[a] = y[base + a * stride];
        for (unsigned t = 0; t < p; ++t) {
          std::complex<double> acc = in[0];
          unsigned e = 0;
          for (unsigned a = 1; a < p; ++a) {
            e += t;
            if (e >= p) e -= p;
            acc += in[a] * roots[e];
          }
          y[base + t * stride] = acc;
        }
      }
    }
    stride = span;
  }
}

void tensor_dft(std::vector<CycloValue>& y, unsigned p, unsigned rank, int sign) {
  std::vector<CycloValue> in(p, CycloValue(p));
  Index stride = 1;
  for (unsigned stage = 0; stage < rank; ++stage) {
    const Index span = stride * p;
    for (Index block = 0; block < y.size(); block += span) {
      for (Index o = 0; o < stride; ++o) {
        const Index base = block + o;
        for (unsigned a = 0; a < p; ++a) in[a] = y[base + a * stride];
        for (unsigned t = 0; t < p; ++t) {
          CycloValue acc = in[0];
          for (unsigned a = 1; a < p; ++a) {
            acc += in[a].rotated(static_cast<long long>(sign) * a * t);
          }
          y[base + t * stride] = std::move(acc);
        }
      }
    }
    stride = span;
  }
}

unsigned rank_for_length(std::size_t length, unsigned p) {
  check_base(p);
  unsigned rank = 0;
  Index n = 1;
  while (n < length) {
    n *= p;
    ++rank;
  }
  if (n != length || length == 0) {
    throw DomainError("transform length " + std::to_string(length) + " is not a power of " + std::to_string(p));
  }
  cell_count(p, rank);
  return rank;
}

template <class T>
std::vector<T> digit_reverse(const std::vector<T>& in, unsigned p, unsigned rank) {
  std::vector<T> out;
  out.reserve(in.size());
  for (Index i = 0; i < in.size(); ++i) out.push_back(in[reverse_digits(i, p, rank)]);
  return out;
}

}  // namespace

StepFn rademacher(unsigned p, unsigned k) {
  const Index cells = cell_count(p, k + 1);
  std::vector<CycloValue> values;
  values.reserve(cells);
  // On rank k+1 the digit x_k of a cell is the last digit of its index.
  for (Index m = 0; m < cells; ++m) values.push_back(CycloValue::root(p, static_cast<long long>(m % p)));
  return StepFn(p, k + 1, std::move(values));
}

StepFn vc_function(unsigned p, Index n) {
  const DigitString digits = digits_of_integer(n, p);
  cell_count(p, static_cast<unsigned>(digits.digits.size()));
  StepFn f = StepFn::constant(p, Rational(1));
  for (unsigned k = 0; k < digits.digits.size(); ++k) {
    if (digits.digits[k] != 0) f = f * rademacher(p, k).pow(digits.digits[k]);
  }
  return f.refine(static_cast<unsigned>(digits.digits.size()));
}

unsigned vc_exponent(Index n, Index m, unsigned p, unsigned rank) {
  unsigned e = 0;
  for (unsigned j = 0; j < rank; ++j) {
    e += static_cast<unsigned>((n % p) * ((m / checked_pow(p, rank - 1 - j)) % p));
    n /= p;
  }
  if (n != 0) throw DomainError("VC index is not constant on cells of rank " + std::to_string(rank));
  return e % p;
}

VCMatrix::VCMatrix(unsigned p, unsigned rank) : p_(p), rank_(rank), size_(cell_count(p, rank)) {
  if (size_ > kMaxMatrixEntries / size_) {
    throw RankOverflow("VC matrix of size " + std::to_string(size_) + " is too large to tabulate");
  }
  exponents_.resize(size_ * size_);
  // Digits of the cell's left endpoint, most significant point digit first.
  std::vector<unsigned> n_digits(rank);
  std::vector<unsigned> x_digits(rank);
  for (Index n = 0; n < size_; ++n) {
    Index t = n;
    for (unsigned j = 0; j < rank; ++j, t /= p) n_digits[j] = static_cast<unsigned>(t % p);
    for (Index m = 0; m < size_; ++m) {
      Index s = m;
      for (unsigned j = rank; j-- > 0; s /= p) x_digits[j] = static_cast<unsigned>(s % p);
      unsigned e = 0;
      for (unsigned j = 0; j < rank; ++j) e += n_digits[j] * x_digits[j];
      exponents_[n * size_ + m] = static_cast<std::uint16_t>(e % p);
    }
  }
}

VCMatrix vc_matrix(unsigned p, unsigned rank) { return VCMatrix(p, rank); }

bool verify_inverse_identity(unsigned p, unsigned rank) {
  const VCMatrix vc(p, rank);
  const Index size = vc.size();
  const Rational expected_diagonal(static_cast<std::int64_t>(size));
  std::vector<std::int64_t> counts(p);
  for (Index a = 0; a < size; ++a) {
    for (Index b = 0; b < size; ++b) {
      // (VC conj(VC)^T)_{ab} = sum_m omega^(e(a,m) - e(b,m)).
      std::fill(counts.begin(), counts.end(), 0);
      for (Index m = 0; m < size; ++m) {
        unsigned e = vc.exponent(a, m) + p - vc.exponent(b, m);
        ++counts[e >= p ? e - p : e];
      }
      std::vector<Rational> coeffs(counts.begin(), counts.end());
      CycloValue entry(p, std::move(coeffs));
      if (a == b) entry -= CycloValue::constant(p, expected_diagonal);
      if (!entry.is_zero()) return false;
    }
  }
  return true;
}

double matrix_op_norm(unsigned p, unsigned rank, unsigned iterations) {
  const VCMatrix vc(p, rank);
  const Index size = vc.size();
  const auto roots = root_table(p, 1);
  std::vector<std::complex<double>> v(size);
  for (Index i = 0; i < size; ++i) v[i] = {1.0 + 0.5 * std::sin(1.0 + i), 0.25 * std::cos(3.0 * i)};
  std::vector<std::complex<double>> w(size);
  double estimate = 0.0;
  for (unsigned it = 0; it < std::max(iterations, 1U); ++it) {
    double norm_v = 0.0;
    for (const auto& x : v) norm_v += std::norm(x);
    norm_v = std::sqrt(norm_v);
    for (auto& x : v) x /= norm_v;
    // w = A v, then estimate = |A v|, then v = A^H w.
    double norm_w = 0.0;
    for (Index n = 0; n < size; ++n) {
      std::complex<double> acc = 0.0;
      for (Index m = 0; m < size; ++m) acc += roots[vc.exponent(n, m)] * v[m];
      w[n] = acc;
      norm_w += std::norm(acc);
    }
    estimate = std::sqrt(norm_w);
    for (Index m = 0; m < size; ++m) {
      std::complex<double> acc = 0.0;
      for (Index n = 0; n < size; ++n) acc += std::conj(roots[vc.exponent(n, m)]) * w[n];
      v[m] = acc;
    }
  }
  return estimate;
}

std::vector<std::complex<double>> fast_vc_transform(std::span<const std::complex<double>> values, unsigned p,
                                                    Direction direction) {
  const unsigned rank = rank_for_length(values.size(), p);
  std::vector<std::complex<double>> y(values.begin(), values.end());
  if (direction == Direction::kInverse) {
    tensor_dft(y, p, rank, +1);
    return digit_reverse(y, p, rank);
  }
  y = digit_reverse(y, p, rank);
  tensor_dft(y, p, rank, -1);
  const double scale = 1.0 / static_cast<double>(y.size());
  for (auto& x : y) x *= scale;
  return y;
}

std::vector<CycloValue> fast_vc_transform(std::span<const CycloValue> values, Direction direction) {
  if (values.empty()) throw DomainError("transform of an empty sequence");
  const unsigned p = values.front().base();
  const unsigned rank = rank_for_length(values.size(), p);
  std::vector<CycloValue> y(values.begin(), values.end());
  for (const auto& v : y) {
    if (v.base() != p) throw BaseMismatch("transform input mixes bases");
  }
  if (direction == Direction::kInverse) {
    tensor_dft(y, p, rank, +1);
    return digit_reverse(y, p, rank);
  }
  y = digit_reverse(y, p, rank);
  tensor_dft(y, p, rank, -1);
  const Rational scale(1, static_cast<std::int64_t>(y.size()));
  for (auto& x : y) x *= scale;
  return y;
}

StepFn synthesize(const ExactCoeffs& c) {
  check_base(c.p);
  const unsigned rank = digit_length(c.max_index(), c.p);
  std::vector<CycloValue> coeffs(cell_count(c.p, rank), CycloValue(c.p));
  for (const auto& [n, value] : c.coeffs) {
    if (value.base() != c.p) throw BaseMismatch("coefficient base differs from the vector's base");
    coeffs[n] = value;
  }
  return StepFn(c.p, rank, fast_vc_transform(std::span<const CycloValue>(coeffs), Direction::kInverse));
}

std::vector<std::complex<double>> synthesize(const FloatCoeffs& c, unsigned rank) {
  const Index cells = cell_count(c.p, rank);
  if (c.max_index() >= cells) {
    throw DomainError("coefficient index " + std::to_string(c.max_index()) + " needs a rank above " +
                      std::to_string(rank));
  }
  std::vector<std::complex<double>> coeffs(cells);
  for (const auto& [n, value] : c.coeffs) coeffs[n] = value;
  return fast_vc_transform(std::span<const std::complex<double>>(coeffs), c.p, Direction::kInverse);
}

ExactCoeffs analyze(const StepFn& f) {
  auto coeffs = fast_vc_transform(std::span<const CycloValue>(f.values()), Direction::kForward);
  ExactCoeffs out{f.base(), {}};
  for (Index n = 0; n < coeffs.size(); ++n) {
    if (!coeffs[n].is_zero()) out.coeffs.emplace(n, std::move(coeffs[n]));
  }
  return out;
}

}  // namespace vilenkin
