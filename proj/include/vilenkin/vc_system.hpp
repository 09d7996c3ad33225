#pragma once

// Generalized Rademacher functions R_k(x) = omega^(x_k) and the
// Vilenkin-Chrestenson functions VC_n = prod_k R_k^(n_k) in Paley order.

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "vilenkin/cyclo.hpp"
#include "vilenkin/pary.hpp"
#include "vilenkin/stepfun.hpp"

namespace vilenkin {

StepFn rademacher(unsigned p, unsigned k);

/// VC_n at rank digit_length(n) (rank 0 for n = 0, where VC_0 == 1).
StepFn vc_function(unsigned p, Index n);

/// Exponent of VC_n on the rank-k cell m: sum_j n_j * x_j(m) mod p, where
/// x_j(m) is the j-th point digit of m p^-k (digit k-1-j of the integer m).
unsigned vc_exponent(Index n, Index m, unsigned p, unsigned rank);

/// Table of VC_n on rank-k cells, stored as exponents of omega. Row index n is
/// the function, column index m the cell.
class VCMatrix {
 public:
  VCMatrix(unsigned p, unsigned rank);

  unsigned base() const noexcept { return p_; }
  unsigned rank() const noexcept { return rank_; }
  Index size() const noexcept { return size_; }
  unsigned exponent(Index n, Index m) const { return exponents_[n * size_ + m]; }
  CycloValue value(Index n, Index m) const { return CycloValue::root(p_, exponent(n, m)); }

 private:
  unsigned p_;
  unsigned rank_;
  Index size_;
  std::vector<std::uint16_t> exponents_;
};

VCMatrix vc_matrix(unsigned p, unsigned rank);

/// Exact check of VC * conj(VC)^T == p^k I, entry by entry.
bool verify_inverse_identity(unsigned p, unsigned rank);

/// Power-iteration estimate of the spectral norm of the rank-k VC matrix.
double matrix_op_norm(unsigned p, unsigned rank, unsigned iterations);

enum class Direction {
  kForward,  // cell values -> VC coefficients
  kInverse,  // VC coefficients -> cell values
};

// Fast transform convention. Write n = sum n_j p^j and let m' be the digit
// reversal of the cell index m. Then VC_n on cell m is omega^<n, m'> with
// the plain digit inner product, i.e. the VC matrix is a k-fold tensor
// power of the p-point DFT matrix up to a digit-reversal of the columns.
// Each of the k stages applies the p-point DFT along one digit axis (stride
// p^j for stage j), in place; a single digit-reversal permutation on the
// cell side converts between m' and m. Forward uses omega^-1 as the kernel
// and scales by p^-k.

std::vector<std::complex<double>> fast_vc_transform(std::span<const std::complex<double>> values, unsigned p,
                                                    Direction direction);

std::vector<CycloValue> fast_vc_transform(std::span<const CycloValue> values, Direction direction);

/// Finitely supported coefficient vector n -> c_n.
template <class Scalar>
struct CoeffVector {
  unsigned p = 2;
  std::map<Index, Scalar> coeffs;

  /// Largest index with a stored coefficient, or 0 when empty.
  Index max_index() const { return coeffs.empty() ? 0 : coeffs.rbegin()->first; }
};

using ExactCoeffs = CoeffVector<CycloValue>;
using FloatCoeffs = CoeffVector<std::complex<double>>;

/// sum_n c_n VC_n as a step function of rank digit_length(max index).
StepFn synthesize(const ExactCoeffs& c);

/// Cell values of sum_n c_n VC_n at the given rank (which must cover every index).
std::vector<std::complex<double>> synthesize(const FloatCoeffs& c, unsigned rank);

/// VC coefficients of f; exact zeros are dropped.
ExactCoeffs analyze(const StepFn& f);

}  // namespace vilenkin
