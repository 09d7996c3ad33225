#pragma once

#include <span>
#include <vector>

#include "vilenkin/chaos_index.hpp"
#include "vilenkin/cyclo.hpp"
#include "vilenkin/pary_set.hpp"
#include "vilenkin/rational.hpp"
#include "vilenkin/stepfun.hpp"
#include "vilenkin/vc_system.hpp"

namespace vilenkin {

enum class SystemKind { kV, kVTilde };

/// Certificate that the measure threshold for epsilon-uniqueness cannot be
/// enlarged: P - 1 is a finite series over the chaos indices that equals the
/// nonzero constant `level_value` on a set of measure exactly 1 - threshold.
struct SharpnessReport {
  unsigned p = 2;
  unsigned d = 1;
  SystemKind kind = SystemKind::kV;
  ExactCoeffs witness;           // expansion of P, including the constant term
  CycloValue level_value{2};     // value of P - 1 on the certified set
  Rational level_set_measure;
  Rational threshold;            // the epsilon
  bool support_ok = false;       // nonzero indices of P - 1 lie in the index set
  bool constant_term_ok = false; // coefficient of VC_0 is exactly 1
  bool coefficients_ok = false;  // expected closed-form coefficients
  bool identity_ok = false;      // V: P vanishes exactly off the level set; Vtilde: P == p^d 1_[0,p^-d)

  bool passed() const;
};

/// P = prod_{k<d} (1 - R_k).
SharpnessReport witness_v(unsigned p, unsigned d);

/// Q = prod_{k<d} (1 + R_k + ... + R_k^(p-1)).
SharpnessReport witness_vtilde(unsigned p, unsigned d);

/// E_m = E - m p^-(k~+1) (mod 1) for m = 0..p-1.
std::vector<PArySet> shifted_family(const PArySet& set, unsigned k_tilde);

/// Intersection of all members of the family.
PArySet common_core(std::span<const PArySet> family);

struct Lemma1Check {
  Rational min_measure;  // a
  Rational h_measure;    // measure of the points in >= 2 sets
  Rational bound;        // (p a - 1) / (p - 1)
  bool holds = false;
};

/// Given p sets with measures >= a, the points lying in at least two of them
/// have measure >= (p a - 1) / (p - 1).
Lemma1Check lemma1_bound_check(std::span<const PArySet> sets);

}  // namespace vilenkin
