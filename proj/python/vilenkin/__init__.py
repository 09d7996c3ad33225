"""Exact Vilenkin-Chrestenson analysis."""

from fractions import Fraction

from . import _core
from ._core import (
    BaseMismatch,
    DomainError,
    Error,
    RankOverflow,
    aset_multiplicity_check,
    cell_limit,
    count_index,
    enumerate_index,
    matrix_op_norm,
    run_cli,
    set_cell_limit,
    transform,
    vc_exponent,
    vc_matrix_exponents,
    verify_inverse_identity,
)

__version__ = "0.3.0"


def _cyclo(coeffs):
    # A value with only the omega^0 coefficient is rational; otherwise keep
    # the coefficient tuple of 1, omega, ..., omega^(p-1).
    values = tuple(Fraction(c) for c in coeffs)
    if all(v == 0 for v in values[1:]):
        return values[0]
    return values


def transform_exact(values, p, inverse=False):
    """Exact transform. Entries are rationals or length-p tuples in powers of omega."""
    packed = [[str(Fraction(c)) for c in v] if isinstance(v, (list, tuple)) else [str(Fraction(v))] for v in values]
    return [_cyclo(c) for c in _core.transform_exact(packed, p, inverse)]


def _sharpness(report):
    return {
        "level_set_measure": Fraction(report["level_set_measure"]),
        "threshold": Fraction(report["threshold"]),
        "level_value": _cyclo(report["level_value"]),
        "coefficients": {n: _cyclo(c) for n, c in report["coefficients"].items()},
        "passed": report["passed"],
    }


def witness_v(p, d):
    return _sharpness(_core.witness_v(p, d))


def witness_vtilde(p, d):
    return _sharpness(_core.witness_vtilde(p, d))


def norm_ratio(set, p, order, coeffs, q):
    value, err, exact = _core.norm_ratio(set, p, order, coeffs, q)
    return value, err, None if exact is None else Fraction(exact)


def estimate_constant(set, p, order, q, N, trials, seed, optimizer="ascent"):
    r = _core.estimate_constant(set, p, order, q, N, trials, seed, optimizer)
    if r["best_exact_power"] is not None:
        r["best_exact_power"] = Fraction(r["best_exact_power"])
    return r
