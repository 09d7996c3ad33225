import cmath
import json
from fractions import Fraction

import pytest

import vilenkin as vk


def test_transform_of_point_mass():
    assert vk.transform([4, 0, 0, 0], 2) == [1, 1, 1, 1]
    assert vk.transform_exact([4, 0, 0, 0], 2) == [1, 1, 1, 1]
    assert vk.transform_exact([1, 1, 1, 1], 2, inverse=True) == [4, 0, 0, 0]


def test_transform_round_trip_against_matrix():
    p, k = 3, 2
    values = [complex(i % 5, (i * i) % 3) for i in range(p**k)]
    coeffs = vk.transform(values, p)
    w = cmath.exp(2j * cmath.pi / p)
    table = vk.vc_matrix_exponents(p, k)
    for n in range(p**k):
        direct = sum(values[c] * w ** (-table[n][c]) for c in range(p**k)) / p**k
        assert abs(coeffs[n] - direct) < 1e-12
    back = vk.transform(coeffs, p, inverse=True)
    assert max(abs(a - b) for a, b in zip(back, values)) < 1e-12


def test_exact_transform_with_root_of_unity():
    # omega on the first of three cells: every coefficient is omega / 3.
    out = vk.transform_exact([(0, 1, 0), 0, 0], 3)
    assert out == [(0, Fraction(1, 3), 0)] * 3


def test_index_sets():
    assert vk.enumerate_index("v", 3, 2, 26) == [1, 3, 4, 9, 10, 12]
    assert len(vk.enumerate_index("vtilde", 3, 2, 26)) == 18
    assert vk.enumerate_index("aset", 3, 1, 8, digits=[1, 2]) == [1, 6]
    assert vk.count_index("vtilde", 3, 2, 3) == 18
    assert vk.aset_multiplicity_check(3, 1, 1, 8)


def test_sharpness():
    v = vk.witness_v(3, 2)
    assert v["level_set_measure"] == Fraction(5, 9)
    assert v["passed"]
    assert vk.witness_vtilde(3, 2)["level_set_measure"] == Fraction(8, 9)
    assert vk.witness_v(2, 1)["threshold"] == Fraction(1, 2)


def test_khinchin():
    value, err, exact = vk.norm_ratio("v", 2, 1, {1: 1, 2: 1}, 4.0)
    assert exact == 2
    assert abs(value - 2**0.25) <= err + 1e-12
    r = vk.estimate_constant("v", 2, 1, 4.0, 16, 50, 3)
    assert r["best_exact_power"] <= 3
    assert r["dimension"] == 5


def test_errors():
    with pytest.raises(vk.DomainError):
        vk.enumerate_index("v", 1, 2, 10)
    with pytest.raises(ValueError):
        vk.transform([1, 2, 3], 2)
    with pytest.raises(vk.RankOverflow):
        vk.witness_vtilde(10, 8)


def test_cli_roundtrip():
    code, out, _ = vk.run_cli(["sharpness", "--p", "3", "--d", "2", "--no-timing"])
    assert code == 0
    report = json.loads(out)
    assert report["summary"]["all_passed"]
    assert vk.run_cli(["verify", "--p", "1"])[0] == 2
