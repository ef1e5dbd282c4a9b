"""Tests for Dirichlet-coefficient convolution and the identity verifiers."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubezeta.congruence import DomainError, chi, is_discriminant
from cubezeta.identities import (
    convolve,
    convolve_many,
    partial_sum,
    standard_series,
    verify_cor24,
    verify_prop21,
    verify_prop25,
    verify_thm12,
)

M_SMALL = 30
coeff_arrays = st.lists(
    st.integers(min_value=-5, max_value=5), min_size=M_SMALL + 1, max_size=M_SMALL + 1
).map(lambda xs: [0] + xs[1:])


def test_standard_series_frozen():
    assert standard_series("zeta", 12) == [0] + [1] * 12
    z2 = standard_series("zeta2s_inverse", 40)
    assert {i: v for i, v in enumerate(z2) if v} == {1: 1, 4: -1, 9: -1, 25: -1, 36: 1}
    zo = standard_series("zeta_odd_2s_inverse", 240)
    assert {i: v for i, v in enumerate(zo) if v} == {
        1: 1, 9: -1, 25: -1, 49: -1, 121: -1, 169: -1, 225: 1,
    }
    tf = standard_series("two_factor", 32)
    assert {i: v for i, v in enumerate(tf) if v} == {1: 2, 4: -2}


def test_standard_series_l_chi_matches_character():
    for d in (5, -4, 12, -23):
        arr = standard_series("L_chi", 30, d=d)
        assert arr == [0] + [chi(d, n) for n in range(1, 31)]


def test_standard_series_rejects_unknown_name():
    with pytest.raises(DomainError):
        standard_series("not_a_series", 10)


@settings(max_examples=100)
@given(f=coeff_arrays, g=coeff_arrays)
def test_convolve_commutative(f, g):
    assert convolve(f, g) == convolve(g, f)


@settings(max_examples=60)
@given(f=coeff_arrays, g=coeff_arrays, h=coeff_arrays)
def test_convolve_associative(f, g, h):
    assert convolve(convolve(f, g), h) == convolve(f, convolve(g, h))


@settings(max_examples=60)
@given(f=coeff_arrays)
def test_convolve_identity_element(f):
    delta = [0] * (M_SMALL + 1)
    delta[1] = 1
    assert convolve(f, delta) == f
    assert convolve_many(f) == f


def test_prop21_and_cor24_report_the_p2_defect_everywhere():
    for d in range(-60, 61):
        if not is_discriminant(d):
            continue
        for report in (verify_prop21(d, 60), verify_cor24(d, 60)):
            assert report.status == "known_p2_discrepancy", (report.identity, d)
            assert report.findings


def test_prop21_first_mismatch_frozen():
    report = verify_prop21(5, 60)
    assert report.first_mismatch == {"n": 4, "lhs": 2, "rhs": 0}
    assert "2-adic" in report.findings[0]
    assert report.params == {"d": 5, "M": 60}


def test_prop21_rejects_non_discriminant():
    with pytest.raises(DomainError):
        verify_prop21(3, 20)
    with pytest.raises(DomainError):
        verify_prop21(0, 20)


def test_prop25_reports_the_odd_square_defect_everywhere():
    for D in range(-99, 100):
        if D % 2 == 0 or not is_discriminant(D):
            continue
        report = verify_prop25(D, 100)
        assert report.status == "known_odd_square_discrepancy", D
        assert report.findings


def test_prop25_first_mismatch_frozen():
    report = verify_prop25(5, 100)
    assert report.first_mismatch == {"n": 9, "lhs": 0, "rhs": 2}


def test_prop25_rejects_even_D():
    with pytest.raises(DomainError):
        verify_prop25(-4, 40)


def test_thm12_reports_the_odd_square_defect():
    for D in (-3, 5, -23, 45):
        report = verify_thm12(D, 24)
        assert report.status == "known_odd_square_discrepancy", D
        assert report.first_mismatch["m"] == 1
        assert report.first_mismatch["n"] == 9
    with pytest.raises(DomainError):
        verify_thm12(-4, 24)


def test_partial_sum_deterministic_and_monotone():
    a = partial_sum(1.5, 1.5, 1.5, 20, 20)
    assert a == partial_sum(1.5, 1.5, 1.5, 20, 20)
    assert a.converged_region
    assert a.warnings == ()
    assert partial_sum(1.5, 1.5, 1.5, 40, 20).value >= a.value
    assert partial_sum(1.5, 1.5, 1.5, 20, 40).value >= a.value


def test_partial_sum_warns_outside_convergence_region():
    result = partial_sum(0.9, 1.5, 1.5, 20, 20)
    assert not result.converged_region
    assert result.warnings
