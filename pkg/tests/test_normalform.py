import cmath
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from perimap.maps import DegreeCapExceeded
from perimap.normalform import (NormalFormMap, collapse, dynatomic_poly, exact_period_count,
                                fossil_distance, fossil_set, inverse_branches, iterate_nf,
                                julia_sample, mobius_count, nf_conjugacy, nf_numerator_poly,
                                normal_form_map, periodic_points, to_normal_form, _nf_pieces)

ORACLE = {2: 2, 3: 6, 4: 12, 5: 30, 6: 54, 7: 126, 8: 240, 9: 504}

unit = st.floats(-2, 2).filter(lambda v: abs(v) > 0.05)


def test_mobius_count_oracle():
    assert {n: mobius_count(n) for n in ORACLE} == ORACLE


@pytest.mark.parametrize("n", range(2, 7))
def test_exact_counts(n):
    assert exact_period_count(2, 3, n) == ORACLE[n]


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_numeric_counts(n):
    ps = periodic_points(NormalFormMap(2, 3), n)
    assert ps.count == ORACLE[n]
    assert max(ps.residuals) < 1e-8
    for z in ps.points:
        assert abs(iterate_nf(NormalFormMap(2, 3), z, n) - z) < 1e-8 * (1 + abs(z)) * 10


def test_count_six_metadata():
    ps = periodic_points(NormalFormMap(2, 3), 6)
    assert ps.metadata == {"predicted": 54, "published": 48, "disputed": True}
    assert periodic_points(NormalFormMap(2, 3), 5).metadata["disputed"] is False


@pytest.mark.parametrize("n", range(2, 7))
def test_integrable_has_no_periodic_points(n):
    assert periodic_points(NormalFormMap(Fraction(2), Fraction(1, 2)), n).count == 0
    assert exact_period_count(2, Fraction(1, 2), n) == 0


def test_root_of_unity_flagged():
    with pytest.raises(ValueError):
        periodic_points(NormalFormMap(-1, -1), 2)


def test_numerator_degrees():
    P1 = nf_numerator_poly(NormalFormMap(2, 3), 1)
    assert P1.degree() == 2
    for n in range(1, 6):
        assert nf_numerator_poly(NormalFormMap(2, 3), n).degree() == 2**n
    with pytest.raises(DegreeCapExceeded):
        nf_numerator_poly(NormalFormMap(2, 3), 10)


def test_numeric_numerator_matches_exact():
    ex = nf_numerator_poly(NormalFormMap(2, 3), 3)
    num = nf_numerator_poly(NormalFormMap(2 + 0j, 3 + 0j), 3)
    exc = [float(ex[k]) for k in range(ex.degree() + 1)]
    assert np.allclose(num, exc)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_integrable_cancellation(n):
    lam = Fraction(3, 2)
    N = nf_numerator_poly(NormalFormMap(lam, 1 / lam), n)
    # Z^(n) - z = (lam^-n - 1) z after cancelling the common factor
    import flint
    z = flint.fmpq_poly([0, 1])
    target = (flint.fmpq(2**n, 3**n) - 1) * z
    g = N.gcd(target)
    assert g.degree() == 1 and (N // target).degree() == N.degree() - 1
    assert N % target == 0


@given(unit, unit, unit)
def test_c_zero_is_integrable(a, b, h):
    assume(abs(1 - h) > 0.05 and abs(1 - a * b) > 0.05)
    try:
        lam, lp = to_normal_form(a, b, 0, h)
    except ZeroDivisionError:
        return
    assert abs(lam * lp - 1) < 1e-10


def test_a_zero_c_zero():
    q2, q, k = _nf_pieces(0, 0.7, 0, 0.3)
    assert abs(q2 - (1 - 0.3) ** 2) < 1e-15
    lam, lp = to_normal_form(0, 0.7, 0, 0.3)
    assert cmath.isfinite(lam) and abs(lam * lp - 1) < 1e-12


def test_generic_not_integrable():
    lam, lp = to_normal_form(0.3, -0.8, 0.45, 1.7)
    assert abs(lam * lp - 1) > 1e-3


@given(unit, unit, unit, unit, st.floats(-1, 1), st.floats(-1, 1))
def test_conjugacy(a, b, c, h, zr, zi):
    try:
        lam, lp = to_normal_form(a, b, c, h)
        M = nf_conjugacy(a, b, c, h)
    except ZeroDivisionError:
        return
    assume(abs(lam) < 1e6 and abs(lp) < 1e6 and abs(M).max() < 1e6)
    z = complex(zr, zi)

    def mob(w):
        return (M[0, 0] * w + M[0, 1]) / (M[1, 0] * w + M[1, 1])

    x = mob(z)
    den = 1 + b * x
    d2 = 1 + lam * z
    assume(abs(den) > 1e-3 and abs(d2) > 1e-3 and abs(x) < 1e4)
    fx = h * (x + a) * (1 + c * x) / den
    Z = z * (lp + z) / d2
    rhs = mob(Z)
    assume(abs(M[1, 0] * Z + M[1, 1]) > 1e-6 * abs(M).max())
    assert abs(fx - rhs) < 1e-6 * (1 + abs(fx))


@given(unit, unit, unit, unit)
def test_branch_independence(a, b, c, h):
    q2, q, k = _nf_pieces(a, b, c, h)
    assume(abs(q) > 1e-3)

    def pair(q):
        lam = ((2 * c * h - b) * q * q - k * q) / (b * q * q - k * q)
        lp = ((2 * c * h - b) * q * q + k * q) / (b * q * q + k * q)
        return lam, lp

    try:
        l1, p1 = pair(q)
        l2, p2 = pair(-q)
    except ZeroDivisionError:
        return
    assume(max(abs(l1), abs(p1)) < 1e8)
    assert abs(l1 * p1 - l2 * p2) < 1e-9 * (1 + abs(l1 * p1))


def test_fossils():
    assert fossil_set(2, 4) == [-0.5, -1, -2, -4]
    assert set(fossil_set(1, 5)) == {-1}
    with pytest.raises(ValueError):
        fossil_set(0, 3)


def test_collapse_monotone():
    rows = collapse(2, [1e-2, 1e-4, 1e-6], 4)
    d = [r.fossil_distance for r in rows]
    assert d[0] > d[1] > d[2]
    assert all(r.count == 12 for r in rows)


def test_collapse_numeric_fallback():
    rows = collapse(2.0 + 0j, [1e-2], 3)
    assert rows[0].count == 6 and rows[0].fossil_distance < 0.5


@given(st.complex_numbers(max_magnitude=5), unit, unit)
def test_inverse_branches_invert(Z, lam, lp):
    m = NormalFormMap(lam, lp)
    for z in inverse_branches(m, Z):
        try:
            assert abs(m(z) - Z) < 1e-9 * (1 + abs(Z)) * (1 + abs(z)) ** 2
        except ZeroDivisionError:
            pass


def test_integrable_branches():
    lam = 1.7
    m = NormalFormMap(lam, 1 / lam)
    b = sorted(inverse_branches(m, 0.4 + 0.3j), key=lambda w: w.real)
    assert min(abs(w - (-1 / lam)) for w in b) < 1e-12
    assert min(abs(w - lam * (0.4 + 0.3j)) for w in b) < 1e-12


def test_julia_sample_deterministic():
    m = NormalFormMap(2, 3)
    start = periodic_points(m, 2).points[0]
    a = julia_sample(m, start, 200, seed=5)
    b = julia_sample(m, start, 200, seed=5)
    assert a.points == b.points
    assert julia_sample(m, start, 200, seed=6).points != a.points


def test_normal_form_rational_map():
    m = normal_form_map(2, 3)
    assert abs(m([0.5])[0] - NormalFormMap(2, 3)(0.5)) < 1e-15


def test_dynatomic_is_squarefree_part():
    phi = dynatomic_poly(2, 3, 4)
    assert phi.degree() == 12
    assert phi.gcd(phi.derivative()).degree() == 0
