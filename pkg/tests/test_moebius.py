from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from perimap.maps import iterate_numeric
from perimap.moebius import (ABH, DegenerateFamily, MoebiusParams, apply, h_roots,
                             identity_modulo, iterate_params, moebius_map, numeric_suite,
                             periodicity_poly, step)
from perimap.parse import parse_poly

PRINTED = {
    2: "1+h",
    3: "1+h+h^2+a*b*h",
    4: "1+h^2+2*a*b*h",
    5: "1+h+h^2+h^3+h^4+a*b*h*(3+(4+a*b)*h+3*h^2)",
    6: "1-h+h^2+3*a*b*h",
}


@pytest.mark.parametrize("n", range(2, 7))
def test_printed_list(n):
    assert periodicity_poly(n) == parse_poly(PRINTED[n], ABH).normalize()


@pytest.mark.parametrize("n", range(2, 7))
def test_iterate_is_identity_modulo_gamma(n):
    assert identity_modulo(n)


def test_wrong_gamma_is_not_identity():
    assert not identity_modulo(3, periodicity_poly(4))


def test_period_one_rejected():
    with pytest.raises(ValueError):
        periodicity_poly(1)


def test_params_compose_like_the_map():
    p = iterate_params(3)
    vals = {"a": Fraction(1, 3), "b": Fraction(-2), "h": Fraction(5, 7)}
    a3, b3, h3 = (f.eval_exact(vals) for f in p)
    x = Fraction(2, 9)
    assert h3 * (x + a3) / (1 + b3 * x) == apply(x, *vals.values(), 3)


def test_degenerate_step():
    zero = MoebiusParams.symbolic()
    from perimap.poly import RatFunc
    z = RatFunc.const(0, ABH)
    with pytest.raises(DegenerateFamily):
        step(MoebiusParams(z, z, z), zero)


@pytest.mark.parametrize("n", range(2, 7))
def test_numeric_suite(n):
    checks = numeric_suite(n, samples=20, starts=5, seed=0)
    assert len(checks) == 100
    assert all(c.ok for c in checks)


@given(st.fractions(-5, 5, max_denominator=4), st.fractions(-5, 5, max_denominator=4),
       st.sampled_from([(2, 4), (2, 6), (3, 6)]))
def test_divisor_exclusion(a, b, mn):
    m, n = mn
    rm, rn = h_roots(m, complex(a), complex(b)), h_roots(n, complex(a), complex(b))
    if len(rm) and len(rn):
        gap = np.min(np.abs(rm[:, None] - rn[None, :]))
        # a shared root would need ab taking special values
        assert gap > 1e-9 or abs(1 - a * b) < 1e-9 or a * b in (0, 1)


def test_moebius_map_period_two():
    m = moebius_map(Fraction(1, 2), Fraction(3), -1)
    traj = iterate_numeric(m, [0.37 + 0.1j], 2)
    assert abs(traj[2][0] - traj[0][0]) < 1e-12
