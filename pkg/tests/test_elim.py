import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from perimap.biquad import S_poly, reduce_qrt
from perimap.elim import (Budget, BudgetExceeded, IdealBasis, NotGroebner, buchberger,
                          elimination_ideal, is_groebner, periodicity_system, reduce_mod,
                          reduction_system)
from perimap.maps import biquadratic_form, get_map, qrt_map
from perimap.parse import parse_poly
from perimap.poly import MPoly, RatFunc, VarTable

XYZ = VarTable(["x", "y", "z"])


def P(text, vt=XYZ):
    return parse_poly(text, vt)


def test_textbook_elimination():
    basis = buchberger([P("y-x^2"), P("z-x^3")], ["x", "y", "z"])
    assert basis.groebner and is_groebner(list(basis))
    elim = elimination_ideal(basis, 1)
    assert [str(g) for g in elim] == ["y^3-z^2"]
    assert reduce_mod(P("y^3-z^2"), basis).is_zero()


def test_single_linear_generator():
    basis = buchberger([P("x-1")])
    assert [str(g) for g in basis] == ["x-1"]


def test_eliminate_nothing_is_identity():
    basis = buchberger([P("x^2-y"), P("x^3-z")], ["x", "y", "z"])
    assert elimination_ideal(basis, 0).gens == basis.gens


def test_reduce_examples():
    basis = buchberger([P("x")])
    assert reduce_mod(MPoly.const(1, XYZ), basis) == MPoly.const(1, XYZ)
    basis = buchberger([P("x^2-y"), P("x*y-1")], ["x", "y", "z"])
    for g in basis:
        assert reduce_mod(g, basis).is_zero()


def test_elimination_requires_groebner():
    fake = IdealBasis((P("x"),), XYZ)
    with pytest.raises(NotGroebner):
        elimination_ideal(fake, 1)
    with pytest.raises(NotGroebner):
        reduce_mod(P("x"), fake)


def test_budget_kinds():
    gens = [P("x^3-y*z+1"), P("y^3-x*z"), P("z^3-x*y-2")]
    with pytest.raises(BudgetExceeded) as exc:
        buchberger(gens, budget=Budget(max_degree=3))
    assert exc.value.kind == "degree" and exc.value.partial
    with pytest.raises(BudgetExceeded) as exc:
        buchberger(gens, budget=Budget(max_basis=4))
    assert exc.value.kind == "size"
    with pytest.raises(BudgetExceeded) as exc:
        buchberger(gens, budget=Budget(timeout=0))
    assert exc.value.kind == "time"


small = st.lists(st.tuples(st.tuples(*[st.integers(0, 2)] * 3), st.integers(-3, 3)),
                 min_size=1, max_size=3)


def _mk(terms):
    return MPoly.from_terms({e: c for e, c in terms if c}, XYZ)


@given(st.lists(small, min_size=1, max_size=3), small, st.randoms(use_true_random=False))
def test_groebner_properties(gen_terms, probe_terms, rnd):
    gens = [g for g in map(_mk, gen_terms) if not g.is_zero()]
    if not gens:
        return
    try:
        basis = buchberger(gens, budget=Budget(max_degree=12, max_basis=60, timeout=5))
    except BudgetExceeded:
        return
    assert is_groebner(list(basis))
    for g in gens:
        assert reduce_mod(g, basis).is_zero()
    shuffled = gens[:]
    rnd.shuffle(shuffled)
    other = buchberger(shuffled, budget=Budget(max_degree=12, max_basis=60, timeout=5))
    assert other.gens == basis.gens
    probe = _mk(probe_terms)
    assert reduce_mod(probe, basis) == reduce_mod(probe, other)


def _random_qrt(seed):
    rng = random.Random(seed)
    while True:
        qp = [rng.randint(-3, 3) for _ in range(6)]
        qpp = [rng.randint(-3, 3) for _ in range(6)]
        try:
            return qp, qpp, qrt_map(qp, qpp)
        except ValueError:
            continue


@pytest.mark.parametrize("seed", [0, 1])
def test_qrt_invariant_curve(seed):
    qp, qpp, m = _random_qrt(seed)
    system = reduction_system(m)
    assert system.order[:2] == ("y", "Y")
    ideal = system.eliminated()
    vt = VarTable(system.order)
    x, X = RatFunc.var("x", vt), RatFunc.var("X", vt)
    h = MPoly.var("h", vt)
    q = [Fraction(a) + h * Fraction(b) for a, b in zip(qp, qpp)]
    target = biquadratic_form(q, X, x).num
    assert len(ideal) == 1
    assert ideal.gens[0].normalize() == target.to_vars(vt).with_order(ideal.gens[0].order).normalize()
    # same thing through the biquadratic parameter six-tuple
    S = S_poly(reduce_qrt(qp, qpp), ("X", "x"))
    assert S.to_vars(vt).normalize() == target.normalize()


def test_periodicity_system_shape():
    m = get_map("lv3")
    sy = periodicity_system(m, 2, saturate=False, avoid_fixed=True)
    assert sy.order == ("t", "x1", "x2", "x3", "r", "s")
    assert sy.eliminate == 4
    assert len(sy.gens) == 6
    assert len(sy.excluded) == 3
