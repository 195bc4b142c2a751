import numpy as np
import pytest

from perimap.maps import InvariantVariety, PoleEncountered, get_map, qp4_map, qp5_map
from perimap.verify import (GUARD, TOL, SamplingError, catalog_varieties, check_period,
                            find_case, find_periodic_points, off_variety_control,
                            qp4_curve_points, qp4_period3_surface, refine_on_variety,
                            report_points, sample_on_variety, variety_report)


def _gamma_residual(m, v, x):
    names = m.invariant_names
    h = {n: f.eval_complex(x) for n, f in m.invariants}
    return max(abs(g.eval_complex([h[n] for n in g.vars])) for g in v.on(m))


def test_fixed_point_detected_as_period_one():
    m = get_map("lv3")
    x = np.array([0.2, 0.0, 0.0], dtype=complex)
    rep = check_period(m, x, 2)
    assert rep.detected == 1 and not rep.ok
    assert rep.divisor_margins[1] < GUARD
    assert check_period(m, x, 1).detected == 1


def test_lv3_period_two_point():
    m = get_map("lv3")
    v = find_case("lv3", 2).variety
    pts = sample_on_variety(m, v, 5, seed=1)
    for x in pts:
        s = m.invariant("s").eval_complex(x)
        assert abs(s + 1) < 1e-10
        rep = check_period(m, x, 2)
        assert rep.detected == 2 and rep.residual < TOL and rep.drift < 1e-9
        assert set(rep.as_dict()) >= {"point", "claimed", "detected", "residual"}


def test_qp5_period_two_on_r_equal_one():
    m = qp5_map(1, 1, 1, 1)
    v = InvariantVariety.parse(2, ["r-1"], m.invariant_names)
    for x in sample_on_variety(m, v, 5, seed=2):
        assert check_period(m, x, 2).detected == 2


def test_samples_lie_on_variety():
    m = get_map("lv3")
    v = find_case("lv3", 3).variety
    pts = sample_on_variety(m, v, 20, seed=0)
    assert len(pts) == 20
    assert all(_gamma_residual(m, v, x) < 1e-10 for x in pts)


def test_sampling_is_reproducible():
    m = get_map("lv3")
    v = find_case("lv3", 4).variety
    a = sample_on_variety(m, v, 5, seed=3)
    b = sample_on_variety(m, v, 5, seed=3)
    assert all(np.array_equal(p, q) for p, q in zip(a, b))


def test_empty_variety_raises():
    m = get_map("lv3")
    v = InvariantVariety.parse(2, ["r-s", "r-s+1"], m.invariant_names)
    with pytest.raises(SamplingError):
        sample_on_variety(m, v, 1, seed=0, retries=3)


def test_refine_stays_on_variety():
    m = get_map("lv3")
    v = find_case("lv3", 5).variety
    x = sample_on_variety(m, v, 1, seed=4)[0]
    y = refine_on_variety(m, v, x)
    assert _gamma_residual(m, v, np.array([complex(c) for c in y])) < 1e-12


def test_variety_report_lv3_period_three():
    rep = variety_report(get_map("lv3"), find_case("lv3", 3).variety, k=100, seed=0)
    assert rep.ok and rep.sampled == 100 and rep.pass_rate == 1.0
    assert rep.max_drift < 1e-9


def test_variety_report_lv4_period_two():
    rep = variety_report(get_map("lv4"), find_case("lv4", 2).variety, k=30, seed=0)
    assert rep.ok


def test_report_counts_poles():
    m = get_map("lv3")
    rep = report_points(m, 2, [np.array([0, 0, 1], dtype=complex)])
    assert rep.pole_failures == 1 and rep.sampled == 0 and not rep.ok


def test_off_variety_control_small():
    m = get_map("lv3")
    ctl = off_variety_control(m, find_case("lv3", 2).variety, trials=100, seed=0)
    assert ctl.verified == 0 and ctl.min_gamma > 0.1


def test_wrong_variety_fails():
    m = get_map("lv3")
    v = InvariantVariety.parse(2, ["s+2"], m.invariant_names)
    rep = variety_report(m, v, k=10, seed=0)
    assert rep.passed == 0


def test_qp4_fixed_rule_gives_fixed_points():
    m = qp4_map(2, 3, 1 / 6)
    for x in qp4_curve_points(m, 5, seed=0, x1_rule="fixed"):
        assert check_period(m, x, 1).detected == 1


def test_qp4_period_three_points_on_surface():
    a1, a2 = 2, 3
    m = qp4_map(a1, a2, 1 / 6)
    surf = qp4_period3_surface(a1, a2)
    pts = find_periodic_points(m, 3, 5, seed=0)
    assert pts
    for x in pts:
        if np.min(np.abs(x)) < 1e-6:
            continue
        val = abs(surf.eval_complex(x))
        scale = sum(abs(c) * np.prod(np.abs(x) ** np.array(e)) for e, c in
                    ((e, float(c)) for e, c in surf.terms()))
        assert val < 1e-8 * scale


def test_catalog_keys():
    keys = {c.key for c in catalog_varieties(include_generated=False)}
    assert {"lv3/2", "lv3/5", "lv4/3", "lv5/2", "toda3/3", "qp4c/2", "qp5/2"} <= keys
    with pytest.raises(KeyError):
        find_case("lv3", 7)
