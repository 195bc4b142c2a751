"""Numeric confirmation that points on an invariant variety are periodic.

Points are drawn in two stages.  Invariant values satisfying the variety
equations come first.  Then the level set ``H(x) = h`` is solved by damped
Newton on a random square subsystem.  Each point is iterated and its exact
period is detected with a relative tolerance and a divisor guard.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import mpmath
import numpy as np

from .biquad import gamma_series, reduce_lv3
from .maps import (InvariantVariety, PoleEncountered, RationalMap, get_map, iterate_numeric,
                   lift_example, qp4_map, qp5_map)
from .moebius import periodicity_poly
from .poly import DEFAULT_POLE_THRESHOLD, MPoly, RatFunc, VarTable

TOL = 1e-8
GUARD = 1e-4
RETRIES = 50
POLE_GUARD = 1e-6


class SamplingError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# period detection


@dataclass
class PeriodReport:
    point: np.ndarray
    claimed: int
    detected: int | None
    residual: float
    divisor_margins: dict[int, float]
    drift: float

    @property
    def ok(self) -> bool:
        return self.detected == self.claimed

    def as_dict(self) -> dict:
        return {
            "point": [[float(z.real), float(z.imag)] for z in self.point],
            "claimed": self.claimed,
            "detected": self.detected,
            "residual": self.residual,
            "divisor_margins": {str(k): v for k, v in self.divisor_margins.items()},
            "drift": self.drift,
        }


def _proper_divisors(n: int) -> list[int]:
    return [m for m in range(1, n) if n % m == 0]


def check_period(m: RationalMap, x, n: int, tol: float = TOL, guard: float = GUARD,
                 extended: bool = False, dps: int = 40) -> PeriodReport:
    """Iterate n steps and classify the orbit of ``x``.

    The detected period is the first k <= n whose return gap is below
    ``tol * (1 + |x|)``.  A return at n counts only if every proper divisor
    of n (including 1) stays farther than ``guard`` away; otherwise the
    detected period is None.  ``extended`` iterates in mpmath at ``dps``
    digits.  Raises :class:`PoleEncountered` mid-orbit.
    """
    if extended:
        traj = _mp_trajectory(m, x, n, dps)
        x = traj[0]
    else:
        x = np.asarray(x, dtype=complex)
        traj = iterate_numeric(m, x, n)
    scale = 1 + np.max(np.abs(x))
    gaps = [float(np.max(np.abs(traj[k] - x)) / scale) for k in range(1, n + 1)]
    margins = {d: gaps[d - 1] for d in _proper_divisors(n)}
    detected = next((k for k, g in enumerate(gaps, 1) if g < tol), None)
    if detected == n and any(v <= guard for v in margins.values()):
        detected = None
    drift = 0.0
    if m.invariants:
        h0 = m.invariant_values(x)
        for y in traj[1:]:
            h = m.invariant_values(y)
            drift = max(drift, float(np.max(np.abs(h - h0) / (1 + np.abs(h0)))))
    return PeriodReport(np.asarray(x, dtype=complex), n, detected, gaps[-1], margins, drift)


def _mp_trajectory(m: RationalMap, x, n: int, dps: int) -> np.ndarray:
    """Orbit computed in mpmath and rounded to complex doubles afterwards."""
    with mpmath.workdps(dps):
        y = [mpmath.mpc(v) for v in x]
        out = [list(y)]
        for k in range(1, n + 1):
            nxt = []
            for f in m.components:
                num = f.num.eval_complex(y, True, dps)
                den = f.den.eval_complex(y, True, dps)
                if abs(den) <= DEFAULT_POLE_THRESHOLD * (1 + abs(num)):
                    raise PoleEncountered(k, f"|denominator| = {float(abs(den)):.3e}")
                nxt.append(num / den)
            y = nxt
            out.append(list(y))
        return np.array([[complex(v) for v in row] for row in out])


def iterate_trajectory(m: RationalMap, x, n: int) -> np.ndarray:
    return iterate_numeric(m, x, n)


# ---------------------------------------------------------------------------
# numeric helpers


class _Poly:
    """Fast complex evaluation of an MPoly together with its gradient."""

    def __init__(self, p: MPoly, wrt: Sequence[str] | None = None):
        self.p = p
        wrt = list(p.vars) if wrt is None else list(wrt)
        self.grad = [p.derivative(n) for n in wrt]

    def __call__(self, x) -> complex:
        return complex(self.p.eval_array(np.asarray(x, dtype=complex)[None, :])[0])

    def gradient(self, x) -> np.ndarray:
        pt = np.asarray(x, dtype=complex)[None, :]
        return np.array([g.eval_array(pt)[0] for g in self.grad])

    def scale(self, x) -> float:
        """Sum of term magnitudes, the natural size for a relative residual."""
        exps, coeffs, _ = self.p._numeric_form()
        if not len(coeffs):
            return 1.0
        mons = np.prod(np.abs(np.asarray(x, dtype=complex))[None, :] ** exps, axis=1)
        return float(1 + np.abs(coeffs) @ mons)


class _Rat:
    def __init__(self, f: RatFunc):
        self.num, self.den = _Poly(f.num), _Poly(f.den)

    def __call__(self, x) -> complex:
        return self.num(x) / self.den(x)

    def gradient(self, x) -> np.ndarray:
        n, d = self.num(x), self.den(x)
        return (self.num.gradient(x) * d - n * self.den.gradient(x)) / (d * d)


def _newton(F: Callable, J: Callable, z0: np.ndarray, target: float = 1e-13,
            maxiter: int = 80) -> np.ndarray | None:
    """Damped Newton on a square complex system; None when it stalls."""
    z = np.array(z0, dtype=complex)
    try:
        f = F(z)
        nf = np.max(np.abs(f))
        for _ in range(maxiter):
            if nf < target:
                return z
            step = np.linalg.solve(J(z), -f)
            t = 1.0
            while t > 1e-4:
                zn = z + t * step
                fn = F(zn)
                nfn = np.max(np.abs(fn))
                if np.isfinite(nfn) and nfn < nf:
                    break
                t /= 2
            else:
                return None
            z, f, nf = zn, fn, nfn
    except (np.linalg.LinAlgError, ZeroDivisionError, FloatingPointError):
        return None
    return z if nf < target else None


def _cnormal(rng: np.random.Generator, size, scale: float = 1.0, real: bool = False) -> np.ndarray:
    if real:
        return scale * rng.normal(size=size).astype(complex)
    return scale * (rng.normal(size=size) + 1j * rng.normal(size=size)) / np.sqrt(2)


def _univariate_coeffs(p: MPoly, var: str, values: dict[str, complex]) -> np.ndarray:
    """Coefficients (highest first) of p in ``var`` after substituting complex values."""
    k = p.vars.index(var)
    deg = p.degree(var)
    out = np.zeros(deg + 1, dtype=complex)
    for e, c in p.terms():
        t = complex(float(c))
        for i, name in enumerate(p.vars):
            if i != k and e[i]:
                t *= values[name] ** e[i]
        out[deg - e[k]] += t
    return out


# ---------------------------------------------------------------------------
# sampling


def _pole_free(m: RationalMap, x: np.ndarray, guard: float) -> bool:
    for f in m.components:
        n = complex(f.num.eval_array(x[None, :])[0])
        d = complex(f.den.eval_array(x[None, :])[0])
        if abs(d) < guard * (1 + abs(n)):
            return False
    return True


def _invariant_point(gammas: Sequence[MPoly], names: Sequence[str], rng, real: bool,
                     retries: int) -> np.ndarray | None:
    """Values h of all invariants with every gamma(h) = 0."""
    used = sorted({v for g in gammas for v in g.used_vars()}, key=names.index)
    l = len(gammas)
    if l > len(used):
        raise ValueError("more variety equations than invariants they involve")
    for _ in range(retries):
        h = dict(zip(names, _cnormal(rng, len(names), real=real)))
        unknown = list(rng.choice(used, size=l, replace=False))
        if l == 1:
            var = unknown[0]
            co = _univariate_coeffs(gammas[0], var, h)
            nz = np.flatnonzero(np.abs(co) > 1e-12 * np.max(np.abs(co)))
            if not len(nz) or nz[0] == len(co) - 1:
                continue
            roots = np.roots(co[nz[0]:])
            if real:
                roots = roots[np.abs(roots.imag) < 1e-9].real.astype(complex)
            if not len(roots):
                continue
            root = roots[rng.integers(len(roots))]
            dco = np.polyder(co)
            for _ in range(3):
                dv = np.polyval(dco, root)
                if dv == 0:
                    break
                root -= np.polyval(co, root) / dv
            h[var] = root
        else:
            polys = [_Poly(g, unknown) for g in gammas]
            idx = [names.index(u) for u in unknown]

            def full(z):
                v = np.array([h[n] for n in names])
                v[idx] = z
                return v

            z = _newton(lambda z: np.array([p(full(z)) for p in polys]),
                        lambda z: np.array([p.gradient(full(z)) for p in polys]),
                        np.array([h[u] for u in unknown]))
            if z is None:
                continue
            for u, val in zip(unknown, z):
                h[u] = val
        vec = np.array([h[n] for n in names])
        if all(abs(_Poly(g)(vec)) < 1e-11 * _Poly(g).scale(vec) for g in gammas):
            return vec
    return None


def _solve_level_set(m: RationalMap, h: np.ndarray, rng, real: bool, retries: int,
                     invs: Sequence[_Rat]) -> np.ndarray | None:
    d, p = m.dim, len(invs)
    for _ in range(retries):
        unknown = np.sort(rng.choice(d, size=p, replace=False))
        x = _cnormal(rng, d, real=real)

        def full(z):
            y = x.copy()
            y[unknown] = z
            return y

        z = _newton(lambda z: np.array([H(full(z)) for H in invs]) - h,
                    lambda z: np.array([H.gradient(full(z))[unknown] for H in invs]),
                    x[unknown], target=1e-13 * (1 + np.max(np.abs(h))))
        if z is None:
            continue
        y = full(z)
        if np.max(np.abs(y)) > 1e3:
            continue
        return y
    return None


def sample_on_variety(m: RationalMap, v: InvariantVariety, k: int, seed: int = 0, *,
                      retries: int = RETRIES, real: bool = False,
                      pole_guard: float = POLE_GUARD) -> list[np.ndarray]:
    """k points x with gamma(H(x)) = 0 for every defining polynomial of ``v``.

    Sample ``i`` uses its own generator seeded with ``(seed, i)``, so any
    subset of samples can be reproduced independently.
    """
    gammas = v.on(m)
    names = list(m.invariant_names)
    invs = [_Rat(f) for _, f in m.invariants]
    checks = [_Poly(g) for g in gammas]
    out = []
    for i in range(k):
        rng = np.random.default_rng([seed, i])
        for _ in range(retries):
            h = _invariant_point(gammas, names, rng, real, retries)
            if h is None:
                raise SamplingError(f"no invariant values on the variety after {retries} tries")
            x = _solve_level_set(m, h, rng, real, retries, invs)
            if x is None or not _pole_free(m, x, pole_guard):
                continue
            hx = np.array([H(x) for H in invs])
            if all(abs(c(hx)) < 1e-10 * c.scale(hx) for c in checks):
                out.append(x)
                break
        else:
            raise SamplingError(f"sample {i}: level-set solve failed {retries} times")
    return out


def refine_on_variety(m: RationalMap, v: InvariantVariety, x, dps: int = 40,
                      steps: int = 40) -> list:
    """Pull a double-precision sample onto the variety in mpmath.

    Newton on gamma(H(x)) = 0 moves only the l coordinates with the largest
    sensitivity, so the invariants off the variety stay where they were.
    """
    gammas = v.on(m)
    invs = [f for _, f in m.invariants]
    ggrad = [[g.derivative(n) for n in m.invariant_names] for g in gammas]
    hgrad = [[H.derivative(n) for n in m.vars] for H in invs]
    with mpmath.workdps(dps):
        y = [mpmath.mpc(complex(c)) for c in x]

        def system(y):
            h = [H.eval_complex(y, extended=True, dps=dps) for H in invs]
            vals = [g.eval_complex(h, extended=True, dps=dps) for g in gammas]
            dg = mpmath.matrix([[d.eval_complex(h, extended=True, dps=dps) for d in row]
                                for row in ggrad])
            dh = mpmath.matrix([[d.eval_complex(y, extended=True, dps=dps) for d in row]
                                for row in hgrad])
            return vals, dg * dh

        vals, J = system(y)
        cols = sorted(range(m.dim), key=lambda j: -sum(abs(J[i, j]) for i in range(J.rows)))
        cols = sorted(cols[:len(gammas)])
        for _ in range(steps):
            sub = mpmath.matrix([[J[i, j] for j in cols] for i in range(J.rows)])
            step = mpmath.lu_solve(sub, -mpmath.matrix(vals))
            for k, j in enumerate(cols):
                y[j] += step[k]
            vals, J = system(y)
            if max(abs(t) for t in vals) < mpmath.mpf(10) ** (5 - dps):
                break
        return y


# ---------------------------------------------------------------------------
# reports


@dataclass
class VarietyReport:
    label: str
    period: int
    gammas: list[str]
    sampled: int
    passed: int
    pole_failures: int
    worst_residual: float
    max_drift: float
    escalated: int = 0
    failures: list[PeriodReport] = field(default_factory=list)

    @property
    def pass_rate(self) -> float:
        return self.passed / self.sampled if self.sampled else 0.0

    @property
    def ok(self) -> bool:
        return self.sampled > 0 and self.passed == self.sampled

    def as_dict(self) -> dict:
        return {
            "map": self.label,
            "period": self.period,
            "gammas": self.gammas,
            "sampled": self.sampled,
            "passed": self.passed,
            "pass_rate": self.pass_rate,
            "pole_failures": self.pole_failures,
            "worst_residual": self.worst_residual,
            "max_drift": self.max_drift,
            "escalated": self.escalated,
            "ok": self.ok,
        }


def report_points(m: RationalMap, n: int, points, gammas: Sequence[str] = (),
                  tol: float = TOL, guard: float = GUARD,
                  refine: Callable | None = None) -> VarietyReport:
    """Check every point; a double-precision failure is retried once in mpmath.

    With ``refine`` the retried point is first pulled back onto the variety at
    extended precision.  Orbits passing close to a pole amplify rounding so
    much that no double-precision point on the variety returns within ``tol``.
    """
    rep = VarietyReport(m.label, n, list(gammas), 0, 0, 0, 0.0, 0.0)
    for x in points:
        try:
            pr = check_period(m, x, n, tol, guard)
            if not pr.ok:
                rep.escalated += 1
                pr = check_period(m, refine(x) if refine else x, n, tol, guard, extended=True)
        except PoleEncountered:
            rep.pole_failures += 1
            continue
        rep.sampled += 1
        rep.worst_residual = max(rep.worst_residual, pr.residual)
        rep.max_drift = max(rep.max_drift, pr.drift)
        if pr.ok:
            rep.passed += 1
        else:
            rep.failures.append(pr)
    return rep


def variety_report(m: RationalMap, v: InvariantVariety, k: int = 100, seed: int = 0,
                   tol: float = TOL, guard: float = GUARD) -> VarietyReport:
    pts = sample_on_variety(m, v, k, seed)
    return report_points(m, v.period, pts, v.strings(), tol, guard,
                         refine=lambda x: refine_on_variety(m, v, x))


@dataclass
class ControlReport:
    label: str
    period: int
    trials: int
    verified: int
    min_gamma: float


def off_variety_control(m: RationalMap, v: InvariantVariety, trials: int = 1000,
                        seed: int = 0, bound: float = 0.1, tol: float = TOL,
                        guard: float = GUARD) -> ControlReport:
    """Random points with max |gamma(H(x))| > bound; none should verify period n."""
    checks = [_Poly(g) for g in v.on(m)]
    invs = [_Rat(f) for _, f in m.invariants]
    rng = np.random.default_rng([seed, v.period, 7919])
    verified = done = 0
    worst = np.inf
    while done < trials:
        x = _cnormal(rng, m.dim)
        if not _pole_free(m, x, POLE_GUARD):
            continue
        hx = np.array([H(x) for H in invs])
        g = max(abs(c(hx)) for c in checks)
        if g <= bound:
            continue
        try:
            pr = check_period(m, x, v.period, tol, guard)
        except PoleEncountered:
            continue
        done += 1
        worst = min(worst, g)
        verified += pr.ok
    return ControlReport(m.label, v.period, trials, verified, float(worst))


# ---------------------------------------------------------------------------
# q-Painleve IV: isolated period-2 curve and the period-3 surface


def qp4_curve_points(m: RationalMap, k: int, seed: int = 0,
                     x1_rule: str = "printed") -> list[np.ndarray]:
    """Points on the published x-space curve of the q-Painleve IV map.

    x3 is drawn at random and x2 solves the quadratic
    (1 - a3 x3) x2^2 - (1 - x3^2) x2 / a2 - (x3 - a3) x3 = 0.  With
    ``x1_rule="printed"`` x1 solves the published companion equation
    (a1 a2 - x3)(x1 x2 - x3) = a1 x1 (1 - x3^2).  With ``"fixed"`` it solves
    X3 = x3 instead, which puts the point on the fixed-point curve.
    """
    a1, a2, a3 = (complex(m.params[f"alpha{i}"]) for i in (1, 2, 3))
    rng = np.random.default_rng([seed, 2, 28])
    out = []
    while len(out) < k:
        x3 = _cnormal(rng, 1)[0]
        roots = np.roots([1 - a3 * x3, -(1 - x3 * x3) / a2, -(x3 - a3) * x3])
        x2 = roots[rng.integers(len(roots))]
        if x1_rule == "printed":
            num, den = (a1 * a2 - x3) * x3, (a1 * a2 - x3) * x2 - a1 * (1 - x3 * x3)
        elif x1_rule == "fixed":
            num = x3 * (1 - a3 * x3)
            den = a3 * a1 * (1 - a2 * x2 + a2 * a3 * x2 * x3 - x3 * x3)
        else:
            raise ValueError("x1_rule must be 'printed' or 'fixed'")
        if abs(den) < 1e-6:
            continue
        x = np.array([num / den, x2, x3])
        if np.max(np.abs(x)) < 1e3 and _pole_free(m, x, POLE_GUARD):
            out.append(x)
    return out


QP4_SURFACE = (
    "a1^2*(1+a2^2+a2^2*a1^2)*(r^2+1) + a1*(1+a1^2+3*a2^2*a1^2)*(x2*x3+r*x1)"
    " + a1^2*a2*(a1^2+a2^2*a1^2+3)*(x3*x1+r*x2) + a1*a2*(1+a2^2*a1^2+3*a1^2)*(x1*x2+r*x3)"
    " - (1+a1^2+a2^2*a1^2)*(a1*(a2*x1*x2+x2*x3+a1*a2*x3*x1)+(1+a1^2+a2^2*a1^2))*r"
    " - a1*(1+a1^2+a2^2*a1^2)*(x1+a1*a2*x2+a2*x3)"
    " + a1^2*(x1^2+a1^2*a2^2*x2^2+a2^2*x3^2) + a1^2*(a2^2*x1^2*x2^2+x2^2*x3^2+a1^2*a2^2*x1^2*x3^2)"
    " - 2*a1^2*a2*(x1^2*x2+a1*x2^2*x3+a1*a2*x1*x2^2+a1*x1^2*x3+a1*a2*x1*x3^2+x2*x3^2)"
)


def qp4_period3_surface(a1, a2) -> MPoly:
    """The period-3 surface in x-space for alpha = (a1, a2, 1/(a1 a2))."""
    from .parse import parse_poly
    V = VarTable(["x1", "x2", "x3"])
    text = QP4_SURFACE.replace("r", "(x1*x2*x3)")
    P = V.extend("a1", "a2")
    return parse_poly(text, P).subs({"a1": Fraction(a1), "a2": Fraction(a2)}).to_vars(V)


def find_periodic_points(m: RationalMap, n: int, k: int, seed: int = 0,
                         tries: int = 400, tol: float = TOL, guard: float = GUARD) -> list[np.ndarray]:
    """Numerically periodic points of exact period n via Gauss-Newton on F^n(x) - x.

    The period locus may be positive-dimensional, so each step uses the
    least-squares (minimum-norm) Newton correction with a finite-difference
    Jacobian.
    """
    rng = np.random.default_rng([seed, n, 3])
    out = []
    h = 1e-7

    def G(x):
        return iterate_trajectory(m, x, n)[-1] - x

    for _ in range(tries):
        if len(out) >= k:
            break
        x = _cnormal(rng, m.dim)
        try:
            for _ in range(60):
                g = G(x)
                if np.max(np.abs(g)) < 1e-13 * (1 + np.max(np.abs(x))):
                    break
                J = np.column_stack([(G(x + h * e) - g) / h for e in np.eye(m.dim)])
                x = x + np.linalg.lstsq(J, -g, rcond=None)[0]
                if np.max(np.abs(x)) > 1e4:
                    break
            pr = check_period(m, x, n, tol, guard)
        except (PoleEncountered, np.linalg.LinAlgError, ZeroDivisionError, FloatingPointError):
            continue
        if pr.ok and np.max(np.abs(x)) < 1e3:
            out.append(x)
    return out


# ---------------------------------------------------------------------------
# catalog of published and generated varieties


LV3_PERIOD5 = (
    "r^3*s^4-r^3*s^2-6*r^4*s^5+10*r^3*s^6+3*s^5*r+s^6+s^5+3*r^4*s^4-3*r^5*s^3"
    "-6*r^4*s^3-r^6*s^3+3*r^5*s^4+s^4+21*s^4*r^2+6*s^4*r+r^3*s^7+s^7+27*s^5*r^2"
    "-3*s^6*r-r^3*s^5+21*r^2*s^6-10*r^3*s^3-6*r*s^7+s^8"
)

LV4_PERIOD3_PRINTED = ("H2^2-H1^2*H2+2*H1*H2-2*r*H2-6*H2+H1^3-2*H1^2"
                       "+2*r*H1+2*H1+r^2+2*r+5")
# the printed cubic is written in H2 - r + 2 rather than the attached H2
LV4_PERIOD3 = LV4_PERIOD3_PRINTED.replace("H2", "(H2-r+2)")

QP4_CONSTRAINED_ALPHA = (2, 3, Fraction(1, 6))
QP5_CONSTRAINED_ALPHA = (2, 3, Fraction(1, 2), Fraction(1, 3))
LIFT_AB = (Fraction(1, 2), Fraction(-3, 4))


@dataclass(frozen=True)
class VarietyCase:
    key: str
    map: RationalMap
    variety: InvariantVariety


def lv3_period5_printed() -> MPoly:
    from .parse import parse_poly
    return parse_poly(LV3_PERIOD5, VarTable(["r", "s"]))


def _case(key, m, n, exprs, provenance="paper-data", note=""):
    return VarietyCase(key, m, InvariantVariety.parse(n, exprs, m.invariant_names, provenance, note))


def catalog_varieties(include_generated: bool = True) -> list[VarietyCase]:
    """Every (map, variety) pair shipped with the package."""
    lv3, lv4, lv5 = get_map("lv3"), get_map("lv4"), get_map("lv5")
    toda = get_map("toda3")
    qp4c, qp4 = qp4_map(*QP4_CONSTRAINED_ALPHA), qp4_map(1, 1, 1)
    qp5c, qp5 = qp5_map(*QP5_CONSTRAINED_ALPHA), qp5_map(1, 1, 1, 1)
    s2 = MPoly.var("s", VarTable(["r", "s"])) ** 2
    cases = [
        _case("lv3/2", lv3, 2, ["s+1"]),
        _case("lv3/3", lv3, 3, ["r^2+s^2-r*s+r+s+1"]),
        _case("lv3/4", lv3, 4, ["r^3*s+s^3-3*r*s^2+6*r^2*s+3*r*s-r^3+s"]),
        VarietyCase("lv3/5", lv3, InvariantVariety(
            5, (lv3_period5_printed().exact_div(s2),), "paper-data",
            "printed polynomial with its factor s^2 removed")),
        _case("lv4/2", lv4, 2, ["H1-2"]),
        _case("lv4/3", lv4, 3, [LV4_PERIOD3], note="printed cubic with H2 shifted to H2-r+2"),
        _case("lv5/2", lv5, 2, ["H2+3*H1+5", "H1+r+2"]),
        _case("toda3/3", toda, 3, ["t1", "t2"]),
        _case("qp4c/2", qp4c, 2, ["r+1"]),
        _case("qp4/2", qp4, 2, ["r+1"]),
        _case("qp4/3", qp4, 3, ["r^2+s^2-r*s+r+s+1"]),
        _case("qp4/4", qp4, 4, ["s^3*r+r^3+6*r*s^2+3*r*s-s^3+r-3*r^2*s"]),
        _case("qp5c/2", qp5c, 2, ["r-1"]),
        _case("qp5/2", qp5, 2, ["r-1"]),
    ]
    if include_generated:
        lift = lift_example(*LIFT_AB, 0)
        for n in range(2, 7):
            g = periodicity_poly(n).subs({"a": LIFT_AB[0], "b": LIFT_AB[1]}).to_vars(VarTable(["h"]))
            cases.append(VarietyCase(f"lift2/{n}", lift, InvariantVariety(n, (g,), "moebius")))
        series = gamma_series(reduce_lv3(), 6)
        for n in range(3, 7):
            cases.append(VarietyCase(f"lv3-biquad/{n}", lv3,
                                     InvariantVariety(n, (series[n],), "biquad")))
    return cases


def find_case(label: str, n: int) -> VarietyCase:
    for c in catalog_varieties():
        if c.key == f"{label}/{n}":
            return c
    raise KeyError(f"no catalog variety for {label!r} at period {n}")
