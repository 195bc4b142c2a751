"""Catalog of integrable rational maps, their invariants and iteration.

Every constructor returns a :class:`RationalMap` whose invariant list can be
checked exactly with :func:`verify_invariants`.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .parse import parse
from .poly import (DEFAULT_POLE_THRESHOLD, MPoly, PoleError, RatFunc, VarTable)


class ConstructionError(RuntimeError):
    """A constructed map failed its defining identity (a bug, never data)."""


class DegenerateMap(ValueError):
    pass


class DegreeCapExceeded(RuntimeError):
    pass


class PoleEncountered(PoleError):
    def __init__(self, step: int, message: str = ""):
        self.step = step
        super().__init__(f"pole at step {step}{': ' + message if message else ''}")


@dataclass(frozen=True)
class RationalMap:
    label: str
    vars: VarTable
    components: tuple[RatFunc, ...]
    invariants: tuple[tuple[str, RatFunc], ...] = ()
    params: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.components) != len(self.vars):
            raise ValueError("one component per variable is required")
        if len(self.invariants) > len(self.vars):
            raise ValueError("more invariants than dimensions")

    @property
    def dim(self) -> int:
        return len(self.vars)

    @property
    def invariant_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.invariants)

    @property
    def invariant_table(self) -> VarTable:
        return VarTable(self.invariant_names)

    def invariant(self, name: str) -> RatFunc:
        for n, f in self.invariants:
            if n == name:
                return f
        raise KeyError(name)

    def with_invariants(self, invariants) -> "RationalMap":
        return RationalMap(self.label, self.vars, self.components, tuple(invariants), self.params)

    def __call__(self, x, threshold: float = DEFAULT_POLE_THRESHOLD) -> np.ndarray:
        return np.array([f.eval_complex(x, threshold) for f in self.components])

    def invariant_values(self, x) -> np.ndarray:
        return np.array([f.eval_complex(x) for _, f in self.invariants])


PROVENANCES = ("paper-data", "biquad", "moebius", "elimination")


@dataclass(frozen=True)
class InvariantVariety:
    """Common zero set of polynomials in a map's invariant symbols, claimed to have period n."""

    period: int
    gammas: tuple[MPoly, ...]
    provenance: str = "paper-data"
    note: str = ""

    def __post_init__(self):
        if self.period < 2:
            raise ValueError("fixed points are not varieties of periodic points; need n >= 2")
        if not self.gammas or any(g.is_zero() for g in self.gammas):
            raise ValueError("defining polynomials must be nonzero")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"provenance must be one of {PROVENANCES}")
        object.__setattr__(self, "gammas", tuple(g.normalize() for g in self.gammas))

    @classmethod
    def parse(cls, period: int, exprs: Sequence[str], symbols: Sequence[str],
              provenance: str = "paper-data", note: str = "") -> "InvariantVariety":
        from .parse import parse_poly
        V = VarTable(symbols)
        return cls(period, tuple(parse_poly(e, V) for e in exprs), provenance, note)

    def on(self, m: "RationalMap") -> tuple[MPoly, ...]:
        """The defining polynomials rewritten over ``m``'s invariant table."""
        T = m.invariant_table
        missing = {n for g in self.gammas for n in g.used_vars()} - set(T)
        if missing:
            raise ValueError(f"map {m.label} has no invariants named {sorted(missing)}")
        return tuple(g.to_vars(T) for g in self.gammas)

    def strings(self) -> list[str]:
        return [str(g) for g in self.gammas]


# ---------------------------------------------------------------------------
# Lotka-Volterra family


def _xvars(d: int) -> VarTable:
    return VarTable([f"x{j}" for j in range(1, d + 1)])


def lv_relation_residuals(components: Sequence[RatFunc]) -> list[RatFunc]:
    """X_j (1 - X_{j-1}) - x_j (1 - x_{j+1}) with cyclic indices."""
    d = len(components)
    V = components[0].vars
    x = [RatFunc.var(n, V) for n in V]
    return [components[j] * (1 - components[j - 1]) - x[j] * (1 - x[(j + 1) % d])
            for j in range(d)]


def lv_map(d: int) -> RationalMap:
    """Solve the cyclic relation X_j(1 - X_{j-1}) = x_j(1 - x_{j+1}).

    X_1 = t is propagated around the cycle; the closing equation is
    quadratic in t with the spurious root t = 1 - x_2, leaving a linear
    equation for the true image.
    """
    if d < 3:
        raise ValueError("Lotka-Volterra maps need d >= 3")
    V = _xvars(d)
    W = V.extend("t")
    x = [RatFunc.var(n, W) for n in V]
    t = RatFunc.var("t", W)
    X = [t]
    for j in range(1, d):
        X.append(x[j] * (1 - x[(j + 1) % d]) / (1 - X[j - 1]))
    closure = X[0] * (1 - X[d - 1]) - x[0] * (1 - x[1])
    spurious = MPoly.var("t", W) + MPoly.var("x2", W) - 1
    linear = closure.num.exact_div(spurious)
    if linear.degree("t") != 1:
        raise ConstructionError(f"closure for d={d} is not linear after removing t = 1 - x2")
    parts = linear.coefficients_in(["t"])
    slope, offset = parts.get((1,)), parts.get((0,), MPoly.zero(W))
    t_val = RatFunc(-offset, slope)
    comps = tuple(Xj.compose({"t": t_val}, W).to_vars(V) for Xj in X)
    if any(not r.is_zero() for r in lv_relation_residuals(comps)):
        raise ConstructionError(f"lv_map({d}) violates the defining relation")
    return RationalMap(f"lv{d}", V, comps)


def _lv_p(d: int, V: VarTable) -> list[MPoly]:
    x = MPoly.gens(V)
    return [x[j] * (1 - x[(j - 1) % d]) for j in range(d)]


def _det(M: list[list[MPoly]]) -> MPoly:
    """Fraction-free Bareiss determinant."""
    n = len(M)
    A = [row[:] for row in M]
    sign = 1
    prev = MPoly.const(1, A[0][0].vars)
    for k in range(n - 1):
        if A[k][k].is_zero():
            for i in range(k + 1, n):
                if not A[i][k].is_zero():
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return MPoly.zero(prev.vars)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]).exact_div(prev)
        prev = A[k][k]
    return A[n - 1][n - 1] * sign


def lv_charpoly_coefficients(d: int) -> list[MPoly]:
    """H_0..H_d with det(A - lam) = (-1)^(d-1) sum_k H_k (lam - 1)^k.

    A = L R is the Lax matrix whose sub-diagonal carries p_j = x_j (1 - x_{j-1}).
    """
    if d < 3:
        raise ValueError("need d >= 3")
    V = _xvars(d).extend("mu")
    p = _lv_p(d, V)
    one = MPoly.const(1, V)
    zero = MPoly.zero(V)
    mu = MPoly.var("mu", V)
    A = [[zero] * d for _ in range(d)]
    A[0][0], A[0][d - 2], A[0][d - 1] = one, p[d - 1], one
    A[1][0], A[1][1], A[1][d - 1] = one, one, p[0]
    for i in range(2, d):
        A[i][i - 2], A[i][i - 1], A[i][i] = p[i - 1], one, one
    # lam = mu + 1
    M = [[A[i][j] - (mu + 1 if i == j else zero) for j in range(d)] for i in range(d)]
    D = _det(M) * (-1) ** (d - 1)
    parts = D.coefficients_in(["mu"])
    X = _xvars(d)
    return [parts.get((k,), MPoly.zero(V)).to_vars(X) for k in range(d + 1)]


def lv_invariants_combinatorial(d: int) -> list[MPoly]:
    """H_1..H_[d/2]: sums of p_j products over index sets without cyclic neighbours."""
    V = _xvars(d)
    p = _lv_p(d, V)
    out = []
    for k in range(1, d // 2 + 1):
        total = MPoly.zero(V)
        for js in itertools.combinations(range(d), k):
            if any((b - a) % d in (1, d - 1) for a, b in itertools.combinations(js, 2)):
                continue
            term = MPoly.const(1, V)
            for j in js:
                term = term * p[j]
            total = total + term
        out.append(total)
    return out


def lv_invariants(d: int) -> list[RatFunc]:
    """[H_1, ..., H_[d/2], r] from the characteristic polynomial of the Lax matrix."""
    coeffs = lv_charpoly_coefficients(d)
    V = _xvars(d)
    r = MPoly.const(1, V)
    for g in MPoly.gens(V):
        r = r * g
    return [RatFunc(h) for h in coeffs[1:d // 2 + 1]] + [RatFunc(r)]


def _lv_catalog(d: int) -> RationalMap:
    m = lv_map(d)
    V = m.vars
    if d == 3:
        inv = [("r", "x1*x2*x3"), ("s", "(1-x1)*(1-x2)*(1-x3)")]
        return m.with_invariants((n, parse(e, V)) for n, e in inv)
    if d == 4:
        inv = [("r", "x1*x2*x3*x4"),
               ("H1", "x1+x2+x3+x4-x1*x4-x2*x1-x3*x2-x4*x3"),
               ("H2", "x1*x3+x2*x4-x2*x3*x4-x3*x4*x1-x4*x1*x2-x1*x2*x3+2*x1*x2*x3*x4")]
        return m.with_invariants((n, parse(e, V)) for n, e in inv)
    hs = lv_invariants(d)
    names = [f"H{k}" for k in range(1, d // 2 + 1)] + ["r"]
    if d == 5:
        # the published d=5 varieties use H1 with the opposite overall sign
        hs = [-hs[0]] + hs[1:]
    return m.with_invariants(zip(names, hs))


# ---------------------------------------------------------------------------
# Toda, q-Painleve, QRT, lift


def toda_map() -> RationalMap:
    V = VarTable(["i1", "i2", "i3", "v1", "v2", "v3"])
    A = "(i3*v1+i3*i1+v3*v1)"
    B = "(i1*v2+i1*i2+v1*v2)"
    C = "(i2*v3+i2*i3+v2*v3)"
    comps = [f"i2*{A}/{C}", f"i3*{B}/{A}", f"i1*{C}/{B}",
             f"v1*{C}/{A}", f"v2*{A}/{B}", f"v3*{B}/{C}"]
    inv = [("t1", "i1+i2+i3+v1+v2+v3"),
           ("t2", "i1*i2+i2*i3+i3*i1+v1*v2+v2*v3+v3*v1+i1*v2+i2*v3+i3*v1"),
           ("t3", "i1*i2*i3"),
           ("t3p", "v1*v2*v3")]
    return RationalMap("toda3", V, tuple(parse(c, V) for c in comps),
                       tuple((n, parse(e, V)) for n, e in inv))


def _as_fractions(vals) -> list[Fraction]:
    out = [Fraction(v) for v in vals]
    if any(v == 0 for v in out):
        raise ValueError("parameters must be nonzero")
    return out


def qp4_map(a1=1, a2=1, a3=1) -> RationalMap:
    """Symmetric q-Painleve IV map."""
    a = _as_fractions([a1, a2, a3])
    V = _xvars(3)
    x = [RatFunc.var(n, V) for n in V]

    def block(i):  # 1 - a_i x_i + a_i a_{i+1} x_i x_{i+1}
        j = (i + 1) % 3
        return 1 - a[i] * x[i] + a[i] * a[j] * x[i] * x[j]

    comps = []
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        comps.append(a[i] * a[j] * x[j] * block(k) / block(i))
    inv = []
    if a[0] * a[1] * a[2] == 1:
        inv.append(("r", parse("x1*x2*x3", V)))
    if all(v == 1 for v in a):
        inv.append(("s", parse("(1-x1)*(1-x2)*(1-x3)", V)))
    return RationalMap("qp4", V, tuple(comps), tuple(inv),
                       {f"alpha{i + 1}": v for i, v in enumerate(a)})


def qp5_map(a1=1, a2=1, a3=1, a4=1) -> RationalMap:
    """Symmetric q-Painleve V map."""
    a = _as_fractions([a1, a2, a3, a4])
    V = _xvars(4)
    x = [RatFunc.var(n, V) for n in V]

    def block(i):  # 1 - a_i x_i + a_i a_j x_i x_j - a_i a_j a_k x_i x_j x_k
        j, k = (i + 1) % 4, (i + 2) % 4
        return (1 - a[i] * x[i] + a[i] * a[j] * x[i] * x[j]
                - a[i] * a[j] * a[k] * x[i] * x[j] * x[k])

    comps = []
    for i in range(4):
        j, k = (i + 1) % 4, (i + 2) % 4
        comps.append(a[i] * a[j] * x[j] * block(k) / block(i))
    inv = []
    if a[0] * a[1] * a[2] * a[3] == 1:
        inv.append(("r", parse("x1*x2*x3*x4", V)))
    if all(v == 1 for v in a):
        inv.append(("s", parse("(1-x1)*(1-x2)*(1-x3)*(1-x4)", V)))
        inv.append(("t", parse("(1-x2*x4)*(1-x1*x3)", V)))
    return RationalMap("qp5", V, tuple(comps), tuple(inv),
                       {f"alpha{i + 1}": v for i, v in enumerate(a)})


def biquadratic_form(q: Sequence, u: RatFunc, v: RatFunc) -> RatFunc:
    """a u^2 v^2 + b (u + v) u v + c (u - v)^2 + d u v + e (u + v) + f."""
    a, b, c, d, e, f = q
    return (a * u * u * v * v + b * (u + v) * u * v + c * (u - v) * (u - v)
            + d * u * v + e * (u + v) + f)


def qrt_map(qp: Sequence, qpp: Sequence) -> RationalMap:
    """Symmetric QRT map built from two coefficient six-tuples."""
    qp = [Fraction(c) for c in qp]
    qpp = [Fraction(c) for c in qpp]
    if len(qp) != 6 or len(qpp) != 6:
        raise ValueError("QRT parameters are two six-tuples")
    V = VarTable(["x", "y"])
    x, y = RatFunc.var("x", V), RatFunc.var("y", V)

    def phi(q, z):
        return q[0] * z * z + q[1] * z + q[2]

    def eta(q, z):
        return q[1] * z * z + (q[3] - 2 * q[2]) * z + q[4]

    def rho(q, z):
        return q[2] * z * z + q[4] * z + q[5]

    num = (eta(qp, y) * rho(qpp, y) - rho(qp, y) * eta(qpp, y)
           - x * (rho(qp, y) * phi(qpp, y) - phi(qp, y) * rho(qpp, y)))
    den = (rho(qp, y) * phi(qpp, y) - phi(qp, y) * rho(qpp, y)
           - x * (phi(qp, y) * eta(qpp, y) - eta(qp, y) * phi(qpp, y)))
    if den.is_zero():
        raise DegenerateMap("QRT denominator vanishes identically")
    H_den = biquadratic_form(qpp, x, y)
    if H_den.is_zero():
        raise DegenerateMap("QRT invariant has zero denominator (q'' = 0)")
    Y = num / den
    if Y.is_constant():
        raise DegenerateMap("QRT map is constant")
    H = -biquadratic_form(qp, x, y) / H_den
    params = {f"q1_{i}": c for i, c in enumerate(qp)} | {f"q2_{i}": c for i, c in enumerate(qpp)}
    return RationalMap("qrt", V, (y, Y), (("h", H),), params)


def lift_example(a=0, b=0, c=0) -> RationalMap:
    """2d map with invariant y(1+bx)/(1+cx) reducing to x -> h(x+a)(1+cx)/(1+bx)."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    V = VarTable(["x", "y"])
    x, y = RatFunc.var("x", V), RatFunc.var("y", V)
    X = (x + a) * y
    Y = y * (1 + b * x) * (1 + c * y * (x + a)) / ((1 + c * x) * (1 + b * y * (x + a)))
    H = y * (1 + b * x) / (1 + c * x)
    return RationalMap("lift2", V, (X, Y), (("h", H),), {"a": a, "b": b, "c": c})


# ---------------------------------------------------------------------------
# checks and iteration


class _FactoredImage:
    """Evaluate polynomials at the map components without normalizing.

    Component denominators form a factor base; every component is stored as
    a numerator cofactor times a signed exponent vector over that base, so a
    polynomial image is one numerator over a product of base powers and no
    multivariate gcd of large intermediates is ever needed.
    """

    def __init__(self, m: RationalMap):
        self.vars = m.vars
        base: list[MPoly] = []
        for f in m.components:
            if not f.den.is_constant() and f.den not in base:
                base.append(f.den)
        self.base = base
        self.cofactor: list[MPoly] = []
        self.expo: list[list[int]] = []
        for f in m.components:
            num, den = f.num, f.den
            e = [0] * len(base)
            if not den.is_constant():
                e[base.index(den)] -= 1
            else:
                num = num / den.constant_value()
            for i, b in enumerate(base):
                while not num.is_zero() and b.divides(num):
                    num = num.exact_div(b)
                    e[i] += 1
            self.cofactor.append(num)
            self.expo.append(e)
        self._pow: dict[tuple[str, int, int], MPoly] = {}

    def _power(self, kind: str, i: int, k: int) -> MPoly:
        key = (kind, i, k)
        if key not in self._pow:
            src = self.cofactor if kind == "c" else self.base
            self._pow[key] = src[i] if k == 1 else \
                self._power(kind, i, k // 2) * self._power(kind, i, k - k // 2)
        return self._pow[key]

    def _base_product(self, e: Sequence[int]) -> MPoly:
        out = MPoly.const(1, self.vars)
        for i, k in enumerate(e):
            if k:
                out = out * self._power("b", i, k)
        return out

    def _strip(self, num: MPoly, e: list[int]) -> tuple[MPoly, list[int]]:
        for i, k in enumerate(e):
            while k < 0 and not num.is_zero() and self.base[i].divides(num):
                num = num.exact_div(self.base[i])
                k += 1
            e[i] = k
        return num, e

    def image(self, p: MPoly) -> tuple[MPoly, list[int]]:
        """(A, L) with p(F(x)) = A / prod base_i^L_i.

        Terms are merged cheapest-first (smallest common denominator) and
        base factors are cancelled after every merge, which keeps partial
        sums small when the image collapses to something simple.
        """
        groups: dict[tuple[int, ...], MPoly] = {}
        for exp, c in p.terms():
            e = [0] * len(self.base)
            num = MPoly.const(c, self.vars)
            for j, k in enumerate(exp):
                if k:
                    num = num * self._power("c", j, k)
                    e = [a + k * b for a, b in zip(e, self.expo[j])]
            pos = [max(k, 0) for k in e]
            num = num * self._base_product(pos)
            key = tuple(min(k, 0) for k in e)
            groups[key] = groups.get(key, MPoly.zero(self.vars)) + num
        weight = [b.total_degree() for b in self.base]
        items = [self._strip(num, list(e)) for e, num in groups.items()]
        items = [(n, e) for n, e in items if not n.is_zero()]

        def cost(e1, e2):
            return sum(w * max(-a, -b) for w, a, b in zip(weight, e1, e2))

        while len(items) > 1:
            _, i, j = min((cost(items[i][1], items[j][1]), i, j)
                          for i in range(len(items)) for j in range(i + 1, len(items)))
            (n1, e1), (n2, e2) = items[i], items[j]
            lo = [min(a, b) for a, b in zip(e1, e2)]
            num = (n1 * self._base_product([a - c for a, c in zip(e1, lo)])
                   + n2 * self._base_product([b - c for b, c in zip(e2, lo)]))
            del items[j], items[i]
            if not num.is_zero():
                items.append(self._strip(num, lo))
        if not items:
            return MPoly.zero(self.vars), [0] * len(self.base)
        num, e = items[0]
        return num, [-k for k in e]


def check_invariant(m: RationalMap, H: RatFunc, image: _FactoredImage | None = None) -> bool:
    """Exact test H(F(x)) == H(x) by cross-multiplying cleared numerators."""
    image = image or _FactoredImage(m)
    A, la = image.image(H.num)
    B, lb = image.image(H.den)
    shift = [a - b for a, b in zip(la, lb)]
    pos = image._base_product([max(k, 0) for k in shift])
    neg = image._base_product([max(-k, 0) for k in shift])
    # A/b^la * den == B/b^lb * num  <=>  A * den * b^(lb-la)^+ == B * num * b^(la-lb)^+
    return A * H.den * neg == B * H.num * pos


def verify_invariants(m: RationalMap) -> dict[str, bool]:
    """Exact test H(F(x)) == H(x) for every attached invariant."""
    image = _FactoredImage(m)
    return {name: check_invariant(m, H, image) for name, H in m.invariants}


def iterate_numeric(m: RationalMap, x0, n: int,
                    threshold: float = DEFAULT_POLE_THRESHOLD) -> np.ndarray:
    """Trajectory x0, F(x0), ..., F^n(x0) as an (n+1, d) complex array."""
    x = np.asarray(x0, dtype=complex)
    if x.shape != (m.dim,) or not np.all(np.isfinite(x)):
        raise ValueError("start point must be a finite vector of the map's dimension")
    out = np.empty((n + 1, m.dim), dtype=complex)
    out[0] = x
    for k in range(1, n + 1):
        try:
            x = m(x, threshold)
        except PoleError as e:
            raise PoleEncountered(k, str(e)) from None
        if not np.all(np.isfinite(x)):
            raise PoleEncountered(k, "non-finite image")
        out[k] = x
    return out


def compose_symbolic(m: RationalMap, n: int, degree_cap: int = 200) -> RationalMap:
    """Exact n-fold composition F∘...∘F."""
    if n < 1:
        raise ValueError("n must be >= 1")
    comps = list(m.components)
    for k in range(2, n + 1):
        comps = [f.compose(comps, m.vars) for f in m.components]
        deg = max(f.total_degree() for f in comps)
        if deg > degree_cap:
            raise DegreeCapExceeded(f"degree {deg} after {k} steps exceeds cap {degree_cap}")
    return RationalMap(f"{m.label}^{n}", m.vars, tuple(comps), m.invariants, m.params)


# ---------------------------------------------------------------------------
# catalog and map-spec files

CATALOG_LABELS = ("lv3", "lv4", "lv5", "lvN", "toda3", "qp4", "qp5", "qrt", "lift2")

DEFAULT_QRT = ((0, 1, 0, 2, 1, 0), (1, 0, 1, 0, 0, 1))


def get_map(label: str, **params) -> RationalMap:
    """Build a catalog map by label (``lv6`` etc. resolve through ``lvN``)."""
    if label.startswith("lv") and label[2:].isdigit():
        return _lv_catalog(int(label[2:]))
    if label == "toda3":
        return toda_map()
    if label == "qp4":
        return qp4_map(*params.get("alpha", (1, 1, 1)))
    if label == "qp5":
        return qp5_map(*params.get("alpha", (1, 1, 1, 1)))
    if label == "qrt":
        q1, q2 = params.get("q1", DEFAULT_QRT[0]), params.get("q2", DEFAULT_QRT[1])
        return qrt_map(q1, q2)
    if label == "lift2":
        return lift_example(*params.get("abc", (0, 0, 0)))
    raise KeyError(f"unknown map label {label!r}; known: {', '.join(CATALOG_LABELS)}")


def map_to_spec(m: RationalMap) -> dict:
    return {
        "label": m.label,
        "vars": list(m.vars.names),
        "components": [str(f) for f in m.components],
        "invariants": [str(f) for _, f in m.invariants],
        "invariant_names": list(m.invariant_names),
        "params": {k: str(v) for k, v in m.params.items()},
    }


def map_from_spec(spec: Mapping) -> RationalMap:
    """Parse the JSON map-spec schema.

    ``params`` values may be referenced by name inside the expressions; they
    are substituted as exact rationals.
    """
    V = VarTable(spec["vars"])
    params = {k: Fraction(v) for k, v in spec.get("params", {}).items()}
    P = V.extend(*[k for k in params if k not in V])

    def read(expr):
        f = parse(expr, P)
        if params:
            f = f.subs({k: v for k, v in params.items() if k not in V})
        return f.to_vars(V)

    comps = tuple(read(e) for e in spec["components"])
    invs = [read(e) for e in spec.get("invariants", [])]
    names = spec.get("invariant_names") or [f"H{i + 1}" for i in range(len(invs))]
    if len(names) != len(invs):
        raise ValueError("invariant_names and invariants differ in length")
    return RationalMap(spec.get("label", "custom"), V, comps, tuple(zip(names, invs)), params)


def load_map_spec(path) -> RationalMap:
    with open(path) as fh:
        return map_from_spec(json.load(fh))
