"""Biquadratic correspondence S(X, x; q) = 0 and its iterated parameters.

S(X,x;q) = a X^2 x^2 + b (X+x) X x + c (X-x)^2 + d X x + e (X+x) + f.

The n-th iterate of the correspondence is again biquadratic with parameters
q^(n); once q^(n) becomes proportional to q along a hypersurface gamma = 0 in
parameter space, every point of the curve is periodic.  Periods are labelled
so that gamma of period n makes the n-fold iterate the identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .parse import parse_poly
from .poly import MPoly, VarTable, content_strip, gcd_many

NAMES = ("a", "b", "c", "d", "e", "f")
IMAGE_VARS = ("Q", "x")


class DegenerateChain(ArithmeticError):
    pass


class InexactDivision(ArithmeticError):
    """A wedge-formula division left a remainder (wrong convention)."""


class ProportionalParams(ValueError):
    pass


@dataclass(frozen=True)
class BiquadParams:
    entries: tuple[MPoly, ...]

    def __post_init__(self):
        if len(self.entries) != 6:
            raise ValueError("biquadratic parameters are a six-tuple")
        v = self.entries[0].vars
        if any(e.vars != v for e in self.entries):
            raise ValueError("entries must share a variable table")

    @classmethod
    def of(cls, values: Sequence, vars: VarTable) -> "BiquadParams":
        out = []
        for val in values:
            if isinstance(val, MPoly):
                out.append(val.to_vars(vars))
            elif isinstance(val, str):
                out.append(parse_poly(val, vars))
            else:
                out.append(MPoly.const(Fraction(val), vars))
        return cls(tuple(out))

    @classmethod
    def generic(cls) -> "BiquadParams":
        v = VarTable(NAMES)
        return cls(tuple(MPoly.gens(v)))

    @property
    def vars(self) -> VarTable:
        return self.entries[0].vars

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def named(self) -> dict[str, MPoly]:
        return dict(zip(NAMES, self.entries))

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def strip(self) -> tuple["BiquadParams", MPoly]:
        if self.is_zero():
            raise DegenerateChain("all six parameters vanish")
        v, g = content_strip(list(self.entries))
        return BiquadParams(tuple(v)), g

    def subs(self, values) -> "BiquadParams":
        return BiquadParams(tuple(e.subs(values) for e in self.entries))

    def strings(self) -> list[str]:
        return [str(e) for e in self.entries]


def S_poly(q: BiquadParams, names: Sequence[str] = ("X", "x")) -> MPoly:
    """S(X, x; q) over q's symbols extended by the two curve variables."""
    clash = [n for n in names if n in q.vars]
    if clash:
        raise ValueError(f"curve variables {clash} collide with parameter symbols")
    V = q.vars.extend(*names)
    X, x = MPoly.var(names[0], V), MPoly.var(names[1], V)
    a, b, c, d, e, f = (g.to_vars(V) for g in q)
    return a * X**2 * x**2 + b * (X + x) * X * x + c * (X - x) ** 2 + d * X * x + e * (X + x) + f


def params_from_S(S: MPoly, q_vars: VarTable, names: Sequence[str] = ("X", "x")) -> BiquadParams:
    """Read q back from a symmetric biquadratic polynomial."""
    parts = S.coefficients_in(list(names))
    zero = MPoly.zero(S.vars)

    def co(i, j):
        return parts.get((i, j), zero)

    a, b, c = co(2, 2), co(2, 1), co(2, 0)
    d = co(1, 1) + 2 * c
    e, f = co(1, 0), co(0, 0)
    if not (co(1, 2) == b and co(0, 2) == c and co(0, 1) == e):
        raise ValueError("polynomial is not symmetric biquadratic")
    rebuilt = S_poly(BiquadParams(tuple(g.to_vars(q_vars) for g in (a, b, c, d, e, f))), names)
    if rebuilt != S.to_vars(rebuilt.vars):
        raise ValueError("polynomial is not of the biquadratic form")
    return BiquadParams(tuple(g.to_vars(q_vars) for g in (a, b, c, d, e, f)))


def step2(q: BiquadParams, strip: bool = True) -> BiquadParams:
    """Parameters of the two-step correspondence (raw if ``strip`` is False)."""
    a, b, c, d, e, f = q
    A = a * d - 2 * a * c - b**2
    B = b * e - c * d + 2 * c**2
    C = a * e - c * b
    D = b * f - c * e
    E = f * d - 2 * f * c - e**2
    F = a * f - c**2
    t = 2 * a * f - b * e + c * d - 4 * c**2
    out = BiquadParams((
        C**2 - A * B,
        C * t - A * D,
        F**2 - C * D,
        4 * F**2 - 2 * C * D - B**2 - A * E,
        D * t - E * C,
        D**2 - E * B,
    ))
    if out.is_zero():
        raise DegenerateChain("second iterate parameters vanish identically")
    return out.strip()[0] if strip else out


def _exact(num: MPoly, den: MPoly, what: str) -> MPoly:
    quo, rem = num.divmod(den)
    if not rem.is_zero():
        raise InexactDivision(f"{what}: remainder is nonzero")
    return quo


def _wedge_step(q: BiquadParams, qn: BiquadParams, qm: BiquadParams) -> BiquadParams:
    Q, N = q.named(), qn.named()
    am, bm, cm, dm, em, fm = qm

    def w(g, h):
        return Q[g] * N[h] - Q[h] * N[g]

    a, b, c, d, e, f = q
    an, bn, cn, dn, en, fn = qn
    A = _exact(w("a", "c") ** 2 - w("a", "b") * w("b", "c"), am, "a")
    B = _exact(bm * (w("a", "b") * w("b", "c") - w("a", "c") ** 2)
               + am * w("a", "c") * (w("a", "e") + 2 * w("b", "c"))
               - am * (w("a", "b") * w("b", "e") - w("a", "b") * w("c", "d")
                       + w("a", "d") * w("b", "c")) / 2, am**2, "b")
    C = _exact((c * en - b * fn) * (a * en - b * cn) + (c * bn - e * an) * (f * bn - e * cn)
               + (a * fn - c * cn) ** 2 + (f * an - c * cn) ** 2, 2 * cm, "c")
    F = _exact(w("f", "c") ** 2 - w("f", "e") * w("e", "c"), fm, "f")
    E = _exact(em * (w("f", "e") * w("e", "c") - w("f", "c") ** 2)
               + fm * w("f", "c") * (w("f", "b") + 2 * w("e", "c"))
               - fm * (w("f", "e") * w("e", "b") - w("f", "e") * w("c", "d")
                       + w("f", "d") * w("e", "c")) / 2, fm**2, "e")
    D = _exact(-fm * A - am * F - 4 * bm * E - 4 * em * B + w("a", "f") ** 2 + w("c", "d") ** 2
               - w("a", "b") * w("e", "f") - w("b", "c") * w("c", "e")
               + w("a", "d") * w("d", "f") + 2 * w("b", "e") * w("a", "f")
               - (3 * w("c", "e") - w("b", "f") - w("d", "e"))
               * (3 * w("b", "c") - w("a", "e") - w("b", "d"))
               + 2 * (w("a", "d") - w("a", "c")) * (w("c", "f") - w("d", "f"))
               + 2 * (w("b", "c") + w("a", "e")) * (w("b", "f") + w("c", "e")), dm, "d")
    return BiquadParams((A, B, C, D, E, F))


def _resultant_step(q: BiquadParams, qn: BiquadParams, qm: BiquadParams) -> BiquadParams:
    """Divide Res_X(S(Q,X;q^n), S(X,x;q)) by S(Q,x;q^(n-1)) and read q^(n+1)."""
    W = S_poly(qn, ("Q", "X")).to_vars(q.vars.extend("Q", "x", "X"))
    V = W.vars
    right = S_poly(q, ("X", "x")).to_vars(V)
    res = W.resultant(right, "X")
    known = S_poly(qm, ("Q", "x")).to_vars(V)
    quo = _exact(res, known, "resultant quotient")
    return params_from_S(quo.to_vars(q.vars.extend("Q", "x")), q.vars, ("Q", "x"))


def step_n(q: BiquadParams, qn: BiquadParams, qnm1: BiquadParams, *,
           fallback: bool = True, strip: bool = True) -> BiquadParams:
    """q^(n+1) from q, q^(n) and q^(n-1) via the wedge formulas.

    Every division is checked to be exact.  If one of the divisor entries of
    q^(n-1) is the zero polynomial the wedge formulas are unusable and, when
    ``fallback`` is set, the parameters are recovered from the resultant
    factorization instead.
    """
    am, _, cm, dm, _, fm = qnm1
    if any(g.is_zero() for g in (am, cm, dm, fm)):
        if not fallback:
            raise DegenerateChain("a divisor entry of q^(n-1) is identically zero")
        out = _resultant_step(q, qn, qnm1)
    else:
        out = _wedge_step(q, qn, qnm1)
    if out.is_zero():
        raise DegenerateChain("next parameters vanish identically")
    return out.strip()[0] if strip else out


def wedges(q: BiquadParams, qn: BiquadParams) -> list[MPoly]:
    return [q[i] * qn[j] - q[j] * qn[i] for i in range(6) for j in range(i + 1, 6)]


def extract_gamma(q: BiquadParams, qn: BiquadParams) -> MPoly:
    """Normalized gcd of the fifteen wedges g*g'^(n) - g'*g^(n)."""
    ws = [w for w in wedges(q, qn) if not w.is_zero()]
    if not ws:
        raise ProportionalParams("q^(n) is proportional to q: every wedge vanishes")
    return gcd_many(ws)


def check_decomposition(qn1: BiquadParams, gamma: MPoly, q: BiquadParams | None = None) -> bool:
    """True if S(Q,x;q^(n+1)) - c^(n+1)(Q-x)^2 = gamma K(Q,x) with K symmetric biquadratic.

    S - c(Q-x)^2 has coefficients a, b, d, e, f, so the identity holds
    exactly when gamma divides those five entries; K is then symmetric by
    construction.
    """
    a, b, c, d, e, f = qn1
    if gamma.is_zero():
        return False
    return all(gamma.divides(g) for g in (a, b, d, e, f))


def _divide_out(g: MPoly, p: MPoly) -> MPoly:
    """Remove from g every irreducible factor it shares with p."""
    while True:
        h = g.gcd(p)
        if h.is_constant():
            return g
        g = g.exact_div(h)


@dataclass
class TraceEntry:
    index: int
    params: BiquadParams
    content: MPoly


@dataclass
class GammaSeries:
    base: BiquadParams
    entries: dict[int, MPoly] = field(default_factory=dict)
    trace: list[TraceEntry] = field(default_factory=list)
    raw_wedge_gcd: dict[int, MPoly] = field(default_factory=dict)

    def __getitem__(self, n: int) -> MPoly:
        return self.entries[n]


def period2_gamma(q2: BiquadParams) -> MPoly:
    """Squarefree gcd of every entry of q^(2) except c.

    S(Q,x;q^(2)) collapsing to c^(2)(Q-x)^2 makes the two-step
    correspondence the identity.
    """
    a, b, _, d, e, f = q2
    nz = [g for g in (a, b, d, e, f) if not g.is_zero()]
    if not nz:
        return MPoly.const(0, q2.vars)
    return gcd_many(nz).squarefree_part()


def gamma_series(q: BiquadParams, n_max: int) -> GammaSeries:
    """gamma^(n) for 2 <= n <= n_max along the parameter chain.

    The wedge gcd of q^(n) against q vanishes when period n+1 or period n-1
    occurs, so the entry for period n+1 has every earlier gamma^(m) with m
    dividing n+1 or n-1 divided out.  All returned entries are squarefree.
    A constant entry means no invariant hypersurface of that period.
    """
    if n_max < 3:
        raise ValueError("n_max must be at least 3")
    base, content = q.strip()
    series = GammaSeries(base)
    series.trace.append(TraceEntry(1, base, content))
    q2, c2 = step2(base, strip=False).strip()
    series.trace.append(TraceEntry(2, q2, c2))
    series.entries[2] = period2_gamma(q2)
    chain = {1: base, 2: q2}
    for n in range(2, n_max):
        label = n + 1
        raw = extract_gamma(base, chain[n])
        series.raw_wedge_gcd[label] = raw
        g = raw
        for m, prev in sorted(series.entries.items()):
            if m < label and ((label % m == 0) or ((label - 2) % m == 0)) and not prev.is_zero():
                g = _divide_out(g, prev)
        series.entries[label] = g.squarefree_part()
        if label < n_max:
            nxt, cn = step_n(base, chain[n], chain[n - 1], strip=False).strip()
            chain[label] = nxt
            series.trace.append(TraceEntry(label, nxt, cn))
    return series


# ---------------------------------------------------------------------------
# reductions of catalog maps

RS = VarTable(["r", "s"])


def reduce_lv3() -> BiquadParams:
    return BiquadParams.of(["r+1", "s-2*r-1", "r-s", "s^2+r*s+5*r-2*s+1", "-r*(s+1)", "0"], RS)


def reduce_qp4() -> BiquadParams:
    return BiquadParams.of(["s+1", "-r-1", "0", "r^2+4*r+s*r-s+1", "-r^2-r", "r^2-r*s"], RS)


def reduce_qrt(qp: Sequence, qpp: Sequence, h: str = "h") -> BiquadParams:
    """q' + h q'' over the single invariant symbol ``h``."""
    V = VarTable([h])
    hv = MPoly.var(h, V)
    return BiquadParams(tuple(MPoly.const(Fraction(a), V) + hv * Fraction(b)
                              for a, b in zip(qp, qpp)))


def reduction(label: str) -> BiquadParams:
    if label == "lv3":
        return reduce_lv3()
    if label == "qp4":
        return reduce_qp4()
    if label == "generic":
        return BiquadParams.generic()
    raise KeyError(f"no biquadratic reduction for {label!r}")
