"""Parameter recursion for iterates of x -> h (x + a) / (1 + b x)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .maps import RationalMap
from .poly import MPoly, RatFunc, VarTable, gcd_many

ABH = VarTable(["a", "b", "h"])


class DegenerateFamily(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class MoebiusParams:
    a: RatFunc
    b: RatFunc
    h: RatFunc

    @classmethod
    def symbolic(cls) -> "MoebiusParams":
        return cls(*(RatFunc.var(n, ABH) for n in ABH))

    def __iter__(self):
        return iter((self.a, self.b, self.h))


def step(cur: MoebiusParams, base: MoebiusParams) -> MoebiusParams:
    """Parameters of base∘cur: one more application of the base map."""
    a, b, h = base
    an, bn, hn = cur
    d1 = hn + a * bn
    d2 = 1 + b * hn * an
    if d1.is_zero() or d2.is_zero():
        raise DegenerateFamily("recursion denominator vanishes identically")
    return MoebiusParams((a + an * hn) / d1, (bn + b * hn) / d2, h * d1 / d2)


def iterate_params(n: int, base: MoebiusParams | None = None) -> MoebiusParams:
    base = base or MoebiusParams.symbolic()
    cur = base
    for _ in range(n - 1):
        cur = step(cur, base)
    return cur


def _strip_shared(g: MPoly, p: MPoly) -> MPoly:
    while True:
        c = g.gcd(p)
        if c.is_constant():
            return g
        g = g.exact_div(c)


@lru_cache(maxsize=None)
def periodicity_poly(n: int) -> MPoly:
    """gamma_n(a, b, h): vanishing makes the n-fold iterate the identity.

    The n-fold iterate is the identity exactly when a^(n) = b^(n) = 0 and
    h^(n) = 1, so gamma_n is the gcd of those numerators with every
    gamma_m for a proper divisor m removed.
    """
    if n < 2:
        raise ValueError("period must be at least 2")
    p = iterate_params(n)
    g = gcd_many([p.a.num, p.b.num, (p.h - 1).num])
    for m in range(2, n):
        if n % m == 0:
            g = _strip_shared(g, periodicity_poly(m))
    return g.normalize()


def identity_modulo(n: int, gamma: MPoly | None = None) -> bool:
    """True if gamma divides the numerators of a^(n), b^(n) and h^(n) - 1."""
    gamma = gamma if gamma is not None else periodicity_poly(n)
    p = iterate_params(n)
    return all(gamma.divides(f.num) for f in (p.a, p.b, p.h - 1))


def moebius_map(a, b, h) -> RationalMap:
    V = VarTable(["x"])
    x = RatFunc.var("x", V)
    a, b, h = Fraction(a), Fraction(b), Fraction(h)
    return RationalMap("moebius", V, (h * (x + a) / (1 + b * x),), (),
                       {"a": a, "b": b, "h": h})


def h_roots(n: int, a: complex, b: complex) -> np.ndarray:
    """Roots in h of gamma_n at fixed (a, b)."""
    g = periodicity_poly(n)
    deg = g.degree("h")
    coeffs = np.zeros(deg + 1, dtype=complex)
    for (ea, eb, eh), c in g.terms():
        coeffs[deg - eh] += float(c) * a**ea * b**eb
    while len(coeffs) > 1 and coeffs[0] == 0:
        coeffs = coeffs[1:]
    return np.roots(coeffs)


def apply(x: complex, a: complex, b: complex, h: complex, n: int) -> complex:
    for _ in range(n):
        x = h * (x + a) / (1 + b * x)
    return x


@dataclass
class MoebiusCheck:
    period: int
    a: complex
    b: complex
    h: complex
    x: complex
    residual: float
    divisor_margin: float
    ok: bool


def numeric_suite(n: int, samples: int = 20, starts: int = 5, seed: int = 0,
                  tol: float = 1e-9, guard: float = 1e-4) -> list[MoebiusCheck]:
    """Random rational (a, b); h from gamma_n = 0; random starts iterated n times."""
    rng = np.random.default_rng([seed, n])
    out = []
    divisors = [m for m in range(1, n) if n % m == 0]
    while len(out) < samples * starts:
        a = Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 6)))
        b = Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 6)))
        roots = [h for h in h_roots(n, complex(a), complex(b))
                 if abs(h) > 1e-6 and abs(1 - a * b) > 1e-6]
        if not roots:
            continue
        h = roots[int(rng.integers(len(roots)))]
        for _ in range(starts):
            x = complex(*rng.normal(size=2))
            try:
                xn = apply(x, complex(a), complex(b), h, n)
                margin = min(abs(apply(x, complex(a), complex(b), h, m) - x) for m in divisors)
            except ZeroDivisionError:
                continue
            res = abs(xn - x) / (1 + abs(x))
            out.append(MoebiusCheck(n, complex(a), complex(b), complex(h), x, res, margin,
                                    res < tol and margin > guard))
    return out[:samples * starts]
