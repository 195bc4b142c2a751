"""Degree-2 normal form z -> z (lam' + z) / (1 + lam z) and its periodic points."""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from math import isclose

import flint
import mpmath
import numpy as np

from .maps import DegreeCapExceeded, RationalMap
from .poly import RatFunc, VarTable

DEFAULT_CAP = 9
PUBLISHED_COUNTS = {2: 2, 3: 6, 4: 12, 5: 30, 6: 48, 7: 126, 8: 240, 9: 504}


class RootFinderError(RuntimeError):
    def __init__(self, message: str, residual: float):
        self.residual = residual
        super().__init__(f"{message} (worst residual {residual:.3e})")


@dataclass(frozen=True)
class NormalFormMap:
    lam: complex
    lam_prime: complex

    def __post_init__(self):
        if not (cmath.isfinite(complex(self.lam)) and cmath.isfinite(complex(self.lam_prime))):
            raise ValueError("parameters must be finite")

    @property
    def integrable(self) -> bool:
        """lam * lam' == 1: numerator and denominator share the root -lam'."""
        prod = complex(self.lam) * complex(self.lam_prime)
        return isclose(prod.real, 1.0, abs_tol=1e-15) and abs(prod.imag) < 1e-15

    def __call__(self, z: complex) -> complex:
        lam, lp = complex(self.lam), complex(self.lam_prime)
        den = 1 + lam * z
        num = z * (lp + z)
        if abs(den) < 1e-300 or abs(den) < 1e-14 * (1 + abs(num)):
            raise ZeroDivisionError("pole of the normal form")
        return num / den

    def fixed_points(self) -> list[complex]:
        lam, lp = complex(self.lam), complex(self.lam_prime)
        pts = [0j]
        if lam != 1:
            pts.append((1 - lp) / (1 - lam))
        return pts


def mobius_count(n: int) -> int:
    """sum_{d | n} mu(n/d) (2^d + 1): points of exact period n on the sphere."""
    def mu(k):
        out, p = 1, 2
        while p * p <= k:
            if k % p == 0:
                k //= p
                if k % p == 0:
                    return 0
                out = -out
            p += 1
        return -out if k > 1 else out
    return sum(mu(n // d) * (2**d + 1) for d in range(1, n + 1) if n % d == 0)


def _nf_pieces(a, b, c, h):
    qp2 = (1 - h - h * a * c) ** 2 + 4 * a * h * (b - h * c)
    q = cmath.sqrt(qp2)
    k = 2 * h * c - a * b * c * h - b - b * h
    return qp2, q, k


def to_normal_form(a: complex, b: complex, c: complex, h: complex) -> tuple[complex, complex]:
    """(lam, lam') for x -> h (x + a)(1 + c x) / (1 + b x).

    lam and lam' are the multipliers at the two finite fixed points, whose
    discriminant is q^2 = (1 - h - hac)^2 + 4ah(b - hc); q is its principal root.
    """
    qp2, q, k = _nf_pieces(complex(a), complex(b), complex(c), complex(h))
    d1 = b * qp2 - k * q
    d2 = b * qp2 + k * q
    scale = abs(b * qp2) + abs(k * q)
    if abs(d1) <= 1e-12 * scale or abs(d2) <= 1e-12 * scale:
        raise ZeroDivisionError("normal-form change of variables is singular")
    return ((2 * c * h - b) * qp2 - k * q) / d1, ((2 * c * h - b) * qp2 + k * q) / d2


def nf_conjugacy(a: complex, b: complex, c: complex, h: complex) -> np.ndarray:
    """2x2 matrix of the Moebius change x = (m00 z + m01) / (m10 z + m11) into the normal form."""
    a, b, c, h = (complex(v) for v in (a, b, c, h))
    qp2, q, k = _nf_pieces(a, b, c, h)
    u = 1 - h + 2 * h * a * b - h * a * c
    M = np.array([[u * q - qp2, u * q + qp2], [k * q + b * qp2, k * q - b * qp2]])
    if abs(np.linalg.det(M)) < 1e-14 * (1 + abs(M).max() ** 2):
        raise ZeroDivisionError("normal-form change of variables is singular")
    return M


def iterate_nf(m: NormalFormMap, z: complex, n: int) -> complex:
    for _ in range(n):
        z = m(z)
    return z


def _is_rational(v) -> bool:
    return isinstance(v, (int, Fraction, str)) or (
        isinstance(v, float) and v.is_integer())


def _fmpq(v) -> flint.fmpq:
    v = Fraction(v)
    return flint.fmpq(v.numerator, v.denominator)


def _exact_iterate(m: NormalFormMap, n: int):
    """Numerator and denominator of Z^(n) as ``fmpq_poly``, composed without cancellation."""
    lam, lp = _fmpq(m.lam), _fmpq(m.lam_prime)
    z = flint.fmpq_poly([0, 1])
    N, D = z * (z + lp), 1 + lam * z
    for _ in range(n - 1):
        N, D = N * (lp * D + N), D * (D + lam * N)
    return N, D


def nf_numerator_poly(m: NormalFormMap, n: int, cap: int = DEFAULT_CAP):
    """Cleared numerator N_n(z) - z D_n(z) of Z^(n)(z) - z, without cancellation.

    Exact ``flint.fmpq_poly`` for rational parameters, otherwise a numpy
    coefficient array in ascending order.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > cap:
        raise DegreeCapExceeded(f"n = {n} exceeds the degree cap {cap}")
    if _is_rational(m.lam) and _is_rational(m.lam_prime):
        N, D = _exact_iterate(m, n)
        return N - flint.fmpq_poly([0, 1]) * D
    lam, lp = complex(m.lam), complex(m.lam_prime)
    pm = np.polynomial.polynomial
    N, D = np.array([0, lp, 1], dtype=complex), np.array([1, lam], dtype=complex)
    for _ in range(n - 1):
        N, D = pm.polymul(N, pm.polyadd(lp * D, N)), pm.polymul(D, pm.polyadd(D, lam * N))
    return pm.polysub(N, pm.polymul([0, 1], D))


def dynatomic_poly(lam, lam_prime, n: int):
    """Exact factor of N_n - z D_n left after removing every lower-period root.

    Common factors of N_n and D_n are cancelled first; they only appear when
    lam lam' = 1 and carry no periodic points.
    """
    m = NormalFormMap(lam, lam_prime)
    z = flint.fmpq_poly([0, 1])
    divs = [d for d in range(1, n + 1) if n % d == 0]
    polys = {}
    for d in divs:
        N, D = _exact_iterate(m, d)
        g = N.gcd(D)
        polys[d] = N // g - z * (D // g)
    phi = polys[n]
    for d in divs[:-1]:
        while True:
            g = phi.gcd(polys[d])
            if g.degree() <= 0:
                break
            phi = phi // g
    return phi


def exact_period_count(lam, lam_prime, n: int) -> int:
    """Degree of the dynatomic polynomial for rational parameters (root-count oracle)."""
    return dynatomic_poly(lam, lam_prime, n).degree()


def dynatomic_roots(lam, lam_prime, n: int, prec: int = 200) -> list:
    """Certified roots of the exact dynatomic factor as FLINT ``acb`` balls, with multiplicity."""
    phi = dynatomic_poly(lam, lam_prime, n)
    if phi.degree() < 1:
        return []
    with flint.ctx.workprec(prec):
        return [z for z, mult in phi.complex_roots() for _ in range(mult)]


# ---------------------------------------------------------------------------
# numeric roots


def _eval_ratio(zs: np.ndarray, lam: complex, lp: complex, n: int):
    """P/P' at zs for P = N_n - z D_n, with joint rescaling each level."""
    N = zs * (lp + zs)
    D = 1 + lam * zs
    dN = lp + 2 * zs
    dD = np.full_like(zs, lam)
    for _ in range(n - 1):
        s = np.maximum.reduce([abs(N), abs(D), abs(dN), abs(dD)])
        s[s == 0] = 1
        N, D, dN, dD = N / s, D / s, dN / s, dD / s
        A = lp * D + N
        B = D + lam * N
        N, D, dN, dD = N * A, D * B, dN * A + N * (lp * dD + dN), dD * B + D * (dD + lam * dN)
    P = N - zs * D
    dP = dN - D - zs * dD
    with np.errstate(divide="ignore", invalid="ignore"):
        return P / dP, P


def _aberth(lam: complex, lp: complex, n: int, seed: int, radius: float,
            maxiter: int = 2000, tol: float = 1e-14):
    deg = 2**n
    rng = np.random.default_rng(seed)
    angles = 2 * np.pi * (np.arange(deg) + rng.random(deg) * 0.5) / deg
    zs = radius * (0.5 + rng.random(deg)) * np.exp(1j * angles)
    converged = np.zeros(deg, dtype=bool)
    for _ in range(maxiter):
        w, _ = _eval_ratio(zs, lam, lp, n)
        w = np.where(np.isfinite(w), w, 0)
        diff = zs[:, None] - zs[None, :]
        np.fill_diagonal(diff, 1)
        inv = 1 / diff
        np.fill_diagonal(inv, 0)
        corr = w / (1 - w * inv.sum(axis=1))
        corr = np.where(np.isfinite(corr), corr, 0)
        zs = zs - corr
        converged = abs(corr) < tol * (1 + abs(zs))
        if converged.all():
            break
    return zs, converged


def _polish(z: complex, lam: complex, lp: complex, n: int, dps: int = 40, steps: int = 60):
    with mpmath.workdps(dps):
        L, Lp = mpmath.mpc(lam), mpmath.mpc(lp)
        x = mpmath.mpc(z)
        for _ in range(steps):
            N, D = x * (Lp + x), 1 + L * x
            dN, dD = Lp + 2 * x, L
            for _ in range(n - 1):
                A, B = Lp * D + N, D + L * N
                N, D, dN, dD = N * A, D * B, dN * A + N * (Lp * dD + dN), dD * B + D * (dD + L * dN)
            P, dP = N - x * D, dN - D - x * dD
            if dP == 0:
                break
            step = P / dP
            x -= step
            if abs(step) < mpmath.mpf(10) ** (-dps + 5) * (1 + abs(x)):
                break
        return x


def _orbit_gaps(m: NormalFormMap, z, steps: list[int], extended: bool) -> dict[int, float]:
    """Relative return distance |Z^(k)(z) - z| / (1 + |z|) for each k in steps."""
    top = max(steps)
    out = {}
    if not extended:
        y = complex(z)
        for k in range(1, top + 1):
            y = m(y)
            if k in steps:
                out[k] = abs(y - z) / (1 + abs(z))
        return out
    with mpmath.workdps(40):
        L, Lp, x = mpmath.mpc(m.lam), mpmath.mpc(m.lam_prime), mpmath.mpc(z)
        y = x
        for k in range(1, top + 1):
            den = 1 + L * y
            if abs(den) < mpmath.mpf(10) ** -35:
                raise ZeroDivisionError("pole")
            y = y * (Lp + y) / den
            if k in steps:
                out[k] = float(abs(y - x) / (1 + abs(x)))
        return out


@dataclass
class PeriodicSet:
    period: int
    points: list[complex]
    residuals: list[float]
    deflated: dict[int, int] = field(default_factory=dict)
    rejected: int = 0
    extended: bool = False
    metadata: dict = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.points)


def periodic_points(m: NormalFormMap, n: int, tol: float = 1e-8, seed: int = 0,
                    cap: int = DEFAULT_CAP, deflation_radius: float = 1e-6,
                    extended: bool | None = None, _cache: dict | None = None) -> PeriodicSet:
    """Points of exact period n: Aberth roots of N_n - z D_n minus divisor periods.

    Every returned point satisfies |Z^(n)(z) - z| < tol (1 + |z|) under
    pointwise iteration and lies outside the deflation radius of every
    point of period m | n, m < n (fixed points included).
    """
    if n < 2 or n > cap:
        raise ValueError(f"period must satisfy 2 <= n <= {cap}")
    lam, lp = complex(m.lam), complex(m.lam_prime)
    if m.integrable and abs(lam**n - 1) < 1e-12:
        raise ValueError("lam^n = 1 with lam lam' = 1: every point is periodic")
    extended = (n >= 7) if extended is None else extended
    cache = _cache if _cache is not None else {}
    fossils = fossil_set(lam, n) if lam != 0 else []
    radius = 1.5 * max([1.0, abs(lp), 1 / max(abs(lam), 1e-12)] + [abs(f) for f in fossils])
    zs, conv = _aberth(lam, lp, n, seed, radius)
    zs = list(zs)
    if extended or not conv.all():
        zs = [_polish(z, lam, lp, n) for z in zs]
        extended = True
    lower: list[complex] = list(m.fixed_points())
    deflated = {1: 0}
    for d in range(2, n):
        if n % d == 0:
            if d not in cache:
                cache[d] = periodic_points(m, d, tol, seed, cap, deflation_radius, None, cache)
            lower.extend(cache[d].points)
            deflated[d] = 0
    pts, res = [], []
    rejected = 0
    proper = [d for d in range(1, n) if n % d == 0]
    kept = []
    for z in zs:
        zc = complex(z)
        if any(abs(zc - complex(w)) <= deflation_radius * (1 + abs(zc)) for w in kept):
            rejected += 1
            continue
        if any(abs(zc - w) <= deflation_radius * (1 + abs(w)) for w in lower):
            rejected += 1
            continue
        try:
            gaps = _orbit_gaps(m, z, proper + [n], extended)
            r = gaps[n]
            ok = r < tol and all(gaps[d] > deflation_radius for d in proper)
        except ZeroDivisionError:
            ok, r = False, float("inf")
        if ok:
            kept.append(z)
            pts.append(zc)
            res.append(r)
        else:
            rejected += 1
    order = sorted(range(len(pts)), key=lambda i: (round(pts[i].real, 9), round(pts[i].imag, 9)))
    pts = [pts[i] for i in order]
    res = [res[i] for i in order]
    predicted = 0 if m.integrable else mobius_count(n)
    meta = {"predicted": predicted, "published": PUBLISHED_COUNTS.get(n)}
    meta["disputed"] = meta["published"] is not None and meta["published"] != mobius_count(n)
    cache[n] = PeriodicSet(n, pts, res, deflated, rejected, extended, meta)
    return cache[n]


# ---------------------------------------------------------------------------
# fossils, inverse branches, collapse


def fossil_set(lam: complex, n: int) -> list[complex]:
    """-1/lam, -1, -lam, ..., -lam^(n-2)."""
    if lam == 0:
        raise ValueError("lam must be nonzero")
    return [-(lam**k) for k in range(-1, n - 1)]


def fossil_distance(ps: PeriodicSet, lam: complex) -> float:
    """Directed Hausdorff distance from the periodic points to the fossil set."""
    fossils = fossil_set(lam, ps.period)
    if not ps.points:
        return 0.0
    return max(min(abs(z - f) for f in fossils) for z in ps.points)


def inverse_branches(m: NormalFormMap, Z: complex) -> tuple[complex, complex]:
    lam, lp = complex(m.lam), complex(m.lam_prime)
    root = cmath.sqrt((lam * Z + lp) ** 2 + 4 * (1 - lam * lp) * Z)
    return (lam * Z - lp + root) / 2, (lam * Z - lp - root) / 2


@dataclass
class JuliaSample:
    points: list[complex]
    critical_hits: int


def julia_sample(m: NormalFormMap, start: complex, steps: int, seed: int = 0) -> JuliaSample:
    """Backward orbit choosing a branch uniformly at random at every step."""
    rng = np.random.default_rng(seed)
    z = complex(start)
    out, hits = [], 0
    for _ in range(steps):
        b0, b1 = inverse_branches(m, z)
        if abs(b0 - b1) < 1e-14 * (1 + abs(b0)):
            hits += 1
        z = b0 if rng.random() < 0.5 else b1
        out.append(z)
    return JuliaSample(out, hits)


@dataclass
class CollapseRow:
    eps: float
    n: int
    count: int
    fossil_distance: float


def collapse(lam: complex, eps_list, n: int, seed: int = 0) -> list[CollapseRow]:
    """Periodic points for lam' = (1 + eps)/lam as eps -> 0.

    Rational lam and eps go through the exact dynatomic factor, since the
    clusters near the fossils shrink faster than eps and defeat a numeric
    deflation radius. Other parameters fall back to the extended root finder.
    """
    rows = []
    for eps in eps_list:
        if _is_rational(lam) and isinstance(eps, (int, float, Fraction, str)):
            e = Fraction(str(eps)) if isinstance(eps, float) else Fraction(eps)
            lp = (1 + e) / Fraction(lam)
            roots = dynatomic_roots(Fraction(lam), lp, n)
            with flint.ctx.workprec(200):
                L = flint.acb(flint.fmpq(*Fraction(lam).as_integer_ratio()))
                Lp = flint.acb(flint.fmpq(lp.numerator, lp.denominator))
                res = []
                for z in roots:
                    y = z
                    for _ in range(n):
                        y = y * (Lp + y) / (1 + L * y)
                    res.append(float(abs(y - z).mid() / (1 + abs(z).mid())))
            roots.sort(key=lambda z: (complex(z).real, complex(z).imag))
            ps = PeriodicSet(n, [complex(z) for z in roots], res, extended=True)
        else:
            m = NormalFormMap(lam, (1 + eps) / lam)
            ps = periodic_points(m, n, seed=seed, extended=True,
                                 deflation_radius=min(1e-6, 1e-3 * abs(eps)))
        rows.append(CollapseRow(float(eps), n, ps.count, fossil_distance(ps, lam)))
    return rows


def normal_form_map(lam, lam_prime) -> RationalMap:
    """The normal form as an exact one-dimensional RationalMap (rational parameters)."""
    V = VarTable(["z"])
    z = RatFunc.var("z", V)
    lam, lp = Fraction(lam), Fraction(lam_prime)
    return RationalMap("nf", V, (z * (lp + z) / (1 + lam * z),), (), {"lam": lam, "lam_prime": lp})
