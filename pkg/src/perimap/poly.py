"""Exact sparse multivariate polynomials and rational functions over Q.

:class:`MPoly` is an immutable wrapper around a python-flint ``fmpq_mpoly``
bound to a :class:`VarTable` and a monomial order.  :class:`RatFunc` keeps a
reduced numerator/denominator pair.  Everything here is exact; the only
floating point entry points are :meth:`MPoly.eval_complex` and
:meth:`RatFunc.eval_complex`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from numbers import Integral, Rational
from typing import Iterable, Mapping, Sequence

import flint
import mpmath
import numpy as np

GRLEX = "grlex"
LEX = "lex"
_FLINT_ORDER = {GRLEX: "deglex", LEX: "lex"}

DEFAULT_POLE_THRESHOLD = 1e-12

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


class VarTableMismatch(ValueError):
    """Operands live over different variable tables."""


class PoleError(ZeroDivisionError):
    """A denominator vanished (exactly, or below the numeric threshold)."""


@dataclass(frozen=True)
class VarTable:
    """Ordered, duplicate-free list of variable names."""

    names: tuple[str, ...]

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for n in names:
            if not _IDENT.match(n):
                raise ValueError(f"invalid variable name {n!r}")
        object.__setattr__(self, "names", names)

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name) -> bool:
        return name in self.names

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def extend(self, *names: str) -> "VarTable":
        return VarTable(self.names + tuple(names))

    def ctx(self, order: str = GRLEX):
        return _context(self.names, order)

    def __repr__(self) -> str:
        return f"VarTable({list(self.names)!r})"


@lru_cache(maxsize=None)
def _context(names: tuple[str, ...], order: str):
    # flint refuses zero-variable contexts; a dummy variable that never
    # appears keeps constants representable.
    flint_names = names if names else ("_const",)
    return flint.fmpq_mpoly_ctx.get(flint_names, _FLINT_ORDER[order])


def _to_fmpq(c) -> flint.fmpq:
    if isinstance(c, flint.fmpq):
        return c
    if isinstance(c, (Integral, flint.fmpz)):
        return flint.fmpq(int(c))
    if isinstance(c, Rational):
        return flint.fmpq(int(c.numerator), int(c.denominator))
    raise TypeError(f"not an exact rational: {c!r}")


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.p), int(c.q))


class MPoly:
    """Immutable exact polynomial over a :class:`VarTable`."""

    __slots__ = ("vars", "order", "raw", "_numeric")

    def __init__(self, vars: VarTable, raw, order: str = GRLEX):
        self.vars = vars
        self.order = order
        self.raw = raw
        self._numeric = None

    # construction ------------------------------------------------------

    @classmethod
    def zero(cls, vars: VarTable, order: str = GRLEX) -> "MPoly":
        return cls(vars, vars.ctx(order).constant(0), order)

    @classmethod
    def const(cls, c, vars: VarTable, order: str = GRLEX) -> "MPoly":
        return cls(vars, vars.ctx(order).constant(_to_fmpq(c)), order)

    @classmethod
    def var(cls, name: str, vars: VarTable, order: str = GRLEX) -> "MPoly":
        return cls(vars, vars.ctx(order).gen(vars.index(name)), order)

    @classmethod
    def gens(cls, vars: VarTable, order: str = GRLEX) -> list["MPoly"]:
        return [cls.var(n, vars, order) for n in vars]

    @classmethod
    def from_terms(cls, terms: Mapping[tuple, object], vars: VarTable,
                   order: str = GRLEX) -> "MPoly":
        data = {}
        for exp, c in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(vars) or min(exp, default=0) < 0:
                raise ValueError(f"bad exponent vector {exp} for {vars}")
            if not vars:
                exp = (0,)
            c = _to_fmpq(c)
            if c != 0:
                data[exp] = data.get(exp, 0) + c
        return cls(vars, vars.ctx(order).from_dict(data), order)

    def _wrap(self, raw) -> "MPoly":
        return MPoly(self.vars, raw, self.order)

    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise VarTableMismatch(f"{self.vars} vs {other.vars}")
            if other.order != self.order:
                other = other.with_order(self.order)
            return other.raw
        if isinstance(other, (Integral, Rational, flint.fmpq, flint.fmpz)):
            return _to_fmpq(other)
        return NotImplemented

    def with_order(self, order: str) -> "MPoly":
        if order == self.order:
            return self
        ctx = self.vars.ctx(order)
        return MPoly(self.vars, ctx.from_dict(self.raw.to_dict()), order)

    def to_vars(self, vars: VarTable) -> "MPoly":
        """Re-embed into another table containing every variable used here."""
        if vars == self.vars:
            return self
        used = self.used_vars()
        missing = [n for n in used if n not in vars]
        if missing:
            raise VarTableMismatch(f"variables {missing} not in {vars}")
        idx = [vars.index(n) if n in vars else -1 for n in self.vars]
        out = {}
        for exp, c in self.terms():
            e = [0] * len(vars)
            for i, k in enumerate(exp):
                if k:
                    e[idx[i]] = k
            out[tuple(e)] = c
        return MPoly.from_terms(out, vars, self.order)

    # arithmetic ----------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.raw + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.raw - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(o - self.raw)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.raw * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.raw)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, Integral) or k < 0:
            raise ValueError("polynomial exponent must be a non-negative integer")
        return self._wrap(self.raw ** int(k))

    def __truediv__(self, other):
        """Exact division (by a scalar or a polynomial divisor)."""
        if isinstance(other, MPoly):
            return self.exact_div(other)
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError("division by zero")
        return self._wrap(self.raw / o)

    def divmod(self, other: "MPoly") -> tuple["MPoly", "MPoly"]:
        o = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        q, r = divmod(self.raw, o)
        return self._wrap(q), self._wrap(r)

    def exact_div(self, other: "MPoly") -> "MPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def divides(self, other: "MPoly") -> bool:
        """True if ``self`` divides ``other``."""
        if self.is_zero():
            return other.is_zero()
        return other.divmod(self)[1].is_zero()

    # comparison ------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                return False
            return self.raw.to_dict() == other.raw.to_dict() if other.order != self.order \
                else self.raw == other.raw
        if isinstance(other, (Integral, Rational)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset((k, (int(v.p), int(v.q)))
                                          for k, v in self.raw.to_dict().items())))

    # inspection ------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.raw.is_zero()

    def is_constant(self) -> bool:
        return self.raw.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return _to_fraction(self.raw.coefficient(0)) if not self.is_zero() else Fraction(0)

    def __len__(self) -> int:
        return len(self.raw)

    def terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """(exponent, coefficient) pairs, descending in this poly's order."""
        n = len(self.vars)
        return [(tuple(int(k) for k in m[:n]), _to_fraction(c)) for m, c in self.raw.terms()]

    def total_degree(self) -> int:
        return -1 if self.is_zero() else int(self.raw.total_degree())

    def degree(self, name: str) -> int:
        if self.is_zero():
            return -1
        return int(self.raw.degrees()[self.vars.index(name)])

    def used_vars(self) -> tuple[str, ...]:
        if self.is_zero() or not self.vars:
            return ()
        degs = self.raw.degrees()
        return tuple(n for n, d in zip(self.vars, degs) if d > 0)

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading term")
        exp = tuple(self.raw.monomial(0)) if self.vars else ()
        return exp, _to_fraction(self.raw.coefficient(0))

    def leading_coeff(self) -> Fraction:
        return self.leading_term()[1]

    def coeff_of(self, exp: Sequence[int]) -> Fraction:
        key = tuple(int(e) for e in exp) if self.vars else (0,)
        c = self.raw.to_dict().get(key)
        return Fraction(0) if c is None else _to_fraction(c)

    def coefficients_in(self, names: Sequence[str]) -> dict[tuple[int, ...], "MPoly"]:
        """Split by the exponents of ``names``; values are polynomials in the rest."""
        idx = [self.vars.index(n) for n in names]
        groups: dict[tuple, dict] = {}
        for exp, c in self.terms():
            key = tuple(exp[i] for i in idx)
            rest = list(exp)
            for i in idx:
                rest[i] = 0
            groups.setdefault(key, {})[tuple(rest)] = c
        return {k: MPoly.from_terms(v, self.vars, self.order) for k, v in groups.items()}

    # normalisation -----------------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c with self/c integer-primitive."""
        if self.is_zero():
            return Fraction(0)
        coeffs = [(int(c.p), int(c.q)) for c in self.raw.coeffs()]
        den = reduce(math.lcm, (q for _, q in coeffs), 1)
        num = reduce(math.gcd, (p * (den // q) for p, q in coeffs), 0)
        return Fraction(num, den)

    def normalize(self) -> "MPoly":
        """Integer-primitive, positive leading coefficient under graded-lex."""
        if self.is_zero():
            return self
        c = self.content()
        if self.with_order(GRLEX).leading_coeff() < 0:
            c = -c
        return self / c

    def is_normalized(self) -> bool:
        return self.is_zero() or self == self.normalize()

    def gcd(self, other: "MPoly", verify: bool = False) -> "MPoly":
        """Normalized GCD.

        FLINT's multivariate gcd certifies its own result by division; pass
        ``verify=True`` to repeat the trial division here.
        """
        o = self._coerce(other)
        if self.is_zero():
            return other.normalize() if isinstance(other, MPoly) else self._wrap(o).normalize()
        if other.is_zero():
            return self.normalize()
        g = self._wrap(self.raw.gcd(o)).normalize()
        if verify:
            for p in (self, other):
                if not g.divides(p):
                    raise ArithmeticError("gcd failed trial division")
        return g

    def resultant(self, other: "MPoly", name: str) -> "MPoly":
        """Sylvester resultant with respect to variable ``name``."""
        o = self._coerce(other)
        return self._wrap(self.raw.resultant(o, name))

    def squarefree_part(self) -> "MPoly":
        """Product of the distinct irreducible factors (characteristic zero)."""
        if self.is_constant():
            return self.normalize() if not self.is_zero() else self
        g = self
        for n in self.used_vars():
            g = g.gcd(self.derivative(n))
        return self.normalize().exact_div(g.normalize()).normalize()

    # calculus and substitution -------------------------------------------------

    def derivative(self, name: str) -> "MPoly":
        return self._wrap(self.raw.derivative(self.vars.index(name)))

    def subs(self, values: Mapping[str, object]) -> "MPoly":
        """Substitute exact rationals for some variables (table unchanged)."""
        vals = {}
        for k, v in values.items():
            self.vars.index(k)
            vals[k] = _to_fmpq(v)
        if not vals:
            return self
        return self._wrap(self.raw.subs(vals))

    def compose(self, polys: Mapping[str, "MPoly"] | Sequence["MPoly"],
                vars: VarTable | None = None) -> "MPoly":
        """Substitute polynomials for variables.

        ``polys`` is either a full sequence (one entry per variable of this
        table) or a mapping; unmapped variables are carried over by name into
        the target table.
        """
        if isinstance(polys, Mapping):
            target = vars or next(iter(polys.values())).vars
            seq = []
            for n in self.vars:
                if n in polys:
                    seq.append(polys[n])
                else:
                    seq.append(MPoly.var(n, target, self.order))
        else:
            seq = list(polys)
            if len(seq) != len(self.vars):
                raise ValueError("compose needs one polynomial per variable")
            target = vars or (seq[0].vars if seq else self.vars)
        seq = [p.to_vars(target).with_order(self.order) if p.vars != target
               else p.with_order(self.order) for p in seq]
        if not self.vars:
            return MPoly.from_terms({(0,) * len(target): self.constant_value()}
                                    if not self.is_zero() else {}, target, self.order)
        ctx = target.ctx(self.order)
        return MPoly(target, self.raw.compose(*[p.raw for p in seq], ctx=ctx), self.order)

    def eval_exact(self, point: Mapping[str, object] | Sequence) -> Fraction:
        vals = _point_values(self.vars, point)
        if not self.vars:
            return self.constant_value()
        return _to_fraction(self.raw(*[_to_fmpq(v) for v in vals]))

    def _numeric_form(self):
        if self._numeric is None:
            terms = self.terms()
            exps = np.array([e for e, _ in terms], dtype=np.int64).reshape(len(terms), len(self.vars))
            coeffs = np.array([float(c) for _, c in terms], dtype=complex)
            self._numeric = (exps, coeffs, terms)
        return self._numeric

    def eval_complex(self, point, extended: bool = False, dps: int = 34):
        """Evaluate at a complex point; ``extended`` uses mpmath (default 34 digits)."""
        vals = _point_values(self.vars, point)
        exps, coeffs, terms = self._numeric_form()
        if extended:
            with mpmath.workdps(dps):
                z = [_mp_value(v) for v in vals]
                total = mpmath.mpc(0)
                for e, c in terms:
                    t = mpmath.mpf(c.numerator) / c.denominator
                    for zi, k in zip(z, e):
                        if k:
                            t *= zi ** k
                    total += t
                return total
        if not terms:
            return 0j
        x = np.asarray(vals, dtype=complex)
        if x.size == 0:
            return complex(coeffs.sum())
        return complex(coeffs @ np.prod(x[None, :] ** exps, axis=1))

    def eval_array(self, points: np.ndarray) -> np.ndarray:
        """Vectorised complex evaluation; ``points`` has shape (k, nvars)."""
        exps, coeffs, _ = self._numeric_form()
        pts = np.asarray(points, dtype=complex)
        if not len(coeffs):
            return np.zeros(pts.shape[0], dtype=complex)
        mons = np.prod(pts[:, None, :] ** exps[None, :, :], axis=2)
        return mons @ coeffs

    # printing ------------------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"MPoly({format_poly(self)!r}, {list(self.vars.names)!r})"


def _mp_value(v):
    if isinstance(v, Fraction):
        return mpmath.mpc(mpmath.mpf(v.numerator) / v.denominator)
    return mpmath.mpc(v)


def _point_values(vars: VarTable, point) -> list:
    if isinstance(point, Mapping):
        try:
            return [point[n] for n in vars]
        except KeyError as e:
            raise ValueError(f"point is missing variable {e.args[0]!r}") from None
    vals = list(point)
    if len(vals) != len(vars):
        raise ValueError(f"point has {len(vals)} entries, table has {len(vars)}")
    return vals


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: MPoly) -> str:
    """Canonical text: descending graded-lex, explicit ``*`` and ``^``."""
    if p.is_zero():
        return "0"
    out = []
    for exp, c in p.with_order(GRLEX).terms():
        mono = "*".join(n if k == 1 else f"{n}^{k}"
                        for n, k in zip(p.vars, exp) if k)
        mag = abs(c)
        if not mono:
            body = _format_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_coeff(mag)}*{mono}"
        sign = "-" if c < 0 else "+"
        out.append(("-" if c < 0 else "") + body if not out else sign + body)
    return "".join(out)


def content_strip(v: Sequence[MPoly]) -> tuple[list[MPoly], MPoly]:
    """Divide every entry by the normalized GCD of all entries."""
    if not v:
        raise ValueError("content_strip needs at least one entry")
    nonzero = [p for p in v if not p.is_zero()]
    if not nonzero:
        raise ValueError("cannot strip content of an all-zero vector")
    g = reduce(lambda a, b: a.gcd(b), nonzero[1:], nonzero[0].normalize())
    out = [p.exact_div(g) for p in v]
    # the rational content is taken jointly so the vector is primitive as a whole
    coeffs = [c for p in out for _, c in p.terms()]
    den = reduce(math.lcm, (c.denominator for c in coeffs), 1)
    c = Fraction(reduce(math.gcd, (int(c * den) for c in coeffs), 0), den)
    return [p / c for p in out], g * c


def gcd_many(polys: Iterable[MPoly]) -> MPoly:
    polys = list(polys)
    if not polys:
        raise ValueError("gcd of an empty list")
    return reduce(lambda a, b: a.gcd(b), polys[1:], polys[0].normalize())


class RatFunc:
    """Reduced quotient ``num/den`` of polynomials over a common table.

    The denominator is integer-primitive with positive graded-lex leading
    coefficient; gcd(num, den) = 1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly | None = None, *, reduced: bool = False):
        if den is None:
            den = MPoly.const(1, num.vars, num.order)
        if num.vars != den.vars:
            raise VarTableMismatch(f"{num.vars} vs {den.vars}")
        if den.is_zero():
            raise PoleError("rational function with zero denominator")
        num = num.with_order(GRLEX)
        den = den.with_order(GRLEX)
        if not reduced:
            if num.is_zero():
                den = MPoly.const(1, num.vars)
            elif not den.is_constant():
                g = num.gcd(den)
                if not g.is_constant():
                    num, den = num.exact_div(g), den.exact_div(g)
            c = den.content()
            if den.leading_coeff() < 0:
                c = -c
            num, den = num / c, den / c
        self.num = num
        self.den = den

    @property
    def vars(self) -> VarTable:
        return self.num.vars

    @classmethod
    def const(cls, c, vars: VarTable) -> "RatFunc":
        c = Fraction(c)
        return cls(MPoly.const(c.numerator, vars), MPoly.const(c.denominator, vars))

    @classmethod
    def var(cls, name: str, vars: VarTable) -> "RatFunc":
        return cls(MPoly.var(name, vars), reduced=True)

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.vars != self.vars:
                raise VarTableMismatch(f"{self.vars} vs {other.vars}")
            return other
        if isinstance(other, MPoly):
            return RatFunc(other)
        if isinstance(other, (Integral, Rational)):
            return RatFunc.const(other, self.vars)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        if self.den.is_constant() or o.den.is_constant():
            return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)
        g = self.den.gcd(o.den)
        a, b = self.den.exact_div(g), o.den.exact_div(g)
        return RatFunc(self.num * b + o.num * a, self.den * b)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_constant() or self.is_constant():
            return RatFunc(self.num * o.num, self.den * o.den)
        g1 = self.num.gcd(o.den)
        g2 = o.num.gcd(self.den)
        num = self.num.exact_div(g1) * o.num.exact_div(g2)
        den = self.den.exact_div(g2) * o.den.exact_div(g1)
        c = den.content()
        if den.leading_coeff() < 0:
            c = -c
        return RatFunc(num / c, den / c, reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise PoleError("inverse of the zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, Integral):
            raise ValueError("exponent must be an integer")
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, reduced=True)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.vars == other.vars and self.num == other.num and self.den == other.den
        if isinstance(other, (MPoly, Integral, Rational)):
            o = self._coerce(other)
            return self == o
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def total_degree(self) -> int:
        """max(deg num, deg den), the usual degree of a rational function."""
        return max(self.num.total_degree(), self.den.total_degree())

    def degree(self, name: str) -> int:
        return max(self.num.degree(name), self.den.degree(name))

    def used_vars(self) -> tuple[str, ...]:
        used = set(self.num.used_vars()) | set(self.den.used_vars())
        return tuple(n for n in self.vars if n in used)

    def derivative(self, name: str) -> "RatFunc":
        n, d = self.num, self.den
        return RatFunc(n.derivative(name) * d - n * d.derivative(name), d * d)

    def to_vars(self, vars: VarTable) -> "RatFunc":
        return RatFunc(self.num.to_vars(vars), self.den.to_vars(vars), reduced=True)

    def subs(self, values: Mapping[str, object]) -> "RatFunc":
        return RatFunc(self.num.subs(values), self.den.subs(values))

    def compose(self, funcs: Mapping[str, "RatFunc"] | Sequence["RatFunc"],
                vars: VarTable | None = None) -> "RatFunc":
        """Substitute rational functions for variables."""
        if isinstance(funcs, Mapping):
            target = vars or next(iter(funcs.values())).vars
            seq = [funcs[n] if n in funcs else RatFunc.var(n, target) for n in self.vars]
        else:
            seq = list(funcs)
            target = vars or seq[0].vars
        seq = [f if isinstance(f, RatFunc) else RatFunc(f) for f in seq]
        return RatFunc(*_compose_pair(self.num, self.den, seq, target))

    def eval_exact(self, point) -> Fraction:
        d = self.den.eval_exact(point)
        if d == 0:
            raise PoleError("denominator vanishes at the evaluation point")
        return self.num.eval_exact(point) / d

    def eval_complex(self, point, threshold: float = DEFAULT_POLE_THRESHOLD,
                     extended: bool = False, dps: int = 34):
        n = self.num.eval_complex(point, extended, dps)
        if self.den.is_constant():
            c = self.den.constant_value()
            if extended:
                with mpmath.workdps(dps):
                    return n * c.denominator / c.numerator
            return n / float(c)
        d = self.den.eval_complex(point, extended, dps)
        if abs(d) < threshold * (1 + abs(n)):
            raise PoleError(f"|denominator| = {float(abs(d)):.3e} below pole threshold")
        return n / d

    def __str__(self) -> str:
        if self.den == 1:
            return format_poly(self.num)
        num = format_poly(self.num)
        num = num if len(self.num) == 1 and not num.startswith("-") else f"({num})"
        if len(self.den) == 1:
            return f"{num}/{format_poly(self.den)}"
        return f"{num}/({format_poly(self.den)})"

    def __repr__(self) -> str:
        return f"RatFunc({str(self)!r}, {list(self.vars.names)!r})"


def _poly_at(p: MPoly, seq: Sequence[RatFunc], target: VarTable) -> RatFunc:
    """p(seq) accumulated term by term over a running lcm denominator."""
    powers: dict[tuple[int, int], RatFunc] = {}

    def power(i: int, k: int) -> RatFunc:
        key = (i, k)
        if key not in powers:
            powers[key] = seq[i] if k == 1 else power(i, k // 2) * power(i, k - k // 2)
        return powers[key]

    groups: dict[MPoly, MPoly] = {}
    for exp, c in p.terms():
        term = RatFunc.const(c, target)
        for i, k in enumerate(exp):
            if k:
                term = term * power(i, k)
        groups[term.den] = groups.get(term.den, MPoly.zero(target)) + term.num
    acc_num = MPoly.zero(target)
    acc_den = MPoly.const(1, target)
    for den, num in groups.items():
        g = acc_den.gcd(den)
        t_co = den.exact_div(g)
        acc_num = acc_num * t_co + num * acc_den.exact_div(g)
        acc_den = acc_den * t_co
    return RatFunc(acc_num, acc_den)


def _compose_pair(num: MPoly, den: MPoly, seq: Sequence[RatFunc], target: VarTable):
    top = _poly_at(num, seq, target)
    if den.is_constant():
        return top.num, top.den * den.constant_value()
    bot = _poly_at(den, seq, target)
    return top.num * bot.den, top.den * bot.num
