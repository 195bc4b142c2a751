"""Buchberger Gröbner bases under lex order and elimination ideals."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

from .poly import LEX, MPoly, VarTable


@dataclass(frozen=True)
class Budget:
    max_degree: int = 40
    max_basis: int = 500
    timeout: float = 60.0


class BudgetExceeded(RuntimeError):
    """Raised when a Gröbner computation runs past its budget.

    ``kind`` is one of ``"degree"``, ``"size"`` or ``"time"``; ``partial``
    holds the basis as it stood when the computation was abandoned.
    """

    def __init__(self, kind: str, partial: list[MPoly], detail: str = ""):
        self.kind = kind
        self.partial = partial
        super().__init__(f"Gröbner budget exceeded ({kind}){': ' + detail if detail else ''}")


class NotGroebner(ValueError):
    pass


@dataclass(frozen=True)
class IdealBasis:
    gens: tuple[MPoly, ...]
    vars: VarTable
    order: str = LEX
    eliminated: int = 0
    groebner: bool = False
    stats: dict = field(default_factory=dict, compare=False)

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)


def _lm(raw):
    return tuple(raw.monomial(0))


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _mono(ctx, exp, coeff=1):
    return ctx.from_dict({tuple(exp): coeff})


def _normalize_lex(raw, vars: VarTable):
    p = MPoly(vars, raw, LEX)
    c = p.content()
    if p.leading_coeff() < 0:
        c = -c
    return (p / c).raw


def _reduce(raw, basis, ctx, deadline=None):
    """Full reduction of ``raw`` by the list of (lm, lc, poly) triples."""
    rem = {}
    p = raw
    steps = 0
    while not p.is_zero():
        m = _lm(p)
        c = p.coefficient(0)
        for gm, gc, g in basis:
            if _divides(gm, m):
                q = tuple(x - y for x, y in zip(m, gm))
                p = p - _mono(ctx, q, c / gc) * g
                break
        else:
            rem[m] = c
            p = p - _mono(ctx, m, c)
        steps += 1
        if deadline is not None and steps % 64 == 0 and time.monotonic() > deadline:
            raise TimeoutError
    return ctx.from_dict(rem)


def _as_lex(gens: Sequence[MPoly], order_vars: Sequence[str] | None) -> tuple[VarTable, list]:
    if not gens:
        raise ValueError("buchberger needs at least one generator")
    base = gens[0].vars
    if any(g.vars != base for g in gens):
        raise ValueError("generators must share a variable table")
    vt = VarTable(order_vars) if order_vars is not None else base
    return vt, [g.to_vars(vt).with_order(LEX) for g in gens]


def buchberger(gens: Sequence[MPoly], order_vars: Sequence[str] | None = None,
               budget: Budget | None = None) -> IdealBasis:
    """Reduced Gröbner basis under lex with ``order_vars[0] > order_vars[1] > ...``.

    Pairs are processed by the normal strategy (smallest lcm degree first,
    ties broken by lex) with the coprime and chain criteria.
    """
    budget = budget or Budget()
    vt, polys = _as_lex(gens, order_vars)
    ctx = vt.ctx(LEX)
    start = time.monotonic()
    deadline = start + budget.timeout

    G: list = []  # (lm, lc, raw)
    for p in polys:
        if not p.is_zero():
            raw = _normalize_lex(p.raw, vt)
            G.append((_lm(raw), raw.coefficient(0), raw))
    if not G:
        raise ValueError("all generators are zero")

    pairs = {(i, j) for j in range(len(G)) for i in range(j)}
    done: set = set()
    s_reduced = 0

    def partial():
        return [MPoly(vt, g, LEX) for _, _, g in G]

    while pairs:
        if time.monotonic() > deadline:
            raise BudgetExceeded("time", partial(), f"{len(G)} basis elements")
        i, j = min(pairs, key=lambda ij: (sum(_lcm(G[ij[0]][0], G[ij[1]][0])),
                                           tuple(-x for x in _lcm(G[ij[0]][0], G[ij[1]][0])),
                                           ij))
        pairs.discard((i, j))
        done.add((i, j))
        mi, ci, gi = G[i]
        mj, cj, gj = G[j]
        L = _lcm(mi, mj)
        if all(min(x, y) == 0 for x, y in zip(mi, mj)):
            continue  # coprime leading monomials
        if any(k not in (i, j) and _divides(G[k][0], L)
               and (min(i, k), max(i, k)) in done and (min(j, k), max(j, k)) in done
               for k in range(len(G))):
            continue  # chain criterion
        s = (_mono(ctx, tuple(a - b for a, b in zip(L, mi)), 1 / ci) * gi
             - _mono(ctx, tuple(a - b for a, b in zip(L, mj)), 1 / cj) * gj)
        try:
            r = _reduce(s, G, ctx, deadline)
        except TimeoutError:
            raise BudgetExceeded("time", partial(), "during S-polynomial reduction") from None
        s_reduced += 1
        if r.is_zero():
            continue
        r = _normalize_lex(r, vt)
        if r.total_degree() > budget.max_degree:
            raise BudgetExceeded("degree", partial(),
                                 f"new element of total degree {r.total_degree()}")
        G.append((_lm(r), r.coefficient(0), r))
        if len(G) > budget.max_basis:
            raise BudgetExceeded("size", partial(), f"{len(G)} basis elements")
        n = len(G) - 1
        pairs.update((k, n) for k in range(n))

    # minimal basis, then interreduce
    G.sort(key=lambda t: (sum(t[0]), t[0]))
    minimal = []
    for k, (m, c, g) in enumerate(G):
        if any(_divides(m2, m) and (m2 != m or k2 < k)
               for k2, (m2, _, _) in enumerate(G) if k2 != k):
            continue
        minimal.append((m, c, g))
    reduced = []
    for k, (m, c, g) in enumerate(minimal):
        others = [t for k2, t in enumerate(minimal) if k2 != k]
        tail = g - _mono(ctx, m, c)
        r = _mono(ctx, m, c) + _reduce(tail, others, ctx)
        reduced.append(_normalize_lex(r, vt))
    reduced.sort(key=lambda raw: _lm(raw), reverse=True)
    out = tuple(MPoly(vt, r, LEX) for r in reduced)
    return IdealBasis(out, vt, LEX, 0, True,
                      stats={"s_pairs_reduced": s_reduced,
                             "seconds": time.monotonic() - start})


def elimination_ideal(basis: IdealBasis, k: int) -> IdealBasis:
    """Generators of the basis free of the first ``k`` (largest) variables."""
    if not basis.groebner or basis.order != LEX:
        raise NotGroebner("elimination needs a lex Gröbner basis")
    if k < 0 or k > len(basis.vars):
        raise ValueError(f"cannot eliminate {k} of {len(basis.vars)} variables")
    drop = set(basis.vars.names[:k])
    kept = tuple(g for g in basis.gens if not drop & set(g.used_vars()))
    return IdealBasis(kept, basis.vars, LEX, basis.eliminated + k, True)


def reduce_mod(p: MPoly, basis: IdealBasis) -> MPoly:
    """Normal form of ``p`` modulo a Gröbner basis (zero iff p is in the ideal)."""
    if not basis.groebner:
        raise NotGroebner("normal forms are only unique modulo a Gröbner basis")
    vt = basis.vars
    q = p.to_vars(vt).with_order(LEX)
    ctx = vt.ctx(LEX)
    trip = [(_lm(g.raw), g.raw.coefficient(0), g.raw) for g in basis.gens]
    return MPoly(vt, _reduce(q.raw, trip, ctx), LEX)


def is_groebner(gens: Sequence[MPoly]) -> bool:
    """Check that every S-polynomial reduces to zero (lex, the generators' table)."""
    gens = [g.with_order(LEX) for g in gens if not g.is_zero()]
    if not gens:
        return True
    ctx = gens[0].vars.ctx(LEX)
    trip = [(_lm(g.raw), g.raw.coefficient(0), g.raw) for g in gens]
    for j in range(len(trip)):
        for i in range(j):
            mi, ci, gi = trip[i]
            mj, cj, gj = trip[j]
            L = _lcm(mi, mj)
            s = (_mono(ctx, tuple(a - b for a, b in zip(L, mi)), 1 / ci) * gi
                 - _mono(ctx, tuple(a - b for a, b in zip(L, mj)), 1 / cj) * gj)
            if not _reduce(s, trip, ctx).is_zero():
                return False
    return True


# ---------------------------------------------------------------------------
# ideals built from rational maps


@dataclass(frozen=True)
class PolySystem:
    """Polynomial generators with the variables to eliminate listed first.

    ``excluded`` holds the denominators cleared while building ``gens``; the
    zero set of the system is only meaningful off their vanishing locus.
    """

    gens: tuple[MPoly, ...]
    order: tuple[str, ...]
    eliminate: int
    excluded: tuple[MPoly, ...] = ()

    def groebner(self, budget: Budget | None = None) -> IdealBasis:
        return buchberger(list(self.gens), self.order, budget)

    def eliminated(self, budget: Budget | None = None) -> IdealBasis:
        return elimination_ideal(self.groebner(budget), self.eliminate)


def _next_names(names: Sequence[str]) -> list[str]:
    up = [n.upper() for n in names]
    if len(set(up) | set(names)) == 2 * len(names):
        return up
    return [n + "'" for n in names]


def reduction_system(m, keep: str | None = None) -> PolySystem:
    """Generators {X_j - F_j(x), H_i(x) - h_i} for reducing a map to one variable.

    Every coordinate but ``keep`` (default: the first) and its image are
    eliminated, leaving a relation between ``keep``, its image and the
    invariant symbols.
    """
    names = list(m.vars.names)
    keep = keep or names[0]
    nxt = dict(zip(names, _next_names(names)))
    hs = list(m.invariant_names)
    drop = [n for n in names if n != keep]
    order = drop + [nxt[n] for n in drop] + [keep, nxt[keep]] + hs
    vt = VarTable(order)
    gens, excluded = [], []
    for n, F in zip(names, m.components):
        num, den = F.num.to_vars(vt), F.den.to_vars(vt)
        gens.append(MPoly.var(nxt[n], vt) * den - num)
        excluded.append(den)
    for h, H in m.invariants:
        num, den = H.num.to_vars(vt), H.den.to_vars(vt)
        gens.append(num - MPoly.var(h, vt) * den)
        excluded.append(den)
    return PolySystem(tuple(gens), tuple(order), 2 * len(drop),
                      tuple(e for e in excluded if not e.is_constant()))


def periodicity_system(m, n: int, saturate: bool = True, avoid_fixed: bool = False,
                       iterate=None) -> PolySystem:
    """Generators {X_j^(n) - x_j, H_i(x) - h_i} with all coordinates to be eliminated.

    An extra variable ``t`` (Rabinowitsch trick) removes unwanted components:
    ``saturate`` excludes the pole locus of the cleared denominators and
    ``avoid_fixed`` excludes points where the first coordinate is fixed by
    one step of the map.
    """
    from .maps import compose_symbolic

    it = iterate if iterate is not None else compose_symbolic(m, n)
    names = list(m.vars.names)
    hs = list(m.invariant_names)
    extra = saturate or avoid_fixed
    order = (["t"] if extra else []) + names + hs
    vt = VarTable(order)
    gens, excluded = [], []
    for x, F in zip(names, it.components):
        num, den = F.num.to_vars(vt), F.den.to_vars(vt)
        gens.append(num - MPoly.var(x, vt) * den)
        excluded.append(den)
    for h, H in m.invariants:
        num, den = H.num.to_vars(vt), H.den.to_vars(vt)
        gens.append(num - MPoly.var(h, vt) * den)
        excluded.append(den)
    excluded = [e for e in excluded if not e.is_constant()]
    if extra:
        prod = MPoly.const(1, vt)
        if saturate:
            for e in excluded:
                prod = prod * e
        if avoid_fixed:
            F = m.components[0]
            prod = prod * (F.num.to_vars(vt) - MPoly.var(names[0], vt) * F.den.to_vars(vt))
        gens.append(MPoly.var("t", vt) * prod - 1)
    return PolySystem(tuple(gens), tuple(order), len(names) + int(extra), tuple(excluded))
