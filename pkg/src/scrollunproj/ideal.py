"""Groebner bases and the ideal-theoretic operations built on them."""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .linalg import Echelon
from .poly import (
    INHOMOGENEOUS,
    MonomialOrder,
    Polynomial,
    PolynomialRing,
    RingMismatchError,
    block_order,
    divides,
    monomials_of_degree,
)

ENV_MAX_STEPS = "SCROLLUNPROJ_GB_MAX_STEPS"
DEFAULT_MAX_STEPS = 250_000


class GroebnerBudgetExceeded(RuntimeError):
    """Raised when a Groebner computation hits its step or degree cap."""


class UnitIdealError(ValueError):
    pass


def _max_steps(max_steps):
    if max_steps is not None:
        return max_steps
    env = os.environ.get(ENV_MAX_STEPS)
    return int(env) if env else DEFAULT_MAX_STEPS


class IdealPresentation:
    """An ideal given by generators in a fixed ring."""

    def __init__(self, ring: PolynomialRing, generators: Iterable, graded: bool = False):
        gens = []
        seen = set()
        for g in generators:
            g = ring(g) if not isinstance(g, Polynomial) else g
            if g.ring != ring:
                raise RingMismatchError("generator not in the ideal's ring")
            if g.is_zero() or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        if graded:
            for g in gens:
                if g.weighted_degree() == INHOMOGENEOUS:
                    raise ValueError(f"generator {g} is not homogeneous")
        self.ring = ring
        self.generators = tuple(gens)
        self.graded = graded
        self._gb = {}

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def groebner(self, order: MonomialOrder | None = None, max_steps=None) -> GroebnerBasis:
        order = order or self.ring.order
        gb = self._gb.get(order)
        if gb is None:
            gb = groebner(self, order, max_steps=max_steps)
            self._gb[order] = gb
        return gb

    def __add__(self, other) -> IdealPresentation:
        if isinstance(other, IdealPresentation):
            other = other.generators
        return IdealPresentation(self.ring, list(self.generators) + list(other))

    def change_ring(self, ring: PolynomialRing) -> IdealPresentation:
        return IdealPresentation(ring, [g.change_ring(ring) for g in self.generators])

    def __contains__(self, p) -> bool:
        return contains(self, p)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self):
        return f"IdealPresentation({[str(g) for g in self.generators]})"


@dataclass(frozen=True)
class GroebnerBasis:
    ring: PolynomialRing
    order: MonomialOrder
    basis: tuple
    steps: int = 0

    def leading_monomials(self) -> list[tuple]:
        return [g.leading_monomial for g in self.basis]

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.basis)

    def reduce(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self)

    def contains(self, p: Polynomial) -> bool:
        return p.is_zero() or normal_form(p, self).is_zero()

    def check(self) -> bool:
        """Re-verify reducedness and the Buchberger S-pair criterion."""
        ring = self.ring
        fld = ring.field
        lms = self.leading_monomials()
        for i, g in enumerate(self.basis):
            if g.leading_coefficient != fld.one:
                return False
            for _, e in g.terms:
                if any(divides(lm, e) for j, lm in enumerate(lms) if j != i):
                    return False
        data = [_gb_entry(g.as_dict(), ring) for g in self.basis]
        kc = _KeyCache(ring.key)
        for i in range(len(data)):
            for j in range(i + 1, len(data)):
                s = _spoly(data[i], data[j], fld)
                if _reduce(s, data, kc, fld):
                    return False
        return True

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)


# ---------------------------------------------------------------------------
# Buchberger internals (dict polynomials, exponent tuples)
# ---------------------------------------------------------------------------


class _KeyCache(dict):
    def __init__(self, keyf):
        super().__init__()
        self.keyf = keyf

    def __missing__(self, e):
        v = self.keyf(e)
        self[e] = v
        return v


def _lead(p: dict, kc: _KeyCache) -> tuple:
    return max(p, key=kc.__getitem__)


def _gb_entry(p: dict, ring) -> tuple:
    kc = ring.key
    lm = max(p, key=kc)
    return (lm, p, ring.field.inv(p[lm]))


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b):
    return all(not (x and y) for x, y in zip(a, b))


def _spoly(gi, gj, fld) -> dict:
    lmi, pi, inv_i = gi
    lmj, pj, inv_j = gj
    lcm = _lcm(lmi, lmj)
    out: dict = {}
    qi = tuple(a - b for a, b in zip(lcm, lmi))
    qj = tuple(a - b for a, b in zip(lcm, lmj))
    for e, c in pi.items():
        out[tuple(x + y for x, y in zip(e, qi))] = fld.mul(c, inv_i)
    for e, c in pj.items():
        e2 = tuple(x + y for x, y in zip(e, qj))
        v = fld.sub(out.get(e2, fld.zero), fld.mul(c, inv_j))
        if v:
            out[e2] = v
        else:
            out.pop(e2, None)
    return out


def _reduce(p: dict, basis: Sequence[tuple], kc: _KeyCache, fld, full: bool = True) -> dict:
    """Remainder of ``p`` on division by ``basis`` entries ``(lm, poly, 1/lc)``."""
    p = dict(p)
    rem: dict = {}
    while p:
        lm = _lead(p, kc)
        c = p[lm]
        for glm, g, ginv in basis:
            if all(a <= b for a, b in zip(glm, lm)):
                q = tuple(b - a for a, b in zip(glm, lm))
                factor = fld.mul(c, ginv)
                for e, a in g.items():
                    e2 = tuple(x + y for x, y in zip(e, q))
                    v = fld.sub(p.get(e2, fld.zero), fld.mul(factor, a))
                    if v:
                        p[e2] = v
                    else:
                        p.pop(e2, None)
                break
        else:
            rem[lm] = c
            del p[lm]
            if not full:
                rem.update(p)
                return rem
    return rem


def _buchberger(polys: list[dict], ring: PolynomialRing, max_steps: int, max_degree=None):
    fld = ring.field
    kc = _KeyCache(ring.key)
    weights = ring.weights
    basis: list[tuple] = []  # all entries ever added
    active: list[int] = []  # indices of entries still in the basis
    pairs: list = []  # heap of (key(lcm), seq, i, j, lcm)
    seq = 0
    steps = 0

    def deg(e):
        return sum(x * w for x, w in zip(e, weights))

    def update(h: int):
        nonlocal pairs, seq, active
        lmh = basis[h][0]
        cand = [(g, _lcm(basis[g][0], lmh)) for g in active]
        kept = []
        for idx, (g, lcm) in enumerate(cand):
            if _coprime(basis[g][0], lmh):
                kept.append((g, lcm))
                continue
            others = cand[idx + 1 :] + kept
            if any(divides(l2, lcm) for _, l2 in others):
                continue
            kept.append((g, lcm))
        new_pairs = [(g, lcm) for g, lcm in kept if not _coprime(basis[g][0], lmh)]
        survivors = []
        for item in pairs:
            _, _, i, j, lcm = item
            if (
                divides(lmh, lcm)
                and _lcm(basis[i][0], lmh) != lcm
                and _lcm(basis[j][0], lmh) != lcm
            ):
                continue
            survivors.append(item)
        for g, lcm in new_pairs:
            survivors.append((kc[lcm], seq, g, h, lcm))
            seq += 1
        heapq.heapify(survivors)
        pairs = survivors
        active = [g for g in active if not divides(lmh, basis[g][0])]
        active.append(h)

    def insert(p: dict):
        lm = _lead(p, kc)
        basis.append((lm, p, fld.inv(p[lm])))
        update(len(basis) - 1)

    # start from interreduced generators, lowest leading monomial first
    start = sorted((p for p in polys if p), key=lambda p: kc[_lead(p, kc)])
    for p in start:
        r = _reduce(p, [basis[g] for g in active], kc, fld)
        if r:
            insert(r)
    while pairs:
        _, _, i, j, lcm = heapq.heappop(pairs)
        if max_degree is not None and deg(lcm) > max_degree:
            raise GroebnerBudgetExceeded(
                f"S-pair of weighted degree {deg(lcm)} exceeds degree cap {max_degree}"
            )
        steps += 1
        if steps > max_steps:
            raise GroebnerBudgetExceeded(f"Groebner step budget of {max_steps} exhausted")
        s = _spoly(basis[i], basis[j], fld)
        r = _reduce(s, [basis[g] for g in active], kc, fld)
        if r:
            insert(r)
            if all(not any(e) for e in r):
                break  # unit ideal

    # reduced basis: minimal leading monomials, monic, tails reduced
    entries = sorted((basis[g] for g in active), key=lambda t: kc[t[0]])
    minimal = []
    for ent in entries:
        if not any(divides(m[0], ent[0]) for m in minimal):
            minimal.append(ent)
    if any(not any(m[0]) for m in minimal):
        return [{tuple([0] * ring.nvars): fld.one}], steps
    reduced = []
    for idx, (lm, p, inv) in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        tail = dict(p)
        del tail[lm]
        tail = _reduce(tail, others, kc, fld)
        out = {e: fld.mul(c, inv) for e, c in tail.items()}
        out[lm] = fld.one
        reduced.append(out)
    return reduced, steps


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def groebner(I: IdealPresentation, order: MonomialOrder | None = None, max_steps=None,
             max_degree=None) -> GroebnerBasis:
    """Reduced Groebner basis of ``I`` (Buchberger, normal strategy, both criteria).

    Raises :class:`GroebnerBudgetExceeded` rather than returning a partial basis.
    """
    ring = I.ring if order is None else I.ring.with_order(order)
    polys = [g.change_ring(ring).as_dict() for g in I.generators]
    basis, steps = _buchberger(polys, ring, _max_steps(max_steps), max_degree)
    gens = sorted(
        (Polynomial._raw(ring, p) for p in basis),
        key=lambda g: ring.key(g.leading_monomial),
    )
    return GroebnerBasis(ring, ring.order, tuple(gens), steps)


def _as_gb(I) -> GroebnerBasis:
    return I if isinstance(I, GroebnerBasis) else I.groebner()


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Fully reduced remainder of ``p`` modulo ``gb``, returned in ``p``'s ring."""
    if p.ring.names != gb.ring.names or p.ring.field != gb.ring.field:
        raise RingMismatchError("polynomial and Groebner basis live in different rings")
    ring = gb.ring
    data = [(g.leading_monomial, g.as_dict(), ring.field.one) for g in gb.basis]
    rem = _reduce(p.as_dict(), data, _KeyCache(ring.key), ring.field)
    return Polynomial._raw(ring, rem).change_ring(p.ring)


def contains(I, p: Polynomial) -> bool:
    """Ideal membership via normal form against a Groebner basis of ``I``."""
    if p.is_zero():
        return True
    return normal_form(p, _as_gb(I)).is_zero()


def contains_ideal(I, J: IdealPresentation) -> bool:
    """True iff every generator of ``J`` lies in ``I``."""
    if J.ring.names != I.ring.names:
        raise RingMismatchError("ideals live in different rings")
    gb = _as_gb(I)
    return all(contains(gb, g) for g in J.generators)


def ideal_equal(I: IdealPresentation, J: IdealPresentation) -> bool:
    if I.ring != J.ring:
        raise RingMismatchError("ideals live in different rings")
    return contains_ideal(I, J) and contains_ideal(J, I)


def eliminate(I: IdealPresentation, drop: Iterable[str], max_steps=None) -> IdealPresentation:
    """Generators of ``I`` intersected with the subring without ``drop``."""
    drop = list(dict.fromkeys(drop))
    ring = I.ring
    for nm in drop:
        ring.index(nm)
    if not drop:
        return I
    dset = set(drop)
    keep = [nm for nm in ring.names if nm not in dset]
    names = tuple(drop + keep)
    weights = tuple(ring.weights[ring.index(nm)] for nm in names)
    elim_ring = PolynomialRing(names, weights, block_order(len(drop)), ring.field)
    gb = groebner(I.change_ring(elim_ring), max_steps=max_steps)
    sub = ring.drop(drop)
    nd = len(drop)
    gens = [g.change_ring(sub) for g in gb.basis if not any(any(e[:nd]) for _, e in g.terms)]
    return IdealPresentation(sub, gens)


def _min_hitting_set(sets: list[frozenset]) -> frozenset:
    sets = sorted(set(sets), key=len)
    minimal = []
    for s in sets:
        if not any(t <= s for t in minimal):
            minimal.append(s)
    best = [None]

    def rec(remaining, chosen):
        if best[0] is not None and len(chosen) >= len(best[0]):
            return
        if not remaining:
            best[0] = frozenset(chosen)
            return
        s = min(remaining, key=len)
        for v in sorted(s):
            rec([t for t in remaining if v not in t], chosen | {v})

    rec(minimal, frozenset())
    return best[0]


def independent_set(I) -> list[str]:
    """A maximal-size set of variables independent modulo the leading-term ideal."""
    gb = _as_gb(I)
    if gb.is_unit():
        raise UnitIdealError("the unit ideal has no dimension")
    ring = gb.ring
    supports = [frozenset(i for i, x in enumerate(lm) if x) for lm in gb.leading_monomials()]
    hit = _min_hitting_set(supports) if supports else frozenset()
    return [nm for i, nm in enumerate(ring.names) if i not in hit]


def krull_dimension(I) -> int:
    """Krull dimension of the quotient ring, from the leading-term ideal."""
    return len(independent_set(I))


@dataclass(frozen=True)
class HilbertTable:
    """``values[d]`` is the dimension of the degree-``d`` part of the quotient."""

    values: tuple

    @property
    def entries(self) -> list[tuple[int, int]]:
        return list(enumerate(self.values))

    def __getitem__(self, d):
        return self.values[d]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


def _require_homogeneous(I):
    gens = I.basis if isinstance(I, GroebnerBasis) else I.generators
    for g in gens:
        if g.weighted_degree() == INHOMOGENEOUS:
            raise ValueError(f"Hilbert function needs homogeneous generators, got {g}")


def hilbert_function(I, up_to: int) -> HilbertTable:
    """Graded dimensions of ``R/I`` for degrees ``0..up_to``, by standard monomials."""
    _require_homogeneous(I)
    gb = _as_gb(I)
    lms = gb.leading_monomials()
    weights = gb.ring.weights
    vals = []
    for d in range(up_to + 1):
        vals.append(
            sum(
                1
                for e in monomials_of_degree(weights, d)
                if not any(divides(lm, e) for lm in lms)
            )
        )
    return HilbertTable(tuple(vals))


def hilbert_function_linear_algebra(I: IdealPresentation, up_to: int) -> HilbertTable:
    """Same table as :func:`hilbert_function` computed without a Groebner basis:
    ``dim R_d - rank span{monomial * generator}``.  Used as an independent oracle."""
    _require_homogeneous(I)
    ring = I.ring
    weights = ring.weights
    fld = ring.field
    vals = []
    for d in range(up_to + 1):
        mons = list(monomials_of_degree(weights, d))
        col = {e: i for i, e in enumerate(sorted(mons))}
        ech = Echelon(fld)
        for g in I.generators:
            gd = g.weighted_degree()
            if gd > d:
                continue
            gterms = g.terms
            for m in monomials_of_degree(weights, d - gd):
                ech.add(
                    {col[tuple(a + b for a, b in zip(e, m))]: c for c, e in gterms}
                )
        vals.append(len(mons) - ech.rank)
    return HilbertTable(tuple(vals))


def degree_part_basis(ring: PolynomialRing, d: int) -> list[tuple]:
    return sorted(monomials_of_degree(ring.weights, d), key=ring.key, reverse=True)
