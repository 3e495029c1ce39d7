"""Generalised unprojection rings ``S[T]/(T*u - f*phi(u), u in I)`` of a scroll.

The ring ``R2`` is the scroll ring with one extra variable ``T`` of weight
``k = deg f``.  Two presentations of the ideal are kept: the defining one
(``Q`` plus the relations ``T*u - f*phi(u)``) and the 2x2 minors of the scroll
matrix extended by the column ``(f, T)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .ideal import (
    HilbertTable,
    IdealPresentation,
    contains,
    hilbert_function,
    ideal_equal,
    krull_dimension,
)
from .linalg import determinant
from .poly import INHOMOGENEOUS, Polynomial, PolynomialRing, RingMap
from .scroll import (
    ScrollData,
    minors_2x2,
    scroll_columns,
    scroll_ideal,
    scroll_ring,
    x0,
    x1,
)

NOT_A_DOMAIN = (
    "f lies in the ideal of Gamma: the unprojection ring is isomorphic to the one "
    "for f = 0 and is not a domain"
)


class NotADomainError(ValueError):
    """``f`` lies in the ideal of Gamma, so ``S_un(f)`` is not a domain."""

    def __init__(self, f):
        super().__init__(f"{NOT_A_DOMAIN} (f = {f})")
        self.f = f


def _degree(f: Polynomial) -> int:
    if f.is_zero():
        raise ValueError("f must be nonzero")
    k = f.weighted_degree()
    if k == INHOMOGENEOUS:
        raise ValueError(f"f = {f} is not homogeneous")
    if k < 1:
        raise ValueError("f must have degree >= 1")
    return k


def unprojection_ring(sd: ScrollData, k: int) -> PolynomialRing:
    return scroll_ring(sd.m, sd.n, sd.field, extra=[("T", k)])


def defining_ideal(sd: ScrollData, f: Polynomial, ring: PolynomialRing) -> IdealPresentation:
    """``Q`` together with ``T*u - f*phi(u)`` for the generators ``u`` of I."""
    T = ring.var("T")
    f2 = f.change_ring(ring)
    rels = [q.change_ring(ring) for q in sd.Q.generators]
    for nm in sd.ideal_names():
        rels.append(T * ring.var(nm) - f2 * sd.phi[nm].change_ring(ring))
    return IdealPresentation(ring, rels)


def minors_ideal(sd: ScrollData, f: Polynomial, ring: PolynomialRing) -> IdealPresentation:
    cols = scroll_columns(ring, sd.m, sd.n) + [(f.change_ring(ring), ring.var("T"))]
    return IdealPresentation(ring, minors_2x2(cols))


@dataclass(frozen=True)
class NormalizedF:
    f: Polynomial  # input
    f_prime: Polynomial  # part in x0m, x1n only
    i: Polynomial  # f - f_prime, an element of I
    subst: RingMap  # T -> T - phi(i) on R2
    not_domain: bool

    @property
    def warning(self) -> str | None:
        return NOT_A_DOMAIN if self.not_domain else None


def normalize_f(sd: ScrollData, f: Polynomial) -> NormalizedF:
    """Split ``f = f' + i`` with ``f'`` in ``k[x0m, x1n]`` and ``i`` in I.

    The returned substitution ``T -> T - phi(i)`` carries the defining ideal
    for ``f'`` onto the defining ideal for ``f``.
    """
    k = _degree(f)
    ring = sd.ring
    keep = {ring.index(x0(sd.m)), ring.index(x1(sd.n))}
    coeffs_p, coeffs_i = {}, {}
    for c, e in f.terms:
        target = coeffs_p if all(i in keep for i, x in enumerate(e) if x) else coeffs_i
        target[e] = c
    f_prime = Polynomial(ring, coeffs_p)
    i = Polynomial(ring, coeffs_i)
    R2 = unprojection_ring(sd, k)
    T = R2.var("T")
    subst = RingMap(R2, R2, {"T": T - sd.phi_of(i).change_ring(R2)}, graded=True)
    return NormalizedF(f, f_prime, i, subst, f_prime.is_zero())


@dataclass(frozen=True)
class UnprojectionRing:
    scroll: ScrollData
    f: Polynomial  # normalised, in x0m and x1n
    k: int
    ring: PolynomialRing
    Q2_minors: IdealPresentation
    Q2_def: IdealPresentation
    normalization: NormalizedF = field(repr=False)

    @property
    def m(self):
        return self.scroll.m

    @property
    def n(self):
        return self.scroll.n

    def presentations_equal(self) -> bool:
        return ideal_equal(self.Q2_minors, self.Q2_def)

    def codimension(self) -> int:
        return self.ring.nvars - krull_dimension(self.Q2_minors)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "k": self.k,
            "f": str(self.f),
            "variables": list(self.ring.names),
            "weights": list(self.ring.weights),
            "Q2_minors": [str(g) for g in self.Q2_minors.generators],
            "Q2_def": [str(g) for g in self.Q2_def.generators],
        }


def build_unprojection(sd: ScrollData, f: Polynomial | str) -> UnprojectionRing:
    if isinstance(f, str):
        f = sd.ring.parse(f)
    norm = normalize_f(sd, f)
    if norm.not_domain:
        raise NotADomainError(f)
    k = _degree(f)
    R2 = unprojection_ring(sd, k)
    fp = norm.f_prime
    return UnprojectionRing(
        scroll=sd,
        f=fp,
        k=k,
        ring=R2,
        Q2_minors=minors_ideal(sd, fp, R2),
        Q2_def=defining_ideal(sd, fp, R2),
        normalization=norm,
    )


def f_from_divisor(sd: ScrollData, points: Sequence[tuple]) -> Polynomial:
    """``f = prod (a_i*x0m - b_i*x1n)^k_i`` for ``points = [((a_i, b_i), k_i), ...]``.

    A point ``a:b`` thus stands for the same linear form as the coefficient
    pair ``[a:b]`` of ``a*x0m + b*x1n`` up to the sign of ``b``; in particular
    ``0:1`` gives ``x1n`` up to sign and ``1:0`` gives ``x0m``.
    """
    if not points:
        raise ValueError("the divisor needs at least one point")
    ring = sd.ring
    fld = sd.field
    seen = []
    f = ring.one()
    for (a, b), mult in points:
        a, b = fld(a), fld(b)
        if not a and not b:
            raise ValueError("[0:0] is not a point")
        if mult < 1:
            raise ValueError("multiplicities must be >= 1")
        for a2, b2 in seen:
            if fld.sub(fld.mul(a, b2), fld.mul(a2, b)) == fld.zero:
                raise ValueError(f"point {a}:{b} listed twice")
        seen.append((a, b))
        f = f * (sd.x0m.scale(a) - sd.x1n.scale(b)) ** mult
    return f


def regular_sequence_check(sd: ScrollData, f: Polynomial) -> bool:
    """The first-row variables and ``f*x0m`` cut the dimension of R2 by m+n+1."""
    k = _degree(f)
    R2 = unprojection_ring(sd, k)
    seq = [R2.var(nm) for nm in sd.ideal_names()]
    seq.append(f.change_ring(R2) * R2.var(x0(sd.m)))
    ideal = IdealPresentation(R2, seq)
    if any(g.is_zero() for g in seq) or len(ideal.generators) != len(seq):
        return False
    return krull_dimension(ideal) == R2.nvars - len(seq)


def localization_witness(u: UnprojectionRing) -> bool:
    """Every relation vanishes in S localised at x00 under ``T = f*x01/x00``.

    A relation ``G = sum_j G_j T^j`` becomes ``sum_j G_j (f*x01)^j x00^(c-j)``
    with ``c`` the top T-degree; that polynomial must lie in Q.
    """
    sd = u.scroll
    R = sd.ring
    tpos = u.ring.index("T")
    fx = u.f * sd.var(x0(1))
    x00 = sd.var(x0(0))
    gb = sd.Q.groebner()
    for G in u.Q2_minors.generators + u.Q2_def.generators:
        parts: dict[int, dict] = {}
        for c, e in G.terms:
            j = e[tpos]
            parts.setdefault(j, {})[e[:tpos] + e[tpos + 1 :]] = c
        top = max(parts)
        total = R.zero()
        for j, coeffs in parts.items():
            total = total + Polynomial(R, coeffs) * fx**j * x00 ** (top - j)
        if not contains(gb, total):
            return False
    return True


# ---------------------------------------------------------------------------
# k = 1: elementary transformations
# ---------------------------------------------------------------------------


def scroll_label(m: int, n: int) -> str:
    return f"F({m},{n})"


@dataclass(frozen=True)
class Classification:
    m: int
    n: int
    point: tuple  # (a, b): f = a*x0m + b*x1n
    target: tuple  # (m', n')
    change: RingMap  # target scroll ring -> R2
    verified: bool
    determinant: object

    @property
    def tag(self) -> str:
        return scroll_label(*self.target)

    @property
    def signed_index(self) -> int:
        return self.target[1] - self.target[0]

    @property
    def abstract(self) -> str:
        return f"F_{abs(self.signed_index)}"

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "point": [json_number(c) for c in self.point],
            "tag": self.tag,
            "abstract": self.abstract,
            "verified": self.verified,
        }


def json_number(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else str(c)
    return c


def classify_elementary(sd: ScrollData, point: tuple) -> Classification:
    """Identify ``S_un(a*x0m + b*x1n)`` with a scroll by a linear change of
    variables and certify it by comparing ideals.

    ``a = 0`` gives F(m, n+1) with ``x1(n+1) = T/b``.  Otherwise, with
    ``c = b/a``, adding ``c`` times the middle-block columns to the left-block
    columns gives F(m+1, n) with ``x0j -> x0j + c*x1(j+n-m)`` and
    ``x0(m+1) -> T/a``.
    """
    fld = sd.field
    a, b = fld(point[0]), fld(point[1])
    if not a and not b:
        raise ValueError("[0:0] is not a point")
    m, n = sd.m, sd.n
    f = sd.x0m.scale(a) + sd.x1n.scale(b)
    u = build_unprojection(sd, f)
    R2 = u.ring
    T = R2.var("T")
    if not a:
        tm, tn = m, n + 1
        tgt = scroll_ring(tm, tn, fld)
        images = {x0(i): R2.var(x0(i)) for i in range(m + 1)}
        images.update({x1(j): R2.var(x1(j)) for j in range(n + 1)})
        images[x1(n + 1)] = T.scale(fld.inv(b))
    else:
        c = fld.mul(b, fld.inv(a))
        tm, tn = m + 1, n
        tgt = scroll_ring(tm, tn, fld)
        images = {x0(j): R2.var(x0(j)) + R2.var(x1(j + n - m)).scale(c) for j in range(m + 1)}
        images[x0(m + 1)] = T.scale(fld.inv(a))
        images.update({x1(j): R2.var(x1(j)) for j in range(n + 1)})
    change = RingMap(tgt, R2, images, graded=True)
    det = determinant(change.linear_matrix(), fld)
    image = IdealPresentation(R2, [change(q) for q in scroll_ideal(tm, tn, ring=tgt).generators])
    verified = bool(det) and ideal_equal(image, u.Q2_minors)
    return Classification(m, n, (a, b), (tm, tn), change, verified, det)


def family_scan(sd: ScrollData, sample: Sequence[tuple]) -> list[Classification]:
    """Classify every point of ``sample``; rows keep the sample order."""
    return [classify_elementary(sd, p) for p in sample]


def hilbert_regression(u: UnprojectionRing, bound: int) -> HilbertTable:
    return hilbert_function(u.Q2_minors, bound)


def target_scroll_table(u: UnprojectionRing, bound: int) -> HilbertTable:
    """Hilbert table of the scroll that ``S_un(f)`` is for ``k = 1``."""
    if u.k != 1:
        raise ValueError("only degree-one f has a scroll as target")
    c = classify_elementary(u.scroll, _coefficient_point(u))
    return hilbert_function(scroll_ideal(*c.target, fld=u.scroll.field), bound)


def _coefficient_point(u: UnprojectionRing) -> tuple:
    sd = u.scroll
    a = u.f.coefficient(sd.x0m.leading_monomial)
    b = u.f.coefficient(sd.x1n.leading_monomial)
    return (a, b)


def coefficient_point(u: UnprojectionRing) -> tuple:
    """``(a, b)`` with ``f = a*x0m + b*x1n`` (k = 1 only)."""
    if u.k != 1:
        raise ValueError("only degree-one f has a coefficient point")
    return _coefficient_point(u)
