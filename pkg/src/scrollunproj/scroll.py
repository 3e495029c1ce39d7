"""The scroll F(m, n) as a determinantal ring, the line Gamma on it, and the
degree-zero homomorphisms of the ideal of Gamma.

Variables are ``x00..x0m`` (first block) and ``x10..x1n`` (second block), all
of weight one, in that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .ideal import (
    IdealPresentation,
    contains,
    hilbert_function,
    normal_form,
)
from .linalg import nullspace
from .poly import QQ, Polynomial, PolynomialRing, RingMap, divides, monomials_of_degree


def x0(i: int) -> str:
    return f"x0{i}"


def x1(j: int) -> str:
    return f"x1{j}"


def scroll_names(m: int, n: int) -> list[str]:
    return [x0(i) for i in range(m + 1)] + [x1(j) for j in range(n + 1)]


def scroll_ring(m: int, n: int, fld=QQ, extra=()) -> PolynomialRing:
    """Ring of P^{m+n+1}; ``extra`` appends ``(name, weight)`` variables."""
    names = scroll_names(m, n) + [nm for nm, _ in extra]
    weights = [1] * (m + n + 2) + [w for _, w in extra]
    return PolynomialRing(tuple(names), tuple(weights), field=fld)


def scroll_columns(ring: PolynomialRing, m: int, n: int) -> list[tuple[Polynomial, Polynomial]]:
    """Columns (top, bottom) of the two-block matrix cutting out F(m, n)."""
    cols = [(ring.var(x0(i)), ring.var(x0(i + 1))) for i in range(m)]
    cols += [(ring.var(x1(j)), ring.var(x1(j + 1))) for j in range(n)]
    return cols


def minors_2x2(columns: Sequence[tuple[Polynomial, Polynomial]]) -> list[Polynomial]:
    """All 2x2 minors ``top_i*bot_j - top_j*bot_i`` for ``i < j``."""
    out = []
    for i in range(len(columns)):
        for j in range(i + 1, len(columns)):
            (a, b), (c, d) = columns[i], columns[j]
            out.append(a * d - c * b)
    return out


def scroll_ideal(m: int, n: int, fld=QQ, ring: PolynomialRing | None = None) -> IdealPresentation:
    """Ideal of F(m, n); any ``m, n >= 1`` (block order is not normalised)."""
    if m < 1 or n < 1:
        raise ValueError("scroll blocks need m, n >= 1")
    ring = ring or scroll_ring(m, n, fld)
    return IdealPresentation(ring, minors_2x2(scroll_columns(ring, m, n)), graded=True)


@dataclass(frozen=True)
class ScrollData:
    m: int
    n: int
    ring: PolynomialRing
    Q: IdealPresentation
    I: IdealPresentation
    phi: dict

    @property
    def field(self):
        return self.ring.field

    def var(self, name: str) -> Polynomial:
        return self.ring.var(name)

    @property
    def x0m(self) -> Polynomial:
        return self.ring.var(x0(self.m))

    @property
    def x1n(self) -> Polynomial:
        return self.ring.var(x1(self.n))

    def ideal_names(self) -> list[str]:
        """Variables generating the ideal of Gamma (the first matrix row)."""
        return [x0(i) for i in range(self.m)] + [x1(j) for j in range(self.n)]

    def phi_of(self, p: Polynomial) -> Polynomial:
        """Apply phi to an element of I written linearly in its generators.

        ``p`` must lie in the ideal generated by the first-row variables;
        each term is split at its first such variable.
        """
        ring = self.ring
        gen_idx = [ring.index(nm) for nm in self.ideal_names()]
        out = ring.zero()
        for c, e in p.terms:
            i = next((k for k in gen_idx if e[k]), None)
            if i is None:
                raise ValueError(f"{p} is not in the ideal of Gamma")
            rest = list(e)
            rest[i] -= 1
            out = out + ring.monomial(rest, c) * self.phi[ring.names[i]]
        return out

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "variables": list(self.ring.names),
            "weights": list(self.ring.weights),
            "field": self.field.spec(),
            "Q": [str(g) for g in self.Q.generators],
            "I": [str(g) for g in self.I.generators],
        }


def build_scroll(m: int, n: int, fld=QQ) -> ScrollData:
    if not (isinstance(m, int) and isinstance(n, int)) or not (n >= m >= 1):
        raise ValueError(f"scroll F(m, n) needs n >= m >= 1, got m={m}, n={n}")
    ring = scroll_ring(m, n, fld)
    Q = scroll_ideal(m, n, ring=ring)
    row = [x0(i) for i in range(m)] + [x1(j) for j in range(n)]
    I = IdealPresentation(ring, [ring.var(nm) for nm in row], graded=True)
    phi = {x0(i): ring.var(x0(i + 1)) for i in range(m)}
    phi.update({x1(j): ring.var(x1(j + 1)) for j in range(n)})
    return ScrollData(m, n, ring, Q, I, phi)


def verify_phi(s: ScrollData) -> bool:
    """phi is multiplication by x01/x00: ``x01*u - x00*phi(u)`` lies in Q."""
    x00, x01 = s.var(x0(0)), s.var(x0(1))
    gb = s.Q.groebner()
    return all(contains(gb, x01 * u - x00 * s.phi[str(u)]) for u in s.I.generators)


# ---------------------------------------------------------------------------
# the map g : R -> k[z, s, t]
# ---------------------------------------------------------------------------

ZST = PolynomialRing(("z", "s", "t"), (1, 1, 1))


def build_g_map(sd: ScrollData) -> RingMap:
    """``x0i -> z t^(m-i) s^i`` and ``x1j -> t^(n-j) s^j``.

    The images are bihomogeneous (z-degree, st-degree) = (1, m) resp. (0, n),
    so the map is not graded for a single positive grading.
    """
    m, n = sd.m, sd.n
    tgt = ZST.with_field(sd.field)
    z, s_, t = tgt.gens()
    images = {x0(i): z * t ** (m - i) * s_**i for i in range(m + 1)}
    images.update({x1(j): t ** (n - j) * s_**j for j in range(n + 1)})
    return RingMap(sd.ring, tgt, images)


def g_kills_Q(sd: ScrollData) -> bool:
    g = build_g_map(sd)
    return all(g(q).is_zero() for q in sd.Q.generators)


# ---------------------------------------------------------------------------
# the basis B of R/Q1 and the rewriting onto it
# ---------------------------------------------------------------------------


def _blocks(sd: ScrollData, exps: Sequence[int]):
    m = sd.m
    return list(exps[: m + 1]), list(exps[m + 1 :])


def in_basis_B(sd: ScrollData, exps: Sequence[int], literal: bool = False) -> bool:
    """Membership in B = {1} and the four monomial families.

    For ``m = 1`` the variable ``x0m`` is ``x01``, a generator of Q1, so the
    family ``x0m^a*x1n^b`` only contributes ``a = 0``; ``literal=True`` keeps
    the family as written for every ``m``.
    """
    m, n = sd.m, sd.n
    a0, a1 = _blocks(sd, exps)
    if not any(exps):
        return True
    if any(a0):
        # x0i*x0m^a*x1n^b (2 <= i <= m-1) or x0m^a*x1n^b
        if any(a1[:n]):
            return False
        if a0[0] or a0[1] and not (m == 1 and literal):
            return False
        middle = [(i, e) for i, e in enumerate(a0[:m]) if e]
        if not middle:
            return literal or m >= 2
        if len(middle) == 1 and middle[0][1] == 1 and 2 <= middle[0][0] <= m - 1:
            return True
        return False
    # x10^a*x1n^b or x10^a*x1i*x1n^b with 1 <= i <= n-1
    inner = [(j, e) for j, e in enumerate(a1) if e and 0 < j < n]
    if not inner:
        return True
    return len(inner) == 1 and inner[0][1] == 1


ZERO_MARKER = None


def b_normal_form(w: Sequence[int] | Polynomial, sd: ScrollData):
    """Rewrite a monomial modulo Q1 = Q + (x00, x01) onto B.

    Returns the exponent tuple of the B element, or ``ZERO_MARKER`` (None) when
    the monomial lies in Q1.  Rules (each preserves the class modulo Q):

    * ``x0i*x0j -> x0(i-1)*x0(j+1)`` for ``1 <= i <= j <= m-1``
    * ``x1i*x1j -> x1(i-1)*x1(j+1)`` for ``1 <= i <= j <= n-1``
    * ``x0i*x1j -> x0(i-1)*x1(j+1)`` for ``i >= 1, j <= n-1``

    The pair (sum of x1 indices, sum of squared indices) increases
    lexicographically under every rule and is bounded, so rewriting stops.
    """
    if isinstance(w, Polynomial):
        if len(w.terms) != 1:
            raise ValueError("b_normal_form takes a monomial")
        w = w.terms[0][1]
    m, n = sd.m, sd.n
    a0, a1 = _blocks(sd, w)
    while True:
        if a0[0] or a0[1]:
            return ZERO_MARKER
        # x0 spreading
        mid0 = [i for i in range(1, m) for _ in range(a0[i])]
        if len(mid0) >= 2:
            i, j = mid0[0], mid0[1]
            a0[i] -= 1
            a0[j] -= 1
            a0[i - 1] += 1
            a0[j + 1] += 1
            continue
        mid1 = [j for j in range(1, n) for _ in range(a1[j])]
        if len(mid1) >= 2:
            i, j = mid1[0], mid1[1]
            a1[i] -= 1
            a1[j] -= 1
            a1[i - 1] += 1
            a1[j + 1] += 1
            continue
        i = next((k for k in range(1, m + 1) if a0[k]), None)
        j = next((k for k in range(n) if a1[k]), None)
        if i is not None and j is not None:
            a0[i] -= 1
            a1[j] -= 1
            a0[i - 1] += 1
            a1[j + 1] += 1
            continue
        return tuple(a0 + a1)


def Q1_ideal(sd: ScrollData) -> IdealPresentation:
    return sd.Q + [sd.var(x0(0)), sd.var(x0(1))]


def basis_B(sd: ScrollData, degree: int, literal: bool = False) -> list[tuple]:
    return [
        e
        for e in monomials_of_degree(sd.ring.weights, degree)
        if in_basis_B(sd, e, literal=literal)
    ]


def verify_basis_claim(sd: ScrollData, d: int, literal: bool = False) -> bool:
    """B spans R/Q1 with the right graded dimensions and its g-images are
    distinct monomials none of which is divisible by z*t^(m-1)."""
    if d < 1:
        raise ValueError("degree bound must be >= 1")
    table = hilbert_function(Q1_ideal(sd), d)
    g = build_g_map(sd)
    bad = (1, 0, sd.m - 1)  # z * t^(m-1) in (z, s, t)
    images = set()
    for t in range(d + 1):
        elems = basis_B(sd, t, literal=literal)
        if len(elems) != table[t]:
            return False
        for e in elems:
            img = g(sd.ring.monomial(e))
            mono = img.terms[0][1]
            if divides(bad, mono) or mono in images:
                return False
            images.add(mono)
    return True


def second_claim_kernel(sd: ScrollData, t: int) -> list[Polynomial]:
    """Basis of {u in R_t : u*x1(n-1) in (x00) + Q}."""
    ring = sd.ring
    gb = (sd.Q + [sd.var(x0(0))]).groebner()
    mult = sd.var(x1(sd.n - 1))
    mons = sorted(monomials_of_degree(ring.weights, t), key=ring.key, reverse=True)
    columns = []
    for e in mons:
        r = normal_form(ring.monomial(e) * mult, gb)
        columns.append({ee: c for c, ee in r.terms})
    kernel = nullspace(columns, ring.field)
    return [Polynomial(ring, {mons[j]: c for j, c in vec.items()}) for vec in kernel]


def verify_second_claim(sd: ScrollData, d: int) -> bool:
    """Every ``u`` of degree <= d with ``u*x1(n-1) in (x00)+Q`` lies in Q1."""
    if d < 1:
        raise ValueError("degree bound must be >= 1")
    gb1 = Q1_ideal(sd).groebner()
    for t in range(d + 1):
        for u in second_claim_kernel(sd, t):
            if not contains(gb1, u):
                return False
    return True


def hom_degree_zero_dim(sd: ScrollData) -> int:
    """Dimension of the degree-zero part of Hom(I, S), via the values u = f(x00)."""
    return len(second_claim_kernel(sd, 1))
