"""Rees-algebra presentation of the blow-up of the scroll along ``(I, f)``.

``R3`` is the scroll ring plus variables ``T00..T0(m-1), T10..T1(n-1), Tf``
forming the second row of a matrix whose first row is the regular sequence
``x00..x0(m-1), x10..x1(n-1), f``.  The T-variables get the degree of the
entry above them, so every 2x2 minor is homogeneous and ``Tf`` has weight
``k`` just like ``T`` in the unprojection ring.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ideal import (
    IdealPresentation,
    contains_ideal,
    eliminate,
    krull_dimension,
)
from .poly import Polynomial, PolynomialRing, RingMap
from .scroll import ScrollData, minors_2x2, scroll_names, x0, x1
from .unprojection import build_unprojection


def t_name(row_var: str) -> str:
    return "T" + row_var[1:]


@dataclass(frozen=True)
class ReesPresentation:
    scroll: ScrollData
    f: Polynomial
    k: int
    ring: PolynomialRing
    B: IdealPresentation
    Q_ext: IdealPresentation

    @property
    def t_row(self) -> list[str]:
        return [t_name(nm) for nm in self.scroll.ideal_names()]

    @property
    def t_all(self) -> list[str]:
        return self.t_row + ["Tf"]

    def total(self) -> IdealPresentation:
        return self.B + self.Q_ext


def build_rees(sd: ScrollData, f: Polynomial | str) -> ReesPresentation:
    u = build_unprojection(sd, f)  # validates f and applies the normalisation
    f = u.f
    k = u.k
    row = sd.ideal_names()
    names = scroll_names(sd.m, sd.n) + [t_name(nm) for nm in row] + ["Tf"]
    weights = [1] * (sd.m + sd.n + 2) + [1] * len(row) + [k]
    R3 = PolynomialRing(tuple(names), tuple(weights), field=sd.field)
    cols = [(R3.var(nm), R3.var(t_name(nm))) for nm in row]
    cols.append((f.change_ring(R3), R3.var("Tf")))
    B = IdealPresentation(R3, minors_2x2(cols))
    Q_ext = sd.Q.change_ring(R3)
    return ReesPresentation(sd, f, k, R3, B, Q_ext)


@dataclass(frozen=True)
class Comparison:
    """Ideal comparison reported as three separate booleans."""

    equal: bool
    contains_target: bool  # target ⊆ result
    contained_in_target: bool  # result ⊆ target
    result: IdealPresentation
    target: IdealPresentation

    def to_json(self) -> dict:
        return {
            "equal": self.equal,
            "result_contains_target": self.contains_target,
            "result_contained_in_target": self.contained_in_target,
            "result_generators": len(self.result.generators),
            "target_generators": len(self.target.generators),
        }


def compare(result: IdealPresentation, target: IdealPresentation) -> Comparison:
    sup = contains_ideal(result, target)
    sub = contains_ideal(target, result)
    return Comparison(sup and sub, sup, sub, result, target)


def eliminate_to_base(r: ReesPresentation) -> Comparison:
    """Eliminate every T-variable from ``B + Q`` and compare with Q."""
    res = eliminate(r.total(), r.t_all)
    return compare(res, r.scroll.Q)


def eliminate_to_unprojection(r: ReesPresentation) -> Comparison:
    """Eliminate the row T-variables, rename ``Tf -> T`` and compare with Q2."""
    res = eliminate(r.total(), r.t_row)
    u = build_unprojection(r.scroll, r.f)
    renamed = PolynomialRing(
        tuple("T" if nm == "Tf" else nm for nm in res.ring.names),
        res.ring.weights,
        field=res.ring.field,
    )
    if renamed != u.ring:
        raise RuntimeError("elimination ring does not match the unprojection ring")
    moved = IdealPresentation(
        u.ring, [Polynomial._raw(u.ring, g.as_dict()) for g in res.generators]
    )
    return compare(moved, u.Q2_minors)


def specialise_to_unprojection(r: ReesPresentation) -> Comparison:
    """Substitute ``T_u -> phi(u)`` and ``Tf -> T`` into ``B + Q``.

    The second matrix row then becomes the second row of the unprojection
    matrix, so the image ideal is compared with Q2.
    """
    sd = r.scroll
    u = build_unprojection(sd, r.f)
    R2 = u.ring
    images = {nm: R2.var(nm) for nm in scroll_names(sd.m, sd.n)}
    for nm in sd.ideal_names():
        images[t_name(nm)] = sd.phi[nm].change_ring(R2)
    images["Tf"] = R2.var("T")
    spec = RingMap(r.ring, R2, images, graded=True)
    image = IdealPresentation(R2, [spec(g) for g in r.total().generators])
    return compare(image, u.Q2_minors)


def strict_transform_ideal(r: ReesPresentation) -> IdealPresentation:
    """Ideal of the strict transform of Gamma: first row and row T-variables."""
    R3 = r.ring
    names = r.scroll.ideal_names() + r.t_row
    return IdealPresentation(R3, [R3.var(nm) for nm in names])


def strict_transform_dimension(r: ReesPresentation) -> int:
    """Affine dimension of ``V(B + Q + strict transform ideal)``, for reporting."""
    return krull_dimension(r.total() + strict_transform_ideal(r))


def tautological_check(r: ReesPresentation) -> bool:
    """``T_g -> g*lam`` kills every generator of B."""
    R3 = r.ring
    ext = PolynomialRing(R3.names + ("lam",), R3.weights + (1,), field=R3.field)
    lam = ext.var("lam")
    images = {nm: ext.var(nm) for nm in R3.names}
    for nm in r.scroll.ideal_names():
        images[t_name(nm)] = ext.var(nm) * lam
    images["Tf"] = r.f.change_ring(ext) * lam
    sub = RingMap(R3, ext, images)
    return all(sub(g).is_zero() for g in r.B.generators)


__all__ = [
    "ReesPresentation",
    "Comparison",
    "build_rees",
    "eliminate_to_base",
    "eliminate_to_unprojection",
    "specialise_to_unprojection",
    "strict_transform_ideal",
    "tautological_check",
    "x0",
    "x1",
]
