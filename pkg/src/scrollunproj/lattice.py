"""Integer intersection theory on Hirzebruch surfaces and their blow-ups.

Classes are written in the total-transform basis ``Δ0, Γ, E_1, ..., E_r``,
where the ``E_i`` are pullbacks of exceptional curves to the final surface.
In that basis the form is diagonal apart from ``Δ0·Γ = 1``, also for
infinitely near points.  Strict transforms are ordinary differences such as
``E_1 - E_2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class Exceptional:
    name: str
    parent: int | None = None  # index of the exceptional this point lies on
    centred_on: tuple[str, ...] = ()


@dataclass(frozen=True)
class SurfaceModel:
    d: int
    exceptionals: tuple[Exceptional, ...] = ()

    def __post_init__(self):
        if self.d < 0:
            raise LatticeError(f"Hirzebruch index must be >= 0, got {self.d}")

    @property
    def rank(self) -> int:
        return 2 + len(self.exceptionals)

    def basis_names(self) -> list[str]:
        return ["Delta0", "Gamma"] + [e.name for e in self.exceptionals]

    def form(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        if (i, j) == (0, 0):
            return -self.d
        if (i, j) == (0, 1):
            return 1
        if (i, j) == (1, 1):
            return 0
        if i == j:
            return -1
        return 0

    def gram(self) -> list[list[int]]:
        return [[self.form(i, j) for j in range(self.rank)] for i in range(self.rank)]

    # basis classes
    def cls(self, coeffs) -> "DivClass":
        coeffs = tuple(int(c) for c in coeffs)
        coeffs = coeffs + (0,) * (self.rank - len(coeffs))
        if len(coeffs) != self.rank:
            raise LatticeError("too many coefficients for this model")
        return DivClass(self, coeffs)

    @property
    def delta0(self) -> "DivClass":
        return self.cls((1, 0))

    @property
    def gamma(self) -> "DivClass":
        return self.cls((0, 1))

    def E(self, i: int) -> "DivClass":
        c = [0] * self.rank
        c[2 + i] = 1
        return self.cls(c)

    def zero(self) -> "DivClass":
        return self.cls(())

    def canonical(self) -> "DivClass":
        """``-2Δ0 - (d+2)Γ + ΣE_i``."""
        c = [-2, -(self.d + 2)] + [1] * len(self.exceptionals)
        return self.cls(c)

    def blow_up(self, name: str, parent: int | None = None, centred_on=()) -> "SurfaceModel":
        if parent is not None and not 0 <= parent < len(self.exceptionals):
            raise LatticeError(f"no exceptional with index {parent}")
        e = Exceptional(name, parent, tuple(centred_on))
        return SurfaceModel(self.d, self.exceptionals + (e,))

    def pullback(self, c: "DivClass") -> "DivClass":
        """Extend a class from a sub-model (same d, prefix of exceptionals)."""
        if c.model.d != self.d or c.model.exceptionals != self.exceptionals[: len(c.model.exceptionals)]:
            raise LatticeError("class does not come from a blow-down of this model")
        return self.cls(c.coeffs)


def hirzebruch(d: int) -> SurfaceModel:
    return SurfaceModel(d)


@dataclass(frozen=True)
class DivClass:
    model: SurfaceModel
    coeffs: tuple[int, ...]

    def _check(self, other: "DivClass"):
        if self.model != other.model:
            raise LatticeError("classes live on different surface models")

    def __add__(self, other):
        self._check(other)
        return DivClass(self.model, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return DivClass(self.model, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return DivClass(self.model, tuple(-a for a in self.coeffs))

    def __rmul__(self, k: int):
        return DivClass(self.model, tuple(k * a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, DivClass):
            return intersect(self, other)
        return self.__rmul__(other)

    def square(self) -> int:
        return intersect(self, self)

    def __str__(self):
        parts = []
        for c, nm in zip(self.coeffs, self.model.basis_names()):
            if c:
                parts.append(f"{c}*{nm}")
        return " + ".join(parts) if parts else "0"


def intersect(a: DivClass, b: DivClass) -> int:
    a._check(b)
    m = a.model
    total = 0
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j, y in enumerate(b.coeffs):
            if y:
                total += x * y * m.form(i, j)
    return total


# --------------------------------------------------------------------------
# singularities


@dataclass(frozen=True)
class SingularityRecord:
    kind: str  # "cyclic" for 1/k(1,1), "A" for Du Val A_n
    index: int
    source: str = ""

    @property
    def name(self) -> str:
        if self.kind == "cyclic":
            return f"1/{self.index}(1,1)"
        return f"A{self.index}"

    def type_key(self) -> tuple[str, int]:
        if self.kind == "cyclic" and self.index == 2:
            return ("A", 1)
        return (self.kind, self.index)

    def same_type(self, other: "SingularityRecord") -> bool:
        return self.type_key() == other.type_key()


def _components(curves: list[DivClass]) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for start in range(len(curves)):
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(len(curves)):
                if j not in seen and intersect(curves[i], curves[j]) != 0:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def classify_contraction(curves: list[DivClass], source: str) -> SingularityRecord | None:
    """Type of the point obtained by contracting one connected configuration.

    Handles the two shapes that occur here: a single smooth rational curve of
    self-intersection ``-k`` and a chain of ``(-2)``-curves.
    """
    sq = [c.square() for c in curves]
    if len(curves) == 1 and sq[0] < -2:
        return SingularityRecord("cyclic", -sq[0], source)
    if len(curves) == 1 and sq[0] == -1:
        return None  # 1/1(1,1): a smooth point
    if all(s == -2 for s in sq):
        degs = [sum(1 for j in range(len(curves)) if j != i and intersect(curves[i], curves[j]))
                for i in range(len(curves))]
        if max(degs, default=0) <= 2 and sum(degs) == 2 * (len(curves) - 1):
            if len(curves) == 1 and source == "Gamma_hat":
                return SingularityRecord("cyclic", 2, source)
            return SingularityRecord("A", len(curves), source)
    raise LatticeError(f"unsupported configuration with self-intersections {sq}")


@dataclass
class ChainResult:
    gamma_hat_sq: int
    chains: list[list[int]]
    singularities: list[SingularityRecord]
    model: SurfaceModel
    gamma_hat: DivClass
    blowups: int
    curves: dict[str, DivClass] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "gamma_hat_sq": self.gamma_hat_sq,
            "chains": self.chains,
            "singularities": [s.name for s in self.singularities],
        }


def _parse_D(D) -> list[tuple[int, bool]]:
    out = []
    for item in D:
        if isinstance(item, int):
            out.append((item, False))
        else:
            k, on = item
            out.append((int(k), bool(on)))
    return out


def unprojection_chain(model: SurfaceModel, D) -> ChainResult:
    """Resolve the unprojection with divisor ``D = Σ k_i P_i`` on a fibre Γ.

    ``D`` is a list of ``k_i`` or ``(k_i, on_delta0)`` pairs, one per
    distinct point.  At most one point can lie on Δ0 since Δ0·Γ = 1.
    """
    pts = _parse_D(D)
    if not pts:
        raise LatticeError("divisor D must have at least one point")
    if any(k < 1 for k, _ in pts):
        raise LatticeError("multiplicities must be positive")
    if sum(1 for _, on in pts if on) > 1:
        raise LatticeError("a fibre meets Δ0 in a single point")
    surf = model
    groups: list[list[int]] = []
    for i, (k, on) in enumerate(pts):
        idxs = []
        for j in range(k):
            parent = idxs[-1] if idxs else None
            centre = ("Gamma", "Delta0") if (on and j == 0) else ("Gamma",)
            surf = surf.blow_up(f"E{i + 1}_{j + 1}", parent, centre)
            idxs.append(len(surf.exceptionals) - 1)
        groups.append(idxs)
    gamma_hat = surf.gamma
    for idxs in groups:
        for e in idxs:
            gamma_hat = gamma_hat - surf.E(e)
    curves = {"Gamma_hat": gamma_hat}
    chains, to_contract = [], [("Gamma_hat", gamma_hat)]
    for i, idxs in enumerate(groups):
        strict = [surf.E(a) - surf.E(b) for a, b in zip(idxs, idxs[1:])]
        last = surf.E(idxs[-1])
        for j, c in enumerate(strict):
            curves[f"C{i + 1}_{j + 1}"] = c
            to_contract.append((f"C{i + 1}", c))
        curves[f"F{i + 1}"] = last
        if strict:  # C_i is empty when k_i = 1
            chains.append([c.square() for c in strict] + [last.square()])
    sings = []
    classes = [c for _, c in to_contract]
    for comp in _components(classes):
        src = to_contract[comp[0]][0]
        rec = classify_contraction([classes[i] for i in comp], src)
        if rec is not None:
            sings.append(rec)
    return ChainResult(gamma_hat.square(), chains, sings, surf, gamma_hat,
                       len(surf.exceptionals) - len(model.exceptionals), curves)


def elementary_transformation(d: int, on_delta0: bool) -> int:
    """Blow up a point on a fibre, contract the strict transform of the fibre.

    The new index is read off from the image of Δ0: its self-intersection
    after contracting the (-1)-curve Γ̂ is ``(Δ0 - mE)^2 + ((Δ0 - mE)·Γ̂)^2``.
    From ``d = 0`` and a point off Δ0 this is ``+1``, and F_0's symmetry makes
    the result F_1.
    """
    res = unprojection_chain(hirzebruch(d), [(1, on_delta0)])
    surf = res.model
    e = surf.E(0)
    delta = surf.delta0 - e if on_delta0 else surf.delta0
    image_sq = delta.square() + intersect(delta, res.gamma_hat) ** 2
    return abs(image_sq)


@dataclass(frozen=True)
class HorikawaCase:
    infinitely_near: bool
    L_sq: int
    L_dot_gamma_hat: int
    gamma_hat_sq: int
    K_dot_gamma_hat: int
    H_sq: int
    Ex_dot_Ey: int

    def to_json(self) -> dict:
        return {
            "infinitely_near": self.infinitely_near,
            "L_sq": self.L_sq,
            "L_dot_gamma_hat": self.L_dot_gamma_hat,
            "gamma_hat_sq": self.gamma_hat_sq,
            "K_dot_gamma_hat": self.K_dot_gamma_hat,
            "H_sq": self.H_sq,
            "Ex_dot_Ey": self.Ex_dot_Ey,
        }


@dataclass(frozen=True)
class HorikawaReport:
    m: int
    n: int
    pg: int
    Ksq: int
    Ksq_from_degree: int
    cases: tuple[HorikawaCase, ...]

    @property
    def consistent(self) -> bool:
        return self.Ksq == 2 * self.pg - 3 == self.Ksq_from_degree

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "pg": self.pg,
            "Ksq": self.Ksq,
            "Ksq_from_degree": self.Ksq_from_degree,
            "d": self.n - self.m,
            "cases": [c.to_json() for c in self.cases],
        }


def horikawa_L(surf: SurfaceModel, n: int) -> DivClass:
    """``π*Δ0 + (n-4)π*Γ - 2E_x - 2E_y``."""
    return surf.delta0 + (n - 4) * surf.gamma - 2 * surf.E(0) - 2 * surf.E(1)


def horikawa_numerology(m: int, n: int) -> HorikawaReport:
    """Numerical data of an odd Horikawa surface with canonical image F(m,n).

    ``K^2`` is computed independently of ``2p_g - 3`` as ``2·deg X + 1``: the
    canonical map has degree 2 onto the scroll, whose degree is ``H^2`` for
    the hyperplane class ``H = Δ0 + nΓ``, and one simple base point adds 1.
    """
    if not 1 <= m <= n:
        raise LatticeError("need n >= m >= 1")
    d = n - m
    X = hirzebruch(d)
    H = X.delta0 + n * X.gamma
    deg = H.square()
    cases = []
    for inf_near in (False, True):
        surf = X.blow_up("Ex", None, ("Gamma",))
        surf = surf.blow_up("Ey", 0 if inf_near else None, ("Gamma",))
        gh = surf.gamma - surf.E(0) - surf.E(1)
        L = horikawa_L(surf, n)
        cases.append(
            HorikawaCase(
                inf_near,
                L.square(),
                intersect(L, gh),
                gh.square(),
                intersect(surf.canonical(), gh),
                deg,
                intersect(surf.E(0), surf.E(1)),
            )
        )
    pg = m + n + 2
    return HorikawaReport(m, n, pg, 2 * pg - 3, 2 * deg + 1, tuple(cases))


def lattice_tag_for_point(m: int, n: int, point) -> int:
    """Abstract index predicted by the lattice for a k=1 unprojection of F(m,n).

    The coordinate point ``[0:1]`` is the one on the negative section.
    """
    a, b = point
    return elementary_transformation(n - m, a == 0)
