"""The acceptance grid: nine criteria, each returning per-instance verdicts.

Every criterion function takes a :class:`Grid` and a field and returns a
:class:`CriterionResult`.  ``verdicts`` maps an instance key to a boolean and
is what the characteristic probe compares between fields.
"""

from __future__ import annotations

import datetime as _dt
import json
import random
import re
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable

from . import __version__
from .ideal import (
    IdealPresentation,
    hilbert_function,
    hilbert_function_linear_algebra,
    ideal_equal,
    krull_dimension,
)
from .lattice import (
    elementary_transformation,
    hirzebruch,
    horikawa_numerology,
    lattice_tag_for_point,
    unprojection_chain,
)
from .poly import QQ, GF, Polynomial
from .rees import build_rees, eliminate_to_base, eliminate_to_unprojection
from .scroll import (
    ScrollData,
    build_scroll,
    hom_degree_zero_dim,
    verify_basis_claim,
    verify_second_claim,
)
from .unprojection import (
    build_unprojection,
    classify_elementary,
    defining_ideal,
    localization_witness,
    target_scroll_table,
    unprojection_ring,
)

FAST_PRIME = 32003
SAMPLE_POINTS = [(0, 1), (1, 0), (1, 1), (1, -1), (2, 1)]
CLASSIFY_PAIRS = [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3)]
HORIKAWA_PAIRS = [(2, 3), (3, 3), (2, 4)]
CHAIN_EXPECTED = {
    (1,): (-1, [], []),
    (2,): (-2, [[-2, -1]], ["1/2(1,1)", "A1"]),
    (3,): (-3, [[-2, -2, -1]], ["1/3(1,1)", "A2"]),
    (1, 1): (-2, [], ["1/2(1,1)"]),
    (2, 1): (-3, [[-2, -1]], ["1/3(1,1)", "A1"]),
    (2, 2): (-4, [[-2, -1], [-2, -1]], ["1/4(1,1)", "A1", "A1"]),
}
HILBERT_BOUND = 5
LEMMA_PAIRS = 10


@dataclass(frozen=True)
class Grid:
    m_max: int = 3
    n_max: int = 3
    k_max: int = 3

    def cells(self) -> list[tuple[int, int]]:
        return [(m, n) for m in range(1, self.m_max + 1) for n in range(m, self.n_max + 1)]

    def contains(self, m: int, n: int, k: int = 1) -> bool:
        return m <= self.m_max and n <= self.n_max and k <= self.k_max

    def restrict(self, other: "Grid") -> "Grid":
        return Grid(
            min(self.m_max, other.m_max),
            min(self.n_max, other.n_max),
            min(self.k_max, other.k_max),
        )

    def to_json(self) -> dict:
        return {"m_max": self.m_max, "n_max": self.n_max, "k_max": self.k_max}


DEFAULT_GRID = Grid()
REES_GRID = Grid(2, 3, 2)

_GRID_RE = re.compile(r"^\s*([mnk])\s*<=\s*(\d+)\s*$")


def parse_grid(text: str) -> Grid:
    """Parse ``"m<=2 n<=2 k<=2"``; unspecified bounds keep their defaults."""
    bounds = DEFAULT_GRID.to_json()
    parts = [p for p in re.split(r"[\s,]+", text.strip()) if p]
    if not parts:
        raise ValueError("empty grid specification")
    for p in parts:
        mt = _GRID_RE.match(p)
        if not mt:
            raise ValueError(f"bad grid bound {p!r}; expected e.g. m<=2")
        val = int(mt.group(2))
        if val < 1:
            raise ValueError(f"grid bound {p!r} must be >= 1")
        bounds[f"{mt.group(1)}_max"] = val
    return Grid(**bounds)


def field_tag(fld) -> str:
    return fld.spec()


@dataclass
class CriterionResult:
    number: int
    name: str
    verdicts: dict[str, bool] = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.verdicts) and all(self.verdicts.values())

    @property
    def failures(self) -> list[str]:
        return sorted(k for k, v in self.verdicts.items() if not v)

    def to_json(self) -> dict:
        return {
            "number": self.number,
            "name": self.name,
            "passed": self.passed,
            "instances": len(self.verdicts),
            "failures": self.failures,
            "details": self.details,
            "seconds": round(self.seconds, 3),
        }

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        extra = "" if self.passed else f" ({len(self.failures)} failing: {', '.join(self.failures[:3])}...)"
        return f"[{tag}] criterion {self.number}: {self.name} - {len(self.verdicts)} instances{extra}"


# --------------------------------------------------------------------------
# instance generators


def f_choices(sd: ScrollData, k: int) -> list[tuple[str, Polynomial]]:
    """Five labelled choices of f of degree k in ``a = x0m``, ``b = x1n``.

    Labels do not depend on the field, so verdicts can be compared across
    characteristics.
    """
    a, b = sd.x0m, sd.x1n
    two, three = sd.field(2), sd.field(3)
    if k == 1:
        return [("a", a), ("b", b), ("a+b", a + b), ("a-2b", a - b.scale(two)), ("3a+b", a.scale(three) + b)]
    return [
        (f"a^{k}", a**k),
        (f"b^{k}", b**k),
        (f"a^{k - 1}b", a ** (k - 1) * b),
        (f"(a+b)^{k}", (a + b) ** k),
        (f"a^{k}-2b^{k}", a**k - (b**k).scale(two)),
    ]


def _scrolls(fld, grid: Grid) -> dict[tuple[int, int], ScrollData]:
    return {(m, n): build_scroll(m, n, fld) for m, n in grid.cells()}


def _key(prefix: str, **kw) -> str:
    return prefix + ":" + ",".join(f"{k}={v}" for k, v in kw.items())


def _timed(fn: Callable[..., CriterionResult]):
    def wrapper(*args, **kwargs):
        t = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# --------------------------------------------------------------------------
# criteria


@_timed
def criterion_presentations(grid: Grid = DEFAULT_GRID, fld=QQ) -> CriterionResult:
    res = CriterionResult(1, "defining ideal equals the 2x2-minor ideal")
    for (m, n), sd in _scrolls(fld, grid).items():
        for k in range(1, grid.k_max + 1):
            for label, f in f_choices(sd, k):
                u = build_unprojection(sd, f)
                res.verdicts[_key("c1", m=m, n=n, k=k, f=label)] = u.presentations_equal()
    return res


@_timed
def criterion_codimension(grid: Grid = DEFAULT_GRID, fld=QQ) -> CriterionResult:
    res = CriterionResult(2, "Krull dimension of Q2 is 3 (codimension m+n)")
    for (m, n), sd in _scrolls(fld, grid).items():
        for k in range(1, grid.k_max + 1):
            for label, f in f_choices(sd, k):
                u = build_unprojection(sd, f)
                dim = krull_dimension(u.Q2_minors)
                res.verdicts[_key("c2", m=m, n=n, k=k, f=label)] = (
                    dim == 3 and u.codimension() == m + n and localization_witness(u)
                )
    return res


@_timed
def criterion_classification(grid: Grid = DEFAULT_GRID, fld=QQ) -> CriterionResult:
    res = CriterionResult(3, "k=1 classification by elementary transformation")
    table = {}
    for m, n in CLASSIFY_PAIRS:
        if not grid.contains(m, n):
            continue
        sd = build_scroll(m, n, fld)
        rows = []
        for p in SAMPLE_POINTS:
            c = classify_elementary(sd, p)
            expected = (m, n + 1) if p[0] == 0 else (m + 1, n)
            ok = c.verified and c.target == expected and bool(c.determinant)
            res.verdicts[_key("c3", m=m, n=n, point=f"{p[0]}:{p[1]}")] = ok
            rows.append(c)
        special = sum(1 for c in rows if c.signed_index == n - m + 1)
        res.verdicts[_key("c3", m=m, n=n, check="unique F_(n-m+1)")] = special == 1
        table[f"{m},{n}"] = {f"{p[0]}:{p[1]}": c.tag for p, c in zip(SAMPLE_POINTS, rows)}
    res.details["table"] = table
    return res


def random_lemma_pair(sd: ScrollData, k: int, rng: random.Random) -> tuple[Polynomial, Polynomial]:
    """A random ``f'`` in ``k[x0m, x1n]_k`` and a random ``i`` in ``I_k``."""
    fld = sd.field
    ring = sd.ring

    def coeff():
        c = 0
        while c == 0:
            c = rng.randint(-5, 5)
        return fld(c)

    fp = ring.zero()
    while fp.is_zero():
        fp = ring.zero()
        for j in range(k + 1):
            if rng.random() < 0.6:
                fp = fp + (sd.x0m ** j * sd.x1n ** (k - j)).scale(coeff())
    names = list(ring.names)
    i = ring.zero()
    while i.is_zero():
        for u in sd.ideal_names():
            if rng.random() < 0.5:
                mono = ring.one()
                for _ in range(k - 1):
                    mono = mono * ring.var(rng.choice(names))
                i = i + (ring.var(u) * mono).scale(coeff())
    return fp, i


@_timed
def criterion_lemma(grid: Grid = DEFAULT_GRID, fld=QQ, pairs: int = LEMMA_PAIRS, seed: int = 0) -> CriterionResult:
    res = CriterionResult(4, "T -> T - phi(i) carries Q2(f') onto Q2(f'+i)")
    for (m, n), sd in _scrolls(fld, grid).items():
        for k in range(1, grid.k_max + 1):
            rng = random.Random(f"{seed}:{m}:{n}:{k}")
            R2 = unprojection_ring(sd, k)
            for t in range(pairs):
                fp, i = random_lemma_pair(sd, k, rng)
                subst = build_unprojection(sd, fp + i).normalization.subst
                moved = IdealPresentation(R2, [subst(g) for g in defining_ideal(sd, fp, R2).generators])
                ok = ideal_equal(moved, defining_ideal(sd, fp + i, R2))
                res.verdicts[_key("c4", m=m, n=n, k=k, pair=t)] = ok
    return res


@_timed
def criterion_scroll_claims(grid: Grid = DEFAULT_GRID, fld=QQ, degree: int = 4) -> CriterionResult:
    res = CriterionResult(5, "standard-basis claim, kernel claim, Hom degree-zero dimension")
    for (m, n), sd in _scrolls(fld, grid).items():
        res.verdicts[_key("c5", m=m, n=n, claim="basis")] = verify_basis_claim(sd, degree)
        res.verdicts[_key("c5", m=m, n=n, claim="kernel")] = verify_second_claim(sd, degree)
        res.verdicts[_key("c5", m=m, n=n, claim="hom0")] = hom_degree_zero_dim(sd) == 2
    return res


@_timed
def criterion_rees(grid: Grid = DEFAULT_GRID, fld=QQ) -> CriterionResult:
    """Asserted: base elimination equals Q; unprojection elimination contains Q2.
    Equality of the latter is recorded in the details only."""
    res = CriterionResult(6, "Rees eliminations recover Q and contain Q2")
    g = grid.restrict(REES_GRID)
    records = {}
    for (m, n), sd in _scrolls(fld, g).items():
        for k in range(1, g.k_max + 1):
            for f in (sd.x0m**k, sd.x1n**k):
                r = build_rees(sd, f)  # monic, so the printed f is field independent
                base = eliminate_to_base(r)
                un = eliminate_to_unprojection(r)
                key = dict(m=m, n=n, k=k, f=f)
                res.verdicts[_key("c6", part="base", **key)] = base.equal
                res.verdicts[_key("c6", part="unprojection", **key)] = un.contains_target
                records[_key("c6", **key)] = {"base": base.to_json(), "unprojection": un.to_json()}
    res.details["comparisons"] = records
    stored = load_golden().get("elimination", {})
    res.details["golden_match"] = all(
        stored.get(f"{key},field={field_tag(fld)}") == rec for key, rec in records.items()
    )
    return res


@_timed
def criterion_lattice(grid: Grid = DEFAULT_GRID, fld=QQ) -> CriterionResult:
    res = CriterionResult(7, "intersection lattice recipe, elementary transformations, Horikawa")
    for k in range(1, 6):
        for D in ([k], [1] * k):
            out = unprojection_chain(hirzebruch(1), D)
            res.verdicts[_key("c7", gamma_hat=k, D="+".join(map(str, D)))] = out.gamma_hat_sq == -k
    for D, (sq, chains, sings) in CHAIN_EXPECTED.items():
        out = unprojection_chain(hirzebruch(2), list(D)).to_json()
        res.verdicts[_key("c7", chain="+".join(map(str, D)))] = out == {
            "gamma_hat_sq": sq,
            "chains": chains,
            "singularities": sings,
        }
    for d in range(0, 5):
        up = elementary_transformation(d, True)
        down = elementary_transformation(d, False)
        ok = up == d + 1 and down == (d - 1 if d else 1)
        res.verdicts[_key("c7", elementary=d)] = ok
    for m, n in HORIKAWA_PAIRS:
        rep = horikawa_numerology(m, n)
        res.verdicts[_key("c7", horikawa=f"{m},{n}")] = rep.pg == m + n + 2 and rep.consistent
    for m, n in CLASSIFY_PAIRS:
        if not grid.contains(m, n):
            continue
        sd = build_scroll(m, n, fld)
        for p in SAMPLE_POINTS:
            c = classify_elementary(sd, p)
            ok = lattice_tag_for_point(m, n, p) == abs(c.signed_index)
            res.verdicts[_key("c7", m=m, n=n, tag_point=f"{p[0]}:{p[1]}")] = ok
    return res


# --------------------------------------------------------------------------
# Hilbert tables and golden files


def golden_path() -> Path:
    return Path(str(resources.files("scrollunproj") / "data" / "golden.json"))


def load_golden(path: Path | None = None) -> dict:
    path = path or golden_path()
    if not path.exists():
        return {"provenance": {}, "hilbert": {}, "elimination": {}}
    return json.loads(path.read_text())


def golden_key(m: int, n: int, k: int, f: str, fld) -> str:
    """``f`` is the label from :func:`f_choices`, with ``a = x0m`` and ``b = x1n``."""
    return f"m={m},n={n},k={k},f={f},field={field_tag(fld)}"


def hilbert_instances(grid: Grid, fld):
    for (m, n), sd in _scrolls(fld, grid).items():
        for k in range(1, grid.k_max + 1):
            for label, f in f_choices(sd, k):
                yield m, n, k, label, build_unprojection(sd, f)


@_timed
def criterion_hilbert(grid: Grid = DEFAULT_GRID, fld=QQ, golden: dict | None = None) -> CriterionResult:
    res = CriterionResult(9, "Hilbert tables: k=1 matches target scroll, k>=2 matches golden")
    golden = load_golden() if golden is None else golden
    for m, n, k, f, u in hilbert_instances(grid, fld):
        table = list(hilbert_function(u.Q2_minors, HILBERT_BOUND))
        if k == 1:
            ok = table == list(target_scroll_table(u, HILBERT_BOUND))
            res.verdicts[_key("c9", m=m, n=n, k=k, f=f)] = ok
        else:
            stored = golden.get("hilbert", {}).get(golden_key(m, n, k, f, fld))
            res.verdicts[_key("c9", m=m, n=n, k=k, f=f)] = stored == table
    return res


def regenerate_golden(grid: Grid = DEFAULT_GRID, fields=(QQ, GF(FAST_PRIME)), path: Path | None = None) -> dict:
    """Recompute golden Hilbert tables (k >= 2) and elimination verdicts.

    Each table is computed twice, by standard monomials and by the rank of
    the span of monomial multiples of the generators, and only stored when
    both agree.
    """
    path = path or golden_path()
    data = {
        "provenance": {
            "generator": f"scrollunproj {__version__} verify-all --update-golden",
            "created": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
            "grid": grid.to_json(),
            "hilbert_bound": HILBERT_BOUND,
            "hilbert_method": "standard monomials of a reduced Groebner basis, cross-checked by rank of degree parts",
        },
        "hilbert": {},
        "elimination": {},
    }
    for fld in fields:
        for m, n, k, f, u in hilbert_instances(grid, fld):
            if k < 2:
                continue
            a = list(hilbert_function(u.Q2_minors, HILBERT_BOUND))
            b = list(hilbert_function_linear_algebra(u.Q2_minors, HILBERT_BOUND))
            if a != b:
                raise RuntimeError(f"Hilbert oracles disagree for {golden_key(m, n, k, f, fld)}: {a} vs {b}")
            data["hilbert"][golden_key(m, n, k, f, fld)] = a
        rees = criterion_rees(grid, fld)
        for key, rec in rees.details["comparisons"].items():
            data["elimination"][f"{key},field={field_tag(fld)}"] = rec
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
    return data


# --------------------------------------------------------------------------
# characteristic probe and the full run

CRITERIA = {
    1: criterion_presentations,
    2: criterion_codimension,
    3: criterion_classification,
    4: criterion_lemma,
    5: criterion_scroll_claims,
    6: criterion_rees,
    7: criterion_lattice,
    9: criterion_hilbert,
}


def grid_verdicts(grid: Grid, fld, numbers=(1, 2, 3, 4, 5, 6, 9)) -> dict[str, bool]:
    out = {}
    for k in numbers:
        r = CRITERIA[k](grid, fld)
        for key, v in r.verdicts.items():
            # golden keys are field specific; the verdict itself is what is compared
            out[key] = v
    return out


@_timed
def criterion_characteristic(grid: Grid = DEFAULT_GRID, fld=QQ, reference: dict | None = None,
                             other: dict | None = None, prime: int = FAST_PRIME) -> CriterionResult:
    res = CriterionResult(8, f"identical verdicts over Q and GF({prime})")
    ref = reference if reference is not None else grid_verdicts(grid, QQ)
    alt = other if other is not None else grid_verdicts(grid, GF(prime))
    for key in sorted(set(ref) | set(alt)):
        res.verdicts[_key("c8", instance=key)] = ref.get(key) == alt.get(key)
    res.details["reference_all_true"] = all(ref.values())
    return res


def run_all(grid: Grid = DEFAULT_GRID, fld=QQ, numbers=None) -> list[CriterionResult]:
    """Run the requested criteria (default: all nine) in numeric order.

    Criterion 8 reuses the verdicts already computed over ``fld`` and reruns
    the algebraic criteria over the other field.
    """
    numbers = sorted(numbers or range(1, 10))
    results: dict[int, CriterionResult] = {}
    for k in numbers:
        if k != 8:
            results[k] = CRITERIA[k](grid, fld)
    if 8 in numbers:
        base = (1, 2, 3, 4, 5, 6, 9)
        here = {}
        for k in base:
            r = results.get(k) or CRITERIA[k](grid, fld)
            here.update(r.verdicts)
        other_fld = GF(FAST_PRIME) if fld is QQ or fld.spec() == "q" else QQ
        there = grid_verdicts(grid, other_fld, base)
        results[8] = criterion_characteristic(grid, fld, here, there)
    return [results[k] for k in numbers]
