"""``scrollunproj`` command line.

Exit codes: 0 when every asserted check passes, 1 when a check fails or f
gives a ring that is not a domain, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from math import comb

from .ideal import GroebnerBudgetExceeded, hilbert_function, krull_dimension
from .lattice import (
    LatticeError,
    elementary_transformation,
    hirzebruch,
    horikawa_numerology,
    unprojection_chain,
)
from .poly import field_from_spec
from .rees import (
    build_rees,
    eliminate_to_base,
    eliminate_to_unprojection,
    specialise_to_unprojection,
    strict_transform_ideal,
    tautological_check,
)
from .scroll import build_g_map, build_scroll, g_kills_Q, verify_phi
from .unprojection import (
    NotADomainError,
    build_unprojection,
    classify_elementary,
    coefficient_point,
    f_from_divisor,
    localization_witness,
    target_scroll_table,
)
from . import verify

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


class Report:
    """Collects results and the asserted checks that decide the status."""

    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.results: dict = {}
        self.checks: dict[str, bool] = {}
        self.lines: list[str] = []
        self.start = time.perf_counter()
        self.error: str | None = None

    def check(self, name: str, ok: bool) -> bool:
        self.checks[name] = bool(ok)
        self.lines.append(f"  {'ok  ' if ok else 'FAIL'} {name}")
        return ok

    def say(self, text: str = ""):
        self.lines.append(text)

    @property
    def status(self) -> str:
        if self.error is not None:
            return "fail"
        vals = list(self.checks.values())
        if all(vals):
            return "pass"
        return "partial" if any(vals) else "fail"

    def envelope(self) -> dict:
        results = dict(self.results)
        results["checks"] = self.checks
        if self.error is not None:
            results["error"] = self.error
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": results,
            "status": self.status,
            "timing_ms": round((time.perf_counter() - self.start) * 1000, 3),
        }

    def exit_code(self) -> int:
        return EXIT_PASS if self.status == "pass" else EXIT_FAIL

    def emit(self, as_json: bool, out=sys.stdout):
        if as_json:
            out.write(json.dumps(self.envelope(), indent=2, sort_keys=True) + "\n")
            return
        for line in self.lines:
            out.write(line + "\n")
        if self.error is not None:
            out.write(f"error: {self.error}\n")
        out.write(f"status: {self.status}\n")


def _field(text: str):
    try:
        return field_from_spec(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _scroll(args, fld):
    if not 1 <= args.m <= args.n:
        raise UsageError(f"need n >= m >= 1, got m={args.m}, n={args.n}")
    return build_scroll(args.m, args.n, fld)


def scroll_hilbert_closed_form(m: int, n: int, d: int) -> int:
    """``h(d) = (m+n)*C(d+1, 2) + d + 1`` for the scroll F(m, n)."""
    return (m + n) * comb(d + 1, 2) + d + 1


# --------------------------------------------------------------------------
# subcommands


def cmd_scroll(args) -> Report:
    fld = _field(args.field)
    rep = Report("scroll", {"m": args.m, "n": args.n, "field": fld.spec(), "degree_bound": args.degree_bound})
    sd = _scroll(args, fld)
    bound = args.degree_bound
    dim = krull_dimension(sd.Q)
    table = list(hilbert_function(sd.Q, bound))
    rep.results.update(
        {
            "presentation": sd.to_json(),
            "generators": len(sd.Q.generators),
            "dimension": dim,
            "hilbert": table,
            "g_map": {nm: str(img) for nm, img in zip(sd.ring.names, build_g_map(sd).images)},
        }
    )
    rep.say(f"F({sd.m},{sd.n}) in P^{sd.m + sd.n + 1} over {fld.spec()}: {len(sd.Q.generators)} minors")
    for g in sd.Q.generators:
        rep.say(f"  {g}")
    rep.say(f"Hilbert function d=0..{bound}: {table}")
    rep.check("dimension == 3", dim == 3)
    rep.check("Hilbert table equals (m+n)*C(d+1,2)+d+1",
              table == [scroll_hilbert_closed_form(sd.m, sd.n, d) for d in range(bound + 1)])
    rep.check("phi(I) lies in S", verify_phi(sd))
    rep.check("g kills Q", g_kills_Q(sd))
    return rep


def parse_points(text: str) -> list[tuple[tuple[Fraction, Fraction], int]]:
    """``"0:1^2, 1:-1"`` -> ``[((0, 1), 2), ((1, -1), 1)]``."""
    pts = []
    for item in (p.strip() for p in text.split(",")):
        if not item:
            continue
        mult = 1
        if "^" in item:
            item, m = item.split("^", 1)
            try:
                mult = int(m)
            except ValueError:
                raise UsageError(f"bad multiplicity in {item}^{m}") from None
        if item.count(":") != 1:
            raise UsageError(f"points are written a:b, got {item!r}")
        a, b = item.split(":")
        try:
            pts.append(((Fraction(a.strip()), Fraction(b.strip())), mult))
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad coordinates in {item!r}") from None
    if not pts:
        raise UsageError("--points needs at least one point")
    return pts


def _golden_match(u, fld) -> tuple[str | None, list | None]:
    """Find a golden Hilbert table for ``u`` by matching f against the grid choices."""
    golden = verify.load_golden()
    for label, f in verify.f_choices(u.scroll, u.k):
        if f == u.f:
            key = verify.golden_key(u.m, u.n, u.k, label, fld)
            return key, golden.get("hilbert", {}).get(key)
    return None, None


def cmd_unproject(args) -> Report:
    fld = _field(args.field)
    inputs = {"m": args.m, "n": args.n, "field": fld.spec(), "f": args.f, "points": args.points,
              "rees": args.rees, "degree_bound": args.degree_bound}
    rep = Report("unproject", inputs)
    sd = _scroll(args, fld)
    if (args.f is None) == (args.points is None):
        raise UsageError("give exactly one of --f and --points")
    try:
        if args.f is not None:
            f = sd.ring.parse(args.f)
        else:
            f = f_from_divisor(sd, parse_points(args.points))
    except (ValueError, KeyError) as exc:
        raise UsageError(f"cannot read f: {exc}") from None
    try:
        u = build_unprojection(sd, f)
    except NotADomainError as exc:
        rep.error = str(exc)
        rep.results["diagnosis"] = "not a domain"
        rep.say(f"f = {f}")
        return rep
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    bound = args.degree_bound
    rep.results["unprojection"] = u.to_json()
    rep.results["input_f"] = str(f)
    if not u.normalization.i.is_zero():
        rep.results["normalised_away"] = str(u.normalization.i)
    rep.say(f"S_un(f) for F({sd.m},{sd.n}), f = {f}, k = {u.k}")
    if str(f) != str(u.f):
        rep.say(f"  f normalised to {u.f} (dropped {u.normalization.i}, which lies in I)")
    rep.say(f"  ring: {u.ring}")
    rep.say("  2x2 minors:")
    for g in u.Q2_minors.generators:
        rep.say(f"    {g}")
    codim = u.codimension()
    table = list(hilbert_function(u.Q2_minors, bound))
    rep.results.update({"codimension": codim, "hilbert": table})
    rep.say(f"  codimension {codim}, Hilbert function d=0..{bound}: {table}")
    rep.check("defining ideal equals minor ideal", u.presentations_equal())
    rep.check("codimension == m+n", codim == sd.m + sd.n)
    rep.check("relations vanish after localising at x00", localization_witness(u))
    if u.k == 1:
        c = classify_elementary(sd, coefficient_point(u))
        rep.results["classification"] = c.to_json()
        rep.say(f"  k=1: isomorphic to {c.tag}, abstractly {c.abstract}")
        rep.check("classification certified", c.verified)
        rep.check("Hilbert table equals target scroll table", table == list(target_scroll_table(u, bound)))
    else:
        key, stored = _golden_match(u, fld)
        rep.results["golden_key"] = key
        if stored is not None:
            n = min(len(stored), len(table))
            rep.check("Hilbert table matches golden", table[:n] == stored[:n])
    if args.rees:
        r = build_rees(sd, u.f)
        base = eliminate_to_base(r)
        un = eliminate_to_unprojection(r)
        spec = specialise_to_unprojection(r)
        rep.results["rees"] = {
            "B_generators": len(r.B.generators),
            "strict_transform": [str(g) for g in strict_transform_ideal(r).generators],
            "eliminate_to_base": base.to_json(),
            "eliminate_to_unprojection": un.to_json(),
            "specialisation": spec.to_json(),
        }
        rep.say(f"  Rees presentation: {len(r.B.generators)} minors in {r.ring.nvars} variables")
        rep.check("Rees tautological relations", tautological_check(r))
        rep.check("eliminating all T gives Q", base.equal)
        rep.check("eliminating T0i, T1j contains Q2", un.contains_target)
        rep.say(f"  (elimination result inside Q2: {un.contained_in_target}, equal: {un.equal})")
        rep.check("T_u -> phi(u), Tf -> T maps B+Q onto Q2", spec.equal)
    return rep


def cmd_lattice(args) -> Report:
    sub = args.lattice_cmd
    if sub == "chain":
        try:
            D = [int(x) for x in args.D.replace(" ", "").split(",") if x]
        except ValueError:
            raise UsageError(f"--D takes comma separated multiplicities, got {args.D!r}") from None
        if not D or any(k < 1 for k in D):
            raise UsageError("--D needs positive multiplicities")
        rep = Report("lattice chain", {"D": D, "d": args.d})
        out = unprojection_chain(hirzebruch(args.d), D)
        rep.results.update(out.to_json())
        rep.say(f"Gamma_hat^2 = {out.gamma_hat_sq}")
        rep.say(f"chains: {out.chains}")
        rep.say(f"singularities: {', '.join(s.name for s in out.singularities) or 'none'}")
        rep.check("Gamma_hat^2 == -k", out.gamma_hat_sq == -sum(D))
        rep.check("one A-type point per k_i >= 2",
                  sum(1 for s in out.singularities if s.kind == "A") == sum(1 for k in D if k >= 2))
        return rep
    if sub == "elementary":
        if args.d < 0:
            raise UsageError("d must be >= 0")
        rep = Report("lattice elementary", {"d": args.d, "on_delta0": args.on_delta0})
        d2 = elementary_transformation(args.d, args.on_delta0)
        rep.results["d_new"] = d2
        rep.say(f"F_{args.d} -> F_{d2}")
        rep.check("d' = d +- 1 (F_0 -> F_1)", d2 == args.d + 1 or d2 == abs(args.d - 1))
        return rep
    if sub == "horikawa":
        if not 1 <= args.m <= args.n:
            raise UsageError(f"need n >= m >= 1, got m={args.m}, n={args.n}")
        rep = Report("lattice horikawa", {"m": args.m, "n": args.n})
        h = horikawa_numerology(args.m, args.n)
        rep.results.update(h.to_json())
        rep.say(f"p_g = {h.pg}, K^2 = {h.Ksq} (from 2*deg X + 1: {h.Ksq_from_degree})")
        for c in h.cases:
            kind = "infinitely near" if c.infinitely_near else "distinct"
            rep.say(f"  {kind}: L^2 = {c.L_sq}, L.Gamma_hat = {c.L_dot_gamma_hat}, Gamma_hat^2 = {c.gamma_hat_sq}")
        rep.check("p_g == m+n+2", h.pg == args.m + args.n + 2)
        rep.check("K^2 == 2p_g-3 == 2*deg X + 1", h.consistent)
        rep.check("Gamma_hat^2 == -2", all(c.gamma_hat_sq == -2 for c in h.cases))
        return rep
    raise UsageError(f"unknown lattice subcommand {sub!r}")


def _criteria(text: str | None) -> list[int]:
    if text is None:
        return list(range(1, 10))
    try:
        nums = sorted({int(x) for x in text.split(",") if x.strip()})
    except ValueError:
        raise UsageError(f"--criteria takes numbers 1..9, got {text!r}") from None
    if not nums or any(not 1 <= k <= 9 for k in nums):
        raise UsageError(f"--criteria takes numbers 1..9, got {text!r}")
    return nums


def cmd_verify_all(args) -> Report:
    fld = _field(args.field)
    try:
        grid = verify.parse_grid(args.grid) if args.grid else verify.DEFAULT_GRID
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    nums = _criteria(args.criteria)
    rep = Report("verify-all", {"grid": grid.to_json(), "field": fld.spec(), "criteria": nums,
                                "update_golden": args.update_golden})
    if args.update_golden:
        data = verify.regenerate_golden(grid)
        rep.results["golden"] = {"path": str(verify.golden_path()), "hilbert_tables": len(data["hilbert"]),
                                 "elimination_records": len(data["elimination"])}
        rep.say(f"golden file rewritten: {verify.golden_path()}")
    results = verify.run_all(grid, fld, nums)
    rep.results["criteria"] = [r.to_json() for r in results]
    for r in results:
        rep.say(r.line())
        rep.checks[f"criterion {r.number}"] = r.passed
    return rep


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--field", default="q", help="coefficient field: q or fp:<prime> (default q)")
    common.add_argument("--degree-bound", type=int, default=5, help="top degree for Hilbert tables (default 5)")

    p = argparse.ArgumentParser(prog="scrollunproj", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("scroll", parents=[common], help="build and check the scroll F(m,n)")
    s.add_argument("m", type=int)
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_scroll)

    u = sub.add_parser("unproject", parents=[common], help="build and check S_un(f)")
    u.add_argument("m", type=int)
    u.add_argument("n", type=int)
    u.add_argument("--f", help="f as a polynomial in the scroll variables, e.g. 'x12^2'")
    u.add_argument("--points", help="divisor on Gamma as a:b^k,... e.g. '0:1' or '1:1^2,1:-1'")
    u.add_argument("--rees", action="store_true", help="also run the Rees-algebra eliminations")
    u.set_defaults(func=cmd_unproject)

    lat = sub.add_parser("lattice", help="intersection numbers on blown-up Hirzebruch surfaces")
    lsub = lat.add_subparsers(dest="lattice_cmd", required=True)
    lc = lsub.add_parser("chain", parents=[common], help="resolve an unprojection with divisor D")
    lc.add_argument("--D", required=True, help="multiplicities k_i of distinct points, e.g. '2,1'")
    lc.add_argument("--d", type=int, default=0, help="Hirzebruch index (default 0)")
    le = lsub.add_parser("elementary", parents=[common], help="elementary transformation of F_d")
    le.add_argument("d", type=int)
    le.add_argument("--on-delta0", action="store_true", help="blow up a point on the negative section")
    lh = lsub.add_parser("horikawa", parents=[common], help="odd Horikawa numerology for F(m,n)")
    lh.add_argument("m", type=int)
    lh.add_argument("n", type=int)
    lat.set_defaults(func=cmd_lattice)

    v = sub.add_parser("verify-all", parents=[common], help="run the acceptance grid")
    v.add_argument("--grid", help="bounds such as 'm<=2 n<=2 k<=2'")
    v.add_argument("--criteria", help="comma separated subset of 1..9")
    v.add_argument("--update-golden", action="store_true", help="regenerate golden files first")
    v.set_defaults(func=cmd_verify_all)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "degree_bound", 1) < 0:
        parser.error("--degree-bound must be >= 0")
    try:
        rep = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LatticeError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GroebnerBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    rep.emit(args.json, out)
    return rep.exit_code()


def main_entry():  # console script
    sys.exit(main())
