"""Command-line front end: ``tyind table|verify|classify|center|fiber|frobenius``."""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

from .abelian import DEFAULT_AUT_BOUND, AbelianGroup, parse_group_spec
from .cyclotomic import Cyclotomic, ScaledValue, factorize
from .errors import BoundExceeded, NotSquare, SpecError, TheoremViolation, TYError
from .finfield import (classify_by_indicators, is_elementary_abelian, nondegenerate_forms,
                       separating_indicators)
from .pmg import Bicharacter, bichar_from_json, named_bichar
from .tycat import DEFAULT_WORK_BOUND, TYCategory
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_BOUND, EXIT_SPEC = 0, 1, 2, 3


@dataclass(frozen=True)
class JobSpec:
    command: str
    group: Optional[AbelianGroup] = None
    chi: Optional[Bicharacter] = None
    tau_sign: Optional[int] = None
    ns: tuple = ()
    fmt: str = "pretty"
    bound_terms: int = DEFAULT_WORK_BOUND
    bound_aut: int = DEFAULT_AUT_BOUND

    def category(self) -> TYCategory:
        if self.chi is None or self.tau_sign is None:
            raise SpecError("this command needs --group, --bichar and --tau")
        return TYCategory(self.chi, self.tau_sign)

    def spec_json(self) -> Dict[str, Any]:
        out = self.chi.to_json()
        out["tau"] = "+" if self.tau_sign > 0 else "-"
        return out


# -- parsing -------------------------------------------------------------------


def parse_tau(s: str) -> int:
    table = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}
    if s not in table:
        raise SpecError(f"tau must be '+' or '-', got {s!r}")
    return table[s]


def parse_range(s: str) -> tuple:
    """``4``, ``1..8`` or ``2,4,6``."""
    try:
        if ".." in s:
            lo, hi = s.split("..", 1)
            out = tuple(range(int(lo), int(hi) + 1))
        else:
            out = tuple(int(x) for x in s.split(","))
    except ValueError:
        raise SpecError(f"bad n range {s!r}; use 4, 1..8 or 2,4,6") from None
    if not out or min(out) < 1:
        raise SpecError(f"n range {s!r} must be non-empty with n >= 1")
    return out


def parse_bichar(s: Optional[str], group: Optional[AbelianGroup]) -> Bicharacter:
    if s is None:
        if group is not None and group.order == 1:
            return Bicharacter.trivial(group)
        raise SpecError("--bichar is required")
    if s.startswith("@"):
        with open(s[1:]) as fh:
            s = fh.read()
    s = s.strip()
    if s.startswith("{"):
        try:
            obj = json.loads(s)
        except json.JSONDecodeError as exc:
            raise SpecError(f"bicharacter JSON: {exc}") from None
        return bichar_from_json(obj, group)
    if group is None:
        raise SpecError("--group is required with a named bicharacter")
    if ":" in s:
        kind, arg = s.split(":", 1)
        try:
            if kind == "cyclic":
                return named_bichar(group, {"cyclic": int(arg)})
            if kind == "diag":
                return named_bichar(group, {"diag": [int(x) for x in arg.split(",")]})
        except ValueError:
            raise SpecError(f"bad bicharacter argument {s!r}") from None
        raise SpecError(f"unknown bicharacter form {kind!r}")
    return named_bichar(group, s)


def build_spec(args: argparse.Namespace) -> JobSpec:
    group = parse_group_spec(args.group) if getattr(args, "group", None) else None
    chi = None
    tau = None
    raw = getattr(args, "bichar", None)
    if raw is not None and raw.startswith("@"):
        with open(raw[1:]) as fh:
            raw = fh.read()
    if raw is not None or group is not None:
        if raw is not None and raw.strip().startswith("{"):
            try:
                obj = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise SpecError(f"bicharacter JSON: {exc}") from None
            if "tau" in obj and getattr(args, "tau", None) is None:
                tau = parse_tau(str(obj["tau"]))
        chi = parse_bichar(raw, group)
    if getattr(args, "tau", None) is not None:
        tau = parse_tau(args.tau)
    ns = parse_range(args.n) if getattr(args, "n", None) else ()
    return JobSpec(args.command, chi.group if chi else group, chi, tau, ns,
                   getattr(args, "format", "pretty"), args.bound_terms, args.bound_aut)


# -- rendering -------------------------------------------------------------------


def _approx(x) -> List[float]:
    z = x.to_complex() if hasattr(x, "to_complex") else complex(x)
    re_, im = round(z.real, 12), round(z.imag, 12)
    return [re_ + 0.0, im + 0.0]


def _approx_str(x) -> str:
    re_, im = _approx(x)
    return f"{re_:.12g}{im:+.12g}i"


def _exact(x) -> str:
    if isinstance(x, ScaledValue):
        return x.render()
    return Cyclotomic.coerce(x).reduce_conductor().render()


def _emit(rows: List[Dict[str, Any]], fmt: str, header: Sequence[str], meta: Dict[str, Any],
          out) -> None:
    if fmt == "json":
        out.write(json.dumps({**meta, "rows": rows}, sort_keys=True) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([r[h] if not isinstance(r[h], list) else _fmt_pair(r[h]) for h in header])
    else:
        widths = {h: max(len(h), *(len(_cell(r[h])) for r in rows)) if rows else len(h) for h in header}
        out.write("  ".join(h.ljust(widths[h]) for h in header).rstrip() + "\n")
        for r in rows:
            out.write("  ".join(_cell(r[h]).ljust(widths[h]) for h in header).rstrip() + "\n")


def _fmt_pair(p) -> str:
    return f"{p[0]:.12g}{p[1]:+.12g}i"


def _cell(v) -> str:
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, float) for x in v):
        return _fmt_pair(v)
    return str(v)


# -- commands ------------------------------------------------------------------


def table_rows(C: TYCategory, ns: Sequence[int]) -> List[Dict[str, Any]]:
    rows = []
    for a in C.group.elements:
        for n in ns:
            v = C.nu_invertible(a, n)
            rows.append({"object": "a=" + ",".join(map(str, a)), "n": n, "exact": str(v),
                         "approx": _approx(v)})
    for n in ns:
        v = C.nu_m(n)
        rows.append({"object": "m", "n": n, "exact": v.render(), "approx": _approx(v)})
    for n in ns:
        v = C.nu_category(n)
        rows.append({"object": "C", "n": n, "exact": v.render(), "approx": _approx(v)})
    return rows


def run_table(spec: JobSpec, out) -> int:
    C = spec.category()
    ns = spec.ns or tuple(range(1, 9))
    rows = table_rows(C, ns)
    _emit(rows, spec.fmt, ["object", "n", "exact", "approx"], {"spec": spec.spec_json()}, out)
    return EXIT_OK


def run_verify(spec: JobSpec, suite: str, kmax: int, out) -> int:
    cats = [spec.category()] if spec.chi is not None else None
    checks = run_suite(suite, cats, kmax=kmax, bound=spec.bound_terms)
    for c in checks:
        out.write(c.line() + "\n")
    failed = [c for c in checks if not c.ok]
    total = sum(c.instances for c in checks)
    out.write(f"{len(checks) - len(failed)}/{len(checks)} checks passed over {total} instances\n")
    return EXIT_FAIL if failed else EXIT_OK


def groups_of_order(n: int) -> List[AbelianGroup]:
    """All abelian groups of order n up to isomorphism, as primary factor lists."""
    per_prime = []
    for p, e in factorize(n):
        per_prime.append([[p ** k for k in part] for part in _partitions(e)])
    out = []
    for combo in itertools.product(*per_prime):
        factors = sorted(f for part in combo for f in part)
        out.append(AbelianGroup(factors or [1]))
    return out


def _partitions(e: int, largest: Optional[int] = None) -> List[List[int]]:
    if e == 0:
        return [[]]
    largest = e if largest is None else largest
    out = []
    for k in range(min(e, largest), 0, -1):
        for rest in _partitions(e - k, k):
            out.append([k] + rest)
    return out


def run_classify(order: int, spec: JobSpec, out) -> int:
    if order < 1:
        raise SpecError("--order must be positive")
    if order > spec.bound_aut:
        raise BoundExceeded(f"order {order} exceeds the brute-force bound {spec.bound_aut}; "
                            f"raise it with --bound-aut")
    rows = []
    for G in groups_of_order(order):
        cats = [TYCategory(chi, t) for chi in nondegenerate_forms(G, bound=spec.bound_aut)
                for t in (1, -1)]
        ns = (2, 4) if is_elementary_abelian(G) or G.order == 1 else separating_indicators(cats)
        classes = classify_by_indicators(cats, ns)
        if len(classes) != len(cats):
            raise TheoremViolation(f"indicators fail to separate categories over {G}")
        for C in cats:
            extra = ";".join(f"nu{n}_m={C.nu_m(n).render()}" for n in ns[2:]) or "-"
            rows.append({
                "group": str(G),
                "bichar": json.dumps([list(r) for r in C.chi.matrix]),
                "tau": "+" if C.tau_sign > 0 else "-",
                "nu2_m": C.nu_m(2).render(), "nu4_m": C.nu_m(4).render(),
                "nu2_C": C.nu_category(2).render(), "nu4_C": C.nu_category(4).render(),
                "extra": extra,
            })
    header = ["group", "bichar", "tau", "nu2_m", "nu4_m", "nu2_C", "nu4_C", "extra"]
    _emit(rows, spec.fmt, header, {"order": order}, out)
    return EXIT_OK


def run_center(spec: JobSpec, out) -> int:
    C = spec.category()
    rows = []
    for X in C.center_simples():
        rows.append({"kind": X.kind, "object": X.describe(), "pdim": X.pdim.render(),
                     "twist": _exact(X.twist), "approx": _approx(X.twist)})
    _emit(rows, spec.fmt, ["kind", "object", "pdim", "twist", "approx"],
          {"spec": spec.spec_json()}, out)
    return EXIT_OK


def run_fiber(spec: JobSpec, out) -> int:
    C = spec.category()
    witnesses = C.fiber_functor_search(bound=spec.bound_aut)
    rows = []
    for w in witnesses:
        pres = w.presentation
        rho = {",".join(map(str, pres.to_concrete[v])): (1 if e == 0 else -1)
               for v, e in zip(pres.group.elements, w.rho.exps)}
        rows.append({"sigma": json.dumps([list(img) for img in w.sigma.images]),
                     "V": str(w.V), "rho": json.dumps(rho, sort_keys=True)})
    _emit(rows, spec.fmt, ["sigma", "V", "rho"], {"spec": spec.spec_json(), "count": len(rows)}, out)
    if spec.fmt == "pretty":
        out.write(f"{len(rows)} fiber functor witnesses\n")
    return EXIT_OK


def run_frobenius(spec: JobSpec, out) -> int:
    C = spec.category()
    report = C.frobenius_check()
    rows = []
    for n, ok in report.items():
        v = C.nu_category(n)
        rows.append({"n": n, "nu_C": v.render(), "approx": _approx(v), "status": "pass" if ok else "FAIL"})
    _emit(rows, spec.fmt, ["n", "nu_C", "status", "approx"], {"spec": spec.spec_json()}, out)
    return EXIT_OK


# -- entry point -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tyind", description="Indicators of Tambara-Yamagami categories.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_cat=True):
        p.add_argument("--group", help="group spec such as Z4xZ4")
        p.add_argument("--bichar", help="alt | sym | hyperbolic | trivial | cyclic:c | diag:a,b | JSON | @file")
        p.add_argument("--tau", help="sign of tau: + or -")
        p.add_argument("--format", choices=("csv", "json", "pretty"), default="pretty")
        p.add_argument("--bound-terms", type=int, default=DEFAULT_WORK_BOUND)
        p.add_argument("--bound-aut", type=int, default=DEFAULT_AUT_BOUND)

    p = sub.add_parser("table", help="indicator table for every simple object")
    common(p)
    p.add_argument("--n", help="n range: 4, 1..8 or 2,4,6")
    p = sub.add_parser("verify", help="run a verification suite")
    common(p)
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--kmax", type=int, default=4)
    p = sub.add_parser("classify", help="classify TY categories over all groups of an order")
    common(p)
    p.add_argument("--order", type=int, required=True)
    for name, text in (("center", "list simple objects of the Drinfeld center"),
                       ("fiber", "search for fiber functors"),
                       ("frobenius", "Frobenius property per divisor of 2|A|")):
        common(sub.add_parser(name, help=text))
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = build_spec(args)
        if args.command == "table":
            return run_table(spec, out)
        if args.command == "verify":
            return run_verify(spec, args.suite, args.kmax, out)
        if args.command == "classify":
            return run_classify(args.order, spec, out)
        if args.command == "center":
            return run_center(spec, out)
        if args.command == "fiber":
            return run_fiber(spec, out)
        return run_frobenius(spec, out)
    except BoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (SpecError, NotSquare, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except TheoremViolation as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
