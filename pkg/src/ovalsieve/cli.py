"""Command-line interface.

Exit codes: 0 success, 2 input error, 3 resource cap exceeded,
4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .congruence import CurveType, classify, classify_family, theorem1_verdict, theorem2a_verdict, theorem2b_verdict
from .enumerator import DEFAULT_CAP, FilterConfig, canonical_strings, harnack_bound
from .errors import CapExceeded, InputError, InvariantBreach, SchemeSyntaxError
from .hyperboloid import check_b4_b7, check_b10, euler_integral, index_function, load_arrangement, netsvetaev_b12
from .report import write_rows
from .scheme import (
    euler_parts,
    parse_oriented_scheme,
    parse_plane_scheme,
    parse_scheme,
    plane_euler_parts,
    render_canonical,
    x_of_oval,
)
from .singularities import CUSP_ARF, A1Input, MultiplicitySequence, PlaneClass, arf_of_sequence, prop_a1_verdict
from .verdict import Verdict
from .z4forms import brown_invariant, gauss_sum, load_form

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_BUG = 0, 2, 3, 4


def cache_dir(args) -> Path | None:
    if getattr(args, "no_cache", False):
        return None
    if getattr(args, "cache_dir", None):
        return Path(args.cache_dir)
    if os.environ.get("OVALSIEVE_CACHE"):
        return Path(os.environ["OVALSIEVE_CACHE"])
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "ovalsieve"


def _emit(args, data: dict, lines: list[str]):
    if args.format == "json":
        print(json.dumps(data, sort_keys=True))
    else:
        print("\n".join(lines))


def _verdict_lines(v: Verdict) -> list[str]:
    lines = [f"verdict     {v.status.value}"]
    for r in v.reasons:
        lines.append(f"  {r.clause:<10}{r.status.value:<24}{json.dumps(r.residues, sort_keys=True)}")
    return lines


# --------------------------------------------------------------------------
# scheme


def cmd_scheme(args) -> int:
    if args.action == "parse":
        s = parse_scheme(args.text)
        data = {"l": s.l, "regions": s.n_regions, "ovals": [list(o) for o in s.ovals]}
        _emit(args, data, [f"l {s.l}", f"regions {s.n_regions}",
                           "ovals " + " ".join(f"{a}|{b}" for a, b in s.ovals)])
        return EXIT_OK
    if args.action == "canon":
        print(render_canonical(parse_scheme(args.text)))
        return EXIT_OK
    if args.action == "check":
        return _scheme_check(args)
    s = parse_scheme(args.text)
    lab = euler_parts(s)
    data = {
        "scheme": args.text,
        "canonical": render_canonical(s),
        "l": s.l,
        "chi0": lab.chi0,
        "chi1": lab.chi1,
        "ambiguous": lab.ambiguous,
        "b0_regions": lab.regions(0),
        "components0": lab.components0,
        "components1": lab.components1,
    }
    lines = [
        f"canonical   {data['canonical']}",
        f"l           {s.l}",
        f"chi0={lab.chi0} chi1={lab.chi1}",
        "B0          " + ("ambiguous (l odd); showing one labeling" if lab.ambiguous else "the half with chi = 0 mod 4"),
        f"B0 regions  {data['b0_regions']}",
        f"components0 {lab.components0}",
        f"components1 {lab.components1}",
    ]
    if s.l % 2 == 0 and s.l:
        xs = [x_of_oval(s, i, lab) for i in range(s.l)]
        data["x"] = xs
        lines.append("oval  inner outer  x")
        lines += [f"{i:>4}  {a:>5} {b:>5}  {x}" for i, ((a, b), x) in enumerate(zip(s.ovals, xs))]
    _emit(args, data, lines)
    return EXIT_OK


def _scheme_check(args) -> int:
    if args.d is None:
        raise InputError("scheme check needs --d")
    d = args.d
    if "^" in args.text:
        o = parse_oriented_scheme(args.text)
        v = theorem2b_verdict(o, d)
    elif d % 2:
        v = theorem1_verdict(parse_scheme(args.text), d, CurveType(args.type))
    else:
        s = parse_scheme(args.text)
        if s.l != harnack_bound(d):
            raise InputError(f"even d: only M-curves ({harnack_bound(d)} ovals) have a scheme-only test; "
                             "give orientations with ^+/^- for the type I test")
        v = theorem2a_verdict(s, d)
    _emit(args, {"status": v.status.value, "verdicts": v.to_json()}, _verdict_lines(v))
    return EXIT_OK


# --------------------------------------------------------------------------
# enumeration and classification


def _oval_range(text: str) -> list[int]:
    try:
        if "-" in text:
            lo, hi = (int(x) for x in text.split("-", 1))
            return list(range(lo, hi + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"cannot read oval range {text!r} (use N, N,M or N-M)") from None


def cmd_enumerate(args) -> int:
    for l in _oval_range(args.ovals):
        names = canonical_strings(l, args.cap, cache_dir(args))
        if args.count:
            print(f"{l}\t{len(names)}")
        else:
            for n in names:
                print(n)
    return EXIT_OK


def _filter_config(args) -> FilterConfig:
    names = set() if args.filters in ("", "none") else {x.strip() for x in args.filters.split(",")}
    unknown = names - {"harnack", "bezout"}
    if unknown:
        raise InputError(f"unknown filters: {sorted(unknown)}")
    return FilterConfig(args.d, "harnack" in names, "bezout" in names, args.max_depth, args.max_nests)


def cmd_classify(args) -> int:
    cfg = _filter_config(args)
    ovals = _oval_range(args.ovals) if args.ovals else [harnack_bound(args.d)]
    for l in ovals:
        if l > args.cap:
            raise CapExceeded(f"l={l} exceeds the cap of {args.cap}")
    active = [name for name, on in (("bezout", cfg.use_bezout_triple), ("harnack", cfg.use_harnack)) if on]
    header = {"d": args.d, "ovals": ovals, "filters": active, "family": args.family}
    if args.family:
        rows = (row for l in ovals for _, row in classify_family(args.d, args.family, l, cfg))
    else:
        rows = classify(args.d, ovals, cfg, args.cap, cache_dir(args), args.workers)
    write_rows(rows, args.format, sys.stdout, header)
    return EXIT_OK


# --------------------------------------------------------------------------
# calculators


def cmd_brown(args) -> int:
    f = load_form(args.form)
    beta = brown_invariant(f)
    a, b = gauss_sum(f)
    if args.format == "json":
        print(json.dumps({"dim": f.n, "gauss_sum": [a, b], "brown": beta}))
    else:
        print("degenerate" if beta is None else beta)
    return EXIT_OK


def cmd_arf(args) -> int:
    value = CUSP_ARF if args.cusp else arf_of_sequence(MultiplicitySequence.parse(args.sequence or ""))
    print(value)
    return EXIT_OK


def cmd_plane(args) -> int:
    p = parse_plane_scheme(args.scheme)
    nonor, orient = plane_euler_parts(p)
    if args.action == "info":
        data = {"l": p.l, "non_orientable_chi": nonor.chi, "orientable_chi": orient.chi}
        _emit(args, data, [f"l {p.l}", f"non-orientable part chi {nonor.chi}", f"orientable part chi {orient.chi}"])
        return EXIT_OK
    if args.k is None:
        raise InputError("plane check needs --k")
    if args.k < 1:
        raise InputError("k must be positive")
    v = prop_a1_verdict(A1Input(args.k, orient.chi, True, PlaneClass(args.curve_class), args.ar))
    data = {"status": v.status.value, "chi_plus": orient.chi, "verdicts": v.to_json()}
    if args.format == "json":
        print(json.dumps(data, sort_keys=True))
    else:
        print(v.status.value)
        for r in v.reasons:
            print(f"  {r.clause} chi_plus={orient.chi} {json.dumps(r.residues, sort_keys=True)}")
    return EXIT_OK


def cmd_hyperboloid(args) -> int:
    arr = load_arrangement(args.file)
    ia = index_function(arr)
    integral = euler_integral(arr, ia, args.symmetric)
    checks = check_b4_b7(arr, ia, args.symmetric)
    try:
        b10 = check_b10(arr)
        b10_json = {"status": b10.status.value, "verdicts": b10.to_json()}
    except InputError as exc:
        b10, b10_json = None, {"status": "NotApplicable", "reason": str(exc)}
    data = {
        "index": dict(sorted(ia.ind.items())),
        "chi": dict(sorted(arr.regions.items())),
        "l_prime": ia.l_prime,
        "integral": integral,
        "checks": [c.to_json() for c in checks],
        "b10": b10_json,
    }
    lines = ["region        chi  ind"]
    lines += [f"{r:<12} {arr.regions[r]:>4} {ia.ind[r]:>4}" for r in sorted(arr.regions)]
    lines.append(f"l' = {ia.l_prime}")
    lines.append(f"integral of ind^2 dchi = {integral}")
    for c in checks:
        state = "n/a" if not c.applicable else ("pass" if c.passed else "FAIL")
        lines.append(f"{c.prop}: {state}")
    lines.append(f"B10: {b10_json['status']}")
    _emit(args, data, lines)
    return EXIT_OK


def cmd_b12(args) -> int:
    try:
        m = [int(x) for x in args.degrees.split(",")]
    except ValueError:
        raise InputError(f"cannot read degrees {args.degrees!r}") from None
    print(netsvetaev_b12(m))
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ovalsieve", description="Prohibition engine for real schemes of curves on quadrics.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def fmt(p, default="table"):
        p.add_argument("--format", choices=["table", "tsv", "json"], default=default)

    def caching(p):
        p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest oval count to enumerate")
        p.add_argument("--cache-dir", help="enumeration cache (default: $OVALSIEVE_CACHE or ~/.cache/ovalsieve)")
        p.add_argument("--no-cache", action="store_true")

    p = sub.add_parser("scheme", help="parse, canonicalise and inspect a scheme")
    p.add_argument("action", choices=["parse", "canon", "info", "check"])
    p.add_argument("text")
    p.add_argument("--d", type=int)
    p.add_argument("--type", choices=[t.value for t in CurveType], default="unknown")
    fmt(p)
    p.set_defaults(func=cmd_scheme)

    p = sub.add_parser("enumerate", help="list canonical schemes with a given number of ovals")
    p.add_argument("--ovals", required=True, help="N, N,M or N-M")
    p.add_argument("--count", action="store_true")
    caching(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", help="run filters and congruences over all schemes")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--ovals", help="N, N,M or N-M (default: the Harnack bound)")
    p.add_argument("--filters", default="harnack,bezout", help="comma list of harnack,bezout or 'none'")
    p.add_argument("--max-depth", type=int)
    p.add_argument("--max-nests", type=int)
    p.add_argument("--family", help="template such as 'a+1<b>'; sweeps every instance instead of enumerating")
    p.add_argument("--workers", type=int, default=1)
    fmt(p)
    caching(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("brown", help="Brown invariant of a Z/4 quadratic form file")
    p.add_argument("--form", required=True)
    fmt(p)
    p.set_defaults(func=cmd_brown)

    p = sub.add_parser("arf", help="Arf invariant of a singular point with odd multiplicity sequence")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--sequence", help="comma-separated round sums, e.g. 3,5")
    g.add_argument("--cusp", action="store_true")
    p.set_defaults(func=cmd_arf)

    p = sub.add_parser("plane", help="plane curves of even degree with imaginary even singular points")
    p.add_argument("action", choices=["info", "check"])
    p.add_argument("--scheme", required=True)
    p.add_argument("--k", type=int, help="half the degree")
    p.add_argument("--class", dest="curve_class", choices=[c.value for c in PlaneClass], default="M")
    p.add_argument("--ar", type=int, default=0, help="sum of Arf invariants, one per conjugate pair")
    fmt(p)
    p.set_defaults(func=cmd_plane)

    p = sub.add_parser("hyperboloid", help="oriented arrangements on the hyperboloid")
    p.add_argument("action", choices=["check"])
    p.add_argument("file")
    p.add_argument("--symmetric", action="store_true", help="square index representatives in {-1,0,1,2}")
    fmt(p)
    p.set_defaults(func=cmd_hyperboloid)

    p = sub.add_parser("b12", help="coefficient of the Netsvetaev class for a complete intersection")
    p.add_argument("--degrees", required=True)
    p.set_defaults(func=cmd_b12)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SchemeSyntaxError as exc:
        print(f"error: {exc}\n{exc.pointer()}", file=sys.stderr)
        return EXIT_INPUT
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InvariantBreach as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_BUG
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
