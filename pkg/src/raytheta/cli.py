"""Command-line front end: run verification suites, dump series and ray class
data, search for relations, and manage the skew-set cache.

Exit status: 0 all checks passed, 1 a comparison failed, 2 bad usage or an
unknown suite, 3 an enumeration bound failure (closure not reached).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import identities
from .parsing import ParseError, parse_class_spec, parse_conductor_expr, parse_fraction
from .qseries import eta, theta_gen, v_func
from .quadfield import field
from .rayclass import (
    CharacterPsi,
    ClosureError,
    Conductor,
    SkewOverlapError,
    _AS_CACHE,
    compute_skew_sets,
    ray_theta,
    skew_sets_from_json,
    skew_sets_to_json,
)


def _cache_path(cache_dir: str, D: int, Dp: int, F: Conductor) -> Path:
    a, b, c = F.ideal.key[1:]
    return Path(cache_dir) / f"AS_D{D}_Dp{Dp}_F{a}_{b}_{c}.json"


def _preload_cache(cache_dir: str) -> int:
    n = 0
    for path in sorted(Path(cache_dir).glob("AS_*.json")):
        try:
            blob = json.loads(path.read_text())
            chi, F, A, S = skew_sets_from_json(blob)
        except (ValueError, KeyError):
            continue
        _AS_CACHE[(chi.D, chi.Dprime, F.key, None)] = (A, S)
        n += 1
    return n


def _writeback_cache(cache_dir: str, only_keys=None) -> int:
    Path(cache_dir).mkdir(parents=True, exist_ok=True)
    n = 0
    for (D, Dp, fkey, bound), (A, S) in list(_AS_CACHE.items()):
        if only_keys is not None and (D, Dp, fkey, bound) not in only_keys:
            continue
        F = A[0].conductor if A else S[0].conductor
        path = _cache_path(cache_dir, D, Dp, F)
        if not path.exists():
            blob = skew_sets_to_json(CharacterPsi(D, Dp), F, A, S, bound)
            path.write_text(json.dumps(blob, sort_keys=True, indent=1) + "\n")
            n += 1
    return n


def _read_config(path: Optional[str]) -> dict[str, str]:
    if not path:
        return {}
    out: dict[str, str] = {}
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#") or "=" not in line:
            continue
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _emit_reports(reports, as_json: bool) -> None:
    if as_json:
        print(json.dumps([r.to_json_dict() for r in reports], sort_keys=True, indent=1))
    else:
        for r in reports:
            print(r.text_row())


def cmd_verify(args) -> int:
    cfg = _read_config(args.config)
    trunc = args.trunc if args.trunc is not None else cfg.get("trunc")
    if isinstance(trunc, str):
        trunc = parse_fraction(trunc)
    bound = args.bound if args.bound is not None else (
        int(cfg["bound"]) if "bound" in cfg else None
    )
    jobs = args.jobs if args.jobs is not None else int(cfg.get("jobs", "1"))
    cache_dir = args.cache or cfg.get("cache")
    as_json = args.json or cfg.get("json", "").lower() in ("1", "true", "yes")

    suites = args.suites or ["id1", "id2", "relations55", "thm51", "consolidate", "pell"]
    unknown = [s for s in suites if s not in identities.SUITE_NAMES]
    if unknown:
        print(f"unknown suite(s): {', '.join(unknown)}", file=sys.stderr)
        print(f"available: {', '.join(identities.SUITE_NAMES)}", file=sys.stderr)
        return 2
    if cache_dir:
        _preload_cache(cache_dir)

    def run(name: str):
        return identities.run_suite(
            name,
            trunc,
            bound=bound,
            a=args.a,
            r=args.r,
            eps=args.eps,
            count=args.count,
            experimental=args.experimental,
        )

    try:
        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(run, suites))
        else:
            results = [run(s) for s in suites]
    except ClosureError as exc:
        print(f"enumeration failure: {exc}", file=sys.stderr)
        return 3
    except SkewOverlapError as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return 2
    reports = [rep for batch in results for rep in batch]
    _emit_reports(reports, as_json)
    if cache_dir:
        _writeback_cache(cache_dir)
    return 0 if all(r.passed for r in reports) else 1


def cmd_dump(args) -> int:
    trunc = args.trunc
    try:
        if args.kind == "theta":
            series = theta_gen(args.ell, args.k, trunc)
        elif args.kind == "v":
            series = v_func(args.r, args.m, trunc)
        elif args.kind == "eta":
            series = eta(trunc)
        else:  # rayclass
            return _dump_rayclass(args)
    except (ValueError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(series.to_json_dict(), sort_keys=True))
    return 0


def _dump_rayclass(args) -> int:
    if args.D is None or args.F is None:
        print("rayclass dump needs -D and -F", file=sys.stderr)
        return 2
    fld = field(args.D)
    try:
        F = Conductor(parse_conductor_expr(fld, args.F))
        if args.class_spec is not None:
            ref = parse_class_spec(fld, args.class_spec, F)
            out = {
                "D": args.D,
                "F": list(F.ideal.key[1:]),
                "class": list(ref.canonical_key()[1:]),
                "theta": ray_theta(ref, args.d, args.trunc).to_json_dict(),
            }
            print(json.dumps(out, sort_keys=True))
            return 0
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.Dp is None:
        print("skew-set dump needs --Dp as well", file=sys.stderr)
        return 2
    chi = CharacterPsi(args.D, args.Dp)
    if args.cache:
        _preload_cache(args.cache)
    try:
        A, S = compute_skew_sets(chi, F, args.bound)
    except ClosureError as exc:
        print(f"enumeration failure: {exc}", file=sys.stderr)
        return 3
    except SkewOverlapError as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return 2
    blob = skew_sets_to_json(chi, F, A, S, args.bound)
    if args.cache:
        _writeback_cache(args.cache, only_keys={(args.D, args.Dp, F.key, args.bound)})
    print(json.dumps(blob, sort_keys=True))
    return 0


def cmd_search(args) -> int:
    if args.pool == "idp1":
        cfg = identities.idp1_pool(args.trunc)
    else:
        cfg = identities.id24_pool(args.trunc)
    if args.max_coeff is not None:
        from dataclasses import replace

        cfg = replace(cfg, max_coeff=args.max_coeff)
    rels = identities.search_relations(cfg)
    print(json.dumps(rels, sort_keys=True, indent=1))
    return 0


def cmd_cache(args) -> int:
    path = Path(args.cache)
    files = sorted(path.glob("AS_*.json")) if path.exists() else []
    if args.action == "stats":
        print(json.dumps({"dir": str(path), "entries": len(files), "files": [f.name for f in files]}, sort_keys=True))
        return 0
    for f in files:
        f.unlink()
    print(json.dumps({"dir": str(path), "cleared": len(files)}, sort_keys=True))
    return 0


def _fraction_arg(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="raytheta",
        description=(
            "Exact verification of theta-function and Virasoro-character "
            "identities over imaginary quadratic fields."
        ),
        epilog=(
            "Named primes P2, P3, P3bar, ... resolve via prime splitting with "
            "the smaller Hermite-normal-form residue; 'bar' picks the "
            "conjugate.  Truncations are exact rationals like 20/1."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run verification suites")
    p_verify.add_argument("suites", nargs="*", help=f"suites: {', '.join(identities.SUITE_NAMES)}")
    p_verify.add_argument("--trunc", type=_fraction_arg, default=None, help="truncation as num/den")
    p_verify.add_argument("--bound", type=int, default=None, help="ideal enumeration bound override")
    p_verify.add_argument("--json", action="store_true", help="machine-readable reports")
    p_verify.add_argument("--cache", default=None, help="directory for skew-set JSON cache")
    p_verify.add_argument("--jobs", type=int, default=None, help="suite worker pool size")
    p_verify.add_argument("--config", default=None, help="key=value config file; flags override")
    p_verify.add_argument("--a", type=int, default=None, help="thm51: family parameter a")
    p_verify.add_argument("--r", type=int, default=None, help="thm51: odd index r")
    p_verify.add_argument("--eps", type=int, default=None, help="thm51: 0 or 1")
    p_verify.add_argument("--count", type=int, default=2, help="pell: number of solutions")
    p_verify.add_argument(
        "--experimental", action="store_true", help="thm51: allow a outside 1 mod 4"
    )
    p_verify.set_defaults(func=cmd_verify)

    p_dump = sub.add_parser("dump", help="print exact series or ray class data as JSON")
    p_dump.add_argument("kind", choices=["theta", "v", "eta", "rayclass"])
    p_dump.add_argument("--trunc", type=_fraction_arg, default=Fraction(10))
    p_dump.add_argument("--ell", type=int, default=1)
    p_dump.add_argument("--k", type=int, default=6)
    p_dump.add_argument("--r", type=int, default=1)
    p_dump.add_argument("--m", type=int, default=2)
    p_dump.add_argument("-D", "--D", type=int, default=None, help="field discriminant root")
    p_dump.add_argument("--Dp", type=int, default=None, help="partner field")
    p_dump.add_argument("-F", "--F", default=None, help="conductor expression, e.g. 4*P2")
    p_dump.add_argument(
        "--class",
        dest="class_spec",
        default=None,
        help="class spec, e.g. '[5+2*w]' or '[1,-1]@P3*4P2'; dumps its canonical representative and theta series",
    )
    p_dump.add_argument("--d", type=_fraction_arg, default=Fraction(16), help="theta scale for --class")
    p_dump.add_argument("--bound", type=int, default=None)
    p_dump.add_argument("--cache", default=None)
    p_dump.set_defaults(func=cmd_dump)

    p_search = sub.add_parser("search", help="integer-relation search over a product pool")
    p_search.add_argument("--pool", choices=["idp1", "id24"], default="idp1")
    p_search.add_argument("--trunc", type=_fraction_arg, default=Fraction(20))
    p_search.add_argument("--max-coeff", type=int, default=None)
    p_search.set_defaults(func=cmd_search)

    p_cache = sub.add_parser("cache", help="skew-set cache maintenance")
    p_cache.add_argument("action", choices=["stats", "clear"])
    p_cache.add_argument("--cache", required=True, help="cache directory")
    p_cache.set_defaults(func=cmd_cache)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
