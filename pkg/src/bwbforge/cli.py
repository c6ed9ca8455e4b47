"""Command-line front end.

Subcommands:

* ``roots G``                      positive roots of a simple group
* ``dim G/Pk``                     dimension, Fano index, minimal embedding
* ``dex G/Pk WEIGHT``              rank and dex of an irreducible bundle
* ``bwb G/Pk WEIGHT``              Borel-Weil-Bott cohomology of E_lambda
* ``ext G/Pk BUNDLE P``            decomposition of Lambda^P F^*
* ``cohomology G/Pk BUNDLE``       H^*(X, F), or H^*(Z_F, E|_Z) with --restrict E
* ``hodge G/Pk BUNDLE --d {3,4}``  Hodge numbers of the zero locus
* ``classify --d {3,4}``           the trivial-canonical-bundle search
* ``cache {stats,clear}``          persistent cache control

Bundle grammar: ``term (+ term)*`` with
``term := ( O(t) | w<indices> | [c1,...,cr] ) [ (twist) ] [ ^mult ]``;
for example ``w6^4 + O(1)`` or ``w1^2 + O(1)^5`` or ``[3,0,0,0,0]``.
Output is deterministic byte-for-byte for fixed inputs and engine version.
Exit codes: 0 exact, 2 ambiguous (with --allow-bounds), 1 error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
import time
from typing import Dict, List, Optional, Tuple

from . import cache as _cache
from . import classify as _classify
from . import hodge as _hodge
from . import repcalc as rc
from .bwbcohom import CohomologyTable, bwb
from .homspace import (
    HomSpace,
    bundle_rank,
    dex,
    dimension,
    fano_index,
    minimal_embedding_dim,
    parse_homspace,
)
from .koszul import (
    AmbiguousCohomologyError,
    BundleSum,
    EmptyLocusError,
    ZeroLocus,
    exterior_dual_powers,
    restricted_cohomology,
)
from .rootdata import Weight, parse_root_system, positive_roots


class ParseError(ValueError):
    pass


_TERM_RE = re.compile(
    r"^\s*(?:O\(\s*(-?\d+)\s*\)|w(\d+)|\[([-\d,\s]+)\])"
    r"\s*(?:\(\s*(-?\d+)\s*\))?\s*(?:\^\s*(\d+))?\s*$"
)


def parse_weight_term(X: HomSpace, term: str) -> Tuple[Weight, int]:
    """One bundle term -> (weight, multiplicity)."""
    m = _TERM_RE.match(term)
    if not m:
        raise ParseError(f"cannot parse bundle term {term!r} (at {term.strip()!r})")
    line_t, windices, coords, twist, mult = m.groups()
    r = X.rs.rank
    lam = [0] * r
    if line_t is not None:
        lam[X.k - 1] = int(line_t)
    elif windices is not None:
        for ch in windices:
            i = int(ch)
            if not 1 <= i <= r:
                raise ParseError(f"fundamental weight index {i} out of range in {term!r}")
            lam[i - 1] += 1
    else:
        parts = [p.strip() for p in coords.split(",") if p.strip()]
        if len(parts) != r:
            raise ParseError(f"weight {term!r} needs {r} coordinates for {X.rs}")
        lam = [int(p) for p in parts]
    if twist is not None:
        lam[X.k - 1] += int(twist)
    return tuple(lam), int(mult) if mult else 1


def parse_weight(X: HomSpace, text: str) -> Weight:
    lam, mult = parse_weight_term(X, text)
    if mult != 1:
        raise ParseError("a single weight cannot carry a multiplicity")
    return lam


def parse_bundle(X: HomSpace, expr: str) -> BundleSum:
    if not expr.strip():
        raise ParseError("empty bundle expression")
    weights: Dict[Weight, int] = {}
    for term in expr.split("+"):
        lam, mult = parse_weight_term(X, term)
        weights[lam] = weights.get(lam, 0) + mult
    for lam in weights:
        if not rc.is_context_dominant(X.levi, lam):
            raise ParseError(f"weight {lam} is not P{X.k}-dominant on {X}")
    return BundleSum.make(X, weights)


def format_bundle(B: BundleSum) -> str:
    """Round-trippable rendering in the w/O grammar."""
    return str(B)


def _weight_str(w: Weight) -> str:
    return "[" + ",".join(str(c) for c in w) + "]"


def _emit(payload: dict, fmt: str, table_lines: List[str]) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        rows = payload.get("results", {}).get("rows")
        if rows:
            writer = csv.DictWriter(buf, fieldnames=sorted(rows[0]))
            writer.writeheader()
            for row in rows:
                writer.writerow(row)
        else:
            buf.write(json.dumps(payload, sort_keys=True) + "\n")
        return buf.getvalue()
    return "\n".join(table_lines) + "\n"


def _table_payload(t: CohomologyTable) -> List[dict]:
    rows = []
    for q in sorted(t.entries):
        for hw, m in sorted(t.entries[q].items()):
            rows.append(
                {
                    "degree": q,
                    "weight": _weight_str(hw),
                    "multiplicity": m,
                    "dim": m * rc.weyl_dim(t.X.group, hw),
                }
            )
    return rows


def _zc_payload(zc) -> dict:
    return {
        "dims": [v if v is not None else None for v in zc.dims],
        "status": zc.status,
        "bounds": {str(q): list(b) for q, b in sorted(zc.bounds.items())},
    }


def _common_options(parser, suppress: bool):
    # shared flags are accepted both before and after the subcommand; the
    # post-subcommand copies use SUPPRESS so they only override when given
    d = (lambda v: argparse.SUPPRESS if suppress else v)
    parser.add_argument("--format", choices=("table", "json", "csv"),
                        default=d("table"))
    parser.add_argument("--cache", default=d(None),
                        help="persistent cache directory (or $BWBFORGE_CACHE)")
    parser.add_argument("--allow-bounds", action="store_true",
                        default=d(False),
                        help="exit 2 instead of 1 when results are only bounded")
    parser.add_argument("-v", "--verbose", action="store_true", default=d(False))


def main(argv: Optional[List[str]] = None) -> int:
    ap = argparse.ArgumentParser(
        prog="bwbforge",
        description="Borel-Weil-Bott cohomology and trivial-canonical-bundle "
        "searches on rational homogeneous varieties of Picard number one.",
    )
    _common_options(ap, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _common_options(common, suppress=True)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=(
        lambda **kw: argparse.ArgumentParser(parents=[common], **kw)))

    sp = sub.add_parser("roots", help="positive roots of a simple group")
    sp.add_argument("group")
    sp = sub.add_parser("dim", help="dimension / Fano index / minimal embedding")
    sp.add_argument("space")
    sp = sub.add_parser("dex", help="rank and dex of an irreducible bundle")
    sp.add_argument("space")
    sp.add_argument("weight")
    sp = sub.add_parser("bwb", help="Borel-Weil-Bott cohomology of E_lambda")
    sp.add_argument("space")
    sp.add_argument("weight")
    sp = sub.add_parser("ext", help="decomposition of a wedge power of F^*")
    sp.add_argument("space")
    sp.add_argument("bundle")
    sp.add_argument("p", type=int)
    sp = sub.add_parser("cohomology", help="H^*(X, F) or H^*(Z_F, E|_Z)")
    sp.add_argument("space")
    sp.add_argument("bundle")
    sp.add_argument("--restrict", metavar="E",
                    help="restrict E to the zero locus of F and push through Koszul")
    sp = sub.add_parser("hodge", help="Hodge numbers of the zero locus")
    sp.add_argument("space")
    sp.add_argument("bundle")
    sp.add_argument("--d", type=int, required=True, choices=(3, 4))
    sp.add_argument("--no-h22", action="store_true",
                    help="skip the h^{2,2} chase (it dominates the cost on "
                    "large fourfolds); the cell is reported as unknown")
    sp = sub.add_parser("classify", help="search for trivial-canonical-bundle loci")
    sp.add_argument("--d", type=int, required=True, choices=(3, 4))
    sp.add_argument("--family", choices=("exceptional", "all"), default="exceptional")
    sp.add_argument("--max-rank", type=int, default=4,
                    help="rank cap for classical groups with --family all")
    sp.add_argument("--no-exceptions", action="store_true",
                    help="keep candidates whose summands are on the exception list")
    sp.add_argument("--no-hodge", action="store_true",
                    help="emit the numeric candidates without Hodge rows")
    sp = sub.add_parser("cache", help="persistent cache control")
    sp.add_argument("action", choices=("stats", "clear"))

    args = ap.parse_args(argv)
    if args.cache:
        _cache.set_cache_dir(args.cache)

    t0 = time.time()
    try:
        out, status = _dispatch(args)
    except (ParseError, ValueError, EmptyLocusError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AmbiguousCohomologyError as exc:
        print(f"error: ambiguous result: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    if args.verbose:
        st = _cache.stats()
        print(
            f"[{time.time() - t0:.2f}s, cache: {st['memory_entries']} in memory, "
            f"{st['hits']} hits, {st['misses']} misses]",
            file=sys.stderr,
        )
    if status == "ambiguous":
        return 2 if args.allow_bounds else 1
    return 0


def _dispatch(args) -> Tuple[str, str]:
    fmt = args.format
    if args.command == "roots":
        rs = parse_root_system(args.group)
        roots = positive_roots(rs)
        payload = {
            "space": str(rs),
            "bundle": None,
            "results": {
                "rows": [
                    {"root": "(" + ",".join(map(str, b)) + ")", "height": sum(b)}
                    for b in roots
                ],
                "count": len(roots),
            },
            "status": "exact",
            "citations": [],
        }
        lines = [f"{rs} root: (" + ",".join(map(str, b)) + ")" for b in roots]
        lines.append(f"count={len(roots)}")
        return _emit(payload, fmt, lines), "exact"

    if args.command == "dim":
        X = parse_homspace(args.space)
        d, i, e = dimension(X), fano_index(X), minimal_embedding_dim(X)
        payload = {
            "space": str(X),
            "bundle": None,
            "results": {"dim": d, "index": i, "embedding": e},
            "status": "exact",
            "citations": [],
        }
        return _emit(payload, fmt, [f"dim={d} index={i} embed=P^{e}"]), "exact"

    if args.command == "dex":
        X = parse_homspace(args.space)
        lam = parse_weight(X, args.weight)
        if not rc.is_context_dominant(X.levi, lam):
            raise ParseError(f"weight {lam} is not P{X.k}-dominant")
        rk, dx = bundle_rank(X, lam), dex(X, lam)
        payload = {
            "space": str(X),
            "bundle": _weight_str(lam),
            "results": {"rank": rk, "dex": dx},
            "status": "exact",
            "citations": [],
        }
        return _emit(payload, fmt, [f"rank={rk} dex={dx}"]), "exact"

    if args.command == "bwb":
        X = parse_homspace(args.space)
        lam = parse_weight(X, args.weight)
        t = bwb(X, lam)
        rows = _table_payload(t)
        payload = {
            "space": str(X),
            "bundle": _weight_str(lam),
            "results": {"rows": rows},
            "status": "exact",
            "citations": [],
        }
        lines = [
            f"H^{r['degree']} = V{r['weight']}^{{x{r['multiplicity']}}} dim {r['dim']}"
            for r in rows
        ] or ["all cohomology vanishes"]
        return _emit(payload, fmt, lines), "exact"

    if args.command == "ext":
        X = parse_homspace(args.space)
        F = parse_bundle(X, args.bundle)
        Z = ZeroLocus(X, F)
        page = exterior_dual_powers(Z)
        if not 0 <= args.p <= F.rank:
            raise ParseError(f"wedge degree {args.p} out of range 0..{F.rank}")
        dec = page.terms[args.p]
        rows = [
            {"weight": _weight_str(lam), "multiplicity": m,
             "rank": rc.weyl_dim(X.levi, lam)}
            for lam, m in sorted(dec.items())
        ]
        payload = {
            "space": str(X),
            "bundle": format_bundle(F),
            "results": {"p": args.p, "rows": rows},
            "status": "exact",
            "citations": [],
        }
        lines = [f"L^{args.p} F* = " + " + ".join(
            f"E{r['weight']}^{r['multiplicity']}" for r in rows)]
        return _emit(payload, fmt, lines), "exact"

    if args.command == "cohomology":
        X = parse_homspace(args.space)
        F = parse_bundle(X, args.bundle)
        if args.restrict is None:
            t = CohomologyTable(X)
            for lam, m in F.summands:
                piece = bwb(X, lam)
                for q, row in piece.entries.items():
                    for hw, mult in row.items():
                        t.add_entry(q, hw, mult * m)
            rows = _table_payload(t)
            payload = {
                "space": str(X),
                "bundle": format_bundle(F),
                "results": {"rows": rows},
                "status": "exact",
                "citations": [],
            }
            lines = [
                f"H^{r['degree']} dim {r['dim']} (V{r['weight']} x{r['multiplicity']})"
                for r in rows
            ] or ["all cohomology vanishes"]
            return _emit(payload, fmt, lines), "exact"
        Z = ZeroLocus(X, F)
        E = parse_bundle(X, args.restrict)
        zc = restricted_cohomology(Z, E)
        payload = {
            "space": str(X),
            "bundle": format_bundle(F),
            "results": {"restrict": format_bundle(E), **_zc_payload(zc)},
            "status": zc.status,
            "citations": [],
        }
        lines = [f"H^{q}(Z, E|_Z) = {v if v is not None else zc.bounds.get(q)}"
                 for q, v in enumerate(zc.dims)]
        return _emit(payload, fmt, lines), zc.status

    if args.command == "hodge":
        X = parse_homspace(args.space)
        F = parse_bundle(X, args.bundle)
        Z = ZeroLocus(X, F)
        if Z.d != args.d:
            raise ParseError(
                f"rank(F)={F.rank} gives a locus of dimension {Z.d}, not {args.d}"
            )
        dia = _hodge.assemble(Z, with_h22=not getattr(args, "no_h22", False))
        chi = dia.euler_characteristic()
        results: Dict[str, object] = {
            "d": Z.d,
            "dex": F.dex,
            "iota": fano_index(X),
            "diamond": [[v for v in row] for row in dia.rows()],
            "chi": chi,
        }
        names = {}
        if Z.d == 4:
            names = {"h02": dia.get(0, 2), "h11": dia.get(1, 1),
                     "h13": dia.get(1, 3), "h22": dia.get(2, 2)}
            row0 = [dia.get(0, q) for q in range(5)]
            names["hyperkaehler"] = (row0 == [1, 0, 1, 0, 1])
        else:
            names = {"h11": dia.get(1, 1), "h12": dia.get(1, 2)}
        results.update(names)
        skipped_h22 = Z.d == 4 and getattr(args, "no_h22", False)
        status = "exact" if dia.complete() or skipped_h22 else "ambiguous"
        payload = {
            "space": str(X),
            "bundle": format_bundle(F),
            "results": results,
            "status": status,
            "citations": [],
        }
        lines = [f"{k}={v}" for k, v in sorted(names.items())] + [f"chi={chi}"]
        return _emit(payload, fmt, lines), status

    if args.command == "classify":
        spaces = _classify.exceptional_spaces()
        if args.family == "all":
            from .rootdata import RootSystem

            for fam, lo in (("A", 1), ("B", 2), ("C", 2), ("D", 3)):
                for r in range(lo, args.max_rank + 1):
                    rs = RootSystem(fam, r)
                    for k in range(1, r + 1):
                        spaces.append(HomSpace(rs, k))
        rep = _classify.classify(
            spaces, args.d,
            with_hodge=not args.no_hodge,
            use_exceptions=not args.no_exceptions,
        )
        rows = []
        for r in rep.rows:
            row = {
                "space": r.space,
                "dim": r.dim,
                "iota": r.iota,
                "bundle": format_bundle(BundleSum.make(parse_homspace(r.space), dict(r.weights))),
                "orbit": r.orbit_tag,
                "status": r.status,
                "note": r.note,
            }
            row.update({k: v for k, v in sorted(r.hodge.items())})
            rows.append(row)
        status = "exact" if all(r.status == "exact" for r in rep.rows) else "ambiguous"
        payload = {
            "space": None,
            "bundle": None,
            "results": {
                "d": args.d,
                "rows": rows,
                "excluded": [
                    {"space": e.space, "bundle": repr(e.weights), "reason": e.reason}
                    for e in rep.excluded
                ],
                "pruned": [{"space": s, "reason": why} for s, why in rep.pruned],
                "dedup_count": len(rep.dedup_rows()),
            },
            "status": status,
            "citations": sorted({e.citation for e in rep.excluded}),
        }
        header = f"No. | space | dim | iota | bundle | " + (
            "h02 h11 h13" if args.d == 4 else "h11 h12 chi"
        )
        lines = [header]
        for i, row in enumerate(rows, 1):
            h = " ".join(
                str(row.get(k)) for k in (("h02", "h11", "h13") if args.d == 4 else ("h11", "h12", "chi"))
            ) if not args.no_hodge else "-"
            lines.append(
                f"{i} | {row['space']} | {row['dim']} | {row['iota']} | {row['bundle']} | {h}"
            )
        lines.append(f"rows={len(rows)} dedup={payload['results']['dedup_count']} "
                     f"excluded={len(rep.excluded)} pruned={len(rep.pruned)}")
        return _emit(payload, fmt, lines), status

    if args.command == "cache":
        if args.action == "stats":
            st = _cache.stats()
            payload = {"space": None, "bundle": None, "results": st,
                       "status": "exact", "citations": []}
            return _emit(payload, fmt, [f"{k}={v}" for k, v in sorted(st.items())]), "exact"
        _cache.clear(disk=True)
        payload = {"space": None, "bundle": None, "results": {"cleared": True},
                   "status": "exact", "citations": []}
        return _emit(payload, fmt, ["cache cleared"]), "exact"

    raise ParseError(f"unknown command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
