"""Command-line front end.

    qmatch census 4 2 2
    qmatch construct secants 2 --out secants2.fam
    qmatch matching secants2.fam
    qmatch search 4 2 2 2 --mode exact
    qmatch verify-all

Reports are JSON by default: ``{"config": ..., "timestamp": ..., "result": ...}``.
Identical configs give identical bytes apart from the timestamp field.
Exit codes: 0 ok, 1 usage or parameter error, 2 failed verification.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__
from .bounds import table_row
from .cl import cl_report
from .families import (bilinear_family, cover_number, dictator, dual_dictator,
                       footnote_construction, matching_number, pencil_union,
                       secant_family, standard_pencil)
from .geometry import (BudgetExceeded, beutelspacher_spread, dump_catalog,
                       enumerate_subspaces, space, spread_census)
from .io import dumps_family, read_family
from .qcomb import (cancellation_gap, gauss, gauss_bounds, pascal_holds, q_number,
                    q_number_bound_holds)
from .search import SearchConfig, conjecture_audit, run_search
from .solvers import Budget
from .verify import run_all


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, report):
        super().__init__("verification failed")
        self.report = report


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- helpers ------------------------------------------------------------------

def _int_list(text: str) -> list[int]:
    """'4', '2,3,5' or '4:8' (inclusive)."""
    out = []
    for part in text.split(","):
        if ":" in part:
            lo, hi = part.split(":")
            out += range(int(lo), int(hi) + 1)
        else:
            out.append(int(part))
    return out


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("QMATCH_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"QMATCH_THREADS must be an integer, got {env!r}") from None
    return 1


def run_config(args) -> dict:
    skip = {"func", "command", "format", "out", "seed", "threads", "budget_nodes", "budget_seconds"}
    params = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    return {
        "subcommand": args.command,
        "params": params,
        "budget_nodes": args.budget_nodes,
        "budget_seconds": args.budget_seconds,
        "format": args.format,
        "out": args.out,
        "seed": args.seed,
        "threads": _threads(args),
        "version": __version__,
    }


def _budget(args) -> Budget:
    return Budget(args.budget_nodes, args.budget_seconds)


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset, tuple)):
        return list(x)
    raise TypeError(f"cannot serialise {type(x).__name__}")


def _emit(args, result, text: str | None = None, rows: list[dict] | None = None) -> str:
    cfg = run_config(args)
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    if args.format == "json":
        out = json.dumps({"config": cfg, "timestamp": stamp, "result": result},
                         indent=2, default=_jsonable) + "\n"
    elif args.format == "csv":
        if rows is None:
            raise UsageError("csv output is only available for bounds-table")
        buf = io.StringIO()
        buf.write(f"# config: {json.dumps(cfg, sort_keys=True)}\n# timestamp: {stamp}\n")
        w = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else [], lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        out = buf.getvalue()
    else:
        if text is None:
            text = "\n".join(f"{k}: {json.dumps(v, default=_jsonable)}" for k, v in result.items()) + "\n"
        out = text
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    return out


def _family_text(args, fam, description: str) -> str:
    return f"# {description}\n" + _header(args) + dumps_family(fam)


def _header(args) -> str:
    cfg = json.dumps(run_config(args), sort_keys=True, default=_jsonable)
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return f"# config: {cfg}\n# timestamp: {stamp}\n"


def _load(path):
    try:
        return read_family(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


# -- subcommands --------------------------------------------------------------

def cmd_qcomb(args):
    op, vals = args.op, args.values
    need = {"gauss": 3, "qnumber": 2, "bounds": 3, "gap": 4, "pascal": 3}
    if op == "grid":
        from .verify import check_identity_grid
        chk = check_identity_grid(max_a=args.max_a)
        res = chk.as_dict()
        out = _emit(args, res, text=chk.line() + "\n")
        if not chk.passed:
            raise VerificationFailed(out)
        return out
    if len(vals) != need[op]:
        raise UsageError(f"qcomb {op} takes {need[op]} integers")
    if op == "gauss":
        a, b, q = vals
        v = gauss(a, b, q)
        return _emit(args, {"a": a, "b": b, "q": q, "value": v}, text=f"{v}\n")
    if op == "qnumber":
        a, q = vals
        v = q_number(a, q)
        return _emit(args, {"a": a, "q": q, "value": v, "bound_holds": q_number_bound_holds(a, q)},
                     text=f"{v}\n")
    if op == "pascal":
        a, b, q = vals
        return _emit(args, {"a": a, "b": b, "q": q, "holds": pascal_holds(a, b, q)})
    if op == "bounds":
        a, b, q = vals
        g = gauss_bounds(a, b, q)
        return _emit(args, {"a": a, "b": b, "q": q, "value": g.value, "lower": g.lower,
                            "upper": g.upper, "upper_7_2": g.upper_7_2, "holds": g.holds})
    a, b, x, q = vals
    c = cancellation_gap(a, b, x, q)
    return _emit(args, {"a": a, "b": b, "x": x, "q": q, "gap": c.gap, "bound": c.bound,
                        "bound_12": c.bound_12, "bound_3_2": c.bound_3_2, "holds": c.holds})


def cmd_enumerate(args):
    cat = enumerate_subspaces(args.n, args.k, args.q, budget=args.limit)
    if args.format == "text":
        return _emit(args, {}, text=_header(args) + dump_catalog(cat))
    res = {"n": args.n, "k": args.k, "q": args.q, "count": len(cat),
           "gauss": gauss(args.n, args.k, args.q)}
    if args.list:
        res["subspaces"] = [[list(r) for r in b] for b in cat.bases]
    return _emit(args, res)


def cmd_spread(args):
    sp = beutelspacher_spread(args.n, args.k, args.q)
    cat = sp.catalog
    res = {"n": args.n, "k": args.k, "q": args.q, "size": len(sp), "valid": sp.is_valid(),
           "members": list(sp.members),
           "bases": [[list(r) for r in cat.bases[i]] for i in sp.members]}
    if args.format == "text":
        return _emit(args, res, text=_header(args) + dump_catalog(cat, sp.members))
    return _emit(args, res)


def cmd_census(args):
    c = spread_census(args.n, args.k, args.q)
    out = _emit(args, c.as_dict())
    if not all(c.identities.values()):
        raise VerificationFailed(out)
    return out


def cmd_construct(args):
    kind, p = args.kind, args.params
    if kind in ("secants", "footnote"):
        if len(p) != 1:
            raise UsageError(f"construct {kind} takes q")
        q = p[0]
        if kind == "secants":
            fam, desc = secant_family(q), f"secants of an elliptic quadric, q={q}"
        else:
            con = footnote_construction(q)
            fam, desc = con.family, con.description
    else:
        want = 4 if kind == "pencil" else 3
        if len(p) != want:
            raise UsageError(f"construct {kind} takes {'n k q s' if want == 4 else 'n k q'}")
        n, k, q = p[:3]
        cat = space(n, q).catalog(k)
        idx = args.index
        if kind == "dictator":
            fam, desc = dictator(idx, cat), f"dictator of point {idx}"
        elif kind == "dual":
            fam, desc = dual_dictator(idx, cat), f"dual dictator of hyperplane {idx}"
        elif kind == "bilinear":
            fam, desc = bilinear_family(idx, cat), f"k-spaces disjoint to (n-k)-space {idx}"
        else:
            s = p[3]
            if args.points:
                fam = pencil_union(_int_list(args.points), cat)
            else:
                fam = standard_pencil(cat, s)
            desc = f"pencil union of {s} points"
    if args.format == "json":
        return _emit(args, {"description": desc, "n": fam.catalog.n, "k": fam.catalog.k,
                            "q": fam.catalog.q, "size": fam.size, "members": fam.ids,
                            "mask": format(fam.mask, "x")})
    text = _family_text(args, fam, f"{desc}; {fam.size} members")
    return _emit(args, {}, text=text)


def cmd_matching(args):
    fam = _load(args.family)
    cert = matching_number(fam, cap=args.cap, budget=_budget(args))
    res = {"size": fam.size, **cert.as_dict(), "verified": cert.check(fam)}
    out = _emit(args, res)
    if not res["verified"]:
        raise VerificationFailed(out)
    return out


def cmd_cover(args):
    fam = _load(args.family)
    cov = cover_number(fam, _budget(args))
    return _emit(args, {"size": fam.size, **cov.as_dict()})


def cmd_cl_check(args):
    return _emit(args, cl_report(_load(args.family)).as_dict())


def cmd_bounds_table(args):
    rows = []
    for n in _int_list(args.n):
        for k in _int_list(args.k):
            for q in _int_list(args.q):
                for s in args.s.split(","):
                    if n < 2 * k or k < 1:
                        continue
                    rows.append(table_row(n, k, q, s))
    if not rows:
        raise UsageError("no valid (n, k, q, s) in the given ranges (need n >= 2k >= 2)")
    return _emit(args, {"rows": rows}, rows=rows)


def cmd_search(args):
    kw = {}
    if args.budget_nodes is not None:
        kw["max_nodes"] = args.budget_nodes
    if args.budget_seconds is not None:
        kw["max_seconds"] = args.budget_seconds
    cfg = SearchConfig(args.n, args.k, args.q, args.s, mode=args.mode, seed=args.seed,
                       iterations=args.iterations, restarts=args.restarts,
                       threads=_threads(args), **kw)
    rep = run_search(cfg)
    if args.family_out:
        with open(args.family_out, "w") as fh:
            fh.write(_family_text(args, rep.family, f"best {args.s}-EM family found, {rep.size} members"))
    return _emit(args, rep.as_dict())


def cmd_audit(args):
    fam = _load(args.family)
    v = conjecture_audit(fam, args.s, budget_nodes=args.budget_nodes or 200_000)
    return _emit(args, v.as_dict())


def cmd_verify_all(args):
    only = set(_int_list(args.only)) if args.only else None
    checks = run_all(only, log=lambda line: print(line, file=sys.stderr) if args.format == "json" else None)
    res = {"passed": all(c.passed for c in checks), "checks": [c.as_dict() for c in checks]}
    text = "".join(c.line() + "\n" for c in checks)
    out = _emit(args, res, text=text)
    if not res["passed"]:
        raise VerificationFailed(out)
    return out


# -- parser -------------------------------------------------------------------

def _common(sp, fmt: str) -> None:
    # added per subparser: argparse parents share action objects, defaults included
    sp.add_argument("--format", choices=("json", "csv", "text"), default=fmt)
    sp.add_argument("--out", help="also write the report to this path")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--threads", type=int, help="worker cap (default QMATCH_THREADS or 1)")
    sp.add_argument("--budget-nodes", type=int, help="search node budget")
    sp.add_argument("--budget-seconds", type=float, help="search time budget")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qmatch", description="Exact tools for matching problems on subspaces.")
    p.add_argument("--version", action="version", version=f"qmatch {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, func, help_, fmt="json"):
        sp = sub.add_parser(name, help=help_)
        _common(sp, fmt)
        sp.set_defaults(func=func)
        return sp

    sp = add("qcomb", cmd_qcomb, "q-numbers, Gaussian coefficients and their bounds")
    sp.add_argument("op", choices=("gauss", "qnumber", "pascal", "bounds", "gap", "grid"))
    sp.add_argument("values", type=int, nargs="*")
    sp.add_argument("--max-a", type=int, default=14, help="grid: largest a")

    for name, func, help_ in (("enumerate", cmd_enumerate, "list the k-spaces of F_q^n"),
                              ("spread", cmd_spread, "Beutelspacher partial spread"),
                              ("census", cmd_census, "exhaustive z-spread census")):
        sp = add(name, func, help_)
        sp.add_argument("n", type=int)
        sp.add_argument("k", type=int)
        sp.add_argument("q", type=int)
        if name == "enumerate":
            sp.add_argument("--list", action="store_true", help="include bases in JSON")
            sp.add_argument("--limit", type=int, default=10 ** 6)

    sp = add("construct", cmd_construct, "build a family and write it as a family file", "text")
    sp.add_argument("kind", choices=("dictator", "dual", "pencil", "secants", "footnote", "bilinear"))
    sp.add_argument("params", type=int, nargs="+", help="n k q [s], or q for secants/footnote")
    sp.add_argument("--index", type=int, default=0, help="point / hyperplane / (n-k)-space id")
    sp.add_argument("--points", help="pencil: explicit point ids, comma separated")

    sp = add("matching", cmd_matching, "certified matching number")
    sp.add_argument("family")
    sp.add_argument("--cap", type=int)

    sp = add("cover", cmd_cover, "fewest intersecting families covering a family")
    sp.add_argument("family")

    sp = add("cl-check", cmd_cl_check, "degree-1 (Cameron-Liebler) report")
    sp.add_argument("family")

    sp = add("bounds-table", cmd_bounds_table, "derived parameters and theorem conditions")
    sp.add_argument("--n", required=True, help="e.g. 4:12 or 4,6,8")
    sp.add_argument("--k", required=True)
    sp.add_argument("--q", required=True)
    sp.add_argument("--s", required=True, help="comma separated, rationals allowed (7/3)")

    sp = add("search", cmd_search, "largest s-EM family, exact or local search")
    for name in ("n", "k", "q", "s"):
        sp.add_argument(name, type=int)
    sp.add_argument("--mode", choices=("exact", "local"), default="exact")
    sp.add_argument("--iterations", type=int, default=2000)
    sp.add_argument("--restarts", type=int, default=4)
    sp.add_argument("--family-out", help="write the best family to this file")

    sp = add("audit", cmd_audit, "compare an s-EM family with unions of s intersecting families")
    sp.add_argument("family")
    sp.add_argument("s", type=int)

    sp = add("verify-all", cmd_verify_all, "run every acceptance check", "text")
    sp.add_argument("--only", help="criterion numbers, e.g. 1,5:7")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("a subcommand is required")
        if args.threads is not None and args.threads < 1:
            raise UsageError("--threads must be positive")
        sys.stdout.write(args.func(args))
        return 0
    except UsageError as exc:
        print(f"qmatch: error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, BudgetExceeded, TypeError, ZeroDivisionError) as exc:
        print(f"qmatch: error: {exc}", file=sys.stderr)
        return 1
    except VerificationFailed as exc:
        sys.stdout.write(exc.report)
        print("qmatch: verification failed", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
