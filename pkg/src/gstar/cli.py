"""gstar command line: JSON algebra files in, canonical JSON reports out.

Exit codes: 0 success, 1 domain error (structured error object), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from . import codim as _codim
from .algebra import validate
from .catalog import CatalogId, build, iota_list
from .errors import GStarError, InvalidAlgebra
from .groups import make_group
from .growth import check_dichotomy, classify_growth, separation_suite
from .identities import identity_witness, parse
from .io import dump_algebra, emit_report, load_algebra, parse_tau
from .structure import wm_profile

__all__ = ["main", "run", "build_parser"]


def _vec(v):
    return [str(c) for c in v]


def _group_tau(args):
    G = make_group(args.group)
    return G, parse_tau(G, args.tau)


def cmd_validate(args):
    A = load_algebra(args.file, check=False)
    report = validate(A)
    if not report.ok:
        raise InvalidAlgebra(report)
    return {"ok": True, "dim": A.dim, "violations": []}


def cmd_radical(args):
    A = load_algebra(args.file)
    prof = wm_profile(A)
    return {
        "radical_basis": [_vec(v) for v in prof.radical_basis],
        "powers": [[_vec(v) for v in p] for p in prof.powers],
        "powers_dims": [len(p) for p in prof.powers],
        "s": prof.s,
        "profile": prof.to_dict(),
    }


def cmd_classify(args):
    A = load_algebra(args.file)
    return classify_growth(A).to_dict(A.group)


def cmd_codim(args):
    A = load_algebra(args.file)
    cap = args.max_monomials
    if args.flavor:
        flavor = _codim.Flavor[args.flavor.upper()]
        return {"n": args.n, "flavor": flavor.name, "value": _codim.codimension(A, args.n, flavor, args.jobs, cap)}
    return _codim.codim_report(A, args.n, args.jobs, cap).to_dict()


def cmd_identity(args):
    A = load_algebra(args.file)
    f = parse(args.poly, A.group, A.tau, A.cyclo_order)
    w = identity_witness(A, f)
    out = {"polynomial": str(f), "identity": w is None}
    if w is not None:
        g, subst = w
        out["witness"] = {
            "component": str(g),
            "substitution": {f"x{v}": A.basis_labels[i] for v, i in sorted(subst.items())},
        }
    return out


def cmd_contains(args):
    A = load_algebra(args.file)
    Q = load_algebra(args.qfile)
    res = _codim.contains_at_degree(A, Q, args.n, args.jobs, args.max_monomials)
    return res.to_dict()


def cmd_separate(args):
    G, tau = _group_tau(args)
    entries = separation_suite(G, tau, args.max_degree, args.jobs)
    missing = [e for e in entries if e.f12 is None or e.f21 is None]
    return {
        "group": G.to_spec(),
        "tau": list(tau.map),
        "pairs": [e.to_dict(G) for e in entries],
        "not_found": len(missing),
    }


def cmd_catalog(args):
    G, tau = _group_tau(args)
    if args.emit:
        cid = CatalogId.parse(args.emit, G)
        text = dump_algebra(build(cid, G, tau), args.out)
        return None if args.out is None else {"written": args.out, "id": cid.label(G)}, text
    members = [{"id": cid.label(G), "dim": Q.dim} for cid, Q in iota_list(G, tau)]
    return {"group": G.to_spec(), "tau": list(tau.map), "iota": members}


def cmd_bound(args):
    if args.file:
        A = load_algebra(args.file)
        prof = wm_profile(A)
        dimA, m, dimJ, s = A.dim, prof.ss_dim, len(prof.radical_basis), prof.s
    else:
        missing = [k for k in ("dim", "m", "dimJ", "s") if getattr(args, k) is None]
        if missing:
            raise _Usage(f"bound needs a file or --dim --m --dimJ --s (missing {', '.join(missing)})")
        dimA, m, dimJ, s = args.dim, args.m, args.dimJ, args.s
    if min(dimA, m, dimJ, args.n) < 0 or s < 1:
        raise _Usage("bound arguments must be non-negative and s >= 1")
    return {
        "n": args.n,
        "dim": dimA,
        "m": m,
        "dimJ": dimJ,
        "s": s,
        "bound": _codim.polynomial_bound(args.n, dimA, m, dimJ, s),
    }


def cmd_dichotomy(args):
    A = load_algebra(args.file)
    return check_dichotomy(A, args.nmax, args.jobs, args.max_monomials)


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser():
    p = _Parser(prog="gstar", description="Exact workbench for G-graded algebras with involution.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def cmd(name, fn, help_text, file=True):
        s = sub.add_parser(name, help=help_text)
        if file:
            s.add_argument("file", help="algebra JSON file")
        s.set_defaults(fn=fn)
        return s

    def perf(s):
        s.add_argument("--jobs", type=_positive, default=1, help="worker processes")
        s.add_argument(
            "--max-monomials",
            type=_positive,
            default=None,
            help=f"monomial cap (default {_codim.DEFAULT_MAX_MONOMIALS}, env GSTAR_MAX_MONOMIALS)",
        )

    def group(s):
        s.add_argument("--group", required=True, help="C4, C2xC2, S3, trivial, or a JSON spec")
        s.add_argument("--tau", default="id", help='"id", "inv" or an index array like [0,2,1]')

    cmd("validate", cmd_validate, "check the algebra axioms")
    cmd("radical", cmd_radical, "Jacobson radical, powers and profile")
    cmd("classify", cmd_classify, "polynomial or exponential growth, with witnesses")
    s = cmd("codim", cmd_codim, "codimensions at degree n")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--flavor", type=str.lower, choices=[f.name.lower() for f in _codim.Flavor])
    perf(s)
    s = cmd("identity", cmd_identity, "is the polynomial an identity of the algebra")
    s.add_argument("--poly", required=True, help="polynomial in the DSL, e.g. '[x1_1, x2_g]'")
    s = cmd("contains", cmd_contains, "bounded-degree containment of Q in var(A)")
    s.add_argument("qfile", help="algebra JSON file for Q")
    s.add_argument("--n", type=_positive, required=True)
    perf(s)
    s = cmd("separate", cmd_separate, "separating identities for the exclusion list", file=False)
    group(s)
    s.add_argument("--max-degree", type=_positive, default=3)
    s.add_argument("--jobs", type=_positive, default=1)
    s = cmd("catalog", cmd_catalog, "list the exclusion list or emit one member", file=False)
    group(s)
    s.add_argument("--emit", metavar="ID", help="catalog id such as FC2_STAR or M_RHO_TAU(g)")
    s.add_argument("--out", help="write the emitted file here instead of stdout")
    s = cmd("bound", cmd_bound, "polynomial growth bound", file=False)
    s.add_argument("file", nargs="?", help="take dim, m, dimJ and s from this algebra")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--dim", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--dimJ", type=int)
    s.add_argument("--s", type=int)
    s = cmd("dichotomy", cmd_dichotomy, "classifier versus codimension data")
    s.add_argument("--nmax", type=_positive, required=True)
    perf(s)
    return p


def run(argv=None):
    """Run one command; returns (exit code, output text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise _Usage("a command is required")
        result = args.fn(args)
    except _Usage as exc:
        return 2, f"gstar: usage error: {exc}\n{parser.format_usage()}"
    except OSError as exc:
        return 2, f"gstar: {exc}\n"
    except GStarError as exc:
        return 1, emit_report(exc.to_dict())
    if isinstance(result, tuple):
        # catalog --emit: (report or None, algebra file text)
        report, text = result
        return 0, text if report is None else emit_report(report)
    return 0, emit_report(result)


def main(argv=None):
    code, text = run(argv)
    stream = sys.stdout if code == 0 or code == 1 else sys.stderr
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
