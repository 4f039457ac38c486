"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the lines are echoed in the
terminal summary (and printed directly under ``-s``).
"""

import json
import os
import random
import subprocess
import sys
import time

import pytest

from conftest import ACCEPTANCE_LINES
from gstar.algebra import direct_sum, extend_scalars, is_isomorphism, subalgebra_generated, validate
from gstar.catalog import CatalogId, build, fcp_with_star, iota_list, normalize_fcp_involution
from gstar.cli import run
from gstar.codim import codim_report, codimension, polynomial_bound
from gstar.errors import InvalidParameters, NotAnInvolution
from gstar.exactfield import CycScalar, Subspace
from gstar.groups import cyclic_group, identity_involution, inversion_involution
from gstar.growth import classify_growth, standard_separators, separation_suite
from gstar.identities import is_identity, parse
from gstar.io import dump_algebra
from gstar.structure import jacobson_radical, radical_powers, semisimple_quotient
from helpers import (
    all_contexts,
    field_power,
    matrix_units,
    oracle_is_identity,
    random_algebra,
    random_polynomial,
    trivial_context,
    truncated_poly,
)

C2 = cyclic_group(2)
ID2 = identity_involution(C2)
C3 = cyclic_group(3)

# c_n^# of FC_{2,*}, n = 1..4, frozen from the brute-force rank oracle in helpers
FC2STAR_SHARP = [2, 4, 8, 16]


def _report(k, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def _expected_predicate(cid):
    return {"FC2_STAR": "P2", "FCP_TAU": "P1", "FC2_STAR_G": "P1", "M_RHO_TAU": "P3"}[cid.kind]


# 1 ---------------------------------------------------------------------------


def test_criterion_1_catalog_exponential():
    start = time.perf_counter()
    bad = []
    total = 0
    for name, G, tau in all_contexts(["C2", "C3", "C4", "C2xC2", "S3"]):
        for cid, Q in iota_list(G, tau):
            total += 1
            v = classify_growth(Q)
            if v.verdict != "Exponential" or v.primary != _expected_predicate(cid):
                bad.append(f"{name}{tau.map}:{cid.label(G)}")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10
    _report(1, ok, f"{total} iota members Exponential with matching predicate in {elapsed:.2f}s; mismatches {bad}")


# 2 ---------------------------------------------------------------------------


def _polynomial_examples():
    T, t = trivial_context()
    out = []
    for m in range(1, 5):
        out.append((f"F^{m}", field_power(T, t, m)))
        out.append((f"F^{m} over C2", field_power(C2, ID2, m)))
    for s in range(1, 4):
        out.append((f"F[x]/x^{s}", truncated_poly(T, t, s)))
        out.append((f"F[x]/x^{s} graded C2", truncated_poly(C2, ID2, s)))
    U = matrix_units(T, t, 3, [0, 0, 0], "reflection", upper=True)
    out.append(("span{1,j,j^2}", subalgebra_generated(U, [U.unit(), U.add(U.basis_vector(1), U.basis_vector(4))])))
    F = build(CatalogId("FIELD"), C2, ID2)
    out.append(("F + F[x]/x^3", direct_sum(F, truncated_poly(C2, ID2, 3))))
    out.append(("F^2 + F[x]/x^2", direct_sum(field_power(C2, ID2, 2), truncated_poly(C2, ID2, 2))))
    return out


def test_criterion_2_polynomial_side():
    bad = []
    examples = _polynomial_examples()
    for label, A in examples:
        v = classify_growth(A)
        if not v.polynomial:
            bad.append(f"{label}: {v.verdict} {v.failing}")
            continue
        p = v.profile
        for n in range(1, 5):
            c = codimension(A, n)
            bound = polynomial_bound(n, A.dim, p.ss_dim, len(p.radical_basis), p.s)
            if c > bound:
                bad.append(f"{label}: c_{n} = {c} > {bound}")
    _report(2, not bad, f"{len(examples)} algebras Polynomial with c_n^# <= bound for n <= 4; failures {bad}")


# 3 ---------------------------------------------------------------------------


def test_criterion_3_codim_chain():
    cases = []
    for cid in (CatalogId("FC2_STAR"), CatalogId("FC2_STAR_G", 1), CatalogId("FCP_TAU", 1, 2), CatalogId("M_RHO_TAU", 1)):
        # C2 has a single involution (the identity equals inversion)
        cases.append((f"C2:{cid.label(C2)}", build(cid, C2, ID2), 3))
    for tau in (identity_involution(C3), inversion_involution(C3)):
        cases.append((f"C3{tau.map}:FCP_TAU(3,g)", build(CatalogId("FCP_TAU", 1, 3), C3, tau), 2))
    bad = []
    rows = []
    for label, A, nmax in cases:
        for n in range(1, nmax + 1):
            r = codim_report(A, n)
            rows.append((label, n, r.c_n, r.c_n_G, r.c_n_star, r.c_n_sharp))
            if not r.inequalities_ok:
                bad.append((label, n))
    _report(3, not bad, f"{len(rows)} codim reports satisfy the inequality chain; failures {bad}")


# 4 ---------------------------------------------------------------------------


def _stated_steps(G, tau):
    """Check each step of the pairwise non-comparability argument on iota(G, tau).

    Returns (checked, failures, gaps); a gap is a step whose polynomial is an
    identity of both algebras, so the fallback family has to separate them.
    """
    members = iota_list(G, tau)
    checked, failures, gaps = 0, [], []

    def claim(f, yes, no, label):
        nonlocal checked
        checked += 1
        if not is_identity(yes, f):
            failures.append(f"{label}: {f} not an identity of the first algebra")
        elif is_identity(no, f):
            gaps.append(f"{label}: {f} is an identity of both")

    for cid, M in members:
        if cid.kind != "M_RHO_TAU":
            continue
        g = cid.g
        f = parse(f"[x1_1, x2_{G.name(g)}]", G, tau)
        suppM = M.support()
        for other, B in members:
            if other == cid:
                continue
            claim(f, B, M, f"{other.label(G)} vs {cid.label(G)} commutator")
            extra = sorted(set(B.support()) - set(suppM))
            if extra:
                h = parse(f"x1_{G.name(extra[0])}", G, tau)
            elif other.kind == "M_RHO_TAU":
                # two M's are told apart by their supports alone
                continue
            elif g != G.identity:
                h = parse(f"x1_{G.name(g)}^2", G, tau)
            else:
                h = parse("(x1_1 - x1_1*)^2", G, tau)
            claim(h, M, B, f"{cid.label(G)} vs {other.label(G)}")
    for cid, Q in members:
        if cid.kind == "FC2_STAR_G":
            s = G.name(cid.g)
            P = build(CatalogId("FCP_TAU", cid.g, 2), G, tau)
            claim(parse(f"x1_{s} + x1_{s}*", G, tau), Q, P, f"{cid.label(G)} vs FCP_TAU(2,{s})")
            claim(parse(f"x1_{s} - x1_{s}*", G, tau), P, Q, f"FCP_TAU(2,{s}) vs {cid.label(G)}")
    return checked, failures, gaps


def test_criterion_4_separation():
    contexts = [("C2", C2, ID2), ("C3", C3, identity_involution(C3)), ("C3", C3, inversion_involution(C3))]
    pairs = 0
    missing = []
    wrong = []
    claims, claim_fail, gaps = 0, [], []
    for name, G, tau in contexts:
        members = dict(iota_list(G, tau))
        for e in separation_suite(G, tau, max_degree=3):
            pairs += 1
            if e.f12 is None or e.f21 is None:
                missing.append((name, e.first.label(G), e.second.label(G)))
                continue
            Q1, Q2 = members[e.first], members[e.second]
            if not (is_identity(Q1, e.f12) and not is_identity(Q2, e.f12)):
                wrong.append(str(e.f12))
            if not (is_identity(Q2, e.f21) and not is_identity(Q1, e.f21)):
                wrong.append(str(e.f21))
        c, f, g = _stated_steps(G, tau)
        claims += c
        claim_fail += f
        gaps += [f"{name}{tau.map} {x}" for x in g]
    # known gap: x_{1,g}^2 vanishes on FC_{2,*} too; x1_1 - x1_1* separates instead
    gaps_ok = all("vs FC2_STAR:" in x for x in gaps)
    ok = not missing and not wrong and not claim_fail and gaps_ok
    _report(
        4,
        ok,
        f"{pairs} pairs separated both ways at degree <= 3 (SeparationNotFound: {len(missing)}); "
        f"{claims} stated witness steps checked, {len(gaps)} steps vanish on both sides "
        f"(M^g vs FC2_STAR, covered by x1_1 - x1_1*)",
    )


# 5 ---------------------------------------------------------------------------


def _radical_ok(A, J):
    space = Subspace(A.dim, A.cyclo_order, J)
    for x in J:
        if A.degree_of(x) is None or not space.contains(A.star_of(x)):
            return False
        for i in range(A.dim):
            b = A.basis_vector(i)
            if not (space.contains(A.mul(b, x)) and space.contains(A.mul(x, b))):
                return False
    prod = list(J)
    for _ in range(A.dim + 1):
        prod = [p for p in (A.mul(x, y) for x in prod for y in J) if any(p)]
        if not prod:
            return True
    return not prod


def test_criterion_5_radical_invariants():
    rng = random.Random(2024)
    bad = []
    dims = []
    for k in range(25):
        A = random_algebra(rng, max_dim=8)
        assert validate(A).ok and A.group.order <= 4
        dims.append(A.dim)
        J = jacobson_radical(A)
        if not _radical_ok(A, J) or jacobson_radical(semisimple_quotient(A, J)) != []:
            bad.append(k)
        radical_powers(A, J)
    _report(5, not bad, f"25 random algebras (dims {min(dims)}..{max(dims)}) with nilpotent graded star-stable radical; failures {bad}")


# 6 ---------------------------------------------------------------------------


def test_criterion_6_oracle_equivalence():
    contexts = [("C2", C2, ID2), ("C3id", C3, identity_involution(C3)), ("C3inv", C3, inversion_involution(C3))]
    checked = 0
    bad = []
    for name, G, tau in contexts:
        rng = random.Random(f"acceptance-{name}")
        suite = list(standard_separators(G, tau))
        suite += [e.f12 for e in separation_suite(G, tau)] + [e.f21 for e in separation_suite(G, tau)]
        for cid, Q in [(CatalogId("FIELD"), build(CatalogId("FIELD"), G, tau))] + iota_list(G, tau):
            polys = suite + [random_polynomial(rng, G, tau, max_degree=3, order=Q.cyclo_order) for _ in range(50)]
            for f in polys:
                checked += 1
                if is_identity(Q, f) != oracle_is_identity(Q, f):
                    bad.append(f"{name}:{cid.label(G)}:{f}")
    _report(6, not bad, f"{checked} (algebra, polynomial) pairs agree with the symbolic oracle; disagreements {bad[:5]}")


# 7 ---------------------------------------------------------------------------


def test_criterion_7_normalization():
    valid, rejected, bad = 0, 0, []
    for p in (2, 3, 5):
        G = cyclic_group(p)
        m = p if p > 2 else 1
        roots = [CycScalar.zeta(p, k) for k in range(p)] if p > 2 else [CycScalar(1), CycScalar(-1)]
        for i in range(p):
            for alpha in roots + [CycScalar(2)]:
                is_valid = (i * i - 1) % p == 0 and alpha ** p == 1 and not (p > 2 and i == 1 and alpha != 1)
                try:
                    cid, change = normalize_fcp_involution(p, i, alpha)
                except (NotAnInvolution, InvalidParameters):
                    if is_valid:
                        bad.append(("rejected", p, i, str(alpha)))
                    else:
                        rejected += 1
                    continue
                if not is_valid:
                    bad.append(("accepted", p, i, str(alpha)))
                    continue
                tau = [(k * i) % p for k in range(p)]
                expected = "FC2_STAR_G" if p == 2 and alpha == -1 else "FCP_TAU"
                target = build(cid, G, tau, cyclo_order=m)
                source = fcp_with_star(p, i, alpha, G, tau, 1)
                if target.cyclo_order != source.cyclo_order:
                    target = extend_scalars(target, source.cyclo_order)
                rows = [tuple(c.lift(source.cyclo_order) for c in row) for row in change]
                if cid.kind != expected or not is_isomorphism(target, source, rows):
                    bad.append(("wrong form", p, i, str(alpha)))
                else:
                    valid += 1
    _report(7, not bad, f"{valid} valid (i, alpha) normalized with verified change of basis, {rejected} invalid rejected; errors {bad}")


# 8 ---------------------------------------------------------------------------


def test_criterion_8_scalar_extension():
    checked = 0
    bad = []
    for name, G, tau in all_contexts(["C2", "C3", "C4", "C2xC2"]):
        for cid, Q in iota_list(G, tau):
            R = extend_scalars(Q, 4 * Q.cyclo_order)
            v, w = classify_growth(Q), classify_growth(R)
            if v.verdict != w.verdict or v.predicates != w.predicates:
                bad.append(f"{name}:{cid.label(G)} verdict")
            for n in (1, 2):
                checked += 1
                if codimension(Q, n) != codimension(R, n):
                    bad.append(f"{name}:{cid.label(G)} c_{n}")
    _report(8, not bad, f"{checked} codimensions and all verdicts unchanged from m to 4m; differences {bad}")


# 9 ---------------------------------------------------------------------------


def test_criterion_9_exponential_vs_bound():
    FS = build(CatalogId("FC2_STAR"), C2, ID2)
    values = [codimension(FS, n) for n in range(1, 5)]
    bounds = [polynomial_bound(n, 2, 2, 0, 1) for n in range(1, 5)]
    crossing = next((n for n in range(1, 5) if values[n - 1] > bounds[n - 1]), None)
    ok = values == FC2STAR_SHARP and crossing is not None
    ok = ok and all(values[n - 1] > bounds[n - 1] for n in range(crossing, 5))
    _report(9, ok, f"c_n^#(FC2_STAR) = {values}, bound = {bounds}, strictly above from n = {crossing}")


# 10 --------------------------------------------------------------------------


@pytest.fixture
def cli_files(tmp_path):
    out = {}
    for name, cid in [("mg", CatalogId("M_RHO_TAU", 1)), ("fs", CatalogId("FC2_STAR")), ("field", CatalogId("FIELD"))]:
        path = tmp_path / f"{name}.json"
        dump_algebra(build(cid, C2, ID2), str(path))
        out[name] = str(path)
    return out


def test_criterion_10_cli_determinism(cli_files):
    f = cli_files
    commands = [
        ["validate", f["mg"]],
        ["radical", f["mg"]],
        ["classify", f["mg"]],
        ["codim", f["mg"], "--n", "3"],
        ["identity", f["mg"], "--poly", "[x1_1, x2_g]"],
        ["contains", f["field"], f["fs"], "--n", "2"],
        ["separate", "--group", "C3", "--tau", "inv"],
        ["catalog", "--group", "C2xC2"],
        ["bound", f["mg"], "--n", "4"],
        ["dichotomy", f["mg"], "--nmax", "2"],
    ]
    parallel = {"codim", "contains", "separate", "dichotomy"}
    bad = []
    for argv in commands:
        first = run(argv)
        if first[0] != 0 or run(argv) != first:
            bad.append(" ".join(argv[:1]) + " repeat")
        if argv[0] in parallel and run(argv + ["--jobs", "2"]) != first:
            bad.append(argv[0] + " --jobs 2")
    # separate processes with different hash seeds
    for argv in (commands[2], commands[6]):
        outs = set()
        for seed in ("1", "2"):
            env = dict(os.environ, PYTHONHASHSEED=seed)
            proc = subprocess.run([sys.executable, "-m", "gstar", *argv], capture_output=True, env=env, check=False)
            outs.add(proc.stdout)
        if len(outs) != 1:
            bad.append(argv[0] + " across processes")
        json.loads(outs.pop())
    _report(10, not bad, f"{len(commands)} commands byte-identical on repeat, with --jobs 2 and across processes; failures {bad}")
