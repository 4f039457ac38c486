import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gstar.algebra import (
    direct_sum,
    exchange_double,
    extend_scalars,
    subalgebra_generated,
    twisted_group_algebra,
)
from gstar.catalog import CatalogId, build, iota_list
from gstar.codim import codimension, polynomial_bound
from gstar.errors import SeparationNotFound
from gstar.groups import cyclic_group, identity_involution, inversion_involution
from gstar.growth import (
    check_dichotomy,
    classify_growth,
    cross_validate,
    exponential_witness,
    standard_separators,
    separation_suite,
)
from gstar.identities import is_identity, parse
from gstar.structure import wm_profile
from helpers import all_contexts, field_power, matrix_units, random_algebra, trivial_context, truncated_poly

C2 = cyclic_group(2)
ID2 = identity_involution(C2)


def test_field_power_twist_fc4():
    C4 = cyclic_group(4)
    tau = identity_involution(C4)
    A = twisted_group_algebra(C4, tau, [0, 1, 2, 3])
    v = classify_growth(A)
    assert v.verdict == "Exponential" and v.primary == "P1"
    (w,) = v.witnesses
    assert w.catalog_id == CatalogId("FCP_TAU", 2, 2)
    assert w.catalog_id.label(C4) == "FCP_TAU(2,g2)"


def test_exchange_double_of_field():
    D = exchange_double(build(CatalogId("FIELD"), C2, ID2))
    v = classify_growth(D)
    assert v.verdict == "Exponential" and v.failing == ["P2"]
    assert v.witnesses[0].catalog_id == CatalogId("FC2_STAR")


def test_span_one_j_jsq_polynomial():
    # the unital subalgebra generated by the strictly upper part of UT_3
    G, tau = trivial_context()
    U = matrix_units(G, tau, 3, [0, 0, 0], "reflection", upper=True)
    one = U.unit()
    # upper pairs in row-major order: e11 e12 e13 e22 e23 e33
    j = U.add(U.basis_vector(1), U.basis_vector(4))
    S = subalgebra_generated(U, [one, j])
    assert S.dim == 3
    v = classify_growth(S)
    assert v.verdict == "Polynomial" and v.witnesses == []
    p = v.profile
    for n in range(1, 5):
        assert codimension(S, n) <= polynomial_bound(n, S.dim, p.ss_dim, len(p.radical_basis), p.s)


def test_m_g_offdiag():
    M = build(CatalogId("M_RHO_TAU", 1), C2, ID2)
    v = classify_growth(M)
    assert v.failing == ["P3"]
    assert v.witnesses[0].catalog_id == CatalogId("M_RHO_TAU", 1)
    out = check_dichotomy(M, 3)
    assert all(r["witness_contained"] for r in out["rows"])


def test_upper_triangular_reflection():
    G, tau = trivial_context()
    U = matrix_units(G, tau, 3, [0, 0, 0], "reflection", upper=True)
    v = classify_growth(U)
    # the reflection swaps e11 and e33, so the star on A/J is nontrivial
    assert v.failing == ["P2", "P3"]
    assert v.witnesses[0].catalog_id == CatalogId("FC2_STAR")
    assert v.witnesses[0].ambient is not None


@pytest.mark.parametrize("ctx", list(all_contexts(["C2", "C3", "C4", "C2xC2"])), ids=lambda c: c[0] + str(c[2].map))
def test_catalog_members_exponential_with_matching_witness(ctx):
    _, G, tau = ctx
    for cid, Q in iota_list(G, tau):
        v = classify_growth(Q)
        assert v.verdict == "Exponential"
        (w,) = v.witnesses
        assert w.catalog_id == cid, (cid.label(G), w.to_dict(G))


def test_nonsplit_note():
    C3 = cyclic_group(3)
    FC3 = twisted_group_algebra(C3, identity_involution(C3), [0, 1, 2])
    v = classify_growth(FC3)
    assert v.verdict == "Exponential" and v.primary == "P1"
    (w,) = v.witnesses
    assert w.catalog_id is None and w.suggested_order == 3 and "NonSplit" in w.note
    v3 = classify_growth(extend_scalars(FC3, 3))
    assert v3.witnesses[0].catalog_id == CatalogId("FCP_TAU", 1, 3)


def test_exponential_witness_rejects_unknown_predicate():
    with pytest.raises(ValueError):
        exponential_witness(build(CatalogId("FIELD"), C2, ID2), "P4")


def test_direct_sum_componentwise():
    F = build(CatalogId("FIELD"), C2, ID2)
    T = truncated_poly(C2, ID2, 3)
    M = build(CatalogId("M_RHO_TAU", 1), C2, ID2)
    assert classify_growth(direct_sum(F, T)).polynomial
    v = classify_growth(direct_sum(T, M))
    assert not v.polynomial and v.failing == ["P3"]
    FS = build(CatalogId("FC2_STAR"), C2, ID2)
    assert classify_growth(direct_sum(F, FS)).failing == ["P2"]


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_verdict_invariant_under_extension(seed):
    A = random_algebra(random.Random(seed), max_dim=6)
    v = classify_growth(A, witnesses=False)
    w = classify_growth(extend_scalars(A, 4 * A.cyclo_order), witnesses=False)
    assert v.verdict == w.verdict and v.predicates == w.predicates


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_direct_sum_random(seed):
    rng = random.Random(seed)
    A = random_algebra(rng, max_dim=4)
    B = random_algebra(rng, max_dim=4)
    if (A.group.order, A.tau.map, A.cyclo_order) != (B.group.order, B.tau.map, B.cyclo_order):
        return
    if A.group.table != B.group.table:
        return
    v = classify_growth(direct_sum(A, B), witnesses=False)
    assert v.polynomial == (classify_growth(A, witnesses=False).polynomial and classify_growth(B, witnesses=False).polynomial)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_random_witnesses_verify(seed):
    A = random_algebra(random.Random(seed), max_dim=6)
    v = classify_growth(A)
    if v.polynomial:
        assert v.witnesses == []
        return
    (w,) = v.witnesses
    if w.catalog_id is None:
        assert w.note
        return
    Q = build(w.catalog_id, A.group, A.tau, cyclo_order=A.cyclo_order)
    # witnesses lie in var(A): a low-degree identity of A is one of Q
    for f in standard_separators(A.group, A.tau):
        if is_identity(A, f):
            assert is_identity(Q, f), (str(f), w.catalog_id.label(A.group))


def test_polynomial_algebras_small():
    G, tau = trivial_context()
    for m in (1, 2, 3):
        assert classify_growth(field_power(G, tau, m)).polynomial
    for s in (1, 2, 3):
        assert classify_growth(truncated_poly(C2, ID2, s)).polynomial


def test_check_dichotomy_field():
    F = build(CatalogId("FIELD"), C2, ID2)
    out = check_dichotomy(F, 4)
    assert [r["c_n_sharp"] for r in out["rows"]] == [1, 1, 1, 1]
    assert all(r["c_n_sharp"] <= r["bound"] for r in out["rows"])


def test_cross_validate_polynomial():
    assert cross_validate(build(CatalogId("FIELD"), C2, ID2)) == []
    assert cross_validate(truncated_poly(C2, ID2, 3), nmax=2) == []


def test_standard_separator_examples():
    M1 = build(CatalogId("M_RHO_TAU", 0), C2, ID2)
    Mg = build(CatalogId("M_RHO_TAU", 1), C2, ID2)
    f = parse("[x1_1, x2_g]", C2, ID2)
    assert is_identity(M1, f) and not is_identity(Mg, f)
    FS = build(CatalogId("FC2_STAR"), C2, ID2)
    h = parse("(x1_1 - x1_1*)^2", C2, ID2)
    assert is_identity(M1, h) and not is_identity(FS, h)


@pytest.mark.parametrize(
    "G,tau",
    [
        (C2, ID2),
        (cyclic_group(3), identity_involution(cyclic_group(3))),
        (cyclic_group(3), inversion_involution(cyclic_group(3))),
    ],
    ids=["C2", "C3id", "C3inv"],
)
def test_separation_suite(G, tau):
    entries = separation_suite(G, tau, strict=True)
    k = len(iota_list(G, tau))
    assert len(entries) == k * (k - 1) // 2
    members = dict((cid, Q) for cid, Q in iota_list(G, tau))
    for e in entries:
        Q1, Q2 = members[e.first], members[e.second]
        assert is_identity(Q1, e.f12) and not is_identity(Q2, e.f12)
        assert is_identity(Q2, e.f21) and not is_identity(Q1, e.f21)


def test_separation_strict_raises_when_degree_too_low(monkeypatch):
    import gstar.growth as growth

    monkeypatch.setattr(growth, "standard_separators", lambda G, tau: [])
    with pytest.raises(SeparationNotFound):
        separation_suite(C2, ID2, max_degree=0, strict=True)
    loose = separation_suite(C2, ID2, max_degree=0)
    assert all(e.f12 is None for e in loose)


def test_profile_m_equals_ss_dim():
    p = wm_profile(build(CatalogId("M_RHO_TAU", 1), C2, ID2))
    assert p.ss_dim == 2 and p.s == 2
