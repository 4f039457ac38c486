"""Growth classification, exponential witnesses, separation suite, dichotomy check."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

from .algebra import (
    quotient_by_ideal,
    structurally_equal,
    subalgebra_generated,
    subalgebra_on_basis,
)
from .catalog import CatalogId, build, default_order, iota_list, normalize_fcp_involution
from .codim import codimension, contains_at_degree, polynomial_bound
from .errors import (
    GStarError,
    InconsistencyDetected,
    InternalInconsistency,
    NonSplit,
    SeparationNotFound,
)
from .exactfield import CycScalar, Subspace
from .groups import element_order, find_prime_element, is_prime
from .identities import is_identity, parse
from .structure import (
    field_roots,
    lift_idempotents,
    preimage,
    root_order_hint,
    split_idempotents,
    wm_profile,
)

__all__ = [
    "Witness",
    "GrowthVerdict",
    "classify_growth",
    "exponential_witness",
    "separation_suite",
    "SeparationEntry",
    "check_dichotomy",
    "cross_validate",
    "PREDICATE_NAMES",
]

PREDICATE_NAMES = ("P1", "P2", "P3")


def _vec_str(v):
    return [str(c) for c in v]


@dataclass
class Witness:
    """A catalog algebra realized inside A or one of its quotients.

    ``generators`` are representatives in A's coordinates; ``ambient`` says
    where they generate the witness: "A", "A/J" or "A/J^k".
    """

    catalog_id: CatalogId | None
    ambient: str | None = None
    generators: list = field(default_factory=list)
    algebra: object = None
    note: str | None = None
    suggested_order: int | None = None

    def to_dict(self, G):
        d = {
            "catalog_id": self.catalog_id.label(G) if self.catalog_id else None,
            "ambient": self.ambient,
            "generators": [_vec_str(v) for v in self.generators],
        }
        if self.note:
            d["note"] = self.note
        if self.suggested_order:
            d["suggested_order"] = self.suggested_order
        return d


@dataclass
class GrowthVerdict:
    verdict: str
    predicates: dict
    profile: object
    witnesses: list = field(default_factory=list)

    @property
    def polynomial(self):
        return self.verdict == "Polynomial"

    @property
    def failing(self):
        return [p for p in PREDICATE_NAMES if not self.predicates[p]]

    @property
    def primary(self):
        f = self.failing
        return f[0] if f else None

    def to_dict(self, G):
        prof = self.profile
        return {
            "verdict": self.verdict,
            "predicates": dict(self.predicates),
            "failing": self.failing,
            "profile": prof.to_dict(),
            "witnesses": [w.to_dict(G) for w in self.witnesses],
        }


def classify_growth(A, witnesses=True):
    """Polynomial iff the semisimple part has trivial support and star and the
    off-diagonal radical condition holds; otherwise Exponential with a
    witness for the first failing predicate."""
    prof = wm_profile(A)
    preds = {
        "P1": prof.ss_support_trivial,
        "P2": prof.ss_star_trivial,
        "P3": prof.offdiag_in_Jsq,
    }
    if all(preds.values()):
        return GrowthVerdict("Polynomial", preds, prof)
    verdict = GrowthVerdict("Exponential", preds, prof)
    if witnesses:
        try:
            verdict.witnesses.append(exponential_witness(A, verdict.primary, prof))
        except NonSplit as exc:
            verdict.witnesses.append(
                Witness(None, note=f"NonSplit: {exc}", suggested_order=exc.suggested_order)
            )
        except GStarError as exc:
            verdict.witnesses.append(Witness(None, note=f"{exc.code}: {exc}"))
    return verdict


def exponential_witness(A, predicate, profile=None):
    """Generators of a catalog algebra in A (or a quotient) for a failing predicate."""
    if profile is None:
        profile = wm_profile(A)
    J = list(profile.radical_basis)
    if predicate == "P1":
        return _witness_support(A, J)
    if predicate == "P2":
        return _witness_star(A, J)
    if predicate == "P3":
        return _witness_offdiag(A, J, profile)
    raise ValueError(f"unknown predicate {predicate!r}")


# -- verification -------------------------------------------------------------


def _canonical_id(cid, target):
    G, tau = target.group, target.tau
    for other, B in iota_list(G, tau):
        if other.kind == cid.kind and structurally_equal(target, B) is not None:
            return other
    return cid


def _verify(X, gens, image_basis, cid):
    """gens generate span(image_basis) in X, and that basis realizes cid exactly."""
    target = build(cid, X.group, X.tau)
    sub = subalgebra_generated(X, gens)
    span = Subspace(X.dim, X.cyclo_order, image_basis)
    if sub.dim != len(image_basis) or not all(span.contains(v) for v in sub.embedding):
        raise InternalInconsistency("witness generators do not span the expected subalgebra")
    realized = subalgebra_on_basis(X, image_basis)
    if structurally_equal(realized, target) is None:
        raise InternalInconsistency(f"witness does not match {cid.label(X.group)}")
    return realized


def _root(c, p, m):
    """A p-th root of c in Q(zeta_m), or NonSplit."""
    poly = [-c] + [CycScalar(0, m)] * (p - 1) + [CycScalar(1, m)]
    roots = field_roots(poly, m)
    if not roots:
        hint = root_order_hint(poly, m)
        raise NonSplit(
            f"{c} has no {p}-th root in Q(zeta_{m})"
            + (f"; try extend_scalars to order {hint}" if hint else ""),
            hint,
        )
    # prefer a rational root when there is one
    roots.sort(key=lambda r: (not r.is_rational(), r.is_rational() and r.to_fraction() < 0, tuple(r.coeffs)))
    return roots[0]


def _power(S, x, k):
    out = x
    for _ in range(k - 1):
        out = S.mul(out, x)
    return out


def _scalar_ratio(S, x, y):
    """c with x = c*y, or None."""
    c = None
    for a, b in zip(x, y):
        if not b:
            if a:
                return None
            continue
        r = a / b
        if c is None:
            c = r
        elif c != r:
            return None
    return c


# -- not P1: graded part of A/J ------------------------------------------------------


def _witness_support(A, J):
    S = quotient_by_ideal(A, J)
    G, tau = A.group, A.tau
    supp = sorted(S.support())
    H = G.subgroup_generated(supp)
    first, _, _ = find_prime_element(G, tau, H)
    cands = [
        h
        for h in G.elements()
        if h != G.identity
        and h in supp
        and is_prime(element_order(G, h))
        and tau(h) in (h, G.inv(h))
    ]
    cands.sort(key=lambda h: (element_order(G, h), h))
    if first in cands:
        cands.remove(first)
        cands.insert(0, first)
    nonsplit = None
    for h in cands:
        p = element_order(G, h)
        i = 1 if tau(h) == h else -1
        for w0 in _degree_candidates(S, h):
            P = _power(S, w0, p)
            if not any(P):
                continue
            c = _scalar_ratio(S, S.mul(P, P), P)
            if not c:
                continue
            f = S.scale(c.inverse(), P)
            try:
                r = _root(c, p, S.cyclo_order)
            except NonSplit as exc:
                nonsplit = nonsplit or exc
                continue
            w = S.scale(r.inverse(), S.mul(f, w0))
            if S.star_of(f) != f:
                continue
            # w* = alpha w^i with i = +-1
            target = w if i == 1 or p == 2 else _power(S, w, p - 1)
            alpha = _scalar_ratio(S, S.star_of(w), target)
            if alpha is None:
                continue
            cid, change = normalize_fcp_involution(p, i % p, alpha, G, tau, h)
            need = default_order(cid)
            if S.cyclo_order % need:
                order = lcm(S.cyclo_order, need)
                nonsplit = nonsplit or NonSplit(
                    f"{cid.label(G)} needs Q(zeta_{need}); try extend_scalars to order {order}", order
                )
                continue
            powers = [f] + [_power(S, w, k) for k in range(1, p)]
            image = []
            for row in change:
                v = S.zero()
                for k, coef in enumerate(row):
                    if coef:
                        v = S.add(v, S.scale(coef, powers[k]))
                image.append(v)
            gens = [image[0], image[1]]
            realized = _verify(S, gens, image, cid)
            cid = _canonical_id(cid, build(cid, G, tau))
            return Witness(
                cid,
                ambient="A/J" if J else "A",
                generators=[preimage(A, S, v) for v in gens],
                algebra=realized,
            )
    if nonsplit is not None:
        raise nonsplit
    raise NonSplit("no prime-order graded element of A/J gives an FC_p witness")


def _degree_candidates(S, h):
    idx = S.basis_of_degree(h)
    for i in idx:
        yield S.basis_vector(i)
    # a few fixed combinations when single basis vectors fail
    for shift in range(1, 4):
        v = list(S.zero())
        for t, i in enumerate(idx):
            v[i] = CycScalar(t + shift, S.cyclo_order)
        if len(idx) > 1:
            yield tuple(v)


# -- not P2: star on A/J ---------------------------------------------------------------


def _fc2star(A, S, J, one, u):
    image = [one, u]
    realized = _verify(S, [one, u], image, CatalogId("FC2_STAR"))
    return Witness(
        CatalogId("FC2_STAR"),
        ambient="A/J" if J else "A",
        generators=[preimage(A, S, v) for v in image],
        algebra=realized,
    )


def _witness_star(A, J):
    S = quotient_by_ideal(A, J)
    basis = [S.basis_vector(i) for i in range(S.dim)]
    commutative = all(
        not any(S.commutator(basis[i], basis[j])) for i in range(S.dim) for j in range(i)
    )
    nonsplit = None
    if commutative:
        try:
            idems = split_idempotents(S)
            for a, e in enumerate(idems):
                es = S.star_of(e)
                for b in range(a + 1, len(idems)):
                    if es == idems[b]:
                        return _fc2star(A, S, J, S.add(e, es), S.sub(e, es))
        except NonSplit as exc:
            nonsplit = exc
    # sign route: a skew element k with k^2 = c f, f idempotent
    skew = Subspace(S.dim, S.cyclo_order)
    for b in basis:
        k = S.sub(b, S.star_of(b))
        if not any(k) or not skew.add(k):
            continue
        k = S.components(k).get(S.group.identity)
        if k is None:
            continue
        K = S.mul(k, k)
        if not any(K):
            continue
        c = _scalar_ratio(S, S.mul(K, K), K)
        if not c:
            continue
        f = S.scale(c.inverse(), K)
        try:
            r = _root(c, 2, S.cyclo_order)
        except NonSplit as exc:
            nonsplit = nonsplit or exc
            continue
        u = S.scale(r.inverse(), S.mul(f, k))
        return _fc2star(A, S, J, f, u)
    if nonsplit is not None:
        raise nonsplit
    raise NonSplit("no skew element of A/J gives an FC_{2,*} witness")


# -- not P3: off-diagonal radical --------------------------------------------------------


def _witness_offdiag(A, J, profile):
    S = quotient_by_ideal(A, J)
    idems = split_idempotents(S)
    lifted = lift_idempotents(A, J, idems, S)
    powers = [list(p) for p in profile.powers]  # powers[t] spans J^(t+1)
    spaces = [Subspace(A.dim, A.cyclo_order, p) for p in powers] + [Subspace(A.dim, A.cyclo_order)]
    G = A.group
    for g in G.elements():
        Jg = [j for j in J if A.degree_of(j) == g]
        if not Jg:
            continue
        for a in range(len(lifted)):
            for b in range(len(lifted)):
                if a == b:
                    continue
                ea, eb = lifted[a], lifted[b]
                prods = [A.mul(A.mul(ea, j), eb) for j in Jg]
                if not any(any(x) for x in prods):
                    continue
                # largest t with e_a J_g e_b inside J^t
                t = 1
                while t < len(powers) and all(spaces[t].contains(x) for x in prods):
                    t += 1
                j = next(Jg[k] for k, x in enumerate(prods) if not spaces[t].contains(x))
                return _m_witness(A, ea, eb, j, t, powers, g)
    raise InternalInconsistency("off-diagonal condition fails but no e_a J_g e_b is nonzero")


def _m_witness(A, ea, eb, j, t, powers, g):
    tau = A.tau
    # work in A / J^(t+1)
    ideal = powers[t] if t < len(powers) else []
    X = quotient_by_ideal(A, ideal) if ideal else A
    proj = (lambda v: _project(X, v)) if ideal else (lambda v: v)
    x = A.mul(A.mul(ea, j), eb)
    y = A.star_of(x)
    e1, e2, xb, yb = proj(ea), proj(eb), proj(x), proj(y)
    if tau(g) < g:
        g = tau(g)
        e1, e2, xb, yb = e2, e1, yb, xb
        ea, eb = eb, ea
        j = A.star_of(j)
    cid = CatalogId("M_RHO_TAU", g)
    image = [e1, e2, xb, yb]
    realized = _verify(X, [e1, e2, xb], image, cid)
    return Witness(
        cid,
        ambient=f"A/J^{t + 1}" if ideal else "A",
        generators=[ea, eb, A.mul(A.mul(ea, j), eb)],
        algebra=realized,
    )


def _project(X, v):
    out = X.zero()
    for i, c in enumerate(v):
        if c:
            out = X.add(out, X.scale(c, X.projection[i]))
    return out


# ---------------------------------------------------------------------------
# separation suite
# ---------------------------------------------------------------------------


@dataclass
class SeparationEntry:
    first: CatalogId
    second: CatalogId
    f12: object  # identity of first, not of second
    f21: object
    source12: str = "standard"
    source21: str = "standard"

    def to_dict(self, G):
        return {
            "Q1": self.first.label(G),
            "Q2": self.second.label(G),
            "f12": str(self.f12) if self.f12 is not None else None,
            "f21": str(self.f21) if self.f21 is not None else None,
            "source12": self.source12,
            "source21": self.source21,
        }


def standard_separators(G, tau):
    """The separating families, instantiated over G in index order."""
    names = [G.name(g) for g in G.elements()]
    texts = [f"[x1_1, x2_{n}]" for n in names]
    texts += [f"x1_{n}" for n in names]
    texts += [f"x1_{n}^2" for n in names]
    texts += ["(x1_1 - x1_1*)^2"]
    for n in names:
        texts += [f"x1_{n} - x1_{n}*", f"x1_{n} + x1_{n}*"]
    return [parse(t, G, tau) for t in texts]


def _separate(Q1, Q2, candidates, max_degree, jobs):
    for f in candidates:
        if is_identity(Q1, f) and not is_identity(Q2, f):
            return f, "standard"
    for n in range(1, max_degree + 1):
        res = contains_at_degree(Q1, Q2, n, jobs=jobs)
        if not res.contained:
            f = res.separator
            if is_identity(Q1, f) and not is_identity(Q2, f):
                return f, f"degree {n} search"
            raise InternalInconsistency(f"separator {f} failed re-verification")
    return None, None


def separation_suite(G, tau, max_degree=3, jobs=1, strict=False):
    """Both-way separating identities for every pair of distinct members of iota(G, tau)."""
    members = iota_list(G, tau)
    cands = standard_separators(G, tau)
    out = []
    for a in range(len(members)):
        for b in range(a + 1, len(members)):
            (c1, Q1), (c2, Q2) = members[a], members[b]
            f12, s12 = _separate(Q1, Q2, cands, max_degree, jobs)
            f21, s21 = _separate(Q2, Q1, cands, max_degree, jobs)
            entry = SeparationEntry(c1, c2, f12, f21, s12, s21)
            if strict and (f12 is None or f21 is None):
                raise SeparationNotFound(
                    f"no separation of {c1.label(G)} and {c2.label(G)} up to degree {max_degree}"
                )
            out.append(entry)
    return out


# ---------------------------------------------------------------------------
# consistency checks
# ---------------------------------------------------------------------------


def check_dichotomy(A, nmax, jobs=1, cap=None):
    """Classify, compute c_n^# for n <= nmax, and cross-check the two."""
    v = classify_growth(A)
    prof = v.profile
    rows = []
    for n in range(1, nmax + 1):
        c = codimension(A, n, "GSTAR", jobs, cap)
        row = {"n": n, "c_n_sharp": c}
        if v.polynomial:
            bound = polynomial_bound(n, A.dim, prof.ss_dim, len(prof.radical_basis), prof.s)
            row["bound"] = bound
            if c > bound:
                raise InconsistencyDetected(
                    f"Polynomial verdict but c_{n}^# = {c} exceeds the bound {bound}"
                )
        else:
            w = v.witnesses[0] if v.witnesses else None
            if w is not None and w.catalog_id is not None:
                Q = build(w.catalog_id, A.group, A.tau)
                res = contains_at_degree(A, Q, n, jobs=jobs, cap=cap)
                row["witness_contained"] = res.contained
                if not res.contained:
                    raise InconsistencyDetected(
                        f"witness {w.catalog_id.label(A.group)} separated from A at degree {n} "
                        f"by {res.separator}"
                    )
            else:
                row["witness_contained"] = None
        rows.append(row)
    return {"verdict": v.to_dict(A.group), "rows": rows}


def cross_validate(A, nmax=3, jobs=1):
    """For a Polynomial A, iota members not separated from var(A) up to nmax (should be empty)."""
    flagged = []
    for cid, Q in iota_list(A.group, A.tau):
        if not any(not contains_at_degree(A, Q, n, jobs=jobs).contained for n in range(1, nmax + 1)):
            flagged.append(cid)
    return flagged
