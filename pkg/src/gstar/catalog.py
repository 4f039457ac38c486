"""Named algebras: FC_{2,*}, FC_{2,*}^g, FC_{p,tau}^h, M_{rho,tau}^g, F; the list iota(G, tau)."""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import lcm

from .algebra import extend_scalars, is_isomorphism, make_algebra, structurally_equal
from .errors import InvalidParameters, NotAnInvolution
from .exactfield import CycScalar, as_scalar
from .groups import (
    GroupInvolution,
    cyclic_group,
    element_order,
    is_prime,
    validate_involution,
)

__all__ = [
    "CatalogId",
    "KINDS",
    "build",
    "iota_list",
    "normalize_fcp_involution",
    "fcp_with_star",
]

KINDS = ("FC2_STAR", "FC2_STAR_G", "FCP_TAU", "M_RHO_TAU", "FIELD")


@dataclass(frozen=True, order=True)
class CatalogId:
    kind: str
    g: int | None = None  # group element parameter (g, s or h)
    p: int | None = None  # prime, FCP_TAU only

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidParameters(f"unknown catalog kind {self.kind!r}")

    def label(self, G=None):
        name = (lambda x: G.name(x)) if G is not None else str
        if self.kind in ("FC2_STAR", "FIELD"):
            return self.kind
        if self.kind == "FCP_TAU":
            return f"FCP_TAU({self.p},{name(self.g)})"
        return f"{self.kind}({name(self.g)})"

    @classmethod
    def parse(cls, text, G):
        """Inverse of :meth:`label`, e.g. ``M_RHO_TAU(g)`` or ``FCP_TAU(3,g)``."""
        mt = re.fullmatch(r"\s*([A-Z0-9_]+)\s*(?:\(([^)]*)\))?\s*", text)
        if not mt or mt.group(1) not in KINDS:
            raise InvalidParameters(f"cannot parse catalog id {text!r}")
        kind, args = mt.group(1), mt.group(2)
        args = [a.strip() for a in args.split(",")] if args else []

        def elem(name):
            g = G.index(name)
            if g is None:
                raise InvalidParameters(f"unknown group element {name!r}")
            return g

        if kind in ("FC2_STAR", "FIELD"):
            if args:
                raise InvalidParameters(f"{kind} takes no parameters")
            return cls(kind)
        if kind == "FCP_TAU":
            if len(args) == 1:
                g = elem(args[0])
                return cls(kind, g, element_order(G, g))
            if len(args) != 2 or not args[0].isdigit():
                raise InvalidParameters("FCP_TAU takes (p, h)")
            return cls(kind, elem(args[1]), int(args[0]))
        if len(args) != 1:
            raise InvalidParameters(f"{kind} takes one group element")
        return cls(kind, elem(args[0]))


def default_order(cid):
    # FC_{p,tau}^h is defined over Q but normalization needs p-th roots of unity;
    # for p = 2 these are already rational
    if cid.kind == "FCP_TAU" and cid.p > 2:
        return cid.p
    return 1


def _check(cid, G, tau):
    if cid.kind in ("FC2_STAR", "FIELD"):
        return
    g = cid.g
    if g is None or not 0 <= g < G.order:
        raise InvalidParameters(f"{cid.kind} needs a group element")
    if cid.kind == "FC2_STAR_G":
        if element_order(G, g) != 2:
            raise InvalidParameters(f"{G.name(g)} does not have order 2")
        if tau(g) != g:
            raise InvalidParameters(f"tau({G.name(g)}) != {G.name(g)}")
    elif cid.kind == "FCP_TAU":
        p = cid.p
        if p is None or not is_prime(p):
            raise InvalidParameters(f"{p} is not prime")
        if element_order(G, g) != p:
            raise InvalidParameters(f"{G.name(g)} does not have order {p}")
        if tau(g) not in (g, G.inv(g)):
            raise InvalidParameters(f"tau({G.name(g)}) is neither {G.name(g)} nor its inverse")


def build(cid, G, tau, cyclo_order=None):
    """The catalog algebra ``cid`` over (G, tau)."""
    if not isinstance(tau, GroupInvolution):
        tau = validate_involution(G, tau)
    _check(cid, G, tau)
    e = G.identity
    kind = cid.kind
    if kind == "FIELD":
        A = make_algebra(G, tau, (e,), {(0, 0): {0: 1}}, {0: {0: 1}}, labels=("1",), check=False)
    elif kind in ("FC2_STAR", "FC2_STAR_G"):
        deg_u = e if kind == "FC2_STAR" else cid.g
        A = make_algebra(
            G,
            tau,
            (e, deg_u),
            {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: 1}},
            {0: {0: 1}, 1: {1: -1}},
            labels=("1", "u"),
            check=False,
        )
    elif kind == "FCP_TAU":
        p, h = cid.p, cid.g
        powers = [G.power(h, k) for k in range(p)]
        sign = 1 if tau(h) == h else -1
        products = {(a, b): {(a + b) % p: 1} for a in range(p) for b in range(p)}
        star = {k: {(sign * k) % p: 1} for k in range(p)}
        labels = tuple(G.name(x) for x in powers)
        A = make_algebra(G, tau, tuple(powers), products, star, default_order(cid), labels, check=False)
    else:
        g = cid.g
        a, c, b, d = 0, 1, 2, 3
        products = {
            (a, a): {a: 1},
            (c, c): {c: 1},
            (a, b): {b: 1},
            (b, c): {b: 1},
            (c, d): {d: 1},
            (d, a): {d: 1},
        }
        star = {a: {a: 1}, c: {c: 1}, b: {d: 1}, d: {b: 1}}
        A = make_algebra(
            G, tau, (e, e, g, tau(g)), products, star, labels=("a", "c", "b", "d"), check=False
        )
    if cyclo_order is not None and cyclo_order != A.cyclo_order:
        A = extend_scalars(A, lcm(cyclo_order, A.cyclo_order))
    return A


def iota_list(G, tau):
    """The exclusion list for (G, tau), structurally deduplicated, in a fixed order."""
    if not isinstance(tau, GroupInvolution):
        tau = validate_involution(G, tau)
    out = []

    def push(cid):
        A = build(cid, G, tau)
        for _, B in out:
            if structurally_equal(A, B) is not None:
                return
        out.append((cid, A))

    push(CatalogId("FC2_STAR"))
    for g in G.elements():
        push(CatalogId("M_RHO_TAU", g))
    N = G.order
    for p in range(2, N + 1):
        if N % p or not is_prime(p):
            continue
        for h in G.elements():
            if element_order(G, h) == p and tau(h) in (h, G.inv(h)):
                push(CatalogId("FCP_TAU", h, p))
    if N % 2 == 0:
        for s in G.elements():
            if element_order(G, s) == 2 and tau(s) == s:
                push(CatalogId("FC2_STAR_G", s))
    return out


def fcp_with_star(p, i, alpha, G=None, tau=None, h=None):
    """FC_p = span{h^k} with canonical grading and star h^k -> (alpha h^i)^k (unvalidated)."""
    G, tau, h = _fcp_context(p, i, G, tau, h)
    alpha = as_scalar(alpha, getattr(alpha, "order", 1))
    m = lcm(alpha.order, p if p > 2 else 1)
    alpha = alpha.lift(m)
    powers = [G.power(h, k) for k in range(p)]
    products = {(a, b): {(a + b) % p: 1} for a in range(p) for b in range(p)}
    star = {k: {(i * k) % p: alpha**k} for k in range(p)}
    return make_algebra(
        G, tau, tuple(powers), products, star, m, tuple(G.name(x) for x in powers), check=False
    )


def _fcp_context(p, i, G, tau, h):
    if G is None:
        G = cyclic_group(p)
        h = 1 if h is None else h
        tau = [(k * i) % p for k in range(p)] if tau is None else tau
    if h is None:
        raise InvalidParameters("h is required when G is given")
    if not isinstance(tau, GroupInvolution):
        tau = validate_involution(G, tau)
    return G, tau, h


def normalize_fcp_involution(p, i, alpha, G=None, tau=None, h=None):
    """Catalog form of FC_p with star g* = alpha g^i.

    Returns (CatalogId, change_of_basis) where change_of_basis[k] gives the
    coordinates, over the input basis g^0..g^{p-1}, of the image of the
    k-th catalog basis vector under a graded isomorphism catalog -> input
    that intertwines the stars.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidParameters(f"{p} is not prime")
    if (i * i - 1) % p:
        raise NotAnInvolution(f"i = {i}: i^2 is not 1 mod {p}")
    alpha = alpha if isinstance(alpha, CycScalar) else as_scalar(alpha)
    if alpha**p != 1:
        raise NotAnInvolution(f"alpha = {alpha} is not a {p}-th root of unity")
    inverting = (i + 1) % p == 0
    G, tau, h = _fcp_context(p, i, G, tau, h)
    if element_order(G, h) != p:
        raise InvalidParameters(f"{G.name(h)} does not have order {p}")
    if tau(h) != G.power(h, i):
        raise NotAnInvolution(f"tau({G.name(h)}) must equal {G.name(h)}^{i % p} for this star")
    m = lcm(alpha.order, p if p > 2 else 1)
    alpha = alpha.lift(m)
    one = CycScalar(1, m)
    if p == 2:
        cid = CatalogId("FC2_STAR_G", h) if alpha == -1 else CatalogId("FCP_TAU", h, 2)
        beta = one
    elif not inverting:
        if alpha != 1:
            raise NotAnInvolution("a degree-preserving star on FC_p with p > 2 forces alpha = 1")
        cid, beta = CatalogId("FCP_TAU", h, p), one
    else:
        # beta^2 = alpha and beta^p = 1
        beta = alpha ** ((p + 1) // 2)
        cid = CatalogId("FCP_TAU", h, p)
    zero = CycScalar(0, m)
    change = []
    for k in range(p):
        row = [zero] * p
        row[k] = beta ** (-k)
        change.append(tuple(row))
    target = build(cid, G, tau, cyclo_order=m)
    source = fcp_with_star(p, i, alpha, G, tau, h)
    if not is_isomorphism(target, source, change):
        raise NotAnInvolution("input star is not a homogeneous involution of FC_p")
    return cid, change
