"""Finite groups as multiplication tables, group involutions, prime-element search."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product

from .errors import NotAGroup, NotAnInvolution, TrivialSubgroup

__all__ = [
    "FiniteGroup",
    "GroupInvolution",
    "make_group",
    "cyclic_group",
    "direct_product",
    "symmetric_group",
    "validate_involution",
    "identity_involution",
    "inversion_involution",
    "involutions",
    "element_order",
    "find_prime_element",
    "is_prime",
]

_NAME_RE = re.compile(r"^[A-Za-z0-9]+$")


def is_prime(n):
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _smallest_prime_factor(n):
    k = 2
    while n % k:
        k += 1
    return k


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its index multiplication table."""

    table: tuple
    identity: int
    inverse: tuple
    names: tuple
    kind: str = "table"
    n: int | None = None  # cyclic order when kind == "cyclic"
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        idx = {name: i for i, name in enumerate(self.names)}
        for i in range(len(self.table)):
            idx.setdefault(f"e{i}", i)
        object.__setattr__(self, "_index", idx)

    @property
    def order(self):
        return len(self.table)

    def elements(self):
        return range(len(self.table))

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inverse[a]

    def power(self, g, k):
        if k < 0:
            g, k = self.inverse[g], -k
        out = self.identity
        for _ in range(k):
            out = self.table[out][g]
        return out

    def name(self, g):
        return self.names[g]

    def index(self, name):
        """Resolve a degree name (its own name or the alias e<i>); None if unknown."""
        return self._index.get(str(name))

    def subgroup_generated(self, elements):
        out = {self.identity}
        frontier = list(elements)
        while frontier:
            x = frontier.pop()
            if x in out:
                continue
            out.add(x)
            for y in list(out):
                frontier.append(self.table[x][y])
                frontier.append(self.table[y][x])
        return frozenset(out)

    def to_spec(self):
        if self.kind == "cyclic":
            return {"kind": "cyclic", "n": self.n}
        return {"kind": "table", "table": [list(r) for r in self.table], "names": list(self.names)}

    def __repr__(self):
        if self.kind == "cyclic":
            return f"FiniteGroup(C{self.n})"
        return f"FiniteGroup(order={self.order}, names={list(self.names)})"


@dataclass(frozen=True)
class GroupInvolution:
    """An anti-automorphism tau of G with tau o tau = id."""

    map: tuple

    def __call__(self, g):
        return self.map[g]

    def is_identity(self):
        return all(i == g for i, g in enumerate(self.map))


def _cyclic_names(n):
    return tuple("1" if k == 0 else ("g" if k == 1 else f"g{k}") for k in range(n))


def cyclic_group(n):
    if n < 1:
        raise NotAGroup("cyclic group order must be positive")
    table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    inverse = tuple((-a) % n for a in range(n))
    return FiniteGroup(table, 0, inverse, _cyclic_names(n), kind="cyclic", n=n)


def _group_from_table(table, names=None):
    try:
        table = tuple(tuple(int(x) for x in row) for row in table)
    except (TypeError, ValueError):
        raise NotAGroup("table entries must be integers") from None
    n = len(table)
    if n == 0:
        raise NotAGroup("empty table")
    for i, row in enumerate(table):
        if len(row) != n:
            raise NotAGroup(f"row {i} has length {len(row)}, expected {n}")
        for x in row:
            if not 0 <= x < n:
                raise NotAGroup(f"entry {x} out of range in row {i}")
    ident = None
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            ident = e
            break
    if ident is None:
        raise NotAGroup("no identity element")
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                if table[ab][c] != table[a][table[b][c]]:
                    raise NotAGroup(f"associativity fails at ({a}, {b}, {c})")
    inverse = []
    for a in range(n):
        inv = [b for b in range(n) if table[a][b] == ident]
        if not inv or table[inv[0]][a] != ident:
            raise NotAGroup(f"element {a} has no inverse")
        inverse.append(inv[0])
    if names is None:
        names = tuple("1" if i == ident else f"e{i}" for i in range(n))
    else:
        names = tuple(str(x) for x in names)
        if len(names) != n or len(set(names)) != n:
            raise NotAGroup("names must be distinct, one per element")
        for x in names:
            if not _NAME_RE.match(x):
                raise NotAGroup(f"bad element name {x!r}")
    return FiniteGroup(table, ident, tuple(inverse), names)


def direct_product(G, H, names=None):
    n, k = G.order, H.order
    table = [[0] * (n * k) for _ in range(n * k)]
    for a in range(n * k):
        for b in range(n * k):
            table[a][b] = G.mul(a // k, b // k) * k + H.mul(a % k, b % k)
    return _group_from_table(table, names)


def symmetric_group(n=3):
    from itertools import permutations

    perms = list(permutations(range(n)))
    pos = {p: i for i, p in enumerate(perms)}
    # composition (p*q)(x) = p(q(x))
    table = [[pos[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms]
    return _group_from_table(table)


_SHORT = re.compile(r"^C(\d+)$")


def make_group(spec):
    """Build a validated group from a spec dict or a shorthand such as 'C4', 'C2xC2', 'S3'."""
    if isinstance(spec, FiniteGroup):
        return spec
    if isinstance(spec, str):
        s = spec.strip()
        if s.lower() in ("trivial", "1"):
            return cyclic_group(1)
        if s == "S3":
            return symmetric_group(3)
        parts = s.split("x")
        groups = []
        for part in parts:
            mt = _SHORT.match(part)
            if not mt:
                raise NotAGroup(f"unknown group shorthand {spec!r}")
            groups.append(cyclic_group(int(mt.group(1))))
        G = groups[0]
        for H in groups[1:]:
            G = direct_product(G, H)
        return G
    if not isinstance(spec, dict):
        raise NotAGroup("group spec must be an object")
    kind = spec.get("kind")
    if kind == "cyclic":
        n = spec.get("n")
        if not isinstance(n, int) or n < 1:
            raise NotAGroup("cyclic group needs a positive integer n")
        return cyclic_group(n)
    if kind == "table":
        if "table" not in spec:
            raise NotAGroup("table group needs a table")
        return _group_from_table(spec["table"], spec.get("names"))
    raise NotAGroup(f"unknown group kind {kind!r}")


def validate_involution(G, tau_map):
    """Check tau o tau = id and tau(gh) = tau(h) tau(g) on all pairs."""
    if isinstance(tau_map, GroupInvolution):
        tau_map = tau_map.map
    tau = tuple(int(x) for x in tau_map)
    n = G.order
    if len(tau) != n or sorted(tau) != list(range(n)):
        raise NotAnInvolution("tau must be a permutation of the group elements")
    for g in range(n):
        if tau[tau[g]] != g:
            raise NotAnInvolution(f"tau(tau({G.name(g)})) != {G.name(g)}", (g,))
    for g in range(n):
        for h in range(n):
            if tau[G.mul(g, h)] != G.mul(tau[h], tau[g]):
                raise NotAnInvolution(
                    f"tau({G.name(g)}*{G.name(h)}) != tau({G.name(h)})*tau({G.name(g)})", (g, h)
                )
    return GroupInvolution(tau)


def identity_involution(G):
    return validate_involution(G, range(G.order))


def inversion_involution(G):
    return validate_involution(G, G.inverse)


def element_order(G, g):
    k, x = 1, g
    while x != G.identity:
        x = G.mul(x, g)
        k += 1
    return k


def _generating_set(G):
    gens, span = [], frozenset([G.identity])
    for g in G.elements():
        if g not in span:
            gens.append(g)
            span = G.subgroup_generated(gens)
    return gens


def _extend_hom(G, gens, images):
    """Extend gens -> images to a map on G, or None if it is not a well-defined bijective hom."""
    phi = {G.identity: G.identity}
    frontier = [G.identity]
    while frontier:
        x = frontier.pop()
        for s, t in zip(gens, images):
            y, fy = G.mul(x, s), G.mul(phi[x], t)
            if y in phi:
                if phi[y] != fy:
                    return None
            else:
                phi[y] = fy
                frontier.append(y)
    if len(set(phi.values())) != G.order:
        return None
    for a in G.elements():
        for b in G.elements():
            if phi[G.mul(a, b)] != G.mul(phi[a], phi[b]):
                return None
    return tuple(phi[g] for g in G.elements())


def involutions(G):
    """All group involutions of G, in lexicographic order of their maps.

    tau is an involution iff tau(g) = alpha(g)^-1 for an automorphism alpha
    with alpha^2 = id, so we enumerate automorphisms on a generating set.
    """
    gens = _generating_set(G)
    orders = {g: element_order(G, g) for g in G.elements()}
    choices = [[h for h in G.elements() if orders[h] == orders[g]] for g in gens]
    out = set()
    for images in product(*choices):
        alpha = _extend_hom(G, gens, images)
        if alpha is None or any(alpha[alpha[g]] != g for g in G.elements()):
            continue
        out.add(tuple(G.inv(alpha[g]) for g in G.elements()))
    return [validate_involution(G, t) for t in sorted(out)]


def find_prime_element(G, tau, H=None):
    """Prime-order g in H with tau(g) in {g, g^-1}.

    For each nontrivial h (index order) take y = h when h tau(h) = 1 and
    y = h tau(h) otherwise; then g is the power of y of smallest prime order.
    Among all candidates the smallest prime wins, ties broken by scan order.
    """
    if isinstance(tau, GroupInvolution):
        tau = tau.map
    H = sorted(set(G.elements()) if H is None else set(H))
    nontrivial = [h for h in H if h != G.identity]
    if not nontrivial:
        raise TrivialSubgroup("subgroup is trivial")
    best = None
    for h in nontrivial:
        ht = G.mul(h, tau[h])
        y = h if ht == G.identity else ht
        n = element_order(G, y)
        p = _smallest_prime_factor(n)
        g = G.power(y, n // p)
        if best is None or p < best[1]:
            best = (g, p)
    g, p = best
    kind = "tau_fixed" if tau[g] == g else "tau_inverting"
    assert kind == "tau_fixed" or tau[g] == G.inv(g)
    return g, p, kind
