"""Finite-dimensional G-graded algebras with homogeneous involution."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

from .errors import (
    BadOrder,
    InvalidAlgebra,
    MismatchedContext,
    InvalidParameters,
    NonHomogeneousGenerator,
    NotACocycle,
    NotAnIdeal,
    NotGraded,
    NotStarStable,
    StarAxiomFailure,
)
from .exactfield import CycScalar, ExactMatrix, Subspace, as_scalar, matrix_rank, rref
from .groups import FiniteGroup, GroupInvolution

__all__ = [
    "GradedStarAlgebra",
    "ValidationReport",
    "make_algebra",
    "validate",
    "direct_sum",
    "exchange_double",
    "twisted_group_algebra",
    "subalgebra_generated",
    "subalgebra_on_basis",
    "quotient_by_ideal",
    "extend_scalars",
    "structurally_equal",
    "is_isomorphism",
]


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple = ()

    def summary(self):
        if self.ok:
            return "ok"
        shown = "; ".join(f"{ax}@{list(w)}" for ax, w in self.violations[:5])
        more = "" if len(self.violations) <= 5 else f" (+{len(self.violations) - 5} more)"
        return f"{len(self.violations)} violation(s): {shown}{more}"

    def to_dict(self):
        return {"ok": self.ok, "violations": [[ax, list(w)] for ax, w in self.violations]}


@dataclass(frozen=True, eq=False)
class GradedStarAlgebra:
    """Structure-constant presentation on a homogeneous basis.

    ``structconst[(i, j)]`` is a tuple of ``(k, c)`` with b_i b_j = sum c b_k;
    row i of ``star`` holds the coordinates of star(b_i).
    """

    group: FiniteGroup
    tau: GroupInvolution
    cyclo_order: int
    basis_labels: tuple
    degree: tuple
    structconst: dict
    star: ExactMatrix
    embedding: tuple | None = None  # rows: images of basis vectors in a parent algebra
    projection: tuple | None = None  # rows: images of parent basis vectors in this algebra
    _left: tuple = field(default=None, repr=False)

    def __post_init__(self):
        d = len(self.degree)
        left = [dict() for _ in range(d)]
        for (i, j), terms in self.structconst.items():
            if terms:
                left[i][j] = terms
        object.__setattr__(self, "_left", tuple(left))

    # -- basic data -----------------------------------------------------
    @property
    def dim(self):
        return len(self.degree)

    @property
    def order(self):
        return self.cyclo_order

    def support(self):
        return frozenset(self.degree)

    def context(self):
        return (self.group, self.tau.map, self.cyclo_order)

    def same_context(self, other):
        return self.group.table == other.group.table and self.tau.map == other.tau.map

    def zero(self):
        z = CycScalar(0, self.cyclo_order)
        return (z,) * self.dim

    def basis_vector(self, i):
        v = list(self.zero())
        v[i] = CycScalar(1, self.cyclo_order)
        return tuple(v)

    def basis_of_degree(self, g):
        return [i for i, h in enumerate(self.degree) if h == g]

    def vector(self, coeffs):
        m = self.cyclo_order
        return tuple(as_scalar(c, m) for c in coeffs)

    # -- arithmetic on coordinate vectors ----------------------------------
    def mul(self, x, y):
        out = list(self.zero())
        ynz = [(j, c) for j, c in enumerate(y) if c]
        for i, a in enumerate(x):
            if not a:
                continue
            row = self._left[i]
            for j, b in ynz:
                terms = row.get(j)
                if terms:
                    ab = a * b
                    for k, c in terms:
                        out[k] = out[k] + ab * c
        return tuple(out)

    def star_of(self, x):
        out = list(self.zero())
        rows = self.star.sparse_rows()
        for i, a in enumerate(x):
            if a:
                for j, c in rows[i].items():
                    out[j] = out[j] + a * c
        return tuple(out)

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple(a - b for a, b in zip(x, y))

    def scale(self, c, x):
        return tuple(c * a for a in x)

    def commutator(self, x, y):
        return self.sub(self.mul(x, y), self.mul(y, x))

    def is_zero(self, x):
        return not any(x)

    def components(self, x):
        """Homogeneous components {degree: vector} of x (nonzero ones only)."""
        out = {}
        for i, c in enumerate(x):
            if c:
                g = self.degree[i]
                if g not in out:
                    out[g] = list(self.zero())
                out[g][i] = c
        return {g: tuple(v) for g, v in out.items()}

    def degree_of(self, x):
        """Degree of a nonzero homogeneous x; None for zero or inhomogeneous x."""
        degs = {self.degree[i] for i, c in enumerate(x) if c}
        return degs.pop() if len(degs) == 1 else None

    def star_row(self, i):
        return self.star.row(i)

    def product_vector(self, i, j):
        out = list(self.zero())
        for k, c in self.structconst.get((i, j), ()):
            out[k] = c
        return tuple(out)

    def left_matrix(self, x):
        """Matrix of y -> x y, columns indexed by basis vectors."""
        cols = [self.mul(x, self.basis_vector(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def unit(self):
        """Multiplicative identity if A is unital, else None."""
        d = self.dim
        if d == 0:
            return ()
        # solve e b_j = b_j and b_j e = b_j linearly
        rows, rhs = [], []
        for j in range(d):
            for t in range(d):
                rows.append([self.product_vector(i, j)[t] for i in range(d)])
                rhs.append(CycScalar(int(t == j), self.cyclo_order))
                rows.append([self.product_vector(j, i)[t] for i in range(d)])
                rhs.append(CycScalar(int(t == j), self.cyclo_order))
        aug = ExactMatrix([r + [b] for r, b in zip(rows, rhs)], order=self.cyclo_order)
        reduced, pivots = rref(aug)
        if d in pivots:
            return None
        out = list(self.zero())
        for r, pc in zip(reduced, pivots):
            out[pc] = r.get(d, CycScalar(0, self.cyclo_order))
        return tuple(out)

    def validate(self):
        return validate(self)

    def equal_data(self, other):
        """Exact equality of every defining datum (same basis order)."""
        return (
            self.same_context(other)
            and self.dim == other.dim
            and self.degree == other.degree
            and _sc_normal(self) == _sc_normal(other)
            and self.star == other.star
        )

    def __repr__(self):
        return f"GradedStarAlgebra(dim={self.dim}, |G|={self.group.order}, m={self.cyclo_order})"


def _sc_normal(A):
    return {key: tuple(t) for key, t in A.structconst.items() if t}


def make_algebra(
    group,
    tau,
    degrees,
    products,
    star,
    cyclo_order=1,
    labels=None,
    check=True,
    embedding=None,
    projection=None,
):
    """Assemble an algebra.

    ``products`` maps (i, j) to {k: scalar} (or an iterable of (i, j, k, c));
    ``star`` maps i to {j: scalar}, is an iterable of (i, j, c), or an
    ExactMatrix of coordinate rows.  Raises InvalidAlgebra when ``check`` fails.
    """
    m = cyclo_order
    d = len(degrees)
    if not isinstance(tau, GroupInvolution):
        tau = GroupInvolution(tuple(tau))
    sc = {}
    if isinstance(products, dict):
        items = ((i, j, k, c) for (i, j), row in products.items() for k, c in row.items())
    else:
        items = products
    for i, j, k, c in items:
        c = as_scalar(c, m)
        if c:
            sc.setdefault((i, j), {})
            sc[(i, j)][k] = sc[(i, j)].get(k, CycScalar(0, m)) + c
    structconst = {
        key: tuple((k, c) for k, c in sorted(row.items()) if c) for key, row in sorted(sc.items())
    }
    structconst = {key: t for key, t in structconst.items() if t}
    star_rows = [dict() for _ in range(d)]
    if isinstance(star, ExactMatrix):
        star_rows = [dict(r) for r in star.sparse_rows()]
    elif isinstance(star, dict):
        for i, row in star.items():
            for j, c in row.items():
                star_rows[i][j] = as_scalar(c, m)
    else:
        for i, j, c in star:
            star_rows[i][j] = star_rows[i].get(j, CycScalar(0, m)) + as_scalar(c, m)
    star_m = ExactMatrix.from_sparse(d, d, star_rows, m)
    if star_m.order != m:
        raise BadOrder(f"star entries need cyclotomic order {star_m.order}, declared {m}")
    if labels is None:
        labels = tuple(f"b{i}" for i in range(d))
    A = GradedStarAlgebra(
        group=group,
        tau=tau,
        cyclo_order=m,
        basis_labels=tuple(labels),
        degree=tuple(degrees),
        structconst=structconst,
        star=star_m,
        embedding=embedding,
        projection=projection,
    )
    if check:
        report = validate(A)
        if not report.ok:
            raise InvalidAlgebra(report)
    return A


def validate(A):
    """Exhaustively check shape, grading, associativity, star and tau-homogeneity."""
    G, tau, d = A.group, A.tau, A.dim
    out = []
    for i, g in enumerate(A.degree):
        if not 0 <= g < G.order:
            out.append(("shape", (i,)))
    if A.star.shape != (d, d):
        out.append(("shape", (d,)))
    for (i, j), terms in A.structconst.items():
        if not (0 <= i < d and 0 <= j < d) or any(not 0 <= k < d for k, _ in terms):
            out.append(("shape", (i, j)))
    if out:
        return ValidationReport(False, tuple(out))
    for (i, j), terms in sorted(A.structconst.items()):
        gij = G.mul(A.degree[i], A.degree[j])
        for k, c in terms:
            if c and A.degree[k] != gij:
                out.append(("grading", (i, j, k)))
    basis = [A.basis_vector(i) for i in range(d)]
    prods = {}
    for i in range(d):
        for j in range(d):
            prods[(i, j)] = A.product_vector(i, j)
    for i, j, k in iproduct(range(d), repeat=3):
        lhs = A.mul(prods[(i, j)], basis[k])
        rhs = A.mul(basis[i], prods[(j, k)])
        if lhs != rhs:
            out.append(("associativity", (i, j, k)))
    stars = [A.star_of(b) for b in basis]
    for i in range(d):
        if A.star_of(stars[i]) != basis[i]:
            out.append(("star_involutive", (i,)))
    for i in range(d):
        for j in range(d):
            if A.star_of(prods[(i, j)]) != A.mul(stars[j], stars[i]):
                out.append(("star_antihomomorphism", (i, j)))
    for i in range(d):
        target = tau(A.degree[i])
        for j, c in A.star.sparse_rows()[i].items():
            if c and A.degree[j] != target:
                out.append(("tau_homogeneity", (i, j)))
    return ValidationReport(not out, tuple(out))


def _check_same(A, B):
    if not A.same_context(B):
        raise MismatchedContext("algebras live over different (G, tau)")
    if A.cyclo_order != B.cyclo_order:
        raise MismatchedContext(
            f"cyclotomic orders differ ({A.cyclo_order} vs {B.cyclo_order}); extend_scalars first"
        )


def _dedupe_labels(labels):
    seen, out = set(), []
    for lab in labels:
        new = lab
        while new in seen:
            new += "'"
        seen.add(new)
        out.append(new)
    return tuple(out)


def direct_sum(A, B):
    _check_same(A, B)
    da = A.dim
    products = {}
    for (i, j), terms in A.structconst.items():
        products[(i, j)] = dict(terms)
    for (i, j), terms in B.structconst.items():
        products[(i + da, j + da)] = {k + da: c for k, c in terms}
    star = {}
    for i, row in enumerate(A.star.sparse_rows()):
        star[i] = dict(row)
    for i, row in enumerate(B.star.sparse_rows()):
        star[i + da] = {j + da: c for j, c in row.items()}
    return make_algebra(
        A.group,
        A.tau,
        A.degree + B.degree,
        products,
        star,
        A.cyclo_order,
        labels=_dedupe_labels(A.basis_labels + B.basis_labels),
        check=False,
    )


def exchange_double(B):
    """B + B^op with (a, b)(c, d) = (ac, db) and star (a, b) -> (b, a)."""
    d = B.dim
    products = {}
    for (i, j), terms in B.structconst.items():
        products[(i, j)] = dict(terms)
        # (0, b_i)(0, b_j) = (0, b_j b_i)
        products[(j + d, i + d)] = {k + d: c for k, c in terms}
    one = CycScalar(1, B.cyclo_order)
    star = {i: {i + d: one} for i in range(d)}
    star.update({i + d: {i: one} for i in range(d)})
    degrees = tuple(B.degree) + tuple(B.tau(g) for g in B.degree)
    labels = tuple(f"({x},0)" for x in B.basis_labels) + tuple(f"(0,{x})" for x in B.basis_labels)
    return make_algebra(B.group, B.tau, degrees, products, star, B.cyclo_order, labels, check=False)


def _lookup(table, key, default):
    if table is None:
        return default
    if callable(table):
        return table(*key) if isinstance(key, tuple) else table(key)
    return table.get(key, default)


def twisted_group_algebra(
    G, tau, H, sigma=None, star_root_choice=None, cyclo_order=1, grading="canonical", h_group=None
):
    """Twisted group algebra F^sigma[H] with e_a e_b = sigma(a, b) e_ab.

    With ``grading="canonical"`` H is a subgroup (element set) of G,
    deg e_h = h and e_h* = lambda(h) e_tau(h).  With ``grading="trivial"``
    H may instead be an abstract group passed as ``h_group`` (H then lists
    its elements); every e_h has degree 1 and e_h* = lambda(h) e_h.
    ``sigma`` and ``star_root_choice`` default to the constant 1.
    """
    m = cyclo_order
    K = G if h_group is None else h_group
    H = sorted(set(H), key=lambda h: (h != K.identity, h))
    pos = {h: i for i, h in enumerate(H)}
    for a in H:
        for b in H:
            if K.mul(a, b) not in pos:
                raise InvalidParameters(f"H is not closed under the product ({a}*{b})")
    one = CycScalar(1, m)

    def sig(a, b):
        return as_scalar(_lookup(sigma, (a, b), one), m)

    for a, b, c in iproduct(H, repeat=3):
        if sig(a, b) * sig(K.mul(a, b), c) != sig(b, c) * sig(a, K.mul(b, c)):
            raise NotACocycle(f"cocycle identity fails at ({a}, {b}, {c})", (a, b, c))
    products = {}
    for a in H:
        for b in H:
            products[(pos[a], pos[b])] = {pos[K.mul(a, b)]: sig(a, b)}
    canonical = grading == "canonical"
    if canonical and h_group is not None:
        raise ValueError("canonical grading needs H inside G")
    star = {}
    for h in H:
        target = tau(h) if canonical else h
        if target not in pos:
            raise StarAxiomFailure(f"tau({h}) is not in H")
        star[pos[h]] = {pos[target]: as_scalar(_lookup(star_root_choice, h, one), m)}
    degrees = tuple(h if canonical else G.identity for h in H)
    labels = tuple(K.name(h) for h in H)
    A = make_algebra(G, tau, degrees, products, star, m, labels, check=False)
    report = validate(A)
    if not report.ok:
        raise StarAxiomFailure(f"star data is not a homogeneous involution: {report.summary()}")
    return A


def subalgebra_generated(A, gens):
    """The (G,*)-subalgebra generated by homogeneous elements.

    The returned basis starts with the (independent) generators, followed
    by star images and products discovered breadth first; every basis
    vector is homogeneous.  ``embedding`` records the basis in A.
    """
    m = A.cyclo_order
    gens = [A.vector(v) for v in gens]
    for v in gens:
        if any(v) and A.degree_of(v) is None:
            raise NonHomogeneousGenerator(f"generator {[str(c) for c in v]} is not homogeneous")
    space = Subspace(A.dim, m)
    basis = []

    def push(v):
        if any(v) and space.add(v):
            basis.append(v)

    for v in gens:
        push(v)
    i = 0
    while i < len(basis):
        v = basis[i]
        push(A.star_of(v))
        for j in range(i + 1):
            w = basis[j]
            push(A.mul(v, w))
            if j != i:
                push(A.mul(w, v))
        i += 1
    # every pair (a, b) was multiplied when max(a, b) was processed
    return _restrict(A, basis, space)


def subalgebra_on_basis(A, basis):
    """The algebra structure on span(basis), which must be a (G,*)-subalgebra
    spanned by the given homogeneous vectors (kept in the given order)."""
    basis = [A.vector(v) for v in basis]
    for v in basis:
        if A.degree_of(v) is None:
            raise NonHomogeneousGenerator("basis vectors must be nonzero and homogeneous")
    space = Subspace(A.dim, A.cyclo_order)
    for v in basis:
        if not space.add(v):
            raise InvalidParameters("basis vectors are linearly dependent")
    return _restrict(A, basis, space)


def _restrict(A, basis, space):
    m = A.cyclo_order
    n = len(basis)
    products = {}
    for a in range(n):
        for b in range(n):
            coords = space.coordinates(A.mul(basis[a], basis[b]))
            if coords is None:
                raise NotAnIdeal("subspace is not closed under the product")
            products[(a, b)] = {k: c for k, c in enumerate(coords) if c}
    star = {}
    for a in range(n):
        coords = space.coordinates(A.star_of(basis[a]))
        if coords is None:
            raise NotStarStable("subspace is not closed under the star")
        star[a] = {k: c for k, c in enumerate(coords) if c}
    degrees = tuple(A.degree_of(v) for v in basis)
    labels = tuple(f"s{k}" for k in range(n))
    return make_algebra(
        A.group, A.tau, degrees, products, star, m, labels, check=False, embedding=tuple(basis)
    )


def quotient_by_ideal(A, ideal_basis):
    """A / I for a graded, star-stable two-sided ideal I.

    The complement is spanned by the first basis vectors of A that are
    independent modulo I; ``projection`` maps every basis vector of A.
    """
    m = A.cyclo_order
    ideal = Subspace(A.dim, m)
    for v in ideal_basis:
        ideal.add(A.vector(v))
    span = [A.vector(v) for v in ideal.generators]
    for v in span:
        for i in range(A.dim):
            b = A.basis_vector(i)
            if not ideal.contains(A.mul(b, v)) or not ideal.contains(A.mul(v, b)):
                raise NotAnIdeal(f"span is not a two-sided ideal (fails against basis vector {i})")
    for v in span:
        for comp in A.components(v).values():
            if not ideal.contains(comp):
                raise NotGraded("ideal is not spanned by homogeneous elements")
    for v in span:
        if not ideal.contains(A.star_of(v)):
            raise NotStarStable("ideal is not closed under the star")
    full = Subspace(A.dim, m, span)
    nI = len(full)
    comp = []
    for i in range(A.dim):
        if full.add(A.basis_vector(i)):
            comp.append(i)
    n = len(comp)

    def reduce(v):
        coords = full.coordinates(v)
        return {k: c for k, c in enumerate(coords[nI:]) if c}

    products = {}
    for a in range(n):
        for b in range(n):
            products[(a, b)] = reduce(A.product_vector(comp[a], comp[b]))
    star = {a: reduce(A.star_row(comp[a])) for a in range(n)}
    zero = CycScalar(0, m)
    projection = []
    for i in range(A.dim):
        r = reduce(A.basis_vector(i))
        projection.append(tuple(r.get(k, zero) for k in range(n)))
    return make_algebra(
        A.group,
        A.tau,
        tuple(A.degree[i] for i in comp),
        products,
        star,
        m,
        tuple(A.basis_labels[i] for i in comp),
        check=False,
        projection=tuple(projection),
    )


def extend_scalars(A, m_new):
    """Reinterpret A over Q(zeta_m_new); requires m | m_new."""
    if not isinstance(m_new, int) or m_new < 1 or m_new % A.cyclo_order:
        raise BadOrder(f"{m_new} is not a multiple of {A.cyclo_order}")
    products = {key: {k: c.lift(m_new) for k, c in terms} for key, terms in A.structconst.items()}
    star = {i: {j: c.lift(m_new) for j, c in row.items()} for i, row in enumerate(A.star.sparse_rows())}
    return make_algebra(
        A.group, A.tau, A.degree, products, star, m_new, A.basis_labels, check=False
    )


def structurally_equal(A, B):
    """Degree-preserving basis permutation carrying A's data onto B's, or None.

    Returns pi with A.b_i -> B.b_pi[i] matching structure constants and star.
    """
    if A.dim != B.dim or not A.same_context(B):
        return None
    if sorted(A.degree) != sorted(B.degree):
        return None
    d = A.dim
    m = max(A.cyclo_order, B.cyclo_order)
    if A.cyclo_order != B.cyclo_order:
        from math import lcm

        m = lcm(A.cyclo_order, B.cyclo_order)
        A, B = extend_scalars(A, m), extend_scalars(B, m)
    scA = {key: dict(t) for key, t in A.structconst.items()}
    scB = {key: dict(t) for key, t in B.structconst.items()}
    stA = A.star.sparse_rows()
    stB = B.star.sparse_rows()
    pi = [None] * d
    used = [False] * d

    def consistent(i):
        # check every datum among already-assigned indices <= i
        for j in range(i + 1):
            for a, b in ((i, j), (j, i)):
                ta = scA.get((a, b), {})
                tb = scB.get((pi[a], pi[b]), {})
                if len(ta) != len(tb):
                    return False
                for k, c in ta.items():
                    if pi[k] is None:
                        continue
                    if tb.get(pi[k]) != c:
                        return False
            for a, b in ((i, j), (j, i)):
                ca = stA[a].get(b)
                cb = stB[pi[a]].get(pi[b])
                if (ca or CycScalar(0, m)) != (cb or CycScalar(0, m)):
                    return False
        return True

    def full_check():
        for key, ta in scA.items():
            tb = scB.get((pi[key[0]], pi[key[1]]), {})
            if {pi[k]: c for k, c in ta.items()} != tb:
                return False
        return True

    def search(i):
        if i == d:
            return full_check()
        for t in range(d):
            if used[t] or B.degree[t] != A.degree[i]:
                continue
            pi[i], used[t] = t, True
            if consistent(i) and search(i + 1):
                return True
            pi[i], used[t] = None, False
        return False

    return tuple(pi) if search(0) else None


def is_isomorphism(A, B, images):
    """Check that b_i -> images[i] (coordinates in B) is a (G,*)-isomorphism A -> B."""
    if A.dim != B.dim or len(images) != A.dim:
        return False
    images = [B.vector(v) for v in images]
    if A.dim and matrix_rank(ExactMatrix(images, order=B.cyclo_order)) != A.dim:
        return False

    def phi(x):
        out = B.zero()
        for i, c in enumerate(x):
            if c:
                out = B.add(out, B.scale(c, images[i]))
        return out

    for i in range(A.dim):
        if B.degree_of(images[i]) != A.degree[i]:
            return False
        if phi(A.star_row(i)) != B.star_of(images[i]):
            return False
        for j in range(A.dim):
            if phi(A.product_vector(i, j)) != B.mul(images[i], images[j]):
                return False
    return True
