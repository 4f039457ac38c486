"""Multilinear monomial spaces, evaluation matrices, codimensions and containment.

P_n^# splits as a direct sum over the degree tuple (g_1, ..., g_n) carried
by the variables, and the identities split the same way, so every rank is
computed block by block.  Renaming variables permutes blocks, hence only
sorted degree tuples are evaluated and their ranks are weighted by the
number of arrangements.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product
from math import comb, factorial, lcm

from .algebra import extend_scalars
from .errors import ContextMismatch, InternalInconsistency, SizeLimit
from .exactfield import CycScalar, ExactMatrix, euler_phi, nullspace_basis, sparse_rank
from .identities import GStarPolynomial, Letter

__all__ = [
    "Flavor",
    "CodimReport",
    "Containment",
    "DEFAULT_MAX_MONOMIALS",
    "max_monomials",
    "monomial_count",
    "monomial_basis",
    "evaluation_matrix",
    "codimension",
    "codim_report",
    "contains_at_degree",
    "polynomial_bound",
]

DEFAULT_MAX_MONOMIALS = 200_000


class Flavor(str, Enum):
    ORDINARY = "ORDINARY"
    STAR = "STAR"
    GRADED = "GRADED"
    GSTAR = "GSTAR"

    @property
    def graded(self):
        return self in (Flavor.GRADED, Flavor.GSTAR)

    @property
    def starred(self):
        return self in (Flavor.STAR, Flavor.GSTAR)


def max_monomials(cap=None):
    if cap is not None:
        return int(cap)
    env = os.environ.get("GSTAR_MAX_MONOMIALS")
    return int(env) if env else DEFAULT_MAX_MONOMIALS


def monomial_count(n, flavor, group_order):
    flavor = Flavor(flavor)
    count = factorial(n)
    if flavor.starred:
        count *= 2**n
    if flavor.graded:
        count *= group_order**n
    return count


def _check_cap(n, flavor, group_order, cap):
    if n < 1:
        raise ValueError("n must be at least 1")
    count = monomial_count(n, flavor, group_order)
    limit = max_monomials(cap)
    if count > limit:
        raise SizeLimit(f"monomial space has {count} elements, above the cap {limit}")
    return count


def _block_rows(n, starred):
    """Monomials of one degree block as (vars, stars) in canonical order."""
    stars = list(product((False, True), repeat=n)) if starred else [(False,) * n]
    rows = [(perm, st) for perm in permutations(range(n)) for st in stars]
    return rows


def monomial_basis(n, flavor, G, cap=None):
    """Multilinear monomials as words of Letters, ordered by (vars, degrees, stars).

    Non-graded flavors use degree None on every letter.
    """
    flavor = Flavor(flavor)
    _check_cap(n, flavor, G.order, cap)
    degs = list(product(range(G.order), repeat=n)) if flavor.graded else [(None,) * n]
    stars = list(product((False, True), repeat=n)) if flavor.starred else [(False,) * n]
    out = []
    for perm in permutations(range(1, n + 1)):
        for dg in degs:
            for st in stars:
                out.append(tuple(Letter(perm[k], dg[k], st[k]) for k in range(n)))
    return out


# ---------------------------------------------------------------------------
# evaluation kernel
# ---------------------------------------------------------------------------


class _Kernel:
    """Plain-python multiplication data for fast sparse evaluation."""

    def __init__(self, A):
        self.order = A.cyclo_order
        rational = euler_phi(self.order) == 1

        def conv(c):
            if not rational:
                return c
            q = Fraction(c.num[0], c.den)
            return q.numerator if q.denominator == 1 else q

        self.dim = A.dim
        self.left = [dict() for _ in range(A.dim)]
        for (i, j), terms in A.structconst.items():
            self.left[i][j] = tuple((k, conv(c)) for k, c in terms)
        self.basis = [{i: 1} for i in range(A.dim)]
        self.stars = [{j: conv(c) for j, c in row.items()} for row in A.star.sparse_rows()]
        self.by_degree = {}
        for i, g in enumerate(A.degree):
            self.by_degree.setdefault(g, []).append(i)
        self.support = sorted(self.by_degree)

    def mul(self, x, y):
        out = {}
        left = self.left
        for i, a in x.items():
            row = left[i]
            for j, b in y.items():
                terms = row.get(j)
                if terms:
                    ab = a * b
                    for k, c in terms:
                        out[k] = out.get(k, 0) + ab * c
        return {k: v for k, v in out.items() if v}

    def candidates(self, degs):
        if degs is None:
            return None
        return [self.by_degree.get(g, []) for g in degs]


def _block_vectors(kernel, cands, n, starred):
    """Column vectors (one per substitution tuple and output coordinate) over block rows."""
    rows = _block_rows(n, starred)
    index = {r: k for k, r in enumerate(rows)}
    if cands is None:
        cands = [list(range(kernel.dim))] * n
    if any(not c for c in cands):
        return [], len(rows)
    star_opts = (False, True) if starred else (False,)
    vectors = []
    for tup in product(*cands):
        vals = [(kernel.basis[b], kernel.stars[b]) for b in tup]
        acc = {}

        def dfs(prefix, used, vars_, stars_):
            if len(vars_) == n:
                r = index[(tuple(vars_), tuple(stars_))]
                for k, c in prefix.items():
                    acc.setdefault(k, {})[r] = c
                return
            for v in range(n):
                if used >> v & 1:
                    continue
                for s in star_opts:
                    elt = vals[v][1 if s else 0]
                    new = elt if prefix is None else kernel.mul(prefix, elt)
                    if new:
                        vars_.append(v)
                        stars_.append(s)
                        dfs(new, used | (1 << v), vars_, stars_)
                        vars_.pop()
                        stars_.pop()

        dfs(None, 0, [], [])
        for k in sorted(acc):
            vectors.append(acc[k])
    return vectors, len(rows)


def _blocks(supports, n, graded):
    """(degree tuple or None, multiplicity) in lexicographic order of sorted tuples."""
    if not graded:
        return [(None, 1)]
    out = []
    for degs in combinations_with_replacement(sorted(supports), n):
        mult = factorial(n)
        for g in set(degs):
            mult //= factorial(degs.count(g))
        out.append((degs, mult))
    return out


_WORKER = {}


def _init_worker(kernels):
    _WORKER["kernels"] = kernels


def _rank_task(args):
    degs, n, starred = args
    kernel = _WORKER["kernels"][0]
    vecs, _ = _block_vectors(kernel, kernel.candidates(degs), n, starred)
    return sparse_rank(vecs, kernel.order)


def _pair_task(args):
    degs, n = args
    ka, kq = _WORKER["kernels"]
    va, _ = _block_vectors(ka, ka.candidates(degs), n, True)
    vq, _ = _block_vectors(kq, kq.candidates(degs), n, True)
    ra = sparse_rank(va, ka.order)
    if not vq:
        return ra, ra
    return ra, sparse_rank(va + vq, ka.order)


def _run(task, items, kernels, jobs):
    if jobs and jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(
            max_workers=jobs, initializer=_init_worker, initargs=(kernels,)
        ) as ex:
            return list(ex.map(task, items))
    _init_worker(kernels)
    return [task(it) for it in items]


def codimension(A, n, flavor=Flavor.GSTAR, jobs=1, cap=None):
    """Rank of the evaluation matrix: dim P_n / (P_n cap Id(A)) for the flavor."""
    flavor = Flavor(flavor)
    _check_cap(n, flavor, A.group.order, cap)
    if A.dim == 0:
        return 0
    kernel = _Kernel(A)
    blocks = _blocks(kernel.support, n, flavor.graded)
    ranks = _run(_rank_task, [(degs, n, flavor.starred) for degs, _ in blocks], (kernel,), jobs)
    return sum(r * mult for r, (_, mult) in zip(ranks, blocks))


def evaluation_matrix(A, n, flavor=Flavor.GSTAR, cap=None):
    """Rows: monomial_basis order; columns: (degree tuple, substitution tuple, output coordinate)."""
    flavor = Flavor(flavor)
    mons = monomial_basis(n, flavor, A.group, cap)
    row_of = {
        (tuple(l.var - 1 for l in w), tuple(l.degree for l in w), tuple(l.star for l in w)): i
        for i, w in enumerate(mons)
    }
    kernel = _Kernel(A)
    block_rows = _block_rows(n, flavor.starred)
    degs_list = list(product(range(A.group.order), repeat=n)) if flavor.graded else [None]

    def columns():
        for degs in degs_list:
            vecs, _ = _block_vectors(kernel, kernel.candidates(degs), n, flavor.starred)
            for vec in vecs:
                col = {}
                for r, c in vec.items():
                    vars_, stars_ = block_rows[r]
                    dword = tuple(degs[v] for v in vars_) if degs else (None,) * n
                    col[row_of[(vars_, dword, stars_)]] = c
                yield col

    return ExactMatrix.from_columns(columns(), len(mons), A.cyclo_order)


@dataclass(frozen=True)
class CodimReport:
    n: int
    c_n: int
    c_n_G: int
    c_n_star: int
    c_n_sharp: int
    inequalities_ok: bool

    def to_dict(self):
        return {
            "n": self.n,
            "c_n": self.c_n,
            "c_n_G": self.c_n_G,
            "c_n_star": self.c_n_star,
            "c_n_sharp": self.c_n_sharp,
            "inequalities_ok": self.inequalities_ok,
        }


def codim_report(A, n, jobs=1, cap=None):
    """All four codimensions at n plus the comparison chain between them."""
    c = codimension(A, n, Flavor.ORDINARY, jobs, cap)
    cs = codimension(A, n, Flavor.STAR, jobs, cap)
    cg = codimension(A, n, Flavor.GRADED, jobs, cap)
    csh = codimension(A, n, Flavor.GSTAR, jobs, cap)
    ok = c <= cs <= csh and c <= cg <= csh and csh <= 2**n * A.group.order**n * c
    if not ok:
        raise InternalInconsistency(
            f"codimension chain violated at n={n}: c={c}, c*={cs}, cG={cg}, c#={csh}"
        )
    return CodimReport(n, c, cg, cs, csh, ok)


@dataclass(frozen=True)
class Containment:
    contained: bool
    n: int
    separator: GStarPolynomial | None = None

    def to_dict(self):
        if self.contained:
            return {"result": "Contained", "n": self.n}
        return {"result": "SeparatedBy", "n": self.n, "polynomial": str(self.separator)}


def _same_order(A, Q):
    m = lcm(A.cyclo_order, Q.cyclo_order)
    if A.cyclo_order != m:
        A = extend_scalars(A, m)
    if Q.cyclo_order != m:
        Q = extend_scalars(Q, m)
    return A, Q


def contains_at_degree(A, Q, n, jobs=1, cap=None):
    """Is every multilinear (G,*)-identity of A of degree n an identity of Q?

    Returns Containment; when not contained, ``separator`` is an identity
    of A that fails on Q, taken as the first kernel vector (in monomial
    order) of the first failing degree block, scaled to leading coefficient 1.
    """
    if A.group.table != Q.group.table or A.tau.map != Q.tau.map:
        raise ContextMismatch("algebras live over different (G, tau)")
    _check_cap(n, Flavor.GSTAR, A.group.order, cap)
    A, Q = _same_order(A, Q)
    ka, kq = _Kernel(A), _Kernel(Q)
    blocks = _blocks(sorted(set(ka.support) | set(kq.support)), n, True)
    # blocks outside supp(Q) cannot separate
    items = [(degs, n) for degs, _ in blocks if all(g in kq.by_degree for g in degs)]
    results = _run(_pair_task, items, (ka, kq), jobs)
    for (degs, _), (ra, raq) in zip(items, results):
        if raq == ra:
            continue
        return Containment(False, n, _separator(A, ka, kq, degs, n))
    return Containment(True, n)


def _separator(A, ka, kq, degs, n):
    m = A.cyclo_order
    va, nrows = _block_vectors(ka, ka.candidates(degs), n, True)
    vq, _ = _block_vectors(kq, kq.candidates(degs), n, True)
    if va:
        kernel = nullspace_basis(ExactMatrix.from_sparse(len(va), nrows, va, m))
    else:
        one, zero = CycScalar(1, m), CycScalar(0, m)
        kernel = [tuple(one if j == i else zero for j in range(nrows)) for i in range(nrows)]
    for f in kernel:
        if any(sum((f[r] * c for r, c in v.items()), CycScalar(0, m)) for v in vq):
            lead = next(c for c in f if c)
            rows = _block_rows(n, True)
            terms = {}
            for r, c in enumerate(f):
                if c:
                    vars_, stars_ = rows[r]
                    word = tuple(Letter(v + 1, degs[v], s) for v, s in zip(vars_, stars_))
                    terms[word] = c / lead
            return GStarPolynomial(A.group, A.tau, terms, m)
    raise InternalInconsistency("rank test reported a separation but none was found")


def polynomial_bound(n, dimA, m, dimJ, s):
    """dim A * m * sum_{k < s} C(n, k) dim(J)^k."""
    if min(n, dimA, m, dimJ) < 0 or s < 1:
        raise ValueError("arguments must be non-negative and s >= 1")
    return dimA * m * sum(comb(n, k) * dimJ**k for k in range(s))
