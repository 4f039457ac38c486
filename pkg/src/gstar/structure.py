"""Jacobson radical, radical powers, semisimple quotient and idempotents."""

from __future__ import annotations

import cmath
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from .algebra import extend_scalars, quotient_by_ideal
from .errors import InternalInconsistency, InvalidParameters, NonSplit
from .exactfield import CycScalar, ExactMatrix, Subspace, euler_phi, nullspace_basis, rref

__all__ = [
    "WMProfile",
    "RadicalChain",
    "jacobson_radical",
    "radical_powers",
    "semisimple_quotient",
    "wm_profile",
    "split_idempotents",
    "lift_idempotents",
    "lift_unit",
    "preimage",
    "homogeneous_basis",
    "field_roots",
    "root_order_hint",
]


def homogeneous_basis(A, vectors):
    """Canonical homogeneous basis (RREF per degree, degrees ascending) of a graded span.

    Raises InternalInconsistency if the span is not graded.
    """
    vectors = [v for v in vectors if any(v)]
    space = Subspace(A.dim, A.cyclo_order, vectors)
    by_degree = {}
    for v in vectors:
        for g, comp in A.components(v).items():
            if not space.contains(comp):
                raise InternalInconsistency("span is not graded")
            by_degree.setdefault(g, []).append(comp)
    out = []
    for g in sorted(by_degree):
        reduced, _ = rref(ExactMatrix(by_degree[g], ncols=A.dim, order=A.cyclo_order))
        zero = CycScalar(0, A.cyclo_order)
        out.extend(tuple(r.get(j, zero) for j in range(A.dim)) for r in reduced)
    return out


def _left_traces(A):
    # t_k = trace of left multiplication by b_k
    m = A.cyclo_order
    t = [CycScalar(0, m) for _ in range(A.dim)]
    for (i, j), terms in A.structconst.items():
        for k, c in terms:
            if k == j:
                t[i] = t[i] + c
    return t


def jacobson_radical(A):
    """Homogeneous basis of J(A) = {x : Tr(L_{xa}) = 0 for all a}.

    Valid in characteristic zero, unital or not.  The result is checked to
    be graded and star-stable.
    """
    d = A.dim
    if d == 0:
        return []
    t = _left_traces(A)
    m = A.cyclo_order
    zero = CycScalar(0, m)
    # gram[i][j] = Tr(L_{b_i b_j}); J is the left kernel
    gram = [[zero] * d for _ in range(d)]
    for (i, j), terms in A.structconst.items():
        acc = zero
        for k, c in terms:
            if t[k]:
                acc = acc + c * t[k]
        gram[i][j] = acc
    gram_t = ExactMatrix([[gram[i][j] for i in range(d)] for j in range(d)], order=m)
    kernel = nullspace_basis(gram_t)
    basis = homogeneous_basis(A, kernel)
    space = Subspace(d, m, basis)
    for v in basis:
        if not space.contains(A.star_of(v)):
            raise InternalInconsistency("computed radical is not star-stable")
    return basis


@dataclass(frozen=True)
class RadicalChain:
    powers: tuple  # powers[k] is a basis of J^(k+1); the final zero power is omitted
    s: int  # nilpotency index: J^s = 0, J^(s-1) != 0, with J^0 = A


def _product_span(A, X, Y):
    return [A.mul(x, y) for x in X for y in Y]


def radical_powers(A, J=None):
    if J is None:
        J = jacobson_radical(A)
    powers = []
    cur = list(J)
    while cur:
        powers.append(tuple(cur))
        nxt = homogeneous_basis(A, _product_span(A, cur, J))
        if len(nxt) >= len(cur):
            raise InternalInconsistency("radical is not nilpotent")
        cur = nxt
    return RadicalChain(tuple(powers), len(powers) + 1)


def semisimple_quotient(A, J=None):
    if J is None:
        J = jacobson_radical(A)
    return quotient_by_ideal(A, J)


def _complement_indices(S):
    """Indices of A's basis vectors that became S's basis (see quotient_by_ideal)."""
    out = []
    for a in range(S.dim):
        target = S.basis_vector(a)
        for i, row in enumerate(S.projection):
            if tuple(row) == target:
                out.append(i)
                break
    return out


def preimage(A, S, x):
    """A vector of A mapping to x in the quotient S (supported on the complement basis)."""
    idx = _complement_indices(S)
    out = list(A.zero())
    for a, c in enumerate(x):
        if c:
            out[idx[a]] = c
    return tuple(out)


def _polish(A, y, limit=64):
    # x -> 3x^2 - 2x^3 converges to an idempotent lifting an idempotent image
    for _ in range(limit):
        y2 = A.mul(y, y)
        if y2 == y:
            return y
        y3 = A.mul(y2, y)
        y = A.sub(A.scale(3, y2), A.scale(2, y3))
    raise InternalInconsistency("idempotent lifting did not converge")


def _symmetric_degree_one(A, y):
    e = A.group.identity
    comp = A.components(y).get(e, A.zero())
    half = Fraction(1, 2)
    return A.scale(half, A.add(comp, A.star_of(comp)))


def lift_unit(A, J=None, S=None):
    """Idempotent e of degree 1 with e* = e lifting the unit of A/J (0 if A = J)."""
    if J is None:
        J = jacobson_radical(A)
    if S is None:
        S = quotient_by_ideal(A, J)
    if S.dim == 0:
        return A.zero()
    u = S.unit()
    if u is None:
        raise InternalInconsistency("semisimple quotient has no unit")
    y = _symmetric_degree_one(A, preimage(A, S, u))
    return _polish(A, y)


def lift_idempotents(A, J, ss_idempotents, S=None):
    """Orthogonal idempotents of A reducing to the given ones of A/J.

    Each is lifted inside the corner (1 - f) A (1 - f) left free by the
    previously lifted ones (f their sum).  Degree-1 star-fixed inputs give
    degree-1 star-fixed lifts.
    """
    if S is None:
        S = quotient_by_ideal(A, J)
    lifted = []
    f = A.zero()
    for ebar in ss_idempotents:
        ebar = S.vector(ebar)
        y = preimage(A, S, ebar)
        if S.degree_of(ebar) == S.group.identity and S.star_of(ebar) == ebar:
            y = _symmetric_degree_one(A, y)
        fy, yf = A.mul(f, y), A.mul(y, f)
        y = A.add(A.sub(A.sub(y, fy), yf), A.mul(fy, f))
        e = _polish(A, y)
        lifted.append(e)
        f = A.add(f, e)
    return lifted


def _eae_condition(A, J, e):
    """[eAe, eAe] inside (eJe)^2."""
    d = A.dim
    corner = [A.mul(A.mul(e, A.basis_vector(i)), e) for i in range(d)]
    cspace = Subspace(d, A.cyclo_order)
    cbasis = [v for v in corner if cspace.add(v)]
    ej = Subspace(d, A.cyclo_order)
    ejbasis = [v for v in (A.mul(A.mul(e, j), e) for j in J) if ej.add(v)]
    sq = Subspace(d, A.cyclo_order, _product_span(A, ejbasis, ejbasis))
    for a in range(len(cbasis)):
        for b in range(a + 1, len(cbasis)):
            if not sq.contains(A.commutator(cbasis[a], cbasis[b])):
                return False
    return True


@dataclass(frozen=True)
class WMProfile:
    radical_basis: tuple
    powers: tuple
    nilpotency_index: int
    ss_dim: int
    ss_commutative: bool
    ss_support_trivial: bool
    ss_star_trivial: bool
    offdiag_in_Jsq: bool
    m: int | None = None
    unit_lift: tuple = field(default=None, repr=False)

    @property
    def s(self):
        return self.nilpotency_index

    def to_dict(self):
        return {
            "dim_J": len(self.radical_basis),
            "s": self.nilpotency_index,
            "ss_dim": self.ss_dim,
            "ss_commutative": self.ss_commutative,
            "ss_support_trivial": self.ss_support_trivial,
            "ss_star_trivial": self.ss_star_trivial,
            "offdiag_in_Jsq": self.offdiag_in_Jsq,
            "m": self.m,
        }


def wm_profile(A):
    """Radical data plus the three growth predicates.

    offdiag_in_Jsq is evaluated on the corner eAe, e a lift of the unit of
    A/J: [eAe, eAe] in (eJe)^2.  For unital A this is [A, A] in J^2.
    """
    J = jacobson_radical(A)
    chain = radical_powers(A, J)
    Jspace = Subspace(A.dim, A.cyclo_order, J)
    basis = [A.basis_vector(i) for i in range(A.dim)]
    comm = all(
        Jspace.contains(A.commutator(basis[i], basis[j]))
        for i in range(A.dim)
        for j in range(i + 1, A.dim)
    )
    supp = all(Jspace.contains(basis[i]) for i in range(A.dim) if A.degree[i] != A.group.identity)
    star = all(Jspace.contains(A.sub(A.star_of(b), b)) for b in basis)
    S = quotient_by_ideal(A, J)
    e = lift_unit(A, J, S)
    offdiag = comm and _eae_condition(A, J, e)
    return WMProfile(
        radical_basis=tuple(J),
        powers=chain.powers,
        nilpotency_index=chain.s,
        ss_dim=A.dim - len(J),
        ss_commutative=comm,
        ss_support_trivial=supp,
        ss_star_trivial=star,
        offdiag_in_Jsq=offdiag,
        m=(A.dim - len(J)) if comm else None,
        unit_lift=e,
    )


# ---------------------------------------------------------------------------
# splitting a commutative semisimple algebra into primitive idempotents
# ---------------------------------------------------------------------------


def _min_poly(S, x, unit):
    """Monic minimal polynomial of x (coefficients low degree first)."""
    space = Subspace(S.dim, S.cyclo_order)
    space.add(unit)
    power = unit
    for k in range(1, S.dim + 1):
        power = S.mul(power, x)
        coords = space.coordinates(power)
        if coords is not None:
            return [-c for c in coords] + [CycScalar(1, S.cyclo_order)]
        space.add(power)
    raise InternalInconsistency("minimal polynomial degree exceeds dimension")


def _embed(c, j):
    # complex image of c under zeta_m -> exp(2 pi i j / m)
    w = cmath.exp(2j * cmath.pi * j / c.order)
    return sum(float(Fraction(a, c.den)) * w**k for k, a in enumerate(c.num))


def _embeddings(m):
    # one embedding from each complex-conjugate pair
    reps = [j for j in range(1, m + 1) if gcd(j, m) == 1 and (j <= m - j or m <= 2)]
    return reps[: max(1, euler_phi(m) // 2)]


def _candidate_roots(poly, m):
    """Exact roots of poly (coefficients in Q(zeta_m)) found by rounding numerical roots."""
    phi = euler_phi(m)
    embs = _embeddings(m)
    numeric = [np.roots([_embed(c, j) for c in reversed(poly)]) for j in embs]
    found = []
    # powers of zeta under each embedding, split into real equations
    rows = []
    for j in embs:
        w = cmath.exp(2j * cmath.pi * j / m)
        rows.append([w**k for k in range(phi)])

    def solve(values):
        eqs, rhs = [], []
        for r, v in zip(rows, values):
            eqs.append([z.real for z in r])
            rhs.append(v.real)
            if phi > 1:
                eqs.append([z.imag for z in r])
                rhs.append(v.imag)
        q, *_ = np.linalg.lstsq(np.array(eqs), np.array(rhs), rcond=None)
        return q

    def choices(level):
        if level == len(embs):
            yield []
            return
        for r in numeric[level]:
            for rest in choices(level + 1):
                yield [r] + rest

    for first in numeric[0]:
        for rest in (choices(1) if len(embs) > 1 else [[]]):
            q = solve([first] + rest)
            cand = CycScalar.from_coeffs(
                [Fraction(float(v)).limit_denominator(10**6) for v in q], m
            )
            val = CycScalar(0, m)
            for c in reversed(poly):
                val = val * cand + c
            if not val and cand not in found:
                found.append(cand)
                break
    return found


def field_roots(poly, m):
    """Roots in Q(zeta_m) of a polynomial with coefficients in Q(zeta_m) (low degree first)."""
    poly = [c if isinstance(c, CycScalar) else CycScalar(c, m) for c in poly]
    while len(poly) > 1 and not poly[-1]:
        poly.pop()
    if len(poly) < 2:
        return []
    roots = _candidate_roots([c.lift(m) for c in poly], m)
    return sorted(roots, key=lambda r: tuple(r.coeffs))


def root_order_hint(poly, m, limit=24):
    """Smallest multiple m' of m (phi(m') <= 8) over which poly has a root, or None."""
    for k in range(2, limit + 1):
        if euler_phi(m * k) <= 8 and field_roots(poly, m * k):
            return m * k
    return None


def _try_split(S):
    d = S.dim
    m = S.cyclo_order
    unit = S.unit()
    rng = random.Random(0)
    patterns = [[k + 1 for k in range(d)], [(k + 1) ** 2 for k in range(d)]]
    patterns += [[rng.randint(-6, 6) for _ in range(d)] for _ in range(30)]
    for coeffs in patterns:
        x = S.vector(coeffs)
        poly = _min_poly(S, x, unit)
        if len(poly) - 1 < d:
            continue
        roots = _candidate_roots(poly, m)
        if len(roots) < d:
            return None
        roots.sort(key=lambda r: tuple(r.coeffs))
        idems = []
        for i, r in enumerate(roots):
            e = unit
            for k, s in enumerate(roots):
                if k != i:
                    e = S.scale((r - s).inverse(), S.mul(e, S.sub(x, S.scale(s, unit))))
            idems.append(e)
        return idems
    return None


def split_idempotents(S):
    """Primitive orthogonal idempotents of a commutative semisimple S over Q(zeta_m).

    Roots of the minimal polynomial of a generic element are located
    numerically and confirmed exactly; the idempotents are the Lagrange
    interpolants.  Raises NonSplit (with a suggested larger order) when S
    does not split into 1-dimensional pieces over the declared field.
    """
    d = S.dim
    if d == 0:
        return []
    basis = [S.basis_vector(i) for i in range(d)]
    if any(S.commutator(basis[i], basis[j]) != S.zero() for i in range(d) for j in range(i)):
        raise InvalidParameters("split_idempotents needs a commutative algebra")
    if jacobson_radical(S):
        raise InvalidParameters("split_idempotents needs a semisimple algebra")
    idems = _try_split(S)
    if idems is not None:
        _check_idempotents(S, idems)
        return idems
    m = S.cyclo_order
    suggestion = None
    for k in range(2, 25):
        m2 = m * k
        if euler_phi(m2) > 8:
            continue
        if _try_split(extend_scalars(S, m2)) is not None:
            suggestion = m2
            break
    hint = f"; try extend_scalars to order {suggestion}" if suggestion else ""
    raise NonSplit(f"algebra does not split over Q(zeta_{m}){hint}", suggestion)


def _check_idempotents(S, idems):
    total = S.zero()
    for i, e in enumerate(idems):
        if S.mul(e, e) != e:
            raise InternalInconsistency("split element is not idempotent")
        for f in idems[:i]:
            if any(S.mul(e, f)):
                raise InternalInconsistency("split idempotents are not orthogonal")
        total = S.add(total, e)
    if total != S.unit():
        raise InternalInconsistency("split idempotents do not sum to the unit")
