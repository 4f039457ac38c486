"""Shared builders and independent oracles for the test suite."""

import itertools
import random
from fractions import Fraction

import sympy

from gstar.algebra import (
    direct_sum,
    exchange_double,
    make_algebra,
    quotient_by_ideal,
    subalgebra_generated,
    twisted_group_algebra,
    validate,
)
from gstar.groups import identity_involution, involutions, make_group
from gstar.structure import jacobson_radical, radical_powers

GROUPS = ["C2", "C3", "C4", "C2xC2", "S3"]


def all_contexts(names=GROUPS):
    for name in names:
        G = make_group(name)
        for tau in involutions(G):
            yield name, G, tau


# ---------------------------------------------------------------------------
# matrix unit algebras
# ---------------------------------------------------------------------------


def matrix_units(G, tau, k, gdeg, involution="reflection", upper=False, check=True):
    """Span of e_ij (i <= j if upper) with elementary grading deg e_ij = g_i^-1 g_j."""
    pairs = [(i, j) for i in range(k) for j in range(k) if not upper or i <= j]
    pos = {p: n for n, p in enumerate(pairs)}
    degrees = tuple(G.mul(G.inv(gdeg[i]), gdeg[j]) for i, j in pairs)
    products = {}
    for (i, j), (j2, l) in itertools.product(pairs, pairs):
        if j == j2:
            products[(pos[(i, j)], pos[(j2, l)])] = {pos[(i, l)]: 1}
    star = {}
    for (i, j) in pairs:
        if involution == "reflection":
            img = (k - 1 - j, k - 1 - i)
        else:
            img = (j, i)
        star[pos[(i, j)]] = {pos[img]: 1}
    labels = tuple(f"e{i + 1}{j + 1}" for i, j in pairs)
    return make_algebra(G, tau, degrees, products, star, labels=labels, check=check)


def truncated_poly(G, tau, s):
    """F[j]/(j^s): unit plus nilpotent j, trivial grading and star."""
    e = G.identity
    products = {}
    for a in range(s):
        for b in range(s):
            if a + b < s:
                products[(a, b)] = {a + b: 1}
    star = {a: {a: 1} for a in range(s)}
    return make_algebra(G, tau, (e,) * s, products, star, labels=tuple(f"j{a}" for a in range(s)))


def field_power(G, tau, m):
    """F^m with componentwise star and trivial grading."""
    e = G.identity
    return make_algebra(
        G, tau, (e,) * m, {(i, i): {i: 1} for i in range(m)}, {i: {i: 1} for i in range(m)}
    )


# ---------------------------------------------------------------------------
# random validated algebras
# ---------------------------------------------------------------------------


def _random_matrix_algebra(rng, G, tau):
    k = rng.choice([2, 2, 3])
    upper = rng.random() < 0.6 or k == 3
    invol = "reflection" if upper else rng.choice(["reflection", "transpose"])
    for _ in range(20):
        gdeg = [rng.randrange(G.order) for _ in range(k)]
        A = matrix_units(G, tau, k, gdeg, invol, upper, check=False)
        if validate(A).ok:
            return A
    return matrix_units(G, tau, k, [G.identity] * k, invol, upper)


def random_algebra(rng, max_dim=8):
    """A random validated algebra over a group of order <= 4."""
    while True:
        name = rng.choice(["trivial", "C2", "C3", "C4", "C2xC2"])
        G = make_group(name)
        taus = involutions(G)
        tau = rng.choice(taus)
        kind = rng.choice(["matrix", "matrix", "sub", "sum", "double", "twisted", "quotient", "poly"])
        A = _random_matrix_algebra(rng, G, tau)
        if kind == "sub":
            gens = []
            for _ in range(rng.randint(1, 3)):
                i = rng.randrange(A.dim)
                gens.append(A.basis_vector(i))
            A = subalgebra_generated(A, gens)
        elif kind == "sum":
            B = _random_matrix_algebra(rng, G, tau) if rng.random() < 0.5 else truncated_poly(G, tau, 2)
            A = direct_sum(A, B)
        elif kind == "double":
            A = exchange_double(truncated_poly(G, tau, rng.randint(1, 3)))
        elif kind == "twisted":
            H = sorted(G.subgroup_generated([rng.randrange(G.order)]))
            try:
                A = twisted_group_algebra(G, tau, H)
            except Exception:
                continue
        elif kind == "quotient":
            J = jacobson_radical(A)
            chain = radical_powers(A, J)
            if len(chain.powers) >= 2:
                A = quotient_by_ideal(A, chain.powers[1])
        elif kind == "poly":
            A = truncated_poly(G, tau, rng.randint(2, 4))
        if A.dim <= max_dim and validate(A).ok:
            return A


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------


def naive_rank(rows):
    """Dense Gauss elimination over Fractions."""
    M = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(M[0]) if M else 0
    while rank < len(M) and col < ncols:
        piv = next((r for r in range(rank, len(M)) if M[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for r in range(len(M)):
            if r != rank and M[r][col] != 0:
                f = M[r][col] / M[rank][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[rank])]
        rank += 1
        col += 1
    return rank


def _rat(c):
    return c.to_fraction()


def brute_codimension(A, n, graded=True, starred=True):
    """Rank of the full evaluation matrix over all admissible basis substitutions (rational A only).

    Rows: monomials x_{s(1)}^{e1} ... of P_n in fixed variable degrees; the
    space is summed over degree assignments as independent blocks.
    """
    assert A.cyclo_order == 1
    d = A.dim
    G = A.group
    stars = list(itertools.product([0, 1], repeat=n)) if starred else [(0,) * n]
    degs_list = list(itertools.product(range(G.order), repeat=n)) if graded else [None]
    total = 0

    def mul(x, y):
        out = [Fraction(0)] * d
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                for k, c in A.structconst.get((i, j), ()):
                    out[k] += a * b * _rat(c)
        return out

    def star(x):
        out = [Fraction(0)] * d
        for i, a in enumerate(x):
            if a:
                for j, c in A.star.sparse_rows()[i].items():
                    out[j] += a * _rat(c)
        return out

    basis = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    for degs in degs_list:
        if degs is None:
            choices = [list(range(d))] * n
        else:
            choices = [[i for i in range(d) if A.degree[i] == g] for g in degs]
        monos = [(perm, st) for perm in itertools.permutations(range(n)) for st in stars]
        rows = []
        for perm, st in monos:
            row = []
            for subst in itertools.product(*choices):
                acc = None
                for pos in perm:
                    v = basis[subst[pos]]
                    if st[pos]:
                        v = star(v)
                    acc = v if acc is None else mul(acc, v)
                row.extend(acc)
            rows.append(row)
        total += naive_rank(rows) if rows and rows[0] else 0
    return total


# generic-element substitution oracle --------------------------------------------

_z = sympy.Symbol("z")


def _sym_scalar(c):
    return sum(sympy.Rational(x.numerator, x.denominator) * _z**k for k, x in enumerate(c.coeffs))


class SymbolicAlgebra:
    def __init__(self, A):
        self.A = A
        self.sc = {key: [(k, _sym_scalar(c)) for k, c in t] for key, t in A.structconst.items()}
        self.star_rows = [{j: _sym_scalar(c) for j, c in row.items()} for row in A.star.sparse_rows()]
        self.phi = sympy.Poly(sympy.cyclotomic_poly(A.cyclo_order, _z), _z)

    def mul(self, x, y):
        out = [sympy.Integer(0)] * self.A.dim
        for i, a in enumerate(x):
            if a == 0:
                continue
            for j, b in enumerate(y):
                if b == 0:
                    continue
                for k, c in self.sc.get((i, j), ()):
                    out[k] += a * b * c
        return out

    def star(self, x):
        out = [sympy.Integer(0)] * self.A.dim
        for i, a in enumerate(x):
            if a != 0:
                for j, c in self.star_rows[i].items():
                    # the star is conjugate linear only over Q: scalars are fixed
                    out[j] += a * c
        return out

    def is_zero(self, expr):
        expr = sympy.expand(expr)
        if expr == 0:
            return True
        gens = sorted(expr.free_symbols - {_z}, key=str)
        P = sympy.Poly(expr, *gens) if gens else None
        coeffs = P.coeffs() if P is not None else [expr]
        for c in coeffs:
            r = sympy.rem(sympy.Poly(c, _z), self.phi)
            if not r.is_zero:
                return False
        return True


def oracle_is_identity(A, f):
    """Substitute a generic homogeneous element for each variable and expand symbolically."""
    S = SymbolicAlgebra(A)
    generic = {}
    for letter_word, _ in f.terms:
        for L in letter_word:
            if L.var in generic:
                continue
            idx = [i for i in range(A.dim) if L.degree is None or A.degree[i] == L.degree]
            vec = [sympy.Integer(0)] * A.dim
            for i in idx:
                vec[i] = sympy.Symbol(f"t_{L.var}_{i}")
            generic[L.var] = vec
    total = [sympy.Integer(0)] * A.dim
    for word, coef in f.terms:
        acc = None
        for L in word:
            v = generic[L.var]
            if L.star:
                v = S.star(v)
            acc = v if acc is None else S.mul(acc, v)
        c = _sym_scalar(coef.lift(A.cyclo_order) if coef.order != A.cyclo_order else coef)
        total = [t + c * a for t, a in zip(total, acc)]
    return all(S.is_zero(t) for t in total)


def random_polynomial(rng, G, tau, max_degree=3, nvars=3, order=1):
    """A random DSL string with small integer coefficients and degree <= max_degree."""
    from gstar.identities import parse

    names = [G.name(g) for g in G.elements()]
    degs = {v: rng.choice(names) for v in range(1, nvars + 1)}
    terms = []
    for _ in range(rng.randint(1, 4)):
        length = rng.randint(1, max_degree)
        word = []
        for _ in range(length):
            v = rng.randint(1, nvars)
            word.append(f"x{v}_{degs[v]}" + ("*" if rng.random() < 0.4 else ""))
        c = rng.choice([1, -1, 2, -2, 3])
        terms.append(f"{c}*" + " ".join(word))
    text = " + ".join(terms)
    return parse(text, G, tau, order)


def rng_for(seed):
    return random.Random(seed)


def trivial_context():
    G = make_group("trivial")
    return G, identity_involution(G)
