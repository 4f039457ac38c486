"""Exact arithmetic in Q(zeta_m) and exact linear algebra over it.

A :class:`CycScalar` is a residue modulo the m-th cyclotomic polynomial with
rational coefficients, stored as an integer numerator vector over a common
positive denominator.  Elements of different orders are lifted to the least
common multiple before combining.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

from .errors import DivisionByZero, ParseError

__all__ = [
    "CycScalar",
    "ExactMatrix",
    "Subspace",
    "euler_phi",
    "cyclotomic_poly",
    "matrix_rank",
    "sparse_rank",
    "nullspace_basis",
    "rref",
    "parse_scalar",
    "as_scalar",
]


def _lcm(a, b):
    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def euler_phi(m):
    result, n, p = m, m, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


@lru_cache(maxsize=None)
def _mobius(n):
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def _poly_divexact(num, den):
    # integer polynomials, low degree first; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    assert not any(num), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m):
    """Coefficients of the m-th cyclotomic polynomial, lowest degree first."""
    if m < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divexact(poly, cyclotomic_poly(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(m):
    """Reduced coefficient vectors of x^k for 0 <= k < max(m, 2*phi - 1)."""
    phi = euler_phi(m)
    cyc = cyclotomic_poly(m)
    size = max(m, 2 * phi - 1, 1)
    table = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(size):
        table.append(tuple(cur))
        lead = cur[-1]
        cur = [0] + cur[:-1]
        if lead:
            for j in range(phi):
                cur[j] -= lead * cyc[j]
    return tuple(table)


@lru_cache(maxsize=None)
def _norm_trace_weights(m):
    # normalised trace of zeta_m^k is mu(d)/phi(d) with d = m / gcd(k, m)
    out = []
    for k in range(euler_phi(m)):
        d = m // gcd(k, m)
        out.append(Fraction(_mobius(d), euler_phi(d)))
    return tuple(out)


class CycScalar:
    """Element of the cyclotomic field Q(zeta_m)."""

    __slots__ = ("order", "num", "den")

    def __init__(self, value=0, order=1):
        if isinstance(value, CycScalar):
            other = value.lift(_lcm(value.order, order)) if order != value.order else value
            self.order, self.num, self.den = other.order, other.num, other.den
            return
        if not isinstance(value, Rational):
            raise TypeError(f"cannot build CycScalar from {type(value).__name__}")
        value = Fraction(value)
        phi = euler_phi(order)
        num = [0] * phi
        num[0] = value.numerator
        self.order = order
        self.num = tuple(num)
        self.den = value.denominator

    @classmethod
    def _make(cls, order, num, den):
        g = den
        for c in num:
            if c:
                g = gcd(g, c)
                if g == 1:
                    break
        if den < 0:
            g = -g
        obj = cls.__new__(cls)
        obj.order = order
        if g != 1:
            obj.num = tuple(c // g for c in num)
            obj.den = den // g
        else:
            obj.num = tuple(num)
            obj.den = den
        if not any(obj.num):
            obj.den = 1
        return obj

    @classmethod
    def zeta(cls, order, k=1):
        """The root of unity zeta_order**k."""
        return cls._make(order, _power_table(order)[k % order], 1)

    @classmethod
    def from_coeffs(cls, coeffs, order):
        coeffs = [Fraction(c) for c in coeffs]
        phi = euler_phi(order)
        if len(coeffs) > phi:
            # reduce an unreduced polynomial in zeta
            acc = cls(0, order)
            for k, c in enumerate(coeffs):
                if c:
                    acc = acc + cls.zeta(order, k) * c
            return acc
        coeffs += [Fraction(0)] * (phi - len(coeffs))
        den = 1
        for c in coeffs:
            den = _lcm(den, c.denominator)
        return cls._make(order, [c.numerator * (den // c.denominator) for c in coeffs], den)

    # -- basic views ---------------------------------------------------
    @property
    def coeffs(self):
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self):
        return not any(self.num)

    def __bool__(self):
        return any(self.num)

    def is_rational(self):
        return not any(self.num[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def lift(self, order):
        """Reinterpret this element inside Q(zeta_order); order must be a multiple."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot lift order {self.order} to {order}")
        step = order // self.order
        table = _power_table(order)
        phi = euler_phi(order)
        out = [0] * phi
        for k, c in enumerate(self.num):
            if c:
                row = table[(k * step) % order]
                for j in range(phi):
                    if row[j]:
                        out[j] += c * row[j]
        return CycScalar._make(order, out, self.den)

    def _pair(self, other):
        if not isinstance(other, CycScalar):
            if isinstance(other, Rational):
                other = CycScalar(other, self.order)
            else:
                return None, None
        if other.order == self.order:
            return self, other
        m = _lcm(self.order, other.order)
        return self.lift(m), other.lift(m)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        if a.den == b.den:
            return CycScalar._make(a.order, [x + y for x, y in zip(a.num, b.num)], a.den)
        return CycScalar._make(
            a.order, [x * b.den + y * a.den for x, y in zip(a.num, b.num)], a.den * b.den
        )

    __radd__ = __add__

    def __neg__(self):
        obj = CycScalar.__new__(CycScalar)
        obj.order, obj.num, obj.den = self.order, tuple(-c for c in self.num), self.den
        return obj

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return b + (-a)

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        m = a.order
        if len(a.num) == 1:
            return CycScalar._make(m, (a.num[0] * b.num[0],), a.den * b.den)
        phi = len(a.num)
        prod = [0] * (2 * phi - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        prod[i + j] += x * y
        out = prod[:phi]
        table = _power_table(m)
        for k in range(phi, 2 * phi - 1):
            c = prod[k]
            if c:
                row = table[k]
                for j in range(phi):
                    if row[j]:
                        out[j] += c * row[j]
        return CycScalar._make(m, out, a.den * b.den)

    __rmul__ = __mul__

    def galois(self, j):
        """Image under the automorphism zeta -> zeta**j (gcd(j, m) = 1)."""
        m = self.order
        table = _power_table(m)
        out = [0] * len(self.num)
        for k, c in enumerate(self.num):
            if c:
                row = table[(k * j) % m]
                for t in range(len(out)):
                    if row[t]:
                        out[t] += c * row[t]
        return CycScalar._make(m, out, self.den)

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("division by zero in Q(zeta_%d)" % self.order)
        m = self.order
        if len(self.num) == 1:
            return CycScalar._make(m, (self.den,), self.num[0])
        # a^-1 = (product of the other conjugates) / norm(a)
        conj = CycScalar(1, m)
        for j in range(2, m):
            if gcd(j, m) == 1:
                conj = conj * self.galois(j)
        norm = self * conj
        assert norm.is_rational()
        return conj * Fraction(norm.den, norm.num[0])

    def __truediv__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return b * a.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = CycScalar(1, self.order)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ----------------------------------------------------
    def __eq__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a.den == b.den and a.num == b.num

    def __hash__(self):
        w = _norm_trace_weights(self.order)
        return hash(sum((c * w[k] for k, c in enumerate(self.num) if c), Fraction(0)) / self.den)

    # -- printing ------------------------------------------------------
    def __str__(self):
        parts = []
        for k in range(len(self.num) - 1, -1, -1):
            c = Fraction(self.num[k], self.den)
            if not c:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                z = "z" if k == 1 else f"z^{k}"
                body = z if abs(c) == 1 else f"{abs(c)}*{z}"
            parts.append(("-" if c < 0 else "+", body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"CycScalar({str(self)!r}, order={self.order})"


def as_scalar(value, order=1):
    """Coerce ints, Fractions, literal strings or CycScalars to CycScalar."""
    if isinstance(value, CycScalar):
        return value if value.order == order else CycScalar(value, order)
    if isinstance(value, str):
        return parse_scalar(value, order)
    return CycScalar(value, order)


# ---------------------------------------------------------------------------
# scalar literal syntax:  -1/2*z^3 + 1
# ---------------------------------------------------------------------------

_SCALAR_TOKEN = re.compile(r"\s*(?:(\d+)|(z)|([-+*/^()]))")


def _tokenize_scalar(text):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        mt = _SCALAR_TOKEN.match(text, pos)
        if not mt:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} in scalar", pos)
        if mt.group(1):
            out.append(("num", int(mt.group(1)), mt.start(1)))
        elif mt.group(2):
            out.append(("z", None, mt.start(2)))
        else:
            out.append((mt.group(3), None, mt.start(3)))
        pos = mt.end()
    out.append(("end", None, len(text)))
    return out


class _ScalarParser:
    def __init__(self, text, order):
        self.toks = _tokenize_scalar(text)
        self.i = 0
        self.order = order

    def peek(self):
        return self.toks[self.i][0]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0]!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        value = self.expr()
        if self.peek() != "end":
            raise ParseError(f"unexpected token {self.peek()!r}", self.toks[self.i][2])
        return value

    def expr(self):
        value = self.term()
        while self.peek() in "+-" and self.peek() != "end":
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()[0]
            rhs = self.unary()
            value = value * rhs if op == "*" else value / rhs
        return value

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            exp = self.take("num")[1]
            base = base ** (sign * exp)
        return base

    def atom(self):
        kind, val, pos = self.toks[self.i]
        if kind == "num":
            self.take()
            return CycScalar(val, self.order)
        if kind == "z":
            self.take()
            return CycScalar.zeta(self.order)
        if kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        raise ParseError(f"unexpected token {kind!r} in scalar", pos)


def parse_scalar(text, order=1):
    """Parse a scalar literal such as ``-1/2*z^3 + 1`` (z = zeta_order)."""
    if isinstance(text, (int, Fraction)):
        return CycScalar(text, order)
    return _ScalarParser(str(text), order).parse()


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


class ExactMatrix:
    """Sparse rows x cols matrix over Q(zeta_m); rows are dicts col -> nonzero."""

    __slots__ = ("nrows", "ncols", "order", "_rows")

    def __init__(self, rows=(), ncols=None, order=None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        sparse = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
            sparse.append({j: v for j, v in enumerate(r) if v})
        self._init(len(rows), ncols, sparse, order)

    def _init(self, nrows, ncols, sparse, order):
        m = order or 1
        for r in sparse:
            for v in r.values():
                if isinstance(v, CycScalar):
                    m = _lcm(m, v.order)
        self.nrows, self.ncols, self.order = nrows, ncols, m
        self._rows = tuple(
            {j: as_scalar(v, m) for j, v in sorted(r.items()) if v} for r in sparse
        )

    @classmethod
    def from_sparse(cls, nrows, ncols, rows, order=None):
        obj = cls.__new__(cls)
        obj._init(nrows, ncols, [dict(r) for r in rows], order)
        return obj

    @classmethod
    def from_columns(cls, columns, nrows, order=None):
        """Build from an iterable of columns, consumed one at a time."""
        rows = [dict() for _ in range(nrows)]
        ncols = 0
        for j, col in enumerate(columns):
            items = col.items() if isinstance(col, dict) else enumerate(col)
            for i, v in items:
                if v:
                    rows[i][j] = v
            ncols = j + 1
        return cls.from_sparse(nrows, ncols, rows, order)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i].get(j, CycScalar(0, self.order))

    def row(self, i):
        zero = CycScalar(0, self.order)
        r = self._rows[i]
        return tuple(r.get(j, zero) for j in range(self.ncols))

    def sparse_rows(self):
        return self._rows

    def to_lists(self):
        return [list(self.row(i)) for i in range(self.nrows)]

    def transpose(self):
        cols = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                cols[j][i] = v
        return ExactMatrix.from_sparse(self.ncols, self.nrows, cols, self.order)

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise ValueError("hstack needs equal row counts")
        rows = []
        for a, b in zip(self._rows, other._rows):
            r = dict(a)
            r.update({j + self.ncols: v for j, v in b.items()})
            rows.append(r)
        return ExactMatrix.from_sparse(
            self.nrows, self.ncols + other.ncols, rows, _lcm(self.order, other.order)
        )

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise ValueError("vstack needs equal column counts")
        return ExactMatrix.from_sparse(
            self.nrows + other.nrows,
            self.ncols,
            list(self._rows) + list(other._rows),
            _lcm(self.order, other.order),
        )

    def apply(self, vec):
        zero = CycScalar(0, self.order)
        out = []
        for r in self._rows:
            acc = zero
            for j, v in r.items():
                if vec[j]:
                    acc = acc + v * vec[j]
            out.append(acc)
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for a, b in zip(self._rows, other._rows)
        )

    __hash__ = None

    def rank(self):
        return matrix_rank(self)

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols}, order={self.order})"


# -- rank: fraction-free elimination on integer rows --------------------------


def _integer_rows(M):
    """Integer rows whose Q-rank is phi(m) * rank_K(M) (regular representation)."""
    m = M.order
    phi = euler_phi(m)
    out = []
    if phi == 1:
        for r in M.sparse_rows():
            if not r:
                continue
            den = 1
            for v in r.values():
                den = _lcm(den, v.den)
            out.append({j: v.num[0] * (den // v.den) for j, v in r.items()})
        return out
    zeta = CycScalar.zeta(m)
    for r in M.sparse_rows():
        if not r:
            continue
        blocks = {}
        den = 1
        for j, v in r.items():
            col = []
            cur = v
            for s in range(phi):
                col.append(cur)
                den = _lcm(den, cur.den)
                cur = cur * zeta
            blocks[j] = col
        for t in range(phi):
            row = {}
            for j, col in blocks.items():
                for s, x in enumerate(col):
                    c = x.num[t]
                    if c:
                        row[j * phi + s] = c * (den // x.den)
            if row:
                out.append(row)
    return out


def _primitive(row):
    g = 0
    for c in row.values():
        g = gcd(g, c)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g not in (0, 1):
        row = {j: c // g for j, c in row.items()}
    return row


def _int_rank(rows):
    """Rank of sparse integer rows by fraction-free elimination.

    Rows are kept primitive (content 1).  The pivot is taken from the
    sparsest remaining row, at its leftmost nonzero column.
    """
    seen = set()
    work = []
    for r in rows:
        if not r:
            continue
        r = _primitive(r)
        key = tuple(sorted(r.items()))
        if key in seen:
            continue
        seen.add(key)
        work.append(r)
    rank = 0
    while work:
        best = min(range(len(work)), key=lambda i: (len(work[i]), min(work[i])))
        prow = work.pop(best)
        c = min(prow)
        p = prow[c]
        rank += 1
        nxt = []
        for r in work:
            f = r.get(c)
            if f:
                g = gcd(p, f)
                a, b = p // g, f // g
                new = {j: a * v for j, v in r.items()}
                for j, v in prow.items():
                    w = new.get(j, 0) - b * v
                    if w:
                        new[j] = w
                    else:
                        new.pop(j, None)
                if not new:
                    continue
                r = _primitive(new)
            nxt.append(r)
        work = nxt
    return rank


def sparse_rank(rows, order=1):
    """Rank of rows given as dicts col -> value (ints, Fractions or CycScalars)."""
    if euler_phi(order) == 1 and all(
        not isinstance(v, CycScalar) or len(v.num) == 1 for r in rows for v in r.values()
    ):
        ints = []
        for r in rows:
            if not r:
                continue
            vals = {j: (Fraction(v.num[0], v.den) if isinstance(v, CycScalar) else v) for j, v in r.items() if v}
            den = 1
            for v in vals.values():
                if isinstance(v, Fraction):
                    den = _lcm(den, v.denominator)
            if den == 1:
                ints.append({j: int(v) for j, v in vals.items()})
            else:
                ints.append({j: int(v * den) for j, v in vals.items()})
        return _int_rank(ints)
    ncols = 1 + max((j for r in rows for j in r), default=-1)
    return matrix_rank(ExactMatrix.from_sparse(len(rows), ncols, rows, order))


def matrix_rank(M):
    """Exact rank of an ExactMatrix over Q(zeta_m)."""
    if not isinstance(M, ExactMatrix):
        M = ExactMatrix(M)
    rows = _integer_rows(M)
    r = _int_rank(rows)
    phi = euler_phi(M.order)
    assert r % phi == 0
    return r // phi


# -- reduced row echelon form over the field ---------------------------------


def _field_rows(M):
    # rational matrices run on Fractions, which are cheaper than CycScalar
    if euler_phi(M.order) == 1:
        return [{j: Fraction(v.num[0], v.den) for j, v in r.items()} for r in M.sparse_rows()], True
    return [dict(r) for r in M.sparse_rows()], False


def rref(M):
    """Reduced row echelon form: (list of nonzero rows as dicts, pivot columns)."""
    rows, rational = _field_rows(M)
    pivots = []
    reduced = []
    for r in rows:
        r = dict(r)
        for prow, pc in zip(reduced, pivots):
            f = r.get(pc)
            if f:
                for j, v in prow.items():
                    w = r.get(j, 0) - f * v
                    if w:
                        r[j] = w
                    else:
                        r.pop(j, None)
        if not r:
            continue
        c = min(r)
        inv = 1 / r[c]
        r = {j: v * inv for j, v in r.items()}
        # clear the new pivot column from the earlier rows
        for k, prow in enumerate(reduced):
            f = prow.get(c)
            if f:
                for j, v in r.items():
                    w = prow.get(j, 0) - f * v
                    if w:
                        prow[j] = w
                    else:
                        prow.pop(j, None)
        reduced.append(r)
        pivots.append(c)
    order = sorted(range(len(pivots)), key=lambda k: pivots[k])
    reduced = [reduced[k] for k in order]
    pivots = [pivots[k] for k in order]
    m = M.order
    if rational:
        reduced = [{j: CycScalar(v, m) for j, v in r.items()} for r in reduced]
    return reduced, pivots


def nullspace_basis(M):
    """Basis of {x : M x = 0}; one vector per free column, in column order."""
    if not isinstance(M, ExactMatrix):
        M = ExactMatrix(M)
    reduced, pivots = rref(M)
    pivset = set(pivots)
    zero = CycScalar(0, M.order)
    one = CycScalar(1, M.order)
    basis = []
    for free in range(M.ncols):
        if free in pivset:
            continue
        vec = [zero] * M.ncols
        vec[free] = one
        for r, pc in zip(reduced, pivots):
            f = r.get(free)
            if f:
                vec[pc] = -f
        basis.append(tuple(vec))
    return basis


class Subspace:
    """Incrementally maintained reduced echelon basis of a subspace of K^n.

    Remembers how each echelon row decomposes over the vectors that were
    added, so coordinates with respect to the accepted generators are
    available.
    """

    def __init__(self, dim, order=1, vectors=()):
        self.dim = dim
        self.order = order
        self.rows = []  # list of (pivot, row dict, combo dict)
        self.generators = []
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self.rows)

    def _reduce(self, v):
        r = {j: as_scalar(x, self.order) for j, x in enumerate(v) if x}
        combo = {}
        for pc, prow, pcombo in self.rows:
            f = r.get(pc)
            if f:
                for j, x in prow.items():
                    w = r.get(j, 0) - f * x
                    if w:
                        r[j] = w
                    else:
                        r.pop(j, None)
                for k, x in pcombo.items():
                    w = combo.get(k, 0) - f * x
                    if w:
                        combo[k] = w
                    else:
                        combo.pop(k, None)
        return r, combo

    def residual(self, v):
        r, _ = self._reduce(v)
        zero = CycScalar(0, self.order)
        return tuple(r.get(j, zero) for j in range(self.dim))

    def contains(self, v):
        r, _ = self._reduce(v)
        return not r

    def add(self, v):
        """Add v if it is independent; returns True when the span grew."""
        r, combo = self._reduce(v)
        if not r:
            return False
        k = len(self.generators)
        self.generators.append(tuple(as_scalar(x, self.order) for x in v))
        combo[k] = CycScalar(1, self.order)
        pc = min(r)
        inv = r[pc].inverse()
        r = {j: x * inv for j, x in r.items()}
        combo = {i: x * inv for i, x in combo.items()}
        for idx, (qc, qrow, qcombo) in enumerate(self.rows):
            f = qrow.get(pc)
            if f:
                for j, x in r.items():
                    w = qrow.get(j, 0) - f * x
                    if w:
                        qrow[j] = w
                    else:
                        qrow.pop(j, None)
                for i, x in combo.items():
                    w = qcombo.get(i, 0) - f * x
                    if w:
                        qcombo[i] = w
                    else:
                        qcombo.pop(i, None)
        self.rows.append((pc, r, combo))
        return True

    def coordinates(self, v):
        """Coefficients of v over the accepted generators, or None if v is outside."""
        r, combo = self._reduce(v)
        if r:
            return None
        zero = CycScalar(0, self.order)
        return tuple(-combo.get(k, zero) for k in range(len(self.generators)))

    def pivots(self):
        return sorted(pc for pc, _, _ in self.rows)
