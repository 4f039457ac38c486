"""(G,*)-polynomials: parsing, printing, evaluation, multilinearization, identity test.

Grammar (whitespace separates juxtaposed factors)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := unary (['*' | '/'] unary)*        juxtaposition also multiplies
    unary  := '-' unary | atom ['^' int]
    atom   := var | int | 'z' | '(' expr ')' | '[' expr ',' expr ']'
    var    := 'x' int '_' degree-name ['*']

A ``*`` written immediately after a variable (no space) marks the star;
anywhere else it is multiplication.  ``z`` is zeta_m for the declared m.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations, product
from math import lcm

from .errors import ContextMismatch, DegreeMismatch, InvalidParameters, ParseError, UnknownDegreeName
from .exactfield import CycScalar, as_scalar
from .groups import GroupInvolution

__all__ = [
    "Letter",
    "GStarPolynomial",
    "parse",
    "evaluate",
    "multilinearize",
    "is_identity",
    "identity_witness",
]


@dataclass(frozen=True, order=True)
class Letter:
    var: int
    degree: int
    star: bool = False

    def eval_degree(self, tau):
        return tau(self.degree) if self.star else self.degree

    def starred(self):
        return Letter(self.var, self.degree, not self.star)


def _word_key(word):
    return (len(word), tuple((l.var, l.degree, l.star) for l in word))


class GStarPolynomial:
    """Finite linear combination of words in graded, star-decorated letters."""

    __slots__ = ("group", "tau", "order", "_terms")

    def __init__(self, group, tau, terms=None, order=1):
        if not isinstance(tau, GroupInvolution):
            tau = GroupInvolution(tuple(tau))
        self.group, self.tau = group, tau
        acc = {}
        m = order
        for word, c in (terms.items() if isinstance(terms, dict) else (terms or ())):
            c = as_scalar(c, order) if not isinstance(c, CycScalar) else c
            m = lcm(m, c.order)
            word = tuple(word)
            acc[word] = acc.get(word, 0) + c
        self.order = m
        self._terms = tuple(
            (w, as_scalar(acc[w], m)) for w in sorted(acc, key=_word_key) if acc[w]
        )

    # -- constructors ---------------------------------------------------
    @classmethod
    def letter(cls, group, tau, var, degree, star=False, order=1):
        return cls(group, tau, {(Letter(var, degree, star),): 1}, order)

    @classmethod
    def constant(cls, group, tau, c, order=1):
        return cls(group, tau, {(): c}, order)

    def _new(self, terms, order=None):
        return GStarPolynomial(self.group, self.tau, terms, order or self.order)

    # -- views ----------------------------------------------------------
    @property
    def terms(self):
        return self._terms

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def variables(self):
        out = {}
        for w, _ in self._terms:
            for l in w:
                out[l.var] = l.degree
        return dict(sorted(out.items()))

    def total_degree(self):
        return max((len(w) for w, _ in self._terms), default=0)

    def is_multilinear(self):
        vs = None
        for w, _ in self._terms:
            vars_ = [l.var for l in w]
            if len(set(vars_)) != len(vars_):
                return False
            if vs is None:
                vs = set(vars_)
            elif vs != set(vars_):
                return False
        return True

    def has_constant(self):
        return any(not w for w, _ in self._terms)

    # -- algebra --------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, GStarPolynomial):
            if other.group.table != self.group.table or other.tau.map != self.tau.map:
                raise ContextMismatch("polynomials over different (G, tau)")
            return other
        return self._new({(): other})

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self._terms)
        for w, c in other._terms:
            terms[w] = terms.get(w, 0) + c
        return self._new(terms, lcm(self.order, other.order))

    __radd__ = __add__

    def __neg__(self):
        return self._new({w: -c for w, c in self._terms})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        terms = {}
        for w1, c1 in self._terms:
            for w2, c2 in other._terms:
                w = w1 + w2
                terms[w] = terms.get(w, 0) + c1 * c2
        return self._new(terms, lcm(self.order, other.order))

    def __rmul__(self, other):
        return self._coerce(other) * self

    def __pow__(self, k):
        if not isinstance(k, int) or k < 1:
            raise ValueError("only positive integer powers")
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def scale(self, c):
        return self._new({w: c * x for w, x in self._terms})

    def commutator(self, other):
        other = self._coerce(other)
        return self * other - other * self

    def star_reverse(self):
        """Image under the free involution: reverse every word and toggle stars."""
        return self._new({tuple(l.starred() for l in reversed(w)): c for w, c in self._terms})

    def rename(self, mapping):
        return self._new(
            {tuple(Letter(mapping.get(l.var, l.var), l.degree, l.star) for l in w): c for w, c in self._terms}
        )

    def __eq__(self, other):
        if not isinstance(other, GStarPolynomial):
            return NotImplemented
        return (
            self.group.table == other.group.table
            and self.tau.map == other.tau.map
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash(self._terms)

    # -- printing -------------------------------------------------------
    def word_str(self, word):
        return " ".join(
            f"x{l.var}_{self.group.name(l.degree)}" + ("*" if l.star else "") for l in word
        )

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for w, c in self._terms:
            body = self.word_str(w)
            if c.is_rational():
                q = c.to_fraction()
                sign = "-" if q < 0 else "+"
                q = abs(q)
                if not w:
                    text = str(q)
                elif q == 1:
                    text = body
                else:
                    text = f"{q}*{body}"
            else:
                sign = "+"
                text = f"({c})" + (f"*{body}" if w else "")
            parts.append((sign, text))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self):
        return f"GStarPolynomial({str(self)!r})"


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<var>x(?P<idx>\d+)_(?P<deg>[A-Za-z0-9]+))"
    r"|(?P<num>\d+)|(?P<z>z)|(?P<sym>[-+*/^()\[\],])"
)


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if mt.group("var"):
            star = text[mt.end("deg") : mt.end("deg") + 1] == "*"
            toks.append(("var", (int(mt.group("idx")), mt.group("deg"), star), mt.start()))
            pos = mt.end("deg") + (1 if star else 0)
            continue
        if mt.group("num"):
            toks.append(("num", int(mt.group("num")), mt.start()))
        elif mt.group("z"):
            toks.append(("z", None, mt.start()))
        elif mt.group("sym"):
            toks.append((mt.group("sym"), None, mt.start()))
        pos = mt.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text, group, tau, order):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.group, self.tau, self.order = group, tau, order
        self.degrees = {}

    def peek(self):
        return self.toks[self.i][0]

    def pos(self):
        return self.toks[self.i][2]

    def take(self, kind):
        tok = self.toks[self.i]
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0]!r}", tok[2])
        self.i += 1
        return tok

    def const(self, c):
        return GStarPolynomial.constant(self.group, self.tau, c, self.order)

    def parse(self):
        if self.peek() == "end":
            raise ParseError("empty polynomial", 0)
        f = self.expr()
        if self.peek() != "end":
            raise ParseError(f"unexpected {self.peek()!r}", self.pos())
        if f.has_constant():
            raise ParseError("polynomials may not have a constant term", 0)
        return f

    def expr(self):
        if self.peek() in ("+", "-"):
            op = self.take(self.peek())[0]
            f = self.term()
            if op == "-":
                f = -f
        else:
            f = self.term()
        while self.peek() in ("+", "-"):
            op = self.take(self.peek())[0]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    _STARTS = ("var", "num", "z", "(", "[")

    def term(self):
        f = self.unary()
        while True:
            kind = self.peek()
            if kind == "*":
                self.take("*")
                f = f * self.unary()
            elif kind == "/":
                p = self.pos()
                self.take("/")
                g = self.unary()
                if len(g.terms) != 1 or g.terms[0][0] != ():
                    raise ParseError("can only divide by a nonzero scalar", p)
                f = f.scale(g.terms[0][1].inverse())
            elif kind in self._STARTS:
                f = f * self.unary()
            else:
                return f

    def unary(self):
        if self.peek() == "-":
            self.take("-")
            return -self.unary()
        base_pos = self.pos()
        f = self.atom()
        if self.peek() == "^":
            self.take("^")
            neg = False
            if self.peek() == "-":
                self.take("-")
                neg = True
            k = self.take("num")[1]
            if neg or k == 0:
                if len(f.terms) != 1 or f.terms[0][0] != ():
                    raise ParseError("only scalars take zero or negative powers", base_pos)
                c = f.terms[0][1]
                return self.const(c ** (-k if neg else k))
            f = f**k
        return f

    def atom(self):
        kind, val, pos = self.toks[self.i]
        if kind == "var":
            self.i += 1
            idx, name, star = val
            g = self.group.index(name)
            if g is None:
                raise UnknownDegreeName(f"unknown degree name {name!r}", pos)
            if idx < 1:
                raise ParseError("variable indices start at 1", pos)
            prev = self.degrees.setdefault(idx, g)
            if prev != g:
                raise ParseError(
                    f"x{idx} used with degrees {self.group.name(prev)} and {name}", pos
                )
            return GStarPolynomial.letter(self.group, self.tau, idx, g, star, self.order)
        if kind == "num":
            self.i += 1
            return self.const(val)
        if kind == "z":
            self.i += 1
            return self.const(CycScalar.zeta(self.order))
        if kind == "(":
            self.take("(")
            f = self.expr()
            self.take(")")
            return f
        if kind == "[":
            self.take("[")
            f = self.expr()
            self.take(",")
            g = self.expr()
            self.take("]")
            return f.commutator(g)
        raise ParseError(f"unexpected {kind!r}", pos)


def parse(text, group, tau, order=1):
    """Parse DSL text into a canonical GStarPolynomial."""
    if not isinstance(tau, GroupInvolution):
        tau = GroupInvolution(tuple(tau))
    return _Parser(str(text), group, tau, order).parse()


# ---------------------------------------------------------------------------
# evaluation and identities
# ---------------------------------------------------------------------------


def _check_context(A, f):
    if A.group.table != f.group.table or A.tau.map != f.tau.map:
        raise ContextMismatch("polynomial and algebra live over different (G, tau)")


def evaluate(A, f, assignment):
    """Value of f at var -> element (coordinate vector) of matching degree."""
    _check_context(A, f)
    vals = {}
    for var, deg in f.variables().items():
        if var not in assignment:
            raise InvalidParameters(f"x{var} is not assigned")
        x = A.vector(assignment[var])
        d = A.degree_of(x)
        if any(x) and d != deg:
            raise DegreeMismatch(
                f"x{var} has degree {A.group.name(deg)} but was assigned a non-homogeneous "
                "element" if d is None else f"x{var} has degree {A.group.name(deg)}, got {A.group.name(d)}"
            )
        vals[var] = (x, A.star_of(x))
    out = A.zero()
    for word, c in f.terms:
        if not word:
            raise InvalidParameters("cannot evaluate a constant term")
        val = vals[word[0].var][1 if word[0].star else 0]
        for l in word[1:]:
            val = A.mul(val, vals[l.var][1 if l.star else 0])
        out = A.add(out, A.scale(c, val))
    return out


def _multihomogeneous(f):
    comps = {}
    for w, c in f.terms:
        counts = {}
        for l in w:
            counts[l.var] = counts.get(l.var, 0) + 1
        key = tuple(sorted(counts.items()))
        comps.setdefault(key, {})[w] = c
    return [f._new(comps[k]) for k in sorted(comps)]


def multilinearize(f):
    """Multilinear polynomials whose joint vanishing is equivalent to f vanishing.

    f is split into multihomogeneous components; each repeated variable is
    then fully polarized into fresh copies (the original index plus new
    indices above every index in f), keeping degree and star on each
    occurrence.
    """
    out = []
    fresh = max(f.variables(), default=0) + 1
    for comp in _multihomogeneous(f):
        if not comp.terms:
            continue
        counts = {}
        for l in comp.terms[0][0]:
            counts[l.var] = counts.get(l.var, 0) + 1
        copies = {}
        nxt = fresh
        for v, k in sorted(counts.items()):
            copies[v] = [v] + list(range(nxt, nxt + k - 1))
            nxt += k - 1
        terms = {}
        for w, c in comp.terms:
            # positions of each variable in the word
            slots = {}
            for pos, l in enumerate(w):
                slots.setdefault(l.var, []).append(pos)
            choices = [list(permutations(copies[v])) for v in sorted(slots)]
            for combo in product(*choices):
                new = list(w)
                for v, perm in zip(sorted(slots), combo):
                    for pos, idx in zip(slots[v], perm):
                        l = w[pos]
                        new[pos] = Letter(idx, l.degree, l.star)
                key = tuple(new)
                terms[key] = terms.get(key, 0) + c
        g = f._new(terms)
        if g:
            out.append(g)
    return out


def _multilinear_witness(A, g):
    vars_ = sorted(g.variables().items())
    choices = [A.basis_of_degree(deg) for _, deg in vars_]
    if any(not c for c in choices):
        return None
    basis = [A.basis_vector(i) for i in range(A.dim)]
    stars = [A.star_row(i) for i in range(A.dim)]
    pos = {v: k for k, (v, _) in enumerate(vars_)}
    for tup in product(*choices):
        out = A.zero()
        for word, c in g.terms:
            l = word[0]
            b = tup[pos[l.var]]
            val = stars[b] if l.star else basis[b]
            for l in word[1:]:
                b = tup[pos[l.var]]
                val = A.mul(val, stars[b] if l.star else basis[b])
                if not any(val):
                    break
            if any(val):
                out = A.add(out, A.scale(c, val))
        if any(out):
            return {v: tup[pos[v]] for v, _ in vars_}
    return None


def identity_witness(A, f):
    """None if f is an identity of A, else (multilinear component, var -> basis index)."""
    _check_context(A, f)
    if f.has_constant():
        raise InvalidParameters("polynomials may not have a constant term")
    for g in multilinearize(f):
        w = _multilinear_witness(A, g)
        if w is not None:
            return g, w
    return None


def is_identity(A, f):
    """True iff f vanishes under every admissible substitution into A."""
    return identity_witness(A, f) is None
