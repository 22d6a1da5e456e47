"""Lie terms, the expression grammar, multidegrees, supports and LiePoly.

A :class:`LieTerm` is a raw expression tree as typed by a user.  A
:class:`LiePoly` is an element of a concrete algebra, stored as a mapping from
canonical basis monomials to nonzero coefficients.  Terms become polys only
through an engine's normal form.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby
from typing import Iterable, Mapping

from .errors import ContextMismatch, InputError, ParseError
from .scalars import parse_rational

Word = tuple  # tuple[int, ...]; letters are generator indices


# --------------------------------------------------------------------------
# raw terms


class LieTerm:
    def leaves(self) -> Iterable[int]:
        raise NotImplementedError


@dataclass(frozen=True)
class Gen(LieTerm):
    index: int

    def leaves(self):
        yield self.index

    def __str__(self):
        return f"a{self.index}"


@dataclass(frozen=True)
class Bracket(LieTerm):
    left: LieTerm
    right: LieTerm

    def leaves(self):
        yield from self.left.leaves()
        yield from self.right.leaves()

    def __str__(self):
        # flatten left spines into the left-normed sugar
        items = [self.right]
        node = self.left
        while isinstance(node, Bracket):
            items.append(node.right)
            node = node.left
        items.append(node)
        return "[" + ",".join(str(t) for t in reversed(items)) + "]"


@dataclass(frozen=True)
class Sum(LieTerm):
    """Weighted sum ``sum c_k * t_k``; coefficients are rationals."""

    terms: tuple[tuple[Fraction, LieTerm], ...]

    def leaves(self):
        for c, t in self.terms:
            if c:
                yield from t.leaves()

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, (c, t) in enumerate(self.terms):
            if k == 0:
                parts.append(f"{c}*{t}")
            elif c < 0:
                parts.append(f" - {-c}*{t}")
            else:
                parts.append(f" + {c}*{t}")
        return "".join(parts)


def left_normed(word: Iterable[int]) -> LieTerm:
    """``(i1, i2, ..., ir)`` -> ``[[...[a_i1, a_i2], ...], a_ir]``."""
    it = iter(word)
    term: LieTerm = Gen(next(it))
    for i in it:
        term = Bracket(term, Gen(i))
    return term


def is_monomial(t: LieTerm) -> bool:
    return isinstance(t, (Gen, Bracket)) and all(
        is_monomial(s) for s in ((t.left, t.right) if isinstance(t, Bracket) else ())
    )


# --------------------------------------------------------------------------
# multidegree and support


def word_mdeg(word: Iterable[int], n: int) -> tuple[int, ...]:
    counts = Counter(word)
    for i in counts:
        if not 1 <= i <= n:
            raise InputError(f"generator a{i} out of range 1..{n}")
    return tuple(counts.get(i, 0) for i in range(1, n + 1))


def mdeg(t: LieTerm | Word, n: int) -> tuple[int, ...]:
    """Occurrence counts of each generator in a single monomial."""
    if isinstance(t, tuple):
        return word_mdeg(t, n)
    if not is_monomial(t):
        raise InputError("mdeg is defined for single monomials only")
    return word_mdeg(t.leaves(), n)


def supp(x) -> frozenset[int]:
    if isinstance(x, LiePoly):
        return x.support()
    if isinstance(x, LieTerm):
        return frozenset(x.leaves())
    raise TypeError(f"no support for {type(x).__name__}")


def mdeg_support(d: Iterable[int]) -> frozenset[int]:
    return frozenset(i for i, k in enumerate(d, 1) if k)


# --------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"\s*(?:(a)(\d+)|(\d+(?:\s*/\s*\d+)?)|([\[\],+\-*])|([A-Za-z_]\w*)|(\S))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        start = m.start() + len(m.group(0)) - len(m.group(0).lstrip())
        if m.group(1):
            out.append(("gen", int(m.group(2)), start))
        elif m.group(3):
            out.append(("num", parse_rational(m.group(3)), start))
        elif m.group(4):
            out.append((m.group(4), None, start))
        elif m.group(5):
            raise ParseError(f"unknown generator {m.group(5)!r}", start)
        else:
            raise ParseError(f"unexpected character {m.group(6)!r}", start)
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text: str, n: int | None):
        self.toks = _tokenize(text)
        self.k = 0
        self.n = n

    def peek(self):
        return self.toks[self.k][0]

    def take(self, kind):
        tok = self.toks[self.k]
        if tok[0] != kind:
            shown = "end of input" if tok[0] == "end" else repr(tok[0] if tok[1] is None else tok[1])
            raise ParseError(f"expected {kind!r}, found {shown}", tok[2])
        self.k += 1
        return tok

    def expr(self) -> LieTerm:
        weighted = False
        sign = Fraction(1)
        if self.peek() in ("+", "-"):
            weighted = True
            sign = Fraction(-1 if self.take(self.peek())[0] == "-" else 1)
        items = [self.term(sign)]
        while self.peek() in ("+", "-"):
            sign = Fraction(-1 if self.take(self.peek())[0] == "-" else 1)
            items.append(self.term(sign))
        # a bare atom stays a monomial; any explicit weight makes a Sum
        if len(items) == 1 and not weighted and items[0][2] is None:
            return items[0][1]
        return Sum(tuple((c, t) for c, t, _ in items))

    def term(self, sign: Fraction):
        scalar = None
        if self.peek() == "num":
            scalar = self.take("num")[1]
            self.take("*")
        return sign * (1 if scalar is None else scalar), self.atom(), scalar

    def atom(self) -> LieTerm:
        kind, val, pos = self.toks[self.k]
        if kind == "gen":
            self.k += 1
            if val < 1 or (self.n is not None and val > self.n):
                bound = f"1..{self.n}" if self.n is not None else "1.."
                raise ParseError(f"generator a{val} out of range {bound}", pos)
            return Gen(val)
        if kind == "[":
            self.k += 1
            items = [self.expr()]
            while self.peek() == ",":
                self.take(",")
                items.append(self.expr())
            if len(items) < 2:
                raise ParseError("a bracket needs at least two entries", self.toks[self.k][2])
            self.take("]")
            term = items[0]
            for t in items[1:]:
                term = Bracket(term, t)
            return term
        shown = "end of input" if kind == "end" else repr(kind if val is None else val)
        raise ParseError(f"expected generator or '[', found {shown}", pos)


def parse_expr(text: str, n: int | None = None) -> LieTerm:
    """Parse an expression such as ``"1/2*a1 - [a2,[a1,a3]]"``.

    ``[x,y,z]`` is left-normed sugar for ``[[x,y],z]``.  The literal ``0``
    parses to the empty sum.
    """
    if text.strip() == "0":
        return Sum(())
    p = _Parser(text, n)
    t = p.expr()
    p.take("end")
    return t


# --------------------------------------------------------------------------
# elements of an algebra


class LiePoly:
    """Element of an algebra ``ctx``: canonical monomial -> nonzero scalar.

    ``ctx`` is an engine (metabelian algebra or structure table) providing
    ``field``, ``graph``, ``signature``, ``sort_key``, ``format_key`` and
    ``bracket``.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms: Mapping[Word, object] | None = None):
        self.ctx = ctx
        f = ctx.field
        self.terms = {}
        for k, c in (terms or {}).items():
            c = f(c)
            if c:
                self.terms[k] = c

    @classmethod
    def _raw(cls, ctx, terms: dict) -> LiePoly:
        p = cls.__new__(cls)
        p.ctx = ctx
        p.terms = terms
        return p

    # arithmetic
    def _check(self, other: LiePoly):
        if not isinstance(other, LiePoly):
            raise TypeError(f"expected LiePoly, got {type(other).__name__}")
        if self.ctx.signature != other.ctx.signature:
            raise ContextMismatch("elements belong to different algebras")

    def __add__(self, other: LiePoly) -> LiePoly:
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LiePoly._raw(self.ctx, out)

    def __neg__(self) -> LiePoly:
        return LiePoly._raw(self.ctx, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: LiePoly) -> LiePoly:
        return self + (-other)

    def __rmul__(self, scalar) -> LiePoly:
        c = self.ctx.field(scalar)
        if not c:
            return LiePoly._raw(self.ctx, {})
        return LiePoly._raw(self.ctx, {k: c * x for k, x in self.terms.items()})

    __mul__ = __rmul__

    def bracket(self, other: LiePoly) -> LiePoly:
        self._check(other)
        return self.ctx.bracket(self, other)

    def __eq__(self, other):
        if not isinstance(other, LiePoly):
            return NotImplemented
        return self.ctx.signature == other.ctx.signature and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx.signature, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # grading
    def monomials(self) -> list[Word]:
        return sorted(self.terms, key=self.ctx.sort_key)

    def items(self):
        return [(k, self.terms[k]) for k in self.monomials()]

    def support(self) -> frozenset[int]:
        return frozenset(i for k in self.terms for i in k)

    def mdeg_of(self, key: Word) -> tuple[int, ...]:
        return word_mdeg(key, self.ctx.graph.n)

    def lengths(self) -> set[int]:
        return {len(k) for k in self.terms}

    def graded_part(self, i: int) -> LiePoly:
        """Sub-combination of monomials of length exactly ``i``."""
        return LiePoly._raw(self.ctx, {k: c for k, c in self.terms.items() if len(k) == i})

    def upto(self, k: int) -> LiePoly:
        """Sum of graded parts of length at most ``k``."""
        return LiePoly._raw(self.ctx, {w: c for w, c in self.terms.items() if len(w) <= k})

    def above(self, k: int) -> LiePoly:
        """``self - self.upto(k)``."""
        return LiePoly._raw(self.ctx, {w: c for w, c in self.terms.items() if len(w) > k})

    def multihomogeneous_split(self) -> list[tuple[tuple[int, ...], LiePoly]]:
        """Group monomials by multidegree; ``(1,1,0)`` precedes ``(1,0,1)``."""
        n = self.ctx.graph.n
        order = lambda w: (tuple(-x for x in word_mdeg(w, n)), self.ctx.sort_key(w))
        keyed = sorted(self.terms, key=order)
        out = []
        for d, group in groupby(keyed, key=lambda w: word_mdeg(w, n)):
            out.append((d, LiePoly._raw(self.ctx, {w: self.terms[w] for w in group})))
        return out

    def is_multihomogeneous(self) -> bool:
        return len(self.multihomogeneous_split()) == 1

    def proportional_to(self, other: LiePoly) -> bool:
        """``a*self == b*other`` for nonzero scalars ``a, b``; both must be nonzero."""
        self._check(other)
        if not self or not other or self.terms.keys() != other.terms.keys():
            return False
        k0 = next(iter(self.terms))
        r = other.terms[k0] / self.terms[k0]
        return all(other.terms[k] == r * c for k, c in self.terms.items())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        f = self.ctx.field
        out = []
        for k, (w, c) in enumerate(self.items()):
            mon = self.ctx.format_key(w)
            neg = isinstance(c, Fraction) and c < 0
            text = f.format(-c if neg and k else c)
            if k == 0:
                out.append(f"{text}*{mon}")
            else:
                out.append(f" {'-' if neg else '+'} {text}*{mon}")
        return "".join(out)

    def __repr__(self):
        return f"LiePoly({self})"


def poly_sum(ctx, polys: Iterable[LiePoly]) -> LiePoly:
    out: dict = {}
    for p in polys:
        for k, c in p.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return LiePoly._raw(ctx, out)


def evaluate(ctx, t: LieTerm) -> LiePoly:
    """Normal form of a raw term in ``ctx`` by structural recursion."""
    if isinstance(t, Gen):
        return ctx.generator(t.index)
    if isinstance(t, Bracket):
        return ctx.bracket(evaluate(ctx, t.left), evaluate(ctx, t.right))
    if isinstance(t, Sum):
        return poly_sum(ctx, (c * evaluate(ctx, s) for c, s in t.terms))
    raise TypeError(f"not a Lie term: {t!r}")
