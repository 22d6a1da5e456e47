"""The partially commutative metabelian Lie algebra M(A;G).

Elements of length >= 2 are written as left-normed monomials.  In the free
metabelian algebra the tail of ``[a_i, a_j, a_k, ...]`` may be permuted freely,
and every monomial rewrites to the form ``[a_i, a_b, sorted tail]`` with
``i > b`` and ``b`` the smallest letter present.  The graph relations are then
factored out one multidegree at a time by linear algebra, keeping the
monomials whose first letter is the largest vertex of a non-initial connected
component of ``G`` restricted to the support.
"""

from __future__ import annotations

import threading
from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping

from . import freelie
from .errors import InputError, InvariantViolation
from .graphs import Graph, connected_components
from .linalg import Echelon, Subspace, add_scaled
from .nilpotent import StructureTable, sort_key
from .scalars import QQ, Field
from .terms import LiePoly, LieTerm, Word, evaluate, mdeg_support, word_mdeg


def format_left_normed(w: Word) -> str:
    if len(w) == 1:
        return f"a{w[0]}"
    return "[" + ",".join(f"a{i}" for i in w) + "]"


# --------------------------------------------------------------------------
# the free metabelian algebra


def free_reduce(word: Word) -> dict[Word, int]:
    """Expand a left-normed word in the free metabelian basis."""
    if len(word) == 1:
        return {word: 1}
    i, j, *tail = word
    if i == j:
        return {}
    sign = 1
    if i < j:
        i, j, sign = j, i, -1
    b = min(word)
    if j == b:
        return {(i, b, *sorted(tail)): sign}
    # b sits in the tail; Jacobi on the first three letters:
    # [a_i, a_j, a_b, rest] = [a_i, a_b, a_j, rest] - [a_j, a_b, a_i, rest]
    rest = list(tail)
    rest.remove(b)
    return {
        (i, b, *sorted(rest + [j])): sign,
        (j, b, *sorted(rest + [i])): -sign,
    }


def free_bracket(u: Word, v: Word) -> dict[Word, int]:
    """Bracket of two free metabelian basis monomials."""
    if len(u) > 1 and len(v) > 1:
        return {}
    if len(v) == 1:
        return free_reduce(u + v)
    return {w: -c for w, c in free_reduce(v + u).items()}


def free_basis(d: tuple[int, ...]) -> list[Word]:
    """Free metabelian basis of multidegree ``d``: ``[a_i, a_b, sorted rest]``, ``i > b``."""
    letters = [i for i, k in enumerate(d, 1) for _ in range(k)]
    if not letters:
        raise InputError("zero multidegree")
    if len(letters) == 1:
        return [tuple(letters)]
    b = letters[0]
    out = []
    for i in sorted(mdeg_support(d)):
        if i == b:
            continue
        rest = list(letters)
        rest.remove(b)
        rest.remove(i)
        out.append((i, b, *rest))
    return out


# --------------------------------------------------------------------------
# partially commutative quotient


def basis_for_multidegree(g: Graph, d: tuple[int, ...]) -> list[Word]:
    """Canonical basis monomials of ``M(A;G)`` in multidegree ``d``.

    Length 1: the generator.  Otherwise one monomial ``[a_t, a_b, sorted rest]``
    per connected component of ``G`` on the support other than the one holding
    the smallest vertex ``b``, with ``a_t`` that component's largest vertex.
    """
    if len(d) != g.n:
        raise InputError(f"multidegree length {len(d)} does not match n={g.n}")
    if not any(d):
        raise InputError("zero multidegree")
    letters = [i for i, k in enumerate(d, 1) for _ in range(k)]
    if len(letters) == 1:
        return [tuple(letters)]
    comps = connected_components(g, mdeg_support(d))
    b = letters[0]
    out = []
    for comp in comps[1:]:
        top = max(comp)
        rest = list(letters)
        rest.remove(b)
        rest.remove(top)
        out.append((top, b, *rest))
    return sorted(out)


@dataclass(frozen=True)
class RelationSpace:
    """Relations of multidegree d as a subspace over the free metabelian basis."""

    words: tuple[Word, ...]
    subspace: Subspace

    @property
    def rank(self) -> int:
        return self.subspace.dim


def relation_generators(g: Graph, d: tuple[int, ...]) -> list[dict[Word, int]]:
    """``[a_i, a_j, tail]`` for each edge inside the support, in free coordinates."""
    letters = [i for i, k in enumerate(d, 1) for _ in range(k)]
    if len(letters) < 2:
        return []
    out = []
    for i, j in g.sorted_edges():
        rest = list(letters)
        try:
            rest.remove(i)
            rest.remove(j)
        except ValueError:
            continue
        v = free_reduce((i, j, *rest))
        if v:
            out.append(v)
    return out


def relation_subspace(g: Graph, d: tuple[int, ...], field: Field = QQ) -> RelationSpace:
    if sum(d) < 2:
        raise InputError("relation subspace needs total degree >= 2")
    words = tuple(free_basis(d))
    col = {w: c for c, w in enumerate(words)}
    rows = [{col[w]: field(c) for w, c in v.items()} for v in relation_generators(g, d)]
    return RelationSpace(words, Subspace(field, len(words), rows))


class _Reducer:
    """Projection of a multidegree component onto the canonical basis."""

    def __init__(self, g: Graph, d: tuple[int, ...], field: Field):
        self.basis = basis_for_multidegree(g, d)
        chosen = set(self.basis)
        free = free_basis(d)
        # non-basis columns first so that they become pivots
        self.words = [w for w in free if w not in chosen] + [w for w in free if w in chosen]
        missing = chosen - set(free)
        if missing:
            raise InvariantViolation(f"basis monomials {sorted(missing)} are not free basis words")
        self.col = {w: c for c, w in enumerate(self.words)}
        self.ech = Echelon(field)
        for v in relation_generators(g, d):
            self.ech.add({self.col[w]: field(c) for w, c in v.items()})
        n_rel = len(self.words) - len(self.basis)
        if self.ech.rank != n_rel or any(p >= n_rel for p in self.ech.rows):
            raise InvariantViolation(
                f"multidegree {d}: relations do not complement the canonical basis "
                f"(rank {self.ech.rank}, expected {n_rel})")

    def reduce(self, v: Mapping[Word, object]) -> dict[Word, object]:
        red = self.ech.reduce({self.col[w]: c for w, c in v.items()})
        return {self.words[c]: x for c, x in red.items()}


class MetabelianAlgebra:
    """``M(A;G)`` over a field; elements are :class:`LiePoly` over the canonical basis."""

    def __init__(self, graph: Graph, field: Field = QQ):
        self.graph = graph
        self.field = field
        self.signature = (("metabelian", None), graph, field)
        self._reducers: dict[tuple, _Reducer] = {}
        self._lock = threading.Lock()

    def reducer(self, d: tuple[int, ...]) -> _Reducer:
        r = self._reducers.get(d)
        if r is None:
            r = _Reducer(self.graph, d, self.field)
            with self._lock:
                r = self._reducers.setdefault(d, r)
        return r

    def sort_key(self, w: Word):
        return sort_key(w)

    def format_key(self, w: Word) -> str:
        return format_left_normed(w)

    def generator(self, i: int) -> LiePoly:
        if not 1 <= i <= self.graph.n:
            raise InputError(f"generator a{i} out of range 1..{self.graph.n}")
        return LiePoly._raw(self, {(i,): self.field.one})

    def zero(self) -> LiePoly:
        return LiePoly._raw(self, {})

    def project(self, free: Mapping[Word, object]) -> LiePoly:
        """Normal form of an element given in free metabelian coordinates."""
        groups: dict = defaultdict(dict)
        n = self.graph.n
        for w, c in free.items():
            if c:
                groups[word_mdeg(w, n)][w] = c
        out = {}
        for d, v in groups.items():
            if sum(d) == 1:
                out.update(v)
            else:
                out.update(self.reducer(d).reduce(v))
        return LiePoly._raw(self, out)

    def bracket(self, p: LiePoly, q: LiePoly) -> LiePoly:
        p._check(q)
        acc: dict = {}
        f = self.field
        for u, x in p.terms.items():
            for v, y in q.terms.items():
                fb = free_bracket(u, v)
                if fb:
                    add_scaled(acc, {w: f(c) for w, c in fb.items()}, x * y)
        return self.project(acc)

    def nf(self, t: LieTerm) -> LiePoly:
        return evaluate(self, t)

    def element(self, text: str) -> LiePoly:
        from .terms import parse_expr
        return self.nf(parse_expr(text, self.graph.n))

    def basis(self, d: tuple[int, ...]) -> list[Word]:
        return basis_for_multidegree(self.graph, d)

    def basis_upto(self, k: int) -> list[Word]:
        out = []
        for deg in range(1, k + 1):
            for d in freelie.multidegrees(self.graph.n, deg):
                out += basis_for_multidegree(self.graph, d)
        return sorted(out, key=sort_key)

    def table(self, k: int) -> StructureTable:
        return metabelian_table(self.graph, k, self.field, algebra=self)


def nf_metabelian(g: Graph, t: LieTerm, field: Field = QQ) -> LiePoly:
    return MetabelianAlgebra(g, field).nf(t)


def bracket_metabelian(p: LiePoly, q: LiePoly) -> LiePoly:
    if not isinstance(p.ctx, MetabelianAlgebra):
        raise TypeError("bracket_metabelian expects metabelian elements")
    return p.ctx.bracket(p, q)


def metabelian_table(g: Graph, k: int, field: Field = QQ,
                     algebra: MetabelianAlgebra | None = None) -> StructureTable:
    """Structure table of ``M(A;G)`` modulo everything of degree > k."""
    if k < 1:
        raise InputError(f"truncation degree must be positive, got {k}")
    alg = algebra or MetabelianAlgebra(g, field)
    keys = alg.basis_upto(k)
    index = {w: i for i, w in enumerate(keys)}
    brackets = {}
    for a, u in enumerate(keys):
        pu = LiePoly._raw(alg, {u: field.one})
        for b in range(a + 1, len(keys)):
            v = keys[b]
            if len(u) + len(v) > k:
                break
            r = alg.bracket(pu, LiePoly._raw(alg, {v: field.one}))
            if r:
                brackets[(a, b)] = {index[w]: c for w, c in r.terms.items()}
    return StructureTable(g, field, ("metabelian", k), keys, brackets, format_left_normed)
