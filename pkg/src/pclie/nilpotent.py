"""Finite-dimensional graded Lie algebras given by structure constants.

:class:`StructureTable` is the common computation surface: the nilpotent
quotient ``N_m(A;G)`` is built here from the Lyndon basis of the free Lie
algebra, and :mod:`pclie.metabelian` builds degree-truncated metabelian tables
of the same type.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from typing import Callable, Iterable, Mapping

from . import freelie
from .errors import CapExceeded, ContextMismatch, InputError, InvariantViolation
from .graphs import Graph
from .linalg import Echelon, add_scaled
from .scalars import QQ, Field
from .terms import LiePoly, LieTerm, Word, evaluate, word_mdeg

log = logging.getLogger(__name__)

DEFAULT_DIMENSION_CAP = 20000


def sort_key(w: Word):
    return (len(w), w)


class StructureTable:
    """Graded basis plus exact bracket coefficients.

    ``keys`` are canonical monomials (tuples of generator indices) sorted by
    degree, then lexicographically.  ``brackets[(i, j)]`` for ``i < j`` is the
    sparse expansion of ``[keys[i], keys[j]]``; missing pairs bracket to 0.
    Brackets whose degree exceeds ``degree_cap`` vanish.
    """

    def __init__(self, graph: Graph, field: Field, variety: tuple[str, int],
                 keys: Iterable[Word], brackets: Mapping[tuple[int, int], dict],
                 formatter: Callable[[Word], str]):
        self.graph = graph
        self.field = field
        self.variety = variety
        self.degree_cap = variety[1]
        self.keys: list[Word] = sorted(keys, key=sort_key)
        self.index = {k: i for i, k in enumerate(self.keys)}
        self.degrees = [len(k) for k in self.keys]
        self.mdegs = [word_mdeg(k, graph.n) for k in self.keys]
        self.supports = [frozenset(k) for k in self.keys]
        self.brackets = dict(brackets)
        self._format = formatter
        self.signature = (variety, graph, field)

    # basic facts
    @property
    def dim(self) -> int:
        return len(self.keys)

    @property
    def name(self) -> str:
        kind, k = self.variety
        return f"{kind}:{k}"

    def sort_key(self, w: Word):
        return sort_key(w)

    def format_key(self, w: Word) -> str:
        return self._format(w)

    def dims_by_degree(self) -> list[int]:
        out = [0] * self.degree_cap
        for d in self.degrees:
            out[d - 1] += 1
        return out

    def dims_by_mdeg(self) -> dict[tuple[int, ...], int]:
        out: dict = defaultdict(int)
        for d in self.mdegs:
            out[d] += 1
        return dict(sorted(out.items(), key=lambda kv: (sum(kv[0]), tuple(-x for x in kv[0]))))

    def indices_of_degree(self, d: int) -> list[int]:
        return [i for i, k in enumerate(self.degrees) if k == d]

    def indices_upto(self, d: int) -> list[int]:
        return [i for i, k in enumerate(self.degrees) if k <= d]

    # vectors
    def bracket_index(self, i: int, j: int) -> dict:
        if i < j:
            return self.brackets.get((i, j), {})
        if i > j:
            b = self.brackets.get((j, i))
            return {k: -c for k, c in b.items()} if b else {}
        return {}

    def bracket_vectors(self, u: Mapping, v: Mapping) -> dict:
        out: dict = {}
        for i, x in u.items():
            for j, y in v.items():
                if i == j:
                    continue
                if i < j:
                    b = self.brackets.get((i, j))
                    c = x * y
                else:
                    b = self.brackets.get((j, i))
                    c = -(x * y)
                if b:
                    add_scaled(out, b, c)
        return out

    def vector(self, p: LiePoly) -> dict:
        if p.ctx.signature != self.signature:
            raise ContextMismatch("element does not belong to this table")
        return {self.index[k]: c for k, c in p.terms.items()}

    def poly(self, v: Mapping) -> LiePoly:
        return LiePoly._raw(self, {self.keys[i]: c for i, c in v.items() if c})

    def basis_element(self, i: int) -> LiePoly:
        return LiePoly._raw(self, {self.keys[i]: self.field.one})

    # LiePoly surface
    def generator(self, i: int) -> LiePoly:
        if not 1 <= i <= self.graph.n:
            raise InputError(f"generator a{i} out of range 1..{self.graph.n}")
        return self.basis_element(self.index[(i,)])

    def zero(self) -> LiePoly:
        return LiePoly._raw(self, {})

    def bracket(self, p: LiePoly, q: LiePoly) -> LiePoly:
        return self.poly(self.bracket_vectors(self.vector(p), self.vector(q)))

    def nf(self, t: LieTerm) -> LiePoly:
        return evaluate(self, t)

    def element(self, text: str) -> LiePoly:
        from .terms import parse_expr
        return self.nf(parse_expr(text, self.graph.n))

    # self-checks
    def identity_defects(self) -> list[tuple]:
        """Basis pairs/triples violating anticommutativity, grading or Jacobi.

        Triples are taken with ``i <= j <= k``; Jacobi is symmetric up to sign,
        so this covers every ordered triple.
        """
        bad = []
        for (i, j), b in self.brackets.items():
            if self.bracket_index(j, i) != {k: -c for k, c in b.items()}:
                bad.append(("anticommutativity", i, j))
            target = tuple(x + y for x, y in zip(self.mdegs[i], self.mdegs[j]))
            if any(self.mdegs[k] != target for k in b):
                bad.append(("grading", i, j))
        one = self.field.one
        D, cap = self.dim, self.degree_cap
        for i in range(D):
            for j in range(i, D):
                if self.degrees[i] + self.degrees[j] >= cap:
                    continue
                for k in range(j, D):
                    if self.degrees[i] + self.degrees[j] + self.degrees[k] > cap:
                        break
                    u, v, w = {i: one}, {j: one}, {k: one}
                    total = self.bracket_vectors(self.bracket_vectors(u, v), w)
                    add_scaled(total, self.bracket_vectors(self.bracket_vectors(v, w), u), one)
                    add_scaled(total, self.bracket_vectors(self.bracket_vectors(w, u), v), one)
                    if total:
                        bad.append(("jacobi", i, j, k))
        return bad

    # reports
    def dim_report(self) -> dict:
        return {
            "by_degree": self.dims_by_degree(),
            "by_multidegree": self.dims_by_mdeg(),
            "total": self.dim,
        }

    def dump(self) -> str:
        """One line ``u v w c`` per nonzero coefficient of ``[u, v] = ... + c w``."""
        lines = []
        f = self.field
        for (i, j) in sorted(self.brackets):
            for k, c in sorted(self.brackets[(i, j)].items()):
                lines.append(f"{i} {j} {k} {f.format(c)}")
        return "\n".join(lines) + ("\n" if lines else "")

    def basis_listing(self) -> str:
        return "\n".join(f"{i} {self.format_key(k)}" for i, k in enumerate(self.keys)) + "\n"

    def __repr__(self):
        return f"StructureTable({self.name}, {self.graph!r}, {self.field!r}, dim={self.dim})"


# --------------------------------------------------------------------------
# nilpotent quotients


class _FreeWindow:
    """Per-multidegree Lyndon column layout shared by all graphs with the same n."""

    def __init__(self, n: int, m: int):
        self.n = n
        self.m = m
        self.words: dict[tuple, list[Word]] = defaultdict(list)
        for w in freelie.lyndon_words(n, m):
            self.words[word_mdeg(w, n)].append(w)
        for ws in self.words.values():
            ws.sort(key=sort_key)
        self.col = {w: c for ws in self.words.values() for c, w in enumerate(ws)}

    def bracket(self, u: Word, v: Word) -> dict:
        return {self.col[w]: c for w, c in freelie.bracket_words(u, v)}


_windows: dict[tuple[int, int], _FreeWindow] = {}


def _window(n: int, m: int) -> _FreeWindow:
    key = (n, m)
    if key not in _windows:
        _windows[key] = _FreeWindow(n, m)
    return _windows[key]


def _add_mdeg(d, i):
    return d[: i - 1] + (d[i - 1] + 1,) + d[i:]


def relation_components(g: Graph, m: int, field: Field) -> dict[tuple, Echelon]:
    """Graph-relation ideal of the free Lie algebra, per multidegree up to degree m.

    Degree 2 is spanned by ``[a_i, a_j]`` over edges; degree d is spanned by
    brackets of the degree d-1 component with generators.  Pivots prefer the
    latest Lyndon column so that the earliest monomials survive.
    """
    win = _window(g.n, m)
    latest_first = lambda c: -c
    comps: dict[tuple, Echelon] = {}

    def comp(d):
        if d not in comps:
            comps[d] = Echelon(field, latest_first)
        return comps[d]

    for i, j in g.sorted_edges():
        d = word_mdeg((i, j), g.n)
        comp(d).add(_convert(win.bracket((i,), (j,)), field))
    for deg in range(3, m + 1):
        prev = [d for d in comps if sum(d) == deg - 1]
        for d in sorted(prev):
            ws = win.words[d]
            for row in comps[d].basis():
                for k in range(1, g.n + 1):
                    v: dict = {}
                    for c, x in row.items():
                        add_scaled(v, _convert(win.bracket(ws[c], (k,)), field), x)
                    if v:
                        comp(_add_mdeg(d, k)).add(v)
    return comps


def _convert(v: Mapping, field: Field) -> dict:
    out = {}
    for k, x in v.items():
        y = field(x)
        if y:
            out[k] = y
    return out


def build_structure(g: Graph, m: int, field: Field = QQ,
                    cap: int = DEFAULT_DIMENSION_CAP) -> StructureTable:
    """Structure table of ``N_m(A;G)`` over ``field``."""
    if m < 2:
        raise InputError(f"nilpotency degree must be at least 2, got {m}")
    predicted = freelie.free_dimension_upto(g.n, m)
    if predicted > cap:
        raise CapExceeded(f"predicted dimension {predicted} exceeds cap {cap}; lower m or n")
    win = _window(g.n, m)
    rel = relation_components(g, m, field)

    keys = []
    for d, ws in win.words.items():
        pivots = set(rel[d].rows) if d in rel else set()
        keys += [w for c, w in enumerate(ws) if c not in pivots]
    keys.sort(key=sort_key)
    index = {k: i for i, k in enumerate(keys)}

    brackets = {}
    for a, u in enumerate(keys):
        for b in range(a + 1, len(keys)):
            v = keys[b]
            if len(u) + len(v) > m:
                break  # keys sorted by degree
            vec = _convert(win.bracket(u, v), field)
            if not vec:
                continue
            d = freelie_mdeg_sum(u, v, g.n)
            if d in rel:
                vec = rel[d].reduce(vec)
            if not vec:
                continue
            ws = win.words[d]
            out = {}
            for c, x in vec.items():
                w = ws[c]
                if w not in index:
                    raise InvariantViolation(f"reduced bracket left non-basis monomial {w}")
                out[index[w]] = x
            brackets[(a, b)] = out
    tbl = StructureTable(g, field, ("nilpotent", m), keys, brackets, freelie.format_lyndon)
    log.debug("built %r", tbl)
    return tbl


def freelie_mdeg_sum(u: Word, v: Word, n: int) -> tuple[int, ...]:
    return word_mdeg(u + v, n)


def truncated_free(g: Graph, k: int, field: Field = QQ,
                   cap: int = DEFAULT_DIMENSION_CAP) -> StructureTable:
    """Degree <= k window of the partially commutative Lie algebra L(A;G).

    The natural map from the degree <= k part of L(A;G) onto N_k(A;G) is a
    linear bijection, so this is ``build_structure(g, k)``.
    """
    return build_structure(g, k, field, cap)


def nf_nilpotent(tbl: StructureTable, t: LieTerm) -> LiePoly:
    return tbl.nf(t)


def bracket_nilpotent(tbl: StructureTable, p: LiePoly, q: LiePoly) -> LiePoly:
    for x in (p, q):
        if x.ctx.signature != tbl.signature:
            raise ContextMismatch("element does not belong to this table")
    return tbl.bracket(p, q)


def dim_report(tbl: StructureTable) -> dict:
    return tbl.dim_report()
