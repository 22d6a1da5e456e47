"""Exhaustive search for direct-sum splittings of a small nilpotent quotient over GF(p).

Stage 1 enumerates every proper nonzero subspace of GF(p)^D in reduced row
echelon form and keeps those closed under the bracket.  Stage 2 runs over the
closed subspaces ``L1`` with ``dim L1 <= D/2``, sparsest first.  A partner
``L2`` must lie in the centralizer of ``L1``, so only subspaces of that
centralizer with the complementary dimension are examined; they must be
closed and meet ``L1`` trivially.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator

from .analysis import Decomposition, verify_split
from .errors import CapExceeded, InputError
from .graphs import Graph
from .linalg import Subspace
from .nilpotent import StructureTable, build_structure
from .scalars import PrimeField

log = logging.getLogger(__name__)

DEFAULT_ORACLE_CAP = 8

Vec = tuple  # tuple[int, ...] of residues mod p


def rref_subspaces(D: int, k: int, p: int) -> Iterator[tuple[Vec, ...]]:
    """All k-dimensional subspaces of GF(p)^D as RREF row tuples, in a fixed order."""
    for pivots in combinations(range(D), k):
        pivset = set(pivots)
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, D) if c not in pivset]
        for values in product(range(p), repeat=len(free)):
            rows = [[0] * D for _ in range(k)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), x in zip(free, values):
                rows[r][c] = x
            yield tuple(tuple(row) for row in rows)


def rref(vectors, D: int, p: int) -> tuple[Vec, ...]:
    rows = [list(v) for v in vectors]
    out = []
    r = 0
    for c in range(D):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
    return tuple(tuple(row) for row in rows[:r])


def subspace_order(rows: tuple[Vec, ...]):
    """Search order: fewest nonzero entries first, then the RREF rows themselves."""
    return (sum(1 for r in rows for x in r if x), rows)


class _Algebra:
    """Dense integer view of a GF(p) structure table."""

    def __init__(self, tbl: StructureTable):
        self.p = tbl.field.p
        self.D = tbl.dim
        p, D = self.p, self.D
        self.table = [[None] * D for _ in range(D)]
        for i in range(D):
            for j in range(D):
                b = tbl.bracket_index(i, j)
                if b:
                    self.table[i][j] = [(k, int(c.value)) for k, c in b.items()]

    def bracket(self, u: Vec, v: Vec) -> list[int]:
        out = [0] * self.D
        for i, x in enumerate(u):
            if not x:
                continue
            row = self.table[i]
            for j, y in enumerate(v):
                if y and row[j]:
                    xy = x * y
                    for k, c in row[j]:
                        out[k] += xy * c
        p = self.p
        return [x % p for x in out]

    def in_span(self, rows: tuple[Vec, ...], v: list[int]) -> bool:
        v = list(v)
        p = self.p
        for row in rows:
            pc = next(c for c, x in enumerate(row) if x)
            f = v[pc]
            if f:
                v = [(a - f * b) % p for a, b in zip(v, row)]
        return not any(v)

    def closed(self, rows: tuple[Vec, ...]) -> bool:
        return all(self.in_span(rows, self.bracket(rows[i], rows[j]))
                   for i in range(len(rows)) for j in range(i + 1, len(rows)))

    def centralizer(self, rows: tuple[Vec, ...]) -> tuple[Vec, ...]:
        """Basis (RREF) of ``{y : [y, r] = 0 for every row r}``."""
        p, D = self.p, self.D
        # linear map y -> ([y, r] for r in rows); columns indexed by basis e_j
        eqs = []
        for r in rows:
            images = [self.bracket(tuple(1 if t == j else 0 for t in range(D)), r) for j in range(D)]
            for k in range(D):
                eqs.append([images[j][k] for j in range(D)])
        red = rref(eqs, D, p) if eqs else ()
        pivots = [next(c for c, x in enumerate(row) if x) for row in red]
        basis = []
        for fcol in (c for c in range(D) if c not in pivots):
            y = [0] * D
            y[fcol] = 1
            for row, pc in zip(red, pivots):
                y[pc] = (-row[fcol]) % p
            basis.append(tuple(y))
        return rref(basis, D, p) if basis else ()


@dataclass
class OracleResult:
    graph: Graph
    m: int
    p: int
    D: int
    found: bool
    decomposition: Decomposition | None
    subspaces_enumerated: int
    closed_subspaces: int
    candidates_examined: int

    def to_text(self, tbl: StructureTable | None = None) -> str:
        head = (f"oracle: GF({self.p}) N_{self.m} D={self.D} "
                f"subspaces={self.subspaces_enumerated} closed={self.closed_subspaces} "
                f"candidates={self.candidates_examined}")
        if not self.found:
            return head + "\noracle: exhausted, none found\n"
        return head + "\noracle: found\n" + self.decomposition.to_text(tbl)


def search_decomposition(g: Graph, m: int, p: int, cap: int = DEFAULT_ORACLE_CAP,
                         table: StructureTable | None = None) -> OracleResult:
    """First verified two-summand split of N_m(A;G) over GF(p), or exhaustion."""
    field = PrimeField(p)
    tbl = table if table is not None else build_structure(g, m, field)
    if tbl.field != field:
        raise InputError("table field does not match p")
    D = tbl.dim
    if D > cap:
        raise CapExceeded(f"dimension {D} exceeds oracle cap {cap}; lower m or n")
    alg = _Algebra(tbl)

    closed: dict[int, list[tuple[Vec, ...]]] = {k: [] for k in range(1, D)}
    closed_set: set[tuple[Vec, ...]] = set()
    enumerated = 0
    for k in range(1, D):
        for rows in rref_subspaces(D, k, p):
            enumerated += 1
            if alg.closed(rows):
                closed[k].append(rows)
                closed_set.add(rows)
    n_closed = len(closed_set)
    log.debug("D=%d: %d subspaces, %d closed", D, enumerated, n_closed)

    examined = 0
    for k in range(1, D // 2 + 1):
        for l1 in sorted(closed[k], key=subspace_order):
            cent = alg.centralizer(l1)
            c = len(cent)
            if c < D - k:
                continue
            partners = []
            for coeffs in rref_subspaces(c, D - k, p):
                examined += 1
                vecs = [tuple(sum(a * b for a, b in zip(col, comp)) % p
                              for comp in zip(*cent)) for col in coeffs]
                l2 = rref(vecs, D, p)
                if l2 in closed_set and len(rref(l1 + l2, D, p)) == D:
                    partners.append(l2)
            if partners:
                l2 = min(partners, key=subspace_order)
                dec = Decomposition(
                    "subspace-split",
                    subspaces=[_to_subspace(field, D, l1), _to_subspace(field, D, l2)],
                    variety=f"nilpotent:{m}", field_name=repr(field))
                dec.report = verify_split(tbl, dec)
                return OracleResult(g, m, p, D, True, dec, enumerated, n_closed, examined)
    return OracleResult(g, m, p, D, False, None, enumerated, n_closed, examined)


def _to_subspace(field: PrimeField, D: int, rows) -> Subspace:
    return Subspace(field, D, ({c: field(x) for c, x in enumerate(r) if x} for r in rows))
