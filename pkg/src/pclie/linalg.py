"""Sparse exact linear algebra over a :class:`~pclie.scalars.Field`.

Vectors are ``dict[int, scalar]`` with no stored zeros.  Everything here is
exact; the field only matters for producing ``1/x``.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping, Sequence

Vector = dict


def add_scaled(target: dict, source: Mapping, c) -> None:
    """``target += c * source`` in place, dropping zeros."""
    for col, val in source.items():
        new = target.get(col, 0) + c * val
        if new:
            target[col] = new
        else:
            target.pop(col, None)


def scale(v: Mapping, c) -> dict:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


class Echelon:
    """Incrementally maintained fully reduced row echelon form.

    ``order`` ranks columns for pivot choice: the pivot of a new row is its
    nonzero column with the smallest ``order`` key.
    """

    def __init__(self, field, order: Callable[[int], object] | None = None):
        self.field = field
        self.order = order
        self.rows: dict[int, dict] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Mapping) -> dict:
        w = dict(v)
        for p in [c for c in w if c in self.rows]:
            c = w.get(p)
            if c:
                add_scaled(w, self.rows[p], -c)
        return w

    def add(self, v: Mapping) -> bool:
        w = self.reduce(v)
        if not w:
            return False
        pivot = min(w, key=self.order) if self.order else min(w)
        inv = self.field.one / w[pivot]
        w = {k: inv * x for k, x in w.items()}
        for row in self.rows.values():
            c = row.get(pivot)
            if c:
                add_scaled(row, w, -c)
        self.rows[pivot] = w
        return True

    def extend(self, vectors: Iterable[Mapping]) -> "Echelon":
        for v in vectors:
            self.add(v)
        return self

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def pivots(self) -> list[int]:
        return sorted(self.rows, key=self.order) if self.order else sorted(self.rows)

    def basis(self) -> list[dict]:
        return [self.rows[p] for p in self.pivots()]


class Subspace:
    """Subspace of ``field^dim`` in canonical reduced row echelon form.

    Columns are ordered by index; equality is equality of the canonical rows.
    """

    __slots__ = ("field", "dim_ambient", "_ech", "_key")

    def __init__(self, field, dim_ambient: int, vectors: Iterable[Mapping] = ()):
        self.field = field
        self.dim_ambient = dim_ambient
        self._ech = Echelon(field)
        for v in vectors:
            for c in v:
                if not 0 <= c < dim_ambient:
                    raise IndexError(f"coordinate {c} outside ambient dimension {dim_ambient}")
            self._ech.add(v)
        self._key = tuple(
            tuple(sorted(row.items())) for row in self._ech.basis()
        )

    @property
    def dim(self) -> int:
        return len(self._key)

    @property
    def rows(self) -> list[dict]:
        return [dict(r) for r in self._key]

    @property
    def pivots(self) -> list[int]:
        return [r[0][0] for r in self._key]

    def contains(self, v: Mapping) -> bool:
        return self._ech.contains(v)

    def reduce(self, v: Mapping) -> dict:
        return self._ech.reduce(v)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field == other.field and self.dim_ambient == other.dim_ambient
                and self._key == other._key)

    def __hash__(self):
        return hash((self.dim_ambient, self._key))

    def __le__(self, other: Subspace) -> bool:
        return all(other.contains(r) for r in self.rows)

    def __add__(self, other: Subspace) -> Subspace:
        return Subspace(self.field, self.dim_ambient, self.rows + other.rows)

    def intersect(self, other: Subspace) -> Subspace:
        return Subspace(self.field, self.dim_ambient,
                        intersection(self.field, self.dim_ambient, self.rows, other.rows))

    def restrict_to(self, columns: Iterable[int]) -> Subspace:
        """Intersection with the coordinate subspace spanned by ``columns``."""
        allowed = set(columns)
        coord = [{c: self.field.one} for c in sorted(allowed)]
        return self.intersect(Subspace(self.field, self.dim_ambient, coord))

    def dense(self) -> list[list]:
        zero = self.field.zero
        out = []
        for row in self._key:
            d = [zero] * self.dim_ambient
            for c, x in row:
                d[c] = x
            out.append(d)
        return out

    @classmethod
    def whole(cls, field, dim: int) -> Subspace:
        return cls(field, dim, ({i: field.one} for i in range(dim)))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.dim_ambient})"


def rank(field, vectors: Iterable[Mapping]) -> int:
    return Echelon(field).extend(vectors).rank


def kernel(field, images: Sequence[Mapping], offset: int | None = None) -> list[dict]:
    """Basis of ``{c : sum_j c_j images[j] = 0}`` as vectors indexed by ``j``."""
    if offset is None:
        offset = 1 + max((c for v in images for c in v), default=-1)
    ech = Echelon(field)
    one = field.one
    for j, img in enumerate(images):
        row = dict(img)
        row[offset + j] = one
        ech.add(row)
    out = []
    for p, row in ech.rows.items():
        if p >= offset:
            out.append({c - offset: x for c, x in row.items()})
    return out


def intersection(field, dim: int, us: Sequence[Mapping], ws: Sequence[Mapping]) -> list[dict]:
    """Zassenhaus: rows ``(u|u)`` and ``(w|0)``; zero left halves give the meet."""
    ech = Echelon(field)
    for u in us:
        row = dict(u)
        row.update({dim + c: x for c, x in u.items()})
        ech.add(row)
    for w in ws:
        ech.add(w)
    out = []
    for p, row in ech.rows.items():
        if p >= dim:
            out.append({c - dim: x for c, x in row.items()})
    return out
