"""Centralizers and direct-sum decompositions.

Vertex-level facts come from the complement graph: the grouping of an element
into complement components, the adjacency hull of a support, and the
decomposability criterion.  The linear-algebra side (kernels, spans,
verification of a split) runs on a :class:`StructureTable`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import ContextMismatch, InputError, InvariantViolation
from .graphs import Graph, complement, connected_components, induced_subgraph
from .linalg import Subspace, kernel
from .metabelian import metabelian_table
from .nilpotent import StructureTable, build_structure, truncated_free
from .scalars import QQ, Field
from .terms import LiePoly

VertexSet = frozenset


def format_vertices(vs) -> str:
    return "{" + ",".join(f"a{i}" for i in sorted(vs)) + "}"


# --------------------------------------------------------------------------
# varieties


@dataclass(frozen=True)
class Variety:
    """``nilpotent:m``, ``free:k`` (degree <= k window) or ``metabelian:k`` (truncated)."""

    kind: str
    degree: int

    def __str__(self):
        return f"{self.kind}:{self.degree}"

    @classmethod
    def parse(cls, text: str, default_degree: int = 4) -> Variety:
        kind, _, deg = text.strip().partition(":")
        kind = kind.lower()
        if kind not in ("nilpotent", "free", "metabelian"):
            raise InputError(f"unknown variety {text!r}")
        if not deg:
            if kind != "metabelian":
                raise InputError(f"variety {kind} needs a degree, e.g. {kind}:3")
            degree = default_degree
        else:
            try:
                degree = int(deg)
            except ValueError:
                raise InputError(f"bad degree in variety {text!r}") from None
        if kind in ("nilpotent", "free") and degree < 2:
            raise InputError(f"{kind} degree must be at least 2, got {degree}")
        if degree < 1:
            raise InputError(f"degree must be positive, got {degree}")
        return cls(kind, degree)


def build_table(g: Graph, variety: Variety | str, field: Field = QQ,
                cap: int | None = None) -> StructureTable:
    if isinstance(variety, str):
        variety = Variety.parse(variety)
    kwargs = {} if cap is None else {"cap": cap}
    if variety.kind == "nilpotent":
        return build_structure(g, variety.degree, field, **kwargs)
    if variety.kind == "free":
        return truncated_free(g, variety.degree, field, **kwargs)
    return metabelian_table(g, variety.degree, field)


# --------------------------------------------------------------------------
# centralizers


def component_split(g: Graph, x: LiePoly) -> list[tuple[VertexSet, LiePoly]]:
    """Group the monomials of ``x`` by the complement components of its support."""
    if not x:
        raise InputError("zero element has no component split")
    comps = connected_components(complement(g), x.support())
    parts = []
    for comp in comps:
        terms = {w: c for w, c in x.terms.items() if set(w) <= comp}
        parts.append((comp, LiePoly._raw(x.ctx, terms)))
    if sum(len(p.terms) for _, p in parts) != len(x.terms):
        raise InvariantViolation("a basis monomial straddles two complement components")
    return parts


theorem1_split = component_split  # name used by the published interface


def adjacency_hull(g: Graph, s) -> VertexSet:
    """Vertices outside ``s`` adjacent to every vertex of ``s``."""
    s = set(s)
    return frozenset(v for v in g.vertices if v not in s and all(g.adjacent(v, u) for u in s))


@dataclass
class CentralizerDescription:
    parts: list[tuple[VertexSet, LiePoly]]
    hull: VertexSet
    predicted: Subspace


def _require_element(tbl: StructureTable, x: LiePoly):
    if x.ctx.signature != tbl.signature:
        raise ContextMismatch("element does not belong to this table")
    if not x:
        raise InputError("centralizer of zero is the whole algebra; pass a nonzero element")


def describe_centralizer(tbl: StructureTable, x: LiePoly) -> CentralizerDescription:
    _require_element(tbl, x)
    parts = component_split(tbl.graph, x)
    hull = adjacency_hull(tbl.graph, x.support())
    vectors = [tbl.vector(p) for _, p in parts]
    vectors += [{i: tbl.field.one} for i, s in enumerate(tbl.supports) if s <= hull]
    return CentralizerDescription(parts, hull, Subspace(tbl.field, tbl.dim, vectors))


def centralizer_predicted(tbl: StructureTable, x: LiePoly) -> Subspace:
    """Lines through the component parts of ``x`` plus everything supported in the hull."""
    return describe_centralizer(tbl, x).predicted


def _centralizer_on(tbl: StructureTable, x: LiePoly, domain: Sequence[int]) -> Subspace:
    xv = tbl.vector(x)
    images = [tbl.bracket_vectors({j: tbl.field.one}, xv) for j in domain]
    sols = kernel(tbl.field, images, offset=tbl.dim)
    return Subspace(tbl.field, tbl.dim, ({domain[k]: c for k, c in s.items()} for s in sols))


def centralizer_computed(tbl: StructureTable, x: LiePoly) -> Subspace:
    """Kernel of ``y -> [y, x]`` on the whole table."""
    _require_element(tbl, x)
    return _centralizer_on(tbl, x, list(range(tbl.dim)))


@dataclass
class CentralizerComparison:
    """Computed vs predicted centralizer, both restricted to degrees <= ``window``.

    For ``y`` of degree <= m - (longest monomial of x), every product
    ``[y, x]`` stays inside degree m, where N_m agrees with L(A;G).  Above the
    window truncation makes extra elements central, so only the window is
    compared.
    """

    window: int
    computed: Subspace
    predicted: Subspace
    full_kernel: Subspace
    description: CentralizerDescription

    @property
    def match(self) -> bool:
        return self.computed == self.predicted


def compare_centralizer(tbl: StructureTable, x: LiePoly) -> CentralizerComparison:
    _require_element(tbl, x)
    window = tbl.degree_cap - max(len(w) for w in x.terms)
    domain = tbl.indices_upto(window)
    desc = describe_centralizer(tbl, x)
    return CentralizerComparison(
        window=window,
        computed=_centralizer_on(tbl, x, domain),
        predicted=desc.predicted.restrict_to(domain),
        full_kernel=centralizer_computed(tbl, x),
        description=desc,
    )


# --------------------------------------------------------------------------
# decompositions


@dataclass
class Decomposability:
    decomposable: bool
    components: list[VertexSet]

    def __str__(self):
        if self.decomposable:
            return "decomposable: yes; complement components " + " ".join(
                format_vertices(c) for c in self.components)
        return "decomposable: no; complement graph is connected"


def is_decomposable(g: Graph) -> Decomposability:
    """Split exists iff the complement graph is disconnected."""
    if g.n < 2:
        raise InputError("decomposability needs at least two generators")
    comps = connected_components(complement(g))
    return Decomposability(len(comps) > 1, comps)


CHECKS = ("cross_bracket", "spanning", "independent", "closed", "nonzero")


@dataclass
class SplitReport:
    checks: dict[str, bool]
    total_dim: int
    part_dims: list[int]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


@dataclass
class Decomposition:
    kind: str  # "vertex-split" or "subspace-split"
    parts: list[VertexSet] = field(default_factory=list)
    subspaces: list[Subspace] = field(default_factory=list)
    variety: str = ""
    field_name: str = ""
    report: SplitReport | None = None

    def to_text(self, tbl: StructureTable | None = None) -> str:
        lines = [f"kind: {self.kind}", f"variety: {self.variety}", f"field: {self.field_name}"]
        if self.kind == "vertex-split":
            for k, p in enumerate(self.parts, 1):
                lines.append(f"A{k}: {format_vertices(p)}")
        else:
            for k, s in enumerate(self.subspaces, 1):
                lines.append(f"L{k}: " + format_subspace(s, tbl))
        if self.report is not None:
            r = self.report
            dims = " ".join(f"L{k}={d}" for k, d in enumerate(r.part_dims, 1))
            lines.append(f"dims: total={r.total_dim} {dims}")
            for name in CHECKS:
                lines.append(f"check {name}: {'pass' if r.checks[name] else 'FAIL'}")
            lines.append(f"verified: {'yes' if r.ok else 'no'}")
        return "\n".join(lines) + "\n"


def format_vector(v: dict, tbl: StructureTable | None) -> str:
    if tbl is not None:
        return str(tbl.poly(v))
    return "(" + ", ".join(f"{c}:{x}" for c, x in sorted(v.items())) + ")"


def format_subspace(s: Subspace, tbl: StructureTable | None = None) -> str:
    return "span{" + ", ".join(format_vector(r, tbl) for r in s.rows) + "}"


def vertex_subspace(tbl: StructureTable, part) -> Subspace:
    part = frozenset(part)
    return Subspace(tbl.field, tbl.dim,
                    ({i: tbl.field.one} for i, s in enumerate(tbl.supports) if s <= part))


def verify_split(tbl: StructureTable, d: Decomposition) -> SplitReport:
    """Check the direct-sum axioms for the parts of ``d`` inside ``tbl``."""
    if d.kind == "vertex-split":
        spaces = [vertex_subspace(tbl, p) for p in d.parts]
    else:
        spaces = list(d.subspaces)
        for s in spaces:
            if s.field != tbl.field or s.dim_ambient != tbl.dim:
                raise ContextMismatch("subspace does not live in this table")
    rows = [s.rows for s in spaces]
    cross = all(
        not tbl.bracket_vectors(u, v)
        for a in range(len(rows)) for b in range(a + 1, len(rows))
        for u in rows[a] for v in rows[b]
    )
    total = Subspace(tbl.field, tbl.dim, [r for rs in rows for r in rs])
    closed = all(
        s.contains(tbl.bracket_vectors(rs[i], rs[j]))
        for s, rs in zip(spaces, rows)
        for i in range(len(rs)) for j in range(i + 1, len(rs))
    )
    checks = {
        "cross_bracket": cross,
        "spanning": total.dim == tbl.dim,
        "independent": total.dim == sum(s.dim for s in spaces),
        "closed": closed,
        "nonzero": len(spaces) >= 2 and all(s.dim > 0 for s in spaces),
    }
    return SplitReport(checks, tbl.dim, [s.dim for s in spaces])


def split(g: Graph, variety: Variety | str = "nilpotent:3", field: Field = QQ,
          full: bool = False, table: StructureTable | None = None) -> Decomposition:
    """Vertex split along the complement components, verified in ``variety``.

    Two summands by default: the component of the smallest vertex against the
    rest.  ``full=True`` keeps one summand per component.
    """
    verdict = is_decomposable(g)
    if not verdict.decomposable:
        raise InputError("complement graph is connected; no split exists")
    comps = verdict.components
    parts = list(comps) if full else [comps[0], frozenset().union(*comps[1:])]
    if isinstance(variety, str):
        variety = Variety.parse(variety)
    tbl = table if table is not None else build_table(g, variety, field)
    d = Decomposition("vertex-split", parts=parts, variety=str(variety), field_name=repr(field))
    d.report = verify_split(tbl, d)
    return d


def summand_tables(g: Graph, parts, variety: Variety | str, field: Field = QQ) -> list[StructureTable]:
    """Tables of the algebras on the induced subgraphs of each part."""
    if isinstance(variety, str):
        variety = Variety.parse(variety)
    return [build_table(induced_subgraph(g, p)[0], variety, field) for p in parts]


def grading_consistent(g: Graph, d: Decomposition, variety: Variety | str,
                       field: Field = QQ, table: StructureTable | None = None) -> bool:
    """Per-degree dimensions of the whole equal the sums over the summands."""
    whole = table if table is not None else build_table(g, variety, field)
    subs = summand_tables(g, d.parts, variety, field)
    sums = [sum(t.dims_by_degree()[k] for t in subs) for k in range(whole.degree_cap)]
    return sums == whole.dims_by_degree()
