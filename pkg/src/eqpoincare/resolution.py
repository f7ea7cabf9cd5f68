"""Dual graphs of embedded resolutions and their multiplicity matrices.

A resolution of a plane curve germ by a composition of point blow-ups is
described here only through its dual graph: one vertex per exceptional
component with its self-intersection number, one edge per intersection
point of two components, and a marked vertex for the first component
blown up.  The graph of an actual blow-up composition always has
intersection matrix of determinant (-1)^n, and the negative of the
inverse matrix (the multiplicity matrix M) is symmetric with positive
integer entries: M[s, t] is the multiplicity of a curvelet transversal
to component t along the divisorial valuation of component s.  Both
facts are enforced, which is what catches mistyped graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class GraphError(ValueError):
    """The description is not the dual graph of a blow-up composition."""


def integer_determinant(matrix: list[list[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(matrix)
    if n == 0:
        return 1
    a = [row[:] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def fraction_inverse(matrix: list[list[int]]) -> list[list[Fraction]]:
    """Exact inverse by Gauss-Jordan elimination over Fraction."""
    n = len(matrix)
    aug = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(matrix)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise GraphError("intersection matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


@dataclass(frozen=True)
class ResolutionGraph:
    """Vertices with self-intersections, edges, and the first blown-up vertex.

    ``components`` is a tuple of (id, self_intersection) pairs; ids may
    be any hashable JSON-friendly values and fix the matrix ordering.
    """

    components: tuple
    edges: tuple
    first_blown_up: object

    def __post_init__(self):
        comps = tuple((cid, int(k)) for cid, k in self.components)
        if not comps:
            raise GraphError("a resolution graph needs at least one component")
        ids = [cid for cid, _ in comps]
        if len(set(ids)) != len(ids):
            dupes = sorted({c for c in ids if ids.count(c) > 1}, key=repr)
            raise GraphError(f"duplicate component ids: {dupes}")
        for cid, k in comps:
            if k > -1:
                raise GraphError(
                    f"component {cid!r} has self-intersection {k}; blow-up "
                    "components always have self-intersection <= -1"
                )
        known = set(ids)
        seen = set()
        norm_edges = []
        for edge in self.edges:
            a, b = edge
            if a not in known or b not in known:
                raise GraphError(f"edge {edge!r} references an unknown component")
            if a == b:
                raise GraphError(f"edge {edge!r} is a loop")
            key = frozenset((a, b))
            if key in seen:
                raise GraphError(f"edge {edge!r} appears twice")
            seen.add(key)
            norm_edges.append((a, b))
        if self.first_blown_up not in known:
            raise GraphError(
                f"first blown-up component {self.first_blown_up!r} is not a vertex"
            )
        # connectivity: exceptional divisors of a single germ are connected
        reach = {ids[0]}
        frontier = [ids[0]]
        adjacency = {c: set() for c in ids}
        for a, b in norm_edges:
            adjacency[a].add(b)
            adjacency[b].add(a)
        while frontier:
            c = frontier.pop()
            for d in adjacency[c] - reach:
                reach.add(d)
                frontier.append(d)
        if reach != known:
            missing = sorted(known - reach, key=repr)
            raise GraphError(f"graph is not connected; unreachable: {missing}")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "edges", tuple(norm_edges))

    @property
    def ids(self) -> tuple:
        return tuple(cid for cid, _ in self.components)

    def intersection_matrix(self) -> list[list[int]]:
        """(E_s o E_t) in the component order of the graph."""
        ids = self.ids
        index = {cid: i for i, cid in enumerate(ids)}
        n = len(ids)
        mat = [[0] * n for _ in range(n)]
        for i, (_, k) in enumerate(self.components):
            mat[i][i] = k
        for a, b in self.edges:
            mat[index[a]][index[b]] = 1
            mat[index[b]][index[a]] = 1
        return mat

    def multiplicity_matrix(self) -> "MultiplicityMatrix":
        mat = self.intersection_matrix()
        n = len(mat)
        det = integer_determinant(mat)
        if det != (-1) ** n:
            raise GraphError(
                f"intersection matrix determinant is {det}, expected {(-1) ** n} "
                f"for {n} components; not a blow-up composition"
            )
        inv = fraction_inverse(mat)
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                v = -inv[i][j]
                if v.denominator != 1:
                    raise GraphError(f"multiplicity entry ({i}, {j}) = {v} not integral")
                v = int(v)
                if v < 1:
                    raise GraphError(
                        f"multiplicity entry ({i}, {j}) = {v} is not positive"
                    )
                row.append(v)
            rows.append(row)
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise GraphError("multiplicity matrix is not symmetric")
        return MultiplicityMatrix(self.ids, rows)


class MultiplicityMatrix:
    """M = -(E o E)^(-1), indexed by component ids."""

    def __init__(self, ids: tuple, rows: list[list[int]]):
        self.ids = tuple(ids)
        self._index = {cid: i for i, cid in enumerate(self.ids)}
        self.rows = [list(r) for r in rows]

    def entry(self, a, b) -> int:
        return self.rows[self._index[a]][self._index[b]]

    def row(self, a, targets=None) -> tuple:
        """Row at component ``a``, restricted to ``targets`` if given."""
        r = self.rows[self._index[a]]
        if targets is None:
            return tuple(r)
        return tuple(r[self._index[t]] for t in targets)

    def __repr__(self):
        return f"MultiplicityMatrix({len(self.ids)} components)"
