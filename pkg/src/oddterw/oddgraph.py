"""The Odd graph on m-subsets of a (2m+1)-set, distance-partitioned around a base vertex.

Vertices are m-subsets of {0..2m}, adjacent exactly when disjoint.  The base
vertex is fixed to x = {0..m-1}: the graph is distance-transitive, so the
algebra built on top is the same for every choice and exposing one would
only add meaningless configuration.

The canonical vertex order sorts vertices by distance class and, inside a
class, by the pair (part inside x, part outside x), each part in colex
order with the inside part most significant.  Under this order every
nonzero block of the adjacency matrix literally equals a Kronecker product
of two intersection matrices (one on subsets of x, one on subsets of the
complement), not just up to permutation.

OddGraph instances are immutable after construction and safe to share.
"""

from __future__ import annotations

from bisect import bisect_right
from itertools import combinations

from .combinatorics import SubsetIndex, binomial
from .errors import ParameterError, ShapeError
from .exactmat import IntMatrix, kron
from .intersection import intersection_matrix
from .report import CheckResult

BlockRef = tuple[int, int]

#: Building above this m is refused unless the caller raises the ceiling;
#: C(13, 6) = 1716 vertices is the largest size built by default tooling.
DEFAULT_MAX_M = 6


class OddGraph:
    def __init__(self, m: int, max_m: int = DEFAULT_MAX_M):
        if m < 1:
            raise ParameterError("m must be at least 1")
        if m > max_m:
            raise ParameterError(f"m={m} exceeds the configured ceiling {max_m}")
        self.m = m
        self.ground_size = 2 * m + 1
        self.x = tuple(range(m))
        self.diameter = m

        self.vertices: list[tuple[int, ...]] = []
        self.class_offsets: list[int] = []
        self._class_sizes: list[int] = []
        for d in range(m + 1):
            self.class_offsets.append(len(self.vertices))
            inside, outside = self._part_sizes(d)
            inside_index = SubsetIndex(m, inside)
            outside_index = SubsetIndex(m + 1, outside)
            for alpha in inside_index.subsets():
                for beta in outside_index.subsets():
                    self.vertices.append(tuple(sorted(alpha + tuple(b + m for b in beta))))
            self._class_sizes.append(inside_index.count * outside_index.count)
        self.num_vertices = len(self.vertices)
        self._index = {v: i for i, v in enumerate(self.vertices)}
        self._adjacency: IntMatrix | None = None

        self._neighbors = [
            sorted(self._index[z] for z in combinations(self._complement(y), m))
            for y in self.vertices
        ]
        self._check_structure()

    def _part_sizes(self, d: int) -> tuple[int, int]:
        # Sizes of (vertex ∩ x, vertex \ x) for distance class d.
        i = d // 2
        if d % 2 == 0:
            return self.m - i, i
        return i, self.m - i

    def _complement(self, y) -> tuple[int, ...]:
        ys = set(y)
        return tuple(e for e in range(self.ground_size) if e not in ys)

    def _check_structure(self):
        # The class assignment comes from intersection sizes with x; BFS from
        # x is the independent cross-check, along with regularity and diameter.
        if self.num_vertices != binomial(self.ground_size, self.m):
            raise RuntimeError("vertex count mismatch")
        degree = self.m + 1
        if any(len(nbrs) != degree for nbrs in self._neighbors):
            raise RuntimeError("graph is not (m+1)-regular")
        dist = self.bfs_distances()
        if max(dist) != self.diameter:
            raise RuntimeError("BFS diameter mismatch")
        for idx in range(self.num_vertices):
            if dist[idx] != self.class_of(idx):
                raise RuntimeError(f"class/BFS mismatch at vertex {idx}")

    # -- structure queries ---------------------------------------------------

    def class_size(self, d: int) -> int:
        if not 0 <= d <= self.m:
            raise ParameterError(f"distance class {d} out of range 0..{self.m}")
        return self._class_sizes[d]

    def class_offset(self, d: int) -> int:
        if not 0 <= d <= self.m:
            raise ParameterError(f"distance class {d} out of range 0..{self.m}")
        return self.class_offsets[d]

    def class_of(self, vertex_index: int) -> int:
        return bisect_right(self.class_offsets, vertex_index) - 1

    def distance_class(self, y) -> int:
        """Distance from x of any m-subset, read off |x ∩ y|."""
        c = len(set(y) & set(self.x))
        even = 2 * (self.m - c)
        if even <= self.m:
            return even
        return 2 * c + 1

    def vertex_index(self, y) -> int:
        return self._index[tuple(sorted(y))]

    def neighbors(self, vertex_index: int) -> list[int]:
        return list(self._neighbors[vertex_index])

    def bfs_distances(self) -> list[int]:
        dist = [-1] * self.num_vertices
        dist[0] = 0
        frontier = [0]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for u in frontier:
                for w in self._neighbors[u]:
                    if dist[w] < 0:
                        dist[w] = d
                        nxt.append(w)
            frontier = nxt
        if min(dist) < 0:
            raise RuntimeError("graph is not connected")
        return dist

    def admissible_blocks(self) -> list[BlockRef]:
        """Blocks (i, j) where the adjacency matrix may be nonzero."""
        out = [(i, j) for i in range(self.m + 1) for j in range(self.m + 1) if abs(i - j) == 1]
        out.append((self.m, self.m))
        return sorted(out)

    def adjacent_classes(self, d: int) -> list[int]:
        """Classes r with (r, d) an admissible adjacency block."""
        out = [r for r in (d - 1, d + 1) if 0 <= r <= self.m]
        if d == self.m:
            out.append(self.m)
        return sorted(out)

    # -- matrices --------------------------------------------------------------

    def adjacency(self) -> IntMatrix:
        """Symmetric 0/1 adjacency matrix in canonical vertex order."""
        if self._adjacency is None:
            rows = {i: {j: 1 for j in nbrs} for i, nbrs in enumerate(self._neighbors)}
            self._adjacency = IntMatrix._wrap(self.num_vertices, self.num_vertices, rows)
        return self._adjacency

    def dual_idempotent(self, d: int) -> IntMatrix:
        """Diagonal projector onto distance class d."""
        off = self.class_offset(d)
        rows = {i: {i: 1} for i in range(off, off + self.class_size(d))}
        return IntMatrix._wrap(self.num_vertices, self.num_vertices, rows)

    def extract_block(self, matrix: IntMatrix, block: BlockRef) -> IntMatrix:
        """Submatrix with rows from class block[0] and columns from class block[1]."""
        n = self.num_vertices
        if matrix.shape != (n, n):
            raise ShapeError(f"expected {n}x{n} matrix, got {matrix.shape}")
        bi, bj = block
        r0, c0 = self.class_offset(bi), self.class_offset(bj)
        nr, nc = self.class_size(bi), self.class_size(bj)
        rows: dict[int, dict[int, int]] = {}
        for r in range(r0, r0 + nr):
            src = matrix.row_values(r)
            row = {c - c0: v for c, v in src.items() if c0 <= c < c0 + nc}
            if row:
                rows[r - r0] = row
        return IntMatrix._wrap(nr, nc, rows)

    def embed(self, matrix: IntMatrix, block: BlockRef) -> IntMatrix:
        """Place a class-shaped matrix into the full vertex-indexed ambient, zero elsewhere."""
        bi, bj = block
        nr, nc = self.class_size(bi), self.class_size(bj)
        if matrix.shape != (nr, nc):
            raise ShapeError(f"block {block} has shape {(nr, nc)}, got {matrix.shape}")
        r0, c0 = self.class_offset(bi), self.class_offset(bj)
        n = self.num_vertices
        rows = {}
        for r, c, v in matrix.iter_entries():
            rows.setdefault(r0 + r, {})[c0 + c] = v
        return IntMatrix._wrap(n, n, rows)

    def embed_vector(self, matrix: IntMatrix, block: BlockRef) -> dict[int, int]:
        """Row-major ambient coordinates of embed(matrix, block), without materializing it."""
        bi, bj = block
        nr, nc = self.class_size(bi), self.class_size(bj)
        if matrix.shape != (nr, nc):
            raise ShapeError(f"block {block} has shape {(nr, nc)}, got {matrix.shape}")
        r0, c0 = self.class_offset(bi), self.class_offset(bj)
        n = self.num_vertices
        return {(r0 + r) * n + (c0 + c): v for r, c, v in matrix.iter_entries()}

    def block_of_coordinate(self, coord: int) -> BlockRef:
        """Distance-class block containing one row-major ambient coordinate."""
        n = self.num_vertices
        return (self.class_of(coord // n), self.class_of(coord % n))

    # -- exports ----------------------------------------------------------------

    def vertex_manifest(self) -> dict:
        """JSON-ready vertex order: needed to interpret exported matrices."""
        return {
            "m": self.m,
            "vertices": [list(v) for v in self.vertices],
            "class_offsets": list(self.class_offsets),
        }


def expected_block_factors(m: int, block: BlockRef) -> tuple[IntMatrix, IntMatrix] | None:
    """The Kronecker factors the adjacency block must equal, or None for zero blocks.

    Nonzero blocks are (2i, 2i+1), (2i+1, 2i+2), the middle diagonal block
    (m, m), and their transposes.
    """
    bi, bj = block
    if bi > bj:
        swapped = expected_block_factors(m, (bj, bi))
        if swapped is None:
            return None
        return swapped[0].transpose(), swapped[1].transpose()
    if bi == bj == m:
        h, c = m // 2, m - m // 2
        return intersection_matrix(h, h, 0, m), intersection_matrix(c, c, 0, m + 1)
    if bj != bi + 1:
        return None
    if bi % 2 == 0:
        i = bi // 2
        return intersection_matrix(m - i, i, 0, m), intersection_matrix(i, m - i, 0, m + 1)
    i = (bi - 1) // 2
    return intersection_matrix(i, m - i - 1, 0, m), intersection_matrix(m - i, i + 1, 0, m + 1)


def _first_difference(got: IntMatrix, expected: IntMatrix):
    diff = got - expected
    for r, c, v in diff.iter_entries():
        return r, c, expected.entry(r, c) + v, expected.entry(r, c)
    return None


def verify_adjacency_blocks(graph: OddGraph, adjacency: IntMatrix | None = None) -> CheckResult:
    """Entry-exact check of the adjacency matrix against its block Kronecker structure.

    Verifies that non-admissible blocks vanish (the graph is almost
    bipartite), that each admissible block equals its Kronecker product of
    intersection matrices under the canonical order, and that opposite
    blocks are mutual transposes.
    """
    a = adjacency if adjacency is not None else graph.adjacency()
    m = graph.m
    witnesses = []
    blocks = {}
    for bi in range(m + 1):
        for bj in range(m + 1):
            blocks[(bi, bj)] = graph.extract_block(a, (bi, bj))
    for (bi, bj), got in sorted(blocks.items()):
        factors = expected_block_factors(m, (bi, bj))
        expected = (
            IntMatrix.zeros(graph.class_size(bi), graph.class_size(bj))
            if factors is None
            else kron(*factors)
        )
        if got != expected:
            r, c, got_v, exp_v = _first_difference(got, expected)
            witnesses.append(
                {
                    "kind": "zero_block_violated" if factors is None else "block_mismatch",
                    "block": [bi, bj],
                    "entry": [r, c],
                    "got": got_v,
                    "expected": exp_v,
                }
            )
    for (bi, bj), got in sorted(blocks.items()):
        if bi <= bj and blocks[(bj, bi)] != got.transpose():
            witnesses.append({"kind": "symmetry_violated", "block": [bi, bj]})
    return CheckResult.from_witnesses("adjacency-blocks", witnesses, params={"m": m})


def verify_reassembly(graph: OddGraph) -> bool:
    """The adjacency matrix equals the sum of its re-embedded admissible blocks."""
    a = graph.adjacency()
    total = IntMatrix.zeros(graph.num_vertices, graph.num_vertices)
    for block in graph.admissible_blocks():
        total = total + graph.embed(graph.extract_block(a, block), block)
    return total == a
