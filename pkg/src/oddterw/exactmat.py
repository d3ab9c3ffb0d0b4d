"""Exact sparse integer matrices and row-reduced matrix spans.

Everything here is exact: matrix entries are Python big integers, and span
arithmetic runs either over GF(p) for a configured prime p or over the
rationals via fraction-free integer elimination.  No floating point is used
anywhere in this module.

IntMatrix values are immutable after construction and safe to share between
threads.  MatrixSpace is single-writer: readers are fine once insertion
stops, but concurrent insertions must be serialized by the caller.
"""

from __future__ import annotations

from math import gcd
from pathlib import Path

from .errors import ParameterError, ShapeError

#: Default prime for span arithmetic, with a second prime for confirmation
#: passes.  Both exceed 10**6 so small integer coefficients cannot collide
#: with zero mod p.
DEFAULT_PRIMES = (1_000_000_007, 998_244_353)
DEFAULT_PRIME = DEFAULT_PRIMES[0]

MM_HEADER = "%%MatrixMarket matrix coordinate integer general"


class IntMatrix:
    """Sparse matrix with exact integer entries, stored by row.

    Treat instances as frozen: none of the public operations mutate their
    operands, and shared instances (including cached ones) must never be
    modified in place.
    """

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, nrows: int, ncols: int, entries=None):
        if nrows < 0 or ncols < 0:
            raise ShapeError(f"invalid shape ({nrows}, {ncols})")
        self.nrows = nrows
        self.ncols = ncols
        rows: dict[int, dict[int, int]] = {}
        if entries:
            if hasattr(entries, "items"):
                items = (((r, c), v) for (r, c), v in entries.items())
            else:
                items = (((r, c), v) for r, c, v in entries)
            for (r, c), v in items:
                if not (0 <= r < nrows and 0 <= c < ncols):
                    raise ShapeError(f"entry ({r}, {c}) outside shape ({nrows}, {ncols})")
                if v:
                    rows.setdefault(r, {})[c] = v
        self._rows = rows

    @classmethod
    def _wrap(cls, nrows: int, ncols: int, rows: dict[int, dict[int, int]]) -> "IntMatrix":
        # Internal fast path: takes ownership of `rows`, which must contain
        # no zero values and no empty row dicts.
        m = cls.__new__(cls)
        m.nrows = nrows
        m.ncols = ncols
        m._rows = rows
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls._wrap(nrows, ncols, {})

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls._wrap(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def from_dense(cls, dense) -> "IntMatrix":
        nrows = len(dense)
        ncols = len(dense[0]) if nrows else 0
        rows = {}
        for r, drow in enumerate(dense):
            if len(drow) != ncols:
                raise ShapeError("ragged dense input")
            row = {c: v for c, v in enumerate(drow) if v}
            if row:
                rows[r] = row
        return cls._wrap(nrows, ncols, rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self._rows.values())

    def entry(self, r: int, c: int) -> int:
        return self._rows.get(r, {}).get(c, 0)

    def iter_entries(self):
        """Yield (row, col, value) in row-major sorted order."""
        for r in sorted(self._rows):
            row = self._rows[r]
            for c in sorted(row):
                yield r, c, row[c]

    def row_values(self, r: int) -> dict[int, int]:
        """Copy of one row as {col: value}."""
        return dict(self._rows.get(r, {}))

    def is_zero(self) -> bool:
        return not self._rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    __hash__ = None

    def __repr__(self) -> str:
        return f"IntMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        rows = {r: dict(row) for r, row in self._rows.items()}
        for r, row in other._rows.items():
            target = rows.setdefault(r, {})
            for c, v in row.items():
                nv = target.get(c, 0) + v
                if nv:
                    target[c] = nv
                else:
                    del target[c]
            if not target:
                del rows[r]
        return IntMatrix._wrap(self.nrows, self.ncols, rows)

    def __neg__(self) -> "IntMatrix":
        return self * -1

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __mul__(self, scalar: int) -> "IntMatrix":
        if not isinstance(scalar, int):
            return NotImplemented
        if scalar == 0:
            return IntMatrix.zeros(self.nrows, self.ncols)
        rows = {r: {c: v * scalar for c, v in row.items()} for r, row in self._rows.items()}
        return IntMatrix._wrap(self.nrows, self.ncols, rows)

    __rmul__ = __mul__

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        orows = other._rows
        rows = {}
        for r, row in self._rows.items():
            acc: dict[int, int] = {}
            for k, a in row.items():
                brow = orows.get(k)
                if brow is None:
                    continue
                for c, b in brow.items():
                    acc[c] = acc.get(c, 0) + a * b
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                rows[r] = acc
        return IntMatrix._wrap(self.nrows, other.ncols, rows)

    def transpose(self) -> "IntMatrix":
        rows: dict[int, dict[int, int]] = {}
        for r, row in self._rows.items():
            for c, v in row.items():
                rows.setdefault(c, {})[r] = v
        return IntMatrix._wrap(self.ncols, self.nrows, rows)

    def to_dense(self) -> list[list[int]]:
        dense = [[0] * self.ncols for _ in range(self.nrows)]
        for r, row in self._rows.items():
            for c, v in row.items():
                dense[r][c] = v
        return dense

    def vectorize(self) -> dict[int, int]:
        """Row-major flattening: coordinate r*ncols + c maps to the entry value."""
        ncols = self.ncols
        return {r * ncols + c: v for r, row in self._rows.items() for c, v in row.items()}

    @classmethod
    def unvectorize(cls, vec: dict[int, int], nrows: int, ncols: int) -> "IntMatrix":
        rows: dict[int, dict[int, int]] = {}
        for coord, v in vec.items():
            if v:
                rows.setdefault(coord // ncols, {})[coord % ncols] = v
        return cls._wrap(nrows, ncols, rows)


def kron(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Kronecker product with index convention
    out[ra*b.nrows + rb, ca*b.ncols + cb] = a[ra, ca] * b[rb, cb]."""
    bn, bc = b.nrows, b.ncols
    rows: dict[int, dict[int, int]] = {}
    for ra, arow in a._rows.items():
        for rb, brow in b._rows.items():
            out = {}
            for ca, va in arow.items():
                base = ca * bc
                for cb, vb in brow.items():
                    out[base + cb] = va * vb
            rows[ra * bn + rb] = out
    return IntMatrix._wrap(a.nrows * bn, a.ncols * bc, rows)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for 64-bit inputs."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class MatrixSpace:
    """Linear span of matrices of one shape, kept as a reduced echelon basis.

    Matrices are vectorized row-major; the basis is held as sparse rows in
    reduced row-echelon form over GF(p) (pivot value 1) or, with prime=None,
    as primitive integer rows with positive pivots, reduced fraction-free so
    that membership and dimension are exact over the rationals.
    """

    def __init__(self, nrows: int, ncols: int, prime: int | None = DEFAULT_PRIME):
        if prime is not None and not is_prime(prime):
            raise ParameterError(f"{prime} is not prime")
        self.nrows = nrows
        self.ncols = ncols
        self.prime = prime
        self._rows: dict[int, dict[int, int]] = {}  # pivot coordinate -> row

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def field_name(self) -> str:
        return "exact" if self.prime is None else f"gf({self.prime})"

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    # -- public matrix-level interface -------------------------------------

    def insert(self, matrix: IntMatrix) -> bool:
        """Reduce `matrix` against the basis; grow the basis if independent.

        Returns True when the dimension grew.
        """
        self._check_shape(matrix)
        return self.insert_vector(matrix.vectorize())

    def contains(self, matrix: IntMatrix) -> bool:
        """True iff `matrix` lies in the current span."""
        self._check_shape(matrix)
        return self.contains_vector(matrix.vectorize())

    def basis_matrices(self) -> list[IntMatrix]:
        """The echelon basis, unvectorized, in pivot order."""
        return [
            IntMatrix.unvectorize(self._rows[piv], self.nrows, self.ncols)
            for piv in sorted(self._rows)
        ]

    def iter_basis(self):
        """Yield (pivot, row) pairs in pivot order.  Rows are internal: do not mutate."""
        for piv in sorted(self._rows):
            yield piv, self._rows[piv]

    # -- vector-level interface (row-major coordinates) --------------------

    def insert_vector(self, vec: dict[int, int]) -> bool:
        v = self._normalize_input(vec)
        self._reduce_leading(v)
        if not v:
            return False
        piv = min(v)
        self._reduce_tail(v, piv)
        self._normalize_row(v, piv)
        # Keep the basis fully reduced: clear the new pivot coordinate from
        # every existing row.  `v` carries no other pivot coordinates, so
        # existing pivots are untouched.
        for row in self._rows.values():
            if piv in row:
                self._eliminate(row, v, piv)
        self._rows[piv] = v
        return True

    def contains_vector(self, vec: dict[int, int]) -> bool:
        v = self._normalize_input(vec)
        self._reduce_leading(v)
        return not v

    # -- internals ----------------------------------------------------------

    def _check_shape(self, matrix: IntMatrix):
        if matrix.shape != self.shape:
            raise ShapeError(f"expected shape {self.shape}, got {matrix.shape}")

    def _normalize_input(self, vec: dict[int, int]) -> dict[int, int]:
        p = self.prime
        if p is None:
            return {c: v for c, v in vec.items() if v}
        out = {}
        for c, v in vec.items():
            v %= p
            if v:
                out[c] = v
        return out

    def _reduce_leading(self, v: dict[int, int]):
        # Eliminate the leading coordinate while it is a pivot.  Elimination
        # only introduces coordinates beyond the fired pivot, so the leading
        # coordinate strictly increases and the loop terminates.
        rows = self._rows
        while v:
            c = min(v)
            row = rows.get(c)
            if row is None:
                return
            self._eliminate(v, row, c)

    def _reduce_tail(self, v: dict[int, int], piv: int):
        # Clear every pivot coordinate other than `piv` so stored rows stay
        # in reduced echelon form.  Basis rows contain no foreign pivots, so
        # each hit is processed at most once in ascending order.
        rows = self._rows
        while True:
            hit = min((c for c in v if c != piv and c in rows), default=None)
            if hit is None:
                return
            self._eliminate(v, rows[hit], hit)

    def _eliminate(self, v: dict[int, int], row: dict[int, int], c: int):
        p = self.prime
        if p is not None:
            f = v[c]  # stored rows have pivot value 1
            for cc, rv in row.items():
                nv = (v.get(cc, 0) - f * rv) % p
                if nv:
                    v[cc] = nv
                else:
                    v.pop(cc, None)
        else:
            a, b = row[c], v[c]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            if fa != 1:
                for cc in v:
                    v[cc] *= fa
            for cc, rv in row.items():
                nv = v.get(cc, 0) - fb * rv
                if nv:
                    v[cc] = nv
                else:
                    v.pop(cc, None)
            self._strip_content(v)

    @staticmethod
    def _strip_content(v: dict[int, int]):
        g = 0
        for val in v.values():
            g = gcd(g, val)
            if g == 1:
                return
        if g > 1:
            for c in v:
                v[c] //= g

    def _normalize_row(self, v: dict[int, int], piv: int):
        p = self.prime
        if p is not None:
            inv = pow(v[piv], -1, p)
            if inv != 1:
                for c in v:
                    v[c] = v[c] * inv % p
        else:
            self._strip_content(v)
            if v[piv] < 0:
                for c in v:
                    v[c] = -v[c]


# -- Matrix Market exchange format -----------------------------------------


def write_matrix_market(matrix: IntMatrix, destination):
    """Write `matrix` in coordinate integer general format, 1-based,
    entries sorted by (row, column)."""
    if isinstance(destination, (str, Path)):
        with open(destination, "w", encoding="ascii") as fh:
            write_matrix_market(matrix, fh)
        return
    destination.write(MM_HEADER + "\n")
    destination.write(f"{matrix.nrows} {matrix.ncols} {matrix.nnz}\n")
    for r, c, v in matrix.iter_entries():
        destination.write(f"{r + 1} {c + 1} {v}\n")


def read_matrix_market(source) -> IntMatrix:
    """Read a coordinate-integer-general Matrix Market file."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="ascii") as fh:
            return read_matrix_market(fh)
    header = source.readline()
    tokens = header.strip().split()
    expected = MM_HEADER.split()
    if len(tokens) != 5 or tokens[0] != expected[0] or [t.lower() for t in tokens[1:]] != expected[1:]:
        raise ParameterError(f"unsupported Matrix Market header: {header.strip()!r}")
    size_line = None
    for line in source:
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            continue
        size_line = stripped
        break
    if size_line is None:
        raise ParameterError("missing size line")
    try:
        nrows, ncols, nnz = (int(t) for t in size_line.split())
    except ValueError as exc:
        raise ParameterError(f"bad size line: {size_line!r}") from exc
    rows: dict[int, dict[int, int]] = {}
    seen = 0
    for line in source:
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            continue
        parts = stripped.split()
        if len(parts) != 3:
            raise ParameterError(f"bad entry line: {stripped!r}")
        r, c, v = int(parts[0]) - 1, int(parts[1]) - 1, int(parts[2])
        if not (0 <= r < nrows and 0 <= c < ncols):
            raise ParameterError(f"entry ({r + 1}, {c + 1}) outside {nrows}x{ncols}")
        if c in rows.get(r, ()):
            raise ParameterError(f"duplicate entry at ({r + 1}, {c + 1})")
        seen += 1
        if v:
            rows.setdefault(r, {})[c] = v
    if seen != nnz:
        raise ParameterError(f"expected {nnz} entries, found {seen}")
    return IntMatrix._wrap(nrows, ncols, rows)
