"""Exact dense linear algebra over the two-element field.

Matrices are stored row-wise as Python integers used as bit vectors
(bit j of a row = entry in column j), so row operations are single
word-level XORs regardless of width.  All routines are pure and
deterministic: pivots are always chosen leftmost-first, and free
variables are always set to zero, so equal inputs give identical
outputs.  Every rank, kernel and solve in the engine goes through
this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def _mask_to_tuple(mask: int, length: int) -> tuple[int, ...]:
    return tuple((mask >> j) & 1 for j in range(length))


def _tuple_to_mask(bits: Sequence[int]) -> int:
    mask = 0
    for j, b in enumerate(bits):
        if b & 1:
            mask |= 1 << j
    return mask


@dataclass(frozen=True)
class F2Matrix:
    """Immutable 0/1 matrix with arithmetic modulo 2.

    ``rows`` holds one bit-packed integer per matrix row.  The 0 x n and
    n x 0 matrices are valid and behave as expected.
    """

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.nrows < 0 or self.ncols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.rows) != self.nrows:
            raise ValueError("row count mismatch")
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError("row has bits outside the column range")

    # -- construction -------------------------------------------------

    @staticmethod
    def from_rows(data: Iterable[Iterable[int]], ncols: int | None = None) -> "F2Matrix":
        rows = [list(r) for r in data]
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for an empty row list")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        return F2Matrix(len(rows), ncols, tuple(_tuple_to_mask(r) for r in rows))

    @staticmethod
    def zeros(nrows: int, ncols: int) -> "F2Matrix":
        return F2Matrix(nrows, ncols, (0,) * nrows)

    @staticmethod
    def identity(n: int) -> "F2Matrix":
        return F2Matrix(n, n, tuple(1 << j for j in range(n)))

    @staticmethod
    def from_columns(cols: Sequence[int], nrows: int) -> "F2Matrix":
        """Assemble a matrix from bit-packed column vectors."""
        rows = [0] * nrows
        for j, c in enumerate(cols):
            for i in range(nrows):
                if (c >> i) & 1:
                    rows[i] |= 1 << j
        return F2Matrix(nrows, len(cols), tuple(rows))

    # -- inspection ---------------------------------------------------

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [list(_mask_to_tuple(r, self.ncols)) for r in self.rows]

    def column(self, j: int) -> int:
        """Column j as a bit-packed vector (bit i = row i)."""
        c = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                c |= 1 << i
        return c

    def columns(self) -> list[int]:
        return [self.column(j) for j in range(self.ncols)]

    # -- arithmetic ---------------------------------------------------

    def transpose(self) -> "F2Matrix":
        return F2Matrix(self.ncols, self.nrows, tuple(self.columns()))

    def add(self, other: "F2Matrix") -> "F2Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in add")
        return F2Matrix(self.nrows, self.ncols,
                        tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    def mul_vector(self, v: int) -> int:
        """Product with a bit-packed column vector of length ncols."""
        out = 0
        for i, r in enumerate(self.rows):
            if (r & v).bit_count() & 1:
                out |= 1 << i
        return out

    def matmul(self, other: "F2Matrix") -> "F2Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matmul")
        rows = []
        for r in self.rows:
            acc = 0
            rr = r
            while rr:
                j = (rr & -rr).bit_length() - 1
                acc ^= other.rows[j]
                rr &= rr - 1
            rows.append(acc)
        return F2Matrix(self.nrows, other.ncols, tuple(rows))

    def stack_vertical(self, other: "F2Matrix") -> "F2Matrix":
        if self.ncols != other.ncols:
            raise ValueError("shape mismatch in vertical stack")
        return F2Matrix(self.nrows + other.nrows, self.ncols, self.rows + other.rows)

    def stack_horizontal(self, other: "F2Matrix") -> "F2Matrix":
        if self.nrows != other.nrows:
            raise ValueError("shape mismatch in horizontal stack")
        rows = tuple(a | (b << self.ncols) for a, b in zip(self.rows, other.rows))
        return F2Matrix(self.nrows, self.ncols + other.ncols, rows)

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.rows)


def _echelon(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row-echelon form with leftmost-first pivots.

    Returns (reduced rows, pivot column list).  Input list is consumed.
    """
    pivots: list[int] = []
    out: list[int] = []
    for col in range(ncols):
        bit = 1 << col
        pivot_row = None
        for idx in range(len(out), len(rows)):
            if rows[idx] & bit:
                pivot_row = idx
                break
        if pivot_row is None:
            continue
        rows[len(out)], rows[pivot_row] = rows[pivot_row], rows[len(out)]
        piv = rows[len(out)]
        for idx in range(len(rows)):
            if idx != len(out) and rows[idx] & bit:
                rows[idx] ^= piv
        out.append(piv)
        pivots.append(col)
        if len(out) == len(rows):
            break
    return rows, pivots


def row_reduce(m: F2Matrix) -> tuple[int, list[int], list[int]]:
    """Rank, kernel basis and image basis of a matrix.

    Returns ``(rank, kernel_basis, image_basis)`` where kernel vectors are
    bit-packed columns of length ``ncols`` with ``m . v = 0``, and the
    image basis is the list of original pivot columns (bit-packed, length
    ``nrows``).  rank + len(kernel_basis) == ncols always holds.
    """
    rows, pivots = _echelon(list(m.rows), m.ncols)
    rank = len(pivots)

    pivot_set = set(pivots)
    # Row i of the echelon form has pivot column pivots[i]; express each
    # free column in terms of pivots to build the kernel.
    kernel: list[int] = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        v = 1 << free
        for i, pc in enumerate(pivots):
            if (rows[i] >> free) & 1:
                v |= 1 << pc
        kernel.append(v)

    image = [m.column(j) for j in pivots]
    return rank, kernel, image


def rank(m: F2Matrix) -> int:
    _, pivots = _echelon(list(m.rows), m.ncols)
    return len(pivots)


def pivot_columns(m: F2Matrix) -> list[int]:
    """Column indices of the canonical (leftmost-first) pivots."""
    _, pivots = _echelon(list(m.rows), m.ncols)
    return pivots


def solve(m: F2Matrix, b: int) -> int | None:
    """Canonical solution of m . x = b, or None if none exists.

    ``b`` is a bit-packed column of length ``nrows``.  Free variables are
    set to zero under the leftmost pivot order, so the result is
    deterministic.  Raises ValueError when b has bits beyond nrows.
    """
    if b < 0 or b >> m.nrows:
        raise ValueError("right-hand side has wrong length")
    aug_rows = [r | (((b >> i) & 1) << m.ncols) for i, r in enumerate(m.rows)]
    rows, pivots = _echelon(aug_rows, m.ncols + 1)
    if m.ncols in pivots:
        return None
    x = 0
    for i, pc in enumerate(pivots):
        if (rows[i] >> m.ncols) & 1:
            x |= 1 << pc
    return x


def in_span(vectors: Sequence[int], v: int, length: int) -> bool:
    """Whether bit-packed vector v lies in the span of the given vectors."""
    m = F2Matrix.from_columns(list(vectors), length)
    return solve(m, v) is not None


def span_basis(vectors: Sequence[int], length: int) -> list[int]:
    """Deterministic reduced basis of the span of bit-packed vectors."""
    rows, _ = _echelon([v for v in vectors if v], length)
    return [r for r in rows if r]


def span_contains_space(big: Sequence[int], small: Sequence[int], length: int) -> bool:
    """Whether span(small) is contained in span(big)."""
    if not small:
        return True
    m = F2Matrix.from_columns(list(big), length)
    return all(solve(m, v) is not None for v in small)


def inverse(m: F2Matrix) -> F2Matrix:
    """Inverse of a square invertible matrix; ValueError otherwise."""
    if m.nrows != m.ncols:
        raise ValueError("inverse of a non-square matrix")
    n = m.nrows
    aug_rows = [r | (1 << (n + i)) for i, r in enumerate(m.rows)]
    rows, pivots = _echelon(aug_rows, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    inv_rows = tuple(r >> n for r in rows[:n])
    return F2Matrix(n, n, inv_rows)


def quotient_basis(sub: Sequence[int], length: int) -> list[int]:
    """Standard-basis representatives of a complement of span(sub) in F2^length.

    Returns the non-pivot coordinates' standard vectors under the
    canonical reduction of ``sub``, giving a deterministic section of the
    quotient map.
    """
    rows, pivots = _echelon([v for v in sub if v], length)
    pivot_set = set(pivots)
    return [1 << j for j in range(length) if j not in pivot_set]


def project_to_quotient(sub: Sequence[int], length: int) -> F2Matrix:
    """Matrix of the projection F2^length -> F2^length/span(sub).

    Rows are indexed by the canonical complement coordinates returned by
    :func:`quotient_basis` (in order); columns by the ambient basis.
    """
    rows, pivots = _echelon([v for v in sub if v], length)
    pivot_set = set(pivots)
    free = [j for j in range(length) if j not in pivot_set]
    # x = sum_j x_j e_j maps to the class of x minus its pivot corrections:
    # each pivot column pc carries the echelon row r with leading bit pc,
    # so e_pc = - (r - e_pc) modulo the subspace.
    out_rows = []
    for f in free:
        mask = 1 << f
        for i, pc in enumerate(pivots):
            if (rows[i] >> f) & 1:
                mask |= 1 << pc
        out_rows.append(mask)
    return F2Matrix(len(free), length, tuple(out_rows))
