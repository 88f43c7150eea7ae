"""Finite equivariant cell complexes for the order-two group, as incidence data.

A complex records, per dimension, the number of fixed cells and of free
orbit cells, plus four incidence families over F2 for each adjacent
dimension pair:

    alpha_k     (f_{k+1} x f_k)  fixed cell onto fixed cell, degree mod 2
    e_k         (a_{k+1} x f_k)  chosen sheet of a free orbit onto a fixed cell
    aa_first_k  (a_{k+1} x a_k)  chosen sheet onto the first sheet of an orbit
    aa_second_k (a_{k+1} x a_k)  chosen sheet onto the second sheet

Fixed cells never attach onto free orbits (their attaching maps land in
the fixed subcomplex), so there is deliberately no such block.  The data
is finite by construction; infinite complexes are inexpressible.

The sheet labelling is a gauge: flipping an orbit's distinguished sheet
swaps its (first, second) row pair as a source and its column pair as a
target.  Everything derived here only uses gauge invariants (the sheet
sum, or both sheets symmetrically); ``normalize_sheets`` applies a
deterministic lexicographic choice when a canonical form is wanted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .f2linalg import F2Matrix


class ComplexError(ValueError):
    """Malformed builder expression or inconsistent incidence data."""


@dataclass(frozen=True)
class EquivariantCellComplex:
    name: str
    dimension: int
    fixed: tuple[int, ...]
    free: tuple[int, ...]
    alpha: tuple[F2Matrix, ...]
    e: tuple[F2Matrix, ...]
    aa_first: tuple[F2Matrix, ...]
    aa_second: tuple[F2Matrix, ...]

    def __post_init__(self) -> None:
        m = self.dimension
        if m < 0:
            raise ComplexError("dimension must be nonnegative")
        if len(self.fixed) != m + 1 or len(self.free) != m + 1:
            raise ComplexError("cell count lists must have length dimension+1")
        for blocks in (self.alpha, self.e, self.aa_first, self.aa_second):
            if len(blocks) != m:
                raise ComplexError("each block family needs one matrix per "
                                   "adjacent dimension pair")

    def total_cells(self) -> int:
        return sum(self.fixed) + sum(self.free)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dimension": self.dimension,
            "fixed": list(self.fixed),
            "free": list(self.free),
            "alpha": [m.to_lists() for m in self.alpha],
            "e": [m.to_lists() for m in self.e],
            "aa_first": [m.to_lists() for m in self.aa_first],
            "aa_second": [m.to_lists() for m in self.aa_second],
        }

    @staticmethod
    def from_json(data: dict) -> "EquivariantCellComplex":
        try:
            m = int(data["dimension"])
            fixed = tuple(int(x) for x in data["fixed"])
            free = tuple(int(x) for x in data["free"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ComplexError(f"bad complex schema: {exc}") from exc
        if m < 0 or len(fixed) != m + 1 or len(free) != m + 1:
            raise ComplexError("cell count lists must match the (finite) dimension")
        if any(c < 0 for c in fixed + free):
            raise ComplexError("cell counts must be nonnegative")

        def blocks(key: str, shape) -> tuple[F2Matrix, ...]:
            raw = data.get(key)
            out = []
            for k in range(m):
                nr, nc = shape(k)
                entry = None if raw is None else (raw[k] if k < len(raw) else None)
                if entry is None:
                    out.append(F2Matrix.zeros(nr, nc))
                else:
                    try:
                        mat = F2Matrix.from_rows(entry, ncols=nc) if entry \
                            else F2Matrix.zeros(0, nc)
                    except ValueError as exc:
                        raise ComplexError(f"{key}[{k}]: {exc}") from exc
                    if mat.nrows != nr:
                        raise ComplexError(
                            f"{key}[{k}] has {mat.nrows} rows, expected {nr}")
                    out.append(mat)
            return tuple(out)

        return EquivariantCellComplex(
            name=str(data.get("name", "complex")),
            dimension=m, fixed=fixed, free=free,
            alpha=blocks("alpha", lambda k: (fixed[k + 1], fixed[k])),
            e=blocks("e", lambda k: (free[k + 1], fixed[k])),
            aa_first=blocks("aa_first", lambda k: (free[k + 1], free[k])),
            aa_second=blocks("aa_second", lambda k: (free[k + 1], free[k])),
        )


# -- builder expressions ------------------------------------------------


@dataclass(frozen=True)
class Point:
    pass


@dataclass(frozen=True)
class FreeOrbit:
    pass


@dataclass(frozen=True)
class TrivialSphere:
    p: int


@dataclass(frozen=True)
class AntipodalSphere:
    n: int


@dataclass(frozen=True)
class RepSphere:
    p: int
    q: int

    def __post_init__(self) -> None:
        if not 0 <= self.q <= self.p:
            raise ComplexError("a representation sphere needs 0 <= q <= p")


@dataclass(frozen=True)
class TwistedProjectivePlane:
    pass


@dataclass(frozen=True)
class WhiskerSphere:
    pass


@dataclass(frozen=True)
class Suspend:
    expr: "SpaceExpr"


@dataclass(frozen=True)
class Wedge:
    left: "SpaceExpr"
    right: "SpaceExpr"


@dataclass(frozen=True)
class DisjointUnion:
    left: "SpaceExpr"
    right: "SpaceExpr"


SpaceExpr = Union[Point, FreeOrbit, TrivialSphere, AntipodalSphere, RepSphere,
                  TwistedProjectivePlane, WhiskerSphere, Suspend, Wedge,
                  DisjointUnion]


def _ones(nr: int, nc: int) -> F2Matrix:
    return F2Matrix(nr, nc, ((1 << nc) - 1,) * nr)


def _complex(name, fixed, free, alpha=None, e=None, aa1=None, aa2=None):
    m = len(fixed) - 1
    alpha = alpha or {}
    e = e or {}
    aa1 = aa1 or {}
    aa2 = aa2 or {}
    return EquivariantCellComplex(
        name=name, dimension=m, fixed=tuple(fixed), free=tuple(free),
        alpha=tuple(alpha.get(k, F2Matrix.zeros(fixed[k + 1], fixed[k]))
                    for k in range(m)),
        e=tuple(e.get(k, F2Matrix.zeros(free[k + 1], fixed[k]))
                for k in range(m)),
        aa_first=tuple(aa1.get(k, F2Matrix.zeros(free[k + 1], free[k]))
                       for k in range(m)),
        aa_second=tuple(aa2.get(k, F2Matrix.zeros(free[k + 1], free[k]))
                        for k in range(m)),
    )


def unreduced_suspend(x: EquivariantCellComplex) -> EquivariantCellComplex:
    """Unreduced suspension: two new fixed poles, every old cell shifted up.

    A suspended cell keeps its incidence onto other suspended cells; a
    suspended 0-cell (now a 1-cell) runs from pole to pole.
    """
    m = x.dimension
    fixed = (2,) + x.fixed
    free = (0,) + x.free
    alpha = {0: _ones(x.fixed[0], 2)}
    e = {0: _ones(x.free[0], 2)}
    aa1 = {}
    aa2 = {}
    for k in range(m):
        alpha[k + 1] = x.alpha[k]
        e[k + 1] = x.e[k]
        aa1[k + 1] = x.aa_first[k]
        aa2[k + 1] = x.aa_second[k]
    return _complex(f"susp_u({x.name})", fixed, free, alpha, e, aa1, aa2)


def formal_suspend(x: EquivariantCellComplex) -> EquivariantCellComplex:
    """Shift every cell's dimension by one (reduced-suspension shift of the
    incidence data; the result has no 0-cells and only makes sense as
    chain data)."""
    m = x.dimension
    fixed = (0,) + x.fixed
    free = (0,) + x.free
    alpha = {k + 1: x.alpha[k] for k in range(m)}
    e = {k + 1: x.e[k] for k in range(m)}
    aa1 = {k + 1: x.aa_first[k] for k in range(m)}
    aa2 = {k + 1: x.aa_second[k] for k in range(m)}
    return _complex(f"susp({x.name})", fixed, free, alpha, e, aa1, aa2)


def _pad(x: EquivariantCellComplex, m: int) -> EquivariantCellComplex:
    if x.dimension >= m:
        return x
    fixed = x.fixed + (0,) * (m - x.dimension)
    free = x.free + (0,) * (m - x.dimension)
    alpha = {k: x.alpha[k] for k in range(x.dimension)}
    e = {k: x.e[k] for k in range(x.dimension)}
    aa1 = {k: x.aa_first[k] for k in range(x.dimension)}
    aa2 = {k: x.aa_second[k] for k in range(x.dimension)}
    return _complex(x.name, fixed, free, alpha, e, aa1, aa2)


def disjoint_union(a: EquivariantCellComplex,
                   b: EquivariantCellComplex) -> EquivariantCellComplex:
    m = max(a.dimension, b.dimension)
    a = _pad(a, m)
    b = _pad(b, m)

    def diag(ma: F2Matrix, mb: F2Matrix) -> F2Matrix:
        top = ma.stack_horizontal(F2Matrix.zeros(ma.nrows, mb.ncols))
        bot = F2Matrix.zeros(mb.nrows, ma.ncols).stack_horizontal(mb)
        return top.stack_vertical(bot)

    return _complex(
        f"disjoint({a.name},{b.name})",
        [fa + fb for fa, fb in zip(a.fixed, b.fixed)],
        [ga + gb for ga, gb in zip(a.free, b.free)],
        {k: diag(a.alpha[k], b.alpha[k]) for k in range(m)},
        {k: diag(a.e[k], b.e[k]) for k in range(m)},
        {k: diag(a.aa_first[k], b.aa_first[k]) for k in range(m)},
        {k: diag(a.aa_second[k], b.aa_second[k]) for k in range(m)},
    )


def wedge(a: EquivariantCellComplex,
          b: EquivariantCellComplex) -> EquivariantCellComplex:
    """Glue at the first fixed 0-cell of each operand."""
    if a.fixed[0] == 0 or b.fixed[0] == 0:
        raise ComplexError("wedge needs a fixed 0-cell in both operands "
                           "(a fixed basepoint)")
    u = disjoint_union(a, b)
    # Merge fixed 0-cell index a.fixed[0] (b's basepoint) into index 0.
    keep = a.fixed[0]

    def merge_cols(mat: F2Matrix) -> F2Matrix:
        rows = []
        for i in range(mat.nrows):
            row = [mat.entry(i, j) for j in range(mat.ncols) if j != keep]
            row[0] ^= mat.entry(i, keep)
            rows.append(row)
        if not rows:
            return F2Matrix.zeros(0, mat.ncols - 1)
        return F2Matrix.from_rows(rows)

    fixed = list(u.fixed)
    fixed[0] -= 1
    alpha = {k: u.alpha[k] for k in range(u.dimension)}
    e = {k: u.e[k] for k in range(u.dimension)}
    if u.dimension > 0:
        alpha[0] = merge_cols(u.alpha[0])
        e[0] = merge_cols(u.e[0])
    return _complex(f"wedge({a.name},{b.name})", fixed, list(u.free),
                    alpha, e,
                    {k: u.aa_first[k] for k in range(u.dimension)},
                    {k: u.aa_second[k] for k in range(u.dimension)})


def build(expr: SpaceExpr) -> EquivariantCellComplex:
    """Realize a builder expression as incidence data."""
    if isinstance(expr, Point):
        return _complex("point", [1], [0])
    if isinstance(expr, FreeOrbit):
        return _complex("c2", [0], [1])
    if isinstance(expr, TrivialSphere):
        x = _complex("sphere:0,0", [2], [0])
        for _ in range(expr.p):
            x = unreduced_suspend(x)
        return _named(x, f"sphere:{expr.p},0")
    if isinstance(expr, AntipodalSphere):
        n = expr.n
        return _complex(
            f"antipodal:{n}", [0] * (n + 1), [1] * (n + 1),
            aa1={k: _ones(1, 1) for k in range(n)},
            aa2={k: _ones(1, 1) for k in range(n)})
    if isinstance(expr, RepSphere):
        p, q = expr.p, expr.q
        if q == 0:
            return build(TrivialSphere(p))
        x = unreduced_suspend(build(AntipodalSphere(q - 1)))
        for _ in range(p - q):
            x = unreduced_suspend(x)
        return _named(x, f"sphere:{p},{q}")
    if isinstance(expr, TwistedProjectivePlane):
        # Fixed point v, fixed boundary circle (w, c1), a free 1-orbit from
        # v to w, and a free 2-orbit of half-discs hitting the circle once
        # and both radii once.
        return _complex(
            "rp2tw", [2, 1, 0], [0, 1, 1],
            alpha={0: F2Matrix.from_rows([[0, 0]])},
            e={0: F2Matrix.from_rows([[1, 1]]), 1: F2Matrix.from_rows([[1]])},
            aa1={1: _ones(1, 1)}, aa2={1: _ones(1, 1)})
    if isinstance(expr, WhiskerSphere):
        # The (2,2)-sphere plus a fixed arc joining its two poles.
        return _complex(
            "whisker", [2, 1, 0], [0, 1, 1],
            alpha={0: F2Matrix.from_rows([[1, 1]])},
            e={0: F2Matrix.from_rows([[1, 1]]), 1: F2Matrix.from_rows([[0]])},
            aa1={1: _ones(1, 1)}, aa2={1: _ones(1, 1)})
    if isinstance(expr, Suspend):
        return formal_suspend(build(expr.expr))
    if isinstance(expr, Wedge):
        return wedge(build(expr.left), build(expr.right))
    if isinstance(expr, DisjointUnion):
        return disjoint_union(build(expr.left), build(expr.right))
    raise ComplexError(f"unknown builder expression {expr!r}")


def _named(x: EquivariantCellComplex, name: str) -> EquivariantCellComplex:
    return EquivariantCellComplex(name, x.dimension, x.fixed, x.free,
                                  x.alpha, x.e, x.aa_first, x.aa_second)


# -- validation ----------------------------------------------------------


@dataclass
class Violation:
    dimension_pair: tuple[int, int]
    block: str
    message: str

    def __str__(self) -> str:
        return (f"{self.block} at dimensions {self.dimension_pair}: "
                f"{self.message}")


def underlying_deltas(x: EquivariantCellComplex) -> tuple[list[int], list[F2Matrix]]:
    """Cochain complex of the underlying space: fixed cells plus two
    sheets per orbit, differentials in rows-are-target orientation."""
    dims = [f + 2 * a for f, a in zip(x.fixed, x.free)]
    deltas = []
    for k in range(x.dimension):
        al, ee = x.alpha[k], x.e[k]
        a1, a2 = x.aa_first[k], x.aa_second[k]
        za = F2Matrix.zeros(x.fixed[k + 1], x.free[k])
        top = al.stack_horizontal(za).stack_horizontal(za)
        mid = ee.stack_horizontal(a1).stack_horizontal(a2)
        bot = ee.stack_horizontal(a2).stack_horizontal(a1)
        deltas.append(top.stack_vertical(mid).stack_vertical(bot))
    return dims, deltas


def fixed_deltas(x: EquivariantCellComplex) -> tuple[list[int], list[F2Matrix]]:
    return list(x.fixed), list(x.alpha)


def free_deltas(x: EquivariantCellComplex) -> tuple[list[int], list[F2Matrix]]:
    return list(x.free), [x.aa_first[k].add(x.aa_second[k])
                          for k in range(x.dimension)]


def quotient_deltas(x: EquivariantCellComplex) -> tuple[list[int], list[F2Matrix]]:
    """Quotient space: fixed cells plus one cell per orbit; fixed cells
    never attach onto orbit cells."""
    dims = [f + a for f, a in zip(x.fixed, x.free)]
    deltas = []
    for k in range(x.dimension):
        zfa = F2Matrix.zeros(x.fixed[k + 1], x.free[k])
        top = x.alpha[k].stack_horizontal(zfa)
        bot = x.e[k].stack_horizontal(x.aa_first[k].add(x.aa_second[k]))
        deltas.append(top.stack_vertical(bot))
    return dims, deltas


@dataclass(frozen=True)
class ScalarComplex:
    """Weight-independent block data of the equivariant cellular complex:
    MM = alpha, MA = e, AA = sheet sum, and the absent fixed-onto-orbit
    block is identically zero.  ``aa_sheet`` keeps one chosen sheet's
    degrees, which feed the multi-step transport entries (a fixed cell's
    classes reach free orbits several dimensions up through composites of
    sheet attachings; the single-sheet products make the per-weight
    complex square to zero by the underlying boundary identities)."""

    dimension: int
    fixed: tuple[int, ...]
    free: tuple[int, ...]
    mm: tuple[F2Matrix, ...]
    ma: tuple[F2Matrix, ...]
    aa: tuple[F2Matrix, ...]
    aa_sheet: tuple[F2Matrix, ...]

    def transport(self, t: int, k: int) -> F2Matrix:
        """Composite degree of free t-orbits onto fixed k-cells through one
        chosen sheet at each intermediate step (t > k); transport(k+1, k)
        is the plain e block."""
        if not 0 <= k < t <= self.dimension:
            raise ValueError("transport needs 0 <= k < t <= dimension")
        mat = self.ma[k]
        for j in range(k + 1, t):
            mat = self.aa_sheet[j].matmul(mat)
        return mat


def scalar_complex(x: EquivariantCellComplex) -> ScalarComplex:
    return ScalarComplex(
        dimension=x.dimension, fixed=x.fixed, free=x.free,
        mm=tuple(x.alpha),
        ma=tuple(x.e),
        aa=tuple(x.aa_first[k].add(x.aa_second[k]) for k in range(x.dimension)),
        aa_sheet=tuple(x.aa_first),
    )


def validate_complex(x: EquivariantCellComplex) -> Optional[Violation]:
    """None when the data is consistent, else the first violation found.

    Checks block shapes, that the fixed-subcomplex coboundary squares to
    zero, and that the underlying-space coboundary squares to zero.
    """
    for k in range(x.dimension):
        shapes = [
            ("alpha", x.alpha[k], x.fixed[k + 1], x.fixed[k]),
            ("e", x.e[k], x.free[k + 1], x.fixed[k]),
            ("aa_first", x.aa_first[k], x.free[k + 1], x.free[k]),
            ("aa_second", x.aa_second[k], x.free[k + 1], x.free[k]),
        ]
        for name, mat, nr, nc in shapes:
            if (mat.nrows, mat.ncols) != (nr, nc):
                return Violation((k, k + 1), name,
                                 f"shape {(mat.nrows, mat.ncols)} != {(nr, nc)}")
    for k in range(x.dimension - 1):
        if not x.alpha[k + 1].matmul(x.alpha[k]).is_zero():
            return Violation((k, k + 2), "alpha",
                             "fixed-subcomplex boundary does not square to zero")
    _, deltas = underlying_deltas(x)
    for k in range(x.dimension - 1):
        if not deltas[k + 1].matmul(deltas[k]).is_zero():
            return Violation((k, k + 2), "underlying",
                             "underlying boundary does not square to zero")
    return None


def derived_complexes(x: EquivariantCellComplex):
    """(fixed, underlying, quotient, scalar) data for a validated complex."""
    violation = validate_complex(x)
    if violation is not None:
        raise ComplexError(str(violation))
    return (fixed_deltas(x), underlying_deltas(x), quotient_deltas(x),
            scalar_complex(x))


def normalize_sheets(x: EquivariantCellComplex) -> EquivariantCellComplex:
    """Deterministic sheet-gauge normalization.

    Processes orbits by dimension then index; an orbit's distinguished
    sheet is flipped when its (first, second) attaching rows compare
    lexicographically decreasing (dimension-0 orbits use their target
    column pair instead).  Flipping swaps the orbit's row pair as a
    source and its column pair as a target.
    """
    aa1 = [m.to_lists() for m in x.aa_first]
    aa2 = [m.to_lists() for m in x.aa_second]

    def flip(dim: int, idx: int) -> None:
        if dim >= 1:
            aa1[dim - 1][idx], aa2[dim - 1][idx] = aa2[dim - 1][idx], aa1[dim - 1][idx]
        if dim < x.dimension:
            for i in range(x.free[dim + 1]):
                aa1[dim][i][idx], aa2[dim][i][idx] = aa2[dim][i][idx], aa1[dim][i][idx]

    for dim in range(x.dimension + 1):
        for idx in range(x.free[dim]):
            if dim >= 1:
                first, second = aa1[dim - 1][idx], aa2[dim - 1][idx]
            elif x.dimension >= 1:
                first = [aa1[0][i][idx] for i in range(x.free[1])]
                second = [aa2[0][i][idx] for i in range(x.free[1])]
            else:
                continue
            if first > second:
                flip(dim, idx)

    def rebuild(lists, k):
        if x.free[k + 1] == 0:
            return F2Matrix.zeros(0, x.free[k])
        return F2Matrix.from_rows(lists[k], ncols=x.free[k])

    return EquivariantCellComplex(
        x.name, x.dimension, x.fixed, x.free, x.alpha, x.e,
        tuple(rebuild(aa1, k) for k in range(x.dimension)),
        tuple(rebuild(aa2, k) for k in range(x.dimension)),
    )
