"""Windowed bigraded modules over the point ring, and the decomposition
algorithm into standard summands.

A module is materialized on a finite bidegree window as per-bidegree F2
vector spaces with operator matrices for r (to (p+1,q+1)), t (to
(p,q+1)) and T (to (p,q-2)).  ``realize`` evaluates a decomposition in
closed form; ``cohomology_dims`` computes the exact per-bidegree group
dimensions of the equivariant cellular complex; ``decompose_module``
recovers the summand multiset of a standard-form module; and
``check_consequences`` tests the kernel/image containments and vanishing
regions that the cohomology of a finite complex must satisfy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from . import f2linalg
from .f2linalg import F2Matrix
from .m2algebra import (AntipodalShift, Bidegree, Decomposition, FreeShift,
                        cone_supports, summand_data)
from .cwcell import ScalarComplex


class DecompositionError(ValueError):
    """The module cannot be the cohomology of a finite complex (or the
    window is too small to decide)."""


@dataclass(frozen=True, order=True)
class Window:
    p_min: int
    p_max: int
    q_min: int
    q_max: int

    def __post_init__(self) -> None:
        if self.p_min > self.p_max or self.q_min > self.q_max:
            raise ValueError("empty window")

    def __contains__(self, pq: tuple[int, int]) -> bool:
        p, q = pq
        return self.p_min <= p <= self.p_max and self.q_min <= q <= self.q_max

    def __iter__(self) -> Iterator[tuple[int, int]]:
        for p in range(self.p_min, self.p_max + 1):
            for q in range(self.q_min, self.q_max + 1):
                yield (p, q)

    def to_json(self) -> dict:
        return {"p_min": self.p_min, "p_max": self.p_max,
                "q_min": self.q_min, "q_max": self.q_max}

    @staticmethod
    def from_json(data: dict) -> "Window":
        return Window(int(data["p_min"]), int(data["p_max"]),
                      int(data["q_min"]), int(data["q_max"]))


def default_window(m: int) -> Window:
    """Window for a dimension-m complex: wide enough for the generator
    triangle, its T-targets, every lower-cone corner, and the vanishing
    test strips, with interior margin for kernel/image computations."""
    return Window(-2, m + 2, -m - 6, m + 3)


@dataclass(frozen=True)
class DimTable:
    window: Window
    dims: dict[tuple[int, int], int]

    def get(self, p: int, q: int) -> int:
        if (p, q) not in self.window:
            raise KeyError(f"bidegree ({p},{q}) outside the window")
        return self.dims.get((p, q), 0)

    def to_json(self) -> dict:
        w = self.window
        table = [[self.dims.get((p, q), 0)
                  for q in range(w.q_min, w.q_max + 1)]
                 for p in range(w.p_min, w.p_max + 1)]
        return {"window": w.to_json(), "dims": table}

    @staticmethod
    def from_json(data: dict) -> "DimTable":
        w = Window.from_json(data["window"])
        table = data["dims"]
        dims = {}
        for i, p in enumerate(range(w.p_min, w.p_max + 1)):
            for j, q in enumerate(range(w.q_min, w.q_max + 1)):
                v = int(table[i][j])
                if v:
                    dims[(p, q)] = v
        return DimTable(w, dims)


@dataclass(frozen=True)
class BigradedModule:
    """Per-bidegree spaces with operator matrices (rows index the target
    basis).  A matrix is stored for every bidegree whose source and
    target both lie in the window."""

    window: Window
    dims: dict[tuple[int, int], int]
    rho: dict[tuple[int, int], F2Matrix]
    tau: dict[tuple[int, int], F2Matrix]
    theta: dict[tuple[int, int], F2Matrix]

    def dim(self, p: int, q: int) -> int:
        return self.dims.get((p, q), 0)

    def _op(self, table, p, q, dp, dq) -> Optional[F2Matrix]:
        if (p, q) not in self.window or (p + dp, q + dq) not in self.window:
            return None
        mat = table.get((p, q))
        if mat is None:
            return F2Matrix.zeros(self.dim(p + dp, q + dq), self.dim(p, q))
        return mat

    def rho_at(self, p: int, q: int) -> Optional[F2Matrix]:
        return self._op(self.rho, p, q, 1, 1)

    def tau_at(self, p: int, q: int) -> Optional[F2Matrix]:
        return self._op(self.tau, p, q, 0, 1)

    def theta_at(self, p: int, q: int) -> Optional[F2Matrix]:
        return self._op(self.theta, p, q, 0, -2)

    def dim_table(self) -> DimTable:
        return DimTable(self.window, dict(self.dims))

    def to_json(self) -> dict:
        def ops(table):
            return {f"{p},{q}": mat.to_lists()
                    for (p, q), mat in sorted(table.items())
                    if not mat.is_zero()}
        out = self.dim_table().to_json()
        out.update({"rho": ops(self.rho), "tau": ops(self.tau),
                    "theta": ops(self.theta)})
        return out

    @staticmethod
    def from_json(data: dict) -> "BigradedModule":
        table = DimTable.from_json(data)
        w = table.window
        dims = table.dims

        def parse_ops(key: str, dp: int, dq: int) -> dict:
            out = {}
            for loc, rows in data.get(key, {}).items():
                p, q = (int(v) for v in loc.split(","))
                nr = dims.get((p + dp, q + dq), 0)
                nc = dims.get((p, q), 0)
                mat = F2Matrix.from_rows(rows, ncols=nc) if rows else \
                    F2Matrix.zeros(nr, nc)
                if (mat.nrows, mat.ncols) != (nr, nc):
                    raise ValueError(f"{key} block at ({p},{q}) has shape "
                                     f"{(mat.nrows, mat.ncols)}, expected {(nr, nc)}")
                out[(p, q)] = mat
            return out

        return BigradedModule(w, dims, parse_ops("rho", 1, 1),
                              parse_ops("tau", 0, 1), parse_ops("theta", 0, -2))


# -- realization ---------------------------------------------------------


def realize(d: Decomposition, w: Window) -> BigradedModule:
    """Direct sum of closed-form summand evaluations; the basis at each
    bidegree lists the supporting summands in decomposition order."""
    support: dict[tuple[int, int], list[int]] = {}
    bits: dict[tuple[int, int], list[tuple[int, int, int]]] = {}
    dims: dict[tuple[int, int], int] = {}
    for (p, q) in w:
        idx = []
        opbits = []
        for i, s in enumerate(d):
            dim, rb, tb, hb = summand_data(s, Bidegree(p, q))
            if dim:
                idx.append(i)
                opbits.append((rb, tb, hb))
        if idx:
            support[(p, q)] = idx
            bits[(p, q)] = opbits
            dims[(p, q)] = len(idx)

    def op_table(which: int, dp: int, dq: int) -> dict:
        out = {}
        for (p, q), idx in support.items():
            tgt = (p + dp, q + dq)
            if tgt not in w:
                continue
            tidx = support.get(tgt, [])
            if not tidx:
                continue
            rows = []
            pos = {i: j for j, i in enumerate(idx)}
            for ti in tidx:
                mask = 0
                if ti in pos and bits[(p, q)][pos[ti]][which]:
                    mask = 1 << pos[ti]
                rows.append(mask)
            mat = F2Matrix(len(tidx), len(idx), tuple(rows))
            if not mat.is_zero():
                out[(p, q)] = mat
        return out

    return BigradedModule(w, dims, op_table(0, 1, 1), op_table(1, 0, 1),
                          op_table(2, 0, -2))


# -- exact per-bidegree dimensions of the cellular complex ---------------


def cochain_cohomology_dims(dims: list[int], deltas: list[F2Matrix]) -> list[int]:
    """Cohomology dimensions of a finite F2 cochain complex (deltas in
    rows-index-the-target orientation)."""
    ranks = [f2linalg.rank(d) for d in deltas]
    out = []
    for k, dim in enumerate(dims):
        r_out = ranks[k] if k < len(ranks) else 0
        r_in = ranks[k - 1] if k >= 1 else 0
        out.append(dim - r_out - r_in)
    return out


def cohomology_dims(sc: ScalarComplex, w: Window) -> DimTable:
    """Exact group dimensions of the equivariant cohomology, per bidegree.

    For each weight q this assembles the cellular cochain complex in the
    topological direction p: a fixed k-cell contributes wherever the
    point-ring pattern supports the relative bidegree (p-k, q), and a
    free orbit contributes one line at p = k for every q.  The
    differential carries the fixed-to-fixed block on matching pattern
    positions, the sheet-sum block between orbit lines, and, from every
    upper-cone position of a fixed cell, the transport entry onto the
    free orbits one step up in p (the plain e block from the cell's own
    τ-line, and chosen-sheet composites from positions further up the
    cone; lower-cone positions map nowhere).  Only dimensions are
    returned: the chain-level module action sees just the associated
    graded, so operators on the answer are hidden-extension-sensitive
    and deliberately not exposed here.
    """
    m = sc.dimension
    dims: dict[tuple[int, int], int] = {}

    def slots(p: int, q: int) -> list[int]:
        return [k for k in range(m + 1)
                if sc.fixed[k] and cone_supports(Bidegree(p - k, q))]

    def total_dim(p: int, q: int) -> int:
        n = sum(sc.fixed[k] for k in slots(p, q))
        if 0 <= p <= m:
            n += sc.free[p]
        return n

    def delta(p: int, q: int) -> F2Matrix:
        src_slots = slots(p, q)
        tgt_slots = slots(p + 1, q)
        src_free = sc.free[p] if 0 <= p <= m else 0
        tgt_free = sc.free[p + 1] if 0 <= p + 1 <= m else 0
        ncols = sum(sc.fixed[k] for k in src_slots) + src_free
        blocks = []
        for kt in tgt_slots:
            row = []
            for ks in src_slots:
                if kt == ks + 1 and ks < m:
                    row.append(sc.mm[ks])
                else:
                    row.append(F2Matrix.zeros(sc.fixed[kt], sc.fixed[ks]))
            row.append(F2Matrix.zeros(sc.fixed[kt], src_free))
            blocks.append(row)
        if tgt_free:
            row = []
            for ks in src_slots:
                if 0 <= p - ks <= q:
                    row.append(sc.transport(p + 1, ks))
                else:
                    row.append(F2Matrix.zeros(tgt_free, sc.fixed[ks]))
            row.append(sc.aa[p] if src_free else F2Matrix.zeros(tgt_free, 0))
            blocks.append(row)
        if not blocks:
            return F2Matrix.zeros(0, ncols)
        rows = [r[0] for r in blocks]
        for i, r in enumerate(blocks):
            for b in r[1:]:
                rows[i] = rows[i].stack_horizontal(b)
        out = rows[0]
        for r in rows[1:]:
            out = out.stack_vertical(r)
        return out

    for q in range(w.q_min, w.q_max + 1):
        ranks: dict[int, int] = {}
        for p in range(w.p_min - 1, w.p_max + 1):
            ranks[p] = f2linalg.rank(delta(p, q))
        for p in range(w.p_min, w.p_max + 1):
            d = total_dim(p, q) - ranks[p] - ranks[p - 1]
            if d:
                dims[(p, q)] = d
    return DimTable(w, dims)


# -- graded modules over a degree-one polynomial generator ---------------


@dataclass(frozen=True)
class GradedPolynomialModule:
    """A finite graded module over F2[x] with x of degree one: spaces
    indexed by an integer degree with a shift map between consecutive
    degrees."""

    lo: int
    hi: int
    dims: dict[int, int]
    x: dict[int, F2Matrix]  # x[r]: degree r -> r+1, for lo <= r < hi

    def dim(self, r: int) -> int:
        return self.dims.get(r, 0)

    def power_rank(self, r: int, k: int) -> int:
        """Rank of x^k starting at degree r; zero once the chain dies."""
        if self.dim(r) == 0:
            return 0
        if k == 0:
            return self.dim(r)
        cur = F2Matrix.identity(self.dim(r))
        for j in range(k):
            t = r + j
            if self.dim(t + 1) == 0:
                return 0
            if t >= self.hi:
                raise DecompositionError(
                    "window too small to certify nilpotence of the shift "
                    f"operator from degree {r}")
            step = self.x.get(t, F2Matrix.zeros(self.dim(t + 1), self.dim(t)))
            cur = step.matmul(cur)
            if all(row == 0 for row in cur.rows):
                return 0
        return f2linalg.rank(cur)

    def cyclic_multiplicities(self, max_len: int) -> dict[tuple[int, int], int]:
        """Multiset of cyclic summands S^r F2[x]/(x^l) via rank statistics.

        With R_k(r) the rank of x^k out of degree r and
        D_k(r) = R_k(r) - R_{k+1}(r), the multiplicity of the cyclic
        summand starting at r of length l is D_{l-1}(r) - D_l(r-1).
        Raises when the statistics are inconsistent (negative count) or a
        free summand is present (x^max_len has positive rank).
        """
        R: dict[tuple[int, int], int] = {}
        for r in range(self.lo, self.hi + 1):
            for k in range(max_len + 2):
                R[(k, r)] = self.power_rank(r, k)
            if R[(max_len, r)] > 0:
                raise DecompositionError(
                    f"free polynomial summand detected at degree {r}: "
                    f"x^{max_len} has positive rank")

        def D(k: int, r: int) -> int:
            if r < self.lo or r > self.hi:
                return 0
            return R[(k, r)] - R[(k + 1, r)]

        out: dict[tuple[int, int], int] = {}
        for r in range(self.lo, self.hi + 1):
            for length in range(1, max_len + 1):
                c = D(length - 1, r) - D(length, r - 1)
                if c < 0:
                    raise DecompositionError(
                        "inconsistent rank statistics at degree "
                        f"{r}, length {length}")
                if c:
                    out[(r, length)] = c
        return out


# -- the decomposition algorithm -----------------------------------------


def _theta_generator_positions(m_mod: BigradedModule, m: int):
    """Free multiplicities from the rank of T, asserting they stay in the
    generator triangle."""
    free: list[FreeShift] = []
    gens: dict[tuple[int, int], list[int]] = {}
    w = m_mod.window
    for (p, q) in w:
        th = m_mod.theta_at(p, q)
        if th is None:
            continue
        r = f2linalg.rank(th)
        if r == 0:
            continue
        if not (0 <= q <= p <= m):
            raise DecompositionError(
                "not a finite-complex cohomology module: T has rank "
                f"{r} at ({p},{q}) outside the generator triangle")
        free.extend([FreeShift(p, q)] * r)
        gens[(p, q)] = f2linalg.pivot_columns(th)
    return free, gens


def _free_span_on_rows(m_mod: BigradedModule, gens, rows: list[int]):
    """Span of the free submodule generated by the chosen lifts, at every
    bidegree of the given weight rows."""
    w = m_mod.window
    span: dict[tuple[int, int], list[int]] = {
        (p, q): [] for q in rows for p in range(w.p_min, w.p_max + 1)}
    for (pg, qg), cols in gens.items():
        for q in rows:
            for p in range(w.p_min, w.p_max + 1):
                a = p - pg
                b = q - qg - a
                if a < 0 or b < 0:
                    continue
                vecs = [1 << c for c in cols]
                ok = True
                for j in range(a):
                    mat = m_mod.rho_at(pg + j, qg + j)
                    if mat is None:
                        ok = False
                        break
                    vecs = [mat.mul_vector(v) for v in vecs]
                for j in range(b):
                    if not ok:
                        break
                    mat = m_mod.tau_at(p, qg + a + j)
                    if mat is None:
                        ok = False
                        break
                    vecs = [mat.mul_vector(v) for v in vecs]
                if not ok:
                    raise DecompositionError(
                        "window too small to transport generators to row "
                        f"q={q}")
                span[(p, q)].extend(v for v in vecs if v)
    return span


def decompose_module(m_mod: BigradedModule, m: int) -> Decomposition:
    """Summand multiset of a standard-form module on an adequate window.

    Step 1 reads free multiplicities off the rank of T inside the
    generator triangle.  Step 2 quotients by the submodule the chosen
    generators span on the two rows above the triangle, where t must act
    invertibly.  Step 3 decomposes the quotient row under x = t^-1 r as a
    graded module over a polynomial ring on one degree-one generator.
    """
    w = m_mod.window
    q_row = m + 1
    if (0, q_row + 1) not in w or w.p_max < m + 1:
        raise DecompositionError(
            f"window {w} too small: need q up to {q_row + 1} and p up to {m + 1}")

    free, gens = _theta_generator_positions(m_mod, m)
    span = _free_span_on_rows(m_mod, gens, [q_row, q_row + 1])

    proj: dict[tuple[int, int], F2Matrix] = {}
    section: dict[tuple[int, int], F2Matrix] = {}
    for (p, q), vecs in span.items():
        n = m_mod.dim(p, q)
        proj[(p, q)] = f2linalg.project_to_quotient(vecs, n)
        section[(p, q)] = F2Matrix.from_columns(
            f2linalg.quotient_basis(vecs, n), n)

    def induced(mat: Optional[F2Matrix], src, tgt) -> F2Matrix:
        if mat is None:
            raise DecompositionError("window too small for quotient operators")
        return proj[tgt].matmul(mat.matmul(section[src]))

    xmaps: dict[int, F2Matrix] = {}
    qdims: dict[int, int] = {}
    for p in range(w.p_min, w.p_max + 1):
        qdims[p] = proj[(p, q_row)].nrows
    for p in range(w.p_min, w.p_max + 1):
        q_tau = induced(m_mod.tau_at(p, q_row), (p, q_row), (p, q_row + 1))
        if q_tau.nrows != q_tau.ncols or f2linalg.rank(q_tau) != q_tau.nrows:
            raise DecompositionError(
                "not a finite-complex cohomology module: t is not an "
                f"isomorphism on the quotient at p={p}")
        if p < w.p_max:
            q_rho = induced(m_mod.rho_at(p, q_row), (p, q_row), (p + 1, q_row + 1))
            tau_next = induced(m_mod.tau_at(p + 1, q_row),
                               (p + 1, q_row), (p + 1, q_row + 1))
            if f2linalg.rank(tau_next) != tau_next.nrows:
                raise DecompositionError(
                    "not a finite-complex cohomology module: t is not an "
                    f"isomorphism on the quotient at p={p + 1}")
            xmaps[p] = f2linalg.inverse(tau_next).matmul(q_rho)

    gm = GradedPolynomialModule(w.p_min, w.p_max, qdims, xmaps)
    strips: list[AntipodalShift] = []
    for (r, length), c in sorted(gm.cyclic_multiplicities(m + 1).items()):
        if not (0 <= r and r + length - 1 <= m):
            raise DecompositionError(
                f"strip summand at degree {r} with length {length} violates "
                f"the dimension bounds for a dimension-{m} complex")
        strips.extend([AntipodalShift(r, length - 1)] * c)

    return Decomposition.of(*free, *strips)


def is_standard_isomorphic(a: BigradedModule, b: BigradedModule) -> bool:
    """Isomorphism test for standard-form modules on equal windows: equal
    dimensions, equal T-ranks, and equal x-power ranks on the quotient
    rows determine the summand multiset."""
    if a.window != b.window:
        raise ValueError("window mismatch")
    w = a.window
    for (p, q) in w:
        if a.dim(p, q) != b.dim(p, q):
            return False
        ta, tb = a.theta_at(p, q), b.theta_at(p, q)
        if ta is not None and f2linalg.rank(ta) != f2linalg.rank(tb):
            return False

    def x_ranks(mod: BigradedModule):
        gens = {}
        for (p, q) in w:
            th = mod.theta_at(p, q)
            if th is not None and f2linalg.rank(th):
                gens[(p, q)] = f2linalg.pivot_columns(th)
        q_row = w.q_max - 1
        span = _free_span_on_rows(mod, gens, [q_row, q_row + 1])
        proj = {key: f2linalg.project_to_quotient(vecs, mod.dim(*key))
                for key, vecs in span.items()}
        sect = {key: F2Matrix.from_columns(
            f2linalg.quotient_basis(vecs, mod.dim(*key)), mod.dim(*key))
            for key, vecs in span.items()}
        xmaps = {}
        qdims = {p: proj[(p, q_row)].nrows for p in range(w.p_min, w.p_max + 1)}
        for p in range(w.p_min, w.p_max):
            tau_next = proj[(p + 1, q_row + 1)].matmul(
                mod.tau_at(p + 1, q_row).matmul(sect[(p + 1, q_row)]))
            if f2linalg.rank(tau_next) != tau_next.nrows:
                raise DecompositionError(
                    "t is not invertible on the quotient row; not standard form")
            rho_q = proj[(p + 1, q_row + 1)].matmul(
                mod.rho_at(p, q_row).matmul(sect[(p, q_row)]))
            xmaps[p] = f2linalg.inverse(tau_next).matmul(rho_q)
        gm = GradedPolynomialModule(w.p_min, w.p_max, qdims, xmaps)
        max_len = w.p_max - w.p_min
        return {(r, k): gm.power_rank(r, k)
                for r in range(w.p_min, w.p_max + 1)
                for k in range(max_len + 1)}

    return x_ranks(a) == x_ranks(b)


# -- consequence checks ---------------------------------------------------


@dataclass(frozen=True)
class ConsequenceViolation:
    check: str
    p: int
    q: int

    def __str__(self) -> str:
        return f"{self.check} fails at ({self.p},{self.q})"


def check_consequences(m_mod: BigradedModule,
                       m: Optional[int] = None) -> list[ConsequenceViolation]:
    """Kernel/image containments and vanishing regions, per bidegree.

    Checks, wherever every matrix involved stays inside the window:
    ker T <= im r + im t; ker r & ker t <= im T; ker t <= im r;
    ker r <= im t; and vanishing on the region left of the lower cone
    (p < 0, q > p-2) and, when the complex dimension m is given, on the
    region below the shifted diagonal (p > m, q < p-m).  Any module
    realized from a decomposition passes all of them.
    """
    out: list[ConsequenceViolation] = []
    w = m_mod.window
    for (p, q) in w:
        n = m_mod.dim(p, q)
        if p < 0 and q > p - 2 and n:
            out.append(ConsequenceViolation("vanishing-left-region", p, q))
        if m is not None and p > m and q < p - m and n:
            out.append(ConsequenceViolation("vanishing-right-region", p, q))
        if n == 0:
            continue

        theta = m_mod.theta_at(p, q)
        rho_in = m_mod.rho_at(p - 1, q - 1)
        tau_in = m_mod.tau_at(p, q - 1)
        theta_in = m_mod.theta_at(p, q + 2)
        rho_out = m_mod.rho_at(p, q)
        tau_out = m_mod.tau_at(p, q)

        if theta is not None and rho_in is not None and tau_in is not None:
            _, ker, _ = f2linalg.row_reduce(theta)
            image = rho_in.columns() + tau_in.columns()
            if not f2linalg.span_contains_space(image, ker, n):
                out.append(ConsequenceViolation("theta-kernel", p, q))
        if rho_out is not None and tau_out is not None and theta_in is not None:
            stacked = rho_out.stack_vertical(tau_out)
            _, ker, _ = f2linalg.row_reduce(stacked)
            if not f2linalg.span_contains_space(theta_in.columns(), ker, n):
                out.append(ConsequenceViolation("rho-tau-kernel", p, q))
        if tau_out is not None and rho_in is not None:
            _, ker, _ = f2linalg.row_reduce(tau_out)
            if not f2linalg.span_contains_space(rho_in.columns(), ker, n):
                out.append(ConsequenceViolation("tau-kernel", p, q))
        if rho_out is not None and tau_in is not None:
            _, ker, _ = f2linalg.row_reduce(rho_out)
            if not f2linalg.span_contains_space(tau_in.columns(), ker, n):
                out.append(ConsequenceViolation("rho-kernel", p, q))
    return out


# -- homology and Borel outputs -------------------------------------------


@dataclass(frozen=True, order=True)
class DualFreeShift:
    p: int
    q: int


@dataclass(frozen=True, order=True)
class DualAntipodalShift:
    r: int
    n: int


@dataclass(frozen=True)
class DualDecomposition:
    """Homology answer: dual point-ring copies (support reflected through
    the generator, r acting with bidegree (-1,-1) and t with (0,-1)) and
    dual strips (same strip, operators reversed)."""

    summands: tuple

    def dim_at(self, p: int, q: int) -> int:
        total = 0
        for s in self.summands:
            if isinstance(s, DualFreeShift):
                if cone_supports(Bidegree(s.p - p, s.q - q)):
                    total += 1
            else:
                if s.r <= p <= s.r + s.n:
                    total += 1
        return total

    def dim_table(self, w: Window) -> DimTable:
        dims = {}
        for (p, q) in w:
            v = self.dim_at(p, q)
            if v:
                dims[(p, q)] = v
        return DimTable(w, dims)

    def to_json(self) -> list[dict]:
        out = []
        for s in self.summands:
            if isinstance(s, DualFreeShift):
                out.append({"type": "M2*", "p": s.p, "q": s.q})
            else:
                out.append({"type": "A*", "r": s.r, "n": s.n})
        return out


def dualize(d: Decomposition) -> DualDecomposition:
    summands = []
    for s in d:
        if isinstance(s, FreeShift):
            summands.append(DualFreeShift(s.p, s.q))
        else:
            summands.append(DualAntipodalShift(s.r, s.n))
    return DualDecomposition(tuple(sorted(
        summands, key=lambda s: (isinstance(s, DualAntipodalShift),
                                 s.p if isinstance(s, DualFreeShift) else s.r,
                                 s.q if isinstance(s, DualFreeShift) else s.n))))


@dataclass(frozen=True, order=True)
class FreePoly:
    degree: int


@dataclass(frozen=True, order=True)
class TorsionPoly:
    degree: int
    length: int

    def __post_init__(self) -> None:
        if self.length < 1 or self.degree < 0:
            raise ValueError("torsion summands need length >= 1, degree >= 0")


def borel(d: Decomposition) -> list:
    """Borel-style output: a free polynomial summand per point-ring copy
    (at its topological degree) and a torsion summand of length n+1 per
    strip."""
    out = []
    for s in d:
        if isinstance(s, FreeShift):
            out.append(FreePoly(s.p))
        else:
            out.append(TorsionPoly(s.r, s.n + 1))
    return sorted(out, key=lambda b: (isinstance(b, TorsionPoly),
                                      b.degree,
                                      getattr(b, "length", 0)))


def borel_to_json(summands: list) -> list[dict]:
    out = []
    for b in summands:
        if isinstance(b, FreePoly):
            out.append({"type": "free", "degree": b.degree})
        else:
            out.append({"type": "torsion", "degree": b.degree,
                        "length": b.length})
    return out
