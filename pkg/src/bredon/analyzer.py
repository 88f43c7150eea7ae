"""Cell data to decomposition: exact invariants, candidate enumeration,
constraint pruning, and the two-stage extension tool.

``analyze`` computes the invariant profile of a complex, enumerates
every decomposition compatible with the generator-triangle and
strip-coverage bounds, and filters by exact dimension match, the
forgetful rank bookkeeping against the underlying space, and the
underlying endpoint multiset.  Ambiguity is a first-class outcome: when
several decompositions are indistinguishable by every implemented
invariant, all of them are reported.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from . import f2linalg
from .f2linalg import F2Matrix
from .m2algebra import (AntipodalShift, Bidegree, Decomposition, FreeShift,
                        HomElement, decomposition_sort_key, hom_basis,
                        summand_data)
from .cwcell import EquivariantCellComplex, derived_complexes
from .gridmodule import (BigradedModule, DimTable, Window,
                         check_consequences, cochain_cohomology_dims,
                         cohomology_dims, default_window, realize)


class AnalysisError(ValueError):
    pass


class ProfileError(AnalysisError):
    """An exact identity between derived invariants failed; the incidence
    data cannot come from an actual space (or there is a bug)."""


@dataclass(frozen=True)
class InvariantProfile:
    """Exactly computable invariants of a complex: the bidegree dimension
    table plus the mod-2 cohomology dimensions of the fixed subcomplex,
    the underlying space, and the quotient."""

    dimension: int
    table: DimTable
    fixed_dims: tuple[int, ...]
    underlying_dims: tuple[int, ...]
    quotient_dims: tuple[int, ...]

    def to_json(self) -> dict:
        out = {"dimension": self.dimension,
               "fixed": list(self.fixed_dims),
               "underlying": list(self.underlying_dims),
               "quotient": list(self.quotient_dims)}
        out.update(self.table.to_json())
        return out


def compute_profile(x: EquivariantCellComplex,
                    window: Optional[Window] = None) -> InvariantProfile:
    """Profile of a validated complex, with its internal consistency
    identities asserted."""
    fixed, underlying, quotient, scalar = derived_complexes(x)
    h_fixed = cochain_cohomology_dims(*fixed)
    h_under = cochain_cohomology_dims(*underlying)
    h_quot = cochain_cohomology_dims(*quotient)
    w = window or default_window(x.dimension)
    table = cohomology_dims(scalar, w)
    m = x.dimension

    for p in range(w.p_min, w.p_max + 1):
        expected = h_quot[p] if 0 <= p <= m else 0
        if table.get(p, 0) != expected:
            raise ProfileError(
                f"weight-zero row disagrees with the quotient cohomology at p={p}")
    for (p, q) in w:
        if table.get(p, q) and ((p < 0 and q > p - 2) or (p > m and q < p - m)):
            raise ProfileError(
                f"dimension table violates a vanishing region at ({p},{q})")

    return InvariantProfile(m, table, tuple(h_fixed), tuple(h_under),
                            tuple(h_quot))


# -- forgetful rank bookkeeping -------------------------------------------


def forgetful_feasible(d: Decomposition, underlying_dims) -> bool:
    """Exactness-forced identity between the candidate's dimensions and
    r-ranks and the underlying cohomology: for every p and every weight in
    a verification band,

        u_{p+1} = (dim(p+1,q+1) - rank r at (p,q))
                + (dim(p+1,q)   - rank r at (p+1,q)).

    The identity is weight-uniform on standard modules, so the band check
    is exhaustive.
    """
    u = list(underlying_dims)
    extent = [len(u) - 1]
    for s in d:
        if isinstance(s, FreeShift):
            extent.append(abs(s.p) + abs(s.q))
        else:
            extent.append(s.r + s.n)
    span = max(extent) + 2

    def u_at(t: int) -> int:
        return u[t] if 0 <= t < len(u) else 0

    for t in range(-2, span + 2):
        for q in range(-span - 4, span + 5):
            lhs = (d.dim_at(t, q + 1) - d.rho_rank_at(t - 1, q)) \
                + (d.dim_at(t, q) - d.rho_rank_at(t, q))
            if lhs != u_at(t):
                return False
    return True


# -- candidate enumeration --------------------------------------------------


def _free_multisets_with_marginals(m: int, marginals) -> list[tuple[FreeShift, ...]]:
    """All generator multisets in the triangle 0 <= q <= p <= m whose
    fixed-set-dimension marginals match (one marginal per diagonal)."""
    per_diagonal = []
    for k, count in enumerate(marginals):
        positions = [FreeShift(p, p - k) for p in range(k, m + 1)]
        if count and not positions:
            return []
        per_diagonal.append(
            list(itertools.combinations_with_replacement(positions, count)))
    out = []
    for combo in itertools.product(*per_diagonal):
        out.append(tuple(itertools.chain.from_iterable(combo)))
    return out


def _free_multisets_unconstrained(m: int, total: int) -> list[tuple[FreeShift, ...]]:
    triangle = [FreeShift(p, q) for p in range(m + 1) for q in range(p + 1)]
    return [tuple(c) for c in
            itertools.combinations_with_replacement(triangle, total)]


def _strip_multisets(coverage: list[int]) -> list[tuple[AntipodalShift, ...]]:
    """All multisets of intervals inside [0, m] whose pointwise coverage
    equals the given function."""
    m = len(coverage) - 1
    results: set[tuple[AntipodalShift, ...]] = set()

    def rec(p: int, active: tuple[int, ...], done: tuple):
        if p > m:
            if not any(coverage[i] < 0 for i in range(m + 1)):
                final = done + tuple((s, m) for s in active)
                results.add(tuple(sorted(
                    AntipodalShift(s, e - s) for s, e in final)))
            return
        need = coverage[p]
        if need < 0:
            return
        cnt = Counter(active)
        starts = sorted(cnt)

        def choose(i: int, kept: tuple[int, ...]):
            if len(kept) > need:
                return
            if i == len(starts):
                ended = list(active)
                for s in kept:
                    ended.remove(s)
                new = (p,) * (need - len(kept))
                rec(p + 1, tuple(sorted(kept + new)),
                    done + tuple((s, p - 1) for s in ended))
                return
            s = starts[i]
            for take in range(cnt[s] + 1):
                choose(i + 1, kept + (s,) * take)

        choose(0, ())

    rec(0, (), ())
    return sorted(results)


def _dims_match(d: Decomposition, table: DimTable, w: Window) -> bool:
    for (p, q) in w:
        if d.dim_at(p, q) != table.dims.get((p, q), 0):
            return False
    return True


def _endpoint_multiset(d: Decomposition) -> Counter:
    out: Counter = Counter()
    for s in d:
        if isinstance(s, FreeShift):
            out[s.p] += 1
        else:
            out[s.r] += 1
            out[s.r + s.n] += 1
    return out


@dataclass(frozen=True)
class AnalysisResult:
    status: str  # "unique" | "ambiguous"
    decompositions: tuple[Decomposition, ...]
    diagnostics: tuple[str, ...]
    profile: Optional[InvariantProfile] = None

    @property
    def unique(self) -> Optional[Decomposition]:
        return self.decompositions[0] if self.status == "unique" else None

    def to_json(self) -> dict:
        out = {"status": self.status,
               "decompositions": [d.to_json() for d in self.decompositions],
               "diagnostics": list(self.diagnostics)}
        if self.profile is not None:
            out["profile"] = self.profile.to_json()
        return out


_FILTER_NAMES = ("exact bidegree dimensions", "fixed-set marginals",
                 "total free count", "forgetful rank bookkeeping",
                 "underlying endpoint multiset")


def _filter_candidates(candidates, table: DimTable, w: Window,
                       underlying_dims=None) -> list[Decomposition]:
    survivors = []
    u_count = None
    if underlying_dims is not None:
        u_count = Counter({i: v for i, v in enumerate(underlying_dims) if v})
    for cand in candidates:
        if underlying_dims is not None:
            if _endpoint_multiset(cand) != u_count:
                continue
            if not forgetful_feasible(cand, underlying_dims):
                continue
        if not _dims_match(cand, table, w):
            continue
        survivors.append(cand)
    return sorted(set(survivors), key=decomposition_sort_key)


def candidate_decompositions(table: DimTable, m: int,
                             fixed_dims=None) -> list[Decomposition]:
    """Candidates compatible with the free-count probe at (m+1, m+1), the
    fixed-set marginals when given, and the strip coverage of the row
    above the generator triangle."""
    total = table.get(m + 1, m + 1)
    if fixed_dims is not None:
        if sum(fixed_dims) != total:
            return []
        frees = _free_multisets_with_marginals(m, fixed_dims)
    else:
        frees = _free_multisets_unconstrained(m, total)
    out = []
    for free in frees:
        coverage = [table.get(p, m + 1) - sum(1 for f in free if f.p <= p)
                    for p in range(m + 1)]
        if any(c < 0 for c in coverage):
            continue
        for strips in _strip_multisets(coverage):
            out.append(Decomposition.of(*free, *strips))
    return out


def analyze(x: EquivariantCellComplex,
            window: Optional[Window] = None) -> AnalysisResult:
    """Full pipeline: profile, enumerate, prune, report."""
    profile = compute_profile(x, window)
    m = profile.dimension
    w = profile.table.window
    candidates = candidate_decompositions(profile.table, m, profile.fixed_dims)
    survivors = _filter_candidates(candidates, profile.table, w,
                                   profile.underlying_dims)
    if not survivors:
        raise AnalysisError(
            "inconsistent invariants: no decomposition matches the profile "
            "(the incidence data is not realizable by a finite complex)")
    if len(survivors) == 1:
        return AnalysisResult("unique", tuple(survivors), (), profile)
    return AnalysisResult(
        "ambiguous", tuple(survivors),
        ("candidates are indistinguishable by: " + ", ".join(_FILTER_NAMES),),
        profile)


# -- the long-exact-sequence extension tool ---------------------------------


class MapError(ValueError):
    pass


@dataclass(frozen=True)
class GeneralMap:
    """A degree-shifting module map between realized decompositions,
    entered per (target summand, source summand) pair as coefficients
    against ``hom_basis`` for that pair."""

    source: Decomposition
    target: Decomposition
    entries: dict = field(default_factory=dict)
    shift: Bidegree = Bidegree(1, 0)

    def _homs(self) -> dict[tuple[int, int], list[HomElement]]:
        src = list(self.source)
        tgt = list(self.target)
        homs: dict[tuple[int, int], list[HomElement]] = {}
        for (ti, sj), coeffs in self.entries.items():
            if not (0 <= ti < len(tgt)) or not (0 <= sj < len(src)):
                raise MapError(f"entry ({ti},{sj}) out of range")
            basis = hom_basis(src[sj], tgt[ti], self.shift)
            coeffs = tuple(int(c) & 1 for c in coeffs)
            if any(coeffs) and len(coeffs) != len(basis):
                raise MapError(
                    f"entry ({ti},{sj}) lies outside the hom basis span "
                    f"(basis has {len(basis)} element(s))")
            homs[(ti, sj)] = [h for h, c in zip(basis, coeffs) if c]
        return homs

    def matrix_at(self, p: int, q: int) -> F2Matrix:
        """Matrix of the map from bidegree (p,q) of the source to
        (p,q)+shift of the target, in realization basis order."""
        homs = self._homs()
        src_support = [j for j, s in enumerate(self.source)
                       if summand_data(s, Bidegree(p, q))[0]]
        tp, tq = p + self.shift.p, q + self.shift.q
        tgt_support = [i for i, s in enumerate(self.target)
                       if summand_data(s, Bidegree(tp, tq))[0]]
        rows = []
        for i in tgt_support:
            mask = 0
            for col, j in enumerate(src_support):
                bit = 0
                for h in homs.get((i, j), []):
                    bit ^= h.entry_at(p, q)
                if bit:
                    mask |= 1 << col
            rows.append(mask)
        return F2Matrix(len(tgt_support), len(src_support), tuple(rows))

    def to_json(self) -> dict:
        return {
            "shift": [self.shift.p, self.shift.q],
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "entries": [{"target": ti, "source": sj, "coeffs": list(coeffs)}
                        for (ti, sj), coeffs in sorted(self.entries.items())],
        }

    @staticmethod
    def from_json(data: dict) -> "GeneralMap":
        entries = {}
        for item in data.get("entries", []):
            entries[(int(item["target"]), int(item["source"]))] = \
                tuple(int(c) for c in item["coeffs"])
        shift = data.get("shift", [1, 0])
        return GeneralMap(Decomposition.from_json(data["source"]),
                          Decomposition.from_json(data["target"]),
                          entries, Bidegree(int(shift[0]), int(shift[1])))


def les_extension(d: GeneralMap, m: int,
                  underlying_dims=None,
                  window: Optional[Window] = None) -> list[Decomposition]:
    """Solve the two-stage extension problem 0 -> cok d -> ? -> ker d -> 0.

    Expands the differential per bidegree, computes exact kernel and
    cokernel dimensions, and returns every decomposition bounded by the
    complex dimension m whose dimensions match, that passes the
    consequence checks, and that passes the forgetful bookkeeping when
    underlying dimensions are supplied.
    """
    if (d.shift.p, d.shift.q) != (1, 0):
        raise MapError("the extension tool expects the differential "
                       "convention: degree shift (1,0)")
    d._homs()  # validate entries early
    w = window or default_window(m)
    inner = Window(w.p_min + 1, w.p_max, w.q_min, w.q_max)

    ranks: dict[tuple[int, int], int] = {}
    for (p, q) in w:
        ranks[(p, q)] = f2linalg.rank(d.matrix_at(p, q))

    dims: dict[tuple[int, int], int] = {}
    for (p, q) in inner:
        ker = d.source.dim_at(p, q) - ranks[(p, q)]
        cok = d.target.dim_at(p, q) - ranks[(p - 1, q)]
        if ker + cok:
            dims[(p, q)] = ker + cok
    table = DimTable(inner, dims)

    candidates = candidate_decompositions(table, m)
    survivors = []
    for cand in candidates:
        if not _dims_match(cand, table, inner):
            continue
        if check_consequences(realize(cand, inner), m):
            continue
        if underlying_dims is not None and \
                not forgetful_feasible(cand, underlying_dims):
            continue
        survivors.append(cand)
    return sorted(set(survivors), key=decomposition_sort_key)
