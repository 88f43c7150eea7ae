"""Shared independent oracles for the test suite."""

from __future__ import annotations

import random
from collections import Counter

from bredon import f2linalg
from bredon.f2linalg import F2Matrix
from bredon.m2algebra import (AntipodalShift, Bidegree, Decomposition,
                              FreeShift, summand_data)


def random_decomposition(rng: random.Random, m: int,
                         max_summands: int = 6) -> Decomposition:
    summands = []
    for _ in range(rng.randint(0, max_summands)):
        if rng.random() < 0.5:
            p = rng.randint(0, m)
            summands.append(FreeShift(p, rng.randint(0, p)))
        else:
            r = rng.randint(0, m)
            summands.append(AntipodalShift(r, rng.randint(0, m - r)))
    return Decomposition.of(*summands)


def decomposition_dims(d: Decomposition, window) -> dict:
    """Closed-form dimension table, independently of realize."""
    out = {}
    for (p, q) in window:
        n = sum(summand_data(s, Bidegree(p, q))[0] for s in d)
        if n:
            out[(p, q)] = n
    return out


def random_invertible(rng: random.Random, n: int) -> F2Matrix:
    if n == 0:
        return F2Matrix.zeros(0, 0)
    while True:
        rows = tuple(rng.randrange(1 << n) for _ in range(n))
        m = F2Matrix(n, n, rows)
        if f2linalg.rank(m) == n:
            return m


# -- graded shift-operator modules -----------------------------------------


def intervals_to_module(intervals, rng: random.Random | None = None,
                        lo: int = 0, hi: int = 12):
    """Materialize a multiset of (start, length) intervals as a graded
    module over a degree-one polynomial generator, optionally conjugated
    by a random graded basis change."""
    dims = {r: 0 for r in range(lo, hi + 1)}
    basis = {r: [] for r in range(lo, hi + 1)}
    for idx, (r, length) in enumerate(intervals):
        for j in range(length):
            basis[r + j].append((idx, j))
            dims[r + j] += 1
    xmaps = {}
    for r in range(lo, hi):
        rows = []
        for (idx_t, j_t) in basis[r + 1]:
            mask = 0
            for col, (idx_s, j_s) in enumerate(basis[r]):
                if idx_s == idx_t and j_s + 1 == j_t:
                    mask |= 1 << col
            rows.append(mask)
        xmaps[r] = F2Matrix(dims[r + 1], dims[r], tuple(rows))
    if rng is not None:
        change = {r: random_invertible(rng, dims[r]) for r in dims}
        xmaps = {r: change[r + 1].matmul(
            xmaps[r].matmul(f2linalg.inverse(change[r])))
            for r in range(lo, hi)}
    return dims, xmaps


def greedy_peel(dims: dict, xmaps: dict, lo: int, hi: int) -> Counter:
    """Brute-force cyclic decomposition: repeatedly split off a cyclic
    summand generated by an element of maximal nilpotence length."""
    dims = dict(dims)
    xmaps = dict(xmaps)
    out: Counter = Counter()
    while sum(dims.values()) > 0:
        best = None
        for r in range(lo, hi + 1):
            if dims[r] == 0:
                continue
            comp = F2Matrix.identity(dims[r])
            length = 1
            while r + length <= hi and dims[r + length] > 0:
                nxt = xmaps[r + length - 1].matmul(comp)
                if f2linalg.rank(nxt) == 0:
                    break
                comp = nxt
                length += 1
            if best is None or length > best[1]:
                best = (r, length)
        r, length = best
        # pick a generator whose top composite is nonzero
        comp = F2Matrix.identity(dims[r])
        for j in range(length - 1):
            comp = xmaps[r + j].matmul(comp)
        gen = next(1 << col for col in range(dims[r])
                   if comp.mul_vector(1 << col))
        chain = {r: [gen]}
        v = gen
        for j in range(length - 1):
            v = xmaps[r + j].mul_vector(v)
            chain[r + j + 1] = [v]
        proj = {}
        sect = {}
        newdims = {}
        for s in range(lo, hi + 1):
            sub = chain.get(s, [])
            proj[s] = f2linalg.project_to_quotient(sub, dims[s])
            sect[s] = F2Matrix.from_columns(
                f2linalg.quotient_basis(sub, dims[s]), dims[s])
            newdims[s] = proj[s].nrows
        newx = {s: proj[s + 1].matmul(xmaps[s].matmul(sect[s]))
                for s in range(lo, hi)}
        dims, xmaps = newdims, newx
        out[(r, length)] += 1
    return out


def all_interval_multisets(total_max: int, span: int):
    """Every multiset of (start, length) intervals inside [0, span) with
    total length at most total_max, normalized so the lowest start is 0;
    includes the empty multiset.  Up to the degree shift this enumerates
    all graded modules over a degree-one polynomial generator of total
    dimension at most total_max."""
    intervals = [(r, length) for r in range(span)
                 for length in range(1, span - r + 1)]
    results = []

    def rec(i, budget, acc):
        if i == len(intervals):
            if not acc or min(r for r, _ in acc) == 0:
                results.append(tuple(acc))
            return
        r, length = intervals[i]
        mult = 0
        while mult * length <= budget:
            rec(i + 1, budget - mult * length, acc + [(r, length)] * mult)
            mult += 1

    rec(0, total_max, [])
    return sorted(set(tuple(sorted(ms)) for ms in results))
