import random

import pytest

from bredon import f2linalg
from bredon.f2linalg import F2Matrix


def brute_kernel(m: F2Matrix):
    """Enumerate all vectors; the oracle for small kernels."""
    return sorted(v for v in range(1 << m.ncols) if m.mul_vector(v) == 0)


def test_identity_full_rank():
    rank, kernel, image = f2linalg.row_reduce(F2Matrix.identity(3))
    assert rank == 3
    assert kernel == []
    assert len(image) == 3


def test_zero_matrix():
    rank, kernel, image = f2linalg.row_reduce(F2Matrix.zeros(2, 4))
    assert rank == 0
    assert len(kernel) == 4
    assert image == []


def test_rank_one_kernel():
    # all four vectors over the two-element field enumerate to kernel {(1,1)}
    m = F2Matrix.from_rows([[1, 1], [1, 1]])
    rank, kernel, image = f2linalg.row_reduce(m)
    assert rank == 1
    assert kernel == [0b11]
    assert brute_kernel(m) == [0, 0b11]


def test_solve_identity():
    assert f2linalg.solve(F2Matrix.identity(2), 0b01) == 0b01


def test_solve_zero_infeasible():
    assert f2linalg.solve(F2Matrix.zeros(2, 3), 0b10) is None


def test_solve_canonical_free_variable():
    # both (1,0) and (0,1) solve; the canonical answer zeroes the free column
    m = F2Matrix.from_rows([[1, 1]])
    assert f2linalg.solve(m, 1) == 0b01


def test_solve_length_check():
    with pytest.raises(ValueError):
        f2linalg.solve(F2Matrix.identity(2), 0b100)


def test_empty_shapes():
    m = F2Matrix.zeros(0, 3)
    rank, kernel, _ = f2linalg.row_reduce(m)
    assert rank == 0 and len(kernel) == 3
    n = F2Matrix.zeros(3, 0)
    rank, kernel, _ = f2linalg.row_reduce(n)
    assert rank == 0 and kernel == []


def _random_matrix(rng, nr, nc):
    return F2Matrix(nr, nc, tuple(rng.randrange(1 << nc) if nc else 0
                                  for _ in range(nr)))


def test_rank_equals_transpose_rank():
    rng = random.Random(11)
    for _ in range(200):
        m = _random_matrix(rng, rng.randint(0, 7), rng.randint(0, 7))
        assert f2linalg.rank(m) == f2linalg.rank(m.transpose())


def test_kernel_vectors_annihilate_and_count():
    rng = random.Random(12)
    for _ in range(200):
        m = _random_matrix(rng, rng.randint(0, 6), rng.randint(0, 6))
        rank, kernel, image = f2linalg.row_reduce(m)
        assert rank + len(kernel) == m.ncols
        for v in kernel:
            assert m.mul_vector(v) == 0
        for c in image:
            assert f2linalg.in_span(m.columns(), c, m.nrows)


def test_solve_certificates():
    rng = random.Random(13)
    for _ in range(300):
        m = _random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        b = rng.randrange(1 << m.nrows)
        x = f2linalg.solve(m, b)
        aug = m.stack_horizontal(F2Matrix.from_columns([b], m.nrows))
        if x is None:
            assert f2linalg.rank(aug) > f2linalg.rank(m)
        else:
            assert m.mul_vector(x) == b
            assert f2linalg.rank(aug) == f2linalg.rank(m)


def test_determinism():
    rng = random.Random(14)
    for _ in range(50):
        m = _random_matrix(rng, rng.randint(0, 6), rng.randint(0, 6))
        assert f2linalg.row_reduce(m) == f2linalg.row_reduce(m)
        if m.nrows:
            b = rng.randrange(1 << m.nrows)
            assert f2linalg.solve(m, b) == f2linalg.solve(m, b)


def test_matmul_against_entries():
    rng = random.Random(15)
    for _ in range(100):
        a = _random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        b = _random_matrix(rng, a.ncols, rng.randint(1, 5))
        c = a.matmul(b)
        for i in range(c.nrows):
            for j in range(c.ncols):
                expect = sum(a.entry(i, k) * b.entry(k, j)
                             for k in range(a.ncols)) % 2
                assert c.entry(i, j) == expect


def test_inverse():
    rng = random.Random(16)
    found = 0
    while found < 40:
        m = _random_matrix(rng, 4, 4)
        if f2linalg.rank(m) < 4:
            continue
        found += 1
        assert m.matmul(f2linalg.inverse(m)).rows == F2Matrix.identity(4).rows
    with pytest.raises(ValueError):
        f2linalg.inverse(F2Matrix.zeros(2, 2))


def test_quotient_projection():
    rng = random.Random(17)
    for _ in range(100):
        n = rng.randint(1, 6)
        sub = [rng.randrange(1 << n) for _ in range(rng.randint(0, 3))]
        proj = f2linalg.project_to_quotient(sub, n)
        sect = F2Matrix.from_columns(f2linalg.quotient_basis(sub, n), n)
        for v in sub:
            assert proj.mul_vector(v) == 0
        # projection then section is the identity on quotient coordinates
        comp = proj.matmul(sect)
        assert comp.rows == F2Matrix.identity(proj.nrows).rows
        assert proj.nrows == n - f2linalg.rank(
            F2Matrix.from_columns(sub, n))


def test_pivot_columns_leftmost():
    m = F2Matrix.from_rows([[0, 1, 1], [0, 1, 0]])
    assert f2linalg.pivot_columns(m) == [1, 2]


def test_span_helpers():
    vectors = [0b011, 0b110]
    assert f2linalg.in_span(vectors, 0b101, 3)
    assert not f2linalg.in_span(vectors, 0b001, 3)
    assert f2linalg.span_contains_space(vectors, [0b101], 3)
    assert not f2linalg.span_contains_space([0b011], vectors, 3)
