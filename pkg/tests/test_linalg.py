import random

import pytest

from novikov.linalg import (
    Matrix,
    NotRegularNilpotent,
    Q,
    Subspace,
    jordan_block,
    nilpotent_regular_basis,
    nullspace,
    solve_linear,
    vadd,
    vdot,
    vscale,
    word_image_space,
)


def test_solve_identity():
    sol = solve_linear(Matrix.identity(3), (1, 2, 3))
    assert sol.consistent
    assert sol.particular == (1, 2, 3)
    assert sol.nullspace.is_zero()


def test_solve_inconsistent_witness():
    a = Matrix([[1, 1], [1, 1]])
    sol = solve_linear(a, (1, 2))
    assert not sol.consistent
    y = sol.witness
    assert all(vdot(y, a.column(j)) == 0 for j in range(2))
    assert vdot(y, (Q(1), Q(2))) != 0


def test_solve_underdetermined():
    a = Matrix([[2, 4]])
    sol = solve_linear(a, (6,))
    assert sol.particular == (3, 0)
    assert sol.nullspace.dim == 1
    assert sol.nullspace.contains((-2, 1))
    # verify by substitution
    assert a.apply(sol.particular) == (6,)
    for v in sol.nullspace.basis:
        assert a.apply(v) == (0,)


def test_solve_random_round_trip():
    rng = random.Random(7)
    for _ in range(25):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        a = Matrix(
            [[Q(rng.randint(-3, 3), rng.choice((1, 1, 2))) for _ in range(cols)]
             for _ in range(rows)]
        )
        x = tuple(Q(rng.randint(-4, 4)) for _ in range(cols))
        b = a.apply(x)
        sol = solve_linear(a, b)
        assert sol.consistent
        assert a.apply(sol.particular) == b
        for v in sol.nullspace.basis:
            shifted = vadd(sol.particular, vscale(Q(rng.randint(-3, 3)), v))
            assert a.apply(shifted) == b


def test_random_inconsistent_witnesses():
    rng = random.Random(11)
    found = 0
    for _ in range(60):
        rows = rng.randint(2, 6)
        cols = rng.randint(1, 4)
        a = Matrix(
            [[Q(rng.randint(-2, 2)) for _ in range(cols)] for _ in range(rows)]
        )
        b = tuple(Q(rng.randint(-3, 3)) for _ in range(rows))
        sol = solve_linear(a, b)
        if sol.consistent:
            continue
        found += 1
        y = sol.witness
        assert all(vdot(y, a.column(j)) == 0 for j in range(cols))
        assert vdot(y, b) != 0
    assert found > 5


def test_nullspace_examples():
    assert nullspace(Matrix.zeros(2, 2)).is_full()
    assert nullspace(Matrix.identity(2)).is_zero()
    ker = nullspace(Matrix([[1, 2], [2, 4]]))
    assert ker.dim == 1 and ker.contains((-2, 1))
    a = Matrix([[1, 2], [2, 4]])
    for v in ker.basis:
        assert a.apply(v) == (0, 0)


def test_subspace_canonical_idempotent():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(1, 6)
        vectors = [
            tuple(Q(rng.randint(-3, 3)) for _ in range(n))
            for _ in range(rng.randint(0, 4))
        ]
        s = Subspace(n, vectors)
        again = Subspace(n, s.basis)
        assert s == again
        # membership of arbitrary combinations
        if s.basis:
            combo = [Q(0)] * n
            for v in s.basis:
                combo = list(vadd(tuple(combo), vscale(Q(rng.randint(-2, 2)), v)))
            assert s.contains(tuple(combo))


def test_subspace_sum_intersect():
    u = Subspace(3, [(1, 0, 0)])
    v = Subspace(3, [(0, 1, 0), (1, 1, 0)])
    assert (u + v).dim == 2
    assert u.intersect(v) == u
    w = Subspace(3, [(0, 0, 1)])
    assert u.intersect(w).is_zero()


def test_nilpotent_regular_basis_identity():
    j3 = jordan_block(3)
    p = nilpotent_regular_basis(j3)
    assert p == Matrix.identity(3)


def test_nilpotent_regular_basis_conjugated():
    s = Matrix([[1, 1], [0, 1]])
    n = s * jordan_block(2) * s.inverse()
    p = nilpotent_regular_basis(n)
    assert p * n * p.inverse() == jordan_block(2)


def test_nilpotent_regular_basis_random():
    rng = random.Random(5)
    for _ in range(10):
        k = rng.randint(2, 5)
        s = Matrix(
            [[Q(1) if i == j else Q(rng.randint(-2, 2)) if i < j else Q(0)
              for j in range(k)] for i in range(k)]
        )
        n = s * jordan_block(k) * s.inverse()
        p = nilpotent_regular_basis(n)
        assert p * n * p.inverse() == jordan_block(k)


def test_nilpotent_regular_basis_rejects():
    with pytest.raises(NotRegularNilpotent):
        nilpotent_regular_basis(Matrix.zeros(2, 2))
    with pytest.raises(NotRegularNilpotent):
        nilpotent_regular_basis(Matrix.identity(2))


def test_word_image_space_examples():
    full2 = Subspace.full(2)
    assert word_image_space([jordan_block(2)], full2, 1) == Subspace(2, [(1, 0)])
    assert word_image_space([Matrix.zeros(2, 2)], full2, 1).is_zero()
    full3 = Subspace.full(3)
    assert word_image_space([jordan_block(3)], full3, 2) == Subspace(3, [(1, 0, 0)])
