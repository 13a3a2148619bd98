from fractions import Fraction as Q

import pytest

from novikov import fixtures as fx
from novikov.extensions import (
    ExtensionData,
    HypothesisFailed,
    LiftCheckFailed,
    LiftData,
    assemble,
    check_lift_lsa,
    check_lift_novikov,
    lift_product,
    two_gen_lift,
    two_step_solvable_from,
)
from novikov.linalg import Matrix, Subspace, jordan_block, word_image_space
from novikov.products import is_compatible, is_complete, is_left_symmetric, is_novikov
from novikov.reduction import (
    InconsistentCoboundary,
    ModuleAction,
    NotACocycle,
    NotNilpotentAlgebra,
    combination,
    fitting_decompose,
    h0,
    induced_nilpotent_extension,
    prop57_construct,
    reduction_lift,
    solve_coboundary_1,
)

from randalg import random_mixed_extension, random_nilpotent_module, random_prop57_instance, rng_for


def vecm(m):
    return tuple(x for row in m.data for x in row)


def test_h0_examples():
    ab1 = fx.abelian(1)
    assert h0(ModuleAction(ab1, 2, [Matrix.zeros(2, 2)])).is_full()
    assert h0(ModuleAction(ab1, 2, [jordan_block(2)])) == Subspace(2, [(1, 0)])


def test_h0_column_row_equivalence():
    rng = rng_for("reduction-colrow")
    for index in range(12):
        module = random_nilpotent_module(rng, index)
        col_zero = h0(module).is_zero()
        row_zero = h0(module.row_module()).is_zero()
        assert col_zero == row_zero


def test_combination_examples():
    ab1 = fx.abelian(1)
    zero = ModuleAction(ab1, 2, [Matrix.zeros(2, 2)])
    assert all(m.is_zero() for m in combination(zero, zero).action)

    m1 = ModuleAction(ab1, 2, [Matrix([[0, 1], [0, 0]])])
    comb = combination(m1, m1)
    assert h0(comb).contains(vecm(Matrix.identity(2)))


def test_combination_vanishing_lemma():
    # nilpotent phi1-images plus invariant-free phi2 kill all invariants
    rng = rng_for("reduction-vanish")
    for _ in range(8):
        b = fx.abelian(2)
        n1 = rng.randint(1, 3)
        seed = Matrix(
            [[Q(rng.randint(-2, 2)) if c > r else Q(0) for c in range(n1)]
             for r in range(n1)]
        )
        phi1 = ModuleAction(b, n1, [seed, seed * seed])
        d1 = [Q(rng.randint(1, 3)) for _ in range(2)]
        phi2 = ModuleAction(
            b,
            2,
            [Matrix([[d1[0], 0], [0, d1[1]]]), Matrix([[1, 0], [0, 2]])],
        )
        assert h0(phi2).is_zero()
        assert h0(combination(phi1, phi2)).is_zero()


def test_fitting_all_nilpotent():
    module = ModuleAction(fx.abelian(1), 3, [jordan_block(3)])
    dec = fitting_decompose(module)
    assert dec.v_n.is_full() and dec.v_0.is_zero()


def test_fitting_diag_split():
    module = ModuleAction(fx.abelian(1), 2, [Matrix([[0, 0], [0, 1]])])
    dec = fitting_decompose(module)
    assert dec.v_n == Subspace(2, [(1, 0)])
    assert dec.v_0 == Subspace(2, [(0, 1)])


def test_fitting_requires_nilpotent_algebra():
    with pytest.raises(NotNilpotentAlgebra):
        fitting_decompose(ModuleAction(fx.r2(), 1, [Matrix.zeros(1, 1), Matrix.zeros(1, 1)]))


def test_fitting_invariants_random():
    rng = rng_for("reduction-fitting")
    for index in range(12):
        module = random_nilpotent_module(rng, index)
        dec = fitting_decompose(module)
        d = module.dim_v
        assert dec.v_n.intersect(dec.v_0).is_zero()
        assert dec.v_n.dim + dec.v_0.dim == d
        for m in module.action:
            assert all(dec.v_n.contains(m.apply(v)) for v in dec.v_n.basis)
            assert all(dec.v_0.contains(m.apply(v)) for v in dec.v_0.basis)
        # V_n is a nilpotent module; restricted invariants on V_0 vanish
        assert word_image_space(module.action, dec.v_n, d).is_zero()
        assert h0(module).intersect(dec.v_0).is_zero()
        # maximality: adjoining any V_0 basis vector breaks nilpotency
        for v in dec.v_0.basis:
            grown = Subspace(d, dec.v_n.basis + (v,))
            assert not word_image_space(module.action, grown, d).is_zero()


def test_fitting_block_triangular_coupling():
    # psi = [[phi1, B_X], [0, phi2]] with B a coboundary: the decomposition
    # reproduces the conjugation by [[I, alpha], [0, I]]
    b = fx.abelian(1)
    phi1 = Matrix([[0, 1], [0, 0]])
    phi2 = Matrix([[2]])
    alpha = Matrix([[1], [3]])
    b_x = phi1 * alpha - alpha * phi2
    psi = Matrix(
        [
            [phi1[0, 0], phi1[0, 1], b_x[0, 0]],
            [phi1[1, 0], phi1[1, 1], b_x[1, 0]],
            [0, 0, phi2[0, 0]],
        ]
    )
    module = ModuleAction(b, 3, [psi])
    dec = fitting_decompose(module)
    assert dec.v_n.dim == 2 and dec.v_0.dim == 1
    # V_0 is the image of the phi2-axis under [[I, -alpha], [0, I]]
    assert dec.v_0.contains((-alpha[0, 0], -alpha[1, 0], Q(1)))


def test_solve_coboundary_examples():
    b = fx.abelian(2)
    phi1 = ModuleAction(b, 2, [Matrix([[0, 1], [0, 0]]), Matrix.zeros(2, 2)])
    phi2 = ModuleAction(b, 2, [Matrix([[1, 0], [0, 2]]), Matrix([[3, 0], [0, 4]])])
    comb = combination(phi1, phi2)

    zero = Matrix.zeros(2, 2)
    alpha = solve_coboundary_1(comb, [zero, zero])
    assert all(comb.action[p].apply(vecm(alpha)) == vecm(zero) for p in range(2))

    planted = Matrix([[1, 2], [3, 4]])
    bs = [
        Matrix([comb.action[p].apply(vecm(planted))[0:2],
                comb.action[p].apply(vecm(planted))[2:4]])
        for p in range(2)
    ]
    alpha = solve_coboundary_1(comb, bs)
    for p in range(2):
        assert comb.action[p].apply(vecm(alpha)) == vecm(bs[p])

    with pytest.raises(NotACocycle):
        solve_coboundary_1(comb, [bs[0] + Matrix.unit(2, 0, 0), bs[1]])


def test_solve_coboundary_inconsistent_carries_witness():
    # trivial action: every map is a cocycle, only zero is a coboundary
    b = fx.abelian(1)
    phi = ModuleAction(b, 2, [Matrix.zeros(2, 2)])
    comb = combination(phi, phi)
    with pytest.raises(InconsistentCoboundary) as err:
        solve_coboundary_1(comb, [Matrix([[1, 0], [0, 0]])])
    assert err.value.witness is not None


def test_induced_extension_nilpotent_input():
    ext, _ = two_step_solvable_from(fx.ex35())
    ind = induced_nilpotent_extension(ext)
    assert ind.dim_0 == 0 and ind.ext_n.dim_a == ext.dim_a
    assert all(not any(v) for v in ind.lam)


def test_induced_extension_mixed():
    ext = ExtensionData(
        2, 2, [Matrix([[0, 0], [0, 1]]), Matrix.zeros(2, 2)], {(0, 1): (Q(1), Q(1))}
    )
    ind = induced_nilpotent_extension(ext)
    assert ind.ext_n.dim_a == 1
    assert ind.ext_n.omega == {(0, 1): (Q(1),)}
    g_n = assemble(ind.ext_n)
    assert g_n.is_nilpotent()
    # the correction shifts the section so the cocycle lands in a_n:
    # Omega + d(lam) must have no a_0 component
    m = ext.dim_b
    basis_inv = ind.basis_inv
    for p in range(m):
        for q in range(p + 1, m):
            shifted = list(ext.omega_pair(p, q))
            # d(lam)(x,y) = phi(x)lam(y) - phi(y)lam(x) for abelian b
            lp = ind.basis.apply((Q(0),) * ind.dim_n + tuple(ind.lam[p]))
            lq = ind.basis.apply((Q(0),) * ind.dim_n + tuple(ind.lam[q]))
            d_lam = [
                a - b
                for a, b in zip(ext.phi[p].apply(lq), ext.phi[q].apply(lp))
            ]
            total = [a + b for a, b in zip(shifted, d_lam)]
            coords = basis_inv.apply(tuple(total))
            assert all(x == 0 for x in coords[ind.dim_n :])


def test_induced_extension_invertible_action():
    ext = ExtensionData(2, 1, [Matrix([[1, 1], [0, 2]])], {})
    ind = induced_nilpotent_extension(ext)
    assert ind.ext_n.dim_a == 0


def test_reduction_lift_identity_when_a0_zero():
    ext, _ = two_step_solvable_from(fx.ex35())
    lift_n = two_gen_lift(induced_nilpotent_extension(ext).ext_n)
    lift = reduction_lift(ext, lift_n)
    assert check_lift_novikov(ext, lift)


def test_reduction_lift_mixed_corpus():
    rng = rng_for("reduction-mixed")
    for _ in range(10):
        ext = random_mixed_extension(rng)
        ind = induced_nilpotent_extension(ext)
        lift_n = two_gen_lift(ind.ext_n)
        lift = reduction_lift(ext, lift_n)
        assert check_lift_lsa(ext, lift)
        assert check_lift_novikov(ext, lift)
        p = lift_product(ext, lift)
        g = assemble(ext)
        assert is_novikov(p) and is_compatible(p, g)


def test_reduction_lift_rejects_failing_input():
    ext, _ = two_step_solvable_from(fx.ex35())
    ind = induced_nilpotent_extension(ext)
    zero = Matrix.zeros(3, 3)
    bad = LiftData(3, 2, [zero] * 2, [zero] * 2)
    with pytest.raises(LiftCheckFailed):
        reduction_lift(ext, bad)


def test_prop57_three_step_fixture():
    p = prop57_construct(fx.ex35())
    assert is_left_symmetric(p) and is_compatible(p, fx.ex35())
    assert is_complete(p).passes_nilpotency_checks


def test_prop57_non_nilpotent_instance():
    ext = ExtensionData(2, 1, [Matrix([[1, 0], [0, 0]])], {})
    g = assemble(ext)
    assert not g.is_nilpotent()
    p = prop57_construct(g)
    assert is_left_symmetric(p) and is_compatible(p, g)
    assert is_complete(p).passes_nilpotency_checks


def test_prop57_random():
    rng = rng_for("prop57")
    for _ in range(3):
        g = random_prop57_instance(rng)
        p = prop57_construct(g)
        assert is_left_symmetric(p) and is_compatible(p, g)
        assert is_complete(p).passes_nilpotency_checks


def test_prop57_rejects_free_n2_c4():
    with pytest.raises(HypothesisFailed):
        prop57_construct(fx.free_n2_c4())
