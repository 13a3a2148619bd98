from fractions import Fraction as Q

import pytest

from novikov import fixtures as fx
from novikov.extensions import (
    ExtensionData,
    HypothesisFailed,
    InvariantViolation,
    LiftData,
    NotInvertible,
    NotProductIdeal,
    NotTwoStepSolvable,
    assemble,
    check_lift_lsa,
    check_lift_novikov,
    iso_lift,
    jordan_lift,
    lift_product,
    novikov_ideal_quotient,
    scheuneman_lift,
    semidirect_lift,
    two_gen_lift,
    two_step_solvable_from,
)
from novikov.lie import quotient
from novikov.linalg import Matrix, NotRegularNilpotent, Subspace, jordan_block
from novikov.products import (
    AlgebraProduct,
    half_bracket_product,
    is_compatible,
    is_left_symmetric,
    is_novikov,
)

from randalg import rational, rng_for


def unit(n, k, c=1):
    return tuple(Q(c) if i == k else Q(0) for i in range(n))


def ex35_extension():
    ext, split = two_step_solvable_from(fx.ex35())
    return ext, split


def test_assemble_direct_sum():
    ext = ExtensionData(2, 2, [Matrix.zeros(2, 2)] * 2, {})
    assert assemble(ext).is_abelian()


def test_assemble_ex35_data():
    phi_x = Matrix([[0, 0, 0], [1, 0, 0], [0, 0, 0]])
    phi_y = Matrix([[0, 0, 0], [0, 0, 0], [1, 0, 0]])
    ext = ExtensionData(3, 2, [phi_x, phi_y], {(0, 1): unit(3, 0)})
    g = assemble(ext)
    assert g.bracket == fx.ex35().bracket


def test_assemble_round_trip_free_n2_c4():
    g = fx.free_n2_c4()
    ext, split = two_step_solvable_from(g)
    cols = [list(v) for v in split.a_basis] + [
        list(unit(8, j)) for j in split.section_indices
    ]
    assert g.bracket.change_basis(cols) == assemble(ext).bracket


def test_assemble_invariant_violations():
    # non-commuting actions of an abelian b: equation (23)
    a1 = Matrix([[0, 1], [0, 0]])
    a2 = Matrix([[0, 0], [1, 0]])
    with pytest.raises(InvariantViolation) as err:
        assemble(ExtensionData(2, 2, [a1, a2], {}))
    assert err.value.equation == "eq-23"
    # broken cocycle identity for abelian b of dimension 3: equation (24)
    mats = [Matrix([[2]]), Matrix.zeros(1, 1), Matrix.zeros(1, 1)]
    with pytest.raises(InvariantViolation) as err:
        assemble(ExtensionData(1, 3, mats, {(1, 2): (Q(1),)}))
    assert err.value.equation == "eq-24"


def test_two_step_solvable_from_abelian():
    ext, _ = two_step_solvable_from(fx.abelian(3))
    assert ext.dim_a == 0 and ext.dim_b == 3
    assert not ext.omega


def test_two_step_solvable_from_ex35():
    ext, _ = ex35_extension()
    assert ext.dim_a == 3 and ext.dim_b == 2
    assert ext.omega == {(0, 1): unit(3, 0)}              # Omega(X, Y) = A
    assert ext.phi[0].column(0) == unit(3, 1)             # phi(X) A = B
    assert ext.phi[1].column(0) == unit(3, 2)             # phi(Y) A = C


def test_two_step_solvable_from_14dim():
    ext, _ = two_step_solvable_from(fx.free_n3_c3())
    assert ext.dim_a == 11 and ext.dim_b == 3


def test_two_step_solvable_rejects():
    with pytest.raises(NotTwoStepSolvable):
        two_step_solvable_from(fx.sl2())


def test_lift_product_zero():
    ext = ExtensionData(2, 2, [Matrix.zeros(2, 2)] * 2, {})
    lift = LiftData(2, 2, [Matrix.zeros(2, 2)] * 2, [Matrix.zeros(2, 2)] * 2)
    assert lift_product(ext, lift).is_zero()


def test_lift_product_reference_example():
    ext, _ = ex35_extension()
    x_x = Matrix([[0, 0, 0], [Q(-1, 2), 0, 0], [0, 0, 0]])
    y_x = Matrix([[0, 0, 0], [Q(1, 2), 0, 0], [0, 0, 0]])
    y_y = Matrix([[0, 0, 0], [0, 0, 0], [1, 0, 0]])
    lift = LiftData(
        3, 2, [x_x, Matrix.zeros(3, 3)], [y_x, y_y], {(1, 0): unit(3, 0, -1)}
    )
    assert check_lift_lsa(ext, lift)
    assert check_lift_novikov(ext, lift)
    assert lift_product(ext, lift) == fx.ex35_product()


def test_scheuneman_on_n3_gives_half_bracket():
    ext, split = two_step_solvable_from(fx.n3())
    lift = scheuneman_lift(ext)
    p = split.transport_product(lift_product(ext, lift))
    assert p == half_bracket_product(fx.n3())


def test_check_lift_lsa_zero_lift_fails_eq8():
    ext, _ = ex35_extension()
    zero = Matrix.zeros(3, 3)
    lift = LiftData(3, 2, [zero] * 2, [zero] * 2)
    verdict = check_lift_lsa(ext, lift)
    assert not verdict and verdict.label == "eq-8"


def test_scheuneman_form_fails_on_class_four():
    # the closed-form data exists for any extension, but on the 8-dimensional
    # free algebra no lift can pass: the Novikov checker must reject it
    g = fx.free_n2_c4()
    ext, _ = two_step_solvable_from(g)
    x_op = [a.scale(Q(-1, 3)) for a in ext.phi]
    y_op = [a.scale(Q(2, 3)) for a in ext.phi]
    x_values = {}
    for p in range(2):
        for q in range(2):
            v = ext.omega_pair(p, q)
            if any(v):
                x_values[(p, q)] = tuple(x / 2 for x in v)
    lift = LiftData(6, 2, x_op, y_op, x_values)
    assert not check_lift_novikov(ext, lift)
    with pytest.raises(HypothesisFailed):
        scheuneman_lift(ext)


def test_scheuneman_lift_examples():
    for g in [fx.n3(), fx.ex35(), fx.free_n3_c3()]:
        ext, split = two_step_solvable_from(g)
        lift = scheuneman_lift(ext)
        assert check_lift_lsa(ext, lift)
        p = split.transport_product(lift_product(ext, lift))
        assert is_left_symmetric(p) and is_compatible(p, g)
    ext, _ = two_step_solvable_from(fx.ex35())
    lift = scheuneman_lift(ext)
    assert lift.x_op[0] == ext.phi[0].scale(Q(-1, 3))


def test_two_gen_lift_examples():
    for g in [fx.ex35(), fx.n3()]:
        ext, split = two_step_solvable_from(g)
        lift = two_gen_lift(ext)
        assert check_lift_novikov(ext, lift)
        p = split.transport_product(lift_product(ext, lift))
        assert is_novikov(p) and is_compatible(p, g)
    # the closed-form solution: X1 = -A1/2, X2 = 0, x21 = -v12
    ext, _ = ex35_extension()
    lift = two_gen_lift(ext)
    assert lift.x_op[0] == ext.phi[0].scale(Q(-1, 2))
    assert lift.x_op[1].is_zero()
    assert lift.omega_value(1, 0) == unit(3, 0, -1)


def test_two_gen_lift_on_quotient():
    g = fx.free_n2_c4()
    q = quotient(g, g.lower_central_series()[3])
    assert q.nilpotency_class() == 3
    ext, split = two_step_solvable_from(q)
    lift = two_gen_lift(ext)
    p = split.transport_product(lift_product(ext, lift))
    assert is_novikov(p) and is_compatible(p, q)


def test_iso_lift_examples():
    # one-dimensional invertible action
    ext = ExtensionData(1, 2, [Matrix([[1]]), Matrix([[2]])], {(0, 1): (Q(3),)})
    lift = iso_lift(ext, (Q(1), Q(0)))
    assert check_lift_novikov(ext, lift)

    # r2 as an extension: a = span{x2}, phi(x1) = 1, Omega = 0
    ext2, split2 = two_step_solvable_from(fx.r2())
    lift2 = iso_lift(ext2, (Q(1),))
    p = split2.transport_product(lift_product(ext2, lift2))
    assert is_novikov(p) and is_compatible(p, fx.r2())

    # all actions singular: no invertible phi(e) on any basis vector
    ext3, _ = two_step_solvable_from(fx.n3())
    for p_idx in range(ext3.dim_b):
        with pytest.raises(NotInvertible):
            iso_lift(ext3, unit(ext3.dim_b, p_idx))


def test_jordan_lift_single_generator():
    ext = ExtensionData(3, 1, [jordan_block(3)], {})
    lift = jordan_lift(ext, 0)
    assert check_lift_novikov(ext, lift)


def test_jordan_lift_filiform():
    for n in range(4, 9):
        g = fx.filiform(n)
        ext, split = two_step_solvable_from(g)
        lift = None
        for x_index in range(ext.dim_b):
            try:
                lift = jordan_lift(ext, x_index)
                break
            except NotRegularNilpotent:
                continue
        assert lift is not None
        assert check_lift_novikov(ext, lift)
        p = split.transport_product(lift_product(ext, lift))
        assert is_novikov(p) and is_compatible(p, g)


def test_jordan_lift_polynomial_action():
    j3 = jordan_block(3)
    v12 = (Q(1), Q(2), Q(-1))
    ext = ExtensionData(3, 2, [j3, j3 * j3], {(0, 1): v12})
    lift = jordan_lift(ext, 0)
    assert check_lift_novikov(ext, lift)
    assert lift.omega_value(1, 1) == (j3.transpose() * (j3 * j3)).apply(v12)


def test_jordan_lift_delegates_to_iso():
    j2 = jordan_block(2)
    a2 = Matrix.identity(2) + j2
    ext = ExtensionData(2, 2, [j2, a2], {(0, 1): (Q(1), Q(1))})
    lift = jordan_lift(ext, 0)
    assert check_lift_novikov(ext, lift)
    assert all(x.is_zero() for x in lift.x_op)


def test_jordan_lift_rejects_irregular():
    ext = ExtensionData(2, 1, [Matrix.zeros(2, 2)], {})
    with pytest.raises(NotRegularNilpotent):
        jordan_lift(ext, 0)


def test_semidirect_lift_trivial():
    ext = ExtensionData(2, 2, [Matrix.zeros(2, 2)] * 2, {})
    lift = semidirect_lift(ext)
    assert check_lift_lsa(ext, lift)
    assert check_lift_novikov(ext, lift)


def test_semidirect_lift_r2_action():
    # b = r2 with its Novikov structure e1*e2 = e2; phi kills the products
    b_bracket = fx.r2().bracket
    b_product = fx.in_novikov_product(2)
    phi = [Matrix([[1]]), Matrix.zeros(1, 1)]
    ext = ExtensionData(
        1, 2, phi, {}, b_bracket=b_bracket, b_product=b_product
    )
    lift = semidirect_lift(ext)
    assert check_lift_lsa(ext, lift)
    assert check_lift_novikov(ext, lift)
    p = lift_product(ext, lift)
    assert is_novikov(p) and is_compatible(p, assemble(ext))


def test_semidirect_lift_novikov_fails_at_eq16():
    # abelian b with product e1*e1 = e2 and phi(e2) invertible: phi(x.y) != 0
    b_product = AlgebraProduct.from_products(2, {(0, 0): (Q(0), Q(1))})
    phi = [Matrix.zeros(1, 1), Matrix([[1]])]
    ext = ExtensionData(1, 2, phi, {}, b_product=b_product)
    lift = semidirect_lift(ext)
    assert check_lift_lsa(ext, lift)
    verdict = check_lift_novikov(ext, lift)
    assert not verdict and verdict.label == "eq-16"


def test_novikov_ideal_quotient_identity():
    p = fx.free_n3_c3_product()
    assert novikov_ideal_quotient(p, Subspace.zero(14)) == p


def test_novikov_ideal_quotient_shapes():
    p = fx.free_n3_c3_product()
    # shape 1: the whole third term of the lower central series
    shape1 = Subspace(14, [unit(14, k) for k in range(6, 14)])
    q1 = novikov_ideal_quotient(p, shape1)
    assert q1.dim == 6 and is_novikov(q1)
    # shape 2: <x4 + z, x7, x8, x9> + Z'
    mix = [Q(0)] * 14
    mix[3], mix[9] = Q(1), Q(1)
    shape2 = Subspace(
        14, [tuple(mix), unit(14, 6), unit(14, 7), unit(14, 8), unit(14, 12)]
    )
    q2 = novikov_ideal_quotient(p, shape2)
    assert q2.dim == 9 and is_novikov(q2)
    # shape 3: <x4 + z1, x5 + z2, x7 ... x12>
    v1 = [Q(0)] * 14
    v1[3], v1[12] = Q(1), Q(1)
    v2 = [Q(0)] * 14
    v2[4] = Q(1)
    shape3 = Subspace(
        14, [tuple(v1), tuple(v2)] + [unit(14, k) for k in range(6, 12)]
    )
    q3 = novikov_ideal_quotient(p, shape3)
    assert q3.dim == 6 and is_novikov(q3)


def test_novikov_ideal_quotient_rejects():
    p = fx.free_n3_c3_product()
    with pytest.raises(NotProductIdeal):
        novikov_ideal_quotient(p, Subspace(14, [unit(14, 0)]))


def random_small_extension(rng):
    n = rng.randint(1, 3)
    m = rng.randint(1, 2)
    while True:
        mats = []
        seed = Matrix(
            [[rational(rng) if rng.random() < 0.5 else Q(0) for _ in range(n)]
             for _ in range(n)]
        )
        for _ in range(m):
            mat = Matrix.zeros(n, n)
            power = Matrix.identity(n)
            for _ in range(n):
                if rng.random() < 0.5:
                    mat = mat + power.scale(rational(rng))
                power = power * seed
            mats.append(mat)
        omega = {}
        for p in range(m):
            for q in range(p + 1, m):
                v = tuple(rational(rng) for _ in range(n))
                if any(v):
                    omega[(p, q)] = v
        try:
            ext = ExtensionData(n, m, mats, omega)
            ext.validate()
            return ext
        except InvariantViolation:
            continue


def test_checker_equivalence_with_direct_product_checks():
    # Prop phi12 / Prop novikov: the condition systems hold exactly when the
    # lifted product passes the direct axiom checks and is compatible
    rng = rng_for("ext-equiv")
    for _ in range(30):
        ext = random_small_extension(rng)
        n, m = ext.dim_a, ext.dim_b
        x_op = [
            Matrix([[rational(rng) if rng.random() < 0.4 else Q(0) for _ in range(n)]
                    for _ in range(n)])
            for _ in range(m)
        ]
        y_op = [x + a for x, a in zip(x_op, ext.phi)]
        if rng.random() < 0.2 and m:
            y_op[0] = y_op[0] + Matrix.unit(n, 0, 0) if n else y_op[0]
        x_values = {}
        for p in range(m):
            for q in range(m):
                if rng.random() < 0.6:
                    base = ext.omega_pair(p, q)
                    noise = tuple(
                        rational(rng) if rng.random() < 0.3 else Q(0) for _ in range(n)
                    )
                    if p < q:
                        x_values[(p, q)] = tuple(a + b for a, b in zip(base, noise))
                    else:
                        x_values[(p, q)] = noise
        lift = LiftData(n, m, x_op, y_op, x_values)
        g = assemble(ext)
        product = lift_product(ext, lift)
        lsa_checker = bool(check_lift_lsa(ext, lift))
        lsa_direct = bool(is_left_symmetric(product)) and bool(is_compatible(product, g))
        assert lsa_checker == lsa_direct
        nov_checker = bool(check_lift_novikov(ext, lift))
        nov_direct = bool(is_novikov(product)) and bool(is_compatible(product, g))
        assert nov_checker == nov_direct


def test_phi1_zero_makes_lsa_and_novikov_agree():
    # with phi1 = 0 and trivial products the two checkers decide alike
    rng = rng_for("ext-phi1-zero")
    for _ in range(20):
        ext = random_small_extension(rng)
        n, m = ext.dim_a, ext.dim_b
        zero = Matrix.zeros(n, n)
        x_values = {}
        for p in range(m):
            for q in range(m):
                if rng.random() < 0.7:
                    base = ext.omega_pair(p, q) if p < q else tuple(Q(0) for _ in range(n))
                    noise = tuple(
                        rational(rng) if rng.random() < 0.3 else Q(0) for _ in range(n)
                    )
                    value = tuple(a + b for a, b in zip(base, noise))
                    if any(value):
                        x_values[(p, q)] = value
        lift = LiftData(n, m, [zero] * m, list(ext.phi), x_values)
        assert bool(check_lift_lsa(ext, lift)) == bool(check_lift_novikov(ext, lift))


def test_a_is_two_sided_ideal_of_lifted_products():
    cases = []
    for g in [fx.n3(), fx.ex35(), fx.free_n3_c3()]:
        ext, _ = two_step_solvable_from(g)
        cases.append((ext, scheuneman_lift(ext)))
    ext, _ = two_step_solvable_from(fx.ex35())
    cases.append((ext, two_gen_lift(ext)))
    for ext, lift in cases:
        n = ext.dim_a
        p = lift_product(ext, lift)
        for (i, j, k), value in p.tensor.entries.items():
            if (i < n or j < n) and value != 0:
                assert k < n
