"""Extensions 0 -> a -> g -> b -> 0 with abelian a, and product lifting.

An extension is the data (a, b, phi, Omega): a representation phi of b on a
and a 2-cocycle Omega. A lift is the data (omega, phi1, phi2) turning
products on a and b into a product on the extension via

    (a,x) o (b,y) = (a.b + phi1(y)a + phi2(x)b + omega(x,y), x.y).

Coordinates on the assembled algebra put the a-part first, then the b-part.
Checker diagnostics name the governing equation by its number: (8)-(20) for
the general conditions, (25)-(31) for the trivial-products specialization.
"""

from .lie import (
    StructureTensor,
    complement_basis,
    quotient_coordinates,
    validate_lie,
)
from .linalg import (
    DimensionMismatch,
    Matrix,
    Q,
    is_zero_vec,
    jordan_block,
    nilpotent_regular_basis,
    vadd,
    vscale,
    vsub,
    vzero,
)
from .products import AlgebraProduct, Verdict, is_compatible, is_left_symmetric


class InvariantViolation(ValueError):
    def __init__(self, equation, witness):
        super().__init__("extension invariant %s fails at %s" % (equation, (witness,)))
        self.equation = equation
        self.witness = witness


class NotTwoStepSolvable(ValueError):
    pass


class HypothesisFailed(ValueError):
    pass


class NotInvertible(ValueError):
    pass


class GammaExpansionFailed(ValueError):
    pass


class LiftCheckFailed(ValueError):
    def __init__(self, verdict):
        super().__init__("lift fails %s at %s" % (verdict.label, (verdict.witness,)))
        self.verdict = verdict


class NotProductIdeal(ValueError):
    def __init__(self, witness):
        super().__init__("subspace is not a two-sided product ideal: %s" % (witness,))
        self.witness = witness


class ExtensionData:
    """The tuple (a, b, phi, Omega) describing an extension with abelian a.

    phi is given by the matrices A_p = phi(e_p); Omega by its values
    v_pq = Omega(e_p, e_q) for p < q. The optional products are an
    LSA-product on b and a commutative associative product on a.
    """

    __slots__ = ("dim_a", "dim_b", "phi", "omega", "b_bracket", "b_product", "a_product")

    def __init__(self, dim_a, dim_b, phi, omega=None, b_bracket=None,
                 b_product=None, a_product=None):
        phi = tuple(phi)
        if len(phi) != dim_b:
            raise DimensionMismatch("need one action matrix per b basis element")
        for m in phi:
            if m.rows != dim_a or m.cols != dim_a:
                raise DimensionMismatch("action matrices must be dim_a x dim_a")
        table = {}
        for (p, q), v in (omega or {}).items():
            if not (0 <= p < q < dim_b):
                raise ValueError("omega keys must satisfy p < q")
            if len(v) != dim_a:
                raise DimensionMismatch("omega values live in a")
            v = tuple(Q(x) for x in v)
            if not is_zero_vec(v):
                table[(p, q)] = v
        self.dim_a = dim_a
        self.dim_b = dim_b
        self.phi = phi
        self.omega = table
        self.b_bracket = b_bracket if b_bracket is not None else StructureTensor(dim_b, {})
        self.b_product = b_product if b_product is not None else AlgebraProduct.zero(dim_b)
        self.a_product = a_product if a_product is not None else AlgebraProduct.zero(dim_a)

    def b_is_abelian(self):
        return self.b_bracket.is_zero()

    def products_trivial(self):
        return self.a_product.is_zero() and self.b_product.is_zero()

    def omega_pair(self, p, q):
        if p == q:
            return vzero(self.dim_a)
        if p < q:
            return self.omega.get((p, q), vzero(self.dim_a))
        return vscale(-1, self.omega.get((q, p), vzero(self.dim_a)))

    def omega_of(self, x, y):
        out = vzero(self.dim_a)
        for (p, q), v in self.omega.items():
            c = x[p] * y[q] - x[q] * y[p]
            if c:
                out = vadd(out, vscale(c, v))
        return out

    def phi_of(self, x):
        m = Matrix.zeros(self.dim_a, self.dim_a)
        for p, c in enumerate(x):
            if c:
                m = m + self.phi[p].scale(c)
        return m

    def b_algebra(self):
        return validate_lie(self.b_bracket)

    def validate(self):
        """Check the representation and cocycle identities and the a-product.

        Raises InvariantViolation naming the governing equation: (5) for the
        representation identity ((23) when b is abelian), (6) for the cocycle
        identity ((24) when b is abelian).
        """
        abelian = self.b_is_abelian()
        rep_eq = "eq-23" if abelian else "eq-5"
        cocycle_eq = "eq-24" if abelian else "eq-6"
        m = self.dim_b
        for p in range(m):
            for q in range(p + 1, m):
                lhs = self.phi[p] * self.phi[q] - self.phi[q] * self.phi[p]
                rhs = self.phi_of(self.b_bracket.basis_product(p, q))
                if lhs != rhs:
                    raise InvariantViolation(rep_eq, (p, q))
        for p in range(m):
            for q in range(p + 1, m):
                for r in range(q + 1, m):
                    lhs = vadd(
                        vsub(
                            self.phi[p].apply(self.omega_pair(q, r)),
                            self.phi[q].apply(self.omega_pair(p, r)),
                        ),
                        self.phi[r].apply(self.omega_pair(p, q)),
                    )
                    rhs = vadd(
                        vsub(
                            self.omega_of(self.b_bracket.basis_product(p, q), _unit(m, r)),
                            self.omega_of(self.b_bracket.basis_product(p, r), _unit(m, q)),
                        ),
                        self.omega_of(self.b_bracket.basis_product(q, r), _unit(m, p)),
                    )
                    if lhs != rhs:
                        raise InvariantViolation(cocycle_eq, (p, q, r))
        n = self.dim_a
        for i in range(n):
            for j in range(i + 1, n):
                if self.a_product.basis_product(i, j) != self.a_product.basis_product(j, i):
                    raise InvariantViolation("a-product-commutative", (i, j))
        e = [_unit(n, i) for i in range(n)]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    lhs = self.a_product.apply(self.a_product.basis_product(i, j), e[k])
                    rhs = self.a_product.apply(e[i], self.a_product.basis_product(j, k))
                    if lhs != rhs:
                        raise InvariantViolation("a-product-associative", (i, j, k))
        return self

    def __repr__(self):
        return "ExtensionData(dim_a=%d, dim_b=%d)" % (self.dim_a, self.dim_b)


class LiftData:
    """Candidate lift (omega, phi1, phi2) given by matrices X_p = phi1(e_p),
    Y_p = phi2(e_p) and the full table x_values[(p, q)] = omega(e_p, e_q)."""

    __slots__ = ("dim_a", "dim_b", "x_op", "y_op", "x_values")

    def __init__(self, dim_a, dim_b, x_op, y_op, x_values=None):
        x_op, y_op = tuple(x_op), tuple(y_op)
        if len(x_op) != dim_b or len(y_op) != dim_b:
            raise DimensionMismatch("need one matrix per b basis element")
        for m in x_op + y_op:
            if m.rows != dim_a or m.cols != dim_a:
                raise DimensionMismatch("lift matrices must be dim_a x dim_a")
        table = {}
        for (p, q), v in (x_values or {}).items():
            if not (0 <= p < dim_b and 0 <= q < dim_b):
                raise ValueError("x_values keys out of range")
            if len(v) != dim_a:
                raise DimensionMismatch("x_values live in a")
            v = tuple(Q(x) for x in v)
            if not is_zero_vec(v):
                table[(p, q)] = v
        self.dim_a = dim_a
        self.dim_b = dim_b
        self.x_op = x_op
        self.y_op = y_op
        self.x_values = table

    def omega_value(self, p, q):
        return self.x_values.get((p, q), vzero(self.dim_a))

    def omega_of(self, x, y):
        out = vzero(self.dim_a)
        for (p, q), v in self.x_values.items():
            c = x[p] * y[q]
            if c:
                out = vadd(out, vscale(c, v))
        return out

    def __repr__(self):
        return "LiftData(dim_a=%d, dim_b=%d)" % (self.dim_a, self.dim_b)


def _unit(n, i):
    return tuple(Q(1) if j == i else Q(0) for j in range(n))


def assemble(ext):
    """The Lie algebra on a x b defined by the extension data."""
    ext.validate()
    n, m = ext.dim_a, ext.dim_b
    dim = n + m
    brackets = {}

    def pad(a_part, b_part):
        return tuple(a_part) + tuple(b_part)

    for i in range(n):
        for p in range(m):
            w = vscale(-1, ext.phi[p].column(i))
            if not is_zero_vec(w):
                brackets[(i, n + p)] = pad(w, vzero(m))
    for p in range(m):
        for q in range(p + 1, m):
            a_part = ext.omega_pair(p, q)
            b_part = ext.b_bracket.basis_product(p, q)
            if not (is_zero_vec(a_part) and is_zero_vec(b_part)):
                brackets[(n + p, n + q)] = pad(a_part, b_part)
    tensor = StructureTensor.antisymmetric_from_brackets(dim, brackets)
    labels = tuple("a%d" % (i + 1) for i in range(n)) + tuple("b%d" % (p + 1) for p in range(m))
    return validate_lie(tensor, labels)


class SplitData:
    """Change of coordinates between an algebra and its split extension form.

    Columns of `basis` are the a-basis vectors followed by the complement
    section vectors, expressed in the original coordinates.
    """

    __slots__ = ("a_basis", "section_indices", "basis", "basis_inv")

    def __init__(self, a_basis, section_indices, ambient_dim):
        self.a_basis = tuple(a_basis)
        self.section_indices = tuple(section_indices)
        columns = [list(v) for v in a_basis] + [
            list(_unit(ambient_dim, j)) for j in section_indices
        ]
        self.basis = Matrix.from_columns(columns)
        self.basis_inv = self.basis.inverse()

    def to_split(self, v):
        return self.basis_inv.apply(v)

    def from_split(self, v):
        return self.basis.apply(v)

    def transport_product(self, p):
        """Rewrite a product on split coordinates into original coordinates."""
        n = self.basis.rows
        products = {}
        for i in range(n):
            for j in range(n):
                w = p.apply(self.to_split(_unit(n, i)), self.to_split(_unit(n, j)))
                w = self.from_split(w)
                if not is_zero_vec(w):
                    products[(i, j)] = w
        return AlgebraProduct.from_products(n, products)


def two_step_solvable_from(g):
    """Present a 2-step solvable algebra as an extension of abelian algebras.

    a = [g, g], b = g/[g, g]; the section is the lexicographically earliest
    set of standard basis vectors complementing a, so the output is
    deterministic. Returns (ExtensionData, SplitData).
    """
    dl = g.derived_length()
    if dl is None or dl > 2:
        raise NotTwoStepSolvable("derived length is %s" % dl)
    series = g.derived_series()
    derived = series[1] if len(series) > 1 else series[-1]
    a_basis = derived.basis
    n = len(a_basis)
    section = complement_basis(derived)
    m = len(section)
    split = SplitData(a_basis, section, g.dim)
    phi = []
    for p in section:
        cols = []
        for v in a_basis:
            w = g.bracket_vec(g.basis_vector(p), v)
            coords = derived.coordinates(w)
            assert coords is not None, "[g, [g,g]] escaped [g,g]"
            cols.append(coords)
        phi.append(Matrix.from_columns(cols) if n else Matrix.zeros(0, 0))
    omega = {}
    for a in range(m):
        for b in range(a + 1, m):
            w = g.bracket_vec(g.basis_vector(section[a]), g.basis_vector(section[b]))
            coords = derived.coordinates(w)
            assert coords is not None, "[g, g] escaped the derived subalgebra"
            if not is_zero_vec(coords):
                omega[(a, b)] = coords
    ext = ExtensionData(n, m, phi, omega)
    return ext, split


def lift_product(ext, lift):
    """The bilinear product on a x b defined by the lift; validity not implied."""
    n, m = ext.dim_a, ext.dim_b
    dim = n + m
    products = {}

    def pad(a_part, b_part):
        return tuple(a_part) + tuple(b_part)

    zb = vzero(m)
    for i in range(n):
        for j in range(n):
            w = ext.a_product.basis_product(i, j)
            if not is_zero_vec(w):
                products[(i, j)] = pad(w, zb)
    for i in range(n):
        for q in range(m):
            w = lift.x_op[q].column(i)
            if not is_zero_vec(w):
                products[(i, n + q)] = pad(w, zb)
    for p in range(m):
        for j in range(n):
            w = lift.y_op[p].column(j)
            if not is_zero_vec(w):
                products[(n + p, j)] = pad(w, zb)
    for p in range(m):
        for q in range(m):
            a_part = lift.omega_value(p, q)
            b_part = ext.b_product.basis_product(p, q)
            if not (is_zero_vec(a_part) and is_zero_vec(b_part)):
                products[(n + p, n + q)] = pad(a_part, b_part)
    return AlgebraProduct.from_products(dim, products)


def check_lift_lsa(ext, lift):
    """Conditions (8)-(14) for the lifted product to be left-symmetric."""
    n, m = ext.dim_a, ext.dim_b
    ea = [_unit(n, i) for i in range(n)]
    eb = [_unit(m, p) for p in range(m)]
    x_op, y_op = lift.x_op, lift.y_op
    aprod = ext.a_product
    bprod = ext.b_product

    for p in range(m):
        for q in range(m):
            lhs = vsub(lift.omega_value(p, q), lift.omega_value(q, p))
            if lhs != ext.omega_pair(p, q):
                return Verdict(False, (p, q), "eq-8")
    for p in range(m):
        if y_op[p] - x_op[p] != ext.phi[p]:
            return Verdict(False, (p,), "eq-9")
    for p in range(m):
        for q in range(m):
            for r in range(m):
                lhs = vsub(
                    vsub(
                        y_op[p].apply(lift.omega_value(q, r)),
                        y_op[q].apply(lift.omega_value(p, r)),
                    ),
                    lift.x_op[r].apply(ext.omega_pair(p, q)),
                )
                rhs = vadd(
                    vsub(
                        lift.omega_of(eb[q], bprod.basis_product(p, r)),
                        lift.omega_of(eb[p], bprod.basis_product(q, r)),
                    ),
                    lift.omega_of(ext.b_bracket.basis_product(p, q), eb[r]),
                )
                if lhs != rhs:
                    return Verdict(False, (p, q, r), "eq-10")
    for i in range(n):
        for q in range(m):
            for r in range(m):
                lhs = vadd(
                    aprod.apply(ea[i], lift.omega_value(q, r)),
                    _lift_x_of(lift, bprod.basis_product(q, r)).apply(ea[i]),
                )
                rhs = vsub(
                    (y_op[q] * x_op[r]).apply(ea[i]),
                    (x_op[r] * ext.phi[q]).apply(ea[i]),
                )
                if lhs != rhs:
                    return Verdict(False, (i, q, r), "eq-11")
    for i in range(n):
        for j in range(n):
            for r in range(m):
                if aprod.apply(ea[i], x_op[r].apply(ea[j])) != aprod.apply(
                    ea[j], x_op[r].apply(ea[i])
                ):
                    return Verdict(False, (i, j, r), "eq-12")
    for i in range(n):
        for k in range(n):
            for q in range(m):
                lhs = vsub(
                    y_op[q].apply(aprod.apply(ea[i], ea[k])),
                    aprod.apply(ea[i], y_op[q].apply(ea[k])),
                )
                rhs = aprod.apply(ext.phi[q].apply(ea[i]), ea[k])
                if lhs != rhs:
                    return Verdict(False, (i, k, q), "eq-13")
    for p in range(m):
        for q in range(p + 1, m):
            w = ext.omega_pair(p, q)
            for k in range(n):
                if not is_zero_vec(aprod.apply(w, ea[k])):
                    return Verdict(False, (p, q, k), "eq-14")
    return Verdict(True)


def _lift_x_of(lift, x):
    m = Matrix.zeros(lift.dim_a, lift.dim_a)
    for p, c in enumerate(x):
        if c:
            m = m + lift.x_op[p].scale(c)
    return m


def _check_lift_novikov_trivial(ext, lift):
    """Conditions (25)-(31): the trivial-products specialization."""
    n, m = ext.dim_a, ext.dim_b
    x_op, y_op = lift.x_op, lift.y_op
    for p in range(m):
        for q in range(m):
            lhs = vsub(lift.omega_value(p, q), lift.omega_value(q, p))
            if lhs != ext.omega_pair(p, q):
                return Verdict(False, (p, q), "eq-25")
    for p in range(m):
        if x_op[p] + ext.phi[p] != y_op[p]:
            return Verdict(False, (p,), "eq-26")
    for p in range(m):
        for q in range(m):
            for r in range(m):
                lhs = vsub(
                    y_op[p].apply(lift.omega_value(q, r)),
                    y_op[q].apply(lift.omega_value(p, r)),
                )
                if lhs != x_op[r].apply(ext.omega_pair(p, q)):
                    return Verdict(False, (p, q, r), "eq-27")
    for p in range(m):
        for q in range(m):
            if x_op[p] * ext.phi[q] - ext.phi[q] * x_op[p] != x_op[q] * x_op[p]:
                return Verdict(False, (p, q), "eq-28")
    for p in range(m):
        for q in range(m):
            for r in range(m):
                if x_op[r].apply(lift.omega_value(p, q)) != x_op[q].apply(
                    lift.omega_value(p, r)
                ):
                    return Verdict(False, (p, q, r), "eq-29")
    for p in range(m):
        for q in range(m):
            if not (x_op[p] * y_op[q]).is_zero():
                return Verdict(False, (p, q), "eq-30")
    for p in range(m):
        for q in range(p + 1, m):
            if x_op[p] * x_op[q] != x_op[q] * x_op[p]:
                return Verdict(False, (p, q), "eq-31")
    return Verdict(True)


def check_lift_novikov(ext, lift):
    """LSA conditions plus (15)-(20); reported as (25)-(31) when both
    products are trivial (the two formulations are checked to agree)."""
    lsa = check_lift_lsa(ext, lift)
    verdict = lsa
    if lsa:
        verdict = _check_novikov_extra(ext, lift)
    if ext.products_trivial() and ext.b_is_abelian():
        trivial = _check_lift_novikov_trivial(ext, lift)
        assert bool(trivial) == bool(verdict), (
            "general and trivial-case condition systems disagree",
            verdict,
            trivial,
        )
        if trivial:
            y = lift.y_op
            for p in range(ext.dim_b):
                for q in range(p + 1, ext.dim_b):
                    assert (y[p] * y[q] - y[q] * y[p]).is_zero(), (
                        "derived identity [Y_p, Y_q] = 0 failed"
                    )
        return trivial
    return verdict


def _check_novikov_extra(ext, lift):
    n, m = ext.dim_a, ext.dim_b
    ea = [_unit(n, i) for i in range(n)]
    eb = [_unit(m, p) for p in range(m)]
    x_op, y_op = lift.x_op, lift.y_op
    aprod = ext.a_product
    bprod = ext.b_product
    for p in range(m):
        for q in range(m):
            for r in range(m):
                lhs = vsub(
                    x_op[r].apply(lift.omega_value(p, q)),
                    x_op[q].apply(lift.omega_value(p, r)),
                )
                rhs = vsub(
                    lift.omega_of(bprod.basis_product(p, r), eb[q]),
                    lift.omega_of(bprod.basis_product(p, q), eb[r]),
                )
                if lhs != rhs:
                    return Verdict(False, (p, q, r), "eq-15")
    for p in range(m):
        for q in range(m):
            for k in range(n):
                lhs = vadd(
                    aprod.apply(lift.omega_value(p, q), ea[k]),
                    _lift_y_of(lift, bprod.basis_product(p, q)).apply(ea[k]),
                )
                rhs = (x_op[q] * y_op[p]).apply(ea[k])
                if lhs != rhs:
                    return Verdict(False, (p, q, k), "eq-16")
    for p in range(m):
        for q in range(p + 1, m):
            if x_op[p] * x_op[q] != x_op[q] * x_op[p]:
                return Verdict(False, (p, q), "eq-17")
    for p in range(m):
        for j in range(n):
            for k in range(n):
                if aprod.apply(y_op[p].apply(ea[j]), ea[k]) != aprod.apply(
                    y_op[p].apply(ea[k]), ea[j]
                ):
                    return Verdict(False, (p, j, k), "eq-18")
    for r in range(m):
        for i in range(n):
            for j in range(n):
                if x_op[r].apply(aprod.apply(ea[i], ea[j])) != aprod.apply(
                    x_op[r].apply(ea[i]), ea[j]
                ):
                    return Verdict(False, (r, i, j), "eq-19")
    for p in range(m):
        for q in range(m):
            for r in range(m):
                lhs = bprod.apply(bprod.basis_product(p, q), eb[r])
                rhs = bprod.apply(bprod.basis_product(p, r), eb[q])
                if lhs != rhs:
                    return Verdict(False, (p, q, r), "eq-20")
    return Verdict(True)


def _lift_y_of(lift, x):
    m = Matrix.zeros(lift.dim_a, lift.dim_a)
    for p, c in enumerate(x):
        if c:
            m = m + lift.y_op[p].scale(c)
    return m


def _require_trivial_abelian(ext, who):
    if not ext.b_is_abelian():
        raise HypothesisFailed("%s requires an abelian b" % who)
    if not ext.products_trivial():
        raise HypothesisFailed("%s requires trivial products on a and b" % who)


def _require_aa_zero(ext, who):
    for p in range(ext.dim_b):
        for q in range(ext.dim_b):
            if not (ext.phi[p] * ext.phi[q]).is_zero():
                raise HypothesisFailed(
                    "%s requires A_p A_q = 0; fails at (%d, %d)" % (who, p, q)
                )


def scheuneman_lift(ext):
    """The closed-form LSA lift x_pq = v_pq/2, X_p = -A_p/3, Y_p = 2A_p/3.

    Valid for extensions assembling to a 3-step nilpotent algebra with
    A_p A_q = 0 (automatic when a = [g, g]).
    """
    _require_trivial_abelian(ext, "scheuneman_lift")
    _require_aa_zero(ext, "scheuneman_lift")
    cls = assemble(ext).nilpotency_class()
    if cls is None or cls > 3:
        raise HypothesisFailed("scheuneman_lift requires a 3-step nilpotent extension")
    third = Q(1, 3)
    x_op = [a.scale(-third) for a in ext.phi]
    y_op = [a.scale(2 * third) for a in ext.phi]
    x_values = {}
    for p in range(ext.dim_b):
        for q in range(ext.dim_b):
            v = ext.omega_pair(p, q)
            if not is_zero_vec(v):
                x_values[(p, q)] = vscale(Q(1, 2), v)
    lift = LiftData(ext.dim_a, ext.dim_b, x_op, y_op, x_values)
    verdict = check_lift_lsa(ext, lift)
    if not verdict:
        raise LiftCheckFailed(verdict)
    return lift


def two_gen_lift(ext):
    """Novikov lift for two-generated three-step nilpotent extensions:
    X_1 = -A_1/2, X_2 = 0, x_21 = -v_12."""
    if ext.dim_b != 2:
        raise HypothesisFailed("two_gen_lift requires dim b = 2")
    _require_trivial_abelian(ext, "two_gen_lift")
    _require_aa_zero(ext, "two_gen_lift")
    cls = assemble(ext).nilpotency_class()
    if cls is None or cls > 3:
        raise HypothesisFailed("two_gen_lift requires a 3-step nilpotent extension")
    x_op = [ext.phi[0].scale(Q(-1, 2)), Matrix.zeros(ext.dim_a, ext.dim_a)]
    y_op = [x + a for x, a in zip(x_op, ext.phi)]
    v12 = ext.omega_pair(0, 1)
    x_values = {}
    if not is_zero_vec(v12):
        x_values[(1, 0)] = vscale(-1, v12)
    lift = LiftData(ext.dim_a, ext.dim_b, x_op, y_op, x_values)
    verdict = check_lift_novikov(ext, lift)
    if not verdict:
        raise LiftCheckFailed(verdict)
    return lift


def iso_lift(ext, e):
    """Novikov lift when phi(e) is invertible: phi1 = 0, phi2 = phi and
    omega(x, y) = phi(e)^-1 phi(x) Omega(e, y)."""
    _require_trivial_abelian(ext, "iso_lift")
    phi_e = ext.phi_of(e)
    try:
        inv = phi_e.inverse()
    except ValueError:
        raise NotInvertible("phi(e) is singular for e = %s" % (e,))
    m = ext.dim_b
    x_values = {}
    for p in range(m):
        for q in range(m):
            w = inv.apply(ext.phi[p].apply(ext.omega_of(e, _unit(m, q))))
            if not is_zero_vec(w):
                x_values[(p, q)] = w
    lift = LiftData(
        ext.dim_a,
        ext.dim_b,
        [Matrix.zeros(ext.dim_a, ext.dim_a)] * m,
        list(ext.phi),
        x_values,
    )
    verdict = check_lift_novikov(ext, lift)
    if not verdict:
        raise LiftCheckFailed(verdict)
    return lift


def semidirect_lift(ext):
    """Lift for split extensions (Omega = 0): the product (a,x)o(b,y) =
    (phi(x)b, x.y). Left-symmetric whenever the b-product is an LSA structure
    on b; Novikov iff additionally phi(x.y) = 0 (condition (16))."""
    if ext.omega:
        raise HypothesisFailed("semidirect_lift requires a split extension (Omega = 0)")
    if not ext.a_product.is_zero():
        raise HypothesisFailed("semidirect_lift requires a trivial a-product")
    lsa = is_left_symmetric(ext.b_product)
    if not lsa:
        raise LiftCheckFailed(lsa)
    compat = is_compatible(ext.b_product, validate_lie(ext.b_bracket))
    if not compat:
        raise LiftCheckFailed(Verdict(False, compat.witness, "b-product-compatibility"))
    m = ext.dim_b
    lift = LiftData(
        ext.dim_a,
        ext.dim_b,
        [Matrix.zeros(ext.dim_a, ext.dim_a)] * m,
        list(ext.phi),
        {},
    )
    verdict = check_lift_lsa(ext, lift)
    if not verdict:
        raise LiftCheckFailed(verdict)
    return lift


def jordan_lift(ext, x_index):
    """Novikov lift when phi(e_x) is nilpotent of index exactly dim a.

    Runs the regular-nilpotent normalization: base-changes a so that the
    distinguished action matrix becomes the Jordan block J(n), expands the
    other action matrices as polynomials in it, delegates to iso_lift when
    some constant coefficient is nonzero (that matrix is then invertible),
    otherwise re-bases b to kill the linear coefficients and emits the
    closed-form table x_1j = v_1j, x_ij = J^t A_i v_1j (i <= j),
    x_ji = x_ij - v_ij. The result is reported in the caller's basis.
    """
    _require_trivial_abelian(ext, "jordan_lift")
    n, m = ext.dim_a, ext.dim_b
    if not (0 <= x_index < m):
        raise DimensionMismatch("x_index out of range")
    p_mat = nilpotent_regular_basis(ext.phi[x_index])
    p_inv = p_mat.inverse()
    order = [x_index] + [p for p in range(m) if p != x_index]
    a_conj = [p_mat * ext.phi[p] * p_inv for p in order]

    def v_perm(p, q):
        return p_mat.apply(ext.omega_pair(order[p], order[q]))

    j_n = jordan_block(n)
    assert a_conj[0] == j_n
    gammas = []
    for idx, mat in enumerate(a_conj):
        gamma = [mat[0, k] for k in range(n)]
        rebuilt = Matrix.zeros(n, n)
        power = Matrix.identity(n)
        for k in range(n):
            if gamma[k]:
                rebuilt = rebuilt + power.scale(gamma[k])
            if k + 1 < n:
                power = power * j_n
        if rebuilt != mat:
            raise GammaExpansionFailed(
                "A_%d is not a polynomial in the regular block" % order[idx]
            )
        gammas.append(gamma)
    for idx in range(1, m):
        if gammas[idx][0] != 0:
            return iso_lift(ext, _unit(m, order[idx]))
    # rebase b: f_0 = e_0, f_i = e_i - gamma_{i,1} e_0
    shift = [Q(0)] + [gammas[idx][1] for idx in range(1, m)]
    b_mats = [a_conj[0]] + [a_conj[idx] - j_n.scale(shift[idx]) for idx in range(1, m)]

    def w_val(p, q):
        return vsub(
            vsub(v_perm(p, q), vscale(shift[q], v_perm(p, 0))),
            vscale(shift[p], v_perm(0, q)),
        )

    jt = j_n.transpose()
    for i in range(m):
        for j in range(m):
            assert j_n * jt * b_mats[j] == b_mats[j], "identity (33) failed"
            assert b_mats[i] * jt * b_mats[j] == b_mats[j] * jt * b_mats[i], (
                "identity (34) failed"
            )
    table = {}
    table[(0, 0)] = vzero(n)
    for j in range(1, m):
        table[(0, j)] = w_val(0, j)
    for i in range(1, m):
        for j in range(i, m):
            table[(i, j)] = (jt * b_mats[i]).apply(w_val(0, j))
    for i in range(m):
        for j in range(i + 1, m):
            table[(j, i)] = vsub(table[(i, j)], w_val(i, j))
    # transform back: f-basis -> permuted basis -> original b order and a coords
    x_values = {}
    for p in range(m):
        for q in range(m):
            w = table[(p, q)]
            w = vadd(w, vscale(shift[q], table[(p, 0)]))
            w = vadd(w, vscale(shift[p], table[(0, q)]))
            w = vadd(w, vscale(shift[p] * shift[q], table[(0, 0)]))
            w = p_inv.apply(w)
            if not is_zero_vec(w):
                x_values[(order[p], order[q])] = w
    lift = LiftData(
        n,
        m,
        [Matrix.zeros(n, n)] * m,
        list(ext.phi),
        x_values,
    )
    verdict = check_lift_novikov(ext, lift)
    if not verdict:
        raise LiftCheckFailed(verdict)
    return lift


def novikov_ideal_quotient(p, ideal):
    """Quotient of a product by a two-sided product ideal, on the canonical
    complement basis. A Novikov input yields a Novikov output."""
    n = p.dim
    for j in range(n):
        ej = _unit(n, j)
        for v in ideal.basis:
            if not ideal.contains(p.apply(v, ej)):
                raise NotProductIdeal(("right", j, v))
            if not ideal.contains(p.apply(ej, v)):
                raise NotProductIdeal(("left", j, v))
    comp = complement_basis(ideal)
    coords = quotient_coordinates(ideal, comp)
    q = len(comp)
    products = {}
    for a in range(q):
        for b in range(q):
            w = p.apply(_unit(n, comp[a]), _unit(n, comp[b]))
            c = coords(w)
            if not is_zero_vec(c):
                products[(a, b)] = c
    return AlgebraProduct.from_products(q, products)
