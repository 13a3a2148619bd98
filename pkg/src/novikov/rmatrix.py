"""Classical r-matrices: deformed brackets and the Yang-Baxter route to
Novikov structures.

An operator T on the space of a Lie algebra g that satisfies the classical
Yang-Baxter equation together with the auxiliary identity
[x, T[y, Tz]] = [y, T[x, Tz]] induces the Novikov product x*y = [Tx, y]
on the deformed algebra with bracket [x,y]_T = [Tx, y] + [x, Ty].
"""

from .lie import StructureTensor, validate_lie
from .linalg import DimensionMismatch, Matrix, is_zero_vec, vadd
from .products import AlgebraProduct, Verdict, is_compatible, is_novikov


class PreconditionFailed(ValueError):
    def __init__(self, check, witness):
        super().__init__("%s fails at %s" % (check, (witness,)))
        self.check = check
        self.witness = witness


class HypothesisFailed(ValueError):
    def __init__(self, index, bracket_value):
        super().__init__(
            "T([x_%d, x_m]) != 0; offending bracket %s" % (index, (bracket_value,))
        )
        self.index = index
        self.bracket_value = bracket_value


class RMatrix:
    """A linear operator T paired with the Lie algebra it deforms."""

    __slots__ = ("g", "t")

    def __init__(self, g, t):
        if t.rows != g.dim or t.cols != g.dim:
            raise DimensionMismatch("operator size does not match the algebra")
        self.g = g
        self.t = t

    def __repr__(self):
        return "RMatrix(dim=%d)" % self.g.dim


def deformed_bracket(r):
    """Structure tensor of [x,y]_T = [Tx, y] + [x, Ty]; Jacobi not implied."""
    g, t = r.g, r.t
    n = g.dim
    brackets = {}
    for i in range(n):
        ti = t.column(i)
        for j in range(i + 1, n):
            tj = t.column(j)
            w = vadd(
                g.bracket_vec(ti, g.basis_vector(j)),
                g.bracket_vec(g.basis_vector(i), tj),
            )
            if not is_zero_vec(w):
                brackets[(i, j)] = w
    return StructureTensor.antisymmetric_from_brackets(n, brackets)


def deformed_algebra(r):
    """The Lie algebra g_T; raises if the deformed bracket violates Jacobi."""
    return validate_lie(deformed_bracket(r), r.g.labels)


def check_cybe(r):
    """[Tx, Ty] = T([Tx, y] + [x, Ty]) on all basis pairs."""
    g, t = r.g, r.t
    n = g.dim
    for i in range(n):
        ti = t.column(i)
        for j in range(i + 1, n):
            tj = t.column(j)
            lhs = g.bracket_vec(ti, tj)
            rhs = t.apply(
                vadd(g.bracket_vec(ti, g.basis_vector(j)), g.bracket_vec(g.basis_vector(i), tj))
            )
            if lhs != rhs:
                return Verdict(False, (i, j), "cybe")
    return Verdict(True)


def check_novbed(r):
    """[x, T[y, Tz]] = [y, T[x, Tz]] on all basis triples."""
    g, t = r.g, r.t
    n = g.dim
    e = [g.basis_vector(i) for i in range(n)]
    for k in range(n):
        tk = t.column(k)
        inner = [t.apply(g.bracket_vec(e[i], tk)) for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if g.bracket_vec(e[i], inner[j]) != g.bracket_vec(e[j], inner[i]):
                    return Verdict(False, (i, j, k), "novbed")
    return Verdict(True)


def induced_product(r):
    """The Novikov product x*y = [Tx, y] on g_T.

    Requires both check_cybe and check_novbed; verifies on the way out that
    the product is Novikov, compatible with the deformed bracket, and that
    T is a homomorphism from g_T to g.
    """
    cybe = check_cybe(r)
    if not cybe:
        raise PreconditionFailed("cybe", cybe.witness)
    novbed = check_novbed(r)
    if not novbed:
        raise PreconditionFailed("novbed", novbed.witness)
    g, t = r.g, r.t
    n = g.dim
    products = {}
    for i in range(n):
        ti = t.column(i)
        for j in range(n):
            w = g.bracket_vec(ti, g.basis_vector(j))
            if not is_zero_vec(w):
                products[(i, j)] = w
    p = AlgebraProduct.from_products(n, products)
    gt = deformed_algebra(r)
    assert is_novikov(p).ok, "induced product failed the Novikov axioms"
    assert is_compatible(p, gt).ok, "induced product incompatible with deformed bracket"
    for i in range(n):
        for j in range(i + 1, n):
            lhs = t.apply(gt.bracket.basis_product(i, j))
            rhs = g.bracket_vec(t.column(i), t.column(j))
            assert lhs == rhs, "T is not a homomorphism g_T -> g"
    return p


def basis_rmatrix(g, ell, m):
    """The rank-one operator T(x_ell) = x_m, T(x_i) = 0 otherwise.

    Valid whenever [x_i, x_m] has zero coefficient on x_ell for every i,
    in which case T satisfies both the Yang-Baxter equation and the
    auxiliary identity.
    """
    n = g.dim
    for i in range(n):
        w = g.bracket.basis_product(i, m)
        if w[ell] != 0:
            raise HypothesisFailed(i, w)
    t = Matrix.unit(n, m, ell)
    r = RMatrix(g, t)
    assert check_cybe(r).ok and check_novbed(r).ok
    return r


class ClassBounds:
    """Nilpotency and solvability classes of g and g_T (None = not of that kind)."""

    __slots__ = ("nil_class_g", "nil_class_gt", "solv_class_g", "solv_class_gt")

    def __init__(self, nil_class_g, nil_class_gt, solv_class_g, solv_class_gt):
        self.nil_class_g = nil_class_g
        self.nil_class_gt = nil_class_gt
        self.solv_class_g = solv_class_g
        self.solv_class_gt = solv_class_gt

    def __repr__(self):
        return "ClassBounds(nil %s -> %s, solv %s -> %s)" % (
            self.nil_class_g,
            self.nil_class_gt,
            self.solv_class_g,
            self.solv_class_gt,
        )


def class_bounds_report(r):
    """Compute both classes for g and g_T and assert the deformation bounds:
    the class of g_T never exceeds the class of g, in either sense."""
    gt = deformed_algebra(r)
    g = r.g
    report = ClassBounds(
        g.nilpotency_class(),
        gt.nilpotency_class(),
        g.derived_length(),
        gt.derived_length(),
    )
    if report.nil_class_g is not None:
        assert report.nil_class_gt is not None and report.nil_class_gt <= report.nil_class_g
    if report.solv_class_g is not None:
        assert report.solv_class_gt is not None and report.solv_class_gt <= report.solv_class_g
    return report
