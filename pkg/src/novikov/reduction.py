"""Module decomposition over nilpotent Lie algebras and the reduction of the
lifting problem to nilpotent extensions.

A module over a nilpotent algebra splits as V_n + V_0 with V_n the unique
maximal nilpotent submodule and V_0 an invariant complement with vanishing
invariants. Applied to an extension this quotients away the H^0-free part of
a, producing a nilpotent extension; lifts of products pull back from there.
"""

from .extensions import (
    ExtensionData,
    HypothesisFailed,
    LiftCheckFailed,
    LiftData,
    assemble,
    check_lift_lsa,
    lift_product,
    scheuneman_lift,
    two_step_solvable_from,
)
from .linalg import (
    DimensionMismatch,
    Matrix,
    Q,
    Subspace,
    is_zero_vec,
    solve_sparse,
    vadd,
    vscale,
    vsub,
    vzero,
)
from .products import is_compatible, is_complete, is_left_symmetric


class NotNilpotentAlgebra(ValueError):
    pass


class NotACocycle(ValueError):
    def __init__(self, pair):
        super().__init__("1-cocycle identity fails at basis pair %s" % (pair,))
        self.pair = pair


class InconsistentCoboundary(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ModuleAction:
    """A representation of a Lie algebra b on Q^dim_v, one matrix per basis
    element of b."""

    __slots__ = ("b", "dim_v", "action")

    def __init__(self, b, dim_v, action):
        action = tuple(action)
        if len(action) != b.dim:
            raise DimensionMismatch("need one action matrix per basis element")
        for m in action:
            if m.rows != dim_v or m.cols != dim_v:
                raise DimensionMismatch("action matrices must be dim_v x dim_v")
        for p in range(b.dim):
            for q in range(p + 1, b.dim):
                lhs = action[p] * action[q] - action[q] * action[p]
                rhs = Matrix.zeros(dim_v, dim_v)
                for k, c in enumerate(b.bracket.basis_product(p, q)):
                    if c:
                        rhs = rhs + action[k].scale(c)
                if lhs != rhs:
                    raise DimensionMismatch(
                        "representation identity fails at basis pair (%d, %d)" % (p, q)
                    )
        self.b = b
        self.dim_v = dim_v
        self.action = action

    def act_of(self, x):
        m = Matrix.zeros(self.dim_v, self.dim_v)
        for p, c in enumerate(x):
            if c:
                m = m + self.action[p].scale(c)
        return m

    def row_module(self):
        """The dual action on row vectors, v -> -v phi(X)."""
        return ModuleAction(
            self.b, self.dim_v, [m.transpose().scale(-1) for m in self.action]
        )

    def __repr__(self):
        return "ModuleAction(b dim=%d, V dim=%d)" % (self.b.dim, self.dim_v)


def h0(module):
    """Common kernel of all action matrices (the invariants of the module)."""
    from .linalg import nullspace_of_rows

    rows = []
    for m in module.action:
        rows.extend(m.data)
    return nullspace_of_rows(rows, module.dim_v)


def combination(m1, m2):
    """The action on n1 x n2 matrices, B -> phi1(X) B - B phi2(X), flattened
    row-major."""
    if m1.b.bracket != m2.b.bracket:
        raise DimensionMismatch("combination requires the same acting algebra")
    n1, n2 = m1.dim_v, m2.dim_v
    dim = n1 * n2
    mats = []
    for p in range(m1.b.dim):
        a, b = m1.action[p], m2.action[p]
        rows = [[Q(0)] * dim for _ in range(dim)]
        for r in range(n1):
            for s in range(n2):
                out = r * n2 + s
                for k in range(n1):
                    if a[r, k]:
                        rows[out][k * n2 + s] += a[r, k]
                for l in range(n2):
                    if b[l, s]:
                        rows[out][r * n2 + l] -= b[l, s]
        mats.append(Matrix(rows, cols=dim))
    return ModuleAction(m1.b, dim, mats)


class Decomposition:
    """The splitting V = V_n + V_0 of a module over a nilpotent algebra."""

    __slots__ = ("v_n", "v_0")

    def __init__(self, v_n, v_0):
        self.v_n = v_n
        self.v_0 = v_0

    def basis_matrix(self):
        """Columns: V_n basis followed by V_0 basis."""
        return Matrix.from_columns([list(v) for v in self.v_n.basis + self.v_0.basis])

    def __repr__(self):
        return "Decomposition(V_n dim=%d, V_0 dim=%d)" % (self.v_n.dim, self.v_0.dim)


def fitting_decompose(module):
    """Split V into the maximal nilpotent submodule V_n and the image part V_0.

    V_n is the space killed by every word of length dim V in the action
    matrices; V_0 is the span of images of all such words. Requires the
    acting algebra to be nilpotent; the direct-sum and invariance properties
    are asserted before returning.
    """
    if not module.b.is_nilpotent():
        raise NotNilpotentAlgebra("acting algebra is not nilpotent")
    d = module.dim_v
    kernel = Subspace.zero(d)
    for _ in range(d):
        nxt = Subspace.full(d)
        for m in module.action:
            nxt = nxt.intersect(kernel.preimage(m))
        kernel = nxt
    image = Subspace.full(d)
    for _ in range(d):
        vectors = []
        for m in module.action:
            vectors.extend(m.apply(v) for v in image.basis)
        image = Subspace(d, vectors)
    assert kernel.intersect(image).is_zero() and kernel.dim + image.dim == d, (
        "Fitting decomposition is not a direct sum"
    )
    for m in module.action:
        assert all(kernel.contains(m.apply(v)) for v in kernel.basis), "V_n not invariant"
        assert all(image.contains(m.apply(v)) for v in image.basis), "V_0 not invariant"
    return Decomposition(kernel, image)


def _vec_matrix(m):
    return tuple(x for row in m.data for x in row)


def _unvec(entries, rows, cols):
    return Matrix([entries[r * cols : (r + 1) * cols] for r in range(rows)], cols=cols)


def solve_coboundary_1(combo, b_matrices):
    """Solve B_X = phi(X) alpha for alpha, where phi is a combination action
    and B is a 1-cocycle given by one n1 x n2 matrix per basis element.

    Raises NotACocycle if B fails the cocycle identity
    B_[X,Y] = phi(X) B_Y - phi(Y) B_X, and InconsistentCoboundary if the
    linear system has no solution.
    """
    b_matrices = list(b_matrices)
    if not b_matrices:
        raise DimensionMismatch("empty cocycle data")
    n1, n2 = b_matrices[0].rows, b_matrices[0].cols
    if n1 * n2 != combo.dim_v:
        raise DimensionMismatch("cocycle matrices do not match the combination module")
    algebra = combo.b
    for p in range(algebra.dim):
        for q in range(p + 1, algebra.dim):
            lhs = Matrix.zeros(n1, n2)
            for k, c in enumerate(algebra.bracket.basis_product(p, q)):
                if c:
                    lhs = lhs + b_matrices[k].scale(c)
            rhs = vsub(
                combo.action[p].apply(_vec_matrix(b_matrices[q])),
                combo.action[q].apply(_vec_matrix(b_matrices[p])),
            )
            if _vec_matrix(lhs) != rhs:
                raise NotACocycle((p, q))
    rows = []
    rhs_entries = []
    for p in range(algebra.dim):
        target = _vec_matrix(b_matrices[p])
        for r, row in enumerate(combo.action[p].data):
            rows.append({j: x for j, x in enumerate(row) if x != 0})
            rhs_entries.append(target[r])
    sol = solve_sparse(rows, rhs_entries, combo.dim_v, want_witness=True)
    if not sol.consistent:
        raise InconsistentCoboundary(
            "coboundary equation has no solution", witness=sol.witness
        )
    return _unvec(sol.particular(), n1, n2)


class InducedExtension:
    """Result of induced_nilpotent_extension.

    ext_n: the extension of b by a_n = a/a_0.
    lam: one a_0-coordinate vector per b basis element; shifting the section
         by lam replaces the cocycle by one with values in a_n only.
    decomposition: the Fitting splitting of a as a b-module.
    basis / basis_inv: the a-coordinate change (columns = V_n then V_0 basis).
    """

    __slots__ = ("ext_n", "lam", "decomposition", "basis", "basis_inv", "dim_n", "dim_0")

    def __init__(self, ext_n, lam, decomposition, basis, basis_inv):
        self.ext_n = ext_n
        self.lam = lam
        self.decomposition = decomposition
        self.basis = basis
        self.basis_inv = basis_inv
        self.dim_n = decomposition.v_n.dim
        self.dim_0 = decomposition.v_0.dim


def induced_nilpotent_extension(ext):
    """Quotient away the H^0-free part of a.

    Decomposes a = a_n + a_0 under the action of the (nilpotent) algebra b,
    splits the cocycle accordingly and solves the coboundary equation that
    removes the a_0-component. Returns the induced nilpotent extension
    (a_n, b, phi', Omega') together with the section correction.
    """
    module = ModuleAction(ext.b_algebra(), ext.dim_a, ext.phi)
    dec = fitting_decompose(module)
    n1, n2 = dec.v_n.dim, dec.v_0.dim
    m = ext.dim_b
    if n2 == 0:
        basis = Matrix.identity(ext.dim_a) if ext.dim_a else Matrix.zeros(0, 0)
        ext_n = ExtensionData(
            ext.dim_a, m, ext.phi, dict(ext.omega),
            b_bracket=ext.b_bracket, b_product=ext.b_product,
        )
        return InducedExtension(ext_n, [vzero(0)] * m, dec, basis, basis)
    basis = dec.basis_matrix()
    basis_inv = basis.inverse()
    phi_split = [basis_inv * a * basis for a in ext.phi]
    phi_n, phi_0 = [], []
    for mat in phi_split:
        top = [row[:n1] for row in mat.data[:n1]]
        bottom = [row[n1:] for row in mat.data[n1:]]
        assert all(
            mat[r, c] == 0
            for r in range(n1)
            for c in range(n1, n1 + n2)
        ) and all(
            mat[r, c] == 0 for r in range(n1, n1 + n2) for c in range(n1)
        ), "action is not block diagonal in the Fitting basis"
        phi_n.append(Matrix(top, cols=n1) if n1 else Matrix.zeros(0, 0))
        phi_0.append(Matrix(bottom, cols=n2))
    omega_n = {}
    omega_0 = {}
    for (p, q), v in ext.omega.items():
        w = basis_inv.apply(v)
        head, tail = w[:n1], w[n1:]
        if not is_zero_vec(head):
            omega_n[(p, q)] = head
        if not is_zero_vec(tail):
            omega_0[(p, q)] = tail
    # solve d(mu) = Omega'' for mu: b -> a_0, then lam = -mu kills Omega''
    rows = []
    rhs_entries = []

    def omega0_pair(p, q):
        if p == q:
            return vzero(n2)
        if p < q:
            return omega_0.get((p, q), vzero(n2))
        return vscale(-1, omega_0.get((q, p), vzero(n2)))

    b_alg = ext.b_algebra()
    for p in range(m):
        for q in range(p + 1, m):
            bracket = b_alg.bracket.basis_product(p, q)
            target = omega0_pair(p, q)
            for r in range(n2):
                row = {}
                for c in range(n2):
                    x = phi_0[p][r, c]
                    if x:
                        row[q * n2 + c] = row.get(q * n2 + c, Q(0)) + x
                    y = phi_0[q][r, c]
                    if y:
                        row[p * n2 + c] = row.get(p * n2 + c, Q(0)) - y
                for k, c in enumerate(bracket):
                    if c:
                        row[k * n2 + r] = row.get(k * n2 + r, Q(0)) - c
                row = {j: x for j, x in row.items() if x != 0}
                rows.append(row)
                rhs_entries.append(target[r])
    sol = solve_sparse(rows, rhs_entries, m * n2, want_witness=True)
    if not sol.consistent:
        raise InconsistentCoboundary(
            "cocycle has no coboundary in the H^0-free part; input violates invariants",
            witness=sol.witness,
        )
    mu = sol.particular()
    lam = [vscale(-1, mu[p * n2 : (p + 1) * n2]) for p in range(m)]
    ext_n = ExtensionData(
        n1, m, phi_n, omega_n, b_bracket=ext.b_bracket, b_product=ext.b_product
    )
    return InducedExtension(ext_n, lam, dec, basis, basis_inv)


def reduction_lift(ext, lift_n):
    """Extend a lift on the induced nilpotent extension to the full extension.

    The block construction pads phi1 with zero and phi2 with the a_0-action;
    the section correction rewrites the result against the original cocycle.
    Preserves the checker verdicts: an LSA lift yields an LSA lift, and a
    Novikov lift a Novikov lift in the trivial-products case.
    """
    if not ext.a_product.is_zero():
        raise HypothesisFailed("reduction_lift requires a trivial a-product")
    ind = induced_nilpotent_extension(ext)
    verdict = check_lift_lsa(ind.ext_n, lift_n)
    if not verdict:
        raise LiftCheckFailed(verdict)
    n1, n2 = ind.dim_n, ind.dim_0
    n, m = ext.dim_a, ext.dim_b
    if lift_n.dim_a != n1 or lift_n.dim_b != m:
        raise DimensionMismatch("lift does not match the induced extension")

    def block(x_mat, corner):
        rows = [[Q(0)] * n for _ in range(n)]
        for r in range(n1):
            for c in range(n1):
                rows[r][c] = x_mat[r, c]
        for r in range(n2):
            for c in range(n2):
                rows[n1 + r][n1 + c] = corner[r, c]
        return Matrix(rows, cols=n)

    basis_inv = ind.basis_inv
    phi_0 = [
        Matrix([row[n1:] for row in (basis_inv * a * ind.basis).data[n1:]], cols=n2)
        if n2
        else Matrix.zeros(0, 0)
        for a in ext.phi
    ]
    zero_corner = Matrix.zeros(n2, n2)
    x_split = [block(lift_n.x_op[p], zero_corner) for p in range(m)]
    y_split = [block(lift_n.y_op[p], phi_0[p]) for p in range(m)]

    def lam_vec(p):
        return vzero(n1) + tuple(ind.lam[p])

    def lam_of(x):
        out = vzero(n)
        for p, c in enumerate(x):
            if c:
                out = vadd(out, vscale(c, lam_vec(p)))
        return out

    x_values = {}
    for p in range(m):
        for q in range(m):
            w = tuple(lift_n.omega_value(p, q)) + vzero(n2)
            w = vsub(w, x_split[q].apply(lam_vec(p)))
            w = vsub(w, y_split[p].apply(lam_vec(q)))
            w = vadd(w, lam_of(ext.b_product.basis_product(p, q)))
            if not is_zero_vec(w):
                x_values[(p, q)] = w
    # back to the original a-coordinates
    basis = ind.basis
    x_orig = [basis * xm * basis_inv for xm in x_split]
    y_orig = [basis * ym * basis_inv for ym in y_split]
    values_orig = {k: basis.apply(v) for k, v in x_values.items()}
    lift = LiftData(n, m, x_orig, y_orig, values_orig)
    final = check_lift_lsa(ext, lift)
    if not final:
        raise LiftCheckFailed(final)
    return lift


def prop57_construct(g):
    """Complete left-symmetric structure on a 2-step solvable algebra whose
    lower central series stabilizes at the fourth term.

    Pipeline: present g as an extension of abelian algebras, pass to the
    induced nilpotent extension (nilpotent of class at most 3), apply the
    closed-form lift there, pull the lift back, and assemble the product.
    """
    dl = g.derived_length()
    if dl is None or dl > 2:
        raise HypothesisFailed("prop57_construct requires a 2-step solvable algebra")
    lcs = g.lower_central_series()

    def term(k):
        return lcs[k - 1] if k - 1 < len(lcs) else lcs[-1]

    if term(5) != term(4):
        raise HypothesisFailed("lower central series does not stabilize at step 4")
    ext, split = two_step_solvable_from(g)
    ind = induced_nilpotent_extension(ext)
    g_n = assemble(ind.ext_n)
    cls = g_n.nilpotency_class()
    if cls is None or cls > 3:
        raise HypothesisFailed(
            "induced nilpotent extension has class %s > 3" % cls
        )
    lift_n = scheuneman_lift(ind.ext_n)
    lift = reduction_lift(ext, lift_n)
    p_split = lift_product(ext, lift)
    product = split.transport_product(p_split)
    assert is_left_symmetric(product).ok
    assert is_compatible(product, g).ok
    assert is_complete(product).passes_nilpotency_checks
    return product
