"""Lie algebras as structure-constant tensors over Q.

Indices are 0-based throughout the Python API; the LAF file formats are
1-based and convert at the boundary.
"""

from .linalg import (
    DimensionMismatch,
    Matrix,
    Q,
    Subspace,
    is_zero_vec,
    vadd,
    vscale,
)


class ValidationError(ValueError):
    pass


class AntisymmetryViolation(ValidationError):
    def __init__(self, i, j, k):
        super().__init__("antisymmetry fails at basis triple (%d, %d, %d)" % (i, j, k))
        self.triple = (i, j, k)


class JacobiViolation(ValidationError):
    def __init__(self, i, j, k):
        super().__init__("Jacobi identity fails at basis triple (%d, %d, %d)" % (i, j, k))
        self.triple = (i, j, k)


class NotAnIdeal(ValidationError):
    def __init__(self, basis_index, vector):
        super().__init__("bracket of e_%d with %s leaves the subspace" % (basis_index, (vector,)))
        self.witness = (basis_index, vector)


class StructureTensor:
    """Sparse structure constants c[i][j][k] of a bilinear product on Q^n.

    e_i * e_j = sum_k c[i][j][k] e_k; only nonzero entries are stored.
    """

    __slots__ = ("dim", "entries")

    def __init__(self, dim, entries=None):
        table = {}
        for (i, j, k), v in (entries or {}).items():
            v = Q(v)
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise DimensionMismatch("tensor index out of range: %s" % ((i, j, k),))
            if v != 0:
                table[(i, j, k)] = v
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "entries", table)

    def __setattr__(self, name, value):
        raise AttributeError("StructureTensor is immutable")

    @classmethod
    def from_products(cls, dim, products):
        """Build from {(i, j): vector} giving e_i * e_j as coordinate vectors."""
        entries = {}
        for (i, j), vector in products.items():
            for k, v in enumerate(vector):
                if v != 0:
                    entries[(i, j, k)] = Q(v)
        return cls(dim, entries)

    @classmethod
    def antisymmetric_from_brackets(cls, dim, brackets):
        """Build from {(i, j): vector} for i < j, filling in c[j][i] = -c[i][j]."""
        entries = {}
        for (i, j), vector in brackets.items():
            if i >= j:
                raise ValueError("brackets must be given for i < j only")
            for k, v in enumerate(vector):
                if v != 0:
                    entries[(i, j, k)] = Q(v)
                    entries[(j, i, k)] = -Q(v)
        return cls(dim, entries)

    def entry(self, i, j, k):
        return self.entries.get((i, j, k), Q(0))

    def basis_product(self, i, j):
        """The vector e_i * e_j."""
        v = [Q(0)] * self.dim
        for (a, b, k), c in self.entries.items():
            if a == i and b == j:
                v[k] = c
        return tuple(v)

    def apply(self, u, v):
        """Bilinear product of two coordinate vectors."""
        out = [Q(0)] * self.dim
        for (i, j, k), c in self.entries.items():
            if u[i] and v[j]:
                out[k] += c * u[i] * v[j]
        return tuple(out)

    def left_matrix(self, i):
        """Matrix of x -> e_i * x."""
        m = [[Q(0)] * self.dim for _ in range(self.dim)]
        for (a, j, k), c in self.entries.items():
            if a == i:
                m[k][j] = c
        return Matrix(m, cols=self.dim)

    def right_matrix(self, i):
        """Matrix of x -> x * e_i."""
        m = [[Q(0)] * self.dim for _ in range(self.dim)]
        for (j, b, k), c in self.entries.items():
            if b == i:
                m[k][j] = c
        return Matrix(m, cols=self.dim)

    def left_matrix_of(self, x):
        m = Matrix.zeros(self.dim, self.dim)
        for i, c in enumerate(x):
            if c:
                m = m + self.left_matrix(i).scale(c)
        return m

    def right_matrix_of(self, x):
        m = Matrix.zeros(self.dim, self.dim)
        for i, c in enumerate(x):
            if c:
                m = m + self.right_matrix(i).scale(c)
        return m

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        return (
            isinstance(other, StructureTensor)
            and self.dim == other.dim
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self.entries.items()))))

    def change_basis(self, basis_vectors):
        """Constants in a new basis given as vectors in the old coordinates."""
        n = self.dim
        if len(basis_vectors) != n:
            raise DimensionMismatch("need exactly dim basis vectors")
        m = Matrix.from_columns(basis_vectors)
        minv = m.inverse()
        products = {}
        for a in range(n):
            for b in range(n):
                w = self.apply(basis_vectors[a], basis_vectors[b])
                if not is_zero_vec(w):
                    products[(a, b)] = minv.apply(w)
        return StructureTensor.from_products(n, products)

    def __repr__(self):
        return "StructureTensor(dim=%d, nnz=%d)" % (self.dim, len(self.entries))


class LieAlgebra:
    """Finite-dimensional Lie algebra over Q given by its bracket tensor."""

    __slots__ = ("dim", "labels", "bracket")

    def __init__(self, bracket, labels=None):
        if labels is None:
            labels = tuple("e%d" % (i + 1) for i in range(bracket.dim))
        if len(labels) != bracket.dim:
            raise DimensionMismatch("label count does not match dimension")
        object.__setattr__(self, "dim", bracket.dim)
        object.__setattr__(self, "labels", tuple(labels))
        object.__setattr__(self, "bracket", bracket)

    def __setattr__(self, name, value):
        raise AttributeError("LieAlgebra is immutable")

    def bracket_vec(self, u, v):
        return self.bracket.apply(u, v)

    def ad(self, i):
        """Adjoint matrix of the basis element e_i."""
        return self.bracket.left_matrix(i)

    def ad_of(self, x):
        return self.bracket.left_matrix_of(x)

    def basis_vector(self, i):
        return tuple(Q(1) if j == i else Q(0) for j in range(self.dim))

    def bracket_space(self, u_space, v_space):
        """Span of [u, v] over basis vectors of the two subspaces."""
        vectors = []
        for u in u_space.basis:
            for v in v_space.basis:
                vectors.append(self.bracket_vec(u, v))
        return Subspace(self.dim, vectors)

    def derived_series(self):
        full = Subspace.full(self.dim)
        series = [full]
        while True:
            nxt = self.bracket_space(series[-1], series[-1])
            if nxt == series[-1]:
                break
            series.append(nxt)
        return series

    def lower_central_series(self):
        full = Subspace.full(self.dim)
        series = [full]
        while True:
            nxt = self.bracket_space(full, series[-1])
            if nxt == series[-1]:
                break
            series.append(nxt)
        return series

    def nilpotency_class(self):
        """p with g^(p+1) = 0, or None if the algebra is not nilpotent."""
        series = self.lower_central_series()
        if series[-1].is_zero():
            return len(series) - 1
        return None

    def derived_length(self):
        series = self.derived_series()
        if series[-1].is_zero():
            return len(series) - 1
        return None

    def is_nilpotent(self):
        return self.nilpotency_class() is not None

    def is_solvable(self):
        return self.derived_length() is not None

    def is_abelian(self):
        return self.bracket.is_zero()

    def is_unimodular(self):
        return all(self.ad(i).trace() == 0 for i in range(self.dim))

    def center(self):
        from .linalg import nullspace_of_rows

        rows = []
        for i in range(self.dim):
            rows.extend(self.ad(i).data)
        return nullspace_of_rows(rows, self.dim)

    def invariant_profile(self):
        """Cheap isomorphism invariants: dimensions, classes, series dims, unimodularity."""
        lcs = self.lower_central_series()
        ds = self.derived_series()
        return (
            self.dim,
            self.nilpotency_class(),
            self.derived_length(),
            tuple(s.dim for s in lcs),
            tuple(s.dim for s in ds),
            self.is_unimodular(),
        )

    def is_ideal(self, subspace):
        for i in range(self.dim):
            for v in subspace.basis:
                if not subspace.contains(self.bracket_vec(self.basis_vector(i), v)):
                    return False
        return True

    def __repr__(self):
        return "LieAlgebra(dim=%d)" % self.dim


def validate_lie(bracket, labels=None):
    """Check antisymmetry and the Jacobi identity on all basis triples.

    Returns the LieAlgebra on success; raises AntisymmetryViolation or
    JacobiViolation naming the first failing triple otherwise.
    """
    n = bracket.dim
    products = {(i, j): bracket.basis_product(i, j) for i in range(n) for j in range(n)}
    for i in range(n):
        for j in range(i, n):
            lhs = products[(i, j)]
            rhs = vscale(-1, products[(j, i)])
            if lhs != rhs:
                for k in range(n):
                    if lhs[k] != rhs[k]:
                        raise AntisymmetryViolation(i, j, k)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                total = vadd(
                    vadd(
                        bracket.apply(products[(i, j)], _unit(n, k)),
                        bracket.apply(products[(j, k)], _unit(n, i)),
                    ),
                    bracket.apply(products[(k, i)], _unit(n, j)),
                )
                if not is_zero_vec(total):
                    raise JacobiViolation(i, j, k)
    return LieAlgebra(bracket, labels)


def _unit(n, i):
    return tuple(Q(1) if j == i else Q(0) for j in range(n))


def derived_series(g):
    return g.derived_series()


def lower_central_series(g):
    return g.lower_central_series()


def complement_basis(subspace):
    """Lexicographically earliest standard basis vectors completing the subspace.

    Returns the list of chosen coordinate indices.
    """
    n = subspace.ambient_dim
    chosen = []
    span = subspace
    for j in range(n):
        if span.dim == n:
            break
        ej = _unit(n, j)
        if not span.contains(ej):
            chosen.append(j)
            span = span + Subspace(n, [ej])
    return chosen


def quotient_coordinates(subspace, complement):
    """Return a function mapping a vector to its coordinates on the complement
    basis modulo the subspace, or None if the basis does not span."""
    n = subspace.ambient_dim
    columns = [list(v) for v in subspace.basis] + [list(_unit(n, j)) for j in complement]
    if len(columns) != n:
        raise DimensionMismatch("subspace plus complement does not span")
    m = Matrix.from_columns(columns)
    minv = m.inverse()
    k = subspace.dim

    def coords(v):
        full = minv.apply(v)
        return tuple(full[k:])

    return coords


def quotient(g, ideal):
    """Quotient Lie algebra by an ideal, on the canonical complement basis.

    The complement is the lexicographically earliest subset of standard basis
    vectors completing the ideal's echelon basis, which makes the structure
    constants deterministic.
    """
    for i in range(g.dim):
        for v in ideal.basis:
            w = g.bracket_vec(g.basis_vector(i), v)
            if not ideal.contains(w):
                raise NotAnIdeal(i, v)
    comp = complement_basis(ideal)
    coords = quotient_coordinates(ideal, comp)
    q = len(comp)
    brackets = {}
    for a in range(q):
        for b in range(a + 1, q):
            w = g.bracket_vec(_unit(g.dim, comp[a]), _unit(g.dim, comp[b]))
            c = coords(w)
            if not is_zero_vec(c):
                brackets[(a, b)] = c
    tensor = StructureTensor.antisymmetric_from_brackets(q, brackets)
    labels = tuple(g.labels[j] for j in comp)
    return validate_lie(tensor, labels)
