"""Exact rational linear algebra: matrices, linear systems, subspaces.

Everything is over Q via fractions.Fraction, so every comparison in the
package is an exact equality; there are no tolerances anywhere.
"""

from fractions import Fraction

Q = Fraction


class DimensionMismatch(ValueError):
    pass


class NotRegularNilpotent(ValueError):
    """Matrix is not nilpotent of maximal index (one Jordan block)."""


def vec(entries):
    return tuple(Q(x) for x in entries)


def vzero(n):
    return (Q(0),) * n


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u):
    c = Q(c)
    return tuple(c * a for a in u)


def vdot(u, v):
    return sum((a * b for a, b in zip(u, v)), Q(0))


def is_zero_vec(u):
    return all(a == 0 for a in u)


class Matrix:
    """Immutable dense matrix over Q."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, cols=None):
        data = tuple(tuple(Q(x) for x in row) for row in data)
        rows = len(data)
        if rows:
            cols = len(data[0])
            if any(len(row) != cols for row in data):
                raise DimensionMismatch("ragged rows")
        elif cols is None:
            cols = 0
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[Q(0)] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n):
        return cls([[Q(1) if i == j else Q(0) for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns):
        return cls(list(zip(*columns)))

    @classmethod
    def unit(cls, n, i, j, value=1):
        """n x n matrix with a single entry at (i, j)."""
        m = [[Q(0)] * n for _ in range(n)]
        m[i][j] = Q(value)
        return cls(m)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def column(self, j):
        return tuple(row[j] for row in self.data)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix addition shape mismatch")
        return Matrix([vadd(a, b) for a, b in zip(self.data, other.data)], cols=self.cols)

    def __sub__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix subtraction shape mismatch")
        return Matrix([vsub(a, b) for a, b in zip(self.data, other.data)], cols=self.cols)

    def __neg__(self):
        return Matrix([vscale(-1, r) for r in self.data], cols=self.cols)

    def scale(self, c):
        return Matrix([vscale(c, r) for r in self.data], cols=self.cols)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionMismatch("matrix product shape mismatch")
            bt = other.transpose().data
            return Matrix(
                [[vdot(r, c) for c in bt] for r in self.data], cols=other.cols
            )
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k):
        if self.rows != self.cols:
            raise DimensionMismatch("power of non-square matrix")
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def apply(self, v):
        """Matrix times column vector (given and returned as a tuple)."""
        if len(v) != self.cols:
            raise DimensionMismatch("matrix-vector shape mismatch")
        return tuple(vdot(r, v) for r in self.data)

    def transpose(self):
        return Matrix(list(zip(*self.data)) if self.data else [], cols=self.rows)

    def trace(self):
        return sum((self.data[i][i] for i in range(min(self.rows, self.cols))), Q(0))

    def is_zero(self):
        return all(x == 0 for row in self.data for x in row)

    def is_nilpotent(self):
        if self.rows != self.cols:
            raise DimensionMismatch("nilpotency of non-square matrix")
        return (self ** self.rows).is_zero()

    def inverse(self):
        if self.rows != self.cols:
            raise DimensionMismatch("inverse of non-square matrix")
        n = self.rows
        work = [list(self.data[i]) + [Q(1) if j == i else Q(0) for j in range(n)]
                for i in range(n)]
        reduced, pivots = rref(work)
        if len(pivots) != n or pivots != list(range(n)):
            raise ValueError("matrix is singular")
        return Matrix([row[n:] for row in reduced], cols=n)

    def rank(self):
        _, pivots = rref([list(r) for r in self.data])
        return len(pivots)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return "Matrix[%s]" % body


def commutator(a, b):
    return a * b - b * a


def rref(rows):
    """Reduced row echelon form of a list of row lists, in place.

    Returns (rows, pivot_columns). Zero rows sink to the bottom.
    """
    if not rows:
        return rows, []
    nrows, ncols = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


class Subspace:
    """Subspace of Q^n with a canonical reduced-echelon basis.

    Equality of subspaces is a syntactic comparison of the stored bases.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim, vectors=()):
        work = [list(Q(x) for x in v) for v in vectors]
        for v in work:
            if len(v) != ambient_dim:
                raise DimensionMismatch("vector does not match ambient dimension")
        reduced, pivots = rref(work)
        basis = tuple(tuple(row) for row in reduced[: len(pivots)])
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "pivots", tuple(pivots))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def full(cls, n):
        return cls(n, Matrix.identity(n).data)

    @property
    def dim(self):
        return len(self.basis)

    def is_zero(self):
        return not self.basis

    def is_full(self):
        return self.dim == self.ambient_dim

    def reduce(self, v):
        """Remainder of v after eliminating this subspace's pivot coordinates."""
        v = list(Q(x) for x in v)
        for row, p in zip(self.basis, self.pivots):
            if v[p] != 0:
                f = v[p]
                for j in range(self.ambient_dim):
                    v[j] -= f * row[j]
        return tuple(v)

    def contains(self, v):
        return is_zero_vec(self.reduce(v))

    def __contains__(self, v):
        return self.contains(v)

    def coordinates(self, v):
        """Coefficients of v in the canonical basis; None if v is outside."""
        coeffs = [Q(v[p]) for p in self.pivots]
        rem = self.reduce(v)
        if not is_zero_vec(rem):
            return None
        return tuple(coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __le__(self, other):
        return all(other.contains(v) for v in self.basis)

    def __add__(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("subspace sum in different ambient spaces")
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def annihilator(self):
        """Vectors orthogonal (dot product) to every element of the subspace."""
        return nullspace_of_rows(self.basis, self.ambient_dim)

    def intersect(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("intersection in different ambient spaces")
        return (self.annihilator() + other.annihilator()).annihilator()

    def image(self, m):
        """Image of this subspace under the matrix m."""
        return Subspace(m.rows, [m.apply(v) for v in self.basis])

    def preimage(self, m):
        """{v : m v in self}."""
        ann = self.annihilator()
        # rows of (D m) where D has the annihilator vectors as rows
        rows = [tuple(vdot(d, col) for col in zip(*m.data)) for d in ann.basis]
        return nullspace_of_rows(rows, m.cols)

    def __repr__(self):
        return "Subspace(dim %d of Q^%d)" % (self.dim, self.ambient_dim)


def nullspace_of_rows(rows, ncols):
    """Canonical nullspace of the linear map given by stacked row vectors."""
    work = [list(r) for r in rows]
    reduced, pivots = rref(work)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Q(0)] * ncols
        v[f] = Q(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    return Subspace(ncols, basis)


def nullspace(a):
    """Canonical echelon basis of ker(a) as a Subspace."""
    return nullspace_of_rows(a.data, a.cols)


class LinearSolution:
    """Result of solve_linear: a particular solution and the kernel.

    For inconsistent systems `particular` is None and `witness` is a row
    combination y with y^T A = 0 and y^T b != 0.
    """

    __slots__ = ("particular", "nullspace", "witness")

    def __init__(self, particular, nullspace_, witness=None):
        self.particular = particular
        self.nullspace = nullspace_
        self.witness = witness

    @property
    def consistent(self):
        return self.particular is not None


def solve_linear(a, b):
    """Solve a x = b exactly. See LinearSolution."""
    if a.rows != len(b):
        raise DimensionMismatch("rhs length does not match row count")
    rows = [{j: x for j, x in enumerate(r) if x != 0} for r in a.data]
    sol = solve_sparse(rows, [Q(x) for x in b], a.cols, want_witness=True)
    if not sol.consistent:
        witness = [Q(0)] * a.rows
        for i, c in sol.witness.items():
            witness[i] = c
        return LinearSolution(None, sol.nullspace(), tuple(witness))
    return LinearSolution(sol.particular(), sol.nullspace())


class SparseSolution:
    """Echelonized sparse system: pivot rows by pivot column, plus provenance."""

    __slots__ = ("ncols", "pivot_rows", "pivot_rhs", "witness")

    def __init__(self, ncols, pivot_rows, pivot_rhs, witness):
        self.ncols = ncols
        self.pivot_rows = pivot_rows
        self.pivot_rhs = pivot_rhs
        self.witness = witness

    @property
    def consistent(self):
        return self.witness is None

    @property
    def rank(self):
        return len(self.pivot_rows)

    def free_columns(self):
        return [c for c in range(self.ncols) if c not in self.pivot_rows]

    def particular(self):
        if not self.consistent:
            return None
        v = [Q(0)] * self.ncols
        for p, val in self.pivot_rhs.items():
            v[p] = val
        return tuple(v)

    def nullspace(self):
        basis = []
        for f in self.free_columns():
            v = [Q(0)] * self.ncols
            v[f] = Q(1)
            for p, row in self.pivot_rows.items():
                c = row.get(f)
                if c is not None:
                    v[p] = -c
            basis.append(v)
        return Subspace(self.ncols, basis)

    def affine_forms(self):
        """Per-variable affine form (constant, {free column: coefficient}).

        The general solution is obtained by assigning arbitrary values to the
        free columns; pivot variables depend on them affinely.
        """
        forms = []
        for c in range(self.ncols):
            row = self.pivot_rows.get(c)
            if row is None:
                forms.append((Q(0), {c: Q(1)}))
            else:
                forms.append(
                    (self.pivot_rhs[c], {f: -x for f, x in row.items() if f != c})
                )
        return forms


def solve_sparse(rows, rhs, ncols, want_witness=False):
    """Echelonize a sparse system given as dicts {column: coefficient}.

    rhs may be None for a homogeneous system. Returns a SparseSolution whose
    pivot rows form a reduced echelon basis (pivot entry 1, pivot columns
    cleared from all other rows); the pivot chosen for each new row is its
    smallest remaining column, which makes the result canonical for a fixed
    row order. If want_witness and the system is inconsistent, witness is a
    sparse combination {original row index: coefficient} with
    sum_i witness_i row_i = 0 and sum_i witness_i rhs_i != 0.
    """
    pivot_rows = {}
    pivot_rhs = {}
    pivot_combo = {}
    witness = None
    for idx, row in enumerate(rows):
        work = dict(row)
        val = rhs[idx] if rhs is not None else Q(0)
        combo = {idx: Q(1)} if want_witness else None
        # reduce by existing pivots
        for p in sorted(set(work) & set(pivot_rows)):
            f = work.get(p)
            if not f:
                continue
            prow = pivot_rows[p]
            for j, x in prow.items():
                nx = work.get(j, Q(0)) - f * x
                if nx:
                    work[j] = nx
                else:
                    work.pop(j, None)
            val -= f * pivot_rhs[p]
            if want_witness:
                pc = pivot_combo[p]
                for i, x in pc.items():
                    nx = combo.get(i, Q(0)) - f * x
                    if nx:
                        combo[i] = nx
                    else:
                        combo.pop(i, None)
        if not work:
            if val != 0 and witness is None:
                witness = combo if want_witness else {}
            continue
        p = min(work)
        inv = 1 / work[p]
        work = {j: x * inv for j, x in work.items()}
        val *= inv
        if want_witness:
            combo = {i: x * inv for i, x in combo.items()}
        # clear the new pivot column from previous pivot rows
        for q, qrow in pivot_rows.items():
            f = qrow.get(p)
            if f is None:
                continue
            for j, x in work.items():
                nx = qrow.get(j, Q(0)) - f * x
                if nx:
                    qrow[j] = nx
                else:
                    qrow.pop(j, None)
            pivot_rhs[q] -= f * val
            if want_witness:
                qc = pivot_combo[q]
                for i, x in combo.items():
                    nx = qc.get(i, Q(0)) - f * x
                    if nx:
                        qc[i] = nx
                    else:
                        qc.pop(i, None)
        pivot_rows[p] = work
        pivot_rhs[p] = val
        if want_witness:
            pivot_combo[p] = combo
    return SparseSolution(ncols, pivot_rows, pivot_rhs, witness)


def jordan_block(n):
    """Nilpotent Jordan block with ones on the superdiagonal."""
    m = [[Q(0)] * n for _ in range(n)]
    for i in range(n - 1):
        m[i][i + 1] = Q(1)
    return Matrix(m, cols=n)


def nilpotent_regular_basis(n_matrix):
    """Change of basis P with P N P^-1 = jordan_block(n) for a regular nilpotent N.

    Regular means nilpotent of index exactly n, i.e. N^(n-1) != 0 and N^n = 0.
    Built from the Krylov chain of a vector v with N^(n-1) v != 0.
    """
    n = n_matrix.rows
    if n_matrix.cols != n:
        raise DimensionMismatch("square matrix required")
    if not (n_matrix ** n).is_zero():
        raise NotRegularNilpotent("matrix is not nilpotent")
    top = n_matrix ** (n - 1) if n > 1 else Matrix.identity(n)
    seed = None
    for j in range(n):
        if not is_zero_vec(top.column(j)):
            seed = tuple(Q(1) if i == j else Q(0) for i in range(n))
            break
    if seed is None:
        raise NotRegularNilpotent("nilpotency index is smaller than the dimension")
    chain = [seed]
    for _ in range(n - 1):
        chain.append(n_matrix.apply(chain[-1]))
    chain.reverse()  # chain[k] = N^(n-1-k) seed, so N chain[k+1] = chain[k]
    q = Matrix.from_columns(chain)
    return q.inverse()


def word_image_space(ops, v_subspace, length):
    """Span of w(v) over v in the subspace and words w of exactly `length` operators."""
    for m in ops:
        if m.rows != m.cols or m.rows != v_subspace.ambient_dim:
            raise DimensionMismatch("operators must be square of the ambient dimension")
    current = v_subspace
    for _ in range(length):
        vectors = []
        for m in ops:
            vectors.extend(m.apply(v) for v in current.basis)
        current = Subspace(v_subspace.ambient_dim, vectors)
    return current
