"""Named Lie algebras and products used as fixtures across the toolkit."""

from .lie import StructureTensor, validate_lie
from .linalg import Q
from .products import AlgebraProduct


class UnknownFixture(KeyError):
    pass


def _unit(n, i, scale=1):
    return tuple(Q(scale) if j == i else Q(0) for j in range(n))


def abelian(n):
    return validate_lie(StructureTensor(n, {}), tuple("e%d" % (i + 1) for i in range(n)))


def n3():
    t = StructureTensor.antisymmetric_from_brackets(3, {(0, 1): _unit(3, 2)})
    return validate_lie(t)


def r2():
    t = StructureTensor.antisymmetric_from_brackets(2, {(0, 1): _unit(2, 1)})
    return validate_lie(t, ("x1", "x2"))


def r3():
    brackets = {(0, 1): _unit(3, 1), (0, 2): (Q(0), Q(1), Q(1))}
    return validate_lie(StructureTensor.antisymmetric_from_brackets(3, brackets))


def r3_lambda(lam):
    lam = Q(lam)
    brackets = {(0, 1): _unit(3, 1), (0, 2): (Q(0), Q(0), lam)}
    return validate_lie(StructureTensor.antisymmetric_from_brackets(3, brackets))


def sl2():
    brackets = {
        (0, 1): _unit(3, 2),
        (0, 2): _unit(3, 0, -2),
        (1, 2): _unit(3, 1, 2),
    }
    return validate_lie(StructureTensor.antisymmetric_from_brackets(3, brackets))


def ex35():
    """The 5-dimensional free 3-step nilpotent algebra on two generators.

    Basis (A, B, C, X, Y) with [X,Y] = A, [X,A] = B, [Y,A] = C.
    """
    brackets = {
        (0, 3): _unit(5, 1, -1),  # [A,X] = -B
        (0, 4): _unit(5, 2, -1),  # [A,Y] = -C
        (3, 4): _unit(5, 0),      # [X,Y] = A
    }
    t = StructureTensor.antisymmetric_from_brackets(5, brackets)
    return validate_lie(t, ("A", "B", "C", "X", "Y"))


def free_n2_c4():
    """Free 4-step nilpotent Lie algebra on two generators, dimension 8."""
    brackets = {
        (0, 1): _unit(8, 2),  # x3 = [x1,x2]
        (0, 2): _unit(8, 3),  # x4 = [x1,x3]
        (1, 2): _unit(8, 4),  # x5 = [x2,x3]
        (0, 3): _unit(8, 5),  # x6 = [x1,x4]
        (1, 3): _unit(8, 6),  # x7 = [x2,x4]
        (0, 4): _unit(8, 6),  # x7 = [x1,x5]
        (1, 4): _unit(8, 7),  # x8 = [x2,x5]
    }
    t = StructureTensor.antisymmetric_from_brackets(8, brackets)
    return validate_lie(t, tuple("x%d" % (i + 1) for i in range(8)))


def free_n3_c3():
    """Free 3-step nilpotent Lie algebra on three generators, dimension 14."""
    n = 14
    brackets = {
        (0, 1): _unit(n, 3),   # x4
        (0, 2): _unit(n, 4),   # x5
        (1, 2): _unit(n, 5),   # x6
        (0, 3): _unit(n, 6),   # x7
        (1, 3): _unit(n, 7),   # x8
        (2, 3): _unit(n, 8),   # x9
        (0, 4): _unit(n, 9),   # x10
        (1, 4): _unit(n, 10),  # x11
        (2, 4): _unit(n, 11),  # x12
        (1, 5): _unit(n, 12),  # x13
        (2, 5): _unit(n, 13),  # x14
    }
    v = [Q(0)] * n
    v[10], v[8] = Q(1), Q(-1)
    brackets[(0, 5)] = tuple(v)  # [x1,x6] = x11 - x9
    t = StructureTensor.antisymmetric_from_brackets(n, brackets)
    return validate_lie(t, tuple("x%d" % (i + 1) for i in range(n)))


def filiform(n):
    """Standard filiform algebra L_n: [e1, e_i] = e_(i+1) for 2 <= i <= n-1.

    Nilpotent of maximal class n-1, with abelian commutator algebra.
    """
    if n < 3:
        raise ValueError("filiform fixtures need dimension at least 3")
    brackets = {(0, i): _unit(n, i + 1) for i in range(1, n - 1)}
    return validate_lie(StructureTensor.antisymmetric_from_brackets(n, brackets))


def in_lie(n):
    """The Lie algebra [e1, ej] = ej of the simple left-symmetric algebra I_n."""
    if n < 2:
        raise ValueError("I_n needs n >= 2")
    brackets = {(0, j): _unit(n, j) for j in range(1, n)}
    return validate_lie(StructureTensor.antisymmetric_from_brackets(n, brackets))


def ex35_product():
    """Novikov product on ex35: A*X = -B/2, X*A = B/2, Y*A = C, Y*X = -A."""
    products = {
        (0, 3): _unit(5, 1, Q(-1, 2)),
        (3, 0): _unit(5, 1, Q(1, 2)),
        (4, 0): _unit(5, 2),
        (4, 3): _unit(5, 0, -1),
    }
    return AlgebraProduct.from_products(5, products)


def free_n3_c3_product():
    """The Novikov product table on the 14-dimensional free 3-step algebra."""
    n = 14
    h = Q(1, 2)
    products = {
        (0, 2): _unit(n, 4),        # x1*x3 = x5
        (0, 3): _unit(n, 6, h),     # x1*x4 = x7/2
        (0, 4): _unit(n, 9),        # x1*x5 = x10
        (1, 0): _unit(n, 3, -1),    # x2*x1 = -x4
        (1, 2): _unit(n, 5),        # x2*x3 = x6
        (1, 3): _unit(n, 7),        # x2*x4 = x8
        (1, 4): _unit(n, 10),       # x2*x5 = x11
        (1, 5): _unit(n, 12),       # x2*x6 = x13
        (2, 3): _unit(n, 8, h),     # x3*x4 = x9/2
        (2, 4): _unit(n, 11, h),    # x3*x5 = x12/2
        (2, 5): _unit(n, 13, h),    # x3*x6 = x14/2
        (3, 0): _unit(n, 6, -h),    # x4*x1 = -x7/2
        (3, 2): _unit(n, 8, -h),    # x4*x3 = -x9/2
        (4, 2): _unit(n, 11, -h),   # x5*x3 = -x12/2
        (5, 0): _unit(n, 8, h),     # x6*x1 = x9/2
        (5, 2): _unit(n, 13, -h),   # x6*x3 = -x14/2
    }
    v = [Q(0)] * n
    v[10], v[8] = Q(1), Q(-1, 2)
    products[(0, 5)] = tuple(v)     # x1*x6 = x11 - x9/2
    return AlgebraProduct.from_products(n, products)


def in_product(n):
    """The simple left-symmetric algebra I_n (left-symmetric, not Novikov)."""
    if n < 2:
        raise ValueError("I_n needs n >= 2")
    products = {(0, 0): _unit(n, 0, 2)}
    for j in range(1, n):
        products[(0, j)] = _unit(n, j)
        products[(j, j)] = _unit(n, 0)
    return AlgebraProduct.from_products(n, products)


def in_novikov_product(n):
    """The Novikov alternative on I_n's Lie algebra: e1*ej = ej, rest zero."""
    if n < 2:
        raise ValueError("I_n needs n >= 2")
    products = {(0, j): _unit(n, j) for j in range(1, n)}
    return AlgebraProduct.from_products(n, products)


_PARAMETRIC = {
    "abelian": (abelian, "n"),
    "r3-lambda": (r3_lambda, "lam"),
    "filiform": (filiform, "n"),
    "In": (in_lie, "n"),
}

_PRODUCT_PLAIN = {
    "ex35-product": ex35_product,
    "free-n3-c3-product": free_n3_c3_product,
}

_PRODUCT_PARAMETRIC = {
    "In-product": in_product,
    "In-novikov": in_novikov_product,
}


def product_fixture(name, **params):
    """Look up a named product fixture.

    "In-product:3" and "In-novikov:3" take the dimension after the colon;
    "half-bracket:<lie fixture>" builds x*y = [x,y]/2 on any Lie fixture.
    """
    from .products import half_bracket_product

    if name.startswith("half-bracket:"):
        return half_bracket_product(fixture(name.partition(":")[2]))
    if ":" in name and not params:
        head, _, raw = name.partition(":")
        if head not in _PRODUCT_PARAMETRIC:
            raise UnknownFixture(name)
        return _PRODUCT_PARAMETRIC[head](int(raw))
    if name in _PRODUCT_PLAIN:
        if params:
            raise UnknownFixture("%s takes no parameters" % name)
        return _PRODUCT_PLAIN[name]()
    if name in _PRODUCT_PARAMETRIC:
        if set(params) != {"n"}:
            raise UnknownFixture("%s takes exactly the parameter 'n'" % name)
        return _PRODUCT_PARAMETRIC[name](params["n"])
    raise UnknownFixture(name)

_PLAIN = {
    "n3": n3,
    "r2": r2,
    "r3": r3,
    "sl2": sl2,
    "ex35": ex35,
    "free-n2-c4": free_n2_c4,
    "free-n3-c3": free_n3_c3,
}


def fixture(name, **params):
    """Look up a named Lie algebra fixture.

    Parametric names take a single keyword ("abelian" and "filiform" and "In"
    take n, "r3-lambda" takes lam); alternatively the parameter may be packed
    into the name after a colon, e.g. "filiform:6" or "r3-lambda:-1/2".
    """
    if ":" in name and not params:
        name, _, raw = name.partition(":")
        if name not in _PARAMETRIC:
            raise UnknownFixture(name)
        fn, key = _PARAMETRIC[name]
        value = Q(raw) if key == "lam" else int(raw)
        return fn(value)
    if name in _PLAIN:
        if params:
            raise UnknownFixture("%s takes no parameters" % name)
        return _PLAIN[name]()
    if name in _PARAMETRIC:
        fn, key = _PARAMETRIC[name]
        if set(params) != {key}:
            raise UnknownFixture("%s takes exactly the parameter %r" % (name, key))
        return fn(params[key])
    raise UnknownFixture(name)
