"""The LAF text format family.

Line-based documents; '#' starts a comment, blank lines are ignored. Every
rational is serialized in canonical lowest terms ("p" or "p/q" with q > 1),
indices are 1-based, Lie brackets are stored only for i < j (antisymmetry is
implied), products are stored fully. emit produces the canonical form;
parse(emit(x)) round-trips exactly. The formal grammar ships as
laf_grammar.ebnf next to this module.
"""

import re
from fractions import Fraction

from .certificate import EXISTS, NOT_EXISTS, UNDETERMINED, Certificate
from .extensions import ExtensionData, LiftData
from .lie import LieAlgebra, StructureTensor, validate_lie
from .linalg import Matrix, Q
from .products import AlgebraProduct

FORMAT_VERSION = 1

TAGS = ("LAF", "LAF-P", "LAF-M", "LAF-E", "LAF-L", "LAF-C")


class LAFError(ValueError):
    def __init__(self, message, line=None):
        prefix = "line %d: " % line if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


class LAFDocument:
    """A parsed document: the format tag, version, and the payload object."""

    __slots__ = ("format_tag", "version", "payload")

    def __init__(self, format_tag, version, payload):
        self.format_tag = format_tag
        self.version = version
        self.payload = payload

    def __repr__(self):
        return "LAFDocument(%s %d, %r)" % (self.format_tag, self.version, self.payload)


_RATIONAL = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def parse_rational(text, line=None):
    if not _RATIONAL.match(text):
        raise LAFError("malformed rational %r" % text, line)
    try:
        value = Fraction(text)
    except ZeroDivisionError:
        raise LAFError("zero denominator in %r" % text, line)
    if format_rational(value) != text:
        raise LAFError(
            "non-canonical rational %r; write it as %r" % (text, format_rational(value)),
            line,
        )
    return value


def format_rational(value):
    if value.denominator == 1:
        return str(value.numerator)
    return "%d/%d" % (value.numerator, value.denominator)


def _lines(text):
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield no, body.split()


def _int(fields, pos, line, minimum=1):
    try:
        value = int(fields[pos])
    except (IndexError, ValueError):
        raise LAFError("expected an integer in field %d" % (pos + 1), line)
    if value < minimum:
        raise LAFError("index %d out of range" % value, line)
    return value


def _expect_len(fields, n, line):
    if len(fields) != n:
        raise LAFError("expected %d fields, found %d" % (n, len(fields)), line)


def parse(text):
    """Parse a LAF-family document from text. Returns an LAFDocument."""
    rows = list(_lines(text))
    if not rows:
        raise LAFError("empty document")
    line, header = rows[0]
    if len(header) != 2 or header[0] not in TAGS:
        raise LAFError("expected a header '<TAG> 1' with TAG in %s" % (TAGS,), line)
    if header[1] != str(FORMAT_VERSION):
        raise LAFError("unsupported version %r" % header[1], line)
    tag = header[0]
    body = rows[1:]
    parser = {
        "LAF": _parse_lie,
        "LAF-P": _parse_product,
        "LAF-M": _parse_matrix,
        "LAF-E": _parse_extension,
        "LAF-L": _parse_lift,
        "LAF-C": _parse_certificate,
    }[tag]
    return LAFDocument(tag, FORMAT_VERSION, parser(body))


def parse_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def emit(payload):
    """Serialize a supported object to its canonical LAF text."""
    if isinstance(payload, LAFDocument):
        payload = payload.payload
    if isinstance(payload, LieAlgebra):
        return _emit_lie(payload)
    if isinstance(payload, AlgebraProduct):
        return _emit_product(payload)
    if isinstance(payload, Matrix):
        return _emit_matrix(payload)
    if isinstance(payload, ExtensionData):
        return _emit_extension(payload)
    if isinstance(payload, LiftData):
        return _emit_lift(payload)
    if isinstance(payload, Certificate):
        return _emit_certificate(payload)
    raise LAFError("cannot serialize %r" % type(payload).__name__)


def emit_file(payload, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit(payload))


def _parse_dim(fields, line, key="dim"):
    _expect_len(fields, 2, line)
    if fields[0] != key:
        raise LAFError("expected '%s'" % key, line)
    return _int(fields, 1, line, minimum=0)


def _parse_lie(body):
    if not body:
        raise LAFError("missing 'dim'")
    line, fields = body[0]
    dim = _parse_dim(fields, line)
    labels = {}
    entries = {}
    for line, fields in body[1:]:
        if fields[0] == "label":
            _expect_len(fields, 3, line)
            i = _int(fields, 1, line)
            if i > dim:
                raise LAFError("label index %d out of range" % i, line)
            labels[i - 1] = fields[2]
        elif fields[0] == "bracket":
            _expect_len(fields, 5, line)
            i, j, k = (_int(fields, p, line) for p in (1, 2, 3))
            if i == j:
                raise LAFError("bracket requires i < j; found i = j = %d" % i, line)
            if i > j:
                raise LAFError("bracket requires i < j (antisymmetry is implied)", line)
            if max(i, j, k) > dim:
                raise LAFError("bracket index out of range", line)
            value = parse_rational(fields[4], line)
            if value == 0:
                raise LAFError("zero entries are not stored", line)
            if (i - 1, j - 1, k - 1) in entries:
                raise LAFError("duplicate bracket entry", line)
            entries[(i - 1, j - 1, k - 1)] = value
            entries[(j - 1, i - 1, k - 1)] = -value
        else:
            raise LAFError("unknown directive %r" % fields[0], line)
    tensor = StructureTensor(dim, entries)
    label_tuple = tuple(labels.get(i, "e%d" % (i + 1)) for i in range(dim))
    return validate_lie(tensor, label_tuple)


def _emit_lie(g):
    out = ["LAF %d" % FORMAT_VERSION, "dim %d" % g.dim]
    for i, label in enumerate(g.labels):
        out.append("label %d %s" % (i + 1, label))
    for (i, j, k) in sorted(g.bracket.entries):
        if i < j:
            out.append(
                "bracket %d %d %d %s"
                % (i + 1, j + 1, k + 1, format_rational(g.bracket.entries[(i, j, k)]))
            )
    return "\n".join(out) + "\n"


def _parse_product(body):
    if not body:
        raise LAFError("missing 'dim'")
    line, fields = body[0]
    dim = _parse_dim(fields, line)
    entries = {}
    for line, fields in body[1:]:
        if fields[0] != "product":
            raise LAFError("unknown directive %r" % fields[0], line)
        _expect_len(fields, 5, line)
        i, j, k = (_int(fields, p, line) for p in (1, 2, 3))
        if max(i, j, k) > dim:
            raise LAFError("product index out of range", line)
        value = parse_rational(fields[4], line)
        if value == 0:
            raise LAFError("zero entries are not stored", line)
        if (i - 1, j - 1, k - 1) in entries:
            raise LAFError("duplicate product entry", line)
        entries[(i - 1, j - 1, k - 1)] = value
    return AlgebraProduct(StructureTensor(dim, entries))


def _emit_product(p):
    out = ["LAF-P %d" % FORMAT_VERSION, "dim %d" % p.dim]
    for (i, j, k) in sorted(p.tensor.entries):
        out.append(
            "product %d %d %d %s"
            % (i + 1, j + 1, k + 1, format_rational(p.tensor.entries[(i, j, k)]))
        )
    return "\n".join(out) + "\n"


def _parse_matrix(body):
    if len(body) < 2:
        raise LAFError("missing 'rows'/'cols'")
    line, fields = body[0]
    rows = _parse_dim(fields, line, "rows")
    line, fields = body[1]
    cols = _parse_dim(fields, line, "cols")
    data = [[Q(0)] * cols for _ in range(rows)]
    seen = set()
    for line, fields in body[2:]:
        if fields[0] != "entry":
            raise LAFError("unknown directive %r" % fields[0], line)
        _expect_len(fields, 4, line)
        r, c = _int(fields, 1, line), _int(fields, 2, line)
        if r > rows or c > cols:
            raise LAFError("entry index out of range", line)
        if (r, c) in seen:
            raise LAFError("duplicate matrix entry", line)
        seen.add((r, c))
        value = parse_rational(fields[3], line)
        if value == 0:
            raise LAFError("zero entries are not stored", line)
        data[r - 1][c - 1] = value
    return Matrix(data, cols=cols)


def _emit_matrix(m):
    out = ["LAF-M %d" % FORMAT_VERSION, "rows %d" % m.rows, "cols %d" % m.cols]
    for r in range(m.rows):
        for c in range(m.cols):
            if m[r, c] != 0:
                out.append("entry %d %d %s" % (r + 1, c + 1, format_rational(m[r, c])))
    return "\n".join(out) + "\n"


def _parse_extension(body):
    if len(body) < 2:
        raise LAFError("missing 'dim-a'/'dim-b'")
    line, fields = body[0]
    dim_a = _parse_dim(fields, line, "dim-a")
    line, fields = body[1]
    dim_b = _parse_dim(fields, line, "dim-b")
    phi = [[[Q(0)] * dim_a for _ in range(dim_a)] for _ in range(dim_b)]
    omega = {}
    b_brackets = {}
    b_products = {}
    a_products = {}
    seen = set()

    def check_dup(key, line):
        if key in seen:
            raise LAFError("duplicate %s entry" % key[0], line)
        seen.add(key)

    for line, fields in body[2:]:
        kind = fields[0]
        if kind == "phi":
            _expect_len(fields, 5, line)
            p, r, c = (_int(fields, pos, line) for pos in (1, 2, 3))
            if p > dim_b or r > dim_a or c > dim_a:
                raise LAFError("phi index out of range", line)
            check_dup(("phi", p, r, c), line)
            phi[p - 1][r - 1][c - 1] = parse_rational(fields[4], line)
        elif kind == "omega":
            _expect_len(fields, 5, line)
            p, q, k = (_int(fields, pos, line) for pos in (1, 2, 3))
            if p >= q:
                raise LAFError("omega requires p < q (antisymmetry is implied)", line)
            if q > dim_b or k > dim_a:
                raise LAFError("omega index out of range", line)
            check_dup(("omega", p, q, k), line)
            v = list(omega.get((p - 1, q - 1), [Q(0)] * dim_a))
            v[k - 1] = parse_rational(fields[4], line)
            omega[(p - 1, q - 1)] = tuple(v)
        elif kind == "b-bracket":
            _expect_len(fields, 5, line)
            i, j, k = (_int(fields, pos, line) for pos in (1, 2, 3))
            if i >= j:
                raise LAFError("b-bracket requires i < j", line)
            if max(j, k) > dim_b:
                raise LAFError("b-bracket index out of range", line)
            check_dup(("b-bracket", i, j, k), line)
            value = parse_rational(fields[4], line)
            b_brackets[(i - 1, j - 1, k - 1)] = value
            b_brackets[(j - 1, i - 1, k - 1)] = -value
        elif kind == "b-product":
            _expect_len(fields, 5, line)
            i, j, k = (_int(fields, pos, line) for pos in (1, 2, 3))
            if max(i, j, k) > dim_b:
                raise LAFError("b-product index out of range", line)
            check_dup(("b-product", i, j, k), line)
            b_products[(i - 1, j - 1, k - 1)] = parse_rational(fields[4], line)
        elif kind == "a-product":
            _expect_len(fields, 5, line)
            i, j, k = (_int(fields, pos, line) for pos in (1, 2, 3))
            if max(i, j, k) > dim_a:
                raise LAFError("a-product index out of range", line)
            check_dup(("a-product", i, j, k), line)
            a_products[(i - 1, j - 1, k - 1)] = parse_rational(fields[4], line)
        else:
            raise LAFError("unknown directive %r" % kind, line)
    ext = ExtensionData(
        dim_a,
        dim_b,
        [Matrix(rows, cols=dim_a) for rows in phi],
        omega,
        b_bracket=StructureTensor(dim_b, b_brackets),
        b_product=AlgebraProduct(StructureTensor(dim_b, b_products)),
        a_product=AlgebraProduct(StructureTensor(dim_a, a_products)),
    )
    ext.validate()
    return ext


def _emit_extension(ext):
    out = ["LAF-E %d" % FORMAT_VERSION, "dim-a %d" % ext.dim_a, "dim-b %d" % ext.dim_b]
    for p, mat in enumerate(ext.phi):
        for r in range(ext.dim_a):
            for c in range(ext.dim_a):
                if mat[r, c] != 0:
                    out.append(
                        "phi %d %d %d %s" % (p + 1, r + 1, c + 1, format_rational(mat[r, c]))
                    )
    for (p, q) in sorted(ext.omega):
        for k, value in enumerate(ext.omega[(p, q)]):
            if value != 0:
                out.append(
                    "omega %d %d %d %s" % (p + 1, q + 1, k + 1, format_rational(value))
                )
    for (i, j, k) in sorted(ext.b_bracket.entries):
        if i < j:
            out.append(
                "b-bracket %d %d %d %s"
                % (i + 1, j + 1, k + 1, format_rational(ext.b_bracket.entries[(i, j, k)]))
            )
    for (i, j, k) in sorted(ext.b_product.tensor.entries):
        out.append(
            "b-product %d %d %d %s"
            % (i + 1, j + 1, k + 1, format_rational(ext.b_product.tensor.entries[(i, j, k)]))
        )
    for (i, j, k) in sorted(ext.a_product.tensor.entries):
        out.append(
            "a-product %d %d %d %s"
            % (i + 1, j + 1, k + 1, format_rational(ext.a_product.tensor.entries[(i, j, k)]))
        )
    return "\n".join(out) + "\n"


def _parse_lift(body):
    if len(body) < 2:
        raise LAFError("missing 'dim-a'/'dim-b'")
    line, fields = body[0]
    dim_a = _parse_dim(fields, line, "dim-a")
    line, fields = body[1]
    dim_b = _parse_dim(fields, line, "dim-b")
    x_ops = [[[Q(0)] * dim_a for _ in range(dim_a)] for _ in range(dim_b)]
    y_ops = [[[Q(0)] * dim_a for _ in range(dim_a)] for _ in range(dim_b)]
    values = {}
    seen = set()
    for line, fields in body[2:]:
        kind = fields[0]
        if kind in ("x", "y"):
            _expect_len(fields, 5, line)
            p, r, c = (_int(fields, pos, line) for pos in (1, 2, 3))
            if p > dim_b or r > dim_a or c > dim_a:
                raise LAFError("%s index out of range" % kind, line)
            if (kind, p, r, c) in seen:
                raise LAFError("duplicate %s entry" % kind, line)
            seen.add((kind, p, r, c))
            target = x_ops if kind == "x" else y_ops
            target[p - 1][r - 1][c - 1] = parse_rational(fields[4], line)
        elif kind == "omega":
            _expect_len(fields, 5, line)
            p, q, k = (_int(fields, pos, line) for pos in (1, 2, 3))
            if p > dim_b or q > dim_b or k > dim_a:
                raise LAFError("omega index out of range", line)
            if ("omega", p, q, k) in seen:
                raise LAFError("duplicate omega entry", line)
            seen.add(("omega", p, q, k))
            v = list(values.get((p - 1, q - 1), [Q(0)] * dim_a))
            v[k - 1] = parse_rational(fields[4], line)
            values[(p - 1, q - 1)] = tuple(v)
        else:
            raise LAFError("unknown directive %r" % kind, line)
    return LiftData(
        dim_a,
        dim_b,
        [Matrix(rows, cols=dim_a) for rows in x_ops],
        [Matrix(rows, cols=dim_a) for rows in y_ops],
        values,
    )


def _emit_lift(lift):
    out = ["LAF-L %d" % FORMAT_VERSION, "dim-a %d" % lift.dim_a, "dim-b %d" % lift.dim_b]
    for key, ops in (("x", lift.x_op), ("y", lift.y_op)):
        for p, mat in enumerate(ops):
            for r in range(lift.dim_a):
                for c in range(lift.dim_a):
                    if mat[r, c] != 0:
                        out.append(
                            "%s %d %d %d %s"
                            % (key, p + 1, r + 1, c + 1, format_rational(mat[r, c]))
                        )
    for (p, q) in sorted(lift.x_values):
        for k, value in enumerate(lift.x_values[(p, q)]):
            if value != 0:
                out.append(
                    "omega %d %d %d %s" % (p + 1, q + 1, k + 1, format_rational(value))
                )
    return "\n".join(out) + "\n"


_VERDICTS = {EXISTS, NOT_EXISTS, UNDETERMINED}


def _parse_certificate(body):
    fields_by_key = {}
    product_entries = {}
    coeffs = {}
    dim = None
    for line, fields in body:
        kind = fields[0]
        if kind == "product":
            _expect_len(fields, 5, line)
            i, j, k = (_int(fields, pos, line) for pos in (1, 2, 3))
            product_entries[(i - 1, j - 1, k - 1)] = parse_rational(fields[4], line)
        elif kind == "coeff":
            _expect_len(fields, 3, line)
            idx = _int(fields, 1, line)
            coeffs[idx - 1] = parse_rational(fields[2], line)
        elif kind == "dim":
            dim = _parse_dim(fields, line)
        elif kind in ("algebra-sha256", "verdict", "method", "witness-kind", "constant"):
            _expect_len(fields, 2, line)
            fields_by_key[kind] = (fields[1], line)
        elif kind == "residuals":
            _expect_len(fields, 3, line)
            fields_by_key[kind] = ((fields[1], fields[2]), line)
        else:
            raise LAFError("unknown directive %r" % kind, line)
    if "algebra-sha256" not in fields_by_key or "verdict" not in fields_by_key:
        raise LAFError("certificate requires algebra-sha256 and verdict")
    verdict, vline = fields_by_key["verdict"]
    if verdict not in _VERDICTS:
        raise LAFError("unknown verdict %r" % verdict, vline)
    h = fields_by_key["algebra-sha256"][0]
    if verdict == EXISTS:
        if dim is None:
            raise LAFError("exists certificate requires 'dim'")
        product = AlgebraProduct(StructureTensor(dim, product_entries))
        method = fields_by_key.get("method", (None, None))[0]
        return Certificate(EXISTS, h, product=product, method=method)
    if verdict == NOT_EXISTS:
        kind = fields_by_key.get("witness-kind", (None, None))[0]
        if kind not in ("linear", "quadratic"):
            raise LAFError("not-exists certificate requires a witness-kind")
        if "constant" not in fields_by_key:
            raise LAFError("not-exists certificate requires the recorded constant")
        constant = parse_rational(*fields_by_key["constant"])
        if not coeffs:
            raise LAFError("not-exists certificate requires coeff lines")
        return Certificate(
            NOT_EXISTS, h, witness_kind=kind, witness=coeffs, constant=constant
        )
    summary = None
    if "residuals" in fields_by_key:
        (a, b), line = fields_by_key["residuals"]
        try:
            summary = (int(a), int(b))
        except ValueError:
            raise LAFError("malformed residual counts", line)
    return Certificate(UNDETERMINED, h, residual_summary=summary)


def _emit_certificate(cert):
    out = ["LAF-C %d" % FORMAT_VERSION]
    out.append("algebra-sha256 %s" % cert.algebra_hash)
    out.append("verdict %s" % cert.verdict)
    if cert.verdict == EXISTS:
        if cert.method:
            out.append("method %s" % cert.method)
        out.append("dim %d" % cert.product.dim)
        for (i, j, k) in sorted(cert.product.tensor.entries):
            out.append(
                "product %d %d %d %s"
                % (i + 1, j + 1, k + 1, format_rational(cert.product.tensor.entries[(i, j, k)]))
            )
    elif cert.verdict == NOT_EXISTS:
        out.append("witness-kind %s" % cert.witness_kind)
        for idx in sorted(cert.witness):
            out.append("coeff %d %s" % (idx + 1, format_rational(cert.witness[idx])))
        out.append("constant %s" % format_rational(cert.constant))
    else:
        if cert.residual_summary is not None:
            out.append("residuals %d %d" % cert.residual_summary)
    return "\n".join(out) + "\n"
