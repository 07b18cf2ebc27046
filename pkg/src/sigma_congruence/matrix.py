"""Dense exact square matrices over a :class:`~sigma_congruence.field.FieldDescriptor`.

Entries are kept as raw field elements (``Fraction`` or ``int`` residues) in a
tuple of row tuples.  Public indices (``entry``, ``cofactor``) are 1-based so
that ``a.entry(i, j)`` reads as a_ij.
"""

from __future__ import annotations

import json
import math
import random
from fractions import Fraction

from .errors import DimensionMismatch, FieldMismatch, IndexOutOfRange, ParseError, SingularMatrix
from .field import FieldDescriptor, Scalar

MAX_DIM = 64

# Over Q, determinants use Gaussian elimination on Fractions below this size
# unless every entry is an integer; otherwise fraction-free Bareiss.
BAREISS_MIN_DIM = 6

RETRY_LIMIT = 64


def _check_dim(n):
    if not isinstance(n, int) or n < 1:
        raise DimensionMismatch(f"dimension must be a positive integer, got {n!r}")
    if n > MAX_DIM:
        raise DimensionMismatch(f"dimension {n} exceeds the cap of {MAX_DIM}")


class Matrix:
    """Immutable n x n matrix with all entries in one field."""

    __slots__ = ("field", "n", "rows")

    def __init__(self, field, rows):
        rows = [list(r) for r in rows]
        n = len(rows)
        _check_dim(n)
        if any(len(r) != n for r in rows):
            raise DimensionMismatch("matrix must be square")
        coerced = tuple(
            tuple(field.parse(x) if isinstance(x, str) else field.coerce(x) for x in r)
            for r in rows
        )
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", coerced)

    @classmethod
    def _raw(cls, field, rows):
        # rows must already hold normalized raw elements of `field`
        m = object.__new__(cls)
        object.__setattr__(m, "field", field)
        object.__setattr__(m, "n", len(rows))
        object.__setattr__(m, "rows", tuple(tuple(r) for r in rows))
        return m

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls, n, field):
        _check_dim(n)
        zero, one = field.zero, field.one
        return cls._raw(field, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, field, values):
        values = [field.coerce(v) for v in values]
        n = len(values)
        _check_dim(n)
        return cls._raw(
            field, [[values[i] if i == j else field.zero for j in range(n)] for i in range(n)]
        )

    # -- accessors ----------------------------------------------------------

    def entry(self, i, j):
        """The scalar a_ij, 1-based."""
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexOutOfRange(f"index ({i}, {j}) outside a {self.n}x{self.n} matrix")
        return Scalar(self.field, self.rows[i - 1][j - 1])

    def to_lists(self):
        """Rows as nested lists of canonical scalar strings."""
        fmt = self.field.format
        return [[fmt(x) for x in r] for r in self.rows]

    def flat(self):
        return tuple(x for r in self.rows for x in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        return f"Matrix({self.field}, {self.to_lists()})"

    def __str__(self):
        cells = self.to_lists()
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)

    # -- operator sugar -------------------------------------------------------

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        return scale(self, c)

    __rmul__ = __mul__

    def __add__(self, other):
        _same_shape(self, other)
        add = self.field.add
        return Matrix._raw(
            self.field,
            [[add(x, y) for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)],
        )

    def __sub__(self, other):
        _same_shape(self, other)
        sub = self.field.sub
        return Matrix._raw(
            self.field,
            [[sub(x, y) for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)],
        )

    def __neg__(self):
        return scale(self, -1)

    @property
    def T(self):
        return transpose(self)

    # -- JSON ---------------------------------------------------------------

    def to_json(self):
        return {"field": self.field.to_json(), "rows": self.to_lists()}

    @classmethod
    def from_json(cls, doc):
        if not isinstance(doc, dict) or "field" not in doc or "rows" not in doc:
            raise ParseError("matrix document needs 'field' and 'rows'")
        field = FieldDescriptor.from_json(doc["field"])
        rows = doc["rows"]
        if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
            raise ParseError("'rows' must be a non-empty list of lists")
        try:
            return cls(field, rows)
        except DimensionMismatch as exc:
            raise ParseError(str(exc)) from None
        except TypeError as exc:
            raise ParseError(str(exc)) from None

    def dumps(self):
        return json.dumps(self.to_json())

    @classmethod
    def loads(cls, text):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed JSON: {exc}") from None
        return cls.from_json(doc)


def _same_shape(a, b):
    if not isinstance(b, Matrix):
        raise TypeError(f"expected a Matrix, got {type(b).__name__}")
    if a.field != b.field:
        raise FieldMismatch(f"cannot combine matrices over {a.field} and {b.field}")
    if a.n != b.n:
        raise DimensionMismatch(f"cannot combine {a.n}x{a.n} and {b.n}x{b.n} matrices")


def identity(n, field):
    return Matrix.identity(n, field)


def transpose(a):
    return Matrix._raw(a.field, list(zip(*a.rows)))


def _is_integral(rows):
    return all(x.denominator == 1 for r in rows for x in r)


def mat_mul(a, b):
    _same_shape(a, b)
    cols = list(zip(*b.rows))
    if a.field.is_rational:
        if _is_integral(a.rows) and _is_integral(b.rows):
            # integer products are much cheaper than Fraction arithmetic
            icols = [[x.numerator for x in c] for c in cols]
            rows = [
                [Fraction(sum(x * y for x, y in zip(ir, c))) for c in icols]
                for ir in ([x.numerator for x in r] for r in a.rows)
            ]
        else:
            rows = [[sum(x * y for x, y in zip(r, c)) for c in cols] for r in a.rows]
    else:
        p = a.field.p
        rows = [[sum(x * y for x, y in zip(r, c)) % p for c in cols] for r in a.rows]
    return Matrix._raw(a.field, rows)


def scale(a, c):
    """The matrix c*a for a scalar (or int/Fraction) c."""
    c = a.field.coerce(c)
    mul = a.field.mul
    return Matrix._raw(a.field, [[mul(c, x) for x in r] for r in a.rows])


def trace(a):
    f = a.field
    total = f.zero
    for i in range(a.n):
        total = f.add(total, a.rows[i][i])
    return Scalar(f, total)


# -- determinants -----------------------------------------------------------


def _det_mod_p(rows, p):
    m = [list(r) for r in rows]
    n = len(m)
    det = 1
    for k in range(n):
        pivot = next((i for i in range(k, n) if m[i][k]), None)
        if pivot is None:
            return 0
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            det = -det
        pk = m[k][k]
        det = det * pk % p
        inv = pow(pk, -1, p)
        row_k = m[k]
        for i in range(k + 1, n):
            f = m[i][k] * inv % p
            if f:
                row_i = m[i]
                for j in range(k + 1, n):
                    row_i[j] = (row_i[j] - f * row_k[j]) % p
    return det % p


def _det_gauss_fraction(rows):
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for k in range(n):
        pivot = next((i for i in range(k, n) if m[i][k]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            det = -det
        pk = m[k][k]
        det *= pk
        row_k = m[k]
        for i in range(k + 1, n):
            if m[i][k]:
                f = m[i][k] / pk
                row_i = m[i]
                for j in range(k + 1, n):
                    row_i[j] -= f * row_k[j]
    return det


def bareiss_det(int_rows):
    """Fraction-free determinant of an integer matrix (list of int rows)."""
    m = [list(r) for r in int_rows]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, n):
            row_i, row_k = m[i], m[k]
            mik = row_i[k]
            for j in range(k + 1, n):
                # exact: Sylvester's identity guarantees divisibility
                row_i[j] = (row_i[j] * pk - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    return sign * m[n - 1][n - 1]


def _det_bareiss_fraction(rows):
    # clear denominators row by row, then run integer Bareiss
    scale_total = 1
    int_rows = []
    for r in rows:
        lcm = math.lcm(*(x.denominator for x in r))
        scale_total *= lcm
        int_rows.append([x.numerator * (lcm // x.denominator) for x in r])
    return Fraction(bareiss_det(int_rows), scale_total)


def _det_raw(field, rows):
    n = len(rows)
    if n == 0:
        return field.one
    if n == 1:
        return rows[0][0]
    if field.is_prime:
        return _det_mod_p(rows, field.p)
    if n >= BAREISS_MIN_DIM or _is_integral(rows):
        return _det_bareiss_fraction(rows)
    return _det_gauss_fraction(rows)


def determinant(a):
    """Exact determinant |a|; zero for singular matrices."""
    return Scalar(a.field, _det_raw(a.field, a.rows))


def _minor_rows(rows, i, j):
    return [r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i]


def _cofactor_raw(field, rows, i, j):
    # 0-based; the 1x1 cofactor is 1 by convention
    if len(rows) == 1:
        return field.one
    d = _det_raw(field, _minor_rows(rows, i, j))
    return field.neg(d) if (i + j) % 2 else d


def cofactor(a, i, j):
    """(-1)^(i+j) times the (i, j) minor of ``a``, with 1-based indices."""
    if not (1 <= i <= a.n and 1 <= j <= a.n):
        raise IndexOutOfRange(f"cofactor index ({i}, {j}) outside a {a.n}x{a.n} matrix")
    return Scalar(a.field, _cofactor_raw(a.field, a.rows, i - 1, j - 1))


def adjugate(a):
    """Transpose of the cofactor matrix, computed entrywise from minors.

    Defined for singular matrices as well.
    """
    f, rows, n = a.field, a.rows, a.n
    cof = [[_cofactor_raw(f, rows, i, j) for j in range(n)] for i in range(n)]
    return Matrix._raw(f, [[cof[j][i] for j in range(n)] for i in range(n)])


def inverse(a):
    """Exact inverse by Gauss-Jordan elimination."""
    f, n = a.field, a.n
    m = [list(r) + [f.one if i == j else f.zero for j in range(n)] for i, r in enumerate(a.rows)]
    for k in range(n):
        pivot = next((i for i in range(k, n) if m[i][k]), None)
        if pivot is None:
            raise SingularMatrix("singular matrix has no inverse")
        m[k], m[pivot] = m[pivot], m[k]
        inv = f.inv(m[k][k])
        m[k] = [f.mul(inv, x) for x in m[k]]
        row_k = m[k]
        for i in range(n):
            if i != k and m[i][k]:
                c = m[i][k]
                m[i] = [f.sub(x, f.mul(c, y)) for x, y in zip(m[i], row_k)]
    return Matrix._raw(f, [r[n:] for r in m])


def is_symmetric(a):
    return all(a.rows[i][j] == a.rows[j][i] for i in range(a.n) for j in range(i + 1, a.n))


def is_nonsingular(a):
    return bool(_det_raw(a.field, a.rows))


# -- seeded random generation ----------------------------------------------


def derive_rng(seed, *stream):
    """Independent PRNG for ``(seed, stream...)``; stable across runs and platforms."""
    if not stream:
        return random.Random(seed)
    return random.Random(":".join(str(s) for s in (seed, *stream)))


def _as_rng(seed):
    return seed if isinstance(seed, random.Random) else derive_rng(seed)


def _random_raw(rng, field, bound):
    if field.is_rational:
        return Fraction(rng.randint(-bound, bound))
    return rng.randrange(field.p)


def random_matrix(n, field, seed, bound=9):
    """Uniform entries: integers in [-bound, bound] over Q, residues over GF(p)."""
    _check_dim(n)
    rng = _as_rng(seed)
    return Matrix._raw(field, [[_random_raw(rng, field, bound) for _ in range(n)] for _ in range(n)])


def random_nonzero_scalar(field, seed, bound=9):
    """A random nonzero element; over Q a fraction with numerator and denominator up to ``bound``."""
    rng = _as_rng(seed)
    if field.is_rational:
        num = rng.choice([k for k in range(-bound, bound + 1) if k])
        return Scalar(field, Fraction(num, rng.randint(1, bound)))
    return Scalar(field, rng.randrange(1, field.p))


def _elementary_product(n, field, rng, bound):
    # nonzero diagonal times random row additions: nonsingular by construction
    f = field
    if f.is_rational:
        nonzero = [k for k in range(-bound, bound + 1) if k]
        m = [[Fraction(rng.choice(nonzero)) if i == j else f.zero for j in range(n)] for i in range(n)]
    else:
        m = [[rng.randrange(1, f.p) if i == j else f.zero for j in range(n)] for i in range(n)]
    for _ in range(2 * n * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            break
        c = _random_raw(rng, f, bound)
        m[i] = [f.add(x, f.mul(c, y)) for x, y in zip(m[i], m[j])]
    return Matrix._raw(f, m)


def random_nonsingular(n, field, seed, bound=9):
    """Seeded random nonsingular matrix.

    Draws uniform matrices (see :func:`random_matrix`) and rejects singular
    ones; after ``RETRY_LIMIT`` rejections it falls back to a product of
    random elementary matrices, which is nonsingular by construction.
    """
    _check_dim(n)
    if bound < 1:
        raise ValueError("bound must be at least 1")
    rng = _as_rng(seed)
    for _ in range(RETRY_LIMIT):
        m = random_matrix(n, field, rng, bound)
        if is_nonsingular(m):
            return m
    return _elementary_product(n, field, rng, bound)


def random_symmetric_nonsingular(n, field, seed, bound=9):
    """Seeded random symmetric nonsingular matrix built as b + transpose(b) plus a diagonal perturbation."""
    _check_dim(n)
    rng = _as_rng(seed)
    while True:
        b = random_matrix(n, field, rng, bound)
        s = b + transpose(b)
        if field.characteristic == 2:
            # b + b^T has zero diagonal in characteristic 2
            s = s + Matrix.diag(field, [_random_raw(rng, field, bound) for _ in range(n)])
        if is_nonsingular(s):
            return s
        s = s + Matrix.diag(field, [_random_raw(rng, field, bound) for _ in range(n)])
        if is_nonsingular(s):
            return s
