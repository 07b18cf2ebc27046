"""Three-dimensional zeropotent algebras given by structure-constant matrices.

Row k of the structure matrix A holds the coordinates of the k-th basis
product in (e2 e3, e3 e1, e1 e2), so that
``(e2e3, e3e1, e1e2)^T = A (e1, e2, e3)^T``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch, FieldMismatch, UnsupportedField
from .field import Scalar
from .invariant import scaled_congruence_transform, sigma
from .matrix import Matrix
from .orbit import DEFAULT_MAX_P, MAX_P, congruence_solutions, enumerate_gl, first_in_order


@dataclass(frozen=True)
class Vector3:
    field: object
    coords: tuple

    @classmethod
    def of(cls, field, values):
        values = tuple(values)
        if len(values) != 3:
            raise DimensionMismatch("Vector3 needs exactly three coordinates")
        return cls(field, tuple(field.element(v).value for v in values))

    @classmethod
    def basis(cls, field, i):
        """e_i for i in 1..3."""
        return cls(field, tuple(field.one if k == i - 1 else field.zero for k in range(3)))

    @classmethod
    def zero(cls, field):
        return cls(field, (field.zero,) * 3)

    def __getitem__(self, i):
        return Scalar(self.field, self.coords[i])

    def __add__(self, other):
        _check_same(self.field, other.field)
        add = self.field.add
        return Vector3(self.field, tuple(add(x, y) for x, y in zip(self.coords, other.coords)))

    def scaled(self, c):
        c = self.field.coerce(c)
        return Vector3(self.field, tuple(self.field.mul(c, x) for x in self.coords))

    def __neg__(self):
        return self.scaled(-1)

    def __str__(self):
        return "(" + ", ".join(self.field.format(x) for x in self.coords) + ")"


def _check_same(f, g):
    if f != g:
        raise FieldMismatch(f"cannot combine {f} and {g} elements")


@dataclass(frozen=True)
class ZeropotentAlgebra3:
    structure: Matrix

    def __post_init__(self):
        if self.structure.n != 3:
            raise DimensionMismatch("a zeropotent algebra here is given by a 3x3 matrix")

    @property
    def field(self):
        return self.structure.field

    def product(self, x, y):
        return product(self, x, y)


def product(alg, x, y):
    """x*y in the algebra: the cross-pattern vector of (x, y) times the structure matrix."""
    f = alg.field
    _check_same(f, x.field)
    _check_same(f, y.field)
    (x1, x2, x3), (y1, y2, y3) = x.coords, y.coords
    sub, mul = f.sub, f.mul
    w = (
        sub(mul(x2, y3), mul(x3, y2)),
        sub(mul(x3, y1), mul(x1, y3)),
        sub(mul(x1, y2), mul(x2, y1)),
    )
    rows = alg.structure.rows
    out = []
    for j in range(3):
        acc = f.zero
        for i in range(3):
            acc = f.add(acc, mul(w[i], rows[i][j]))
        out.append(acc)
    return Vector3(f, tuple(out))


def sigma_of_algebra(alg):
    """sigma of the structure matrix; rank < 3 algebras raise SingularMatrix."""
    return sigma(alg.structure)


def _check_iso_field(a, b, max_p):
    f = a.field
    _check_same(f, b.field)
    if not f.is_prime:
        raise UnsupportedField("brute-force isomorphism needs a prime field")
    if f.p > max_p:
        raise UnsupportedField(f"p={f.p} exceeds the isomorphism search cap p <= {max_p}")
    return f


def is_isomorphic_bruteforce(a, b, allow_large=False, exhaustive=False):
    """Decide a ~ b over GF(p) by searching X in GL(3, p) with B = |X|^-1 X^T A X.

    Returns ``(True, X)`` with X the first witness in lexicographic order of
    its entries, or ``(False, None)``.  The default search prunes column by
    column; ``exhaustive=True`` walks the whole group instead and must give
    the same answer.
    """
    f = _check_iso_field(a, b, MAX_P if allow_large else DEFAULT_MAX_P)
    A, B = a.structure, b.structure
    if exhaustive:
        for x in enumerate_gl(3, f.p):
            if scaled_congruence_transform(A, x) == B:
                return True, x
        return False, None
    # X^T A X = d B with d = |X|, one search per candidate determinant
    candidates = []
    for d in range(1, f.p):
        target = B * d
        candidates.extend(
            x for x in congruence_solutions(A, target, f.p) if _det3(x.rows, f.p) == d
        )
    x = first_in_order(candidates)
    return (x is not None), x


def _det3(r, p):
    return (
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
        - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
        + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    ) % p
