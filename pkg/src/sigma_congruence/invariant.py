"""The congruence invariant sigma(A) = Tr(A^T A^-1) and its 3x3 relatives.

Three independent routes compute sigma:

* ``TRACE``      -- Tr(A^T . A^-1) with A^-1 from Gauss-Jordan elimination;
* ``COFACTOR``   -- |A|^-1 * sum_ij a_ij * cof_ji(A);
* ``ADJUGATE``   -- |A|^-1 * Tr(A . adj(A^T)).

For 3x3 matrices kappa(A) = 3 - sigma(A) also has an explicit homogeneous
cubic-over-determinant form, implemented term by term in :func:`kappa_explicit`.
"""

from __future__ import annotations

import enum

from .errors import DimensionMismatch, FieldMismatch, SingularMatrix, SingularTransform
from .field import Scalar
from .matrix import (
    Matrix,
    _cofactor_raw,
    _det_raw,
    _same_shape,
    adjugate,
    inverse,
    mat_mul,
    scale,
    trace,
    transpose,
)

# When true, the default sigma() cross-checks the trace route against the
# cofactor route on every call.
CHECK_MODES = __debug__


class SigmaMode(enum.Enum):
    TRACE = "trace"
    COFACTOR = "cofactor"
    ADJUGATE = "adjugate"


class ModeDisagreement(AssertionError):
    pass


def _require_nonsingular(a):
    det = _det_raw(a.field, a.rows)
    if not det:
        raise SingularMatrix("sigma is undefined on a singular matrix")
    return det


def _sigma_trace(a):
    return trace(mat_mul(transpose(a), inverse(a)))


def _sigma_cofactor(a, det):
    f, rows, n = a.field, a.rows, a.n
    total = f.zero
    for i in range(n):
        for j in range(n):
            if rows[i][j]:
                total = f.add(total, f.mul(rows[i][j], _cofactor_raw(f, rows, j, i)))
    return Scalar(f, f.div(total, det))


def _sigma_adjugate(a, det):
    t = trace(mat_mul(a, adjugate(transpose(a))))
    return Scalar(a.field, a.field.div(t.value, det))


def sigma(a, mode=None):
    """sigma(a) = Tr(a^T a^-1) for nonsingular ``a``.

    With ``mode=None`` the trace route is used and, while ``CHECK_MODES`` is
    set, compared against the cofactor route.
    """
    det = _require_nonsingular(a)
    if mode is None:
        value = _sigma_trace(a)
        if CHECK_MODES:
            other = _sigma_cofactor(a, det)
            if other != value:
                raise ModeDisagreement(f"trace form {value} != cofactor form {other} for {a!r}")
        return value
    mode = SigmaMode(mode)
    if mode is SigmaMode.TRACE:
        return _sigma_trace(a)
    if mode is SigmaMode.COFACTOR:
        return _sigma_cofactor(a, det)
    return _sigma_adjugate(a, det)


def sigma_all_modes(a):
    """Dict mapping each :class:`SigmaMode` to its value on ``a``."""
    det = _require_nonsingular(a)
    return {
        SigmaMode.TRACE: _sigma_trace(a),
        SigmaMode.COFACTOR: _sigma_cofactor(a, det),
        SigmaMode.ADJUGATE: _sigma_adjugate(a, det),
    }


def congruence_transform(a, x):
    """x^T a x; raises SingularTransform when x is singular."""
    _same_shape(a, x)
    if not _det_raw(x.field, x.rows):
        raise SingularTransform("congruence needs a nonsingular transforming matrix")
    return mat_mul(mat_mul(transpose(x), a), x)


def scaled_congruence_transform(a, x):
    """|x|^-1 x^T a x, the isomorphism action on zeropotent structure matrices."""
    _same_shape(a, x)
    det = _det_raw(x.field, x.rows)
    if not det:
        raise SingularTransform("congruence needs a nonsingular transforming matrix")
    return scale(mat_mul(mat_mul(transpose(x), a), x), x.field.inv(det))


def _require_3x3(a):
    if a.n != 3:
        raise DimensionMismatch(f"kappa is defined for 3x3 matrices, got {a.n}x{a.n}")


def kappa(a):
    """kappa(a) = 3 - sigma(a) for a nonsingular 3x3 matrix."""
    _require_3x3(a)
    return 3 - sigma(a)


def kappa_explicit(a):
    """kappa via the explicit cubic polynomial in the entries divided by |a|."""
    _require_3x3(a)
    det = _require_nonsingular(a)
    # residues are plain ints, so the polynomial is evaluated over Z and reduced once
    (a11, a12, a13), (a21, a22, a23), (a31, a32, a33) = a.rows
    numerator = (
        a13**2 * a22
        + 3 * a12 * a23 * a31
        - a21 * a23 * a31
        + a22 * a31**2
        + a11 * (a23 - a32) ** 2
        - a12 * a31 * a32
        - a21 * a31 * a32
        - a13 * (a21 * a23 + 2 * a22 * a31 - 3 * a21 * a32 + a12 * (a23 + a32))
        + a12**2 * a33
        - 2 * a12 * a21 * a33
        + a21**2 * a33
    )
    f = a.field
    return Scalar(f, f.div(f.coerce(numerator), det))


def d_invariant(a, b, c):
    """D(a, b, c) = a^2 + b^2 + c^2 - abc."""
    if not (a.field == b.field == c.field):
        raise FieldMismatch("D needs three elements of one field")
    return a * a + b * b + c * c - a * b * c


def canonical_form(a, b, c):
    """The upper unitriangular matrix [[1, a, b], [0, 1, c], [0, 0, 1]]."""
    if not (a.field == b.field == c.field):
        raise FieldMismatch("canonical form needs three elements of one field")
    f = a.field
    one, zero = f.one, f.zero
    return Matrix._raw(f, [[one, a.value, b.value], [zero, one, c.value], [zero, zero, one]])
