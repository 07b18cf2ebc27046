"""Exact scalar arithmetic over the rationals and over prime fields GF(p).

A :class:`FieldDescriptor` says which field is in play and knows how to do
arithmetic on *raw* elements: :class:`fractions.Fraction` for the rationals,
plain ``int`` residues in ``[0, p)`` for GF(p).  Matrices store raw elements
for speed; :class:`Scalar` wraps a raw element together with its descriptor
for the public API.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZero, FieldMismatch, ParseError

PRIME_LIMIT = 2**31

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")
_INTEGER_RE = re.compile(r"^\s*([+-]?\d+)\s*$")


def is_prime(n):
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldKind(enum.Enum):
    RATIONAL = "rational"
    PRIME = "prime"


@dataclass(frozen=True)
class FieldDescriptor:
    """Either the rationals (``p is None``) or the prime field GF(p)."""

    kind: FieldKind
    p: int | None = None

    def __post_init__(self):
        if self.kind is FieldKind.RATIONAL:
            if self.p is not None:
                raise ValueError("the rational field takes no modulus")
        elif self.kind is FieldKind.PRIME:
            if not isinstance(self.p, int) or isinstance(self.p, bool):
                raise ValueError(f"prime field needs an integer modulus, got {self.p!r}")
            if not 2 <= self.p < PRIME_LIMIT:
                raise ValueError(f"modulus must satisfy 2 <= p < 2**31, got {self.p}")
            if not is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls):
        return cls(FieldKind.RATIONAL)

    @classmethod
    def prime(cls, p):
        return cls(FieldKind.PRIME, p)

    @classmethod
    def from_name(cls, name):
        """Parse the command-line spelling: ``rational``/``Q`` or ``gf5``/``5``."""
        text = name.strip().lower()
        if text in ("rational", "q", "qq"):
            return cls.rational()
        m = re.fullmatch(r"(?:gf|prime|p)?[:(]?\s*(\d+)\s*\)?", text)
        if m is None:
            raise ValueError(f"unrecognised field {name!r}")
        return cls.prime(int(m.group(1)))

    @property
    def is_rational(self):
        return self.kind is FieldKind.RATIONAL

    @property
    def is_prime(self):
        return self.kind is FieldKind.PRIME

    @property
    def characteristic(self):
        return 0 if self.is_rational else self.p

    @property
    def name(self):
        return "rational" if self.is_rational else f"gf{self.p}"

    def __str__(self):
        return "Q" if self.is_rational else f"GF({self.p})"

    def to_json(self):
        if self.is_rational:
            return {"kind": "rational"}
        return {"kind": "prime", "p": self.p}

    @classmethod
    def from_json(cls, doc):
        if not isinstance(doc, dict) or "kind" not in doc:
            raise ParseError(f"bad field document: {doc!r}")
        kind = doc["kind"]
        if kind == "rational":
            if set(doc) != {"kind"}:
                raise ParseError("rational field document takes no other keys")
            return cls.rational()
        if kind == "prime":
            p = doc.get("p")
            if not isinstance(p, int) or isinstance(p, bool):
                raise ParseError(f"prime field document needs integer 'p', got {p!r}")
            try:
                return cls.prime(p)
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        raise ParseError(f"unknown field kind {kind!r}")

    # -- raw element arithmetic --------------------------------------------

    @property
    def zero(self):
        return Fraction(0) if self.is_rational else 0

    @property
    def one(self):
        return Fraction(1) if self.is_rational else 1

    def coerce(self, value):
        """Map an int, Fraction or Scalar onto a raw element of this field."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"{value.field} element used in {self}")
            return value.value
        if isinstance(value, bool):
            value = int(value)
        if self.is_rational:
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise TypeError(f"cannot coerce {value!r} to a rational")
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            return self.div(value.numerator % self.p, value.denominator % self.p)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def add(self, x, y):
        return x + y if self.is_rational else (x + y) % self.p

    def sub(self, x, y):
        return x - y if self.is_rational else (x - y) % self.p

    def mul(self, x, y):
        return x * y if self.is_rational else x * y % self.p

    def neg(self, x):
        return -x if self.is_rational else -x % self.p

    def inv(self, x):
        if not x:
            raise DivisionByZero(f"zero has no inverse in {self}")
        if self.is_rational:
            return 1 / x
        return pow(x, -1, self.p)

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def from_int(self, k):
        return Fraction(k) if self.is_rational else k % self.p

    def format(self, x):
        if self.is_rational:
            if x.denominator == 1:
                return str(x.numerator)
            return f"{x.numerator}/{x.denominator}"
        return str(x)

    def parse(self, text):
        """Inverse of :meth:`format`; integers are also accepted directly."""
        if isinstance(text, int) and not isinstance(text, bool):
            return self.from_int(text)
        if not isinstance(text, str):
            raise ParseError(f"scalar must be a string or integer, got {text!r}")
        if self.is_rational:
            m = _RATIONAL_RE.match(text)
            if m is None:
                raise ParseError(f"not a rational number: {text!r}")
            den = int(m.group(2)) if m.group(2) is not None else 1
            if den == 0:
                raise ParseError(f"zero denominator in {text!r}")
            return Fraction(int(m.group(1)), den)
        m = _INTEGER_RE.match(text)
        if m is None:
            raise ParseError(f"not a residue: {text!r}")
        return int(m.group(1)) % self.p

    def element(self, value):
        """Wrap ``value`` (int, Fraction, Scalar or text) as a :class:`Scalar`."""
        if isinstance(value, str):
            return Scalar(self, self.parse(value))
        return Scalar(self, self.coerce(value))

    def elements(self):
        """All elements of a prime field in residue order."""
        if self.is_rational:
            raise ValueError("the rationals cannot be enumerated")
        return [Scalar(self, r) for r in range(self.p)]


QQ = FieldDescriptor.rational()


def GF(p):
    return FieldDescriptor.prime(p)


class Scalar:
    """One exact field element; immutable and hashable."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine {self.field} and {other.field} elements")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(other)
        return NotImplemented

    def __add__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return Scalar(self.field, self.field.add(self.value, y))

    __radd__ = __add__

    def __sub__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return Scalar(self.field, self.field.sub(self.value, y))

    def __rsub__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return Scalar(self.field, self.field.sub(y, self.value))

    def __mul__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return Scalar(self.field, self.field.mul(self.value, y))

    __rmul__ = __mul__

    def __truediv__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return Scalar(self.field, self.field.div(self.value, y))

    def __rtruediv__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return Scalar(self.field, self.field.div(y, self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        result = Scalar(self.field, self.field.one)
        for _ in range(abs(k)):
            result = result * base
        return result

    def inverse(self):
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self):
        return not self.value

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            try:
                return self.value == self.field.coerce(other)
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"Scalar({self.field}, {self})"


class ArithOp(enum.Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"
    NEG = "neg"
    INV = "inv"


def scalar_arith(op, x, y=None):
    """Apply one field operation; the unary ops ignore ``y``."""
    op = ArithOp(op)
    if op is ArithOp.NEG:
        return -x
    if op is ArithOp.INV:
        return x.inverse()
    if y is None:
        raise TypeError(f"{op.value} needs two operands")
    if x.field != y.field:
        raise FieldMismatch(f"cannot combine {x.field} and {y.field} elements")
    if op is ArithOp.ADD:
        return x + y
    if op is ArithOp.SUB:
        return x - y
    if op is ArithOp.MUL:
        return x * y
    return x / y


def _tonelli_shanks(n, p):
    # caller guarantees n is a nonzero quadratic residue and p is odd
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    if s == 1:
        return pow(n, (p + 1) // 4, p)
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def sqrt_in_field(d):
    """Every square root of ``d`` in its own field, in ascending raw order.

    Returns an empty list when ``d`` is not a square there.
    """
    field = d.field
    x = d.value
    if not x:
        return [Scalar(field, field.zero)]
    if field.is_rational:
        if x < 0:
            return []
        rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
        if rn * rn != x.numerator or rd * rd != x.denominator:
            return []
        root = Fraction(rn, rd)
        return [Scalar(field, -root), Scalar(field, root)]
    p = field.p
    if p == 2:
        return [Scalar(field, x)]
    if pow(x, (p - 1) // 2, p) != 1:
        return []
    r = _tonelli_shanks(x, p)
    return [Scalar(field, v) for v in sorted({r, p - r})]
