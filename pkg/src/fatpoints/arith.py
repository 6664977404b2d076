"""Exact coefficient arithmetic: rationals and the Eisenstein field Q(w).

``w`` is a primitive cube root of unity, so ``w**2 = -1 - w``.  Elements of
Q(w) are stored as ``a + b*w`` with ``a, b`` rationals.  Rationals are
``gmpy2.mpq`` values, which are arbitrary precision and always reduced.
"""

from __future__ import annotations

from gmpy2 import mpq

Rational = mpq
_MPQ = type(mpq(0))

__all__ = [
    "Rational",
    "CycloElement",
    "W",
    "Field",
    "QQ",
    "QQW",
    "cyc_add",
    "cyc_mul",
    "cyc_inv",
    "to_rational",
]


def to_rational(x) -> mpq:
    if isinstance(x, str):
        num, _, den = x.partition("/")
        return mpq(int(num), int(den)) if den else mpq(int(num))
    return mpq(x)


class CycloElement:
    """An element ``a + b*w`` of Q(w), immutable."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", a if type(a) is _MPQ else mpq(a))
        object.__setattr__(self, "b", b if type(b) is _MPQ else mpq(b))

    def __setattr__(self, name, value):
        raise AttributeError("CycloElement is immutable")

    @classmethod
    def _raw(cls, a, b) -> CycloElement:
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        return obj

    # -- conversions ---------------------------------------------------
    @staticmethod
    def coerce(x) -> CycloElement:
        if isinstance(x, CycloElement):
            return x
        return CycloElement._raw(mpq(x), _ZERO)

    def is_rational(self) -> bool:
        return not self.b

    def conjugate(self) -> CycloElement:
        # complex conjugation sends w to w**2 = -1 - w
        return CycloElement._raw(self.a - self.b, -self.b)

    def norm(self) -> mpq:
        a, b = self.a, self.b
        return a * a - a * b + b * b

    def to_complex(self) -> complex:
        # w = -1/2 + i*sqrt(3)/2
        return complex(float(self.a) - float(self.b) / 2, float(self.b) * 3 ** 0.5 / 2)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, CycloElement):
            return CycloElement._raw(self.a + other.a, self.b + other.b)
        if isinstance(other, (int, _MPQ)):
            return CycloElement._raw(self.a + other, self.b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return CycloElement._raw(-self.a, -self.b)

    def __sub__(self, other):
        if isinstance(other, CycloElement):
            return CycloElement._raw(self.a - other.a, self.b - other.b)
        if isinstance(other, (int, _MPQ)):
            return CycloElement._raw(self.a - other, self.b)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CycloElement):
            a1, b1, a2, b2 = self.a, self.b, other.a, other.b
            bb = b1 * b2
            return CycloElement._raw(a1 * a2 - bb, a1 * b2 + a2 * b1 - bb)
        if isinstance(other, (int, _MPQ)):
            return CycloElement._raw(self.a * other, self.b * other)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> CycloElement:
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero in Q(w)")
        return CycloElement._raw((self.a - self.b) / n, -self.b / n)

    def __truediv__(self, other):
        if isinstance(other, (int, _MPQ)):
            if not other:
                raise ZeroDivisionError("division by zero in Q(w)")
            return CycloElement._raw(self.a / other, self.b / other)
        if isinstance(other, CycloElement):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return CycloElement.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE_W, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparisons ---------------------------------------------------
    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, CycloElement):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, _MPQ)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b))

    def __repr__(self):
        return f"CycloElement({self.a}, {self.b})"

    def __str__(self):
        return format_coefficient(self)


_ZERO = mpq(0)
ONE_W = CycloElement._raw(mpq(1), _ZERO)
W = CycloElement._raw(_ZERO, mpq(1))


def cyc_add(x: CycloElement, y: CycloElement) -> CycloElement:
    return x + y


def cyc_mul(x: CycloElement, y: CycloElement) -> CycloElement:
    return x * y


def cyc_inv(x: CycloElement) -> CycloElement:
    return x.inverse()


def _format_rational(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_coefficient(c) -> str:
    """Render a coefficient in the text grammar (``-1-w``, ``2/3*w``, ``5``)."""
    if not isinstance(c, CycloElement):
        return _format_rational(mpq(c))
    a, b = c.a, c.b
    if not b:
        return _format_rational(a)
    if b == 1:
        wpart = "w"
    elif b == -1:
        wpart = "-w"
    else:
        wpart = f"{_format_rational(b)}*w"
    if not a:
        return wpart
    sign = "" if wpart.startswith("-") else "+"
    return f"{_format_rational(a)}{sign}{wpart}"


class Field:
    """Coefficient field descriptor.  Two instances exist: ``QQ`` and ``QQW``."""

    def __init__(self, tag: str):
        self.tag = tag
        if tag == "RATIONAL":
            self.zero, self.one = mpq(0), mpq(1)
        elif tag == "CYCLOTOMIC3":
            self.zero, self.one = CycloElement(), ONE_W
        else:
            raise ValueError(f"unknown field tag {tag!r}")

    @property
    def cyclotomic(self) -> bool:
        return self.tag == "CYCLOTOMIC3"

    def __call__(self, x):
        """Coerce ``x`` into this field."""
        if self.cyclotomic:
            return CycloElement.coerce(x)
        if isinstance(x, CycloElement):
            if x.b:
                raise ValueError(f"{x} is not rational")
            return x.a
        return mpq(x)

    def generator(self) -> CycloElement:
        if not self.cyclotomic:
            raise ValueError("w is not an element of Q")
        return W

    def inv(self, x):
        if isinstance(x, CycloElement):
            return x.inverse()
        if not x:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / x

    def format(self, x) -> str:
        return format_coefficient(x)

    def __eq__(self, other):
        return isinstance(other, Field) and other.tag == self.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return "QQ" if self.tag == "RATIONAL" else "QQ(w)"


QQ = Field("RATIONAL")
QQW = Field("CYCLOTOMIC3")
