"""Sparse multivariate polynomials over QQ or QQ(w).

Monomials are plain tuples of exponents, one per ring variable.  A
:class:`Polynomial` is an immutable mapping from monomials to nonzero
coefficients; sorted views are computed per term order on demand.
"""

from __future__ import annotations

import itertools
import operator
import re
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, Sequence

from .arith import QQ, QQW, Field, format_coefficient

Monomial = tuple

EXPONENT_CAP = 2**16


class RingMismatchError(ValueError):
    pass


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class RingDescriptor:
    variables: tuple[str, ...]
    field: Field = QQW

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise ValueError("a ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        for name in self.variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
                raise ValueError(f"bad variable name {name!r}")
            if name == "w" and self.field.cyclotomic:
                raise ValueError("'w' is reserved for the cube root of unity")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c) -> Polynomial:
        return Polynomial(self, {(0,) * self.nvars: self.field(c)})

    def monomial(self, exps: Sequence[int], coeff=1) -> Polynomial:
        return Polynomial(self, {tuple(exps): self.field(coeff)})

    def gen(self, name: str) -> Polynomial:
        i = self.variables.index(name)
        return self.monomial(tuple(int(j == i) for j in range(self.nvars)))

    def gens(self) -> list[Polynomial]:
        return [self.gen(v) for v in self.variables]

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(text, self)

    def extend(self, names: Sequence[str]) -> RingDescriptor:
        """Ring with ``names`` prepended to the variable list."""
        return RingDescriptor(tuple(names) + self.variables, self.field)

    def __repr__(self):
        return f"RingDescriptor({','.join(self.variables)}; {self.field!r})"


# -- term orders ----------------------------------------------------------

def _grevlex_key(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


@dataclass(frozen=True)
class TermOrder:
    """A monomial order: ``LEX``, ``GREVLEX``, or ``ELIM`` of the first ``k`` variables.

    ``ELIM(k)`` is the block order that compares the first ``k`` exponents by
    grevlex and breaks ties with grevlex on the remaining ones.
    """

    kind: str
    k: int = 0
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.kind not in ("LEX", "GREVLEX", "ELIM"):
            raise ValueError(f"unknown term order {self.kind!r}")
        if self.kind == "ELIM" and self.k < 1:
            raise ValueError("ELIM needs k >= 1")
        if self.kind != "ELIM" and self.k:
            raise ValueError("only ELIM takes a block size")

    def key(self, m: Monomial) -> tuple:
        """Sort key: ``u < v`` in this order iff ``key(u) < key(v)``."""
        try:
            return self._cache[m]
        except KeyError:
            pass
        if self.kind == "GREVLEX":
            k = _grevlex_key(m)
        elif self.kind == "LEX":
            k = m
        else:
            k = _grevlex_key(m[: self.k]) + _grevlex_key(m[self.k:])
        self._cache[m] = k
        return k

    def __str__(self):
        return f"ELIM({self.k})" if self.kind == "ELIM" else self.kind.lower()


LEX = TermOrder("LEX")
GREVLEX = TermOrder("GREVLEX")


def elim(k: int) -> TermOrder:
    return TermOrder("ELIM", k)


def order_from_name(name: str) -> TermOrder:
    name = name.strip().lower()
    if name in ("grevlex", "dp"):
        return GREVLEX
    if name in ("lex", "lp"):
        return LEX
    raise ValueError(f"unknown order {name!r} (expected lex or grevlex)")


def order_cmp(order: TermOrder, u: Monomial, v: Monomial) -> int:
    """Return -1, 0 or 1 as ``u`` is less than, equal to, or greater than ``v``."""
    if len(u) != len(v):
        raise RingMismatchError("monomials from different rings")
    ku, kv = order.key(tuple(u)), order.key(tuple(v))
    return (ku > kv) - (ku < kv)


# -- monomial helpers -------------------------------------------------------

def mono_mul(u: Monomial, v: Monomial) -> Monomial:
    return tuple(map(operator.add, u, v))


def mono_div(u: Monomial, v: Monomial) -> Monomial:
    """``u / v``; the caller guarantees divisibility."""
    return tuple(map(operator.sub, u, v))


def mono_divides(u: Monomial, v: Monomial) -> bool:
    return all(map(operator.le, u, v))


def mono_lcm(u: Monomial, v: Monomial) -> Monomial:
    return tuple(map(max, u, v))


def mono_coprime(u: Monomial, v: Monomial) -> bool:
    return not any(a and b for a, b in zip(u, v))


def monomials_of_degree(n: int, d: int) -> Iterator[Monomial]:
    """All exponent vectors of length ``n`` and total degree ``d`` (lex descending)."""
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            yield (first,) + rest


def count_monomials(n: int, d: int) -> int:
    return comb(d + n - 1, n - 1) if d >= 0 else 0


# -- polynomials -------------------------------------------------------------

class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps monomial -> nonzero coefficient."""

    __slots__ = ("ring", "_terms", "_sorted", "_hash")

    def __init__(self, ring: RingDescriptor, terms: dict, *, _trusted: bool = False):
        self.ring = ring
        if not _trusted:
            n = ring.nvars
            coerce = ring.field
            clean = {}
            for m, c in terms.items():
                m = tuple(int(e) for e in m)
                if len(m) != n or any(e < 0 for e in m):
                    raise ValueError(f"bad exponent vector {m} for {ring!r}")
                if any(e >= EXPONENT_CAP for e in m):
                    raise OverflowError(f"exponent exceeds cap {EXPONENT_CAP}")
                c = coerce(c)
                if c:
                    clean[m] = c
            terms = clean
        self._terms = terms
        self._sorted = {}
        self._hash = None

    # -- basic accessors ---------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def coefficient(self, m: Monomial):
        return self._terms.get(tuple(m), self.ring.field.zero)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def homogeneous_components(self) -> dict[int, Polynomial]:
        parts: dict[int, dict] = {}
        for m, c in self._terms.items():
            parts.setdefault(sum(m), {})[m] = c
        return {d: Polynomial(self.ring, t, _trusted=True) for d, t in parts.items()}

    def variables_used(self) -> set[int]:
        return {i for m in self._terms for i, e in enumerate(m) if e}

    def sorted_terms(self, order: TermOrder = GREVLEX) -> list[tuple[Monomial, object]]:
        """Terms in descending order; cached per order."""
        cached = self._sorted.get(order)
        if cached is None:
            key = order.key
            cached = sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)
            self._sorted[order] = cached
        return cached

    def leading_term(self, order: TermOrder = GREVLEX) -> tuple[Monomial, object]:
        if not self._terms:
            raise ValueError("the zero polynomial has no leading term")
        key = order.key
        m = max(self._terms, key=key)
        return m, self._terms[m]

    def leading_monomial(self, order: TermOrder = GREVLEX) -> Monomial:
        return self.leading_term(order)[0]

    def monic(self, order: TermOrder = GREVLEX) -> Polynomial:
        if not self._terms:
            return self
        lc = self.leading_term(order)[1]
        if lc == 1:
            return self
        return self.scale(self.ring.field.inv(lc))

    # -- arithmetic --------------------------------------------------------
    def _check(self, other: Polynomial):
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")

    def _lift(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        try:
            other = self._lift(other)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, RingMismatchError):
                raise
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, RingMismatchError):
                raise
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> Polynomial:
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: c * v for m, v in self._terms.items()}, _trusted=True)

    def mul_term(self, mono: Monomial, c=1) -> Polynomial:
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        if self._terms and max(map(max, self._terms)) + max(mono, default=0) >= EXPONENT_CAP:
            raise OverflowError(f"exponent exceeds cap {EXPONENT_CAP}")
        add = operator.add
        return Polynomial(
            self.ring,
            {tuple(map(add, m, mono)): c * v for m, v in self._terms.items()},
            _trusted=True,
        )

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                return self.scale(other)
            except (TypeError, ValueError):
                return NotImplemented
        self._check(other)
        if not self._terms or not other._terms:
            return self.ring.zero()
        if max(map(max, self._terms)) + max(map(max, other._terms)) >= EXPONENT_CAP:
            raise OverflowError(f"exponent exceeds cap {EXPONENT_CAP}")
        add = operator.add
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(map(add, m1, m2))
                s = out.get(m)
                out[m] = c1 * c2 if s is None else s + c1 * c2
        return Polynomial(self.ring, {m: c for m, c in out.items() if c}, _trusted=True)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            if not other.is_constant() or not other:
                raise ValueError("can only divide by a nonzero constant")
            other = other.coefficient((0,) * self.ring.nvars)
        return self.scale(self.ring.field.inv(self.ring.field(other)))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        try:
            return self == self.ring.constant(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and evaluation -------------------------------------------
    def derivative(self, var: int, times: int = 1) -> Polynomial:
        out = {}
        for m, c in self._terms.items():
            e = m[var]
            if e < times:
                continue
            factor = 1
            for j in range(times):
                factor *= e - j
            nm = m[:var] + (e - times,) + m[var + 1:]
            out[nm] = c * factor
        return Polynomial(self.ring, out, _trusted=True)

    def evaluate(self, point: Sequence):
        """Exact value at ``point`` (one field element per variable)."""
        if len(point) != self.ring.nvars:
            raise ValueError(f"point has {len(point)} coordinates, ring has {self.ring.nvars}")
        field_ = self.ring.field
        pt = [field_(v) for v in point]
        powers: list[dict[int, object]] = [{0: field_.one} for _ in pt]
        total = field_.zero
        for m, c in self._terms.items():
            val = c
            for i, e in enumerate(m):
                if e:
                    cache = powers[i]
                    p = cache.get(e)
                    if p is None:
                        p = pt[i] ** e
                        cache[e] = p
                    val = val * p
            total = total + val
        return total

    def substitute(self, values: dict[int, object]) -> Polynomial:
        """Set variable ``i`` to the constant ``values[i]``."""
        out = self.ring.zero()
        field_ = self.ring.field
        for m, c in self._terms.items():
            coeff = c
            rest = list(m)
            for i, v in values.items():
                if m[i]:
                    coeff = coeff * field_(v) ** m[i]
                    rest[i] = 0
            out = out + Polynomial(self.ring, {tuple(rest): coeff})
        return out

    def change_ring(self, ring: RingDescriptor, positions: Sequence[int] | None = None) -> Polynomial:
        """Move into ``ring``; variable ``i`` of self goes to slot ``positions[i]``."""
        if positions is None:
            positions = [ring.variables.index(v) for v in self.ring.variables]
        n = ring.nvars
        out = {}
        for m, c in self._terms.items():
            nm = [0] * n
            for i, e in enumerate(m):
                if e:
                    nm[positions[i]] = e
            out[tuple(nm)] = c
        return Polynomial(ring, out)

    # -- printing ----------------------------------------------------------
    def format(self, order: TermOrder = GREVLEX) -> str:
        if not self._terms:
            return "0"
        names = self.ring.variables
        pieces = []
        for m, c in self.sorted_terms(order):
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e
            )
            coeff = format_coefficient(c)
            if not mono:
                body = coeff
            elif coeff == "1":
                body = mono
            elif coeff == "-1":
                body = "-" + mono
            elif "+" in coeff or "-" in coeff[1:]:
                body = f"({coeff})*{mono}"
            else:
                body = f"{coeff}*{mono}"
            pieces.append(body)
        text = pieces[0]
        for p in pieces[1:]:
            if p.startswith("-"):
                text += " - " + p[1:]
            else:
                text += " + " + p
        return text

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Polynomial({self.format()!r})"


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    f._check(g)
    return f + g


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    f._check(g)
    return f * g


def poly_eval(f: Polynomial, point: Sequence):
    return f.evaluate(point)


def leading_term(f: Polynomial, order: TermOrder) -> tuple[Monomial, object]:
    return f.leading_term(order)


def is_homogeneous(f: Polynomial) -> bool:
    return f.is_homogeneous()


def product(polys: Iterable[Polynomial], ring: RingDescriptor | None = None) -> Polynomial:
    polys = list(polys)
    if not polys:
        if ring is None:
            raise ValueError("empty product needs a ring")
        return ring.one()
    out = polys[0]
    for p in polys[1:]:
        out = out * p
    return out


def proportionality_factor(f: Polynomial, g: Polynomial):
    """Return ``c`` with ``f == c*g``, or None if no nonzero such scalar exists."""
    f._check(g)
    if not f or not g or set(f.monomials()) != set(g.monomials()):
        return None
    m = next(iter(g.monomials()))
    c = f.coefficient(m) / g.coefficient(m)
    return c if f == g.scale(c) else None


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        num, name, op = match.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("name", name))
        elif op in "+-*/^()":
            tokens.append(("op", op))
        else:
            raise ParseError(f"unexpected character {op!r} at offset {match.start(3)}")
        pos = match.end()
    tokens.append(("end", ""))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: RingDescriptor):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ring = ring
        self.text = text

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            raise ParseError(f"expected {value or kind}, got {tok[1]!r} in {self.text!r}")
        return tok

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            raise ParseError("empty expression")
        result = self.expr()
        if self.peek()[0] != "end":
            raise ParseError(f"unexpected {self.peek()[1]!r} in {self.text!r}")
        return result

    def expr(self):
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if not rhs or not rhs.is_constant():
                    raise ParseError(f"division by a non-constant or zero in {self.text!r}")
                value = value / rhs
        return value

    def unary(self):
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            return -self.unary()
        if tok == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            tok = self.expect("num")
            base = base ** int(tok[1])
        return base

    def atom(self):
        kind, value = self.take()
        ring = self.ring
        if kind == "num":
            return ring.constant(int(value))
        if kind == "name":
            if value in ring.variables:
                return ring.gen(value)
            if value == "w":
                return ring.constant(ring.field.generator())
            raise ParseError(f"unknown symbol {value!r} (ring variables {ring.variables})")
        if (kind, value) == ("op", "("):
            inner = self.expr()
            self.expect("op", ")")
            return inner
        raise ParseError(f"unexpected {value or 'end of input'!r} in {self.text!r}")


def parse_polynomial(text: str, ring: RingDescriptor) -> Polynomial:
    """Parse ``text`` in the ``+ - * / ^`` grammar; implicit products are rejected."""
    try:
        return _Parser(text, ring).parse()
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from exc


def parse_coefficient(text: str, field_: Field = QQW):
    """Parse a constant such as ``-1-w`` or ``2/3*w`` into ``field_``."""
    ring = RingDescriptor(("_c",), field_)
    p = parse_polynomial(text, ring)
    if not p.is_constant():
        raise ParseError(f"{text!r} is not a constant")
    return p.coefficient((0,))


def is_cyclotomic_text(text: str) -> bool:
    return re.search(r"(?<![A-Za-z_0-9])w(?![A-Za-z_0-9])", text) is not None


XYZ_Q = RingDescriptor(("x", "y", "z"), QQ)
XYZ_W = RingDescriptor(("x", "y", "z"), QQW)


def all_monomials_upto(n: int, d: int) -> Iterator[Monomial]:
    return itertools.chain.from_iterable(monomials_of_degree(n, k) for k in range(d + 1))
