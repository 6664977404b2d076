"""Ideals: sums, products, powers, intersections, membership and graded pieces."""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, Sequence

from .groebner import GroebnerBasis, buchberger, normal_form
from .linalg import rref
from .poly import (
    GREVLEX,
    Polynomial,
    RingDescriptor,
    RingMismatchError,
    TermOrder,
    count_monomials,
    elim,
    mono_divides,
    monomials_of_degree,
)


class NotHomogeneousError(ValueError):
    pass


class Ideal:
    """Finitely generated ideal with a per-order memo of reduced Groebner bases.

    Generators are deduplicated up to a nonzero scalar; zero generators are
    dropped, so an empty generator list is the zero ideal.
    """

    def __init__(self, ring: RingDescriptor, generators: Iterable[Polynomial] = ()):
        self.ring = ring
        gens: list[Polynomial] = []
        seen = set()
        for g in generators:
            if g.ring != ring:
                raise RingMismatchError(f"generator in {g.ring!r}, ideal in {ring!r}")
            if not g:
                continue
            canon = g.monic(GREVLEX)
            if canon in seen:
                continue
            seen.add(canon)
            gens.append(g)
        self.generators: tuple[Polynomial, ...] = tuple(gens)
        self._gb: dict[TermOrder, GroebnerBasis] = {}
        self._lock = threading.Lock()

    @classmethod
    def unit(cls, ring: RingDescriptor) -> Ideal:
        return cls(ring, [ring.one()])

    def groebner(self, order: TermOrder = GREVLEX, **options) -> GroebnerBasis:
        """Reduced Groebner basis under ``order``, computed at most once per order."""
        gb = self._gb.get(order)
        if gb is not None:
            return gb
        with self._lock:
            gb = self._gb.get(order)
            if gb is None:
                gb = buchberger(self.generators, order, ring=self.ring, **options)
                self._gb[order] = gb
        return gb

    def _seed_groebner(self, gb: GroebnerBasis):
        self._gb.setdefault(gb.order, gb)

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        if any(g.is_constant() for g in self.generators):
            return True
        return self.groebner().is_unit()

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def _check(self, other: Ideal):
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")

    def __contains__(self, f: Polynomial) -> bool:
        return ideal_member(f, self)

    def __add__(self, other: Ideal) -> Ideal:
        return ideal_sum(self, other)

    def __mul__(self, other: Ideal) -> Ideal:
        return ideal_product(self, other)

    def __pow__(self, m: int) -> Ideal:
        return ideal_power(self, m)

    def __and__(self, other: Ideal) -> Ideal:
        return ideal_intersect(self, other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equals(self, other)

    __hash__ = None

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self):
        body = ", ".join(g.format() for g in self.generators[:4])
        more = ", ..." if len(self.generators) > 4 else ""
        return f"Ideal({body}{more})"


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    a._check(b)
    return Ideal(a.ring, a.generators + b.generators)


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    a._check(b)
    return Ideal(a.ring, [f * g for f in a.generators for g in b.generators])


def ideal_power(a: Ideal, m: int) -> Ideal:
    if m < 1:
        raise ValueError("ideal_power needs m >= 1")
    result = a
    for _ in range(m - 1):
        result = ideal_product(result, a)
    return result


def _fresh_name(ring: RingDescriptor) -> str:
    name, i = "t", 0
    while name in ring.variables or name == "w":
        name, i = f"t{i}", i + 1
    return name


def eliminate(a: Ideal, k: int) -> Ideal:
    """Intersection of ``a`` with the subring in all but the first ``k`` variables.

    The result lives in the ring over the remaining variables and carries its
    grevlex basis, read off the block-order basis of ``a``.
    """
    n = a.ring.nvars
    if not 1 <= k < n:
        raise ValueError(f"k must satisfy 1 <= k < {n}")
    sub = RingDescriptor(a.ring.variables[k:], a.ring.field)
    gb = a.groebner(elim(k), strategy="degree")
    positions = [None] * k + list(range(n - k))
    kept = [
        g.change_ring(sub, positions)
        for g in gb.elements
        if not any(any(m[:k]) for m in g.monomials())
    ]
    result = Ideal(sub, kept)
    result._seed_groebner(GroebnerBasis(sub, GREVLEX, tuple(kept)))
    return result


def ideal_intersect(a: Ideal, b: Ideal) -> Ideal:
    """``a`` meet ``b`` via ``(t*a + (1-t)*b)`` with the fresh variable ``t`` eliminated."""
    a._check(b)
    ring = a.ring
    if a.is_zero() or b.is_zero():
        return Ideal(ring)
    if a.is_unit():
        return b
    if b.is_unit():
        return a
    big = ring.extend([_fresh_name(ring)])
    t = big.gen(big.variables[0])
    lift = list(range(1, big.nvars))
    gens = [t * f.change_ring(big, lift) for f in a.generators]
    gens += [(1 - t) * g.change_ring(big, lift) for g in b.generators]
    return eliminate(Ideal(big, gens), 1)


def ideal_intersect_many(ideals: Sequence[Ideal]) -> Ideal:
    ideals = list(ideals)
    if not ideals:
        raise ValueError("intersection of an empty list of ideals")
    result = ideals[0]
    for other in ideals[1:]:
        result = ideal_intersect(result, other)
    return result


def ideal_member(f: Polynomial, a: Ideal, order: TermOrder | None = None) -> bool:
    return not membership_remainder(f, a, order)


def membership_remainder(f: Polynomial, a: Ideal, order: TermOrder | None = None) -> Polynomial:
    """Normal form of ``f`` against a Groebner basis of ``a`` (zero iff member)."""
    if f.ring != a.ring:
        raise RingMismatchError(f"{f.ring!r} vs {a.ring!r}")
    if order is None:
        order = next(iter(a._gb), GREVLEX)
    gb = a.groebner(order)
    return normal_form(f, gb, order)


def containment_witness(a: Ideal, b: Ideal, threads: int = 1) -> tuple[Polynomial, Polynomial] | None:
    """First generator of ``b`` outside ``a`` with its nonzero remainder, or None."""
    a._check(b)
    gb = a.groebner()
    if gb.is_unit():
        return None
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            rems = list(pool.map(gb.reduce, b.generators))
    else:
        rems = map(gb.reduce, b.generators)
    for g, r in zip(b.generators, rems):
        if r:
            return g, r
    return None


def ideal_contains(a: Ideal, b: Ideal, threads: int = 1) -> bool:
    """True iff ``b`` is a subset of ``a``."""
    return containment_witness(a, b, threads) is None


def ideal_equals(a: Ideal, b: Ideal) -> bool:
    a._check(b)
    return a.groebner().elements == b.groebner().elements


def _require_homogeneous(a: Ideal):
    if not a.is_homogeneous():
        raise NotHomogeneousError("graded pieces need a homogeneous ideal")


def standard_monomials(a: Ideal, t: int) -> list[tuple]:
    """Degree-``t`` monomials outside the leading-term ideal of ``a``."""
    lms = a.groebner().leading_monomials
    return [
        m for m in monomials_of_degree(a.ring.nvars, t)
        if not any(mono_divides(u, m) for u in lms)
    ]


def graded_dim(a: Ideal, t: int) -> int:
    """Dimension of the degree-``t`` piece of the homogeneous ideal ``a``."""
    _require_homogeneous(a)
    if t < 0:
        return 0
    if a.is_zero():
        return 0
    return count_monomials(a.ring.nvars, t) - len(standard_monomials(a, t))


def graded_piece_basis(a: Ideal, t: int) -> list[Polynomial]:
    """Echelon basis of the degree-``t`` piece, one element per non-standard monomial."""
    _require_homogeneous(a)
    if t < 0 or a.is_zero():
        return []
    gb = a.groebner()
    lms = gb.leading_monomials
    columns = sorted(monomials_of_degree(a.ring.nvars, t), key=GREVLEX.key, reverse=True)
    rows = []
    for m in columns:
        for g, u in zip(gb.elements, lms):
            if mono_divides(u, m):
                q = tuple(x - y for x, y in zip(m, u))
                rows.append(dict(g.mul_term(q).items()))
                break
    return [Polynomial(a.ring, row) for row in rref(rows, columns)]
