"""Buchberger's algorithm with the Gebauer-Moeller pair criteria.

Inside the engine polynomials are plain ``{monomial: coefficient}`` dicts;
basis elements are kept monic so a reduction step never divides.
"""

from __future__ import annotations

import heapq
import logging
import operator
from dataclasses import dataclass
from typing import Iterable, Sequence

from .poly import (
    GREVLEX,
    Polynomial,
    RingDescriptor,
    RingMismatchError,
    TermOrder,
    mono_coprime,
    mono_divides,
    mono_lcm,
)

log = logging.getLogger(__name__)


class DegreeCapExceeded(RuntimeError):
    pass


class _Elem:
    """A monic basis element: leading monomial plus its tail, sorted descending."""

    __slots__ = ("lm", "tail", "terms", "deg")

    def __init__(self, terms: dict, order: TermOrder):
        key = order.key
        items = sorted(terms.items(), key=lambda t: key(t[0]), reverse=True)
        lm, lc = items[0]
        if lc != 1:
            inv = 1 / lc
            items = [(m, c * inv) for m, c in items]
        self.lm = lm
        self.tail = items[1:]
        self.terms = dict(items)
        self.deg = max(sum(m) for m in self.terms)


def _find_reducer(m, basis: Sequence[_Elem]):
    le = operator.le
    for g in basis:
        if all(map(le, g.lm, m)):
            return g
    return None


def _reduce(terms: dict, basis: Sequence[_Elem], order: TermOrder, full: bool) -> dict:
    """Reduce ``terms`` by ``basis``.  ``full=False`` stops at the first irreducible term."""
    if not terms or not basis:
        return dict(terms)
    key = order.key
    p = dict(terms)
    heap = [_neg(key(m)) + (m,) for m in p]
    heapq.heapify(heap)
    rem: dict = {}
    sub = operator.sub
    add = operator.add
    while heap:
        m = heapq.heappop(heap)[-1]
        c = p.get(m)
        if c is None:
            continue
        g = _find_reducer(m, basis)
        if g is None:
            if not full:
                rem.update(p)
                return rem
            rem[m] = c
            del p[m]
            continue
        del p[m]
        q = tuple(map(sub, m, g.lm))
        for gm, gc in g.tail:
            mm = tuple(map(add, gm, q))
            old = p.get(mm)
            if old is None:
                p[mm] = -c * gc
                heapq.heappush(heap, _neg(key(mm)) + (mm,))
            else:
                new = old - c * gc
                if new:
                    p[mm] = new
                else:
                    del p[mm]
    return rem


def _neg(k: tuple) -> tuple:
    return tuple(-x for x in k)


def _spoly_terms(f: _Elem, g: _Elem) -> dict:
    lcm = mono_lcm(f.lm, g.lm)
    add, sub = operator.add, operator.sub
    qf = tuple(map(sub, lcm, f.lm))
    qg = tuple(map(sub, lcm, g.lm))
    out = {tuple(map(add, m, qf)): c for m, c in f.tail}
    for m, c in g.tail:
        mm = tuple(map(add, m, qg))
        old = out.get(mm)
        if old is None:
            out[mm] = -c
        else:
            new = old - c
            if new:
                out[mm] = new
            else:
                del out[mm]
    return out


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis, sorted by ascending leading monomial."""

    ring: RingDescriptor
    order: TermOrder
    elements: tuple[Polynomial, ...]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    @property
    def leading_monomials(self) -> list[tuple]:
        return [g.leading_monomial(self.order) for g in self.elements]

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self, self.order)

    def contains(self, f: Polynomial) -> bool:
        return not self.reduce(f)

    def _engine_elems(self) -> list[_Elem]:
        cached = self.__dict__.get("_elems")
        if cached is None:
            cached = [_Elem(dict(g.items()), self.order) for g in self.elements]
            object.__setattr__(self, "_elems", cached)
        return cached

    def format(self) -> str:
        return "\n".join(g.format(self.order) for g in self.elements)


def _ring_of(polys: Sequence[Polynomial]) -> RingDescriptor:
    ring = polys[0].ring
    for p in polys[1:]:
        if p.ring != ring:
            raise RingMismatchError(f"{ring!r} vs {p.ring!r}")
    return ring


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder = GREVLEX) -> Polynomial:
    """``(L/lt(f))*f - (L/lt(g))*g`` with ``L`` the lcm of the leading monomials."""
    if not f or not g:
        raise ValueError("S-polynomial of a zero polynomial")
    ring = _ring_of([f, g])
    mf, cf = f.leading_term(order)
    mg, cg = g.leading_term(order)
    lcm = mono_lcm(mf, mg)
    return f.mul_term(tuple(a - b for a, b in zip(lcm, mf)), ring.field.inv(cf)) - g.mul_term(
        tuple(a - b for a, b in zip(lcm, mg)), ring.field.inv(cg)
    )


def normal_form(f: Polynomial, basis: Sequence[Polynomial] | GroebnerBasis, order: TermOrder = GREVLEX) -> Polynomial:
    """Fully reduced remainder of ``f`` modulo ``basis``."""
    if isinstance(basis, GroebnerBasis):
        if basis.order != order:
            raise ValueError(f"basis was computed for {basis.order}, not {order}")
        if basis.elements and basis.ring != f.ring:
            raise RingMismatchError(f"{f.ring!r} vs {basis.ring!r}")
        elems = basis._engine_elems()
    else:
        basis = [b for b in basis]
        if any(not b for b in basis):
            raise ValueError("basis elements must be nonzero")
        if basis:
            _ring_of([f] + basis)
        elems = [_Elem(dict(b.items()), order) for b in basis]
    if not f:
        return f
    rem = _reduce(dict(f.items()), elems, order, full=True)
    return Polynomial(f.ring, rem, _trusted=True)


def _gm_update(elems, active: list[int], pairs: dict, h: int, use_product: bool, use_chain: bool):
    """Gebauer-Moeller update of the pair set and active basis for new element ``h``."""
    lm_h = elems[h].lm
    cand = [(g, mono_lcm(elems[g].lm, lm_h)) for g in active]
    if use_chain:
        kept: list = []
        while cand:
            g, lcm_g = cand.pop(0)
            if (use_product and mono_coprime(elems[g].lm, lm_h)) or not any(
                mono_divides(lcm2, lcm_g) for _, lcm2 in cand + kept
            ):
                kept.append((g, lcm_g))
        cand = kept
    new_pairs = {}
    for g, lcm_g in cand:
        if use_product and mono_coprime(elems[g].lm, lm_h):
            continue
        new_pairs[(g, h)] = lcm_g
    if use_chain:
        for (a, b), lcm_ab in list(pairs.items()):
            if (
                mono_divides(lm_h, lcm_ab)
                and mono_lcm(elems[a].lm, lm_h) != lcm_ab
                and mono_lcm(elems[b].lm, lm_h) != lcm_ab
            ):
                del pairs[(a, b)]
        active = [g for g in active if not mono_divides(lm_h, elems[g].lm)]
    pairs.update(new_pairs)
    active.append(h)
    return active, new_pairs


def buchberger(
    generators: Iterable[Polynomial],
    order: TermOrder = GREVLEX,
    *,
    product_criterion: bool = True,
    chain_criterion: bool = True,
    strategy: str = "normal",
    degree_cap: int | None = None,
    full_reduction: bool = False,
    ring: RingDescriptor | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``generators``.

    ``strategy`` selects the next S-pair: ``"normal"`` takes the smallest lcm
    in ``order``; ``"degree"`` takes the smallest total degree first, ties
    broken by ``order``.
    """
    gens = [g for g in generators]
    if gens:
        ring = _ring_of(gens)
    gens = [g for g in gens if g]
    if not gens:
        if ring is None:
            raise ValueError("cannot infer the ring of an empty generator list")
        return GroebnerBasis(ring, order, ())
    if strategy not in ("normal", "degree"):
        raise ValueError(f"unknown pair strategy {strategy!r}")
    key = order.key

    def pair_key(lcm):
        return (sum(lcm),) + key(lcm) if strategy == "degree" else key(lcm)

    elems: list[_Elem] = []
    active: list[int] = []
    pairs: dict[tuple[int, int], tuple] = {}
    heap: list = []

    def add(terms: dict):
        e = _Elem(terms, order)
        if degree_cap is not None and e.deg > degree_cap:
            raise DegreeCapExceeded(f"basis element of degree {e.deg} exceeds cap {degree_cap}")
        elems.append(e)
        h = len(elems) - 1
        nonlocal active
        active, new = _gm_update(elems, active, pairs, h, product_criterion, chain_criterion)
        for (a, b), lcm in new.items():
            heapq.heappush(heap, (pair_key(lcm), a, b))
        return e

    # seed with inter-reduced generators, low leading monomial first
    seeds = sorted((dict(g.items()) for g in gens), key=lambda t: key(max(t, key=key)))
    for t in seeds:
        r = _reduce(t, [elems[i] for i in active], order, full=False)
        if r:
            add(r)
            if not any(elems[-1].lm):
                break

    steps = 0
    while heap:
        if any(not any(elems[i].lm) for i in active):
            break  # unit ideal
        _, a, b = heapq.heappop(heap)
        if (a, b) not in pairs:
            continue
        del pairs[(a, b)]
        steps += 1
        s = _spoly_terms(elems[a], elems[b])
        r = _reduce(s, [elems[i] for i in active], order, full=full_reduction)
        if r:
            add(r)
    log.debug("buchberger: %d pairs reduced, %d elements", steps, len(elems))
    return GroebnerBasis(ring, order, tuple(_interreduce([elems[i] for i in active], ring, order)))


def _interreduce(elems: list[_Elem], ring: RingDescriptor, order: TermOrder) -> list[Polynomial]:
    if any(not any(e.lm) for e in elems):
        return [ring.one()]
    minimal = []
    for i, e in enumerate(elems):
        if any(
            mono_divides(f.lm, e.lm) and (f.lm != e.lm or j < i)
            for j, f in enumerate(elems)
            if j != i
        ):
            continue
        minimal.append(e)
    key = order.key
    minimal.sort(key=lambda e: key(e.lm))
    out = []
    for i, e in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        tail = _reduce(dict(e.tail), others, order, full=True)
        tail[e.lm] = ring.field.one
        out.append(Polynomial(ring, tail, _trusted=True))
    return out


def is_groebner(basis: Sequence[Polynomial], order: TermOrder = GREVLEX) -> bool:
    """Direct Buchberger criterion: every S-polynomial reduces to zero."""
    basis = [b for b in basis]
    if any(not b for b in basis):
        raise ValueError("basis elements must be nonzero")
    if not basis:
        return True
    _ring_of(basis)
    elems = [_Elem(dict(b.items()), order) for b in basis]
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            if _reduce(_spoly_terms(elems[i], elems[j]), elems, order, full=False):
                return False
    return True
