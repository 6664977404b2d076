import random
import threading

import pytest

from fatpoints.arith import QQ
from fatpoints.ideal import (
    Ideal,
    NotHomogeneousError,
    containment_witness,
    eliminate,
    graded_dim,
    graded_piece_basis,
    ideal_contains,
    ideal_equals,
    ideal_intersect,
    ideal_intersect_many,
    ideal_member,
    ideal_power,
    ideal_product,
    ideal_sum,
    membership_remainder,
)
from fatpoints.linalg import rank
from fatpoints.points import point, point_ideal, symbolic_power, vanishing_conditions_dim
from fatpoints.poly import XYZ_Q, XYZ_W, RingDescriptor, RingMismatchError, monomials_of_degree, proportionality_factor

from conftest import multiples_rank
from test_groebner import random_poly

x, y, z = XYZ_W.gens()
TXY = RingDescriptor(("t", "x", "y"), QQ)


def ideal(*gens, ring=XYZ_W):
    return Ideal(ring, list(gens))


def random_homogeneous_ideal(seed):
    rng = random.Random(seed)
    gens = []
    while len(gens) < 2:
        p = random_poly(rng, homogeneous_deg=rng.randint(1, 2), terms=3)
        if p:
            gens.append(p)
    return Ideal(XYZ_Q, gens)


# -- construction ----------------------------------------------------------------

def test_generators_are_cleaned():
    a = ideal(x, 2 * x, XYZ_W.zero(), y)
    assert a.generators == (x, y)
    assert Ideal(XYZ_W).is_zero()
    with pytest.raises(RingMismatchError):
        Ideal(XYZ_W, [XYZ_Q.gen("x")])


def test_sum_examples():
    m = ideal(x, y, z)
    assert ideal_sum(ideal(y, z), ideal(x, z)) == m
    k = ideal(x**2 - y * z)
    assert ideal_sum(k, Ideal(XYZ_W)) == k
    p1, p2 = point(1, 0, 0), point(0, 1, 0)
    assert ideal_sum(point_ideal(p1), point_ideal(p2)) == m


def test_product_examples(hesse):
    assert ideal_product(ideal(x), ideal(y)).generators == (x * y,)
    explicit = ideal(hesse.f1, hesse.f2, hesse.f3)
    assert len(ideal_product(explicit, explicit).generators) == 6
    k = ideal(x**2 - y * z, x * y)
    assert ideal_product(k, Ideal.unit(XYZ_W)) == k


def test_power_examples(hesse):
    k = ideal(x - y)
    assert ideal_power(k, 1) is k
    assert set(ideal_power(ideal(y, z), 3).generators) == {y**3, y**2 * z, y * z**2, z**3}
    square = ideal_power(ideal(hesse.f1, hesse.f2, hesse.f3), 2)
    assert all(g.degree == 8 for g in square.generators)
    assert square == hesse.I2
    with pytest.raises(ValueError):
        ideal_power(k, 0)


def test_cross_ring_operations_fail():
    with pytest.raises(RingMismatchError):
        ideal_sum(ideal(x), Ideal(XYZ_Q, [XYZ_Q.gen("x")]))
    with pytest.raises(RingMismatchError):
        ideal_member(XYZ_Q.gen("x"), ideal(x))


# -- elimination and intersection ------------------------------------------------

def test_eliminate_examples():
    t, xx, yy = TXY.gens()
    e = eliminate(Ideal(TXY, [t * xx, (1 - t) * yy, t**2 - t]), 1)
    assert e.ring.variables == ("x", "y")
    xs, ys = e.ring.gens()
    assert ideal_member(xs * ys, e)
    e = eliminate(Ideal(TXY, [xx - t, yy - t**2]), 1)
    assert e == Ideal(e.ring, [ys - xs**2])
    assert eliminate(Ideal(TXY), 1).is_zero()
    with pytest.raises(ValueError):
        eliminate(Ideal(TXY, [t]), 3)


def test_intersect_examples(hesse):
    assert ideal_intersect(ideal(y, z), ideal(x, z)) == ideal(z, x * y)
    k = ideal(x**2 - y * z, x * y)
    assert ideal_intersect(k, k) == k
    points_ideals = [point_ideal(p) for p in hesse.config]
    assert ideal_intersect_many(points_ideals) == ideal(hesse.f1, hesse.f2, hesse.f3)
    assert ideal_intersect_many([k]) is k
    with pytest.raises(ValueError):
        ideal_intersect_many([])


def test_intersect_many_is_order_independent(hesse):
    ideals = [point_ideal(p) for p in hesse.config.points[:6]]
    forward = ideal_intersect_many(ideals)
    backward = ideal_intersect_many(ideals[::-1])
    assert forward.groebner().elements == backward.groebner().elements


def test_intersect_with_zero_and_unit():
    k = ideal(x, y)
    assert ideal_intersect(k, Ideal(XYZ_W)).is_zero()
    assert ideal_intersect(k, Ideal.unit(XYZ_W)) == k


@pytest.mark.parametrize("seed", range(8))
def test_intersection_bounds(seed):
    a, b = random_homogeneous_ideal(seed), random_homogeneous_ideal(seed + 50)
    meet = ideal_intersect(a, b)
    assert meet.ring == a.ring
    assert ideal_contains(a, meet) and ideal_contains(b, meet)
    assert ideal_contains(meet, ideal_product(a, b))


# -- membership, containment, equality -------------------------------------------

def test_member_examples(hesse):
    assert ideal_member(hesse.f, hesse.I3)
    assert not ideal_member(hesse.f, hesse.I2)
    assert ideal_member(XYZ_W.zero(), hesse.I)
    assert ideal_member(hesse.f**2, hesse.I2)
    assert hesse.f in hesse.I


def test_contains_examples(hesse):
    witness = containment_witness(hesse.I2, hesse.I3)
    assert witness is not None
    g, r = witness
    assert proportionality_factor(g, hesse.f) is not None and r
    assert not ideal_contains(hesse.I2, hesse.I3)
    assert ideal_contains(hesse.I3, ideal_power(hesse.I, 3))
    assert ideal_contains(hesse.I2, hesse.I4)
    assert ideal_contains(hesse.I2, hesse.I4, threads=4)


def test_containment_chain(hesse):
    i2_symbolic = symbolic_power(hesse.config, 2)
    assert ideal_contains(i2_symbolic, hesse.I2)
    assert ideal_contains(hesse.I, i2_symbolic)
    assert ideal_contains(hesse.I3, hesse.I4)


def test_equals_examples(hesse):
    assert ideal_equals(hesse.J, ideal(hesse.g1, hesse.g2))
    assert ideal_equals(hesse.I, ideal(hesse.f1, hesse.f2, hesse.f3))
    k = ideal(x**2, y * z)
    assert ideal_equals(k, k + k)
    assert not ideal_equals(k, ideal(x**2))


def test_unit_ideal_contains_everything():
    u = Ideal(XYZ_W, [x + 1, x])
    assert u.is_unit()
    assert ideal_contains(u, ideal(x**5, y))
    assert membership_remainder(y**3, u).is_zero()


def test_cached_basis_generates_same_ideal(hesse):
    for a in (hesse.I, hesse.J, hesse.I3):
        gb = a.groebner()
        assert all(gb.contains(g) for g in a.generators)
        fresh = Ideal(a.ring, a.generators)
        assert all(ideal_member(g, fresh) for g in gb)


def test_groebner_memo_is_thread_safe():
    a = ideal(x**3 - y * z**2, y**3 - x * z**2, x * y * z)
    results = []
    threads = [threading.Thread(target=lambda: results.append(a.groebner())) for _ in range(8)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert all(r is results[0] for r in results)


# -- graded pieces ---------------------------------------------------------------

def test_graded_dim_examples(hesse):
    assert graded_dim(hesse.I3, 9) == 1
    assert graded_dim(Ideal(XYZ_W), 5) == 0
    assert graded_dim(hesse.I, 4) == 3
    quartics = list(monomials_of_degree(3, 4))
    evaluation = [{m: XYZ_W.monomial(m).evaluate(p.coords) for m in quartics} for p in hesse.config]
    assert 15 - rank(evaluation, quartics) == 3


def test_graded_dim_requires_homogeneous():
    with pytest.raises(NotHomogeneousError):
        graded_dim(ideal(x**2 + y), 3)
    with pytest.raises(NotHomogeneousError):
        graded_piece_basis(ideal(x**2 + y), 3)


@pytest.mark.parametrize("name", ["I", "J", "I2"])
def test_graded_dim_matches_multiples_rank(hesse, name):
    a = getattr(hesse, name)
    for t in range(13):
        assert graded_dim(a, t) == multiples_rank(a.generators, t), t


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_symbolic_graded_dim_matches_vanishing_conditions(hesse, m):
    a = {1: hesse.I, 3: hesse.I3, 4: hesse.I4}.get(m) or symbolic_power(hesse.config, m)
    for t in range(13):
        assert graded_dim(a, t) == vanishing_conditions_dim(hesse.config, m, t), t


def test_known_graded_dimensions(hesse):
    assert [graded_dim(hesse.I2, t) for t in range(8, 13)] == [6, 18, 30, 42, 55]
    assert [graded_dim(hesse.I3, t) for t in range(8, 13)] == [0, 1, 3, 6, 19]
    assert graded_dim(hesse.I, 9) == 43


def test_graded_piece_basis_examples(hesse):
    basis = graded_piece_basis(hesse.I3, 9)
    assert len(basis) == 1 and proportionality_factor(basis[0], hesse.f) is not None
    assert graded_piece_basis(hesse.I, 3) == []
    assert len(graded_piece_basis(hesse.I2, 9)) == 18
    assert graded_piece_basis(Ideal(XYZ_W), 4) == []


def test_graded_piece_basis_spans_the_piece(hesse):
    for a, t in ((hesse.I, 5), (hesse.I2, 9), (hesse.I3, 10)):
        basis = graded_piece_basis(a, t)
        assert len(basis) == graded_dim(a, t)
        assert all(b.is_homogeneous() and b.degree == t and ideal_member(b, a) for b in basis)
        assert multiples_rank([], t, extra=basis) == len(basis)


def test_equal_graded_dims_imply_membership(hesse):
    explicit = ideal(hesse.f1, hesse.f2, hesse.f3)
    assert all(graded_dim(explicit, t) == graded_dim(hesse.I, t) for t in range(9))
    assert all(ideal_member(g, explicit) for g in hesse.I.generators if g.degree <= 8)
    for seed in range(5):
        a = random_homogeneous_ideal(seed)
        b = Ideal(a.ring, a.generators + (random_poly(random.Random(seed), ring=a.ring, homogeneous_deg=4),))
        assert all(graded_dim(a, t) == graded_dim(b, t) for t in range(4))
        assert all(ideal_member(g, a) for g in b.generators if g.degree <= 3)
