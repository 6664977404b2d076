import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from fatpoints.arith import QQ, QQW, W, CycloElement, Rational
from fatpoints.ideal import Ideal, graded_dim, ideal_contains, ideal_equals, ideal_power
from fatpoints.points import (
    Configuration,
    LineForm,
    PointFileError,
    ProjectivePoint,
    default_star_lines,
    dual_hesse_config,
    dual_hesse_lines,
    fat_point_ideal,
    format_points,
    hesse_nonic,
    incidence_matrix,
    line_through,
    parse_points_text,
    point,
    point_ideal,
    product_of_lines,
    radical_ideal,
    random_rational_config,
    star_configuration,
    symbolic_power,
    vanishing_order_at_least,
)
from fatpoints.poly import XYZ_Q, XYZ_W, proportionality_factor

from conftest import random_control, star_control

x, y, z = XYZ_W.gens()
W2 = W * W
HESSE_TEXT = """# twelve points
1 : 0 : 0
0 : 1 : 0
0 : 0 : 1
1 : 1 : 1
1 : w : -1-w
1 : -1-w : w
w : 1 : 1
1 : w : 1
1 : 1 : w
-1-w : 1 : 1
1 : -1-w : 1
1 : 1 : -1-w
"""

small = st.integers(-4, 4)
cyclo = st.builds(CycloElement, small, small)


# -- points ----------------------------------------------------------------------

def test_point_normalization():
    p = ProjectivePoint((0, 2, 4), QQ)
    assert p.coords == (0, 1, 2)
    q = ProjectivePoint((W, 1, 1))
    assert q.coords[0] == 1 and q.coords[1] == W2
    with pytest.raises(ValueError):
        ProjectivePoint((0, 0, 0))
    with pytest.raises(ValueError):
        ProjectivePoint((1, 2))


@settings(max_examples=200, deadline=None)
@given(st.tuples(cyclo, cyclo, cyclo).filter(any), cyclo.filter(bool))
def test_normalization_is_canonical(coords, scale):
    p = ProjectivePoint(coords)
    assert ProjectivePoint(p.coords) == p
    assert ProjectivePoint(tuple(c * scale for c in coords)) == p


def test_configuration_rejects_duplicates():
    with pytest.raises(ValueError):
        Configuration((point(1, 0, 0), point(2, 0, 0)))


# -- ideals of points ------------------------------------------------------------

def test_point_ideal_examples():
    assert ideal_equals(point_ideal(point(1, 0, 0)), Ideal(XYZ_W, [y, z]))
    assert ideal_equals(point_ideal(point(1, 1, 1)), Ideal(XYZ_W, [x - z, y - z]))
    assert ideal_equals(point_ideal(point(1, W, W2)), Ideal(XYZ_W, [y - W * x, z - W2 * x]))


def test_point_ideal_is_height_two(hesse):
    for p in hesse.config:
        a = point_ideal(p)
        assert [graded_dim(a, t) for t in range(4)] == [0, 2, 5, 9]
        assert all(g.evaluate(p.coords) == 0 for g in a.generators)


def test_radical_ideal_examples(hesse):
    assert ideal_equals(radical_ideal(hesse.config), Ideal(XYZ_W, [hesse.f1, hesse.f2, hesse.f3]))
    rest = Configuration(hesse.config.points[3:])
    assert ideal_equals(radical_ideal(rest), Ideal(XYZ_W, [hesse.g1, hesse.g2]))
    assert ideal_equals(radical_ideal(Configuration((point(1, 0, 0),))), Ideal(XYZ_W, [y, z]))
    with pytest.raises(ValueError):
        radical_ideal(Configuration(()))


def test_radical_generators_vanish(hesse):
    for c in (hesse.config, star_configuration(4), random_rational_config(5, 1)):
        for g in radical_ideal(c).generators:
            assert all(g.evaluate(p.coords) == 0 for p in c)


def test_symbolic_power_examples(hesse):
    assert symbolic_power(hesse.config, 1) == hesse.I
    assert graded_dim(hesse.I3, 9) == 1
    with pytest.raises(ValueError):
        symbolic_power(hesse.config, 0)


@pytest.mark.parametrize("seed", [1, 2, 3])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_ordinary_inside_symbolic_random(seed, m):
    c = random_rational_config(4, seed)
    assert ideal_contains(symbolic_power(c, m), ideal_power(radical_ideal(c), m))


def test_ordinary_power_generators_vanish_to_order_m():
    c = random_rational_config(4, 9)
    for m in (2, 3):
        for g in ideal_power(radical_ideal(c), m).generators:
            assert all(vanishing_order_at_least(g, p, m) for p in c)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_symbolic_generators_pass_vanishing_oracle(hesse, m):
    a = {3: hesse.I3, 4: hesse.I4}.get(m) or symbolic_power(hesse.config, m)
    for g in a.generators:
        assert all(vanishing_order_at_least(g, p, m) for p in hesse.config)
        assert not all(vanishing_order_at_least(g, p, m + 1) for p in hesse.config)


def test_symbolic_generators_random_config():
    c = random_rational_config(5, 4)
    for m in (2, 3):
        for g in symbolic_power(c, m).generators:
            assert all(vanishing_order_at_least(g, p, m) for p in c)


def test_fat_points_mixed_multiplicities():
    c = Configuration((point(1, 0, 0, field=QQ), point(0, 1, 0, field=QQ)), QQ)
    a = fat_point_ideal(c, [2, 1])
    xs, ys, zs = XYZ_Q.gens()
    assert ideal_equals(a, Ideal(XYZ_Q, [ys, zs]) ** 2 & Ideal(XYZ_Q, [xs, zs]))
    with pytest.raises(ValueError):
        fat_point_ideal(c, [2])


# -- vanishing order -------------------------------------------------------------

def test_vanishing_order_examples(hesse):
    assert all(vanishing_order_at_least(hesse.f, p, 3) for p in hesse.config)
    assert not all(vanishing_order_at_least(hesse.f, p, 4) for p in hesse.config)
    p3 = point(0, 0, 1)
    assert vanishing_order_at_least(hesse.f1, p3, 2)
    assert vanishing_order_at_least(hesse.f1, p3, 3)
    assert not vanishing_order_at_least(hesse.f1, p3, 4)
    assert not vanishing_order_at_least(XYZ_W.constant(7), point(1, 2, 3), 1)
    with pytest.raises(ValueError):
        vanishing_order_at_least(hesse.f, p3, 0)


def test_vanishing_order_chart_independent(hesse):
    rng = random.Random(2)
    forms = list(hesse.I3.generators) + [hesse.f1, hesse.g1 * hesse.g2, x**2 * y - z**3]
    checked = 0
    for p in hesse.config:
        charts = p.charts()
        if len(charts) < 2:
            continue
        for f in rng.sample(forms, 6):
            for m in (1, 2, 3, 4):
                assert vanishing_order_at_least(f, p, m, charts[0]) == vanishing_order_at_least(f, p, m, charts[1])
                checked += 1
    assert checked > 0


# -- lines -----------------------------------------------------------------------

def test_line_form_validation():
    with pytest.raises(ValueError):
        LineForm(x**2)
    with pytest.raises(ValueError):
        LineForm(XYZ_W.zero())
    assert LineForm(2 * x - 4 * y).poly == x - 2 * y


def test_line_through_examples(hesse):
    assert line_through(point(1, 0, 0), point(0, 1, 0)).poly == z
    p4, p5, p8 = point(1, 1, 1), point(1, W, W2), point(1, W, 1)
    for p, q in ((p4, p5), (p4, p8)):
        l = line_through(p, q)
        assert l.vanishes_at(p) and l.vanishes_at(q)
        shared = [m for m in hesse.lines if m.vanishes_at(p) and m.vanishes_at(q)]
        assert [m.poly for m in shared] == ([l.poly] if shared else [])
    # P4 and P5 share no configuration line; P4 and P8 lie on x - z
    assert line_through(p4, p5).poly not in {m.poly for m in hesse.lines}
    assert line_through(p4, p8).poly == x - z
    assert line_through(point(1, 0, 0), p4).poly == y - z
    with pytest.raises(ValueError):
        line_through(p4, p4)


def test_product_of_lines_examples(hesse):
    assert proportionality_factor(product_of_lines(hesse.lines), hesse.f) == 1
    assert product_of_lines(hesse.lines[:1]) == hesse.lines[0].poly
    assert product_of_lines([LineForm(x - y), LineForm(x - W * y)]) == x**2 - (1 + W) * x * y + W * y**2
    with pytest.raises(ValueError):
        product_of_lines([])


def test_dual_hesse_tables():
    c, lines = dual_hesse_config(), dual_hesse_lines()
    assert len(c) == 12 and len(lines) == 9
    matrix = incidence_matrix(c, lines)
    assert all(sum(row) == 3 for row in matrix)
    assert all(sum(col) == 4 for col in zip(*matrix))
    assert product_of_lines(lines) == hesse_nonic()


def test_every_line_through_two_points_is_a_configuration_line_or_not():
    c, lines = dual_hesse_config(), dual_hesse_lines()
    polys = {l.poly for l in lines}
    on_config_line = sum(line_through(p, q).poly in polys for p, q in itertools.combinations(c, 2))
    # each of the 9 lines carries C(4,2) = 6 pairs
    assert on_config_line == 54


# -- families --------------------------------------------------------------------

def test_star_configuration_sizes():
    assert len(star_configuration(2)) == 1
    assert len(star_configuration(4)) == 6
    assert len(star_configuration(5)) == 10
    assert star_configuration(4).field == QQ


def test_star_configuration_validation():
    with pytest.raises(ValueError):
        star_configuration(1)
    xs, ys, zs = XYZ_Q.gens()
    concurrent = [LineForm(xs), LineForm(ys), LineForm(xs + ys), LineForm(zs)]
    with pytest.raises(ValueError):
        star_configuration(4, concurrent)
    with pytest.raises(ValueError):
        star_configuration(3, [LineForm(xs), LineForm(2 * xs), LineForm(ys)])
    with pytest.raises(ValueError):
        star_configuration(3, default_star_lines(4))


def test_star_positive_control():
    assert star_control(4)


def test_random_config_properties():
    c = random_rational_config(1, 0)
    assert len(c) == 1 and graded_dim(radical_ideal(c), 1) == 2
    assert random_rational_config(6, 42).points == random_rational_config(6, 42).points
    assert random_rational_config(6, 42).points != random_rational_config(6, 43).points
    for p in random_rational_config(20, 5):
        for v in p.coords:
            assert abs(Rational(v).numerator) <= 50 * 50 and Rational(v).denominator <= 50 * 50
    with pytest.raises(ValueError):
        random_rational_config(0, 1)


@pytest.mark.parametrize("k", [5, 6])
def test_random_positive_control(k):
    holds, used = random_control(k, 1)
    assert holds, f"k={k}: failed on the last seed tried ({used})"


# -- point files -----------------------------------------------------------------

def test_parse_hesse_file():
    assert parse_points_text(HESSE_TEXT).points == dual_hesse_config().points
    assert parse_points_text(HESSE_TEXT).field == QQW


def test_parse_rational_file():
    c = parse_points_text("1:2:3\n1/2 : 0 : -1  # comment\n\n")
    assert c.field == QQ and len(c) == 2
    assert c[1].coords == (1, 0, -2)


@pytest.mark.parametrize("text,lineno", [
    ("1:0:0\n# c\n1:0:0\n", 3),
    ("1:0:0\n0:0:0\n", 2),
    ("1:0\n", 1),
    ("1:x:0\n", 1),
    ("1:0:0\n2/0:1:1\n", 2),
])
def test_parse_errors_name_the_line(text, lineno):
    with pytest.raises(PointFileError, match=f"line {lineno}"):
        parse_points_text(text)


def test_parse_empty_file():
    with pytest.raises(PointFileError):
        parse_points_text("# nothing\n\n")


@pytest.mark.parametrize("config", [
    dual_hesse_config(),
    star_configuration(5),
    random_rational_config(8, 3),
], ids=["hesse", "star", "random"])
def test_point_file_roundtrip(config):
    text = format_points(config, header=["generated"])
    back = parse_points_text(text)
    assert back.points == config.points and back.field == config.field
