import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from desing import FieldSpec, PolyRing, Polynomial, parse_polynomial
from desing.algebra import (
    INFINITY,
    factor_out_monomial,
    jacobian_generators,
    monomial_content,
    order_at_point,
    polynomials_in,
    substitute,
)
from desing.errors import ParseError, PreconditionError, RingMismatchError, UnknownVariableError

from oracles import expand_substitution, same_polynomial, to_sympy

R3 = PolyRing(("x(1)", "x(2)", "x(3)"))
XY = PolyRing(("x", "y"))


def test_parse_whitney():
    f = parse_polynomial("x(1)^2-x(2)*x(3)^2", R3)
    assert f.terms == {(2, 0, 0): 1, (0, 1, 2): -1}


def test_parse_zero():
    assert parse_polynomial("0", R3).is_zero()
    assert parse_polynomial("x(1)-x(1)", R3).is_zero()


def test_unknown_variable():
    with pytest.raises(UnknownVariableError) as err:
        parse_polynomial("x(4)+1", R3)
    assert err.value.name == "x(4)"
    assert err.value.position == 0


@pytest.mark.parametrize("text", ["x(1)^", "x(1)**2", "2 x(1)", "(x(1)", "x(1)+*x(2)", "x(1)^-1", ""])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_polynomial(text, R3)


def test_precedence_and_grouping():
    f = parse_polynomial("-x^2*y^3+2*(x+y)^2 - 3", XY)
    assert same_polynomial(str(f), "-x**2*y**3+2*(x+y)**2-3")
    assert parse_polynomial("2^3", XY) == XY.constant(8)
    with pytest.raises(ParseError):
        parse_polynomial("2^3^2", XY)  # chained powers are ambiguous, rejected
    assert parse_polynomial(" x * y ", XY) == XY.gen("x") * XY.gen("y")


def test_rational_literal_division():
    f = parse_polynomial("x/2+1/3", XY)
    assert f.terms == {(1, 0): Fraction(1, 2), (0, 0): Fraction(1, 3)}
    with pytest.raises(ParseError):
        parse_polynomial("x/y", XY)


def test_canonical_printing():
    f = parse_polynomial("x(1)^2-x(2)*x(3)^2", R3)
    assert str(f) == "-x(2)*x(3)^2+x(1)^2"
    assert str(parse_polynomial("1-x+3*y^2", XY)) == "3*y^2-x+1"
    assert str(XY.zero()) == "0"


def test_primed_names_roundtrip():
    ring = PolyRing(("x(1)'", "x(2)", "x(3)''"))
    f = parse_polynomial("x(1)'^2-x(2)*x(3)''", ring)
    assert parse_polynomial(str(f), ring) == f


def test_ring_from_text_orders_naturally():
    ring, _ = polynomials_in(["x(10)+x(2)", "x(1)"])
    assert ring.variables == ("x(1)", "x(2)", "x(10)")
    ring, _ = polynomials_in(["y^2-x^3"], minimum=2)
    assert ring.variables == ("x", "y")
    ring, _ = polynomials_in(["t-1"], minimum=2)
    assert ring.variables == ("t", "x")


def test_field_validation():
    with pytest.raises(PreconditionError):
        FieldSpec(4)
    with pytest.raises(PreconditionError):
        FieldSpec(-3)
    assert FieldSpec(7).coerce(Fraction(1, 2)) == 4


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        XY.gen("x") + R3.gen(0)


def test_substitute_whitney_chart():
    f = parse_polynomial("x(1)^2-x(2)*x(3)^2", R3)
    chart = PolyRing(("y(1)", "x(2)", "x(3)"))
    images = [parse_polynomial(t, chart) for t in ("x(3)*y(1)", "x(2)", "x(3)")]
    got = substitute(f, images)
    assert str(got) == "y(1)^2*x(3)^2-x(2)*x(3)^2"
    expected = expand_substitution("x(1)^2-x(2)*x(3)^2", {"x(1)": "x(3)*y(1)"})
    assert same_polynomial(str(got), str(expected))


def test_substitute_identity_and_zero():
    f = parse_polynomial("x^3-2*x*y+5", XY)
    assert substitute(f, XY.gens()) == f
    g = parse_polynomial("x+y", XY)
    assert substitute(g, [XY.zero(), XY.zero()]).is_zero()


def test_order_examples():
    f = parse_polynomial("x^2-y^3", XY)
    assert order_at_point(f) == 2
    assert order_at_point(f, (1, 1)) == 1
    assert order_at_point(f, (1, 0)) == 0
    assert order_at_point(XY.zero()) == INFINITY
    ring = PolyRing(("y(1)", "x(2)"))
    assert order_at_point(parse_polynomial("y(1)^2-x(2)", ring)) == 1


def test_jacobian_generators_whitney():
    f = parse_polynomial("x(1)^2-x(2)*x(3)^2", R3)
    gens = jacobian_generators(f)
    assert [str(g) for g in gens] == ["-x(2)*x(3)^2+x(1)^2", "2*x(1)", "-x(3)^2", "-2*x(2)*x(3)"]
    # common zeros on a grid: exactly the line x1 = x3 = 0
    grid = [Fraction(a, 2) for a in range(-4, 5)]
    zeros = {
        (a, b, c)
        for a in grid
        for b in grid
        for c in grid
        if all(g.evaluate((a, b, c)) == 0 for g in gens)
    }
    assert zeros == {(0, b, 0) for b in grid}


def test_jacobian_smooth_and_cone():
    lin = parse_polynomial("x+2*y-1", XY)
    assert all(g.is_constant() for g in jacobian_generators(lin)[1:])
    f = parse_polynomial("x^2-y^2", XY)
    pts = [(a, b) for a in range(-3, 4) for b in range(-3, 4) if all(g.evaluate((a, b)) == 0 for g in jacobian_generators(f))]
    assert pts == [(0, 0)]


def test_factor_out_monomial_examples():
    ring = PolyRing(("x(2)", "x(3)", "y(1)"))
    m, g = factor_out_monomial(parse_polynomial("x(3)^2*y(1)^2-x(2)*x(3)^2", ring))
    assert m == (0, 2, 0) and str(g) == "y(1)^2-x(2)"
    m, g = factor_out_monomial(parse_polynomial("y^2-x", XY))
    assert m == (0, 0) and str(g) == "y^2-x"
    m, g = factor_out_monomial(parse_polynomial("x^2*y+x*y^2", XY))
    assert m == (1, 1) and str(g) == "x+y"


def test_char_p_arithmetic():
    ring = PolyRing(("x", "y"), FieldSpec(3))
    x = ring.gen("x")
    assert (x**3).derivative("x").is_zero()
    f = parse_polynomial("5*x-7*y+9", ring)
    assert all(0 <= c < 3 for c in f.terms.values())
    assert f == parse_polynomial("2*x+2*y", ring)
    assert (x + 1) ** 3 == x**3 + 1


# -- properties ------------------------------------------------------------

def polynomials(ring: PolyRing, max_terms: int = 5, max_deg: int = 3):
    n = ring.nvars
    exps = st.tuples(*[st.integers(0, max_deg)] * n)
    coeffs = st.integers(-5, 5) if ring.field.characteristic == 0 else st.integers(0, ring.field.characteristic - 1)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda d: Polynomial(ring, d))


R = PolyRing(("x", "y", "z"))
F5 = PolyRing(("x", "y", "z"), FieldSpec(5))


@given(polynomials(R), polynomials(R), polynomials(R))
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert (f + g) * h == f * h + g * h
    assert f - f == R.zero()


@given(polynomials(F5), polynomials(F5), polynomials(F5))
def test_ring_axioms_char_p(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert all(0 <= c < 5 for c in (f * g).terms.values())


@given(polynomials(R), polynomials(R), st.tuples(*[st.integers(-2, 2)] * 3))
def test_order_is_additive(f, g, p):
    if f.is_zero() or g.is_zero():
        return
    assert order_at_point(f * g, p) == order_at_point(f, p) + order_at_point(g, p)
    assert (order_at_point(f, p) == 0) == (f.evaluate(p) != 0)


@settings(max_examples=60)
@given(polynomials(R), polynomials(R), st.lists(polynomials(XY, 3, 2), min_size=3, max_size=3))
def test_substitute_is_a_ring_map(f, g, images):
    assert substitute(f + g, images) == substitute(f, images) + substitute(g, images)
    assert substitute(f * g, images) == substitute(f, images) * substitute(g, images)


@settings(max_examples=40)
@given(polynomials(R, 4, 2), st.lists(polynomials(XY, 3, 2), min_size=3, max_size=3))
def test_substitute_matches_sympy(f, images):
    got = substitute(f, images)
    mapping = dict(zip(R.variables, (str(g) for g in images)))
    want = expand_substitution(str(f), {k: f"({v})" for k, v in mapping.items()})
    assert same_polynomial(str(got), str(want))


@given(polynomials(R))
def test_print_parse_roundtrip(f):
    assert parse_polynomial(str(f), R) == f
    assert same_polynomial(str(f), str(to_sympy(str(f))))


@given(polynomials(R))
def test_factor_out_monomial_content_is_trivial(f):
    if f.is_zero():
        return
    m, g = factor_out_monomial(f)
    assert monomial_content(g) == (0, 0, 0)
    assert R.monomial(m) * g == f


@given(polynomials(R), st.tuples(*[st.fractions(-3, 3, max_denominator=3)] * 3))
def test_translate_preserves_values(f, p):
    g = f.translate(p)
    assert g.evaluate((0, 0, 0)) == f.evaluate(p)


def test_order_infinity_is_math_inf():
    assert INFINITY == math.inf
