import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sgon.errors import (
    AmbiguousSign,
    DivisionByZero,
    FieldMismatch,
    InsufficientApproximation,
    SchemaError,
)
from sgon.exact_arith import (
    QuadNum,
    SymbolBasis,
    format_rational,
    parse_rational,
    quad_inv,
    quad_sign,
    rational_sqrt,
    symreal_eval,
)

rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 1000)
squarefree = st.sampled_from([1, 2, 3, 5, 6, 7, 10, 11, 13])


def quads(D=None):
    ds = st.just(D) if D else squarefree
    return st.builds(lambda p, q, d: QuadNum(p, q, d), rationals, rationals, ds)


def test_parse_and_format_rationals():
    assert parse_rational("6/4") == Fraction(3, 2)
    assert parse_rational(" -7 ") == -7
    assert format_rational(Fraction(0)) == "0"
    assert format_rational(Fraction(-3, 9)) == "-1/3"
    for bad in ("1.5", "a/b", "1/0", "", "3/-6"):
        with pytest.raises(SchemaError):
            parse_rational(bad)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6).filter(bool))
def test_rationals_are_canonical(p, q):
    x = Fraction(p, q)
    assert x.denominator > 0
    assert math.gcd(x.numerator, x.denominator) == 1
    assert parse_rational(format_rational(x)) == x


@given(rationals, rationals, rationals)
def test_rational_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


def test_symreal_eval_examples():
    B = SymbolBasis.from_names(["sqrt3", "sqrt5"])
    assert symreal_eval(B.real({"1": 1}), 20) == 1
    x = B.real({"sqrt3": 2, "sqrt5": -1})
    with mpmath.workdps(40):
        oracle = 2 * mpmath.sqrt(3) - mpmath.sqrt(5)
        assert abs(symreal_eval(x, 20) - oracle) < mpmath.mpf(10) ** -20
    assert mpmath.nstr(symreal_eval(x, 20), 11) == "1.2280336376"
    assert symreal_eval(B.zero(), 20) == 0


def test_symbol_basis_rules():
    B = SymbolBasis.from_names(["pi"])
    assert B.names == ("1", "pi")
    with pytest.raises(SchemaError):
        SymbolBasis(("pi",), ("3.14",))
    with pytest.raises(SchemaError):
        SymbolBasis(("1", "x", "x"), ("1.0", "2", "3"))
    with pytest.raises(SchemaError):
        SymbolBasis.from_names(["unknown_constant"])


def test_insufficient_approximation():
    B = SymbolBasis(("1", "x"), ("1.0", "1.4142"))
    with pytest.raises(InsufficientApproximation):
        B.real({"x": 1}).eval(20)
    # rational values need no symbol digits
    assert B.const(3).eval(40) == 3


def test_sign_and_ambiguity():
    B = SymbolBasis.from_names(["sqrt2", "sqrt3"])
    assert B.real({"sqrt3": 1, "sqrt2": -1}).sign() == 1
    assert B.real({"sqrt2": -1}).sign() == -1
    assert B.const(0).sign() == 0
    # sqrt2 against a 60-digit rational truncation: indistinguishable at 50 digits
    trunc = Fraction(14142135623730950488016887242096980785696718753769480731767, 10**58)
    close = B.real({"sqrt2": 1}) - trunc
    with pytest.raises(AmbiguousSign):
        close.sign(50)
    assert close.sign(90) == -1  # the truncation was rounded up


def test_symreal_linear_ops():
    B = SymbolBasis.from_names(["pi"])
    x, y = B.real({"pi": 2, "1": 1}), B.real({"pi": -1})
    assert (x + y).coeffs == (Fraction(1), Fraction(1))
    assert (x * Fraction(1, 2)).coeffs == (Fraction(1, 2), Fraction(1))
    assert x - x == 0
    assert str(x) == "1 + 2*pi"
    with pytest.raises(DivisionByZero):
        x / 0


@settings(max_examples=200)
@given(rationals, rationals, rationals, rationals)
def test_symreal_eval_is_additive(a, b, c, d):
    B = SymbolBasis.from_names(["sqrt2", "e"])
    x, y = B.real({"sqrt2": a, "e": b}), B.real({"1": c, "e": d})
    with mpmath.workdps(40):
        assert abs((x + y).eval(30) - (x.eval(30) + y.eval(30))) < mpmath.mpf(10) ** -28


def test_quad_inv_examples():
    assert quad_inv(QuadNum(1, 1, 2)) == QuadNum(-1, 1, 2)
    assert quad_inv(QuadNum(2, 0, 2)) == QuadNum(Fraction(1, 2), 0, 2)
    x = QuadNum(Fraction(1, 2), Fraction(1, 2), 2)
    assert quad_inv(x) == QuadNum(-2, 2, 2)
    assert x * quad_inv(x) == 1
    with pytest.raises(DivisionByZero):
        quad_inv(QuadNum(0, 0, 5))


def test_quad_sign_examples():
    assert quad_sign(QuadNum(0, 0, 2)) == 0
    assert quad_sign(QuadNum(-1, 1, 2)) == 1
    assert quad_sign(QuadNum(3, -2, 2)) == 1
    assert float(QuadNum(3, -2, 2)) == pytest.approx(0.1716, abs=1e-4)
    assert quad_sign(QuadNum(-3, 2, 2)) == -1


@settings(max_examples=1000)
@given(quads())
def test_quad_sign_matches_numeric(x):
    with mpmath.workdps(90):
        root = mpmath.nstr(mpmath.sqrt(x.D), 85)
    B = SymbolBasis(("1", "r"), ("1.0", root))
    as_sym = B.real({"1": x.p, "r": x.q})
    assert quad_sign(x) == as_sym.sign(50)


@settings(max_examples=300)
@given(quads())
def test_quad_inverse_is_exact(x):
    if x.is_zero():
        return
    assert x * quad_inv(x) == 1


@given(quads(3), quads(3), quads(3))
def test_quad_field_laws(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y).conj() == x.conj() * y.conj()
    assert (x * y).norm() == x.norm() * y.norm()


@given(quads())
def test_quad_floor(x):
    f = x.floor()
    assert f <= x < f + 1


def test_field_rules():
    with pytest.raises(FieldMismatch):
        QuadNum(0, 1, 2) + QuadNum(0, 1, 3)
    # plain rationals (D = 1) join any field
    assert QuadNum(1, 0, 1) + QuadNum(0, 1, 2) == QuadNum(1, 1, 2)
    assert QuadNum(2, 5, 1) == 7  # surd part folds into p when D = 1
    with pytest.raises(SchemaError):
        QuadNum(1, 1, 8)


def test_quad_strings_round_trip():
    x = QuadNum.from_strings(["-1/3", "5/2"], 7)
    assert QuadNum.from_strings(x.to_strings(), 7) == x
    assert str(x) == "-1/3 + 5/2*sqrt(7)"


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(12)) is None
    assert rational_sqrt(Fraction(-1)) is None
