"""Expression language: parsing, precedence, evaluation, round-trips."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from anafrac import funclang
from anafrac.errors import (
    ArityError,
    DomainError,
    ExprSyntaxError,
    UnknownIdentifierError,
)


class TestParseEval:
    def test_simple_sum(self):
        assert funclang.parse("theta + 1")(2.0) == 3.0

    def test_sin_square(self):
        assert funclang.parse("sin(theta)^2")(math.pi / 2) == pytest.approx(1.0)

    def test_power_right_assoc(self):
        assert funclang.parse("2^3^2")(0.0) == 512.0

    def test_power_binds_tighter_than_unary_minus(self):
        assert funclang.parse("-theta^2")(3.0) == -9.0

    def test_negative_exponent(self):
        assert funclang.parse("2^-3")(0.0) == 0.125

    def test_ln(self):
        assert funclang.parse("ln(theta)")(1.0) == 0.0

    def test_product(self):
        assert funclang.parse("theta*(theta+1)")(3.0) == 12.0

    def test_min_max(self):
        assert funclang.parse("max(theta, 2*theta - 1)")(0.3) == pytest.approx(0.3)
        assert funclang.parse("min(1, theta)")(5.0) == 1.0

    def test_constants_and_scientific(self):
        assert funclang.parse("pi + e")(0.0) == pytest.approx(math.pi + math.e)
        assert funclang.parse("1e-3 + 2.5E+1")(0.0) == pytest.approx(25.001)

    def test_unicode_theta_alias(self):
        assert funclang.parse("θ + 1")(1.0) == 2.0

    def test_other_free_variable(self):
        assert funclang.parse("n*(n+1)/2", free_var="n")(4.0) == 10.0

    def test_vectorized(self):
        e = funclang.parse("theta^2 + 1")
        got = e(np.array([0.0, 1.0, 2.0]))
        assert isinstance(got, np.ndarray)
        np.testing.assert_allclose(got, [1.0, 2.0, 5.0])

    def test_scalar_returns_float(self):
        assert isinstance(funclang.parse("theta")(1.5), float)

    def test_evaluate_function(self):
        e = funclang.parse("theta^2")
        assert funclang.evaluate(e, 3.0) == 9.0


class TestErrors:
    def test_domain_ln_negative(self):
        with pytest.raises(DomainError):
            funclang.parse("ln(theta)")(-1.0)

    def test_domain_division_by_zero(self):
        with pytest.raises(DomainError):
            funclang.parse("1/(theta - 1)")(1.0)

    def test_domain_sqrt_negative(self):
        with pytest.raises(DomainError):
            funclang.parse("sqrt(theta)")(-4.0)

    def test_domain_fractional_power_of_negative(self):
        with pytest.raises(DomainError):
            funclang.parse("theta^0.5")(-1.0)

    def test_no_implicit_multiplication(self):
        with pytest.raises(ExprSyntaxError) as exc:
            funclang.parse("2theta")
        assert exc.value.offset == 1

    def test_unknown_identifier(self):
        with pytest.raises(UnknownIdentifierError):
            funclang.parse("x + 1")

    def test_unknown_function(self):
        with pytest.raises(UnknownIdentifierError):
            funclang.parse("foo(2)")

    def test_arity(self):
        with pytest.raises(ArityError):
            funclang.parse("sin(1, 2)")
        with pytest.raises(ArityError):
            funclang.parse("min(1)")

    def test_empty(self):
        with pytest.raises(ExprSyntaxError):
            funclang.parse("   ")

    def test_trailing_garbage(self):
        with pytest.raises(ExprSyntaxError):
            funclang.parse("1 + 2 )")

    def test_offset_reported(self):
        with pytest.raises(ExprSyntaxError) as exc:
            funclang.parse("1 + $")
        assert exc.value.offset == 4


# strategy for random well-formed expression trees of bounded depth,
# rendered to source text
_leaf = st.one_of(
    st.just("theta"),
    st.just("pi"),
    st.floats(min_value=0.125, max_value=8.0, allow_nan=False).map(lambda v: repr(v)),
)


def _combine(children):
    a, b = children
    op = st.sampled_from([" + ", " - ", " * ", "/"])
    fn = st.sampled_from(["sin", "cos", "exp", "abs"])
    return st.one_of(
        op.map(lambda o: f"({a}{o}{b})"),
        fn.map(lambda f: f"{f}({a})"),
        st.just(f"max({a}, {b})"),
        st.just(f"-({a})"),
    )


_expr_src = st.recursive(
    _leaf, lambda inner: st.tuples(inner, inner).flatmap(_combine), max_leaves=32
)


class TestRoundTrip:
    CASES = [
        "theta + 1",
        "2^3^2",
        "-(theta+1)*3",
        "sin(theta)^2 / (1 - theta/10)",
        "max(theta, 2*theta-1)",
        "-theta^2",
        "2^-3",
        "1 - 2 - 3",
        "2 - (3 - 4)",
        "(2*theta)^2",
        "2/(3/4)",
        "min(abs(theta), sqrt(theta+4))",
    ]

    @pytest.mark.parametrize("src", CASES)
    def test_pretty_print_fixed_point(self, src):
        p1 = funclang.parse(src).pretty()
        p2 = funclang.parse(p1).pretty()
        assert p1 == p2

    @pytest.mark.parametrize("src", CASES)
    def test_pretty_print_preserves_value(self, src):
        e1 = funclang.parse(src)
        e2 = funclang.parse(e1.pretty())
        for x in (0.3, 1.7, 4.0):
            assert e1(x) == e2(x)

    @given(_expr_src)
    def test_random_expressions_round_trip(self, src):
        e1 = funclang.parse(src)
        p1 = e1.pretty()
        e2 = funclang.parse(p1)
        assert e2.pretty() == p1
        try:
            v1 = e1(0.7)
        except DomainError:
            with pytest.raises(DomainError):
                e2(0.7)
            return
        v2 = e2(0.7)
        assert v1 == v2 and math.isfinite(v1)


class TestDeterminism:
    def test_bit_identical_reevaluation(self):
        e = funclang.parse("sin(theta)^2 + exp(theta/3) - ln(theta + 2)")
        xs = np.linspace(0.0, 5.0, 100)
        a = e(xs)
        b = e(xs)
        assert np.array_equal(a, b)
        assert e(1.234567) == e(1.234567)

    def test_immutable(self):
        e = funclang.parse("theta")
        with pytest.raises(AttributeError):
            e.root = None
