from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gradedrham import samples
from gradedrham.linalg import Matrix, solve
from gradedrham.polyring import (
    NotHomogeneousError,
    Poly,
    PolySyntaxError,
    Weights,
    check_homogeneous,
    divide_exact,
    euler_apply,
    format_poly,
    jacobian,
    monomial_basis,
    parse_poly,
    partial,
    weighted_degree,
)

import properties

W22 = Weights((2, 2))
W332 = Weights((3, 3, 2))


def P(text, n):
    return parse_poly(text, n)


def series_coefficients(w, top):
    """Coefficients of prod 1/(1 - t^w_i) up to t^top."""
    c = [1] + [0] * top
    for wi in w:
        for d in range(wi, top + 1):
            c[d] += c[d - wi]
    return c


def division_oracle(g, f, w):
    """Solve q*f = g as a linear system in the monomials of the forced degree."""
    dq = g.degree(w) - f.degree(w)
    basis = monomial_basis(dq, w)
    if not basis:
        return None
    cols = [(f * Poly.monomial(m)).coords(g.degree(w), w) for m in basis]
    x = solve(Matrix.from_columns(cols, len(monomial_basis(g.degree(w), w))), g.coords(g.degree(w), w))
    return None if x is None else Poly.from_vector(x, basis, g.nvars)


def test_weighted_degree():
    assert weighted_degree((1, 1), W22) == 4
    assert weighted_degree((0, 0), W22) == 0
    assert weighted_degree((2, 0, 3), W332) == 12


def test_monomial_basis_examples():
    assert monomial_basis(0, W22) == ((0, 0),)
    assert set(monomial_basis(4, W22)) == {(2, 0), (1, 1), (0, 2)}
    assert set(monomial_basis(6, W332)) == {(2, 0, 0), (1, 1, 0), (0, 2, 0), (0, 0, 3)}
    assert monomial_basis(-1, W22) == ()
    b = monomial_basis(6, W332)
    assert list(b) == sorted(b, reverse=True)


@pytest.mark.parametrize("w", [(1,), (2, 2), (3, 3, 2), (1, 2, 3), (2, 2, 1, 5)])
def test_monomial_basis_matches_generating_function(w):
    coeffs = series_coefficients(w, 20)
    for d in range(21):
        assert len(monomial_basis(d, Weights(w))) == coeffs[d]


def test_partial_examples():
    assert partial(P("x1^2", 2), 0) == P("2*x1", 2)
    assert not partial(P("x1^2", 2), 1)
    assert partial(P("x1^2+x2^2+x3^3", 3), 2) == P("3*x3^2", 3)


def test_euler_examples():
    assert euler_apply(P("x1*x2", 2), W22) == P("4*x1*x2", 2)
    assert not euler_apply(Poly.const(1, 2), W22)
    assert euler_apply(P("x1^2+x3^3", 3), W332) == P("6*x1^2 + 6*x3^3", 3)


def test_jacobian_examples():
    assert jacobian(P("x1^2+x2^2", 2)) == [P("2*x1", 2), P("2*x2", 2)]
    assert jacobian(P("x1^2+x2^2+x3^3", 3)) == [P("2*x1", 3), P("2*x2", 3), P("3*x3^2", 3)]
    assert all(not g for g in jacobian(Poly.const(5, 2)))


def test_divide_exact_examples():
    f = P("x1^2+x2^2", 2)
    assert divide_exact(f * P("x1", 2), f) == P("x1", 2)
    assert divide_exact(P("x1", 2), f) is None
    assert divide_exact(P("x1^4-x2^4", 2), f) == P("x1^2-x2^2", 2)
    assert divide_exact(Poly.zero(2), f) == Poly.zero(2)


@given(st.randoms(use_true_random=False))
def test_divide_exact_agrees_with_linear_system(rng):
    f, w = samples.pick_isolated(rng)
    d = f.degree(w) + rng.randint(0, 6)
    if rng.random() < 0.5:
        q = samples.random_homogeneous(rng, w, d - f.degree(w))
        g = q * f
    else:
        g = samples.random_homogeneous(rng, w, d)
    if not g:
        return
    ours, oracle = divide_exact(g, f), division_oracle(g, f, w)
    assert (ours is None) == (oracle is None)
    if ours is not None:
        assert ours == oracle
        assert ours * f == g


def test_parse_and_format():
    p = P("x1^2 + 3/2*x2*x3 - x3^3", 3)
    assert p.terms[(0, 1, 1)] == Fraction(3, 2)
    assert format_poly(P("-3/2*x1*x2^2 - x3 + 5", 3)) == "-3/2*x1*x2^2 - x3 + 5"
    assert format_poly(P("x1^2-x2^2", 2)) == "x1^2 - x2^2"
    assert P("-x1 + x1", 1) == Poly.zero(1)


@pytest.mark.parametrize(
    "text,col",
    [("x1^2+*x2", 6), ("x1 x2", 4), ("x3", 1), ("x1^", 4), ("1/0", 3), ("x1 + $", 6)],
)
def test_parse_errors_report_position(text, col):
    with pytest.raises(PolySyntaxError) as e:
        P(text, 2)
    assert e.value.line == 1
    assert e.value.column == col


def test_parse_error_line_numbers():
    with pytest.raises(PolySyntaxError) as e:
        P("x1 +\n x2 ^ ^", 2)
    assert (e.value.line, e.value.column) == (2, 7)


@given(st.randoms(use_true_random=False))
def test_format_parse_round_trip(rng):
    w = samples.random_weights(rng, 4, 3)
    p = samples.random_homogeneous(rng, w, rng.randint(0, 8), nonzero=False)
    assert P(format_poly(p), w.n) == p


def test_homogeneity_checks():
    with pytest.raises(NotHomogeneousError):
        check_homogeneous(P("x1^2+x2", 2), W22)
    with pytest.raises(ValueError):
        check_homogeneous(P("x1", 1), W22)
    assert check_homogeneous(Poly.zero(2), W22) is None
    with pytest.raises(ValueError):
        Weights((1, 0))


@given(st.randoms(use_true_random=False))
def test_euler_identity_on_ring(rng):
    properties.check_euler_identity_ring(rng)
