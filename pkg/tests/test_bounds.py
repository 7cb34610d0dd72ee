import pytest

from gradedrham.bounds import (
    NotIsolatedError,
    candidate_degrees,
    class_L,
    example01,
    example_family,
    expected_trichotomy,
    filtration_report,
    matching_solutions,
    theorem2_bound,
)
from gradedrham.derham import FracVector, apply_phi, vec_add
from gradedrham.polyring import Poly, Weights, parse_poly

W22 = Weights((2, 2))
F = parse_poly("x1^2 + x2^2", 2)
X1, X2 = Poly.var(0, 2), Poly.var(1, 2)


def test_candidate_examples():
    c = candidate_degrees(F, W22)
    assert c.nu_max == 1 and c.pairs == [(1, 4)]
    f, w = example_family(3, 3)
    assert candidate_degrees(f, w).pairs == [(1, 4)]
    f, w = example_family(4, 2)
    assert w.omega == 8
    assert candidate_degrees(f, w).pairs == [(1, 0), (2, 4)]


def test_not_isolated_rejected():
    with pytest.raises(NotIsolatedError):
        candidate_degrees(parse_poly("x1^2*x2", 2), Weights((1, 1)))


@pytest.mark.parametrize("n", range(2, 7))
@pytest.mark.parametrize("m", range(2, 7))
def test_candidate_arithmetic(n, m):
    f, w = example_family(n, m)
    for nu in range(1, 7):
        assert (nu + 1) * f.degree(w) - w.omega == (2 * nu - n + 3) * m - 2


@pytest.mark.parametrize("n", range(2, 7))
@pytest.mark.parametrize("m", range(2, 7))
def test_matching_solutions(n, m):
    sols = matching_solutions(n, m)
    assert bool(sols) == (n % 2 == 0 and m % 2 == 0)
    assert all(nu == n // 2 for nu, _ in sols)


@pytest.mark.parametrize("n", range(2, 7))
@pytest.mark.parametrize("m", range(2, 7))
def test_trichotomy(n, m):
    rep = example01(n, m)
    assert rep["verdict"] == expected_trichotomy(n, m)
    assert rep["matches_trichotomy"]
    assert all(t["closed_form_agrees"] for t in rep["trace"])
    if n % 2 == 0 and m % 2 == 0:
        assert rep["bound"] == 1 and rep["contributing_nu"] == [n // 2]
    else:
        assert rep["bound"] == 0 and rep["contributing_nu"] == []


def test_bound_report_json():
    rep = theorem2_bound(F, W22, estimate=True)
    js = rep.to_json()
    assert js["bound"] == 1 and js["rows"] == [{"nu": 1, "degree": 4, "h1dim": 1}]
    assert js["truncated_estimate"]["dim"] == 2
    assert js["divergent"] is True
    assert theorem2_bound(F, W22).to_json()["truncated_estimate"] is None
    assert theorem2_bound(F, W22).divergent is None


def test_class_L_examples():
    v = FracVector((X1, X2), 1, (2, 2))
    assert class_L(F, W22, v, 3) == 1
    xi = FracVector((X1 * X1,), 1, (4,))
    b = apply_phi(xi, 2, F, W22)
    assert b.pole == 2
    raised = vec_add(v, b, F)
    assert raised.pole == 2
    assert class_L(F, W22, raised, 3) == 1
    with pytest.raises(ValueError):
        class_L(F, W22, b, 3)


def test_filtration_for_two_lines():
    rep = filtration_report(F, W22)
    assert rep.f0_zero
    assert [(s.nu, s.jump) for s in rep.steps] == [(1, 2)]
    step = rep.steps[0]
    assert step.class_L == [1, 1]
    assert sorted(step.image_zero) == [False, True]
    assert step.eta_injective is False
    assert rep.exhaustive


@pytest.mark.parametrize("n,m", [(3, 2), (3, 3), (3, 4)])
def test_filtration_empty_when_bound_zero(n, m):
    f, w = example_family(n, m)
    rep = filtration_report(f, w)
    assert rep.estimate.dim == 0 and rep.steps == [] and rep.exhaustive


def test_filtration_jumps_sum_to_estimate():
    for text, wt in [("x1^3 + x2^3", (1, 1)), ("x1^2 + x2^3", (3, 2)), ("x1^2*x2 + x2^3", (1, 1))]:
        w = Weights(wt)
        f = parse_poly(text, 2)
        rep = filtration_report(f, w)
        assert all(s.nu >= 1 for s in rep.steps)
        assert rep.total == rep.estimate.dim
        js = rep.to_json()
        assert js["F0_zero"] and "assumption" in js


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_plane_curves_carry_one_class_beyond_the_bound(m):
    # recorded divergence: with two variables the pole-one step has a class
    # whose theta image is a Koszul boundary, so the estimate exceeds the bound
    f, w = example_family(2, m)
    rep = filtration_report(f, w)
    bound = theorem2_bound(f, w).bound
    assert rep.estimate.dim == bound + 1 == (2 if m % 2 == 0 else 1)
    assert [s.nu for s in rep.steps] == [1]
    assert rep.steps[0].image_zero.count(True) == 1
    assert rep.steps[0].eta_injective is False
