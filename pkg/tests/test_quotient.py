import json

import pytest
from hypothesis import given, strategies as st

from gradedrham import samples
from gradedrham.polyring import Poly, Weights, jacobian, monomial_basis, parse_poly
from gradedrham.quotient import (
    HilbertFn,
    artinian_residue_check,
    hilbert_function,
    isolated_singularity_check,
    quotient_basis,
    residue_dim,
)

W22 = Weights((2, 2))
F22 = parse_poly("x1^2 + x2^2", 2)


def test_quotient_basis_examples():
    assert quotient_basis(F22, 0, W22).dim == 1
    assert quotient_basis(F22, 4, W22).dim == 2
    assert quotient_basis(F22, 3, W22).dim == 0


def test_hilbert_function_examples():
    assert hilbert_function(F22, (0, 8), W22).dims == (1, 0, 2, 0, 2, 0, 2, 0, 2)
    assert hilbert_function(F22, (-3, -1), W22).dims == (0, 0, 0)
    x = parse_poly("x1", 1)
    assert hilbert_function(x, (0, 3), Weights((1,))).dims == (1, 0, 0, 0)


@given(st.randoms(use_true_random=False))
def test_dimension_formula(rng):
    w = samples.random_weights(rng, 3, 3)
    f = samples.random_homogeneous(rng, w, rng.randint(1, 6))
    if not f:
        return
    for d in range(-1, 10):
        expect = len(monomial_basis(d, w)) - len(monomial_basis(d - f.degree(w), w))
        assert quotient_basis(f, d, w).dim == max(expect, 0)


@given(st.randoms(use_true_random=False))
def test_projection_is_idempotent_and_kills_multiples(rng):
    f, w = samples.pick_isolated(rng)
    d = rng.randint(0, 3 * f.degree(w))
    qb = quotient_basis(f, d, w)
    p = samples.random_homogeneous(rng, w, d, nonzero=False)
    once = qb.reduce(p)
    assert qb.reduce(qb.lift(once, w.n)) == once
    g = samples.random_homogeneous(rng, w, d - f.degree(w), nonzero=False)
    assert not any(qb.reduce(g * f))
    proj = qb.projection()
    assert proj.rows == qb.dim


def test_hilbertfn_json_round_trip():
    hf = hilbert_function(F22, (0, 6), W22)
    assert HilbertFn.from_json(json.loads(json.dumps(hf.to_json()))) == hf
    assert hf[4] == 2
    with pytest.raises(KeyError):
        hf[7]
    with pytest.raises(ValueError):
        HilbertFn(0, 2, (1, 2))


def test_residue_check_examples():
    chk = artinian_residue_check(jacobian(F22), F22, W22)
    assert chk.is_artinian and chk.top_degree == 0
    for m in (2, 3, 4, 5):
        w = Weights((m, m, 2))
        f = parse_poly("x1^2 + x2^2 + x3^%d" % m, 3)
        chk = artinian_residue_check(jacobian(f), f, w)
        assert chk.status == "artinian"
        assert chk.top_degree == 2 * (m - 2)
    w11 = Weights((1, 1))
    x1 = parse_poly("x1", 2)
    for d_max in (5, 20):
        assert artinian_residue_check([x1], parse_poly("x1^2", 2), w11, d_max).status == "inconclusive"


def test_isolated_examples():
    assert isolated_singularity_check(F22, W22).is_artinian
    assert isolated_singularity_check(parse_poly("x1^2*x2", 2), Weights((1, 1)), 30).status == "inconclusive"
    assert isolated_singularity_check(parse_poly("x1^2 + x2^2 + x3^4", 3), Weights((2, 2, 1))).is_artinian


@pytest.mark.parametrize("text,w", samples.ISOLATED)
def test_zero_run_persists(text, w):
    w = Weights(w)
    f = parse_poly(text, w.n)
    chk = isolated_singularity_check(f, w)
    assert chk.is_artinian
    start = len(chk.dims)
    gens = jacobian(f) + [f]
    for d in range(start, start + 5):
        assert residue_dim(gens, d, w) == 0
