"""Random small instances for property tests, driven by a ``random.Random``.

Numerators are drawn from the monomial basis of the forced degree with small
integer coefficients; draws that come out zero are rerolled.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .derham import FracElem, FracVector
from .eulerian import GradedOpModule
from .koszul import subsets
from .linalg import Matrix
from .polyring import Poly, Weights, monomial_basis, parse_poly

# (f, weights) pairs that pass the isolated-singularity check
ISOLATED = (
    ("x1^2 + x2^2", (2, 2)),
    ("x1^2 + x2^3", (3, 2)),
    ("x1^3 + x2^3", (1, 1)),
    ("x1^2*x2 + x2^3", (1, 1)),
    ("x1^2 + x2^2 + x3^2", (1, 1, 1)),
    ("x1^2 + x2^2 + x3^3", (3, 3, 2)),
    ("x1^2 + x2^2 + x3^4", (2, 2, 1)),
)


def isolated_pool() -> list[tuple[Poly, Weights]]:
    return [(parse_poly(text, len(w)), Weights(w)) for text, w in ISOLATED]


def pick_isolated(rng: random.Random, max_vars: int = 3) -> tuple[Poly, Weights]:
    pool = [(f, w) for f, w in isolated_pool() if w.n <= max_vars]
    return rng.choice(pool)


def small_coeff(rng: random.Random, bound: int = 3, fractions: bool = False):
    c = rng.randint(-bound, bound)
    if fractions and rng.random() < 0.3:
        return Fraction(c, rng.randint(1, 3))
    return c


def random_weights(rng: random.Random, n_max: int = 3, w_max: int = 3) -> Weights:
    return Weights(tuple(rng.randint(1, w_max) for _ in range(rng.randint(1, n_max))))


def random_homogeneous(rng: random.Random, w: Weights, d: int, bound: int = 3, nonzero: bool = True, tries: int = 50) -> Poly:
    """Random element of R_d; zero only if R_d = 0 or ``nonzero`` is False."""
    basis = monomial_basis(d, w)
    if not basis:
        return Poly.zero(w.n)
    for _ in range(tries):
        k = rng.randint(1, min(len(basis), 4))
        p = Poly({m: small_coeff(rng, bound) for m in rng.sample(basis, k)}, w.n)
        if p or not nonzero:
            return p
    return Poly.monomial(basis[0])


def random_frac_elem(rng: random.Random, f: Poly, w: Weights, degree: int, pole_max: int = 2) -> FracElem:
    """Nonzero a/f^i of the given degree when one exists (tries poles up to pole_max)."""
    deg_f = f.degree(w)
    poles = list(range(pole_max + 1))
    rng.shuffle(poles)
    for i in poles:
        a = random_homogeneous(rng, w, degree + i * deg_f)
        if a:
            return FracElem(a, i)
    return FracElem(Poly.zero(w.n), 0)


def random_frac_vector(rng: random.Random, f: Poly, w: Weights, twists: tuple[int, ...], degree: int, pole_max: int = 2, sparse: float = 0.3) -> FracVector:
    """Vector with slot k of degree ``degree + twists[k]``; some slots left zero."""
    deg_f = f.degree(w)
    poles = [p for p in range(pole_max + 1) if any(monomial_basis(degree + t + p * deg_f, w) for t in twists)]
    if not poles:
        raise ValueError("no nonzero vectors in degree %d" % degree)
    for _ in range(50):
        pole = rng.choice(poles)
        nums = []
        for t in twists:
            if rng.random() < sparse:
                nums.append(Poly.zero(w.n))
            else:
                nums.append(random_homogeneous(rng, w, degree + t + pole * deg_f))
        if not any(nums):
            live = [k for k, t in enumerate(twists) if monomial_basis(degree + t + pole * deg_f, w)]
            k = rng.choice(live)
            nums[k] = random_homogeneous(rng, w, degree + twists[k] + pole * deg_f)
        # sometimes plant an extra factor of f so normal forms have work to do
        if pole and rng.random() < 0.3:
            k = rng.randint(1, pole)
            nums = [a * f ** k for a in nums]
            pole += k
        v = FracVector(tuple(nums), pole, twists)
        if not v.is_zero():
            return v
    raise ValueError("no nonzero vectors in degree %d" % degree)


def k_twists(w: Weights, i: int) -> tuple[int, ...]:
    return tuple(sum(w[s] for s in S) for S in subsets(w.n, i))


# -- matrices --------------------------------------------------------------------------

def random_matrix(rng: random.Random, rows: int, cols: int, bound: int = 3, rank_max: int | None = None, fractions: bool = False) -> Matrix:
    """Random matrix; with ``rank_max`` it is a product of thin factors."""
    if rank_max is None:
        return Matrix([[small_coeff(rng, bound, fractions) for _ in range(cols)] for _ in range(rows)], cols)
    k = rng.randint(0, rank_max)
    left = Matrix([[small_coeff(rng, bound) for _ in range(k)] for _ in range(rows)], k)
    right = Matrix([[small_coeff(rng, bound, fractions) for _ in range(cols)] for _ in range(k)], cols)
    return left @ right


def random_commuting_ops(rng: random.Random, size_max: int = 6, r_max: int = 3) -> list[Matrix]:
    """Commuting operators as polynomials in one random base matrix."""
    v = rng.randint(1, size_max)
    r = rng.randint(1, r_max)
    kind = rng.random()
    if kind < 0.4:
        # nilpotent-heavy base: strictly upper triangular plus a small scalar
        base = Matrix([[rng.randint(-2, 2) if j > i else 0 for j in range(v)] for i in range(v)], v)
        base = base + Matrix.identity(v).scale(rng.choice([0, 0, 1]))
    elif kind < 0.8:
        base = random_matrix(rng, v, v, 2)
    else:
        # diagonal with repeated eigenvalues, then mixed by a unimodular change of basis
        diag = Matrix([[rng.choice([0, 1, 2]) if i == j else 0 for j in range(v)] for i in range(v)], v)
        p, pinv = unimodular_pair(rng, v)
        base = p @ diag @ pinv
    ops = []
    for _ in range(r):
        deg = rng.randint(0, 2)
        op = Matrix.zeros(v, v)
        power = Matrix.identity(v)
        for _ in range(deg + 1):
            op = op + power.scale(rng.randint(-2, 2))
            power = power @ base
        ops.append(op)
    return ops


def unimodular_pair(rng: random.Random, n: int) -> tuple[Matrix, Matrix]:
    """(P, P^-1) with integer entries: P = U L, unit triangular factors."""
    def unit(upper: bool) -> Matrix:
        return Matrix([[1 if i == j else (rng.randint(-1, 1) if (j > i) == upper and i != j else 0) for j in range(n)] for i in range(n)], n)

    def unit_inverse(t: Matrix, upper: bool) -> Matrix:
        # back substitution on a unit triangular matrix
        inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        order = range(n - 1, -1, -1) if upper else range(n)
        for i in order:
            others = range(i + 1, n) if upper else range(i)
            for k in others:
                c = t[i, k]
                if c:
                    for j in range(n):
                        inv[i][j] -= c * inv[k][j]
        return Matrix(inv, n)

    u, low = unit(True), unit(False)
    return u @ low, unit_inverse(low, False) @ unit_inverse(u, True)


def random_graded_op_module(rng: random.Random, generalized: bool = True, max_pieces: int = 3, max_dim: int = 3) -> GradedOpModule:
    """Pieces P (d I + N) P^-1 with N strictly upper triangular.

    With ``generalized`` False one nonempty piece gets eigenvalue d + l, l != 0.
    """
    degrees = rng.sample(range(-4, 5), rng.randint(1, max_pieces))
    pieces = {}
    for d in degrees:
        k = rng.randint(1, max_dim)
        n = Matrix([[rng.randint(-2, 2) if j > i else 0 for j in range(k)] for i in range(k)], k)
        p, pinv = unimodular_pair(rng, k)
        pieces[d] = p @ (Matrix.identity(k).scale(d) + n) @ pinv
    if not generalized:
        d = rng.choice(degrees)
        k = pieces[d].rows
        pieces[d] = pieces[d] + Matrix.identity(k).scale(rng.choice([-2, -1, 1, 2]))
    return GradedOpModule(pieces)
