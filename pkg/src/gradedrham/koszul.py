"""Koszul complexes: on A = R/(f) for the partials of f, and on commuting matrices.

Sign convention (shared with the De Rham complex): the basis element
e_S, S = (j_0 < ... < j_{i-1}), maps to sum_t (-1)^t g_{j_t} e_{S - j_t}.
With 1-based positions this is the usual (-1)^(t+1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from .linalg import Matrix, RowSpace, in_affine, nullspace_basis, rank
from .polyring import Poly, Weights, check_homogeneous, jacobian
from .quotient import HilbertFn, QuotientBasis, quotient_basis


def faces(S: tuple[int, ...]) -> Iterator[tuple[int, int, tuple[int, ...]]]:
    """(sign, dropped index, remaining subset) for each term of d(e_S)."""
    for t, j in enumerate(S):
        yield (-1 if t % 2 else 1), j, S[:t] + S[t + 1:]


def subsets(n: int, i: int) -> list[tuple[int, ...]]:
    return list(combinations(range(n), i)) if 0 <= i <= n else []


# -- K(d f; A) -----------------------------------------------------------------

@lru_cache(maxsize=None)
def strand(f: Poly, w: Weights, i: int, d: int) -> tuple[tuple[tuple[int, ...], QuotientBasis], ...]:
    """Components of K'_i in internal degree d: A(-i deg f + sum_{s in S} w_s)."""
    deg_f = check_homogeneous(f, w)
    if i < 0 or i > w.n:
        return ()
    return tuple(
        (S, quotient_basis(f, d - i * deg_f + sum(w[s] for s in S), w)) for S in subsets(w.n, i)
    )


def strand_dim(f: Poly, w: Weights, i: int, d: int) -> int:
    return sum(qb.dim for _, qb in strand(f, w, i, d))


def _offsets(comps) -> dict[tuple[int, ...], int]:
    out, pos = {}, 0
    for S, qb in comps:
        out[S] = pos
        pos += qb.dim
    return out


@lru_cache(maxsize=None)
def psi(f: Poly, w: Weights, i: int, d: int) -> Matrix:
    """Matrix of psi_i : (K'_i)_d -> (K'_{i-1})_d on quotient-basis coordinates."""
    src = strand(f, w, i, d)
    dst = strand(f, w, i - 1, d)
    rows = sum(qb.dim for _, qb in dst)
    if i < 1 or i > w.n:
        return Matrix.zeros(rows, sum(qb.dim for _, qb in src))
    grads = jacobian(f)
    dst_qb = dict(dst)
    dst_off = _offsets(dst)
    cols = []
    for S, qb in src:
        for m in qb.representatives:
            mono = Poly.monomial(m)
            col = [0] * rows
            for sign, j, T in faces(S):
                if not grads[j]:
                    continue
                red = dst_qb[T].reduce(grads[j] * mono * sign)
                off = dst_off[T]
                for k, x in enumerate(red):
                    if x:
                        col[off + k] += x
            cols.append(col)
    return Matrix.from_columns(cols, rows)


@dataclass
class KoszulSlice:
    degree: int
    dims: tuple[int, ...]  # dim K'_0 .. K'_3 in this degree
    psi1: Matrix
    psi2: Matrix
    psi3: Matrix


def koszul_slice(f: Poly, d: int, w: Weights) -> KoszulSlice:
    return KoszulSlice(
        d,
        tuple(strand_dim(f, w, i, d) for i in range(4)),
        psi(f, w, 1, d),
        psi(f, w, 2, d),
        psi(f, w, 3, d),
    )


@lru_cache(maxsize=None)
def _psi_rank(f: Poly, w: Weights, i: int, d: int) -> int:
    if i < 1 or i > w.n:
        return 0
    return rank(psi(f, w, i, d))


def koszul_h_dim(f: Poly, i: int, d: int, w: Weights) -> int:
    """dim H_i(d f; A)_d = dim ker psi_i - rank psi_{i+1}."""
    if not f:
        raise ValueError("f must be nonzero")
    dim = strand_dim(f, w, i, d)
    if not dim:
        return 0
    return dim - _psi_rank(f, w, i, d) - _psi_rank(f, w, i + 1, d)


def h1_hilbert(f: Poly, window: tuple[int, int], w: Weights) -> HilbertFn:
    lo, hi = window
    return HilbertFn(lo, hi, tuple(koszul_h_dim(f, 1, d, w) for d in range(lo, hi + 1)))


def euler_characteristics(f: Poly, d: int, w: Weights) -> tuple[int, int]:
    """Alternating sums of chain dimensions and of homology dimensions."""
    chains = sum((-1) ** i * strand_dim(f, w, i, d) for i in range(w.n + 1))
    homology = sum((-1) ** i * koszul_h_dim(f, i, d, w) for i in range(w.n + 1))
    return chains, homology


# -- classes -------------------------------------------------------------------

@dataclass
class ClassRep:
    """A degree-d element of Z_1 together with the boundary space B_1 there."""

    degree: int
    cycle: tuple[Fraction, ...]
    boundary_basis: list[list[Fraction]] = field(repr=False)


def class_from_polys(f: Poly, polys: Sequence[Poly], d: int, w: Weights) -> ClassRep:
    """Class of (a_1 mod f, ..., a_n mod f) in (K'_1)_d."""
    coords: list[Fraction] = []
    for (S, qb), a in zip(strand(f, w, 1, d), polys):
        if a and a.degree(w) != qb.degree:
            raise ValueError("slot %d has degree %d, expected %d" % (S[0] + 1, a.degree(w), qb.degree))
        coords.extend(qb.reduce(a) if a else [Fraction(0)] * qb.dim)
    return ClassRep(d, tuple(coords), psi(f, w, 2, d).columns())


def class_is_zero(f: Poly, c: ClassRep, w: Weights) -> bool:
    if any(psi(f, w, 1, c.degree).apply(c.cycle)):
        raise ValueError("not a cycle: psi_1 does not vanish on it")
    return in_affine(c.cycle, [], c.boundary_basis) is not None


def classes_equal(f: Poly, a: ClassRep, b: ClassRep, w: Weights) -> bool:
    if a.degree != b.degree:
        return False
    diff = [x - y for x, y in zip(a.cycle, b.cycle)]
    return in_affine(diff, [], a.boundary_basis) is not None


# -- commuting operators on a finite-dimensional space --------------------------

def _check_commuting(ops: Sequence[Matrix]) -> int:
    if not ops:
        raise ValueError("need at least one operator")
    v = ops[0].rows
    for T in ops:
        if T.rows != v or T.cols != v:
            raise ValueError("operators must be square of one size")
    for a in range(len(ops)):
        for b in range(a + 1, len(ops)):
            if ops[a] @ ops[b] != ops[b] @ ops[a]:
                raise ValueError("operators %d and %d do not commute" % (a, b))
    return v


def generic_differential(ops: Sequence[Matrix], i: int) -> Matrix:
    """d_i : V (x) L^i -> V (x) L^{i-1}; blocks ordered by subset, then V."""
    v, r = ops[0].rows, len(ops)
    src, dst = subsets(r, i), subsets(r, i - 1)
    if not src or not dst:
        return Matrix.zeros(v * len(dst), v * len(src))
    pos = {T: k for k, T in enumerate(dst)}
    data = [[Fraction(0)] * (v * len(src)) for _ in range(v * len(dst))]
    for c, S in enumerate(src):
        for sign, j, T in faces(S):
            r0, c0 = pos[T] * v, c * v
            for a in range(v):
                for b in range(v):
                    x = ops[j][a, b]
                    if x:
                        data[r0 + a][c0 + b] += sign * x
    return Matrix(data, v * len(src))


def generic_koszul_dims(ops: Sequence[Matrix], i: int) -> int:
    v = _check_commuting(ops)
    r = len(ops)
    if i < 0 or i > r:
        return 0
    dim = v * comb(r, i)
    r_in = rank(generic_differential(ops, i)) if i >= 1 else 0
    r_out = rank(generic_differential(ops, i + 1)) if i + 1 <= r else 0
    return dim - r_in - r_out


def _homology_basis(ops: Sequence[Matrix], i: int, v: int) -> tuple[list, list]:
    """(complement basis of B_i in Z_i, basis of B_i) for the complex on ops."""
    r = len(ops)
    size = v * comb(r, i) if 0 <= i <= r else 0
    if size == 0:
        return [], []
    if i >= 1:
        cycles = [[Fraction(x) for x in z] for z in nullspace_basis(generic_differential(ops, i))]
    else:
        cycles = [[Fraction(int(k == j)) for k in range(size)] for j in range(size)]
    bounds = generic_differential(ops, i + 1).columns() if i + 1 <= r else []
    space = RowSpace(size).extend(bounds)
    chosen = [z for z in cycles if space.add(z)]
    return chosen, bounds


def _induced(T: Matrix, ops: Sequence[Matrix], i: int, v: int) -> Matrix:
    """Matrix of T (x) id on H_i(ops), computed by lifting and reducing."""
    basis, bounds = _homology_basis(ops, i, v) if ops else ([], [])
    if not ops:
        # empty Koszul complex: H_0 = V, nothing above
        if i != 0:
            return Matrix.zeros(0, 0)
        return T
    cols = []
    blocks = comb(len(ops), i)
    for h in basis:
        th = []
        for b in range(blocks):
            th.extend(T.apply(h[b * v:(b + 1) * v]))
        coeffs = in_affine(th, basis, bounds)
        if coeffs is None:
            raise ArithmeticError("induced operator left the cycle space")
        cols.append(coeffs)
    return Matrix.from_columns(cols, len(basis))


def lemma13_sides(ops: Sequence[Matrix], i: int) -> tuple[int, int]:
    """dim H_i(ops) and dim H_0(T; H_i(rest)) + dim H_1(T; H_{i-1}(rest)), T = ops[0]."""
    v = _check_commuting(ops)
    T, rest = ops[0], list(ops[1:])
    left = generic_koszul_dims(ops, i)
    right = 0
    for k in (i, i - 1):
        if k < 0 or (rest and k > len(rest)) or (not rest and k != 0):
            continue
        Tbar = _induced(T, rest, k, v)
        h = Tbar.rows
        rk = rank(Tbar) if h else 0
        right += h - rk  # both H_0 and H_1 of one operator have dim h - rank
    return left, right


def lemma13_check(ops: Sequence[Matrix], i: int) -> bool:
    left, right = lemma13_sides(ops, i)
    return left == right
