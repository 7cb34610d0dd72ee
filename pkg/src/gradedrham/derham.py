"""The localization R_f, its De Rham complex, and truncated homology.

Elements of R_f are numerator/f^pole pairs.  A degree-d slice of the chain
group K_i = (+)_S R_f(sum_{s in S} w_s) with poles capped at c is
coordinatized by the numerators: slot S carries a polynomial of degree
d + sum_{s in S} w_s + c*deg f.  Capping the pole order is the only
approximation made anywhere here; everything else is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .koszul import ClassRep, class_from_polys, faces, subsets
from .linalg import Matrix, RowSpace, nullspace_basis
from .polyring import (
    Poly,
    Weights,
    check_homogeneous,
    divide_exact,
    monomial_basis,
    monomial_index,
    partial,
)

NEG_INF = float("-inf")


class NotACycleError(ValueError):
    pass


@dataclass(frozen=True)
class FracElem:
    """numerator / f^pole; not necessarily reduced."""

    num: Poly
    pole: int = 0

    def degree(self, f: Poly, w: Weights) -> int | None:
        d = self.num.degree(w)
        return None if d is None else d - self.pole * f.degree(w)


@dataclass(frozen=True)
class FracVector:
    """(num_1, ..., num_m) / f^pole with one common pole order.

    ``twists`` records the shift of each slot in the ambient chain group
    (w_k for K_1, w_i + w_j for K_2); it only matters for degree bookkeeping.
    """

    nums: tuple[Poly, ...]
    pole: int = 0
    twists: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "nums", tuple(self.nums))
        if self.twists is not None:
            object.__setattr__(self, "twists", tuple(self.twists))
            if len(self.twists) != len(self.nums):
                raise ValueError("one twist per slot")

    @classmethod
    def from_elems(cls, elems: Sequence[FracElem], f: Poly, twists=None) -> "FracVector":
        top = max((e.pole for e in elems), default=0)
        return cls(tuple(e.num * f ** (top - e.pole) for e in elems), top, twists)

    @property
    def nvars(self) -> int:
        return self.nums[0].nvars

    def is_zero(self) -> bool:
        return not any(self.nums)

    def elems(self) -> list[FracElem]:
        return [FracElem(a, self.pole) for a in self.nums]

    def total_degree(self, f: Poly, w: Weights) -> int | None:
        """Common degree in the twisted chain group; None for the zero vector."""
        deg_f = f.degree(w)
        twists = self.twists or (0,) * len(self.nums)
        degs = {a.degree(w) - self.pole * deg_f - t for a, t in zip(self.nums, twists) if a}
        if len(degs) > 1:
            raise ValueError("slots of mixed degree: %s" % sorted(degs))
        return degs.pop() if degs else None

    def __str__(self):
        return ", ".join("(%s)/f^%d" % (a, self.pole) for a in self.nums)


def format_vector(v: FracVector) -> str:
    return str(v)


# -- element arithmetic -----------------------------------------------------------

def reduce_elem(e: FracElem, f: Poly) -> FracElem:
    """Strip factors of f from the numerator while the pole is positive."""
    if not e.num:
        return FracElem(Poly.zero(e.num.nvars), 0)
    num, pole = e.num, e.pole
    while pole > 0:
        q = divide_exact(num, f)
        if q is None:
            break
        num, pole = q, pole - 1
    return FracElem(num, pole)


def elem_add(a: FracElem, b: FracElem, f: Poly) -> FracElem:
    top = max(a.pole, b.pole)
    s = a.num * f ** (top - a.pole) + b.num * f ** (top - b.pole)
    return reduce_elem(FracElem(s, top), f)


def elem_equal(a: FracElem, b: FracElem, f: Poly) -> bool:
    top = max(a.pole, b.pole)
    return a.num * f ** (top - a.pole) == b.num * f ** (top - b.pole)


def frac_partial(e: FracElem, j: int, f: Poly) -> FracElem:
    """d/dx_j (a/f^i) = (f a_j - i a f_j) / f^(i+1), reduced."""
    a, i = e.num, e.pole
    if i == 0:
        return FracElem(partial(a, j), 0)
    num = f * partial(a, j) - a * partial(f, j) * i
    return reduce_elem(FracElem(num, i + 1), f)


def euler_apply_frac(e: FracElem, f: Poly, w: Weights) -> FracElem:
    total = FracElem(Poly.zero(f.nvars), 0)
    for i in range(w.n):
        d = frac_partial(e, i, f)
        total = elem_add(total, FracElem(d.num * Poly.var(i, f.nvars) * w[i], d.pole), f)
    return total


def eulerian_check_frac(e: FracElem, w: Weights, f: Poly) -> bool:
    """E(e) == deg(e) * e for a homogeneous element of R_f."""
    deg = e.degree(f, w)
    if deg is None:
        return not any(euler_apply_frac(e, f, w).num.terms)
    return elem_equal(euler_apply_frac(e, f, w), FracElem(e.num * deg, e.pole), f)


# -- normal forms and pole order ----------------------------------------------------

def normal_form(v: FracVector, f: Poly) -> FracVector:
    """Unique representative with a common pole i >= 1 and some slot not divisible by f.

    Each slot is reduced on its own, then all slots are raised to the largest
    surviving pole.  Vectors in R^m come back with pole 0, the zero vector as
    zeros over pole 0.
    """
    elems = [reduce_elem(e, f) for e in v.elems()]
    live = [e for e in elems if e.num]
    if not live:
        return FracVector(tuple(Poly.zero(f.nvars) for _ in v.nums), 0, v.twists)
    top = max(e.pole for e in live)
    return FracVector(tuple(e.num * f ** (top - e.pole) for e in elems), top, v.twists)


def normal_form_by_stripping(v: FracVector, f: Poly) -> FracVector:
    """Same normal form, reached by dividing the common denominator down."""
    if v.is_zero():
        return FracVector(tuple(Poly.zero(f.nvars) for _ in v.nums), 0, v.twists)
    nums, pole = list(v.nums), v.pole
    while pole > 0:
        qs = [divide_exact(a, f) for a in nums]
        if any(q is None for q in qs):
            break
        nums, pole = qs, pole - 1
    return FracVector(tuple(nums), pole, v.twists)


def pole_order(v: FracVector, f: Poly):
    """L: pole of the normal form, 0 on R^m minus 0, -inf at 0."""
    if v.is_zero():
        return NEG_INF
    return normal_form(v, f).pole


L = pole_order


def vec_add(a: FracVector, b: FracVector, f: Poly) -> FracVector:
    top = max(a.pole, b.pole)
    nums = tuple(x * f ** (top - a.pole) + y * f ** (top - b.pole) for x, y in zip(a.nums, b.nums))
    return FracVector(nums, top, a.twists)


def vec_scale(v: FracVector, c) -> FracVector:
    return FracVector(tuple(a * c for a in v.nums), v.pole, v.twists)


def vec_equal(a: FracVector, b: FracVector, f: Poly) -> bool:
    return vec_add(a, vec_scale(b, -1), f).is_zero()


# -- the differential on explicit vectors ----------------------------------------------

def apply_phi(v: FracVector, i: int, f: Poly, w: Weights) -> FracVector:
    """phi_i on a vector of K_i (slots ordered like ``subsets(n, i)``)."""
    src, dst = subsets(w.n, i), subsets(w.n, i - 1)
    pos = {T: k for k, T in enumerate(dst)}
    out = [FracElem(Poly.zero(f.nvars), 0) for _ in dst]
    for S, e in zip(src, v.elems()):
        if not e.num:
            continue
        for sign, j, T in faces(S):
            d = frac_partial(e, j, f)
            out[pos[T]] = elem_add(out[pos[T]], FracElem(d.num * sign, d.pole), f)
    twists = tuple(sum(w[s] for s in T) for T in dst)
    return FracVector.from_elems(out, f, twists)


def is_cycle(v: FracVector, f: Poly, w: Weights, i: int = 1) -> bool:
    return apply_phi(v, i, f, w).is_zero()


def k1_twists(w: Weights) -> tuple[int, ...]:
    return tuple(w.w)


def theta(v: FracVector, f: Poly, w: Weights) -> ClassRep:
    """Koszul class of the numerators of the normal form of a degree -omega cycle."""
    if v.is_zero():
        raise ValueError("theta is undefined on the zero vector")
    if len(v.nums) != w.n:
        raise ValueError("expected %d slots" % w.n)
    v = FracVector(v.nums, v.pole, k1_twists(w))
    if v.total_degree(f, w) != -w.omega:
        raise ValueError("cycle must have total degree %d" % -w.omega)
    if not is_cycle(v, f, w):
        raise NotACycleError("sum of d_j(v_j) is not zero")
    nf = normal_form(v, f)
    i = nf.pole
    if i < 1:
        raise ValueError("degree -omega cycle with pole 0")
    s = Poly.zero(f.nvars)
    for j, a in enumerate(nf.nums):
        s = s + a * partial(f, j)
    if divide_exact(s, f) is None:
        raise ArithmeticError("f does not divide sum a_j df/dx_j")
    return class_from_polys(f, nf.nums, (i + 1) * f.degree(w) - w.omega, w)


# -- degree slices -----------------------------------------------------------------

@lru_cache(maxsize=None)
def chain_piece(f: Poly, w: Weights, i: int, d: int, cap: int) -> tuple[tuple[tuple[int, ...], tuple], ...]:
    """(subset, numerator monomial basis) per slot of (K_i)_d at pole <= cap."""
    deg_f = check_homogeneous(f, w)
    return tuple(
        (S, monomial_basis(d + sum(w[s] for s in S) + cap * deg_f, w)) for S in subsets(w.n, i)
    )


def piece_dim(f: Poly, w: Weights, i: int, d: int, cap: int) -> int:
    return sum(len(b) for _, b in chain_piece(f, w, i, d, cap))


def coords_to_vector(coords: Sequence, f: Poly, w: Weights, i: int, d: int, cap: int) -> FracVector:
    nums, pos = [], 0
    for S, basis in chain_piece(f, w, i, d, cap):
        nums.append(Poly.from_vector(coords[pos:pos + len(basis)], basis, f.nvars))
        pos += len(basis)
    twists = tuple(sum(w[s] for s in S) for S, _ in chain_piece(f, w, i, d, cap))
    return FracVector(tuple(nums), cap, twists)


def vector_to_coords(v: FracVector, f: Poly, w: Weights, i: int, d: int, cap: int) -> list[Fraction]:
    """Coordinates of v in the pole <= cap piece; v must have pole <= cap."""
    if v.pole > cap:
        raise ValueError("pole %d exceeds cap %d" % (v.pole, cap))
    lift = f ** (cap - v.pole)
    out: list[Fraction] = []
    for (S, basis), a in zip(chain_piece(f, w, i, d, cap), v.nums):
        out.extend((a * lift).coords(sum(w[s] for s in S) + d + cap * f.degree(w), w) if a else [Fraction(0)] * len(basis))
    return out


@lru_cache(maxsize=None)
def phi_matrix(f: Poly, w: Weights, i: int, d: int, cap: int) -> Matrix:
    """phi_i from (K_i)_d at pole <= cap into (K_{i-1})_d at pole <= cap + 1."""
    deg_f = check_homogeneous(f, w)
    src = chain_piece(f, w, i, d, cap)
    dst = chain_piece(f, w, i - 1, d, cap + 1)
    rows = sum(len(b) for _, b in dst)
    off, pos = {}, 0
    for T, b in dst:
        off[T] = pos
        pos += len(b)
    grads = [partial(f, j) for j in range(w.n)]
    cols = []
    for S, basis in src:
        for m in basis:
            a = Poly.monomial(m)
            col = [0] * rows
            for sign, j, T in faces(S):
                num = f * partial(a, j) - a * grads[j] * cap
                if not num:
                    continue
                idx = monomial_index(d + sum(w[s] for s in T) + (cap + 1) * deg_f, w)
                o = off[T]
                for mono, x in num.terms.items():
                    col[o + idx[mono]] += sign * x
            cols.append(col)
    return Matrix.from_columns(cols, rows)


def embed_coords(coords: Sequence, f: Poly, w: Weights, i: int, d: int, cap_from: int, cap_to: int) -> list[Fraction]:
    """Re-express a pole <= cap_from vector at pole cap_to >= cap_from."""
    if cap_to < cap_from:
        raise ValueError("cannot embed into a smaller cap")
    v = coords_to_vector(coords, f, w, i, d, cap_from)
    return vector_to_coords(v, f, w, i, d, cap_to)


@dataclass
class DeRhamSlice:
    degree: int
    c_z: int
    c_b: int
    phi1: Matrix  # (K_1)_d, pole <= c_z  ->  (K_0)_d, pole <= c_z + 1
    phi2: Matrix  # (K_2)_d, pole <= c_b  ->  (K_1)_d, pole <= c_b + 1
    k1_dim: int
    phi1_top: Matrix  # phi_1 on the pole <= c_b + 1 piece, where phi2 lands

    def composite(self) -> Matrix:
        """phi_1 . phi_2 at the common cap c_b + 1; zero for a complex."""
        return self.phi1_top @ self.phi2


def derham_slice(f: Poly, d: int, c_z: int, c_b: int, w: Weights) -> DeRhamSlice:
    if c_b < c_z:
        raise ValueError("boundary cap must be at least the cycle cap")
    if not f:
        raise ValueError("f must be nonzero")
    return DeRhamSlice(
        d, c_z, c_b,
        phi_matrix(f, w, 1, d, c_z),
        phi_matrix(f, w, 2, d, c_b),
        piece_dim(f, w, 1, d, c_z),
        phi_matrix(f, w, 1, d, c_b + 1),
    )


# -- truncated homology --------------------------------------------------------------

@dataclass
class TruncatedHomology:
    i: int
    degree: int
    c_z: int
    c_b: int
    dim: int
    cycle_dim: int
    cycles: list[FracVector] = field(repr=False)


def truncated_homology(f: Poly, i: int, d: int, c_z: int, c_b: int, w: Weights) -> TruncatedHomology:
    """Cycles of K_i with pole <= c_z modulo boundaries of chains with pole <= c_b."""
    if c_b < c_z:
        raise ValueError("boundary cap must be at least the cycle cap")
    size = piece_dim(f, w, i, d, c_z)
    if size == 0:
        return TruncatedHomology(i, d, c_z, c_b, 0, 0, [])
    if i >= 1:
        cycles = nullspace_basis(phi_matrix(f, w, i, d, c_z))
    else:
        cycles = [[int(k == j) for k in range(size)] for j in range(size)]
    top = c_b + 1
    space = RowSpace(piece_dim(f, w, i, d, top))
    if i + 1 <= w.n:
        space.extend(phi_matrix(f, w, i + 1, d, c_b).columns())
    reps = []
    for z in cycles:
        if space.add(embed_coords(z, f, w, i, d, c_z, top)):
            reps.append(coords_to_vector(z, f, w, i, d, c_z))
    return TruncatedHomology(i, d, c_z, c_b, len(reps), len(cycles), reps)


def truncated_h1(f: Poly, d: int, c_z: int, c_b: int, w: Weights) -> TruncatedHomology:
    return truncated_homology(f, 1, d, c_z, c_b, w)


@dataclass
class Stabilized:
    """Outcome of a cap sweep; ``dim`` is None when no stable run appeared."""

    degree: int
    sequence: tuple[int, ...]
    dim: int | None
    at_cap: int | None
    slack: int

    @property
    def stable(self) -> bool:
        return self.dim is not None

    def to_json(self) -> dict:
        if self.stable:
            return {"status": "value", "dim": self.dim, "at_cap": self.at_cap, "sequence": list(self.sequence), "slack": self.slack}
        return {"status": "unstable", "sequence": list(self.sequence), "slack": self.slack}


def stabilized_homology(f: Poly, d: int, w: Weights, c_max: int = 8, slack: int = 3, runs: int = 3, i: int = 1) -> Stabilized:
    """Sweep caps c = 1..c_max (boundaries at c + slack) until ``runs`` values agree."""
    if runs < 2:
        raise ValueError("need at least two agreeing caps")
    seq = []
    for c in range(1, c_max + 1):
        seq.append(truncated_homology(f, i, d, c, c + slack, w).dim)
        if len(seq) >= runs and len(set(seq[-runs:])) == 1:
            return Stabilized(d, tuple(seq), seq[-1], c, slack)
    return Stabilized(d, tuple(seq), None, None, slack)


def stabilized_h1(f: Poly, d: int, w: Weights, c_max: int = 8, slack: int = 3, runs: int = 3) -> Stabilized:
    return stabilized_homology(f, d, w, c_max, slack, runs, 1)


@dataclass
class ConcentrationReport:
    omega: int
    homology: int
    rows: list[tuple[int, Stabilized, str]]

    @property
    def ok(self) -> bool:
        return all(v in ("vanishes", "reported") for _, _, v in self.rows)

    def to_json(self) -> dict:
        return {
            "omega": self.omega,
            "homology": self.homology,
            "concentrated": self.ok,
            "rows": [{"degree": d, "verdict": v, **s.to_json()} for d, s, v in self.rows],
        }


def concentration_check(f: Poly, degrees: Sequence[int], w: Weights, c_max: int = 8, slack: int = 3, runs: int = 3, i: int = 1) -> ConcentrationReport:
    """Every probed degree other than -omega must stabilize to zero."""
    rows = []
    for d in degrees:
        s = stabilized_homology(f, d, w, c_max, slack, runs, i)
        if d == -w.omega:
            verdict = "reported" if s.stable else "unstable"
        elif not s.stable:
            verdict = "unstable"
        else:
            verdict = "vanishes" if s.dim == 0 else "nonzero"
        rows.append((d, s, verdict))
    return ConcentrationReport(w.omega, i, rows)
