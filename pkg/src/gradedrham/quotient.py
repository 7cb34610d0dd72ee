"""Graded pieces of the hypersurface ring A = R/(f), one degree at a time."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .linalg import Matrix, RowSpace, reduced_rows
from .polyring import Monomial, Poly, Weights, check_homogeneous, jacobian, monomial_basis


@dataclass(frozen=True)
class HilbertFn:
    lo: int
    hi: int
    dims: tuple[int, ...]

    def __post_init__(self):
        if len(self.dims) != self.hi - self.lo + 1:
            raise ValueError("need one dimension per degree in [%d, %d]" % (self.lo, self.hi))

    def __getitem__(self, d: int) -> int:
        if not self.lo <= d <= self.hi:
            raise KeyError("degree %d outside window [%d, %d]" % (d, self.lo, self.hi))
        return self.dims[d - self.lo]

    def items(self):
        return zip(range(self.lo, self.hi + 1), self.dims)

    def nonzero(self) -> dict[int, int]:
        return {d: v for d, v in self.items() if v}

    def to_json(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "dims": list(self.dims)}

    @classmethod
    def from_json(cls, obj: dict) -> "HilbertFn":
        return cls(int(obj["lo"]), int(obj["hi"]), tuple(int(x) for x in obj["dims"]))


class QuotientBasis:
    """Basis of A_d by monomial representatives plus the reduction onto them.

    The image f*R_{d - deg f} is put in reduced echelon form over the
    monomials of R_d; its pivot monomials are eliminated and the remaining
    monomials represent A_d.
    """

    def __init__(self, f: Poly, d: int, w: Weights):
        self.degree = d
        self.weights = w
        self.monomials = monomial_basis(d, w)
        deg_f = check_homogeneous(f, w)
        space = RowSpace(len(self.monomials))
        for m in monomial_basis(d - deg_f, w):
            space.add((f * Poly.monomial(m)).coords(d, w))
        self._rows = reduced_rows(space.pivots)
        pivots = set(self._rows)
        self.rep_index = [j for j in range(len(self.monomials)) if j not in pivots]
        self.representatives: tuple[Monomial, ...] = tuple(self.monomials[j] for j in self.rep_index)
        self._slot = {j: k for k, j in enumerate(self.rep_index)}
        self._mono_pos = {m: j for j, m in enumerate(self.monomials)}

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def reduce_coords(self, coords: Sequence) -> list[Fraction]:
        v = {j: Fraction(x) for j, x in enumerate(coords) if x}
        return self._finish(v)

    def _finish(self, v: dict[int, Fraction]) -> list[Fraction]:
        for col, row in self._rows.items():
            a = v.get(col)
            if not a:
                continue
            s = a / row[col]
            for j, x in row.items():
                y = v.get(j, 0) - s * x
                if y:
                    v[j] = y
                else:
                    v.pop(j, None)
        out = [Fraction(0)] * self.dim
        for j, x in v.items():
            out[self._slot[j]] = x
        return out

    def reduce(self, p: Poly) -> list[Fraction]:
        """Coordinates of the class of ``p`` (homogeneous of this degree)."""
        v = {}
        for m, c in p.terms.items():
            try:
                v[self._mono_pos[m]] = c
            except KeyError:
                raise ValueError("%s has a term outside degree %d" % (p, self.degree)) from None
        return self._finish(v)

    def lift(self, coords: Sequence, nvars: int) -> Poly:
        return Poly.from_vector(coords, self.representatives, nvars)

    def projection(self) -> Matrix:
        cols = []
        for j in range(len(self.monomials)):
            e = [0] * len(self.monomials)
            e[j] = 1
            cols.append(self.reduce_coords(e))
        return Matrix.from_columns(cols, self.dim)


@lru_cache(maxsize=4096)
def quotient_basis(f: Poly, d: int, w: Weights) -> QuotientBasis:
    if not f:
        raise ValueError("f must be nonzero")
    return QuotientBasis(f, d, w)


def hilbert_function(f: Poly, window: tuple[int, int], w: Weights) -> HilbertFn:
    lo, hi = window
    return HilbertFn(lo, hi, tuple(quotient_basis(f, d, w).dim for d in range(lo, hi + 1)))


@dataclass(frozen=True)
class ResidueCheck:
    """Outcome of scanning dim (R/(gens, f))_d for d = 0..d_max."""

    status: str  # "artinian" or "inconclusive"
    top_degree: int | None
    d_max: int
    dims: tuple[int, ...] = field(repr=False)

    @property
    def is_artinian(self) -> bool:
        return self.status == "artinian"


def residue_dim(gens: Sequence[Poly], d: int, w: Weights) -> int:
    basis = monomial_basis(d, w)
    space = RowSpace(len(basis))
    for g in gens:
        dg = check_homogeneous(g, w)
        if dg is None:
            continue
        for m in monomial_basis(d - dg, w):
            space.add((g * Poly.monomial(m)).coords(d, w))
            if space.dim == len(basis):
                return 0
    return len(basis) - space.dim


def default_d_max(f: Poly, w: Weights) -> int:
    return 4 * check_homogeneous(f, w) + 2 * w.omega


def artinian_residue_check(gens: Sequence[Poly], f: Poly, w: Weights, d_max: int | None = None) -> ResidueCheck:
    """Decide Artinian-ness of R/(gens, f) by a degreewise scan.

    The residue algebra is generated in degrees w_i, so a run of max(w)
    consecutive zero pieces forces every later piece to vanish.  Without such
    a run the answer is "inconclusive", never a hard negative.
    """
    if d_max is None:
        d_max = default_d_max(f, w)
    ideal = [g for g in list(gens) + [f] if g]
    need = max(w.w)
    dims, run, top = [], 0, None
    for d in range(d_max + 1):
        dim = residue_dim(ideal, d, w)
        dims.append(dim)
        if dim:
            run, top = 0, d
        else:
            run += 1
            if run >= need:
                return ResidueCheck("artinian", top, d_max, tuple(dims))
    return ResidueCheck("inconclusive", None, d_max, tuple(dims))


def isolated_singularity_check(f: Poly, w: Weights, d_max: int | None = None) -> ResidueCheck:
    check_homogeneous(f, w)
    return artinian_residue_check(jacobian(f), f, w, d_max)
