"""Dimension bound for H_1(d; R_f) through the Koszul homology of A = R/(f).

Each filtration step F_nu / F_{nu-1} (classes whose best representative has
pole order nu) injects into H_1(df; A) in degree (nu+1) deg f - omega, so the
sum of those Koszul dimensions over nu bounds dim H_1(d; R_f).  Alongside the
bound we compute a truncated De Rham estimate and the filtration itself on the
truncated space; the two numbers are reported side by side, never reconciled.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .derham import (
    FracVector,
    Stabilized,
    coords_to_vector,
    embed_coords,
    normal_form,
    phi_matrix,
    piece_dim,
    stabilized_h1,
    theta,
    vec_add,
    vector_to_coords,
)
from .koszul import class_is_zero, classes_equal, h1_hilbert, koszul_h_dim
from .linalg import RowSpace, nullspace_basis
from .polyring import Poly, Weights, check_homogeneous, format_poly, parse_poly
from .quotient import isolated_singularity_check


class NotIsolatedError(ValueError):
    """The isolated-singularity scan did not certify f."""


@dataclass
class Candidates:
    nu_max: int
    d_top: int | None
    window: tuple[int, int]
    pairs: list[tuple[int, int]]


def candidate_degrees(f: Poly, w: Weights, d_max: int | None = None) -> Candidates:
    deg_f = check_homogeneous(f, w)
    check = isolated_singularity_check(f, w, d_max)
    if not check.is_artinian:
        raise NotIsolatedError("isolated-singularity check inconclusive up to degree %d" % check.d_max)
    lo = deg_f - max(w.w)
    hi = (check.top_degree or 0) + deg_f + max(w.w)
    hf = h1_hilbert(f, (lo, hi), w)
    nz = hf.nonzero()
    d_top = max(nz) if nz else None
    nu_max = 0 if d_top is None else max(0, (d_top + w.omega) // deg_f - 1)
    pairs = [(nu, (nu + 1) * deg_f - w.omega) for nu in range(1, nu_max + 1)]
    return Candidates(nu_max, d_top, (lo, hi), pairs)


@dataclass
class BoundReport:
    f: Poly
    weights: Weights
    deg_f: int
    omega: int
    nu_max: int
    rows: list[tuple[int, int, int]]
    window: tuple[int, int]
    estimate: Stabilized | None = None

    @property
    def bound(self) -> int:
        return sum(h for _, _, h in self.rows)

    @property
    def divergent(self) -> bool | None:
        if self.estimate is None or not self.estimate.stable:
            return None
        return self.estimate.dim != self.bound

    def to_json(self) -> dict[str, Any]:
        return {
            "f": format_poly(self.f),
            "weights": list(self.weights.w),
            "deg_f": self.deg_f,
            "omega": self.omega,
            "nu_max": self.nu_max,
            "scan_window": list(self.window),
            "rows": [{"nu": nu, "degree": d, "h1dim": h} for nu, d, h in self.rows],
            "bound": self.bound,
            "truncated_estimate": None if self.estimate is None else self.estimate.to_json(),
            "divergent": self.divergent,
        }


def theorem2_bound(f: Poly, w: Weights, estimate: bool = False, c_max: int = 8, slack: int = 3, runs: int = 3) -> BoundReport:
    deg_f = check_homogeneous(f, w)
    cand = candidate_degrees(f, w)
    rows = [(nu, d, koszul_h_dim(f, 1, d, w)) for nu, d in cand.pairs]
    est = stabilized_h1(f, -w.omega, w, c_max, slack, runs) if estimate else None
    return BoundReport(f, w, deg_f, w.omega, cand.nu_max, rows, cand.window, est)


# -- pole order of classes and the filtration -------------------------------------

def _boundary_space(f: Poly, w: Weights, c_b: int) -> RowSpace:
    d = -w.omega
    space = RowSpace(piece_dim(f, w, 1, d, c_b + 1))
    if w.n >= 2:
        space.extend(phi_matrix(f, w, 2, d, c_b).columns())
    return space


def _pole_piece(f: Poly, w: Weights, p: int, top: int) -> list[list]:
    """Basis of the pole <= p part of (K_1)_{-omega}, written at pole ``top``."""
    d = -w.omega
    size = piece_dim(f, w, 1, d, p)
    out = []
    for j in range(size):
        e = [0] * size
        e[j] = 1
        out.append(embed_coords(e, f, w, 1, d, p, top))
    return out


def class_L(f: Poly, w: Weights, cycle: FracVector, c_b: int) -> int:
    """Least pole order among representatives cycle + boundary (boundaries capped at c_b)."""
    d, top = -w.omega, c_b + 1
    if cycle.pole > top:
        raise ValueError("cycle pole %d exceeds cap %d" % (cycle.pole, top))
    xi = vector_to_coords(cycle, f, w, 1, d, top)
    space = _boundary_space(f, w, c_b)
    if space.contains(xi):
        raise ValueError("zero class has no pole order")
    for p in range(1, top + 1):
        space.extend(_pole_piece(f, w, p, top))
        if space.contains(xi):
            return p
    raise AssertionError("cycle not reached at its own pole order")


@dataclass
class FiltrationStep:
    nu: int
    jump: int
    reps: list[FracVector] = field(repr=False)
    class_L: list[int]
    image_degree: int
    image_zero: list[bool]
    eta_injective: bool
    well_defined: bool | None


@dataclass
class FiltrationReport:
    f: Poly
    weights: Weights
    estimate: Stabilized
    c_b: int
    f0_zero: bool
    steps: list[FiltrationStep]

    @property
    def total(self) -> int:
        return sum(s.jump for s in self.steps)

    @property
    def exhaustive(self) -> bool:
        return self.estimate.stable and self.total == self.estimate.dim

    def to_json(self) -> dict[str, Any]:
        return {
            "assumption": "filtration computed on the truncated, cap-stabilized H_1 at degree -omega",
            "f": format_poly(self.f),
            "weights": list(self.weights.w),
            "estimate": self.estimate.to_json(),
            "boundary_cap": self.c_b,
            "F0_zero": self.f0_zero,
            "exhaustive": self.exhaustive,
            "steps": [
                {
                    "nu": s.nu,
                    "jump": s.jump,
                    "class_L": s.class_L,
                    "image_degree": s.image_degree,
                    "image_zero": s.image_zero,
                    "eta_injective": s.eta_injective,
                    "well_defined_checked": s.well_defined,
                    "representatives": [str(r) for r in s.reps],
                }
                for s in self.steps
            ],
        }


def _alternate_rep(f: Poly, w: Weights, rep: FracVector, nu: int) -> FracVector | None:
    """rep plus a nonzero boundary of pole <= nu, if one exists."""
    if w.n < 2 or nu < 1:
        return None
    d = -w.omega
    phi2 = phi_matrix(f, w, 2, d, nu - 1)
    for col in phi2.columns():
        if any(col):
            b = coords_to_vector(col, f, w, 1, d, nu)
            return vec_add(rep, b, f)
    return None


def filtration_report(f: Poly, w: Weights, c_max: int = 8, slack: int = 3, runs: int = 3) -> FiltrationReport:
    check_homogeneous(f, w)
    if not isolated_singularity_check(f, w).is_artinian:
        raise NotIsolatedError("filtration needs a certified isolated singularity")
    est = stabilized_h1(f, -w.omega, w, c_max, slack, runs)
    if not est.stable:
        raise ValueError("cap sweep did not stabilize: %s" % (est.sequence,))
    d, c = -w.omega, est.at_cap
    c_b = c + slack
    top = c_b + 1
    deg_f = f.degree(w)
    space = _boundary_space(f, w, c_b)
    f0_zero = piece_dim(f, w, 1, d, 0) == 0 or not nullspace_basis(phi_matrix(f, w, 1, d, 0))
    steps = []
    for nu in range(1, c + 1):
        reps = []
        for z in nullspace_basis(phi_matrix(f, w, 1, d, nu)) if piece_dim(f, w, 1, d, nu) else []:
            if space.add(embed_coords(z, f, w, 1, d, nu, top)):
                reps.append(normal_form(coords_to_vector(z, f, w, 1, d, nu), f))
        if not reps:
            continue
        images = [theta(r, f, w) for r in reps]
        img_deg = (nu + 1) * deg_f - w.omega
        zero = [class_is_zero(f, im, w) for im in images]
        bspace = RowSpace(len(images[0].cycle)).extend(images[0].boundary_basis)
        injective = all(bspace.add(im.cycle) for im in images)
        well = None
        alt = _alternate_rep(f, w, reps[0], nu)
        if alt is not None and normal_form(alt, f).pole == nu:
            well = classes_equal(f, images[0], theta(alt, f, w), w)
        steps.append(
            FiltrationStep(nu, len(reps), reps, [class_L(f, w, r, c_b) for r in reps], img_deg, zero, injective, well)
        )
    return FiltrationReport(f, w, est, c_b, f0_zero, steps)


# -- the hypersurface family x1^2 + ... + x_{n-1}^2 + x_n^m --------------------------

def example_family(n: int, m: int) -> tuple[Poly, Weights]:
    if n < 2 or m < 2:
        raise ValueError("need n >= 2 and m >= 2")
    w = Weights((m,) * (n - 1) + (2,))
    text = " + ".join(["x%d^2" % i for i in range(1, n)] + ["x%d^%d" % (n, m)])
    return parse_poly(text, n), w


def matching_solutions(n: int, m: int, nu_max: int = 10) -> list[tuple[int, int]]:
    """Brute-force (nu, j) with 2 nu m = (n-1) m + 2(j+1), 0 <= j <= m-2."""
    return [
        (nu, j)
        for nu in range(1, nu_max + 1)
        for j in range(0, m - 1)
        if 2 * nu * m == (n - 1) * m + 2 * (j + 1)
    ]


def expected_trichotomy(n: int, m: int) -> str:
    if m % 2 or n % 2:
        return "zero"
    return "at_most_one"


def example01(n: int, m: int, estimate: bool = False, c_max: int = 8) -> dict[str, Any]:
    f, w = example_family(n, m)
    report = theorem2_bound(f, w, estimate=estimate, c_max=c_max)
    trace = []
    for nu, deg, h in report.rows:
        closed = (2 * nu - n + 3) * m - 2
        trace.append({
            "nu": nu,
            "degree": deg,
            "closed_form": closed,
            "closed_form_agrees": deg == closed,
            "matches_series": deg in {2 * m + 2 * k for k in range(m - 1)},
            "h1dim": h,
        })
    verdict = "zero" if report.bound == 0 else ("at_most_one" if report.bound == 1 else "bound_%d" % report.bound)
    out = report.to_json()
    out.update({
        "n": n,
        "m": m,
        "trace": trace,
        "matching_solutions": [list(s) for s in matching_solutions(n, m)],
        "contributing_nu": [nu for nu, _, h in report.rows if h],
        "verdict": verdict,
        "expected": expected_trichotomy(n, m),
        "matches_trichotomy": verdict == expected_trichotomy(n, m),
    })
    return out
