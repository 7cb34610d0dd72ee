"""Finite-dimensional graded vector spaces with a degree-zero operator.

The operator stands in for the Euler operator E.  A module is generalized
Eulerian when E - d is nilpotent on each degree-d piece; on a piece of
dimension k that is decided exactly by (E - d)^k = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .linalg import Matrix


@dataclass(frozen=True)
class GradedOpModule:
    pieces: Mapping[int, Matrix]  # degree -> square operator on that piece

    def __post_init__(self):
        for d, op in self.pieces.items():
            if op.rows != op.cols:
                raise ValueError("operator on degree %d is not square" % d)

    def dims(self) -> dict[int, int]:
        return {d: op.rows for d, op in self.pieces.items()}

    @property
    def dim(self) -> int:
        return sum(op.rows for op in self.pieces.values())

    def shift(self, l: int) -> "GradedOpModule":
        """M(l): the piece of degree d moves to degree d - l."""
        return GradedOpModule({d - l: op for d, op in self.pieces.items()})


def nilpotency_index(op: Matrix, d: int) -> int | None:
    """Least a with (op - d)^a = 0, or None when op - d is not nilpotent."""
    n = op.rows
    if n == 0:
        return 0
    shifted = op - Matrix.identity(n).scale(d)
    power = shifted
    for a in range(1, n + 1):
        if power.is_zero():
            return a
        power = power @ shifted
    return None


def is_generalized_eulerian(M: GradedOpModule, k_max: int | None = None) -> bool:
    """Exact test; ``k_max`` only caps how large an exponent is accepted."""
    for d, op in M.pieces.items():
        a = nilpotency_index(op, d)
        if a is None or (k_max is not None and a > k_max):
            return False
    return True


def is_eulerian(M: GradedOpModule) -> bool:
    return all(nilpotency_index(op, d) in (0, 1) for d, op in M.pieces.items())


def extension(M1: GradedOpModule, M3: GradedOpModule, glue: Mapping[int, Matrix]) -> GradedOpModule:
    """M2 = M1 (+) M3 with operator [[E1, glue], [0, E3]] in each degree."""
    pieces = {}
    for d in sorted(set(M1.pieces) | set(M3.pieces) | set(glue)):
        a = M1.pieces.get(d, Matrix.zeros(0, 0))
        b = M3.pieces.get(d, Matrix.zeros(0, 0))
        g = glue.get(d, Matrix.zeros(a.rows, b.rows))
        if (g.rows, g.cols) != (a.rows, b.rows):
            raise ValueError("glue in degree %d must be %dx%d, got %dx%d" % (d, a.rows, b.rows, g.rows, g.cols))
        n1, n3 = a.rows, b.rows
        rows = [list(a.data[i]) + list(g.data[i]) for i in range(n1)]
        rows += [[0] * n1 + list(b.data[i]) for i in range(n3)]
        pieces[d] = Matrix(rows, n1 + n3)
    return GradedOpModule(pieces)


def extension_closure_check(M1: GradedOpModule, M3: GradedOpModule, glue: Mapping[int, Matrix]) -> bool:
    """The extension is generalized Eulerian iff both ends are."""
    M2 = extension(M1, M3, glue)
    return is_generalized_eulerian(M2) == (is_generalized_eulerian(M1) and is_generalized_eulerian(M3))
