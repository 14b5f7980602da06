r"""A generator that finds Von Neumann families by alternating projections.

Blocks are handled in the apparatus eigenbasis, `W_i = B^\dagger V_i B`, where
the Von Neumann condition says that column `k` of `W_j` is orthogonal to column
`k` of every other block.  Starting from Haar-random blocks each sweep visits
every block `W_j` in turn and

a) projects each column `k` of `W_j` onto the orthogonal complement of the
   columns `k` of all other blocks,
b) re-unitarizes `W_j` with the unitary factor of its polar decomposition.

Sweeps stop when the Von Neumann defect falls below the threshold or the sweep
cap is reached.
"""

from typing import List

import numpy as np
import scipy.linalg

from .interactions import InteractionUnitary, von_neumann_defect
from .linalg import ComplexMatrix, dagger, random_unitary
from .util import VON_NEUMANN_TOL, NoFamilyFoundError, debug
from . import generator, util

MAX_SWEEPS = 10_000


class Generator(generator.Generator):
    """Generates Von Neumann families by alternating projections."""

    name = "ProjectionSearch"

    def __init__(
        self, max_sweeps: int = MAX_SWEEPS, threshold: float = VON_NEUMANN_TOL
    ):
        super().__init__()
        self.max_sweeps = max_sweeps
        self.threshold = threshold
        self.sweeps = 0
        """The number of sweeps the last call to generate() used."""
        self.defect = np.inf
        """The Von Neumann defect reached by the last call to generate()."""

    @staticmethod
    def project_columns(blocks: List[ComplexMatrix], j: int) -> ComplexMatrix:
        """Project the columns of block `j` away from the other blocks' columns."""
        w = blocks[j].copy()
        for k in range(w.shape[1]):
            others = np.stack([b[:, k] for i, b in enumerate(blocks) if i != j], axis=1)
            span = scipy.linalg.orth(others)
            w[:, k] -= span @ (dagger(span) @ w[:, k])
        return w

    def sweep(self, blocks: List[ComplexMatrix]) -> None:
        """Run one Gauss-Seidel sweep over all blocks in place."""
        for j in range(len(blocks)):
            projected = self.project_columns(blocks, j)
            blocks[j], _ = scipy.linalg.polar(projected)

    def generate(self, d: int, rng: np.random.Generator) -> InteractionUnitary:
        basis = random_unitary(d, rng)
        blocks = [random_unitary(d, rng) for _ in range(d)]
        identity = np.eye(d)

        self.defect = von_neumann_defect(blocks, identity)
        self.sweeps = 0
        while self.defect > self.threshold:
            if self.sweeps >= self.max_sweeps:
                raise NoFamilyFoundError(self.defect, self.sweeps)
            self.sweep(blocks)
            self.sweeps += 1
            self.defect = von_neumann_defect(blocks, identity)

            if self.progress and self.sweeps % self.progress_tick == 0:
                self.progress(self.sweeps, self.defect)
            if __debug__ and util.DEBUG:
                debug("sweep %d defect %.3g", self.sweeps, self.defect)

        if __debug__ and util.DEBUG:
            debug("converged after %d sweeps, defect %.3g", self.sweeps, self.defect)

        return InteractionUnitary(
            [basis @ w @ dagger(basis) for w in blocks], pointer_basis=basis
        )
