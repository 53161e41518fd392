"""Two-stage projective measurements on the noisy entangled family.

Stage one projects each side onto a retained subspace (kept/"in" versus
rejected/"out"); stage two measures a dichotomic observable on the retained
two-level subspace.  The module provides the post-selected state both by
dense projection (Lueders update restricted to the retained block) and by
its closed form, plus the full joint distribution over both stages and the
conditioning that turns a fixed first-stage branch into a behavior table.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .behavior import BehaviorTable
from .chsh import ChshSettings, DichotomicObservable
from .states import DensityMatrix, max_entangled

BRANCHES = ("in", "out")

# Branch probabilities below this are treated as true zeros, not round-off.
ZERO_BRANCH_TOL = 1e-14


class ZeroProbabilityBranch(ValueError):
    """Conditioning was requested on a branch of (numerically) zero probability."""


@dataclass(frozen=True)
class SubspaceProjector:
    """Diagonal 0/1 projector onto a set of computational basis indices."""

    dim: int
    retained: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError(f"projector dimension must be positive, got {self.dim}")
        indices = tuple(sorted(int(i) for i in self.retained))
        if len(set(indices)) != len(indices):
            raise ValueError("retained indices must be distinct")
        if not indices:
            raise ValueError("projector must retain at least one index")
        if indices[0] < 0 or indices[-1] >= self.dim:
            raise ValueError(f"retained indices {indices} out of range for dim {self.dim}")
        object.__setattr__(self, "retained", indices)

    def matrix(self) -> np.ndarray:
        mat = np.zeros((self.dim, self.dim), dtype=complex)
        mat[self.retained, self.retained] = 1.0
        return mat

    def is_full(self) -> bool:
        return len(self.retained) == self.dim


def first_two_levels(dim: int) -> SubspaceProjector:
    """The projector used throughout: keep basis levels 0 and 1."""
    return SubspaceProjector(dim=dim, retained=(0, 1))


def post_select(
    rho: DensityMatrix,
    proj_a: SubspaceProjector,
    proj_b: SubspaceProjector,
) -> tuple[DensityMatrix, float]:
    """Project both sides, renormalize, and compress to the retained block.

    Returns the conditional state on the retained subspace (ordered by
    retained index, first factor major) together with the success
    probability p = Tr[(Pi_A x Pi_B) rho].
    """
    if rho.dim != proj_a.dim * proj_b.dim:
        raise ValueError(
            f"state dim {rho.dim} does not factor as {proj_a.dim} x {proj_b.dim}"
        )
    keep = [ia * proj_b.dim + ib for ia in proj_a.retained for ib in proj_b.retained]
    block = rho.matrix[np.ix_(keep, keep)]
    prob = float(np.trace(block).real)
    if prob < ZERO_BRANCH_TOL:
        raise ZeroProbabilityBranch(f"projection succeeds with probability {prob}")
    return DensityMatrix(block / prob), prob


def success_probability(n: int, noise: float) -> float:
    """Probability that both sides land in their first two levels.

    Closed form (1 - F) * 2/N + F * 4/N**2: the entangled component keeps 2
    of its N equal-weight terms, white noise keeps 4 of N**2 basis states.
    """
    if n < 2:
        raise ValueError(f"local dimension must be at least 2, got {n}")
    if not 0.0 <= noise <= 1.0:
        raise ValueError(f"noise fraction must lie in [0, 1], got {noise}")
    return (1.0 - noise) * 2.0 / n + noise * 4.0 / (n * n)


def post_selected_closed_form(n: int, noise: float) -> DensityMatrix:
    """Two-qubit conditional state after both first-stage projections succeed.

    Returns v |psi_2><psi_2| + (1 - v) I/4 with v = N(1-F) / (N(1-F) + 2F).
    The identity term is the maximally mixed state of the retained two-qubit
    space, which is what unit trace forces.
    """
    if n < 2:
        raise ValueError(f"local dimension must be at least 2, got {n}")
    if not 0.0 <= noise <= 1.0:
        raise ValueError(f"noise fraction must lie in [0, 1], got {noise}")
    v = n * (1.0 - noise) / (n * (1.0 - noise) + 2.0 * noise)
    psi2 = max_entangled(2)
    mat = v * np.outer(psi2.amplitudes, psi2.amplitudes.conj())
    mat += (1.0 - v) * np.eye(4, dtype=complex) / 4.0
    return DensityMatrix(mat)


@dataclass(frozen=True)
class SequentialJointDistribution:
    """P(a1, b1, a2, b2) per second-stage setting pair.

    Array layout: [x][y][a1][b1][a2][b2] with first-stage index 0 = "in"
    (projection succeeded) and second-stage index 0 = outcome +1.
    """

    probs: np.ndarray

    def __post_init__(self) -> None:
        probs = np.array(self.probs, dtype=float)
        if probs.shape != (2, 2, 2, 2, 2, 2):
            raise ValueError(f"joint distribution must have shape (2,)*6, got {probs.shape}")
        if not np.all(np.isfinite(probs)):
            raise ValueError("joint distribution contains non-finite entries")
        if probs.min() < -1e-10:
            raise ValueError(f"joint distribution has negative entry {probs.min()}")
        probs = np.clip(probs, 0.0, None)
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    def setting_total(self, x: int, y: int) -> float:
        return float(self.probs[x, y].sum())

    def first_stage_marginal(self, first_a: str, first_b: str, x: int = 0, y: int = 0) -> float:
        """P(a1, b1) for one setting pair; identical across settings."""
        a1 = BRANCHES.index(first_a)
        b1 = BRANCHES.index(first_b)
        return float(self.probs[x, y, a1, b1].sum())

    def marginal_spread(self) -> float:
        """Largest variation of a first-stage marginal across setting pairs."""
        marg = self.probs.sum(axis=(4, 5))  # [x][y][a1][b1]
        return float(np.max(marg.max(axis=(0, 1)) - marg.min(axis=(0, 1))))


def _second_stage_projectors(
    proj: SubspaceProjector, observable: DichotomicObservable
) -> tuple[np.ndarray, np.ndarray]:
    """Full-space eigenprojectors of the extended second-stage observable.

    The observable acts on the retained two-level subspace; on the rejected
    complement it is extended as the constant +1, so the +1 projector absorbs
    the complement.  Any fixed extension would do once the analysis
    conditions on the "in" branch; this one is the recorded convention.
    """
    if len(proj.retained) != 2:
        raise ValueError(
            f"second-stage observables need a 2-level retained subspace, got {len(proj.retained)}"
        )
    plus2, minus2 = observable.projectors()
    rows = np.array(proj.retained)
    plus = np.eye(proj.dim, dtype=complex) - proj.matrix()
    minus = np.zeros((proj.dim, proj.dim), dtype=complex)
    plus[np.ix_(rows, rows)] += plus2
    minus[np.ix_(rows, rows)] += minus2
    return plus, minus


def sequential_joint_distribution(
    rho: DensityMatrix,
    proj_a: SubspaceProjector,
    proj_b: SubspaceProjector,
    settings: ChshSettings,
) -> SequentialJointDistribution:
    """Joint outcome law of the two-stage experiment for all setting pairs.

    Stage one measures {Pi, 1 - Pi} on each side (Lueders update); stage two
    measures the extended dichotomic observables.  Per setting pair the 16
    outcome probabilities sum to 1, and the first-stage marginals do not
    depend on the second-stage settings.
    """
    if rho.dim != proj_a.dim * proj_b.dim:
        raise ValueError(
            f"state dim {rho.dim} does not factor as {proj_a.dim} x {proj_b.dim}"
        )
    eye_a = np.eye(proj_a.dim, dtype=complex)
    eye_b = np.eye(proj_b.dim, dtype=complex)
    first_a = (proj_a.matrix(), eye_a - proj_a.matrix())
    first_b = (proj_b.matrix(), eye_b - proj_b.matrix())
    second_a = [_second_stage_projectors(proj_a, obs) for obs in settings.alice()]
    second_b = [_second_stage_projectors(proj_b, obs) for obs in settings.bob()]

    probs = np.zeros((2, 2, 2, 2, 2, 2))
    for a1 in range(2):
        for b1 in range(2):
            stage_one = np.kron(first_a[a1], first_b[b1])
            updated = stage_one @ rho.matrix @ stage_one
            for x in range(2):
                for y in range(2):
                    for a2 in range(2):
                        for b2 in range(2):
                            effect = np.kron(second_a[x][a2], second_b[y][b2])
                            value = np.trace(effect @ updated).real
                            probs[x, y, a1, b1, a2, b2] = float(value)
    return SequentialJointDistribution(probs)


def condition_on_first(
    joint: SequentialJointDistribution, first_a: str = "in", first_b: str = "in"
) -> BehaviorTable:
    """Second-stage behavior table conditioned on a fixed first-stage branch."""
    if first_a not in BRANCHES or first_b not in BRANCHES:
        raise ValueError(f"branch labels must be in {BRANCHES}, got ({first_a!r}, {first_b!r})")
    a1 = BRANCHES.index(first_a)
    b1 = BRANCHES.index(first_b)
    branch = joint.probs[:, :, a1, b1, :, :]  # [x][y][a2][b2]
    marginals = branch.sum(axis=(2, 3))
    if marginals.min() < ZERO_BRANCH_TOL:
        raise ZeroProbabilityBranch(
            f"branch ({first_a}, {first_b}) has probability {marginals.min()}"
        )
    return BehaviorTable(branch / marginals[:, :, None, None])
