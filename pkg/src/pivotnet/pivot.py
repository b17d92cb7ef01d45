"""Probability-to-possibility conversion and pivot detection.

Node energies are normalized into a probability distribution, which is then
transformed into the unique most specific possibility distribution that
(a) dominates it on every subset of nodes and (b) strictly preserves the
ordering and ties of the probabilities. Under that transform at least one
node always reaches possibility 1, so thresholding at delta = 1 is
guaranteed to single out at least one pivot.

The transform has a closed form: pi_i is the total probability mass of the
atoms whose probability does not exceed p_i (ties contribute fully, which
is what maximizing over all orderings compatible with the ties yields).
Sums use ``math.fsum`` so the result does not depend on summation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCommunityError, InputError, LengthMismatchError

#: Slack used when comparing possibilities against thresholds or bounds.
PI_TOL = 1e-9


@dataclass(frozen=True)
class ProbabilityDistribution:
    """Probabilities over nodes: nonnegative, summing to 1 within 1e-9."""

    p: tuple[float, ...]

    def __post_init__(self) -> None:
        p = tuple(float(v) for v in self.p)
        if not p:
            raise InputError("distribution needs at least one atom")
        if any(v < 0 for v in p):
            raise InputError("probabilities must be nonnegative")
        total = math.fsum(p)
        if abs(total - 1.0) > PI_TOL:
            raise InputError(f"probabilities sum to {total!r}, expected 1")
        object.__setattr__(self, "p", p)

    def __len__(self) -> int:
        return len(self.p)


@dataclass(frozen=True)
class PossibilityDistribution:
    """Plausibility degrees in [0, 1]; measures combine by maximum."""

    pi: tuple[float, ...]

    def __post_init__(self) -> None:
        pi = tuple(float(v) for v in self.pi)
        if not pi:
            raise InputError("distribution needs at least one atom")
        if any(v < -PI_TOL or v > 1.0 + PI_TOL for v in pi):
            raise InputError("possibility degrees must lie in [0, 1]")
        object.__setattr__(self, "pi", pi)

    def __len__(self) -> int:
        return len(self.pi)


def _as_values(dist, attr: str) -> tuple[float, ...]:
    values = getattr(dist, attr, None)
    if values is None:
        values = tuple(float(v) for v in dist)
    return values


def energy_to_probability(energies) -> ProbabilityDistribution:
    """Normalize energies by their sum so they form a probability distribution.

    Raises :class:`DegenerateCommunityError` when every energy is zero.
    Order and ties of the energy vector are preserved exactly.
    """
    values = [float(v) for v in energies]
    if any(v < 0 for v in values):
        raise InputError("energies must be nonnegative")
    total = math.fsum(values)
    if total <= 0:
        raise DegenerateCommunityError("all energies are zero")
    return ProbabilityDistribution(tuple(v / total for v in values))


def probability_to_possibility(p) -> PossibilityDistribution:
    """Most specific possibility distribution dominating ``p``.

    pi_i = sum of all p_j with p_j <= p_i. This keeps the exact order and
    ties of ``p``, dominates it on every subset, assigns possibility 1 to
    the most probable atom(s), and is pointwise minimal among distributions
    doing all of the above.
    """
    values = _as_values(p, "p")
    pi = tuple(math.fsum(q for q in values if q <= v) for v in values)
    return PossibilityDistribution(pi)


def detect_pivots(pi, delta: float = 1.0) -> frozenset[int]:
    """Nodes whose possibility degree reaches ``delta`` (within 1e-9).

    With the default delta of 1 the result is never empty for a valid
    distribution: the top atom always has possibility 1.
    """
    if not 0.0 < delta <= 1.0:
        raise InputError(f"delta must lie in (0, 1], got {delta}")
    values = _as_values(pi, "pi")
    return frozenset(i for i, v in enumerate(values) if v >= delta - PI_TOL)


def dominance_check(p, pi, *, exhaustive_limit: int = 20, samples: int = 100_000,
                    seed: int = 0) -> tuple[bool, tuple[int, ...] | None]:
    """Verify that the possibility measure dominates the probability measure.

    For every checked subset A, sum(p over A) must not exceed max(pi over A)
    by more than 1e-9. All 2^n - 1 nonempty subsets are checked when
    n <= ``exhaustive_limit``; beyond that, ``samples`` random subsets drawn
    from a seeded generator are checked instead.

    Returns ``(True, None)`` or ``(False, first_violating_subset)`` with the
    subset as sorted 0-based indices (smallest bitmask first in the
    exhaustive regime).
    """
    p_values = np.asarray(_as_values(p, "p"))
    pi_values = np.asarray(_as_values(pi, "pi"))
    if p_values.shape != pi_values.shape:
        raise LengthMismatchError(
            f"{p_values.shape} probabilities vs {pi_values.shape} possibilities"
        )
    n = len(p_values)

    if n <= exhaustive_limit:
        # sums[mask] / maxes[mask] over all subsets, built by doubling.
        sums = np.zeros(1)
        maxes = np.full(1, -np.inf)
        for i in range(n):
            sums = np.concatenate([sums, sums + p_values[i]])
            maxes = np.concatenate([maxes, np.maximum(maxes, pi_values[i])])
        bad = np.nonzero(sums > maxes + PI_TOL)[0]
        if bad.size == 0:
            return True, None
        mask = int(bad[0])
        return False, tuple(i for i in range(n) if mask >> i & 1)

    rng = np.random.default_rng(seed)
    members = rng.random((samples, n)) < 0.5
    empty = ~members.any(axis=1)
    members[empty, 0] = True
    sums = members @ p_values
    maxes = np.where(members, pi_values, -np.inf).max(axis=1)
    bad = np.nonzero(sums > maxes + PI_TOL)[0]
    if bad.size == 0:
        return True, None
    return False, tuple(int(i) for i in np.nonzero(members[bad[0]])[0])


def order_preservation_check(p, pi) -> bool:
    """True iff ``pi`` reproduces the strict order and ties of ``p`` exactly."""
    p_values = np.asarray(_as_values(p, "p"))
    pi_values = np.asarray(_as_values(pi, "pi"))
    if p_values.shape != pi_values.shape:
        raise LengthMismatchError(
            f"{p_values.shape} probabilities vs {pi_values.shape} possibilities"
        )
    p_signs = np.sign(p_values[:, None] - p_values[None, :])
    pi_signs = np.sign(pi_values[:, None] - pi_values[None, :])
    return bool(np.array_equal(p_signs, pi_signs))


@dataclass(frozen=True)
class PivotRow:
    """One node of a pivot report; ``nbe`` is None in direct-probability mode."""

    node_id: str
    nbe: float | None
    p: float
    pi: float
    is_pivot: bool


@dataclass(frozen=True)
class PivotReport:
    """Per-node probabilities, possibilities and pivot flags."""

    rows: tuple[PivotRow, ...]
    delta: float

    @property
    def pivots(self) -> tuple[str, ...]:
        return tuple(row.node_id for row in self.rows if row.is_pivot)


def pivot_report(node_ids, p, *, nbe=None, delta: float = 1.0) -> PivotReport:
    """Assemble a pivot report from node ids and their probabilities."""
    dist = p if isinstance(p, ProbabilityDistribution) else ProbabilityDistribution(tuple(p))
    ids = [str(n) for n in node_ids]
    if len(ids) != len(dist):
        raise LengthMismatchError(f"{len(ids)} node ids but {len(dist)} probabilities")
    if nbe is not None and len(nbe) != len(ids):
        raise LengthMismatchError(f"{len(ids)} node ids but {len(nbe)} totals")
    pi = probability_to_possibility(dist)
    pivots = detect_pivots(pi, delta)
    rows = tuple(
        PivotRow(
            node_id=ids[i],
            nbe=None if nbe is None else float(nbe[i]),
            p=dist.p[i],
            pi=pi.pi[i],
            is_pivot=i in pivots,
        )
        for i in range(len(ids))
    )
    return PivotReport(rows=rows, delta=delta)
