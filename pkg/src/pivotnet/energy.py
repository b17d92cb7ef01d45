"""Per-actor energy sets, total energies and pairwise co-energies.

An actor's energy set collects the events where its participation meets or
exceeds the decision variable; its energy is the fraction of events in that
set. The co-energy of two actors is the fraction of events they both meet,
which later becomes a link weight. Comparisons are exact by default; pass
``epsilon`` > 0 to admit values falling short of the reference by at most
that amount (useful for noisy measurements).

Event indices are 0-based in memory and 1-based in every textual output.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import IndexOutOfRangeError, InputError, LengthMismatchError
from .ingest import ParticipationMatrix
from .klt import as_dv_vector


@dataclass(frozen=True)
class EnergyProfile:
    """Energy set and total energy of one actor."""

    actor_index: int
    ed_set: frozenset[int]
    energy: float


@dataclass(frozen=True)
class CoEnergyMatrix:
    """Symmetric R x R grid of co-energies; the diagonal holds the energies."""

    ced: np.ndarray

    def __post_init__(self) -> None:
        ced = np.asarray(self.ced, dtype=float).copy()
        ced.setflags(write=False)
        object.__setattr__(self, "ced", ced)

    @property
    def energies(self) -> np.ndarray:
        return np.diagonal(self.ced)


def energy_set(x, dv, *, epsilon: float = 0.0) -> frozenset[int]:
    """Indices of events where the actor meets the decision variable.

    Membership is ``x[k] >= dv[k] - epsilon``; equality counts. With the
    default ``epsilon`` of 0 the comparison is exact on the stored reals.
    """
    x = np.asarray(x, dtype=float)
    reference = as_dv_vector(dv)
    if x.shape != reference.shape:
        raise LengthMismatchError(
            f"actor row has {x.shape} entries but the decision variable has {reference.shape}"
        )
    if epsilon < 0:
        raise InputError(f"epsilon must be >= 0, got {epsilon}")
    hits = np.nonzero(x >= reference - epsilon)[0]
    return frozenset(int(k) for k in hits)


def energy(ed: frozenset[int], k_total: int) -> float:
    """Total energy: fraction of the K events present in the energy set."""
    if k_total < 1:
        raise InputError(f"k_total must be >= 1, got {k_total}")
    if ed and not all(0 <= k < k_total for k in ed):
        raise InputError("energy set contains an index outside 0..K-1")
    return len(ed) / k_total


def co_energy(ed_i: frozenset[int], ed_j: frozenset[int], k_total: int) -> float:
    """Fraction of events where both actors meet the decision variable."""
    if k_total < 1:
        raise InputError(f"k_total must be >= 1, got {k_total}")
    return len(frozenset(ed_i) & frozenset(ed_j)) / k_total


def energy_profiles(m: ParticipationMatrix, dv, *, epsilon: float = 0.0) -> list[EnergyProfile]:
    """Energy set and energy of every actor against one decision variable."""
    k = m.n_events
    profiles = []
    for i in range(m.n_actors):
        ed = energy_set(m.values[i], dv, epsilon=epsilon)
        profiles.append(EnergyProfile(actor_index=i, ed_set=ed, energy=len(ed) / k))
    return profiles


def co_energy_matrix(m: ParticipationMatrix, dv, *, epsilon: float = 0.0) -> CoEnergyMatrix:
    """All pairwise co-energies at once.

    Computed from the boolean hit matrix, so entries are exact multiples of
    1/K and the result is exactly symmetric with the energies on the
    diagonal.
    """
    reference = as_dv_vector(dv)
    if reference.shape != (m.n_events,):
        raise LengthMismatchError(
            f"decision variable has {reference.shape} entries, expected {(m.n_events,)}"
        )
    if epsilon < 0:
        raise InputError(f"epsilon must be >= 0, got {epsilon}")
    hits = (m.values >= reference - epsilon).astype(np.int64)
    counts = hits @ hits.T
    return CoEnergyMatrix(ced=counts / m.n_events)


class OverlapRecord(NamedTuple):
    """One event in a pairwise comparison; ``event_index`` is 1-based."""

    event_index: int
    x_i: float
    x_j: float
    dv: float
    both_exceed: bool


def pair_overlap_table(m: ParticipationMatrix, dv, i: int, j: int,
                       *, epsilon: float = 0.0) -> list[OverlapRecord]:
    """Per-event breakdown of how a pair of actors meets the decision variable.

    ``both_exceed`` marks the events counted by the pair's co-energy, i.e.
    the plot-ready view of a single link's support.
    """
    for idx in (i, j):
        if not 0 <= idx < m.n_actors:
            raise IndexOutOfRangeError(f"actor index {idx} outside 0..{m.n_actors - 1}")
    if i == j:
        raise InputError("pair requires two distinct actors")
    reference = as_dv_vector(dv)
    ed_i = energy_set(m.values[i], reference, epsilon=epsilon)
    ed_j = energy_set(m.values[j], reference, epsilon=epsilon)
    both = ed_i & ed_j
    return [
        OverlapRecord(
            event_index=k + 1,
            x_i=float(m.values[i, k]),
            x_j=float(m.values[j, k]),
            dv=float(reference[k]),
            both_exceed=k in both,
        )
        for k in range(m.n_events)
    ]


def write_overlap_tsv(records: list[OverlapRecord], path) -> None:
    """Write a pair overlap table as TSV (columns match OverlapRecord)."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, delimiter="\t", lineterminator="\n")
        writer.writerow(["event_index", "x_i", "x_j", "dv", "both_exceed"])
        for rec in records:
            writer.writerow([
                rec.event_index,
                repr(rec.x_i),
                repr(rec.x_j),
                repr(rec.dv),
                "true" if rec.both_exceed else "false",
            ])
