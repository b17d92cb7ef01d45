"""Loading and validation of actor-by-event participation matrices.

The on-disk format is UTF-8 CSV with a mandatory header row::

    actor,e1,e2,...,eK
    a1,11,0,...,0

Each data row holds one actor id followed by K nonnegative numeric cells
(plain or scientific notation). LF and CRLF line endings are both accepted.
Empty cells are rejected rather than imputed as zero.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    DuplicateActorIdError,
    DuplicateEventIdError,
    InputError,
    MissingFileError,
    NegativeCellError,
    NonNumericCellError,
    RaggedRowError,
)


@dataclass(frozen=True)
class ParticipationMatrix:
    """R actors by K events of nonnegative participation counts.

    ``values[i, k]`` is the amount of participation of actor ``i`` in event
    ``k``. Row and column order is meaningful (column order defines the event
    index) and is preserved exactly as constructed. Instances are immutable:
    the value array is frozen, so a matrix can be shared across threads.
    """

    actor_ids: tuple[str, ...]
    event_ids: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        actor_ids = tuple(str(a) for a in self.actor_ids)
        event_ids = tuple(str(e) for e in self.event_ids)
        values = np.array(self.values, dtype=float)

        if len(actor_ids) < 1:
            raise InputError("matrix needs at least one actor")
        if len(event_ids) < 1:
            raise InputError("matrix needs at least one event")
        if values.shape != (len(actor_ids), len(event_ids)):
            raise InputError(
                f"values shape {values.shape} does not match "
                f"{len(actor_ids)} actors x {len(event_ids)} events"
            )
        if len(set(actor_ids)) != len(actor_ids):
            dup = _first_duplicate(actor_ids)
            raise DuplicateActorIdError(f"duplicate actor id {dup!r}")
        if len(set(event_ids)) != len(event_ids):
            dup = _first_duplicate(event_ids)
            raise DuplicateEventIdError(f"duplicate event id {dup!r}")
        if not np.all(np.isfinite(values)):
            i, k = np.argwhere(~np.isfinite(values))[0]
            raise NonNumericCellError(
                f"non-finite value for actor {actor_ids[i]!r}, event {event_ids[k]!r}"
            )
        if np.any(values < 0):
            i, k = np.argwhere(values < 0)[0]
            raise NegativeCellError(
                f"negative value {values[i, k]} for actor {actor_ids[i]!r}, "
                f"event {event_ids[k]!r}"
            )

        values.setflags(write=False)
        object.__setattr__(self, "actor_ids", actor_ids)
        object.__setattr__(self, "event_ids", event_ids)
        object.__setattr__(self, "values", values)

    @property
    def n_actors(self) -> int:
        return len(self.actor_ids)

    @property
    def n_events(self) -> int:
        return len(self.event_ids)


def _first_duplicate(items) -> str:
    seen = set()
    for item in items:
        if item in seen:
            return item
        seen.add(item)
    return items[-1]


def load_csv(path: str | Path) -> ParticipationMatrix:
    """Read and validate a participation matrix from a CSV file.

    Raises :class:`MissingFileError`, :class:`RaggedRowError`,
    :class:`NonNumericCellError`, :class:`NegativeCellError` or
    :class:`DuplicateActorIdError`; each message names the offending
    row and column.
    """
    path = Path(path)
    if not path.is_file():
        raise MissingFileError(f"no such file: {path}")
    with path.open(newline="", encoding="utf-8") as handle:
        return _parse(csv.reader(handle), source=str(path))


def loads_csv(text: str) -> ParticipationMatrix:
    """Parse a participation matrix from CSV text (same rules as load_csv)."""
    return _parse(csv.reader(io.StringIO(text)), source="<string>")


def _parse(reader, source: str) -> ParticipationMatrix:
    try:
        header = next(reader)
    except StopIteration:
        raise InputError(f"{source}: empty file, expected a header row") from None
    if len(header) < 2:
        raise InputError(f"{source}: header must name an actor column and at least one event")
    event_ids = [cell.strip() for cell in header[1:]]
    k_total = len(event_ids)

    actor_ids: list[str] = []
    rows: list[list[float]] = []
    seen: set[str] = set()
    for line_no, row in enumerate(reader, start=2):
        if not row:  # blank line
            continue
        actor = row[0].strip()
        cells = row[1:]
        if len(cells) != k_total:
            raise RaggedRowError(
                f"{source}: row {line_no} ({actor!r}) has {len(cells)} cells, expected {k_total}"
            )
        if actor in seen:
            raise DuplicateActorIdError(f"{source}: row {line_no}: duplicate actor id {actor!r}")
        seen.add(actor)
        parsed = []
        for col, cell in enumerate(cells):
            try:
                value = float(cell)
            except ValueError:
                raise NonNumericCellError(
                    f"{source}: row {line_no} ({actor!r}), column {event_ids[col]!r}: "
                    f"cannot parse {cell!r}"
                ) from None
            if not np.isfinite(value):
                raise NonNumericCellError(
                    f"{source}: row {line_no} ({actor!r}), column {event_ids[col]!r}: "
                    f"non-finite value {cell!r}"
                )
            if value < 0:
                raise NegativeCellError(
                    f"{source}: row {line_no} ({actor!r}), column {event_ids[col]!r}: "
                    f"negative value {cell!r}"
                )
            parsed.append(value)
        actor_ids.append(actor)
        rows.append(parsed)

    if not rows:
        raise InputError(f"{source}: no data rows")
    return ParticipationMatrix(tuple(actor_ids), tuple(event_ids), np.array(rows, dtype=float))


def row_sums(m: ParticipationMatrix) -> np.ndarray:
    """Per-actor total participation over all events (length R)."""
    return m.values.sum(axis=1)


def format_number(value: float) -> str:
    """Render a float compactly: integral values without a decimal point."""
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(float(value))


def write_csv(m: ParticipationMatrix, handle) -> None:
    """Write a matrix as CSV to an open text handle."""
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(["actor", *m.event_ids])
    for i, actor in enumerate(m.actor_ids):
        writer.writerow([actor, *(format_number(v) for v in m.values[i])])


def save_csv(m: ParticipationMatrix, path: str | Path) -> None:
    """Write a matrix back to CSV; integer-valued cells round-trip textually."""
    with Path(path).open("w", newline="", encoding="utf-8") as handle:
        write_csv(m, handle)
