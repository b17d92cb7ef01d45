"""Command-line surface: ingestion -> decision variable -> energies ->
sub-communities -> pivots, with JSON/DOT/TSV exports.

Exit codes:
    0  success
    2  input validation failure (bad file, bad cells, bad flags)
    3  degenerate matrix (single actor with the eigen-model method)
    4  degenerate community (all energies zero)
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from . import community, ingest, klt
from .energy import energy_profiles, pair_overlap_table, write_overlap_tsv
from .pivot import (
    PivotReport,
    detect_pivots,
    energy_to_probability,
    pivot_report,
    probability_to_possibility,
)
from .errors import (
    DegenerateCommunityError,
    DegenerateMatrixError,
    IndexOutOfRangeError,
    InputError,
    MissingFileError,
    PivotnetError,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DEGENERATE_MATRIX = 3
EXIT_DEGENERATE_COMMUNITY = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pivotnet",
        description="Discover sub-communities and pivots in an actor-by-event "
                    "participation matrix.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    detect = sub.add_parser("detect", help="build the thresholded sub-community graph")
    _matrix_options(detect)
    detect.add_argument("--alpha", type=float, default=0.5,
                        help="co-energy threshold for links (default 0.5)")
    detect.add_argument("--delta", type=float, default=1.0,
                        help="possibility threshold for pivot flags (default 1)")
    detect.add_argument("--eps-dense", type=float, default=1e-9,
                        help="weight-equality tolerance for dense subgroups (default 1e-9)")
    detect.add_argument("--json", metavar="PATH",
                        help="write the graph JSON here (default: stdout)")
    detect.add_argument("--dot", metavar="PATH", help="also write a Graphviz DOT file")
    detect.set_defaults(func=cmd_detect)

    pivots = sub.add_parser("pivots", help="probability/possibility table and pivot flags")
    _matrix_options(pivots, required=False)
    pivots.add_argument("--probabilities", metavar="PATH",
                        help="skip the energy chain and read a probability vector "
                             "(CSV, one row or one column)")
    pivots.add_argument("--delta", type=float, default=1.0,
                        help="possibility threshold (default 1)")
    pivots.add_argument("--tsv", metavar="PATH",
                        help="write the pivot table here (default: stdout)")
    pivots.set_defaults(func=cmd_pivots)

    report = sub.add_parser("report", help="human-readable summary of one analysis")
    _matrix_options(report)
    report.add_argument("--alpha", type=float, default=0.5)
    report.add_argument("--delta", type=float, default=1.0)
    report.add_argument("--eps-dense", type=float, default=1e-9)
    report.add_argument("--pair", metavar="I,J",
                        help="also export the per-event overlap table for this actor pair")
    report.add_argument("--tsv", metavar="PATH",
                        help="destination for the --pair overlap table")
    report.set_defaults(func=cmd_report)

    fixture = sub.add_parser("fixture", help="generate a random participation matrix CSV")
    fixture.add_argument("--rows", type=int, default=10)
    fixture.add_argument("--cols", type=int, default=15)
    fixture.add_argument("--seed", type=int, default=0)
    fixture.add_argument("--output", metavar="PATH", help="default: stdout")
    fixture.set_defaults(func=cmd_fixture)

    return parser


def _matrix_options(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--input", metavar="PATH", required=required,
                        help="participation matrix CSV")
    parser.add_argument("--dv-method", choices=klt.DV_METHODS, default="klt",
                        help="decision variable construction (default klt)")
    parser.add_argument("--beta", type=float, default=0.95,
                        help="variance fraction for component selection (default 0.95)")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MissingFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DegenerateMatrixError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE_MATRIX
    except DegenerateCommunityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE_COMMUNITY
    except (InputError, IndexOutOfRangeError, PivotnetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def _analyze(args):
    """Shared pipeline front: matrix, decision variable, energies."""
    m = ingest.load_csv(args.input)
    dv = klt.decision_variable(m, method=args.dv_method, beta=args.beta)
    profiles = energy_profiles(m, dv)
    return m, dv, profiles


def cmd_detect(args) -> int:
    m, dv, profiles = _analyze(args)
    energies = [prof.energy for prof in profiles]
    sc = community.discover(m, dv, args.alpha)
    dense = community.dense_subgroups(sc, args.eps_dense)

    p = energy_to_probability(energies)
    pi = probability_to_possibility(p)
    pivots = detect_pivots(pi, args.delta)

    doc = {
        "params": {
            "input": str(args.input),
            "alpha": args.alpha,
            "delta": args.delta,
            "dv_method": args.dv_method,
            "beta": args.beta,
            "eps_dense": args.eps_dense,
        },
        "nodes": [
            {
                "id": m.actor_ids[i],
                "energy": energies[i],
                "p": p.p[i],
                "pi": pi.pi[i],
                "pivot": i in pivots,
            }
            for i in range(m.n_actors)
        ],
        "links": [
            {
                "source": m.actor_ids[link.i],
                "target": m.actor_ids[link.j],
                "weight": link.weight,
                "bounds": [link.bounds[0], link.bounds[1]],
            }
            for link in sc.links
        ],
        "dense_subgroups": [[m.actor_ids[n] for n in sorted(group)] for group in dense],
        "isolated": [m.actor_ids[i] for i in range(m.n_actors) if i not in sc.nodes],
    }
    jsonschema.validate(doc, load_graph_schema())

    text = json.dumps(doc, indent=2) + "\n"
    if args.json:
        Path(args.json).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)

    if args.dot:
        Path(args.dot).write_text(
            community.to_dot(sc, energies, m.actor_ids), encoding="utf-8")
    return EXIT_OK


def cmd_pivots(args) -> int:
    if args.probabilities and args.input:
        raise InputError("use either --input or --probabilities, not both")
    if args.probabilities:
        values = load_probability_csv(args.probabilities)
        ids = [f"a{i + 1}" for i in range(len(values))]
        report = pivot_report(ids, values, nbe=None, delta=args.delta)
    elif args.input:
        m, dv, profiles = _analyze(args)
        energies = [prof.energy for prof in profiles]
        p = energy_to_probability(energies)
        report = pivot_report(m.actor_ids, p, nbe=ingest.row_sums(m), delta=args.delta)
    else:
        raise InputError("one of --input or --probabilities is required")

    if args.tsv:
        with open(args.tsv, "w", newline="", encoding="utf-8") as handle:
            write_pivot_tsv(report, handle)
    else:
        write_pivot_tsv(report, sys.stdout)
    return EXIT_OK


def write_pivot_tsv(report: PivotReport, handle) -> None:
    """Two-decimal display columns plus full-precision sidecar columns."""
    writer = csv.writer(handle, delimiter="\t", lineterminator="\n")
    writer.writerow(["id", "nbe", "p", "pi", "pivot", "p_full", "pi_full"])
    for row in report.rows:
        writer.writerow([
            row.node_id,
            "" if row.nbe is None else ingest.format_number(row.nbe),
            f"{row.p:.2f}",
            f"{row.pi:.2f}",
            "Y" if row.is_pivot else "N",
            repr(row.p),
            repr(row.pi),
        ])


def cmd_report(args) -> int:
    m, dv, profiles = _analyze(args)
    energies = [prof.energy for prof in profiles]
    sc = community.discover(m, dv, args.alpha)
    dense = community.dense_subgroups(sc, args.eps_dense)
    p = energy_to_probability(energies)
    pi = probability_to_possibility(p)
    pivots = sorted(detect_pivots(pi, args.delta))
    nbe = ingest.row_sums(m)
    out = sys.stdout

    print(f"input: {args.input} ({m.n_actors} actors, {m.n_events} events)", file=out)
    print(f"decision variable: method={dv.method} retained={dv.retained} beta={dv.beta}",
          file=out)
    print("nbe: " + " ".join(ingest.format_number(v) for v in nbe), file=out)
    print("energies: " + " ".join(
        f"{m.actor_ids[i]}={energies[i]:.2f}" for i in range(m.n_actors)), file=out)

    if sc.links:
        print(f"links (alpha={args.alpha:g}): {len(sc.links)}", file=out)
        for link in sc.links:
            print(f"  {m.actor_ids[link.i]} -- {m.actor_ids[link.j]}"
                  f" weight={link.weight:.2f}"
                  f" bounds=[{link.bounds[0]:.2f}, {link.bounds[1]:.2f}]", file=out)
    else:
        print(f"links (alpha={args.alpha:g}): no links", file=out)

    if dense:
        print("dense subgroups (eps=%g):" % args.eps_dense, file=out)
        for group in dense:
            print("  {" + ", ".join(m.actor_ids[n] for n in sorted(group)) + "}", file=out)
    else:
        print("dense subgroups (eps=%g): none" % args.eps_dense, file=out)

    isolated = [m.actor_ids[i] for i in range(m.n_actors) if i not in sc.nodes]
    print("isolated: " + (" ".join(isolated) if isolated else "none"), file=out)
    print(f"pivots (delta={args.delta:g}): "
          + " ".join(m.actor_ids[i] for i in pivots), file=out)

    linked_pivots = [i for i in pivots if i in sc.nodes]
    outside = [m.actor_ids[i] for i in pivots if i not in sc.nodes]
    if outside:
        print("pivots without links at this alpha: " + " ".join(outside), file=out)
    groups, pivots_linked = community.pivot_centered_groups(sc, linked_pivots)
    if pivots_linked:
        print("pivot-centered groups: pivots are linked to each other; no partition",
              file=out)
    elif groups:
        print("pivot-centered groups:", file=out)
        induced = [_induced_subcommunity(sc, members) for _, members in groups]
        order = community.rank_subcommunities(induced, [1] * len(induced))
        for rank, idx in enumerate(order, start=1):
            center, members = groups[idx]
            print(f"  {rank}. center {m.actor_ids[center]}: "
                  + " ".join(m.actor_ids[n] for n in sorted(members)), file=out)
    else:
        print("pivot-centered groups: none", file=out)

    if args.pair:
        if not args.tsv:
            raise InputError("--pair requires --tsv for the overlap table destination")
        i, j = _resolve_pair(args.pair, m)
        records = pair_overlap_table(m, dv, i, j)
        write_overlap_tsv(records, args.tsv)
        print(f"pair overlap table for {m.actor_ids[i]},{m.actor_ids[j]}: {args.tsv}",
              file=out)
    return EXIT_OK


def _induced_subcommunity(sc: community.SubCommunity, members) -> community.SubCommunity:
    links = tuple(l for l in sc.links if l.i in members and l.j in members)
    nodes = frozenset(n for l in links for n in (l.i, l.j))
    return community.SubCommunity(nodes=nodes, links=links, alpha=sc.alpha)


def _resolve_pair(spec: str, m: ingest.ParticipationMatrix) -> tuple[int, int]:
    parts = [part.strip() for part in spec.split(",")]
    if len(parts) != 2:
        raise InputError(f"--pair expects two comma-separated actors, got {spec!r}")
    resolved = []
    for part in parts:
        if part in m.actor_ids:
            resolved.append(m.actor_ids.index(part))
        else:
            try:
                ordinal = int(part)
            except ValueError:
                raise InputError(f"unknown actor {part!r}") from None
            if not 1 <= ordinal <= m.n_actors:
                raise IndexOutOfRangeError(f"actor position {ordinal} outside 1..{m.n_actors}")
            resolved.append(ordinal - 1)
    return resolved[0], resolved[1]


def load_probability_csv(path: str | Path) -> tuple[float, ...]:
    """Read a probability vector: one CSV row, or one value per line.

    Vectors not summing to 1 are renormalized; a warning is printed when the
    deviation exceeds 1e-6.
    """
    path = Path(path)
    if not path.is_file():
        raise MissingFileError(f"no such file: {path}")
    with path.open(newline="", encoding="utf-8") as handle:
        rows = [row for row in csv.reader(handle) if row and any(c.strip() for c in row)]
    if not rows:
        raise InputError(f"{path}: no values")
    if len(rows) == 1:
        cells = rows[0]
    else:
        if any(len(row) != 1 for row in rows):
            raise InputError(f"{path}: expected a single row or a single column of values")
        cells = [row[0] for row in rows]
    try:
        values = [float(cell) for cell in cells]
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None
    if any(v < 0 for v in values):
        raise InputError(f"{path}: probabilities must be nonnegative")
    total = math.fsum(values)
    if total <= 0:
        raise InputError(f"{path}: probabilities sum to {total}, nothing to normalize")
    if abs(total - 1.0) > 1e-6:
        print(f"warning: probabilities sum to {total!r}; renormalizing", file=sys.stderr)
    if abs(total - 1.0) > 1e-9:
        values = [v / total for v in values]
    return tuple(values)


def cmd_fixture(args) -> int:
    if args.rows < 1 or args.cols < 1:
        raise InputError("fixture needs at least 1 row and 1 column")
    rng = np.random.default_rng(args.seed)
    values = rng.poisson(1.5, size=(args.rows, args.cols))
    m = ingest.ParticipationMatrix(
        actor_ids=tuple(f"a{i + 1}" for i in range(args.rows)),
        event_ids=tuple(f"e{k + 1}" for k in range(args.cols)),
        values=values.astype(float),
    )
    if args.output:
        ingest.save_csv(m, args.output)
    else:
        ingest.write_csv(m, sys.stdout)
    return EXIT_OK


def load_graph_schema() -> dict:
    text = resources.files("pivotnet.schemas").joinpath("graph.schema.json").read_text("utf-8")
    return json.loads(text)


def scenario_a_path() -> Path:
    """Path of the packaged 10x15 sample participation matrix."""
    return Path(str(resources.files("pivotnet.data").joinpath("scenario_a_participation.csv")))


if __name__ == "__main__":
    sys.exit(main())
