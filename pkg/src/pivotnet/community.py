"""Sub-community graphs: thresholded links, dense subgroups, ranking, pivots.

A sub-community at threshold alpha contains a link for every actor pair
whose co-energy reaches alpha; the co-energy becomes the link weight and the
pair's energies bound it. Pair evaluation is embarrassingly parallel, so
large pair sets are split into chunks and merged back in canonical order;
the result is bitwise identical regardless of scheduling.
"""

from __future__ import annotations

from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .energy import energy_profiles
from .errors import EmptySubsetError, IndexOutOfRangeError, InputError, LengthMismatchError
from .ingest import ParticipationMatrix

#: Pair chunks of this size are dispatched to worker threads.
PAIR_CHUNK = 1000


@dataclass(frozen=True)
class Link:
    """Weighted link between actors ``i < j``.

    ``weight`` is the pair's co-energy; ``bounds`` is the closed interval
    [min(E_i, E_j), max(E_i, E_j)]. The weight never exceeds the lower
    endpoint (an intersection cannot outgrow either set), and the link
    survives only while both energies stay inside the interval's envelope.
    """

    i: int
    j: int
    weight: float
    bounds: tuple[float, float]


@dataclass(frozen=True)
class SubCommunity:
    """Nodes and links discovered at one threshold.

    ``nodes`` holds only actors incident to at least one link; actors of the
    considered subset that stay isolated at this alpha are simply absent.
    """

    nodes: frozenset[int]
    links: tuple[Link, ...]
    alpha: float


def discover(m: ParticipationMatrix, dv, alpha: float,
             node_subset=None, *, epsilon: float = 0.0,
             workers: int | None = None) -> SubCommunity:
    """Link every pair of the subset whose co-energy reaches ``alpha``.

    ``node_subset`` restricts the search to a sub-population (default: all
    actors). ``workers`` caps the thread pool used for pair evaluation; the
    outcome does not depend on it.
    """
    if not 0.0 <= alpha <= 1.0:
        raise InputError(f"alpha must lie in [0, 1], got {alpha}")
    if node_subset is None:
        subset = list(range(m.n_actors))
    else:
        subset = sorted(set(int(n) for n in node_subset))
        if not subset:
            raise EmptySubsetError("node subset is empty")
        if subset[0] < 0 or subset[-1] >= m.n_actors:
            raise IndexOutOfRangeError(
                f"node subset contains an index outside 0..{m.n_actors - 1}"
            )

    all_profiles = energy_profiles(m, dv, epsilon=epsilon)
    profiles = {i: all_profiles[i] for i in subset}
    k_total = m.n_events

    pairs = [(a, b) for idx, a in enumerate(subset) for b in subset[idx + 1:]]

    def evaluate(chunk):
        found = []
        for a, b in chunk:
            pa, pb = profiles[a], profiles[b]
            weight = len(pa.ed_set & pb.ed_set) / k_total
            if weight >= alpha:
                lo, hi = sorted((pa.energy, pb.energy))
                found.append(Link(i=a, j=b, weight=weight, bounds=(lo, hi)))
        return found

    chunks = [pairs[start:start + PAIR_CHUNK] for start in range(0, len(pairs), PAIR_CHUNK)]
    if workers is None:
        workers = min(4, len(chunks)) or 1
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(evaluate, chunks))
    else:
        results = [evaluate(chunk) for chunk in chunks]

    links = tuple(link for chunk_links in results for link in chunk_links)
    nodes = frozenset(n for link in links for n in (link.i, link.j))
    return SubCommunity(nodes=nodes, links=links, alpha=alpha)


def dense_subgroups(sc: SubCommunity, eps: float = 1e-9) -> list[frozenset[int]]:
    """Maximal groups of >= 3 mutually linked nodes with equal link weights.

    Every pair inside a group must be linked and all the group's link
    weights must agree within ``eps``; maximal means no further node can
    join without breaking either condition. Groups may overlap. Exhaustive
    enumeration, intended for the small graphs this pipeline produces.

    Sorted by size descending, then lexicographically by member ordinals.
    """
    if eps < 0:
        raise InputError(f"eps must be >= 0, got {eps}")
    adjacency: dict[int, dict[int, float]] = defaultdict(dict)
    for link in sc.links:
        adjacency[link.i][link.j] = link.weight
        adjacency[link.j][link.i] = link.weight

    nodes = sorted(sc.nodes)
    uniform: list[tuple[tuple[int, ...], float, float]] = []

    def grow(members: list[int], wmin: float, wmax: float) -> None:
        if len(members) >= 3:
            uniform.append((tuple(members), wmin, wmax))
        last = members[-1]
        for candidate in nodes:
            if candidate <= last:
                continue
            weights = [adjacency[u].get(candidate) for u in members]
            if any(w is None for w in weights):
                continue
            nmin = min(wmin, min(weights))
            nmax = max(wmax, max(weights))
            if nmax - nmin <= eps:
                grow(members + [candidate], nmin, nmax)

    for link in sc.links:
        a, b = sorted((link.i, link.j))
        grow([a, b], link.weight, link.weight)

    groups = []
    for members, wmin, wmax in uniform:
        member_set = set(members)
        extendable = False
        for candidate in sc.nodes - member_set:
            weights = [adjacency[u].get(candidate) for u in members]
            if any(w is None for w in weights):
                continue
            if max(wmax, max(weights)) - min(wmin, min(weights)) <= eps:
                extendable = True
                break
        if not extendable:
            groups.append(frozenset(members))

    return sorted(groups, key=lambda g: (-len(g), tuple(sorted(g))))


def rank_subcommunities(scs: list[SubCommunity], pivot_counts: list[int]) -> list[int]:
    """Order sub-communities by quality: most pivots first.

    Ties break by node count descending, then by input position. Returns the
    indices of ``scs`` in ranked order.
    """
    if len(scs) != len(pivot_counts):
        raise LengthMismatchError(
            f"{len(scs)} sub-communities but {len(pivot_counts)} pivot counts"
        )
    return sorted(range(len(scs)),
                  key=lambda idx: (-pivot_counts[idx], -len(scs[idx].nodes), idx))


def pivot_centered_groups(sc: SubCommunity,
                          pivots) -> tuple[list[tuple[int, frozenset[int]]], bool]:
    """Partition a sub-community into groups centered on its pivots.

    Applicable only when no two pivots are linked: each pivot then anchors
    the group of itself plus its neighbors. Returns ``(groups, True)`` with
    an empty group list when some pivot pair is linked.
    """
    pivot_set = frozenset(int(p) for p in pivots)
    if not pivot_set <= sc.nodes:
        raise InputError("pivots must be nodes of the sub-community")
    neighbors: dict[int, set[int]] = defaultdict(set)
    for link in sc.links:
        neighbors[link.i].add(link.j)
        neighbors[link.j].add(link.i)

    for p in sorted(pivot_set):
        if neighbors[p] & pivot_set:
            return [], True
    groups = [(p, frozenset({p} | neighbors[p])) for p in sorted(pivot_set)]
    return groups, False


def to_dot(sc: SubCommunity, energies, actor_ids=None) -> str:
    """Render the sub-community as a Graphviz graph.

    Nodes carry their energy, edges their weight (2 decimals, matching the
    reporting convention elsewhere). Output ordering is canonical so equal
    inputs produce identical text.
    """
    label = (lambda n: actor_ids[n]) if actor_ids is not None else (lambda n: str(n))
    lines = ["graph subcommunity {"]
    for node in sorted(sc.nodes):
        lines.append(f'  "{label(node)}" [energy="{energies[node]:.2f}"];')
    for link in sc.links:
        lines.append(f'  "{label(link.i)}" -- "{label(link.j)}" [label="{link.weight:.2f}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
