"""Clusters, seeds, mutation and exchange graphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .cartan import ExchangeMatrix, Matrix
from .errors import (
    DisconnectedDiagram,
    IndexOutOfRange,
    InternalInconsistency,
    MatrixDiagramMismatch,
    MaximalityAnomaly,
    PathDependence,
)
from .roots import CompatibilityTable, Root, RootSystem, compatibility_table, negative_simple


@dataclass(frozen=True)
class Seed:
    """A cluster (indexed by position) together with an aligned exchange matrix."""

    cluster: tuple[Root, ...]
    matrix: ExchangeMatrix

    def __post_init__(self):
        object.__setattr__(self, "cluster", tuple(tuple(r) for r in self.cluster))
        if len(self.cluster) != self.matrix.n:
            raise ValueError("cluster size does not match matrix size")

    @property
    def n(self) -> int:
        return len(self.cluster)

    def canonical(self) -> "Seed":
        order = sorted(range(self.n), key=lambda p: self.cluster[p])
        if order == list(range(self.n)):
            return self
        return Seed(tuple(self.cluster[p] for p in order), self.matrix.permuted(order))

    def is_canonical(self) -> bool:
        return list(self.cluster) == sorted(self.cluster)


def is_cluster(rs: RootSystem, table: CompatibilityTable, roots: Iterable[Root]) -> bool:
    """True iff the roots are pairwise compatible (both orders) and there are n of them."""
    idx = [rs.index_of(r) for r in roots]
    if len(set(idx)) != len(idx) or len(idx) != rs.n:
        return False
    return all(table.compatible(a, b) for k, a in enumerate(idx) for b in idx[k + 1:])


def is_realization(rs: RootSystem, b: ExchangeMatrix) -> bool:
    c = rs.cartan
    return b.n == c.n and all(
        abs(b[i][j]) == -c[i][j] for i in range(c.n) for j in range(c.n) if i != j)


def initial_seed(rs: RootSystem, b: ExchangeMatrix) -> Seed:
    """Negative simple roots in vertex order, with ``b`` as exchange matrix."""
    if not is_realization(rs, b):
        raise MatrixDiagramMismatch(f"{b.entries} does not realize the diagram of {rs.cartan.entries}")
    return Seed(tuple(negative_simple(rs.n, i) for i in range(rs.n)), b)


def mutate_entries(m: Matrix, k: int) -> Matrix:
    n = len(m)
    if not 0 <= k < n:
        raise IndexOutOfRange(f"direction {k + 1} outside 1..{n}")
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == k or j == k:
                row.append(-m[i][j])
                continue
            # the numerator is 0 or 2*b_ik*b_kj, so the division is exact
            row.append(m[i][j] + (m[i][k] * abs(m[k][j]) + abs(m[i][k]) * m[k][j]) // 2)
        out.append(tuple(row))
    return tuple(out)


def mutate_matrix(b: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """Matrix mutation at ``k`` (0-based)."""
    return ExchangeMatrix(mutate_entries(b.entries, k))


def exchange_partner(rs: RootSystem, table: CompatibilityTable, cluster: Sequence[Root], k: int) -> Root:
    """The unique root that can replace ``cluster[k]``."""
    if not 0 <= k < len(cluster):
        raise IndexOutOfRange(f"position {k + 1} outside 1..{len(cluster)}")
    idx = [rs.index_of(r) for r in cluster]
    old = idx[k]
    rest = idx[:k] + idx[k + 1:]
    members = set(idx)
    candidates = [g for g in range(len(rs))
                  if g not in members and all(table.compatible(g, r) for r in rest)]
    if len(candidates) != 1:
        found = [rs.almost_positives[g] for g in candidates]
        raise InternalInconsistency(
            f"expected one exchange partner for {cluster[k]} in {tuple(cluster)}, found {found}")
    new = candidates[0]
    if table.degrees[old][new] != 1 or table.degrees[new][old] != 1:
        raise InternalInconsistency(
            f"exchange pair {cluster[k]}, {rs.almost_positives[new]} has degrees "
            f"{table.degrees[old][new]}, {table.degrees[new][old]}")
    return rs.almost_positives[new]


def mutate_seed_raw(rs: RootSystem, table: CompatibilityTable, seed: Seed, k: int) -> Seed:
    """Mutate at position ``k`` without re-sorting the cluster."""
    partner = exchange_partner(rs, table, seed.cluster, k)
    cluster = seed.cluster[:k] + (partner,) + seed.cluster[k + 1:]
    return Seed(cluster, mutate_matrix(seed.matrix, k))


def mutate_seed(rs: RootSystem, table: CompatibilityTable, seed: Seed, k: int) -> Seed:
    return mutate_seed_raw(rs, table, seed, k).canonical()


@dataclass(frozen=True)
class ExchangeGraph:
    """Canonical seeds joined by mutations.

    ``adjacency[u][k]`` is the node reached from ``u`` in direction ``k``;
    ``edges`` lists each undirected edge once as ``(u, v, k)`` with ``u < v``
    and ``k`` the direction seen from ``u``.
    """

    nodes: tuple[Seed, ...]
    edges: tuple[tuple[int, int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]
    label: str = ""

    def __len__(self) -> int:
        return len(self.nodes)

    def clusters(self) -> list[tuple[Root, ...]]:
        return [s.cluster for s in self.nodes]

    def is_regular(self) -> bool:
        """Every node has one distinct neighbour per direction."""
        return all(len(set(adj)) == len(adj) and u not in adj
                   for u, adj in enumerate(self.adjacency))

    def is_connected(self) -> bool:
        seen, queue = {0}, deque([0])
        while queue:
            for v in self.adjacency[queue.popleft()]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return len(seen) == len(self.nodes)

    def is_cycle(self) -> bool:
        return (len(self.edges) == len(self.nodes) and self.is_connected()
                and all(len(set(adj)) == 2 for adj in self.adjacency))


def explore(initial: Seed, directions: int, step: Callable[[Seed, int], Seed], label: str = "") -> ExchangeGraph:
    """Breadth-first closure of ``initial`` under ``step``.

    Directions are tried in order from each node and nodes are numbered in
    discovery order.  Two routes reaching one cluster with different
    matrices raise :class:`PathDependence`.
    """
    start = initial.canonical()
    nodes = [start]
    by_cluster = {start.cluster: 0}
    adjacency: list[list[int]] = []
    edges = []
    queue = deque([0])
    while queue:
        u = queue.popleft()
        row = []
        for k in range(directions):
            seed = step(nodes[u], k)
            v = by_cluster.get(seed.cluster)
            if v is None:
                v = len(nodes)
                nodes.append(seed)
                by_cluster[seed.cluster] = v
                queue.append(v)
            elif nodes[v].matrix != seed.matrix:
                raise PathDependence(
                    f"cluster {seed.cluster} reached with matrices "
                    f"{nodes[v].matrix.entries} and {seed.matrix.entries}")
            row.append(v)
            if u < v:
                edges.append((u, v, k))
        adjacency.append(row)
    return ExchangeGraph(tuple(nodes), tuple(edges), tuple(tuple(r) for r in adjacency), label)


def exchange_graph(rs: RootSystem, b: ExchangeMatrix, table: CompatibilityTable | None = None,
                   label: str = "") -> ExchangeGraph:
    if not rs.cartan.is_connected():
        raise DisconnectedDiagram("exchange graphs are only built for connected diagrams")
    table = table if table is not None else compatibility_table(rs)
    seed = initial_seed(rs, b)
    return explore(seed, rs.n, lambda s, k: mutate_seed(rs, table, s, k), label)


def clusters_bruteforce(rs: RootSystem, table: CompatibilityTable) -> list[tuple[Root, ...]]:
    """All maximal pairwise-compatible sets, by Bron-Kerbosch with pivoting."""
    size = len(rs)
    nbrs = [frozenset(b for b in range(size) if b != a and table.compatible(a, b)) for a in range(size)]
    cliques: list[frozenset[int]] = []

    def expand(r: frozenset, p: set, x: set):
        if not p and not x:
            cliques.append(r)
            return
        pivot = max(p | x, key=lambda u: len(nbrs[u] & p))
        for v in list(p - nbrs[pivot]):
            expand(r | {v}, p & nbrs[v], x & nbrs[v])
            p.discard(v)
            x.add(v)

    expand(frozenset(), set(range(size)), set())
    out = []
    for clique in cliques:
        if len(clique) != rs.n:
            roots = sorted(rs.almost_positives[a] for a in clique)
            raise MaximalityAnomaly(f"maximal compatible set of size {len(clique)}: {roots}")
        out.append(tuple(sorted(rs.almost_positives[a] for a in clique)))
    return sorted(out)


def exchange_pairs_from_clusters(clusters: Sequence[Sequence[Root]]) -> set[frozenset[Root]]:
    """Pairs {a, b} such that swapping a for b turns one cluster into another."""
    by_rest: dict[frozenset, list[Root]] = {}
    for cl in clusters:
        s = frozenset(cl)
        for r in cl:
            by_rest.setdefault(s - {r}, []).append(r)
    pairs = set()
    for members in by_rest.values():
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                pairs.add(frozenset((a, b)))
    return pairs


def exchange_pairs_from_degrees(rs: RootSystem, table: CompatibilityTable) -> set[frozenset[Root]]:
    size = len(rs)
    return {frozenset((rs.almost_positives[a], rs.almost_positives[b]))
            for a in range(size) for b in range(a + 1, size)
            if table.degrees[a][b] == 1 and table.degrees[b][a] == 1}
