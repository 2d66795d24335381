"""Orbit mutations, seed folding and the exhaustive folding verifiers.

A sigma-stable seed carries its own automorphism on *positions*: position
``p`` goes to the position holding ``sigma(cluster[p])``.  For the initial
seed this is ``sigma`` itself.  Orbit mutations, folding and sign checks all
use that position automorphism.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence, Union

from .cartan import (
    Bipartition,
    CartanMatrix,
    DiagramAutomorphism,
    ExchangeMatrix,
    Matrix,
    bipartite_orientation,
    cartan_from_label,
    check_admissible,
    fold_entries,
    fold_matrix,
    format_cycles,
    parse_cycles,
)
from .clusters import (
    ExchangeGraph,
    Seed,
    exchange_graph,
    explore,
    is_cluster,
    mutate_entries,
    mutate_matrix,
    mutate_seed,
    mutate_seed_raw,
)
from .errors import (
    ClusterFoldError,
    InternalInconsistency,
    NotAdmissible,
    NotAutomorphism,
    NotSigmaStableSeed,
    OrbitAdjacent,
    SigmaStabilityLost,
)
from .report import Report
from .roots import (
    CompatibilityTable,
    RootSystem,
    act,
    compatibility_table,
    fold_root,
    folding_degree_check,
    negative_simple,
    root_system,
    sigma_stable_bipartitions,
)

# (type label, sigma in 1-based cycle notation)
PRESETS: dict[str, tuple[str, str]] = {
    "A3-swap": ("A3", "(1 3)"),
    "A5-swap": ("A5", "(1 5)(2 4)"),
    "D4-leg-swap": ("D4", "(3 4)"),
    "D4-rot3": ("D4", "(1 3 4)"),
    "E6-swap": ("E6", "(1 6)(3 5)"),
}


@dataclass(frozen=True, eq=False)
class FoldingContext:
    label: str
    cartan: CartanMatrix
    sigma: DiagramAutomorphism
    source: RootSystem
    source_parts: Bipartition
    source_table: CompatibilityTable
    source_matrix: ExchangeMatrix
    folded_cartan: CartanMatrix
    target: RootSystem
    target_parts: Bipartition
    target_table: CompatibilityTable
    target_matrix: ExchangeMatrix

    @property
    def orbit_index(self) -> tuple[int, ...]:
        return self.sigma.orbit_of

    @property
    def name(self) -> str:
        return f"{self.label} {format_cycles(self.sigma.perm)}"


def folding_context(cartan: Union[str, CartanMatrix],
                    sigma: Union[str, Sequence[int], DiagramAutomorphism]) -> FoldingContext:
    """Set up source and folded data for ``(cartan, sigma)``.

    ``sigma`` may be cycle notation (1-based), a 0-based permutation, or an
    already certified automorphism.
    """
    label = cartan if isinstance(cartan, str) else ""
    c = cartan_from_label(cartan) if isinstance(cartan, str) else cartan
    if isinstance(sigma, str):
        sigma = parse_cycles(sigma, c.n)
    if not isinstance(sigma, DiagramAutomorphism):
        sigma = check_admissible(sigma, c)
    else:
        check_admissible(sigma.perm, c)
    src_parts, tgt_parts = sigma_stable_bipartitions(c, sigma)
    source = root_system(c)
    a0 = bipartite_orientation(c, src_parts)
    folded = fold_matrix(c, sigma)
    target = root_system(folded)
    b0 = bipartite_orientation(folded, tgt_parts)
    if fold_matrix(a0, sigma) != b0:
        raise InternalInconsistency("folded bipartite orientation differs from the orientation of the fold")
    return FoldingContext(
        label=label or "Gamma",
        cartan=c,
        sigma=sigma,
        source=source,
        source_parts=src_parts,
        source_table=compatibility_table(source, src_parts),
        source_matrix=a0,
        folded_cartan=folded,
        target=target,
        target_parts=tgt_parts,
        target_table=compatibility_table(target, tgt_parts),
        target_matrix=b0,
    )


def preset_context(name: str) -> FoldingContext:
    label, cycles = PRESETS[name]
    return folding_context(label, cycles)


# -- orbit mutation ---------------------------------------------------------------

def _entries(a) -> Matrix:
    return a.entries if hasattr(a, "entries") else a


def check_nonadjacent(a, vertices: Sequence[int]) -> None:
    m = _entries(a)
    for i, j in itertools.permutations(vertices, 2):
        if m[i][j]:
            raise OrbitAdjacent(f"vertices {i + 1} and {j + 1} are adjacent")


def iterated_mutation(a, vertices: Sequence[int]) -> Matrix:
    """Apply the single mutations at ``vertices`` in the given order."""
    m = _entries(a)
    for k in vertices:
        m = mutate_entries(m, k)
    return m


def composed_mutation_formula(a, vertices: Sequence[int]):
    """Closed form for mutating at pairwise non-adjacent ``vertices``.

    Entries with exactly one index in ``vertices`` change sign; every other
    entry picks up one interaction term per vertex.
    """
    m = _entries(a)
    check_nonadjacent(m, vertices)
    inside = set(vertices)
    n = len(m)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if (i in inside) != (j in inside):
                row.append(-m[i][j])
                continue
            row.append(m[i][j] + sum(m[i][l] * abs(m[l][j]) + abs(m[i][l]) * m[l][j] for l in vertices) // 2)
        out.append(tuple(row))
    out = tuple(out)
    return ExchangeMatrix(out) if isinstance(a, ExchangeMatrix) else out


def _automorphism(x: Union[DiagramAutomorphism, FoldingContext]) -> DiagramAutomorphism:
    return x.sigma if isinstance(x, FoldingContext) else x


def orbit_mutation(a: ExchangeMatrix, sigma: Union[DiagramAutomorphism, FoldingContext], orbit: int,
                   check_order: bool = False) -> ExchangeMatrix:
    """Mutate ``a`` at every vertex of orbit number ``orbit`` of ``sigma``."""
    sigma = _automorphism(sigma)
    members = sigma.orbits[orbit]
    check_nonadjacent(a, members)
    try:
        check_admissible(sigma.perm, a)
    except (NotAutomorphism, NotAdmissible) as exc:
        raise SigmaStabilityLost(f"input matrix is not sigma-stable: {exc}") from None
    result = iterated_mutation(a, members)
    if check_order:
        for order in itertools.permutations(members):
            if iterated_mutation(a, order) != result:
                raise InternalInconsistency(f"orbit mutation depends on the order {order}")
    try:
        check_admissible(sigma.perm, result)
    except (NotAutomorphism, NotAdmissible) as exc:
        raise SigmaStabilityLost(f"orbit mutation lost sigma-stability: {exc}") from None
    return ExchangeMatrix(result)


# -- seeds ---------------------------------------------------------------------------

def seed_automorphism(seed: Seed, sigma: DiagramAutomorphism) -> DiagramAutomorphism:
    """The permutation of positions induced by ``sigma`` on a sigma-stable seed."""
    where = {root: p for p, root in enumerate(seed.cluster)}
    perm = []
    for root in seed.cluster:
        image = act(sigma, root)
        if image not in where:
            raise NotSigmaStableSeed(f"sigma sends {root} to {image}, which is not in the cluster")
        perm.append(where[image])
    try:
        return check_admissible(perm, seed.matrix)
    except NotAutomorphism as exc:
        raise NotSigmaStableSeed(f"matrix is not sigma-stable: {exc}") from None
    except NotAdmissible as exc:
        raise OrbitAdjacent(str(exc)) from None


def _fold_seed_raw(seed: Seed, ctx: FoldingContext) -> tuple[Seed, DiagramAutomorphism]:
    pos = seed_automorphism(seed, ctx.sigma)
    cluster = tuple(fold_root(ctx.sigma, seed.cluster[orb[0]], ctx.target) for orb in pos.orbits)
    if len(cluster) != ctx.target.n:
        raise SigmaStabilityLost(f"seed has {len(cluster)} position orbits, expected {ctx.target.n}")
    folded = Seed(cluster, ExchangeMatrix(fold_entries(seed.matrix.entries, pos)))
    if not is_cluster(ctx.target, ctx.target_table, folded.cluster):
        raise InternalInconsistency(f"folded cluster {folded.cluster} is not a cluster of the folded type")
    return folded, pos


def fold_seed(seed: Seed, ctx: FoldingContext) -> Seed:
    """Fold a sigma-stable seed of the source type to a seed of the folded type."""
    return _fold_seed_raw(seed, ctx)[0].canonical()


def sigma_initial_seed(ctx: FoldingContext) -> Seed:
    n = ctx.cartan.n
    return Seed(tuple(negative_simple(n, i) for i in range(n)), ctx.source_matrix)


def orbit_mutate_seed(ctx: FoldingContext, seed: Seed, orbit: int) -> Seed:
    """Mutate a sigma-stable seed at every position of one position orbit."""
    pos = seed_automorphism(seed, ctx.sigma)
    for p in pos.orbits[orbit]:
        seed = mutate_seed_raw(ctx.source, ctx.source_table, seed, p)
    try:
        seed_automorphism(seed, ctx.sigma)
    except (NotSigmaStableSeed, OrbitAdjacent) as exc:
        raise SigmaStabilityLost(str(exc)) from None
    return seed.canonical()


def stable_graph(ctx: FoldingContext) -> ExchangeGraph:
    """Graph of sigma-stable seeds under orbit mutations; edge ``k`` is the
    ``k``-th position orbit (ordered by minimal position) of the source node."""
    directions = len(ctx.sigma.orbits)
    return explore(sigma_initial_seed(ctx), directions,
                   lambda s, k: orbit_mutate_seed(ctx, s, k), ctx.name)


# -- verification -------------------------------------------------------------------

def sign_coherence_findings(a: ExchangeMatrix, sigma: DiagramAutomorphism) -> list[str]:
    """Orbit blocks whose entries do not share a weak sign."""
    out = []
    for m_orb in sigma.orbits:
        for l_orb in sigma.orbits:
            block = [a[i][j] for i in m_orb for j in l_orb]
            if any(x > 0 for x in block) and any(x < 0 for x in block):
                out.append(f"block {[i + 1 for i in m_orb]}x{[j + 1 for j in l_orb]} has mixed signs {block}")
    return out


def verify_fold_mutation(ctx: FoldingContext, a: ExchangeMatrix, orbit: int,
                         sigma: DiagramAutomorphism | None = None) -> Report:
    """Compare fold(orbit mutation), mutation of the fold, and the closed form."""
    sigma = sigma if sigma is not None else ctx.sigma
    report = Report("fold-mutation")
    members = sigma.orbits[orbit]
    for finding in sign_coherence_findings(a, sigma):
        report.fail(finding)
    try:
        iterated = orbit_mutation(a, sigma, orbit, check_order=True)
        closed = composed_mutation_formula(a, members)
    except ClusterFoldError as exc:
        report.fail(f"orbit {[v + 1 for v in members]}: {exc.name}: {exc}")
        return report
    report.checked += 1
    if closed != iterated:
        report.fail(f"closed form {closed.entries} != iterated mutation {iterated.entries}")
    via_fold = fold_matrix(iterated, sigma)
    via_closed = fold_matrix(closed, sigma)
    via_prop = mutate_matrix(fold_matrix(a, sigma), orbit)
    if not via_fold == via_prop == via_closed:
        report.fail(f"orbit {[v + 1 for v in members]}: fold after mutation {via_fold.entries}, "
                    f"mutation after fold {via_prop.entries}, closed form {via_closed.entries}")
    return report


def verify_reachable_mutations(ctx: FoldingContext, graph: ExchangeGraph | None = None) -> Report:
    """Run :func:`verify_fold_mutation` at every reachable sigma-stable seed and orbit."""
    graph = graph if graph is not None else stable_graph(ctx)
    report = Report("fold-mutation")
    for seed in graph.nodes:
        pos = seed_automorphism(seed, ctx.sigma)
        for orbit in range(len(pos.orbits)):
            report.extend(verify_fold_mutation(ctx, seed.matrix, orbit, pos))
    report.stats["seeds"] = len(graph)
    report.stats["orbit_mutations"] = report.checked
    return report


def verify_phi(ctx: FoldingContext) -> Report:
    """Check that folding is an isomorphism from the sigma-stable orbit-mutation
    graph onto the exchange graph of the folded type, commuting with mutation."""
    report = Report("phi")
    folded_graph = exchange_graph(ctx.target, ctx.target_matrix, ctx.target_table)
    try:
        stable = stable_graph(ctx)
    except ClusterFoldError as exc:
        report.fail(f"sigma-stable graph: {exc.name}: {exc}")
        return report
    report.stats["stable_nodes"] = len(stable)
    report.stats["folded_nodes"] = len(folded_graph)
    report.stats["stable_edges"] = len(stable.edges)
    report.stats["folded_edges"] = len(folded_graph.edges)

    where = {s.cluster: k for k, s in enumerate(folded_graph.nodes)}
    phi: list[int | None] = []
    raw_folds = []
    for seed in stable.nodes:
        raw, pos = _fold_seed_raw(seed, ctx)
        raw_folds.append((raw, pos))
        image = raw.canonical()
        target = where.get(image.cluster)
        phi.append(target)
        report.checked += 1
        if target is None:
            report.fail(f"fold of {seed.cluster} is {image.cluster}, not a node of the folded graph")
        elif folded_graph.nodes[target].matrix != image.matrix:
            report.fail(f"fold of {seed.cluster} has matrix {image.matrix.entries}, folded graph has "
                        f"{folded_graph.nodes[target].matrix.entries}")
    hit = {t for t in phi if t is not None}
    if len(hit) != len(stable):
        report.fail("fold is not injective on sigma-stable seeds")
    if len(hit) != len(folded_graph):
        report.fail(f"fold reaches {len(hit)} of {len(folded_graph)} folded seeds")

    for u, seed in enumerate(stable.nodes):
        raw, pos = raw_folds[u]
        # position of each raw folded root after canonical sorting
        order = sorted(range(raw.n), key=lambda p: raw.cluster[p])
        canonical_pos = {p: q for q, p in enumerate(order)}
        for orbit, v in enumerate(stable.adjacency[u]):
            report.checked += 1
            k = canonical_pos[orbit]
            square = mutate_seed(ctx.target, ctx.target_table, raw.canonical(), k)
            folded_v = fold_seed(stable.nodes[v], ctx)
            if square != folded_v:
                report.fail(f"square at {seed.cluster}, orbit {[p + 1 for p in pos.orbits[orbit]]} "
                            f"does not commute")
            if phi[u] is not None and folded_graph.adjacency[phi[u]][k] != phi[v]:
                report.fail(f"edge {u}-{v} is not carried to the folded edge in direction {k + 1}")
    return report


def verify_all(ctx: FoldingContext) -> list[Report]:
    """Every folding check for one ``(type, sigma)`` pair."""
    reports = [folding_degree_check(ctx.cartan, ctx.sigma)]
    try:
        reports.append(verify_reachable_mutations(ctx))
    except ClusterFoldError as exc:
        r = Report("fold-mutation")
        r.fail(f"{exc.name}: {exc}")
        reports.append(r)
    reports.append(verify_phi(ctx))
    return reports
