"""Root systems, the piecewise-linear operators sigma_i and tau_+/-,
compatibility degrees, and folding of almost positive roots.

Roots are tuples of integers in the simple-root basis.  Almost positive
roots are sorted lexicographically, which puts the negative simple roots
first, in vertex order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .cartan import (
    Bipartition,
    CartanMatrix,
    DiagramAutomorphism,
    bipartition,
    check_bipartition,
    fold_matrix,
)
from .errors import (
    IncompleteOrbitClosure,
    InvalidBipartition,
    NotAlmostPositive,
    NotFiniteType,
    NotInTargetSystem,
    NotSigmaStable,
    NotSigmaStableSystem,
    OrbitConstancyViolation,
)
from .report import Report

Root = tuple[int, ...]


def simple_root(n: int, i: int) -> Root:
    return tuple(1 if k == i else 0 for k in range(n))


def negative_simple(n: int, i: int) -> Root:
    return tuple(-1 if k == i else 0 for k in range(n))


def negative_simple_index(root: Root) -> int | None:
    """Return ``i`` if ``root == -alpha_i``, else None."""
    if sum(root) == -1 and min(root) == -1 and all(c in (0, -1) for c in root):
        return root.index(-1)
    return None


def is_positive(root: Root) -> bool:
    return all(c >= 0 for c in root) and any(root)


def reflect(c: CartanMatrix, i: int, root: Root) -> Root:
    """Simple reflection ``s_i``: subtract ``(sum_j c_ij root_j) alpha_i``."""
    coeff = sum(c[i][j] * root[j] for j in range(len(root)))
    if coeff == 0:
        return root
    out = list(root)
    out[i] -= coeff
    return tuple(out)


def format_root(root: Root) -> str:
    return "(" + ",".join(str(x) for x in root) + ")"


class RootSystem:
    """Positive and almost positive roots of a finite-type Cartan matrix.

    ``sigma_perms[i]`` is the permutation of ``almost_positives`` (by index)
    induced by ``sigma_i``.
    """

    def __init__(self, cartan: CartanMatrix, positives: Sequence[Root]):
        self.cartan = cartan
        self.n = cartan.n
        self.positives: tuple[Root, ...] = tuple(sorted(positives))
        self.almost_positives: tuple[Root, ...] = tuple(
            sorted([negative_simple(self.n, i) for i in range(self.n)] + list(self.positives)))
        self.index = {r: k for k, r in enumerate(self.almost_positives)}
        h, rem = divmod(2 * len(self.positives), self.n)
        if rem:
            raise NotFiniteType(f"{len(self.positives)} positive roots is not n*h/2 for rank {self.n}")
        self.coxeter_number = h
        self.sigma_perms = tuple(self._sigma_perm(i) for i in range(self.n))

    def __len__(self) -> int:
        return len(self.almost_positives)

    def __contains__(self, root) -> bool:
        return tuple(root) in self.index

    def __repr__(self) -> str:
        return f"RootSystem(rank={self.n}, positives={len(self.positives)}, h={self.coxeter_number})"

    def index_of(self, root: Root) -> int:
        try:
            return self.index[tuple(root)]
        except KeyError:
            raise NotAlmostPositive(f"{root} is not an almost positive root") from None

    def _sigma_perm(self, i: int) -> tuple[int, ...]:
        out = []
        for root in self.almost_positives:
            j = negative_simple_index(root)
            image = root if j is not None and j != i else reflect(self.cartan, i, root)
            if image not in self.index:
                raise NotFiniteType(f"s_{i + 1} maps {root} outside the almost positive roots")
            out.append(self.index[image])
        return tuple(out)

    def highest_root(self) -> Root:
        return max(self.positives, key=lambda r: (sum(r), r))


def positive_roots(c: CartanMatrix) -> RootSystem:
    """Close the simple roots under simple reflections, keeping positive vectors."""
    n = c.n
    bound = 2 ** (2 * n)
    found = {simple_root(n, i) for i in range(n)}
    queue = deque(sorted(found))
    while queue:
        root = queue.popleft()
        for i in range(n):
            image = reflect(c, i, root)
            if image not in found and is_positive(image):
                found.add(image)
                if len(found) > bound:
                    raise NotFiniteType(f"reflection closure exceeded {bound} roots")
                queue.append(image)
    return RootSystem(c, found)


@lru_cache(maxsize=None)
def root_system(c: CartanMatrix) -> RootSystem:
    """Cached :func:`positive_roots`."""
    return positive_roots(c)


def sigma_i(rs: RootSystem, i: int, alpha: Root) -> Root:
    return rs.almost_positives[rs.sigma_perms[i][rs.index_of(alpha)]]


def tau_perm(rs: RootSystem, sign: str, parts: Bipartition) -> tuple[int, ...]:
    """Index permutation of ``tau_sign``, the product of sigma_i over ``I^sign``."""
    check_bipartition(rs.cartan.entries, parts)
    members = sorted(parts.part(sign))
    perm = tuple(range(len(rs)))
    for i in members:
        s = rs.sigma_perms[i]
        perm = tuple(s[p] for p in perm)
    for i in members:
        for j in members:
            si, sj = rs.sigma_perms[i], rs.sigma_perms[j]
            if any(si[sj[k]] != sj[si[k]] for k in range(len(rs))):
                raise InvalidBipartition(f"sigma_{i + 1} and sigma_{j + 1} do not commute")
    return perm


def tau(rs: RootSystem, sign: str, parts: Bipartition, alpha: Root) -> Root:
    return rs.almost_positives[tau_perm(rs, sign, parts)[rs.index_of(alpha)]]


class CompatibilityTable:
    """All compatibility degrees ``(alpha || beta)`` for one bipartition."""

    def __init__(self, rs: RootSystem, parts: Bipartition):
        self.rs = rs
        self.parts = parts
        self.tau_plus = tau_perm(rs, "+", parts)
        self.tau_minus = tau_perm(rs, "-", parts)
        self.degrees = self._build()

    def _build(self) -> tuple[tuple[int, ...], ...]:
        rs = self.rs
        size = len(rs)
        table: list[list[int | None]] = [[None] * size for _ in range(size)]
        queue = deque()
        for i in range(rs.n):
            a = rs.index[negative_simple(rs.n, i)]
            for b, beta in enumerate(rs.almost_positives):
                # (-alpha_i || -alpha_j) := 0
                table[a][b] = max(beta[i], 0)
                queue.append((a, b))
        while queue:
            a, b = queue.popleft()
            value = table[a][b]
            for t in (self.tau_plus, self.tau_minus):
                ta, tb = t[a], t[b]
                known = table[ta][tb]
                if known is None:
                    table[ta][tb] = value
                    queue.append((ta, tb))
                elif known != value:
                    raise IncompleteOrbitClosure(
                        f"conflicting degrees {known} and {value} for "
                        f"({rs.almost_positives[ta]} || {rs.almost_positives[tb]})")
        missing = sum(v is None for row in table for v in row)
        if missing:
            raise IncompleteOrbitClosure(f"{missing} pairs not reached by tau orbit closure")
        return tuple(tuple(row) for row in table)

    def degree(self, alpha: Root, beta: Root) -> int:
        return self.degrees[self.rs.index_of(alpha)][self.rs.index_of(beta)]

    def compatible(self, a: int, b: int) -> bool:
        """Mutual compatibility of two roots given by index."""
        return self.degrees[a][b] == 0 and self.degrees[b][a] == 0


@lru_cache(maxsize=None)
def compatibility_table(rs: RootSystem, parts: Bipartition | None = None) -> CompatibilityTable:
    return CompatibilityTable(rs, parts if parts is not None else bipartition(rs.cartan))


def compatibility_degree(rs: RootSystem, parts: Bipartition, alpha: Root, beta: Root) -> int:
    return compatibility_table(rs, parts).degree(alpha, beta)


def degree_by_reduction(rs: RootSystem, parts: Bipartition, alpha: Root, beta: Root) -> int:
    """Compute one degree by alternately applying tau_+ and tau_- to both roots
    until the first becomes a negative simple root.

    Alternating words of length below ``2 * len(rs)`` run through the whole
    dihedral group generated by tau_+ and tau_-.
    """
    t_plus, t_minus = tau_perm(rs, "+", parts), tau_perm(rs, "-", parts)
    a, b = rs.index_of(alpha), rs.index_of(beta)
    for step in range(2 * len(rs) + 2):
        root = rs.almost_positives[a]
        i = negative_simple_index(root)
        if i is not None:
            return max(rs.almost_positives[b][i], 0)
        t = t_plus if step % 2 == 0 else t_minus
        a, b = t[a], t[b]
    raise IncompleteOrbitClosure(f"{alpha} never reaches a negative simple root")


# -- folding ----------------------------------------------------------------------

@dataclass(frozen=True)
class RootOrbit:
    image: Root
    period: int
    orbit: tuple[Root, ...]


def act(sigma: DiagramAutomorphism, root: Root) -> Root:
    """``sigma`` sends alpha_i to alpha_{sigma(i)}."""
    out = [0] * len(root)
    for i, c in enumerate(root):
        out[sigma.perm[i]] = c
    return tuple(out)


def sigma_on_roots(sigma: DiagramAutomorphism, alpha: Root, rs: RootSystem | None = None) -> RootOrbit:
    if len(alpha) != sigma.n:
        raise NotSigmaStableSystem(f"root {alpha} has the wrong length for {sigma.n} vertices")
    orbit = [tuple(alpha)]
    while True:
        nxt = act(sigma, orbit[-1])
        if nxt == orbit[0]:
            break
        orbit.append(nxt)
    if rs is not None and any(r not in rs for r in orbit):
        raise NotSigmaStableSystem(f"the sigma-orbit of {alpha} leaves the root system")
    image = orbit[1] if len(orbit) > 1 else orbit[0]
    return RootOrbit(image, len(orbit), tuple(orbit))


def fold_root(sigma: DiagramAutomorphism, alpha: Root, target: RootSystem | None = None) -> Root:
    """Fold ``alpha`` to the sum over its sigma-orbit, read off on vertex orbits."""
    orbit = sigma_on_roots(sigma, alpha).orbit
    total = [sum(col) for col in zip(*orbit)]
    folded = []
    for vorb in sigma.orbits:
        values = {total[v] for v in vorb}
        if len(values) != 1:
            raise OrbitConstancyViolation(
                f"orbit sum {tuple(total)} of {alpha} is not constant on {[v + 1 for v in vorb]}")
        folded.append(values.pop())
    folded = tuple(folded)
    if target is not None and folded not in target:
        raise NotInTargetSystem(f"{alpha} folds to {folded}, not an almost positive root of the target")
    return folded


def sigma_stable_bipartitions(c: CartanMatrix, sigma: DiagramAutomorphism) -> tuple[Bipartition, Bipartition]:
    """The BFS bipartition of ``c`` and the bipartition it induces on orbits."""
    parts = bipartition(c)
    if any(sigma.perm[i] not in parts.plus for i in parts.plus):
        raise NotSigmaStable("the bipartition of the diagram is not sigma-stable")
    plus = frozenset(sigma.orbit_of[i] for i in parts.plus)
    minus = frozenset(sigma.orbit_of[i] for i in parts.minus)
    return parts, Bipartition(plus, minus)


def folding_degree_check(c: CartanMatrix, sigma: DiagramAutomorphism) -> Report:
    """Check ``(fold a || fold b) == sum_t (a || sigma^t b)`` for every pair."""
    report = Report("folded-compatibility")
    src_parts, tgt_parts = sigma_stable_bipartitions(c, sigma)
    src = root_system(c)
    folded_cartan = fold_matrix(c, sigma)
    tgt = root_system(folded_cartan)
    check_bipartition(folded_cartan.entries, tgt_parts)
    src_table = compatibility_table(src, src_parts)
    tgt_table = compatibility_table(tgt, tgt_parts)

    folded = {alpha: fold_root(sigma, alpha, tgt) for alpha in src.almost_positives}
    images = set(folded.values())
    if images != set(tgt.almost_positives):
        report.fail(f"folded roots cover {len(images)} of {len(tgt)} target roots")
    for alpha in src.almost_positives:
        for beta in src.almost_positives:
            orbit = sigma_on_roots(sigma, beta).orbit
            right = sum(src_table.degree(alpha, b) for b in orbit)
            left = tgt_table.degree(folded[alpha], folded[beta])
            report.checked += 1
            if left != right:
                report.fail(f"pair {alpha}, {beta}: folded degree {left} != orbit sum {right}")
    report.stats["pairs"] = report.checked
    report.stats["orbits"] = len({frozenset(sigma_on_roots(sigma, a).orbit) for a in src.almost_positives})
    return report
