"""Cartan data, exchange matrices, valued quivers and diagram automorphisms.

Vertices are 0-based integers internally.  Human-facing text (labels,
cycle notation, CLI output) is 1-based, matching Bourbaki numbering.

Cartan convention: ``c[i][j]`` is the coefficient in
``s_i(alpha_j) = alpha_j - c[i][j] * alpha_i``.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    InvalidBipartition,
    InvalidCartanMatrix,
    MalformedQuiver,
    NotAdmissible,
    NotAutomorphism,
    NotBipartite,
    NotFiniteType,
    NotSigmaStable,
    NotSkewSymmetrizable,
    RankOutOfRange,
    UnknownLabel,
)

Matrix = tuple[tuple[int, ...], ...]


def as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError(f"matrix is not square: {m}")
    return m


def permute_matrix(m: Matrix, order: Sequence[int]) -> Matrix:
    """Return the matrix whose (p, q) entry is ``m[order[p]][order[q]]``."""
    return tuple(tuple(m[i][j] for j in order) for i in order)


def _components(m: Matrix) -> list[list[int]]:
    n = len(m)
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        comp, queue = [], deque([start])
        while queue:
            i = queue.popleft()
            comp.append(i)
            for j in range(n):
                if not seen[j] and (m[i][j] or m[j][i]):
                    seen[j] = True
                    queue.append(j)
        comps.append(sorted(comp))
    return comps


def _symmetrizer(m: Matrix, sign: int) -> tuple[int, ...] | None:
    """Positive integers d with ``d[i]*m[i][j] == sign*d[j]*m[j][i]``.

    Each connected component is scaled to coprime integers.  Returns None
    when no such vector exists.
    """
    n = len(m)
    for i in range(n):
        for j in range(i + 1, n):
            if (m[i][j] == 0) != (m[j][i] == 0):
                return None
    d: list[Fraction | None] = [None] * n
    for comp in _components(m):
        root = comp[0]
        d[root] = Fraction(1)
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if m[i][j] == 0 or i == j:
                    continue
                want = d[i] * m[i][j] / (sign * m[j][i])
                if want <= 0:
                    return None
                if d[j] is None:
                    d[j] = want
                    queue.append(j)
                elif d[j] != want:
                    return None
        denom = math.lcm(*(d[i].denominator for i in comp))
        ints = [int(d[i] * denom) for i in comp]
        g = math.gcd(*ints)
        for i, v in zip(comp, ints):
            d[i] = Fraction(v // g)
    return tuple(int(x) for x in d)


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class CartanMatrix:
    """A symmetrizable generalized Cartan matrix of finite type.

    ``labels`` are 1-based vertex names used for display; folded matrices
    carry the minimal member of each orbit.
    """

    entries: Matrix
    labels: tuple[int, ...] = ()
    symmetrizer: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        m = as_matrix(self.entries)
        object.__setattr__(self, "entries", m)
        n = len(m)
        if n == 0:
            raise InvalidCartanMatrix("empty Cartan matrix")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(1, n + 1)))
        elif len(self.labels) != n:
            raise InvalidCartanMatrix("label count does not match rank")
        for i in range(n):
            if m[i][i] != 2:
                raise InvalidCartanMatrix(f"diagonal entry c[{i + 1}][{i + 1}] = {m[i][i]} != 2")
            for j in range(n):
                if i != j and m[i][j] > 0:
                    raise InvalidCartanMatrix(f"positive off-diagonal entry at ({i + 1}, {j + 1})")
        d = _symmetrizer(m, +1)
        if d is None:
            raise InvalidCartanMatrix("Cartan matrix is not symmetrizable")
        object.__setattr__(self, "symmetrizer", d)
        sym = self.symmetrized()
        for k in range(1, n + 1):
            if determinant([row[:k] for row in sym[:k]]) <= 0:
                raise NotFiniteType(f"leading principal minor of order {k} is not positive")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def symmetrized(self) -> Matrix:
        d = self.symmetrizer
        return tuple(tuple(d[i] * c for c in row) for i, row in enumerate(self.entries))

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(self.n) if j != i and self.entries[i][j]]

    def is_simply_laced(self) -> bool:
        return all(c in (0, -1) for i, row in enumerate(self.entries)
                   for j, c in enumerate(row) if i != j)

    def is_connected(self) -> bool:
        return len(_components(self.entries)) == 1


@dataclass(frozen=True)
class ExchangeMatrix:
    """Skew-symmetrizable integer matrix ``B = (b_ij)``."""

    entries: Matrix
    skew_symmetrizer: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        m = as_matrix(self.entries)
        object.__setattr__(self, "entries", m)
        for i in range(len(m)):
            if m[i][i] != 0:
                raise NotSkewSymmetrizable(f"nonzero diagonal entry at {i + 1}")
        d = _symmetrizer(m, -1)
        if d is None:
            raise NotSkewSymmetrizable(f"matrix is not skew-symmetrizable: {m}")
        object.__setattr__(self, "skew_symmetrizer", d)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def permuted(self, order: Sequence[int]) -> "ExchangeMatrix":
        return ExchangeMatrix(permute_matrix(self.entries, order))


def is_skew_symmetrized_by(b: Matrix, d: Sequence[int]) -> bool:
    n = len(b)
    return all(d[i] * b[i][j] == -d[j] * b[j][i] for i in range(n) for j in range(n))


# -- valued quivers ------------------------------------------------------------

Arrow = tuple[int, int, tuple[int, int]]


@dataclass(frozen=True)
class ValuedQuiver:
    """Vertices ``0..n-1``; arrows ``(i, j, (v, w))`` meaning i -> j valued (v, w)."""

    n: int
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        arrows = tuple(sorted((int(i), int(j), (int(v[0]), int(v[1]))) for i, j, v in self.arrows))
        object.__setattr__(self, "arrows", arrows)
        seen = set()
        for i, j, (v, w) in arrows:
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise MalformedQuiver(f"arrow {i + 1}->{j + 1} leaves the vertex set")
            if i == j:
                raise MalformedQuiver(f"loop at vertex {i + 1}")
            if v <= 0 or w <= 0:
                raise MalformedQuiver(f"arrow {i + 1}->{j + 1} has a non-positive value")
            if (i, j) in seen:
                raise MalformedQuiver(f"repeated arrow {i + 1}->{j + 1}")
            seen.add((i, j))
        for i, j in seen:
            if (j, i) in seen:
                raise MalformedQuiver(f"2-cycle between {i + 1} and {j + 1}")


def matrix_to_quiver(b: ExchangeMatrix) -> ValuedQuiver:
    arrows = [(i, j, (-b[j][i], b[i][j]))
              for i in range(b.n) for j in range(b.n) if b[i][j] > 0]
    return ValuedQuiver(b.n, tuple(arrows))


def quiver_to_matrix(q: ValuedQuiver) -> ExchangeMatrix:
    m = [[0] * q.n for _ in range(q.n)]
    for i, j, (v, w) in q.arrows:
        m[i][j] = w
        m[j][i] = -v
    return ExchangeMatrix(as_matrix(m))


def quiver_matrix_bijection(x: Union[ExchangeMatrix, ValuedQuiver]):
    """Map an exchange matrix to its valued quiver, or a valued quiver back."""
    if isinstance(x, ExchangeMatrix):
        return matrix_to_quiver(x)
    if isinstance(x, ValuedQuiver):
        return quiver_to_matrix(x)
    raise TypeError(f"expected ExchangeMatrix or ValuedQuiver, got {type(x).__name__}")


# -- standard Cartan matrices --------------------------------------------------

_LABEL_RE = re.compile(r"^\s*([A-Ga-g])\s*_?\s*(\d+)\s*$")

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4}
_EXCEPTIONAL = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


def parse_label(label: str) -> tuple[str, int]:
    match = _LABEL_RE.match(label)
    if not match:
        raise UnknownLabel(f"cannot parse type label {label!r}")
    family, rank = match.group(1).upper(), int(match.group(2))
    if family in _MIN_RANK:
        if rank < _MIN_RANK[family]:
            raise RankOutOfRange(f"{family}{rank}: rank must be at least {_MIN_RANK[family]}")
    elif family in _EXCEPTIONAL:
        if rank not in _EXCEPTIONAL[family]:
            raise RankOutOfRange(f"{family}{rank}: rank must be one of {_EXCEPTIONAL[family]}")
    else:
        raise UnknownLabel(f"unknown Cartan family {family!r}")
    return family, rank


def cartan_from_label(label: str) -> CartanMatrix:
    """Cartan matrix of a finite-type label such as ``"B3"`` or ``"E6"``."""
    family, n = parse_label(label)
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def edge(i, j, cij=-1, cji=-1):
        # 1-based Bourbaki vertices
        c[i - 1][j - 1] = cij
        c[j - 1][i - 1] = cji

    if family in "ABC":
        for i in range(1, n):
            edge(i, i + 1)
        if family == "B":
            c[n - 1][n - 2] = -2
        elif family == "C":
            c[n - 2][n - 1] = -2
    elif family == "D":
        for i in range(1, n - 1):
            edge(i, i + 1)
        edge(n - 2, n)
    elif family == "E":
        edge(1, 3)
        edge(2, 4)
        for i in range(3, n):
            edge(i, i + 1)
    elif family == "F":
        edge(1, 2)
        edge(2, 3, -1, -2)
        edge(3, 4)
    elif family == "G":
        edge(1, 2, -1, -3)
    return CartanMatrix(as_matrix(c))


def find_relabeling(a: Matrix, b: Matrix) -> tuple[int, ...] | None:
    """A permutation p with ``a[p[i]][p[j]] == b[i][j]``, or None."""
    n = len(a)
    if len(b) != n:
        return None
    assign: list[int] = []
    used = [False] * n

    def extend(i):
        if i == n:
            return True
        for cand in range(n):
            if used[cand]:
                continue
            if a[cand][cand] != b[i][i]:
                continue
            if all(a[cand][assign[k]] == b[i][k] and a[assign[k]][cand] == b[k][i] for k in range(i)):
                used[cand] = True
                assign.append(cand)
                if extend(i + 1):
                    return True
                assign.pop()
                used[cand] = False
        return False

    return tuple(assign) if extend(0) else None


def identify_type(c: CartanMatrix) -> str | None:
    """Name the finite type of a connected Cartan matrix, up to relabeling."""
    n = c.n
    candidates = [f"{fam}{n}" for fam in "ABCDEFG"]
    for label in candidates:
        try:
            ref = cartan_from_label(label)
        except (UnknownLabel, RankOutOfRange):
            continue
        if find_relabeling(c.entries, ref.entries) is not None:
            return label
    return None


# -- bipartitions ----------------------------------------------------------------

@dataclass(frozen=True)
class Bipartition:
    """Partition ``I = I+ u I-`` into completely disconnected parts."""

    plus: frozenset[int]
    minus: frozenset[int]

    def part(self, sign: str) -> frozenset[int]:
        if sign in ("+", 1):
            return self.plus
        if sign in ("-", -1):
            return self.minus
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")

    def swapped(self) -> "Bipartition":
        return Bipartition(self.minus, self.plus)


def check_bipartition(m: Matrix, parts: Bipartition) -> None:
    n = len(m)
    if parts.plus & parts.minus or (parts.plus | parts.minus) != frozenset(range(n)):
        raise InvalidBipartition(f"{parts} is not a partition of the {n} vertices")
    for side in (parts.plus, parts.minus):
        for i in side:
            for j in side:
                if i != j and m[i][j]:
                    raise InvalidBipartition(f"vertices {i + 1} and {j + 1} are adjacent in one part")


def bipartition(c: CartanMatrix) -> Bipartition:
    """Two-colour the diagram breadth-first; vertex 1 (index 0) goes to I+."""
    n = c.n
    colour = [0] * n
    for start in range(n):
        if colour[start]:
            continue
        colour[start] = 1
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in c.neighbors(i):
                if colour[j] == 0:
                    colour[j] = -colour[i]
                    queue.append(j)
                elif colour[j] == colour[i]:
                    raise NotBipartite(f"odd cycle through vertices {i + 1} and {j + 1}")
    plus = frozenset(i for i in range(n) if colour[i] == 1)
    return Bipartition(plus, frozenset(range(n)) - plus)


def bipartite_orientation(c: CartanMatrix, parts: Bipartition) -> ExchangeMatrix:
    """Exchange matrix with every arrow pointing from I+ to I-."""
    check_bipartition(c.entries, parts)
    n = c.n
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j and c[i][j]:
                b[i][j] = -c[i][j] if i in parts.plus else c[i][j]
    return ExchangeMatrix(as_matrix(b))


# -- diagram automorphisms ------------------------------------------------------

@dataclass(frozen=True)
class DiagramAutomorphism:
    """An admissible vertex permutation, with its orbits.

    ``orbits`` are sorted by minimal member; ``orbit_of[v]`` is the index of
    the orbit containing ``v``.
    """

    perm: tuple[int, ...]
    order: int
    orbits: tuple[tuple[int, ...], ...]
    orbit_of: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.perm)

    def power(self, v: int, s: int) -> int:
        for _ in range(s % self.order):
            v = self.perm[v]
        return v

    def orbit_labels(self) -> tuple[int, ...]:
        """1-based minimal member of each orbit."""
        return tuple(orb[0] + 1 for orb in self.orbits)

    def is_identity(self) -> bool:
        return all(i == p for i, p in enumerate(self.perm))


def _orbits(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        orb, v = [], i
        while v not in seen:
            seen.add(v)
            orb.append(v)
            v = perm[v]
        out.append(tuple(sorted(orb)))
    return sorted(out)


def identity_automorphism(n: int) -> DiagramAutomorphism:
    return DiagramAutomorphism(tuple(range(n)), 1, tuple((i,) for i in range(n)), tuple(range(n)))


def check_admissible(perm: Sequence[int], x: Union[CartanMatrix, ExchangeMatrix, Matrix]) -> DiagramAutomorphism:
    """Certify that ``perm`` preserves ``x`` and has pairwise non-adjacent orbits."""
    m = x.entries if hasattr(x, "entries") else x
    perm = tuple(int(p) for p in perm)
    n = len(m)
    if sorted(perm) != list(range(n)):
        raise NotAutomorphism(f"{perm} is not a permutation of {n} vertices")
    for i in range(n):
        for j in range(n):
            if m[perm[i]][perm[j]] != m[i][j]:
                raise NotAutomorphism(
                    f"entry ({i + 1}, {j + 1}) is not preserved by the permutation")
    orbits = _orbits(perm)
    for orb in orbits:
        for i, j in itertools.permutations(orb, 2):
            if m[i][j]:
                raise NotAdmissible(
                    f"vertices {i + 1} and {j + 1} share an orbit but are adjacent")
    orbit_of = [0] * n
    for k, orb in enumerate(orbits):
        for v in orb:
            orbit_of[v] = k
    order = math.lcm(*(len(o) for o in orbits))
    return DiagramAutomorphism(perm, order, tuple(orbits), tuple(orbit_of))


def parse_cycles(text: str, n: int) -> tuple[int, ...]:
    """Parse 1-based cycle notation such as ``"(1 3)(5 6)"`` into a 0-based permutation."""
    stripped = text.strip()
    perm = list(range(n))
    if stripped in ("", "()", "id"):
        return tuple(perm)
    if not re.fullmatch(r"(\(\s*\d+(?:[\s,]+\d+)*\s*\)\s*)+", stripped):
        raise NotAutomorphism(f"cannot parse cycle notation {text!r}")
    touched = set()
    for body in re.findall(r"\(([^)]*)\)", stripped):
        cycle = [int(tok) - 1 for tok in re.split(r"[\s,]+", body.strip())]
        for v in cycle:
            if not 0 <= v < n:
                raise NotAutomorphism(f"vertex {v + 1} out of range 1..{n}")
            if v in touched:
                raise NotAutomorphism(f"vertex {v + 1} appears in two cycles")
            touched.add(v)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            perm[a] = b
    return tuple(perm)


def format_cycles(perm: Sequence[int]) -> str:
    cycles = [orb for orb in _cycle_list(perm) if len(orb) > 1]
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(v + 1) for v in cyc) + ")" for cyc in cycles)


def _cycle_list(perm: Sequence[int]) -> list[list[int]]:
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        cyc, v = [], i
        while v not in seen:
            seen.add(v)
            cyc.append(v)
            v = perm[v]
        out.append(cyc)
    return out


def is_sigma_stable(m: Matrix, perm: Sequence[int]) -> bool:
    n = len(m)
    return all(m[perm[i]][perm[j]] == m[i][j] for i in range(n) for j in range(n))


def fold_entries(m: Matrix, sigma: DiagramAutomorphism) -> Matrix:
    """Column-orbit sums ``b[I][J] = sum_{j in J} m[i][j]`` for any ``i`` in ``I``."""
    rows = []
    for orb_i in sigma.orbits:
        row = []
        for orb_j in sigma.orbits:
            sums = {sum(m[i][j] for j in orb_j) for i in orb_i}
            if len(sums) != 1:
                raise NotSigmaStable(
                    f"column-orbit sum over {[j + 1 for j in orb_j]} depends on the "
                    f"representative of {[i + 1 for i in orb_i]}")
            row.append(sums.pop())
        rows.append(tuple(row))
    return tuple(rows)


def fold_matrix(a: Union[CartanMatrix, ExchangeMatrix], sigma: DiagramAutomorphism):
    """Fold a Cartan or exchange matrix onto the orbits of ``sigma``."""
    if sigma.n != a.n:
        raise NotSigmaStable(f"automorphism acts on {sigma.n} vertices, matrix has {a.n}")
    folded = fold_entries(a.entries, sigma)
    if isinstance(a, CartanMatrix):
        labels = tuple(a.labels[orb[0]] for orb in sigma.orbits)
        return CartanMatrix(folded, labels)
    return ExchangeMatrix(folded)
