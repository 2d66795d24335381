import itertools

import pytest

from clusterfold.cartan import Bipartition, CartanMatrix, bipartition, cartan_from_label, check_admissible, parse_cycles
from clusterfold.errors import NotAlmostPositive, NotFiniteType, NotInTargetSystem, OrbitConstancyViolation
from clusterfold.roots import (
    compatibility_table,
    degree_by_reduction,
    fold_root,
    folding_degree_check,
    format_root,
    positive_roots,
    root_system,
    sigma_i,
    sigma_on_roots,
    tau,
    tau_perm,
)

LABELS = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "D5", "G2", "F4", "E6"]


def system(label):
    return root_system(cartan_from_label(label))


def inner(c, x, y):
    d = c.symmetrizer
    return sum(x[i] * d[i] * c[i][j] * y[j] for i in range(c.n) for j in range(c.n))


def norm_oracle(c, box):
    """Positive roots as the nonnegative lattice vectors whose norm matches a
    simple root norm and whose coefficients pass the integrality test."""
    norms = {inner(c, e, e) for e in (tuple(int(i == j) for j in range(c.n)) for i in range(c.n))}
    simple_norm = [2 * c.symmetrizer[i] for i in range(c.n)]
    out = set()
    for x in itertools.product(range(box + 1), repeat=c.n):
        if not any(x):
            continue
        q = inner(c, x, x)
        if q in norms and all((x[i] * simple_norm[i]) % q == 0 for i in range(c.n)):
            out.add(x)
    return out


@pytest.mark.parametrize("label, box", [
    ("A3", 2), ("A4", 2), ("B2", 3), ("B3", 3), ("C3", 3), ("B4", 3), ("G2", 4),
    ("D4", 3), ("F4", 4), ("E6", 3),
])
def test_positive_roots_match_norm_oracle(label, box):
    c = cartan_from_label(label)
    assert set(system(label).positives) == norm_oracle(c, box)


@pytest.mark.parametrize("label, count, h", [
    ("A1", 1, 2), ("A2", 3, 3), ("A3", 6, 4), ("A4", 10, 5), ("B2", 4, 4), ("B3", 9, 6),
    ("B4", 16, 8), ("C3", 9, 6), ("C4", 16, 8), ("D4", 12, 6), ("D5", 20, 8),
    ("G2", 6, 6), ("F4", 24, 12), ("E6", 36, 12),
])
def test_root_counts_and_coxeter_numbers(label, count, h):
    rs = system(label)
    assert len(rs.positives) == count
    assert len(rs) == count + rs.n
    assert rs.coxeter_number == h


def test_explicit_roots():
    assert system("B2").positives == ((0, 1), (1, 0), (1, 1), (1, 2))
    assert system("G2").positives == ((0, 1), (1, 0), (1, 1), (1, 2), (1, 3), (2, 3))
    assert system("A2").almost_positives == ((-1, 0), (0, -1), (0, 1), (1, 0), (1, 1))
    assert system("D4").highest_root() == (1, 2, 1, 1)
    assert system("F4").highest_root() == (2, 3, 4, 2)
    assert system("E6").highest_root() == (1, 2, 2, 3, 2, 1)


def test_positive_roots_rejects_infinite_type():
    # bypass validation to hand an affine matrix straight to the closure
    c = object.__new__(CartanMatrix)
    object.__setattr__(c, "entries", ((2, -2), (-2, 2)))
    object.__setattr__(c, "labels", ())
    with pytest.raises(NotFiniteType):
        positive_roots(c)


def test_index_of_rejects_non_roots():
    with pytest.raises(NotAlmostPositive):
        system("A2").index_of((1, -1))
    with pytest.raises(NotAlmostPositive):
        system("A2").index_of((-1, -1))


def test_format_root():
    assert format_root((1, 2, 1)) == "(1,2,1)"
    assert format_root((0, -1)) == "(0,-1)"


# -- sigma_i, tau -------------------------------------------------------------------------

def test_sigma_i_examples():
    rs = system("A2")
    assert sigma_i(rs, 0, (-1, 0)) == (1, 0)
    assert sigma_i(rs, 0, (0, -1)) == (0, -1)
    assert sigma_i(rs, 0, (0, 1)) == (1, 1)
    assert sigma_i(rs, 0, (1, 0)) == (-1, 0)


@pytest.mark.parametrize("label", LABELS)
def test_sigma_i_and_tau_are_involutions(label):
    rs = system(label)
    parts = bipartition(rs.cartan)
    for perm in list(rs.sigma_perms) + [tau_perm(rs, "+", parts), tau_perm(rs, "-", parts)]:
        assert all(perm[perm[k]] == k for k in range(len(rs)))


def test_tau_examples_a2():
    rs = system("A2")
    parts = Bipartition(frozenset({0}), frozenset({1}))
    assert tau(rs, "+", parts, (-1, 0)) == (1, 0)
    assert tau(rs, "-", parts, (0, 1)) == (0, -1)
    assert tau(rs, "-", parts, (1, 0)) == (1, 1)


@pytest.mark.parametrize("label", LABELS)
def test_tau_group_has_dihedral_order(label):
    # tau_- tau_+ has order (h+2)/2 or h+2 on almost positive roots
    rs = system(label)
    parts = bipartition(rs.cartan)
    tp, tm = tau_perm(rs, "+", parts), tau_perm(rs, "-", parts)
    rot = [tm[tp[k]] for k in range(len(rs))]
    cur, order = list(range(len(rs))), 0
    while True:
        cur = [rot[k] for k in cur]
        order += 1
        if cur == list(range(len(rs))):
            break
    h = rs.coxeter_number
    assert order in ((h + 2) // 2, h + 2)


# -- compatibility degrees -------------------------------------------------------------

def test_degree_examples_a2():
    t = compatibility_table(system("A2"))
    assert t.degree((-1, 0), (1, 0)) == 1
    assert t.degree((-1, 0), (1, 1)) == 1
    assert t.degree((-1, 0), (0, 1)) == 0
    assert t.degree((-1, 0), (0, -1)) == 0
    assert t.degree((1, 0), (0, 1)) == 1
    assert t.degree((1, 1), (1, 0)) == 0


def test_degree_examples_b2_are_not_symmetric():
    t = compatibility_table(system("B2"))
    assert t.degree((0, -1), (1, 2)) == 2
    assert t.degree((1, 2), (0, -1)) == 1
    assert t.degree((0, 1), (1, 0)) == 2
    assert t.degree((1, 0), (0, 1)) == 1


def test_degree_examples_g2():
    t = compatibility_table(system("G2"))
    assert t.degree((0, -1), (2, 3)) == 3
    assert t.degree((-1, 0), (2, 3)) == 2


@pytest.mark.parametrize("label", LABELS)
def test_base_case_and_reduction(label):
    rs = system(label)
    parts = bipartition(rs.cartan)
    t = compatibility_table(rs, parts)
    for i in range(rs.n):
        neg = tuple(-int(j == i) for j in range(rs.n))
        for beta in rs.almost_positives:
            assert t.degree(neg, beta) == max(beta[i], 0)
    step = max(1, len(rs) // 12)
    for alpha in rs.almost_positives[::step]:
        for beta in rs.almost_positives:
            assert degree_by_reduction(rs, parts, alpha, beta) == t.degree(alpha, beta)


@pytest.mark.parametrize("label", LABELS)
def test_degree_invariants(label):
    rs = system(label)
    parts = bipartition(rs.cartan)
    t = compatibility_table(rs, parts)
    swapped = compatibility_table(rs, parts.swapped())
    c = rs.cartan
    size = len(rs)
    for a in range(size):
        assert t.degrees[a][a] == 0
        for b in range(size):
            dab = t.degrees[a][b]
            for perm in (t.tau_plus, t.tau_minus):
                assert t.degrees[perm[a]][perm[b]] == dab
            assert swapped.degrees[a][b] == dab
            x, y = rs.almost_positives[a], rs.almost_positives[b]
            assert dab * inner(c, x, x) == t.degrees[b][a] * inner(c, y, y)


@pytest.mark.parametrize("label", ["A2", "A5", "A6", "D4", "D5", "D6", "E6"])
def test_simply_laced_symmetry(label):
    t = compatibility_table(system(label))
    size = len(t.degrees)
    assert all(t.degrees[a][b] == t.degrees[b][a] for a in range(size) for b in range(size))


# -- folding roots -----------------------------------------------------------------------

def automorphism(label, cycles):
    c = cartan_from_label(label)
    return c, check_admissible(parse_cycles(cycles, c.n), c)


def test_sigma_on_roots_examples():
    _, s = automorphism("A3", "(1 3)")
    orb = sigma_on_roots(s, (1, 1, 0))
    assert orb.image == (0, 1, 1)
    assert orb.period == 2
    assert sigma_on_roots(s, (1, 1, 1)).period == 1
    _, r = automorphism("D4", "(1 3 4)")
    assert sigma_on_roots(r, (1, 1, 0, 0)).orbit == ((1, 1, 0, 0), (0, 1, 1, 0), (0, 1, 0, 1))


def test_fold_root_examples():
    c, s = automorphism("A3", "(1 3)")
    assert fold_root(s, (1, 0, 0)) == (1, 0)
    assert fold_root(s, (0, 1, 0)) == (0, 1)
    assert fold_root(s, (1, 1, 0)) == (1, 2)
    assert fold_root(s, (1, 1, 1)) == (1, 1)
    assert fold_root(s, (-1, 0, 0)) == (-1, 0)
    _, r = automorphism("D4", "(1 3 4)")
    assert fold_root(r, (1, 2, 1, 1)) == (1, 2)
    assert fold_root(r, (0, 1, 1, 1)) == (2, 3)
    assert fold_root(r, (1, 1, 1, 0)) == (2, 3)


def test_fold_root_errors():
    _, s = automorphism("A3", "(1 3)")
    with pytest.raises(OrbitConstancyViolation):
        fold_root(_BadAutomorphism(), (1, 0, 0))
    with pytest.raises(NotInTargetSystem):
        fold_root(s, (2, 0, 0), system("B2"))


class _BadAutomorphism:
    """Identity action but one orbit grouping two vertices."""
    n = 3
    perm = (0, 1, 2)
    orbits = ((0, 2), (1,))


@pytest.mark.parametrize("label, cycles, sizes", [
    ("A3", "(1 3)", (9, 6, 6)),
    ("D4", "(1 3 4)", (16, 8, 8)),
    ("D4", "(3 4)", (16, 12, 12)),
    ("A5", "(1 5)(2 4)", (20, 12, 12)),
])
def test_orbits_biject_with_folded_roots(label, cycles, sizes):
    from clusterfold.cartan import fold_matrix
    c, s = automorphism(label, cycles)
    src, tgt = root_system(c), root_system(fold_matrix(c, s))
    orbits = {frozenset(sigma_on_roots(s, a, src).orbit) for a in src.almost_positives}
    images = {fold_root(s, min(o), tgt) for o in orbits}
    assert (len(src), len(orbits), len(images)) == sizes
    assert images == set(tgt.almost_positives)


def test_folding_degree_check_small():
    c, s = automorphism("A3", "(1 3)")
    report = folding_degree_check(c, s)
    assert report.ok, report.findings
    assert report.stats == {"pairs": 81, "orbits": 6}


def test_folding_degree_check_identity():
    c = cartan_from_label("D4")
    report = folding_degree_check(c, check_admissible((0, 1, 2, 3), c))
    assert report.ok
    assert report.stats["orbits"] == 16
