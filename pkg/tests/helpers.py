"""Shared test constructions: desk-scale fixtures and random G-set machinery."""

import numpy as np

from gsetfourier import DualBasis, FiniteAbelianGroup, GSet, inner

KLEIN = [2, 2]

# Klein four group on two 2-point orbits: e1 fixes the first pair and swaps the
# second, e2 swaps the first pair and fixes the second.
TWO_ORBIT_GENS = [[0, 1, 3, 2], [1, 0, 2, 3]]

# Same with a third orbit swapped by both generators (stabilizers are the three
# order-2 subgroups, one per orbit).
THREE_ORBIT_GENS = [[0, 1, 3, 2, 5, 4], [1, 0, 2, 3, 5, 4]]

#: exponents over 3rd roots of the bent function living on the three-orbit set
ALTERNATING_EXPONENTS = (0, 1, 0, 1, 0, 1)


def klein_group():
    return FiniteAbelianGroup(KLEIN)


def two_orbit_gset():
    return GSet.from_generators(klein_group(), 4, TWO_ORBIT_GENS)


def three_orbit_gset():
    return GSet.from_generators(klein_group(), 6, THREE_ORBIT_GENS)


def regular_gset(invariants):
    """The group acting on itself by translation."""
    G = FiniteAbelianGroup(invariants)
    return GSet(G, G.multiplication_table)


# -- random G-sets as unions of coset actions -----------------------------------


def all_subgroups(G):
    """Every subgroup, as a sorted tuple of element indices (m small)."""
    m = G.order
    mul = G.multiplication_table

    def close(seed):
        members = {0} | set(seed)
        frontier = list(members)
        while frontier:
            nxt = []
            for a in frontier:
                for b in list(members):
                    c = int(mul[a, b])
                    if c not in members:
                        members.add(c)
                        nxt.append(c)
            frontier = nxt
        return tuple(sorted(members))

    subgroups = {close([a]) for a in range(m)}
    changed = True
    while changed:
        changed = False
        for s in list(subgroups):
            for t in list(subgroups):
                joined = close(set(s) | set(t))
                if joined not in subgroups:
                    subgroups.add(joined)
                    changed = True
    return sorted(subgroups, key=lambda s: (len(s), s))


def coset_table(G, subgroup):
    """Action table of G on the cosets of a subgroup."""
    members = set(subgroup)
    mul = G.multiplication_table
    cosets = []
    seen = set()
    for a in range(G.order):
        if a in seen:
            continue
        coset = frozenset(int(mul[a, s]) for s in members)
        seen |= coset
        cosets.append(coset)
    index = {c: i for i, c in enumerate(cosets)}
    table = np.empty((G.order, len(cosets)), dtype=np.int64)
    for a in range(G.order):
        for i, c in enumerate(cosets):
            table[a, i] = index[frozenset(int(mul[a, x]) for x in c)]
    return table


def union_gset(G, subgroups):
    """G-set assembled from one coset orbit per listed subgroup."""
    blocks = [coset_table(G, s) for s in subgroups]
    offsets = np.cumsum([0] + [b.shape[1] for b in blocks])
    table = np.hstack([b + off for b, off in zip(blocks, offsets)])
    return GSet(G, table)


GROUP_POOL = [
    [2],
    [3],
    [4],
    [2, 2],
    [5],
    [6],
    [7],
    [8],
    [2, 4],
    [2, 2, 2],
    [9],
    [3, 3],
    [10],
    [2, 6],
    [12],
    [11],
]


def random_gset(rng, max_points=12, pool=GROUP_POOL):
    """Random group from the pool with a random union of coset orbits, n <= max_points."""
    G = FiniteAbelianGroup(pool[rng.integers(len(pool))])
    subgroups = all_subgroups(G)
    chosen = []
    points = 0
    while True:
        s = subgroups[rng.integers(len(subgroups))]
        size = G.order // len(s)
        if points + size > max_points:
            if chosen:
                break
            continue
        chosen.append(s)
        points += size
        if points == max_points or rng.random() < 0.35:
            break
    return union_gset(G, chosen)


def random_function(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def random_unitary(rng, n):
    return np.exp(2j * np.pi * rng.random(n))


def random_group_valued(rng, X, invariants):
    from gsetfourier import GroupValuedFunction

    H = FiniteAbelianGroup(invariants)
    return GroupValuedFunction(X, H, rng.integers(H.order, size=X.n))


# -- dual-basis comparisons ---------------------------------------------------------


def remixed_dual_basis(D, rng):
    """A second valid dual basis: unit rescalings and within-component reordering.

    Conjugate pairs receive mirrored scalars and mirrored permutations so the
    conjugation-closure condition survives exactly.
    """
    n = D.n
    partner = D.conj_partner
    eps = np.ones(n, dtype=np.complex128)
    done = np.zeros(n, dtype=bool)
    for i in range(n):
        if done[i]:
            continue
        j = int(partner[i])
        if j == i:
            eps[i] = rng.choice([-1.0, 1.0])
        else:
            phase = np.exp(2j * np.pi * rng.random())
            eps[i], eps[j] = phase, np.conj(phase)
        done[i] = done[j] = True

    order = np.arange(n)
    for p in set(int(v) for v in D.psi_index):
        block = np.nonzero(D.psi_index == p)[0]
        order[block] = block[rng.permutation(len(block))]

    inverse = np.empty(n, dtype=np.int64)
    inverse[order] = np.arange(n)
    matrix = eps[order, None] * D.matrix[order]
    return DualBasis(D.gset, matrix, D.psi_index[order], inverse[partner[order]])


def assert_dual_equivalent(D, rows, psi_tuples):
    """Each given row must match a distinct basis function with the same character,
    up to a unit scalar (|<row, lambda>| = n with both squared norms n)."""
    n = D.n
    used = set()
    for row, psi in zip(rows, psi_tuples):
        p = D.gset.group.element_index(psi)
        matches = [
            i
            for i in range(n)
            if i not in used
            and int(D.psi_index[i]) == p
            and abs(abs(inner(row, D.matrix[i])) - n) <= 1e-8 * n
        ]
        assert matches, f"no basis function matches a row with character {psi}"
        used.add(matches[0])
    assert len(used) == len(rows)
