"""Canonical form: determinism, relabeling invariance, distinctness."""

import itertools
import random

import pytest

from qevo.decoder import decode_molecule
from qevo.errors import InvalidMolecule
from qevo.graph import INVALID_EMPTY, MoleculeGraph, canonicalize, make_graph, ring_sizes


def relabel(g: MoleculeGraph, perm: list[int]) -> MoleculeGraph:
    """Applies an atom permutation: new index of old atom i is perm[i]."""
    inv = [0] * len(perm)
    for old, new in enumerate(perm):
        inv[new] = old
    elements = [g.elements[inv[i]] for i in range(g.num_atoms)]
    hydro = [g.hydrogens[inv[i]] for i in range(g.num_atoms)]
    bonds = [(perm[i], perm[j], o) for i, j, o in g.bonds]
    return make_graph(elements, bonds, hydro)


def test_hexane_permutation_invariance():
    g = decode_molecule(["[C]"] * 6)
    rng = random.Random(11)
    base = canonicalize(g)
    for _ in range(50):
        perm = list(range(6))
        rng.shuffle(perm)
        assert canonicalize(relabel(g, perm)) == base


def test_distinct_skeletons_distinct_text():
    ether = decode_molecule(["[C]", "[O]", "[C]"])      # C-O-C
    alcohol = decode_molecule(["[C]", "[C]", "[O]"])    # C-C-O
    assert canonicalize(ether) != canonicalize(alcohol)


def test_idempotent():
    g = decode_molecule(["[C]", "[=C]", "[N]", "[C]", "[F]"])
    assert canonicalize(g) == canonicalize(g)


def test_invalid_raises():
    with pytest.raises(InvalidMolecule):
        canonicalize(INVALID_EMPTY)


def test_single_atoms():
    assert canonicalize(decode_molecule(["[C]"])) == "C"
    assert canonicalize(decode_molecule(["[O]"])) == "O"


def test_relabeling_invariance_random_molecules():
    from qevo.codec import TABLE_2_4
    rng = random.Random(23)
    checked = 0
    while checked < 300:
        seq = [rng.choice(TABLE_2_4.tokens) for _ in range(rng.randint(2, 9))]
        g = decode_molecule(seq)
        if not g.valid or g.num_atoms < 2:
            continue
        base = canonicalize(g)
        for _ in range(5):
            perm = list(range(g.num_atoms))
            rng.shuffle(perm)
            assert canonicalize(relabel(g, perm)) == base
        checked += 1


def test_canonical_distinguishes_bond_orders():
    single = make_graph(["C", "C"], [(0, 1, 1)], [3, 3])
    double = make_graph(["C", "C"], [(0, 1, 2)], [2, 2])
    assert canonicalize(single) != canonicalize(double)


def test_pairwise_distinct_on_full_three_token_space():
    """Non-isomorphic graphs in the 2^9 space get distinct texts.

    Verified by comparing canonical equality against brute-force
    isomorphism (all permutations of at most 3 atoms).
    """
    from qevo.codec import TABLE_2_3

    def iso(a: MoleculeGraph, b: MoleculeGraph) -> bool:
        if a.elements == b.elements and a.bonds == b.bonds and a.hydrogens == b.hydrogens:
            return True
        if sorted(a.elements) != sorted(b.elements) or len(a.bonds) != len(b.bonds):
            return False
        for perm in itertools.permutations(range(a.num_atoms)):
            if all(a.elements[i] == b.elements[perm[i]] for i in range(a.num_atoms)):
                mapped = sorted(
                    (min(perm[i], perm[j]), max(perm[i], perm[j]), o)
                    for i, j, o in a.bonds)
                if tuple(mapped) == b.bonds:
                    return True
        return False

    mols = []
    for seq in itertools.product(TABLE_2_3.tokens, repeat=3):
        g = decode_molecule(seq)
        if g.valid:
            mols.append(g)
    by_canon: dict[str, MoleculeGraph] = {}
    for g in mols:
        text = canonicalize(g)
        if text in by_canon:
            assert iso(g, by_canon[text]), f"collision at {text}"
        else:
            for other_text, other in by_canon.items():
                assert not iso(g, other), (
                    f"isomorphic graphs got {text} vs {other_text}")
            by_canon[text] = g


def test_ring_sizes():
    tri = decode_molecule(["[C]", "[=C]", "[=C]", "[Ring1]", "[Ring1]"])
    assert ring_sizes(tri) == [3]
    chain = decode_molecule(["[C]"] * 5)
    assert ring_sizes(chain) == []
