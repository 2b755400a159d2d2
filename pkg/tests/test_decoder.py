"""Decoder semantics: repair rules, truncation, rings, branches."""

import itertools

import pytest

from qevo.codec import TABLE_2_3, TABLE_2_4, decode_bits
from qevo.decoder import decode_molecule
from qevo.graph import canonicalize

C6 = ["[C]"] * 6


def canon(tokens):
    g = decode_molecule(tokens)
    assert g.valid
    return canonicalize(g)


def test_hexane():
    g = decode_molecule(C6)
    assert g.elements == ("C",) * 6
    assert sorted(g.bonds) == [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1)]
    assert g.hydrogens == (3, 2, 2, 2, 2, 3)
    assert canonicalize(g) == "CCCCCC"


def test_two_atom_chain():
    assert canon(["[C]", "[O]"]) == "CO"


def test_bond_order_clipped_by_valence():
    # A triple-bond request onto an oxygen clips to the oxygen's capacity.
    g = decode_molecule(["[O]", "[#N]"])
    assert g.bonds == ((0, 1, 2),)
    assert g.elements == ("O", "N")


def test_leading_ring_and_branch_are_skipped_without_index_read():
    # Before any atom exists the ring/branch tokens do nothing and do not
    # swallow the next token.
    assert canon(["[Ring1]", "[C]", "[C]"]) == "CC"
    assert canon(["[Branch1]", "[C]", "[C]"]) == "CC"


def test_empty_decode_is_invalid():
    g = decode_molecule(["[Ring1]", "[Ring1]", "[Ring1]"])
    assert not g.valid
    with pytest.raises(Exception):
        canonicalize(g)


def test_saturated_chain_truncates_rest():
    # F has one bond: the chain ends there and the rest is discarded.
    assert canon(["[C]", "[F]", "[C]", "[C]"]) == "CF"


def test_three_ring_with_two_double_bonds():
    # The ring token reads the next token as its index; an index of 1
    # reaches back two atoms, closing a three-ring.
    g = decode_molecule(["[C]", "[=C]", "[=C]", "[Ring1]", "[Ring1]"])
    assert g.valid
    orders = sorted(o for _, _, o in g.bonds)
    assert orders == [1, 2, 2]
    assert len(g.elements) == 3
    assert g.hydrogens == (1, 0, 1)


def test_trailing_ring_reads_zero_index_and_upgrades_bond():
    # Missing index symbols read as zero: the closure lands on the previous
    # bond, upgrading it to a double bond.
    g = decode_molecule(["[C]", "[C]", "[C]", "[C]", "[C]", "[Ring1]"])
    assert sorted(o for _, _, o in g.bonds) == [1, 1, 1, 2]
    assert len(g.elements) == 5


def test_trailing_branch_is_a_no_op():
    assert canon(["[C]", "[C]", "[C]", "[C]", "[C]", "[Branch1]"]) == "CCCCC"


def test_invalidating_dialect_marks_truncated_reads():
    from qevo.decoder import Dialect
    strict = Dialect(dangling_invalidates=True)
    g = decode_molecule(["[C]", "[C]", "[Ring1]"], strict)
    assert not g.valid
    assert g.invalid_reason == "truncated index"
    # interior sequences decode the same under both dialects
    assert canonicalize(decode_molecule(["[C]", "[C]", "[Ring1]", "[C]"],
                                        strict)) == "C=C"


def test_branch_builds_side_chain():
    # [Branch1] reads one index token ([C] -> 0, so a one-token branch) and
    # then one content token; the final [C] resumes the main chain.
    g = decode_molecule(["[C]", "[C]", "[Branch1]", "[C]", "[C]", "[C]"])
    degrees = sorted(len(n) for n in g.neighbors())
    assert degrees == [1, 1, 1, 3]
    assert canonicalize(g) == "CC(C)C"


def test_branch_cannot_open_with_single_free_bond():
    # After C-O the oxygen has one free bond: branch token is skipped, its
    # would-be index token continues the chain instead.
    assert canon(["[C]", "[O]", "[Branch1]", "[C]"]) == "COC"


def test_ring_spends_chain_state():
    # After the ring closes, the previous atom has one bond left of its
    # chain allowance; a double-bond request clips to single.
    g = decode_molecule(["[C]", "[=C]", "[=C]", "[Ring1]", "[Ring1]", "[=C]"])
    # the post-ring atom attaches with a single bond (state was 1)
    outer = [b for b in g.bonds if 3 in b[:2]]
    assert outer == ((2, 3, 1),) or outer == [(2, 3, 1)]


def test_decode_from_bits_round_trip():
    bits = "000000000000000000"
    toks = decode_bits(bits, TABLE_2_3)
    assert canon(toks) == "CCCCCC"


def test_all_two_token_sequences_decode(clean=True):
    for vocab in (TABLE_2_3, TABLE_2_4):
        for pair in itertools.product(vocab.tokens, repeat=2):
            g = decode_molecule(list(pair))
            if g.valid:
                canonicalize(g)


def test_valence_safety_exhaustive_k4():
    from qevo.graph import MAX_VALENCE
    for seq in itertools.product(TABLE_2_3.tokens, repeat=4):
        g = decode_molecule(seq)
        if not g.valid:
            continue
        adj = g.neighbors()
        for i, elem in enumerate(g.elements):
            bond_sum = sum(o for _, o in adj[i])
            assert bond_sum + g.hydrogens[i] == MAX_VALENCE[elem]
            assert bond_sum <= MAX_VALENCE[elem]


def test_connected_when_valid_k5_sample():
    import random
    rng = random.Random(3)
    for _ in range(2000):
        seq = [rng.choice(TABLE_2_4.tokens) for _ in range(5)]
        g = decode_molecule(seq)
        if not g.valid:
            continue
        adj = g.neighbors()
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v, _ in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        assert len(seen) == g.num_atoms
