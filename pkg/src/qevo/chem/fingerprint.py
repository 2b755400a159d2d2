"""Circular substructure fingerprints and Tanimoto similarity.

Each atom's environment out to radius 3 is summarized by iterated
neighborhood hashing (ECFP-style).  Every (radius, environment) pair sets
one bit of a 1,024-bit vector via a 64-bit FNV-1a hash of the environment's
canonical description, folded modulo the width.  The scheme is portable and
deterministic with no chemistry-library dependence.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvalidMolecule, WidthMismatch
from ..graph import MoleculeGraph

WIDTH = 1024
RADIUS = 3

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK = (1 << 64) - 1


def _fnv1a(text: str) -> int:
    h = _FNV_OFFSET
    for byte in text.encode("utf-8"):
        h ^= byte
        h = (h * _FNV_PRIME) & _MASK
    return h


@dataclass(frozen=True)
class Fingerprint:
    """A fixed-width bit vector of hashed circular environments."""

    bits: frozenset[int]
    width: int = WIDTH
    radius: int = RADIUS

    def density(self) -> int:
        return len(self.bits)


def fingerprint(g: MoleculeGraph, width: int = WIDTH,
                radius: int = RADIUS) -> Fingerprint:
    """Hashes all atom environments of radius 0..radius into a bit vector.

    Raises:
        InvalidMolecule: for invalid graphs.
    """
    if not g.valid:
        raise InvalidMolecule("cannot fingerprint an invalid molecule")
    adj = g.neighbors()
    env = [
        f"{g.elements[i]}|{g.hydrogens[i]}|{len(adj[i])}|"
        + ",".join(str(o) for o in sorted(o for _, o in adj[i]))
        for i in range(g.num_atoms)
    ]
    bits: set[int] = set()
    for r in range(radius + 1):
        for i in range(g.num_atoms):
            bits.add(_fnv1a(f"{r}${env[i]}") % width)
        if r == radius:
            break
        env = [
            env[i] + "~" + ";".join(
                f"{o}:{env[j]}" for o, j in
                sorted(((o, j) for j, o in adj[i]),
                       key=lambda t: (t[0], env[t[1]]))
            )
            for i in range(g.num_atoms)
        ]
    return Fingerprint(frozenset(bits), width, radius)


def tanimoto(a: Fingerprint, b: Fingerprint) -> float:
    """|a & b| / |a | b|; defined as 1.0 when both are empty.

    Raises:
        WidthMismatch: when the widths differ.
    """
    if a.width != b.width:
        raise WidthMismatch(f"{a.width} != {b.width}")
    union = len(a.bits | b.bits)
    if union == 0:
        return 1.0
    return len(a.bits & b.bits) / union
