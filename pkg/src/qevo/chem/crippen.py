"""Atom-contribution octanol/water partition coefficient (logP).

Implements the Wildman-Crippen atomic contribution scheme for the atom
classes reachable from the supported vocabularies: aliphatic C, N, O, F and
Cl plus their attached hydrogens.  Each atom is assigned the first matching
class in table order and the molecule's logP is the sum of contributions.

Aromatic perception is not performed: rings that a perception pass would
aromatize are typed with their localized bonds.  With the 2^3 vocabulary
this is immaterial for token counts below eight (closures can only reach
back 1, 2, 4, 11, 12 or 14 atoms, so no six-ring exists at all), and no
gated reference value involves such a ring.
"""

from __future__ import annotations

from ..errors import InvalidMolecule, UnsupportedAtomClass
from ..graph import MoleculeGraph

# Contribution values for the implemented classes.
_C1 = 0.1441   # sp3 C bonded only to C/H, at most two heavy neighbors
_C2 = 0.0000   # sp3 C bonded only to C/H, three or four heavy neighbors
_C3 = -0.2035  # sp3 C with a heteroatom neighbor, two or three hydrogens
_C4 = -0.2051  # sp3 C with a heteroatom neighbor, zero or one hydrogen
_C5 = -0.2783  # C double-bonded to a heteroatom
_C6 = 0.1551   # C double-bonded to carbon
_C7 = 0.0017   # C with a triple bond
_N1 = -1.0190  # primary amine
_N2 = -0.7096  # secondary amine
_N5 = 0.08387  # imine =NH
_N6 = 0.1836   # substituted imine =N-
_N7 = -0.3187  # tertiary amine
_N9 = 0.01508  # nitrile
_NS = -0.4806  # nitrogen fallback (e.g. bare ammonia)
_O2 = -0.2893  # hydroxyl
_O3 = -0.0684  # aliphatic ether
_O5 = 0.0335   # O double-bonded to N or O
_O9 = -0.1526  # carbonyl with at most one heteroatom substituent
_O11 = 0.4833  # carbonyl with two heteroatom substituents
_OS = -0.1188  # oxygen fallback
_F = 0.4202
_CL = 0.6895
_H1 = 0.1230   # H on carbon
_H2 = -0.2677  # H of an alcohol-type hydroxyl (or on a bare heteroatom)
_H3 = 0.2142   # H on nitrogen, or hydroxyl attached to nitrogen
_H4 = 0.2980   # H of an enol or acid hydroxyl, or of a peroxide


def _carbon(elem_of, h, nbrs) -> float:
    has_double_het = any(o == 2 and elem_of(j) != "C" for j, o in nbrs)
    if has_double_het:
        return _C5
    if any(o == 3 for j, o in nbrs):
        return _C7
    if any(o == 2 for j, o in nbrs):  # double bond to carbon
        return _C6
    # saturated carbon
    if all(elem_of(j) == "C" for j, _ in nbrs):
        return _C1 if len(nbrs) <= 2 else _C2
    return _C3 if h >= 2 else _C4


def _nitrogen(elem_of, h, nbrs) -> float:
    if any(o == 3 for _, o in nbrs):
        return _N9
    doubles = sum(1 for _, o in nbrs if o == 2)
    if doubles:
        return _N5 if h == 1 else _N6
    if h == 2 and len(nbrs) == 1:
        return _N1
    if h == 1 and len(nbrs) == 2:
        return _N2
    if h == 0 and len(nbrs) == 3:
        return _N7
    return _NS


def _oxygen(i, elem_of, h, nbrs, adj) -> float:
    if h > 0:
        return _O2
    doubles = [j for j, o in nbrs if o == 2]
    if doubles:
        partner = doubles[0]
        pelem = elem_of(partner)
        if pelem in ("N", "O"):
            return _O5
        return _carbonyl_oxygen(i, elem_of, partner, adj)
    if len(nbrs) == 2:
        return _O3
    return _OS


def _carbonyl_oxygen(oxy_idx, elem_of, carbon, adj) -> float:
    """Distinguishes carbonyl oxygen classes by the carbon's other ligands."""
    others = [(elem_of(j), o) for j, o in adj[carbon] if j != oxy_idx]
    if any(o >= 2 for _, o in others):
        # a second multiple bond on the carbonyl carbon: only O=C=O stays
        # in the main carbonyl class
        if others == [("O", 2)]:
            return _O9
        return _OS
    ncarbon = sum(1 for e, _ in others if e == "C")
    het = [e for e, _ in others if e != "C"]
    h_on_c = 2 - len(others)
    if ncarbon >= 1 or h_on_c == 2:
        return _O9
    if h_on_c == 1 and len(het) == 1:
        return _O9 if het[0] in ("N", "O") else _OS
    if len(het) == 2:
        return _O11
    return _OS


def _hydrogen_unit(parent_elem: str, parent_idx: int, g: MoleculeGraph,
                   adj) -> float:
    if parent_elem == "C":
        return _H1
    if parent_elem == "N":
        return _H3
    if parent_elem == "O":
        nbrs = adj[parent_idx]
        for j, o in nbrs:
            if g.elements[j] == "N":
                return _H3
        for j, o in nbrs:
            if g.elements[j] == "O":
                return _H4
        for j, o in nbrs:
            if g.elements[j] == "C":
                if any(oo == 2 and g.elements[jj] in ("C", "N", "O")
                       for jj, oo in adj[j]):
                    return _H4
                if not any(oo >= 2 for _, oo in adj[j]):
                    return _H2
                # sp carbon neighbor (e.g. H-O-C#C): alcohol-type fallback
                return _H2
        return _H2  # bare water / O-F hydroxyl
    if parent_elem in ("F", "Cl"):
        return _H2  # H directly on a non-C/N/O atom
    raise UnsupportedAtomClass(f"hydrogen on {parent_elem}")


def atom_contributions(g: MoleculeGraph) -> list[float]:
    """Per-heavy-atom contributions including each atom's hydrogens."""
    if not g.valid:
        raise InvalidMolecule("cannot score an invalid molecule")
    adj = g.neighbors()
    elem_of = g.elements.__getitem__
    out = []
    for i, elem in enumerate(g.elements):
        nbrs = adj[i]
        h = g.hydrogens[i]
        if elem == "C":
            value = _carbon(elem_of, h, nbrs)
        elif elem == "N":
            value = _nitrogen(elem_of, h, nbrs)
        elif elem == "O":
            value = _oxygen(i, elem_of, h, nbrs, adj)
        elif elem == "F":
            value = _F
        elif elem == "Cl":
            value = _CL
        else:
            raise UnsupportedAtomClass(f"element {elem!r}")
        if h:
            value += h * _hydrogen_unit(elem, i, g, adj)
        out.append(value)
    return out


def crippen_logp(g: MoleculeGraph) -> float:
    """Wildman-Crippen logP of a valid molecule.

    Raises:
        InvalidMolecule: for invalid graphs.
        UnsupportedAtomClass: if an atom falls outside the implemented
            table subset (signals a decoder/vocabulary mismatch).
    """
    return float(sum(atom_contributions(g)))
