"""Molecular property scorers and the two optimization losses.

The solubility loss is the negated atom-contribution logP, so minimizing
it maximizes logP; invalid molecules score the fixed penalty 1.0.  The
drug-design loss combines three bounded terms: a drug-likeness term with a
large-ring branch, a normalized synthetic-accessibility term, and a
dissimilarity term against a reference fingerprint.

Drug-likeness and synthetic accessibility are documented proxies, not
reproductions of the fitted literature models (those require descriptor
sets and a fragment corpus).  The proxies keep the published structure,
bounds and penalty branches; swap in exact scorers through the same
callable contract if bit-parity is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from ..errors import MissingReference
from ..graph import MoleculeGraph, ring_sizes
from .crippen import crippen_logp
from .fingerprint import Fingerprint, fingerprint, tanimoto

INVALID_PENALTY = 1.0


@dataclass(frozen=True)
class PropertyScore:
    value: float
    valid: bool


@dataclass(frozen=True)
class LossWeights:
    alpha: float = 2.0
    beta: float = 1.0
    gamma: float = 0.0

    def __post_init__(self):
        if min(self.alpha, self.beta, self.gamma) < 0:
            raise ValueError("weights must be nonnegative")
        if self.alpha + self.beta + self.gamma <= 0:
            raise ValueError("at least one weight must be positive")


def _window_desirability(x: float, lo: float, hi: float, margin: float) -> float:
    """1.0 inside [lo, hi], linear falloff to 0 over ``margin`` outside."""
    if lo <= x <= hi:
        return 1.0
    dist = (lo - x) if x < lo else (x - hi)
    return max(0.0, 1.0 - dist / margin)


def _cap_desirability(count: float, cap: float, margin: float) -> float:
    if count <= cap:
        return 1.0
    return max(0.0, 1.0 - (count - cap) / margin)


def qed_proxy(g: MoleculeGraph) -> float:
    """Drug-likeness proxy in [0, 1].

    Product of four desirability terms: heavy-atom count window 10..35,
    logP window 0..4, hydrogen-bond donor/acceptor caps 5/10, and a
    max-ring-size penalty.  Monotone-decreasing in the distance from the
    drug-like window and in rule-of-five-style violations.
    """
    heavy = g.num_atoms
    d_size = _window_desirability(heavy, 10, 35, margin=10)
    d_logp = _window_desirability(crippen_logp(g), 0.0, 4.0, margin=3.0)
    donors = sum(1 for i, e in enumerate(g.elements)
                 if e in ("N", "O") and g.hydrogens[i] > 0)
    acceptors = sum(1 for e in g.elements if e in ("N", "O"))
    d_hbond = _cap_desirability(donors, 5, 3) * _cap_desirability(acceptors, 10, 5)
    sizes = ring_sizes(g)
    max_ring = max(sizes) if sizes else 0
    d_ring = 1.0 if max_ring <= 7 else max(0.1, 1.0 - 0.15 * (max_ring - 7))
    return d_size * d_logp * d_hbond * d_ring


def sas_proxy(g: MoleculeGraph) -> float:
    """Synthetic-accessibility proxy in [1, 10] (higher is harder).

    Sigmoid-normalized structural complexity built from ring count,
    branching degree and heteroatom fraction.
    """
    n = max(g.num_atoms, 1)
    adj = g.neighbors()
    rings = len(ring_sizes(g))
    branching = sum(max(0, len(adj[i]) - 2) for i in range(g.num_atoms)) / n
    het = sum(1 for e in g.elements if e != "C") / n
    z = 0.8 * rings + 1.5 * branching + 2.0 * het
    return 1.0 + 9.0 / (1.0 + math.exp(-(z - 1.5) / 0.8))


def drug_term_a(g: MoleculeGraph) -> float:
    """Drug-likeness term: (1.0 | 1.2) - qed, the lower constant when a
    ring with more than 7 atoms is present."""
    sizes = ring_sizes(g)
    base = 1.0 if sizes and max(sizes) > 7 else 1.2
    return base - qed_proxy(g)


def drug_term_b(g: MoleculeGraph) -> float:
    """Normalized synthetic accessibility, in [0.1, 1.0]."""
    return sas_proxy(g) / 10.0


def drug_term_c(g: MoleculeGraph, ref: Fingerprint) -> float:
    """Dissimilarity to the reference: 1 - Tanimoto, in [0, 1]."""
    return 1.0 - tanimoto(fingerprint(g), ref)


def plogp_loss(g: MoleculeGraph) -> PropertyScore:
    """Negated logP for valid molecules, the 1.0 penalty otherwise."""
    if not g.valid:
        return PropertyScore(INVALID_PENALTY, False)
    return PropertyScore(-crippen_logp(g), True)


def drug_design_loss(g: MoleculeGraph, w: LossWeights,
                     ref: Fingerprint | None = None) -> PropertyScore:
    """Weighted mean of the three drug-design terms; 1.0 when invalid.

    Raises:
        MissingReference: when gamma > 0 and no reference is supplied.
    """
    if w.gamma > 0 and ref is None:
        raise MissingReference("gamma > 0 requires a reference fingerprint")
    if not g.valid:
        return PropertyScore(INVALID_PENALTY, False)
    total = w.alpha * drug_term_a(g) + w.beta * drug_term_b(g)
    if w.gamma > 0:
        total += w.gamma * drug_term_c(g, ref)
    value = total / (w.alpha + w.beta + w.gamma)
    return PropertyScore(value, True)


Scorer = Callable[[MoleculeGraph], float]


def get_scorer(name: str, *, weights: LossWeights | None = None,
               ref: Fingerprint | None = None) -> Scorer:
    """Returns a molecule -> loss callable by scorer name.

    Names: ``plogp`` and ``drug``.  The drug scorer takes weights and,
    when gamma > 0, a reference fingerprint.
    """
    if name == "plogp":
        return lambda g: plogp_loss(g).value
    if name == "drug":
        w = weights or LossWeights()
        if w.gamma > 0 and ref is None:
            raise MissingReference("gamma > 0 requires a reference fingerprint")
        return lambda g: drug_design_loss(g, w, ref).value
    raise KeyError(f"unknown scorer {name!r}")
