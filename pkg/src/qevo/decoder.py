"""Token-sequence to molecule decoding with self-repair semantics.

Every token sequence from a supported vocabulary decodes to a molecule (or
to the empty Invalid graph when no atom token takes effect): bond orders
that exceed the remaining valence are clipped, branch and ring tokens that
cannot act are skipped, and over-long constructs are truncated at the end
of the sequence.  The exact self-repair rules of the reference string
grammar drifted between library generations, so the behavioral points that
differ are collected in a Dialect and the default is pinned by exhaustive
enumeration against the published unique-molecule counts (see
tests/test_refspace.py); the golden counts freeze the choice.

Grammar summary.  A derivation state tracks how many bonds the previous
atom can still make.  Atom tokens bond to the previous atom with order
min(requested, state, capacity).  [BranchL] tokens read L index symbols to
obtain a number Q and derive a branch of at most Q+1 tokens rooted at the
previous atom.  [RingL] tokens read L index symbols and request a closure
bond to the atom Q+1 positions back in derivation order; closures are
resolved after the full derivation, skipping or clipping requests that no
longer fit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import MAX_VALENCE, INVALID_EMPTY, MoleculeGraph, make_graph

# Index symbol values: a 16-symbol code shared by both vocabularies; tokens
# outside the list count as zero.  Multi-symbol indices read big-endian in
# base 16.
INDEX_CODE = {
    "[C]": 0, "[Ring1]": 1, "[Ring2]": 2,
    "[Branch1]": 3, "[=Branch1]": 4, "[#Branch1]": 5,
    "[Branch2]": 6, "[=Branch2]": 7, "[#Branch2]": 8,
    "[O]": 9, "[N]": 10, "[=N]": 11, "[=C]": 12, "[#C]": 13,
    "[S]": 14, "[P]": 15,
}

# token -> ("atom", element, requested order) | ("branch", init order, L)
#          | ("ring", closure order, L)
TOKEN_ACTIONS: dict[str, tuple] = {
    "[C]": ("atom", "C", 1), "[=C]": ("atom", "C", 2), "[#C]": ("atom", "C", 3),
    "[O]": ("atom", "O", 1), "[=O]": ("atom", "O", 2),
    "[N]": ("atom", "N", 1), "[=N]": ("atom", "N", 2), "[#N]": ("atom", "N", 3),
    "[F]": ("atom", "F", 1), "[Cl]": ("atom", "Cl", 1),
    "[Ring1]": ("ring", 1, 1), "[Ring2]": ("ring", 1, 2),
    "[Branch1]": ("branch", 1, 1), "[=Branch1]": ("branch", 2, 1),
    "[Branch2]": ("branch", 1, 2), "[=Branch2]": ("branch", 2, 2),
}


@dataclass(frozen=True)
class Dialect:
    """Behavioral switches between the two known grammar generations.

    Attributes:
        ring_consumes_state: a ring closure immediately spends one bond of
            the chain state (and can terminate the chain) rather than being
            accounted only at closure resolution.
        branch_exact_budget: a branch consumes exactly min(Q+1, rest of
            sequence) tokens, discarding unused ones, instead of returning
            unused budget to the enclosing chain when the branch terminates
            early.  Exact budgets also confine inner index reads to the
            branch window (reads past it see zeros).
        dangling_zero_fills: index symbols missing at an interior window
            boundary read as zeros; otherwise the construct is dropped.
        dangling_invalidates: an index read that crosses the true end of
            the sequence invalidates the whole decode (the reference
            grammar's error path) instead of zero-filling.
    """

    ring_consumes_state: bool = True
    branch_exact_budget: bool = True
    dangling_zero_fills: bool = True
    dangling_invalidates: bool = False


# Calibration result: exhaustive enumeration reproduces the golden unique
# counts exactly for the 2^18, 2^21 and 2^24 spaces (5,790 / 25,218 /
# 111,711, counting the empty decode as one entry).  The flags are pinned
# by those targets: deferred ring state gives 24,750 at k=7, dropping
# dangling reads gives 5,683 at k=6, and invalidating them gives 5,684.
# At k=9 this dialect yields 504,210 against the published 504,183
# (+0.005%); the early-return budget variant overshoots further (504,284),
# so exact windows are kept.  The residual is a documented deviation; the
# space remains self-consistent for sampling experiments.
DEFAULT_DIALECT = Dialect()
OLD_GRAMMAR_DIALECT = Dialect(ring_consumes_state=False,
                              branch_exact_budget=True,
                              dangling_zero_fills=True)


class _TruncatedIndex(Exception):
    """An index read crossed the true end of the sequence."""


class _Stream:
    """Token stream bounded by a window limit.

    ``take`` returns None when the window is exhausted; ``at_true_end``
    distinguishes the end of the underlying sequence from an interior
    window boundary.
    """

    __slots__ = ("tokens", "pos", "limit")

    def __init__(self, tokens, pos=0, limit=None):
        self.tokens = tokens
        self.pos = pos
        self.limit = len(tokens) if limit is None else limit

    def take(self):
        if self.pos >= self.limit:
            return None
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def at_true_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def remaining(self) -> int:
        return self.limit - self.pos


def decode_molecule(tokens: Iterable[str],
                    dialect: Dialect = DEFAULT_DIALECT) -> MoleculeGraph:
    """Decodes a token sequence into a MoleculeGraph.

    Never raises on well-formed tokens: chemically impossible sequences are
    repaired or truncated, and sequences with no effective atom token yield
    the Invalid empty graph.
    """
    toks = list(tokens)
    for t in toks:
        if t not in TOKEN_ACTIONS:
            raise KeyError(f"unsupported token {t!r}")
    elements: list[str] = []
    free: list[int] = []
    bonds: list[list[int]] = []
    parent: list[int] = []       # chain/branch parent atom index, -1 for root
    parent_bond: list[int] = []  # index into bonds for the parent edge
    rings: list[tuple[int, int, int]] = []

    stream = _Stream(toks)
    try:
        _derive(stream, 0, -1, None, elements, free, bonds, parent,
                parent_bond, rings, dialect)
    except _TruncatedIndex:
        return MoleculeGraph((), (), (), invalid_reason="truncated index")
    _resolve_rings(free, bonds, parent, parent_bond, rings)
    if not elements:
        return INVALID_EMPTY
    return make_graph(elements, [tuple(b) for b in bonds], free)


def _read_index(stream: _Stream, count: int, dialect: Dialect):
    """Reads ``count`` index symbols; returns their value or None to drop.

    Raises:
        _TruncatedIndex: when the read crosses the true sequence end and
            the dialect invalidates such decodes.
    """
    value = 0
    for _ in range(count):
        tok = stream.take()
        if tok is None:
            if dialect.dangling_invalidates and stream.at_true_end():
                raise _TruncatedIndex
            if dialect.dangling_zero_fills:
                value = value * 16
                continue
            return None
        value = value * 16 + INDEX_CODE.get(tok, 0)
    return value


def _derive(stream: _Stream, state: int, prev: int, budget: int | None,
            elements, free, bonds, parent, parent_bond, rings,
            dialect: Dialect) -> None:
    """Derives one chain (the main chain or a branch) from the stream.

    ``state`` is the bond capacity still open on ``prev`` as seen by this
    chain; 0 means no root atom has been placed yet.  ``budget`` caps how
    many tokens this chain may consume (None for the main chain).
    """
    consumed = 0
    while budget is None or consumed < budget:
        tok = stream.take()
        if tok is None:
            return
        consumed += 1
        action = TOKEN_ACTIONS[tok]
        kind = action[0]

        if kind == "atom":
            _, element, req = action
            cap = MAX_VALENCE[element]
            order = 0 if state == 0 else min(req, state, cap)
            idx = len(elements)
            elements.append(element)
            free.append(cap - order)
            if order > 0:
                parent.append(prev)
                parent_bond.append(len(bonds))
                bonds.append([prev, idx, order])
                free[prev] -= order
            else:
                parent.append(-1)
                parent_bond.append(-1)
            prev = idx
            state = cap - order
            if state == 0:
                return

        elif kind == "ring":
            _, ring_order, nsyms = action
            if state == 0:
                continue
            start = stream.pos
            q = _read_index(stream, nsyms, dialect)
            consumed += stream.pos - start
            if q is None:
                return
            order_req = min(ring_order, state)
            rings.append((max(0, prev - (q + 1)), prev, order_req))
            if dialect.ring_consumes_state:
                state -= order_req
                if state == 0:
                    return

        else:  # branch
            _, branch_order, nsyms = action
            if state <= 1:
                continue
            init_state = min(state - 1, branch_order)
            start = stream.pos
            q = _read_index(stream, nsyms, dialect)
            consumed += stream.pos - start
            if q is None:
                return
            if dialect.branch_exact_budget:
                # The branch owns the next min(Q+1, rest) tokens outright:
                # a sub-stream confines inner reads and discards leftovers.
                width = min(q + 1, stream.remaining())
                sub = _Stream(stream.tokens, stream.pos, stream.pos + width)
                _derive(sub, init_state, prev, None, elements, free, bonds,
                        parent, parent_bond, rings, dialect)
                stream.pos += width
                consumed += width
            else:
                before = stream.pos
                _derive(stream, init_state, prev, q + 1, elements, free,
                        bonds, parent, parent_bond, rings, dialect)
                consumed += stream.pos - before
            state -= init_state


def _resolve_rings(free, bonds, parent, parent_bond, rings) -> None:
    """Applies recorded ring closures in order, clipping to free valence.

    A closure between already-bonded atoms raises that bond's order (capped
    at 3); repeated closures over the same new pair pool the same way.
    """
    pooled: dict[tuple[int, int], int] = {}
    for left, right, order_req in rings:
        if left == right:
            continue
        if free[left] <= 0 or free[right] <= 0:
            continue
        order = min(order_req, free[left], free[right])
        if parent[right] == left:
            b = bonds[parent_bond[right]]
            b[2] = min(b[2] + order, 3)
        else:
            key = (left, right)
            pooled[key] = min(pooled.get(key, 0) + order, 3)
        free[left] -= order
        free[right] -= order
    for (left, right), order in pooled.items():
        bonds.append([left, right, order])
