"""Exhaustive enumeration of a token space into a ranked reference set.

Every bitstring of length k*n is decoded, deduplicated by canonical form
and scored; the result is the ground truth for loss targets, top-10 sets
and unique-count checks.  Enumeration streams an odometer over token
sequences and skips whole suffix blocks whenever the derivation terminates
before reading the full sequence (all continuations of such a prefix
decode identically), so the pass over the 2^27 space stays tractable.

The structure pass (decode + deduplicate) is scorer-independent and cached
on disk per (vocabulary, k); scores are overlaid on load for the requested
scorer.  The published unique-count convention includes the empty decode
as one entry, exposed here as ``published_unique_count``.
"""

from __future__ import annotations

import gzip
import os
from dataclasses import dataclass

from .codec import TokenVocabulary
from .decoder import (
    DEFAULT_DIALECT, Dialect, INDEX_CODE, TOKEN_ACTIONS, decode_molecule,
)
from .errors import ScopeMismatch, SpaceTooLarge
from .graph import MAX_VALENCE, canonicalize, make_graph
from .chem.scores import Scorer

MAX_TOTAL_BITS = 27

CACHE_ENV = "QEVO_CACHE_DIR"

# Bumped whenever decoder or canonicalizer output changes shape.
_CACHE_VERSION = 2


def default_cache_dir() -> str:
    env = os.environ.get(CACHE_ENV)
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "qevo")


@dataclass(frozen=True)
class ReferenceSpace:
    """Deduplicated, scored, ranked token space."""

    vocab_name: str
    k: int
    scorer_id: str
    entries: dict[str, tuple[float, int]]      # canonical -> (score, mult)
    ranking: tuple[tuple[str, float], ...]     # ascending (score, canonical)
    empty_multiplicity: int
    truncated_multiplicity: int
    representatives: dict[str, tuple[int, ...]]  # canonical -> token digits

    @property
    def total_combinations(self) -> int:
        return (sum(m for _, m in self.entries.values())
                + self.empty_multiplicity + self.truncated_multiplicity)

    @property
    def unique_molecule_count(self) -> int:
        return len(self.entries)

    @property
    def published_unique_count(self) -> int:
        return len(self.entries) + (1 if self.empty_multiplicity else 0)

    def best(self) -> tuple[str, float]:
        return self.ranking[0]

    def top_k(self, n: int = 10) -> list[tuple[str, float]]:
        """First n ranked entries (all of them when n exceeds the count)."""
        return list(self.ranking[:n])

    def top_k_set(self, n: int = 10) -> set[str]:
        return {c for c, _ in self.ranking[:n]}


class _RawTruncated(Exception):
    pass


def _derive_raw(digits, actions, action_index, dialect: Dialect):
    """Specialized decoder over token digits; returns
    (elements, bonds, free, consumed); elements is None for decodes
    invalidated by a truncated index read.

    Mirrors decoder._derive/_resolve_rings exactly (equivalence is tested
    exhaustively for k=6 and on samples for larger k) with less overhead.
    """
    k = len(digits)
    elements: list[str] = []
    free: list[int] = []
    bonds: list[list[int]] = []
    parent: list[int] = []
    parent_bond: list[int] = []
    rings: list[tuple[int, int, int]] = []
    zero_fill = dialect.dangling_zero_fills
    invalidates = dialect.dangling_invalidates
    ring_uses_state = dialect.ring_consumes_state
    exact_budget = dialect.branch_exact_budget

    def derive(pos: int, limit: int, state: int, prev: int,
               budget: int | None) -> int:
        """Consumes tokens from ``pos`` (exclusive limit); returns new pos."""
        consumed = 0
        while budget is None or consumed < budget:
            if pos >= limit:
                return pos
            action = actions[digits[pos]]
            pos += 1
            consumed += 1
            kind = action[0]
            if kind == 0:  # atom: (0, element, req, cap)
                _, element, req, cap = action
                order = 0 if state == 0 else (
                    req if req <= state and req <= cap else min(state, cap))
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
                    return pos
            elif kind == 1:  # ring: (1, order, nsyms)
                _, ring_order, nsyms = action
                if state == 0:
                    continue
                q = 0
                for _ in range(nsyms):
                    if pos >= limit:
                        if invalidates and pos >= k:
                            raise _RawTruncated
                        if zero_fill:
                            q *= 16
                            continue
                        return pos
                    q = q * 16 + action_index[digits[pos]]
                    pos += 1
                    consumed += 1
                order_req = ring_order if ring_order <= state else state
                rings.append((prev - (q + 1) if prev - (q + 1) > 0 else 0,
                              prev, order_req))
                if ring_uses_state:
                    state -= order_req
                    if state == 0:
                        return pos
            else:  # branch: (2, order, nsyms)
                _, branch_order, nsyms = action
                if state <= 1:
                    continue
                init_state = branch_order if branch_order <= state - 1 else state - 1
                q = 0
                for _ in range(nsyms):
                    if pos >= limit:
                        if invalidates and pos >= k:
                            raise _RawTruncated
                        if zero_fill:
                            q *= 16
                            continue
                        return pos
                    q = q * 16 + action_index[digits[pos]]
                    pos += 1
                    consumed += 1
                if exact_budget:
                    width = min(q + 1, limit - pos)
                    derive(pos, pos + width, init_state, prev, None)
                    pos += width
                    consumed += width
                else:
                    new_pos = derive(pos, limit, init_state, prev, q + 1)
                    consumed += new_pos - pos
                    pos = new_pos
                state -= init_state
        return pos

    try:
        consumed = derive(0, k, 0, -1, None)
    except _RawTruncated:
        return None, None, None, k

    # ring resolution (mirrors decoder._resolve_rings)
    if rings:
        pooled: dict[tuple[int, int], int] = {}
        for left, right, order_req in rings:
            if left == right or free[left] <= 0 or free[right] <= 0:
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
    return elements, bonds, free, consumed


def _prepare_tables(vocab: TokenVocabulary):
    """Digit -> action tuples for the raw decoder, plus index values."""
    actions = []
    index_vals = []
    n = vocab.bits_per_token
    for value in range(2 ** n):
        token = vocab.token_of(format(value, f"0{n}b"))
        act = TOKEN_ACTIONS[token]
        if act[0] == "atom":
            actions.append((0, act[1], act[2], MAX_VALENCE[act[1]]))
        elif act[0] == "ring":
            actions.append((1, act[1], act[2]))
        else:
            actions.append((2, act[1], act[2]))
        index_vals.append(INDEX_CODE.get(token, 0))
    return actions, index_vals


def enumerate_structures(vocab: TokenVocabulary, k: int,
                         dialect: Dialect = DEFAULT_DIALECT,
                         cache_dir: str | None = None,
                         ) -> tuple[dict[str, tuple[int, tuple[int, ...]]],
                                    int, int]:
    """Full structure pass: canonical -> (multiplicity, representative
    digits), plus the empty-decode and truncated-decode multiplicities.
    Cached on disk.

    Raises:
        SpaceTooLarge: when k * bits_per_token exceeds 27.
    """
    n = vocab.bits_per_token
    if k * n > MAX_TOTAL_BITS:
        raise SpaceTooLarge(f"{k} tokens x {n} bits exceeds {MAX_TOTAL_BITS}")
    cache_dir = cache_dir or default_cache_dir()
    tag = (f"{int(dialect.ring_consumes_state)}"
           f"{int(dialect.branch_exact_budget)}"
           f"{int(dialect.dangling_zero_fills)}"
           f"{int(dialect.dangling_invalidates)}")
    path = os.path.join(
        cache_dir, f"structs_{vocab.name}_k{k}_d{tag}_v{_CACHE_VERSION}.csv.gz")
    if os.path.exists(path):
        return _load_structures(path)

    actions, index_vals = _prepare_tables(vocab)
    base = 2 ** n
    digits = [0] * k
    canon_memo: dict[tuple, str] = {}
    table: dict[str, list] = {}
    empty_mult = 0
    truncated_mult = 0
    powers = [base ** (k - c) for c in range(k + 1)]

    while True:
        elements, bonds, free, consumed = _derive_raw(digits, actions,
                                                      index_vals, dialect)
        mult = powers[consumed]
        if elements is None:
            truncated_mult += mult
        elif not elements:
            empty_mult += mult
        else:
            sig = (tuple(elements),
                   tuple(tuple(b) for b in bonds))
            canon = canon_memo.get(sig)
            if canon is None:
                canon = canonicalize(make_graph(list(elements),
                                                [tuple(b) for b in bonds],
                                                free))
                canon_memo[sig] = canon
            row = table.get(canon)
            if row is None:
                table[canon] = [mult, tuple(digits[:max(consumed, 1)])]
            else:
                row[0] += mult
        # odometer: advance at the last consumed digit
        pos = (consumed if consumed > 0 else 1) - 1
        while pos >= 0:
            digits[pos] += 1
            if digits[pos] == base:
                digits[pos] = 0
                for j in range(pos + 1, k):
                    digits[j] = 0
                pos -= 1
            else:
                for j in range(pos + 1, k):
                    digits[j] = 0
                break
        if pos < 0:
            break

    out = {c: (row[0], row[1]) for c, row in table.items()}
    _store_structures(path, vocab, k, tag, out, empty_mult, truncated_mult)
    return out, empty_mult, truncated_mult


def _store_structures(path, vocab, k, tag, table, empty_mult, truncated_mult):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    tmp = path + ".tmp"
    with gzip.open(tmp, "wt", encoding="utf-8") as fh:
        fh.write(f"# manifest: kind=structs vocab={vocab.name} k={k} "
                 f"dialect={tag} version=1\n")
        fh.write(f"# empty: {empty_mult}\n")
        fh.write(f"# truncated: {truncated_mult}\n")
        for canon, (mult, rep) in table.items():
            rep_text = "".join(str(d) if vocab.bits_per_token == 3
                               else format(d, "x") for d in rep)
            fh.write(f"{canon},{mult},{rep_text}\n")
    os.replace(tmp, path)


def _load_structures(path):
    table = {}
    with gzip.open(path, "rt", encoding="utf-8") as fh:
        first = fh.readline()
        if not first.startswith("# manifest:"):
            raise ValueError(f"{path}: missing manifest")
        empty_mult = int(fh.readline().split(":")[1])
        truncated_mult = int(fh.readline().split(":")[1])
        for line in fh:
            canon, mult, rep_text = line.rstrip("\n").split(",")
            rep = tuple(int(ch, 16) for ch in rep_text)
            table[canon] = (int(mult), rep)
    return table, empty_mult, truncated_mult


def build_reference_space(vocab: TokenVocabulary, k: int, scorer: Scorer,
                          scorer_id: str,
                          dialect: Dialect = DEFAULT_DIALECT,
                          cache_dir: str | None = None) -> ReferenceSpace:
    """Enumerates (or loads) the structure table and scores every unique
    molecule; ties in the ranking break by canonical text."""
    table, empty_mult, truncated_mult = enumerate_structures(
        vocab, k, dialect, cache_dir)
    n = vocab.bits_per_token
    entries: dict[str, tuple[float, int]] = {}
    reps: dict[str, tuple[int, ...]] = {}
    for canon, (mult, rep) in table.items():
        tokens = [vocab.token_of(format(d, f"0{n}b")) for d in rep]
        g = decode_molecule(tokens, dialect)
        score = scorer(g)
        entries[canon] = (score, mult)
        reps[canon] = rep
    ranking = tuple(sorted(((c, s) for c, (s, _) in entries.items()),
                           key=lambda t: (t[1], t[0])))
    return ReferenceSpace(vocab.name, k, scorer_id, entries, ranking,
                          empty_mult, truncated_mult, reps)


def check_same_scope(ref: ReferenceSpace, vocab_name: str, k: int,
                     scorer_id: str) -> None:
    """Raises ScopeMismatch when a record and a space disagree."""
    if (ref.vocab_name, ref.k, ref.scorer_id) != (vocab_name, k, scorer_id):
        raise ScopeMismatch(
            f"reference space is {ref.vocab_name}/k={ref.k}/{ref.scorer_id}, "
            f"record is {vocab_name}/k={k}/{scorer_id}")
