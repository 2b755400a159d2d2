"""Chemical graphs and a deterministic canonical text form.

A molecule is a connected graph of heavy atoms (C, N, O, F, Cl) with bond
orders 1..3 and implicit hydrogens filling the remaining valence.  The
canonical form is the smallest depth-first serialization over a set of
candidate roots and tie orderings selected by Morgan-style iterative
refinement.  Acyclic molecules serialize exactly like simple SMILES
("CCCCCC", "CO"); a ring-closure bond is written as ``%i`` where ``i`` is
the visit index of the earlier endpoint, prefixed by its bond mark.  The
text encodes the graph completely, so two molecules share a canonical form
if and only if their graphs are isomorphic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InvalidMolecule

MAX_VALENCE = {"C": 4, "N": 3, "O": 2, "F": 1, "Cl": 1}

_ORDER_MARK = {1: "", 2: "=", 3: "#"}


@dataclass(frozen=True)
class MoleculeGraph:
    """An immutable decoded molecule.

    Attributes:
        elements: element symbol per atom.
        bonds: (i, j, order) triples with i < j, at most one bond per pair.
        hydrogens: implicit hydrogen count per atom.
        invalid_reason: None for a valid molecule, else a short reason.
    """

    elements: tuple[str, ...]
    bonds: tuple[tuple[int, int, int], ...]
    hydrogens: tuple[int, ...]
    invalid_reason: str | None = None

    @property
    def valid(self) -> bool:
        return self.invalid_reason is None

    @property
    def num_atoms(self) -> int:
        return len(self.elements)

    def neighbors(self) -> list[list[tuple[int, int]]]:
        """Adjacency lists of (neighbor index, bond order)."""
        adj: list[list[tuple[int, int]]] = [[] for _ in self.elements]
        for i, j, order in self.bonds:
            adj[i].append((j, order))
            adj[j].append((i, order))
        return adj


INVALID_EMPTY = MoleculeGraph((), (), (), invalid_reason="empty decode")


def make_graph(elements: list[str], bonds: list[tuple[int, int, int]],
               free: list[int]) -> MoleculeGraph:
    """Assembles a MoleculeGraph from decoder output.

    ``free`` is the leftover valence per atom, which becomes the implicit
    hydrogen count.  An empty atom list yields the Invalid sentinel.
    """
    if not elements:
        return INVALID_EMPTY
    norm = tuple(sorted(
        (j, i, order) if j < i else (i, j, order) for i, j, order in bonds
    ))
    return MoleculeGraph(tuple(elements), norm, tuple(free))


def _ids_from_invariants(inv) -> list[int]:
    rank = {v: r for r, v in enumerate(sorted(set(inv)))}
    return [rank[v] for v in inv]


def refine_classes(g: MoleculeGraph, adj=None) -> list[int]:
    """Morgan-style iterative refinement; returns a class id per atom.

    Ids are ranks of the sorted refined invariants, hence themselves
    invariant under relabeling.
    """
    adj = adj if adj is not None else g.neighbors()
    inv = [
        (g.elements[i], len(adj[i]), tuple(sorted(o for _, o in adj[i])),
         g.hydrogens[i])
        for i in range(g.num_atoms)
    ]
    classes = _ids_from_invariants(inv)
    for _ in range(g.num_atoms):
        refined = [
            (classes[i], tuple(sorted((o, classes[j]) for j, o in adj[i])))
            for i in range(g.num_atoms)
        ]
        new_classes = _ids_from_invariants(refined)
        if new_classes == classes:
            break
        classes = new_classes
    return classes


def canonicalize(g: MoleculeGraph) -> str:
    """Returns the canonical text of a valid molecule.

    Raises:
        InvalidMolecule: when ``g`` is invalid.
    """
    if not g.valid:
        raise InvalidMolecule(g.invalid_reason or "invalid molecule")
    if g.num_atoms == 1:
        return g.elements[0]
    adj = g.neighbors()
    classes = refine_classes(g, adj)
    min_class = min(classes)
    best: str | None = None
    for root in range(g.num_atoms):
        if classes[root] != min_class:
            continue
        s = _min_dfs(g, adj, classes, root)
        if best is None or s < best:
            best = s
    assert best is not None
    return best


def _min_dfs(g: MoleculeGraph, adj, classes, root: int) -> str:
    """Smallest serialization over tie orderings of a DFS from ``root``.

    Children of each atom are ordered by (bond order, class, element);
    orderings of exact ties are all explored and the smallest full string
    wins, which makes the result deterministic under relabeling without
    requiring the sort key to fully discriminate subtrees.
    """
    elements = g.elements

    def emit(u: int, parent: int, visited: dict[int, int]
             ) -> tuple[str, dict[int, int]]:
        """Serializes u's subtree; returns the text and the visited map
        after the subtree (threaded through siblings by the caller)."""
        visited = dict(visited)
        visited[u] = len(visited)
        parts = [elements[u]]
        closures = []
        children = []
        for v, order in adj[u]:
            if v == parent:
                continue
            if v in visited:
                closures.append((visited[v], order))
            else:
                children.append((order, classes[v], elements[v], v))
        for pos, order in sorted(closures):
            parts.append(_ORDER_MARK[order] + "%" + str(pos))
        if not children:
            return "".join(parts), visited
        children.sort(key=lambda t: t[:3])
        best: tuple[str, dict[int, int]] | None = None
        for ordering in _tie_orderings(children):
            attempt = _emit_children(u, ordering, visited)
            if best is None or attempt[0] < best[0]:
                best = attempt
        return "".join(parts) + best[0], best[1]

    def _emit_children(u: int, ordering, visited: dict[int, int]
                       ) -> tuple[str, dict[int, int]]:
        parts = []
        idx = 0
        while idx < len(ordering):
            order, _, _, v = ordering[idx]
            idx += 1
            if v in visited:
                continue  # claimed by an earlier sibling through a ring
            sub, visited = emit(v, u, visited)
            more = any(t[3] not in visited for t in ordering[idx:])
            sub = _ORDER_MARK[order] + sub
            parts.append("(" + sub + ")" if more else sub)
        return "".join(parts), visited

    def _tie_orderings(children):
        groups: list[list] = []
        for child in children:
            if groups and groups[-1][0][:3] == child[:3]:
                groups[-1].append(child)
            else:
                groups.append([child])
        pools = [list(itertools.permutations(grp)) if len(grp) > 1 else [grp]
                 for grp in groups]
        for combo in itertools.product(*pools):
            yield [c for grp in combo for c in grp]

    return emit(root, -1, {})[0]


def ring_sizes(g: MoleculeGraph) -> list[int]:
    """Sizes of the independent cycles of the graph (one per cycle-basis
    element), found by shortest-path closure over each non-tree edge."""
    if not g.valid or not g.bonds:
        return []
    adj = g.neighbors()
    n = g.num_atoms
    seen = [False] * n
    parent = [-1] * n
    tree_edges = set()
    stack = [0]
    seen[0] = True
    order = []
    while stack:
        u = stack.pop()
        order.append(u)
        for v, _ in adj[u]:
            if not seen[v]:
                seen[v] = True
                parent[v] = u
                tree_edges.add((min(u, v), max(u, v)))
                stack.append(v)
    sizes = []
    for i, j, _ in g.bonds:
        if (i, j) in tree_edges:
            continue
        sizes.append(_cycle_len(adj, i, j))
    return sizes


def _cycle_len(adj, a: int, b: int) -> int:
    """Length of the shortest cycle through edge (a, b): BFS avoiding it."""
    from collections import deque
    dist = {a: 0}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        for v, _ in adj[u]:
            if (u, v) in ((a, b), (b, a)):
                continue
            if v not in dist:
                dist[v] = dist[u] + 1
                if v == b:
                    return dist[v] + 1
                queue.append(v)
    return 0
