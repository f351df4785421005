"""Stallings folding of finitely generated subgroups of a free group.

The folded core graph of ``H = <S>`` decides membership (a reduced word is in
``H`` iff it reads a closed path at the basepoint), gives the rank of ``H``
as ``E - V + 1``, and shows surjectivity: ``H`` is the whole free group iff
the graph is a one-vertex rose carrying every generator.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import AlphabetMismatchError
from .words import Alphabet, Word


@dataclass(frozen=True)
class FoldedGraph:
    """Folded, core, connected labelled graph with basepoint ``0``.

    ``edges`` holds ``(source, generator_index, target)`` triples, sorted;
    reading a generator forwards follows the edge from source to target.
    """

    alphabet: Alphabet
    num_vertices: int
    edges: tuple[tuple[int, int, int], ...]
    basepoint: int = 0
    _out: dict = field(init=False, repr=False, compare=False)
    _in: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        out, inc = {}, {}
        for s, g, t in self.edges:
            out[(s, g)] = t
            inc[(t, g)] = s
        object.__setattr__(self, "_out", out)
        object.__setattr__(self, "_in", inc)

    @property
    def ambient_rank(self) -> int:
        return len(self.alphabet)

    def step(self, vertex: int, code: int) -> int | None:
        if code > 0:
            return self._out.get((vertex, code - 1))
        return self._in.get((vertex, -code - 1))

    def degree(self, vertex: int) -> int:
        return sum((s == vertex) + (t == vertex) for s, _, t in self.edges)

    def is_rose(self) -> bool:
        return self.num_vertices == 1

    def to_dot(self, name: str = "H") -> str:
        lines = [f"digraph {name} {{", "  node [shape=circle];"]
        for v in range(self.num_vertices):
            shape = "doublecircle" if v == self.basepoint else "circle"
            lines.append(f'  v{v} [label="{v}", shape={shape}];')
        for s, g, t in self.edges:
            lines.append(f'  v{s} -> v{t} [label="{self.alphabet.names[g]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


class _Folder:
    """Union-find over vertices plus a worklist of label clashes."""

    def __init__(self):
        self.parent: list[int] = [0]
        # adj[v][(gen_index, sign)] -> neighbour (not necessarily a root)
        self.adj: list[dict] = [{}]
        self.pending: deque = deque()

    def new_vertex(self) -> int:
        self.parent.append(len(self.parent))
        self.adj.append({})
        return len(self.parent) - 1

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def _attach(self, v: int, key, w: int):
        old = self.adj[v].get(key)
        if old is None:
            self.adj[v][key] = w
        elif self.find(old) != self.find(w):
            self.pending.append((old, w))

    def add_edge(self, u: int, code: int, v: int):
        """Edge reading letter ``code`` from ``u`` to ``v``."""
        g, sign = abs(code) - 1, (1 if code > 0 else -1)
        self._attach(self.find(u), (g, sign), v)
        self._attach(self.find(v), (g, -sign), u)
        self.fold()

    def fold(self):
        while self.pending:
            a, b = self.pending.popleft()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            # keep the smaller id as root; keeps the basepoint a root
            if b < a:
                a, b = b, a
            self.parent[b] = a
            moved = self.adj[b]
            self.adj[b] = {}
            for key, w in moved.items():
                self._attach(a, key, w)


def fold(words: Iterable[Word], alphabet: Alphabet) -> FoldedGraph:
    """Folded core graph of the subgroup generated by ``words``."""
    folder = _Folder()
    for w in words:
        if w.alphabet != alphabet:
            raise AlphabetMismatchError(f"word {w} is not over {alphabet!r}")
        code = w.code
        if not code:
            continue
        cur = 0
        for c in code[:-1]:
            nxt = folder.new_vertex()
            folder.add_edge(cur, c, nxt)
            cur = nxt
        folder.add_edge(cur, code[-1], 0)

    edges = set()
    for v in range(len(folder.parent)):
        if folder.find(v) != v:
            continue
        for (g, sign), w in folder.adj[v].items():
            w = folder.find(w)
            edges.add((v, g, w) if sign > 0 else (w, g, v))
    edges = _prune(edges, basepoint=0)
    return _canonical(alphabet, edges)


def _prune(edges: set, basepoint: int) -> set:
    """Iteratively drop non-basepoint vertices of degree 1."""
    edges = set(edges)
    while True:
        deg: dict[int, int] = {}
        for s, _, t in edges:
            deg[s] = deg.get(s, 0) + 1
            deg[t] = deg.get(t, 0) + 1
        leaves = {v for v, d in deg.items() if d == 1 and v != basepoint}
        if not leaves:
            return edges
        edges = {e for e in edges if e[0] not in leaves and e[2] not in leaves}


def _canonical(alphabet: Alphabet, edges: set) -> FoldedGraph:
    """Renumber vertices in BFS order from the basepoint."""
    nbrs: dict[int, list] = {}
    for s, g, t in edges:
        nbrs.setdefault(s, []).append(((g, 0), t))
        nbrs.setdefault(t, []).append(((g, 1), s))
    order = {0: 0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for _, w in sorted(nbrs.get(v, ())):
            if w not in order:
                order[w] = len(order)
                queue.append(w)
    new_edges = tuple(sorted((order[s], g, order[t]) for s, g, t in edges))
    return FoldedGraph(alphabet, len(order), new_edges)


def contains(graph: FoldedGraph, w: Word) -> bool:
    v = graph.basepoint
    for c in w.code:
        v = graph.step(v, c)
        if v is None:
            return False
    return v == graph.basepoint


def subgroup_rank(graph: FoldedGraph) -> int:
    return len(graph.edges) - graph.num_vertices + 1


def is_surjective_onto_free(images: Sequence[Word], alphabet: Alphabet) -> bool:
    graph = fold(images, alphabet)
    return graph.is_rose() and len(graph.edges) == len(alphabet)


def is_finite_index(graph: FoldedGraph) -> bool:
    """True when every vertex has every label incoming and outgoing."""
    n = graph.ambient_rank
    for v in range(graph.num_vertices):
        for g in range(n):
            if (v, g) not in graph._out or (v, g) not in graph._in:
                return False
    return True


def index(graph: FoldedGraph) -> int | None:
    """Index of the subgroup, or ``None`` when infinite."""
    return graph.num_vertices if is_finite_index(graph) else None
