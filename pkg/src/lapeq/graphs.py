"""Simple undirected graphs on labeled vertices 1..n, plus Laplacian matrices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

Edge = tuple[int, int]


def _normalize_edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"loop edge ({u}, {v}) not allowed")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable graph: vertex labels 1..n, edges kept as sorted (min, max) pairs."""

    n: int
    edges: tuple[Edge, ...]

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 1:
            raise ValueError(f"need at least one vertex, got n={n}")
        seen: set[Edge] = set()
        for u, v in edges:
            e = _normalize_edge(u, v)
            if not (1 <= e[0] and e[1] <= n):
                raise ValueError(f"edge {e} out of range 1..{n}")
            seen.add(e)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return _normalize_edge(u, v) in set(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        if not 1 <= v <= self.n:
            raise ValueError(f"vertex {v} out of range 1..{self.n}")
        out = [b if a == v else a for a, b in self.edges if v in (a, b)]
        return tuple(sorted(out))

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def degrees(self) -> tuple[int, ...]:
        d = [0] * (self.n + 1)
        for u, v in self.edges:
            d[u] += 1
            d[v] += 1
        return tuple(d[1:])

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in range(1, self.n + 1)}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for v in adj:
            adj[v].sort()
        return adj

    def add_edges(self, new: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(self.n, list(self.edges) + list(new))

    def relabel(self, mapping: dict[int, int]) -> "Graph":
        """New graph with vertex v renamed mapping[v]; mapping must be a bijection on 1..n."""
        if sorted(mapping) != list(range(1, self.n + 1)) or sorted(
            mapping.values()
        ) != list(range(1, self.n + 1)):
            raise ValueError("mapping must be a bijection on 1..n")
        return Graph(self.n, [(mapping[u], mapping[v]) for u, v in self.edges])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(1, n)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"cycle needs at least 3 vertices, got {n}")
    return Graph(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def star(n: int) -> Graph:
    return Graph(n, [(1, i) for i in range(2, n + 1)])


def laplacian(g: Graph) -> np.ndarray:
    """Degree matrix minus adjacency matrix, as a dense symmetric float array."""
    m = np.zeros((g.n, g.n))
    for u, v in g.edges:
        m[u - 1, v - 1] = -1.0
        m[v - 1, u - 1] = -1.0
        m[u - 1, u - 1] += 1.0
        m[v - 1, v - 1] += 1.0
    return m


def average_degree(g: Graph) -> Fraction:
    return Fraction(2 * g.num_edges, g.n)


def connected_components(g: Graph) -> list[set[int]]:
    adj = g.adjacency()
    unseen = set(range(1, g.n + 1))
    parts: list[set[int]] = []
    while unseen:
        stack = [min(unseen)]
        part: set[int] = set()
        while stack:
            v = stack.pop()
            if v in part:
                continue
            part.add(v)
            stack.extend(w for w in adj[v] if w not in part)
        parts.append(part)
        unseen -= part
    return parts


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) == 1


def classify(g: Graph) -> str:
    """One of "tree", "unicyclic", "forest", "other"."""
    connected = is_connected(g)
    if connected and g.num_edges == g.n - 1:
        return "tree"
    if connected and g.num_edges == g.n:
        return "unicyclic"
    if not connected and g.num_edges < g.n - 1:
        # acyclic iff every component is a tree, i.e. e = n - #components
        if g.num_edges == g.n - len(connected_components(g)):
            return "forest"
    return "other"


def is_starlike(g: Graph) -> tuple[int, tuple[int, ...]] | None:
    """Detect a starlike tree: a tree with exactly one vertex of degree >= 3.

    Returns (center, branch lengths sorted ascending), or None when the graph
    is not a tree or has no unique high-degree vertex.
    """
    if classify(g) != "tree":
        return None
    degs = g.degrees()
    hubs = [v for v in range(1, g.n + 1) if degs[v - 1] >= 3]
    if len(hubs) != 1:
        return None
    center = hubs[0]
    lengths = sorted(len(seq) for seq in branch_paths(g, center))
    return center, tuple(lengths)


def unique_cycle_length(g: Graph) -> int:
    """Length of the single cycle of a unicyclic graph (strip leaves until none remain)."""
    if classify(g) != "unicyclic":
        raise ValueError("graph is not unicyclic")
    degs = list(g.degrees())
    alive = set(range(1, g.n + 1))
    adj = g.adjacency()
    queue = [v for v in alive if degs[v - 1] == 1]
    while queue:
        v = queue.pop()
        alive.discard(v)
        for w in adj[v]:
            if w in alive:
                degs[w - 1] -= 1
                if degs[w - 1] == 1:
                    queue.append(w)
    return len(alive)


def branch_paths(g: Graph, center: int) -> list[list[int]]:
    """Vertex sequences of the paths hanging off center, each listed center-outward.

    Only valid when every component of g - center is a path attached to center
    at one end; raises otherwise.
    """
    adj = g.adjacency()
    out: list[list[int]] = []
    for first in adj[center]:
        seq = [first]
        prev, cur = center, first
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            if len(nxt) > 1 or cur == center:
                raise ValueError(f"branch through vertex {first} is not a path")
            prev, cur = cur, nxt[0]
            seq.append(cur)
        out.append(seq)
    return out


# --- plain-text formats ---------------------------------------------------


def format_edge_list(g: Graph) -> str:
    lines = [str(g.n)]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty edge list")
    try:
        n = int(lines[0])
    except ValueError:
        raise ValueError(f"first line must be the vertex count, got {lines[0]!r}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"expected 'i j' pair, got {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return Graph(n, edges)


def save_graph(g: Graph, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(format_edge_list(g))


def load_graph(path: str) -> Graph:
    with open(path) as fh:
        return parse_edge_list(fh.read())


def format_dot(g: Graph) -> str:
    lines = ["graph {"]
    lines += [f"  {v};" for v in range(1, g.n + 1)]
    lines += [f"  {u} -- {v};" for u, v in g.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"
