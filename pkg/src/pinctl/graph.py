"""Weighted undirected graphs: ingestion, distances, centralities, and the
BFS layer partition around a pinning set.

Path lengths are unweighted hop counts throughout, also on weighted graphs;
edge weights only enter degrees, Laplacians and coupling sums.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

import numpy as np


class GraphError(ValueError):
    """Malformed graph document or invalid structural query."""


@dataclass(frozen=True)
class Graph:
    """Undirected graph on nodes 0..n-1 with positive edge weights.

    `adjacency` is the symmetric n-by-n weight matrix with zero diagonal;
    `edges` lists each undirected edge once as (u, v, w) with u < v.
    """

    n: int
    edges: tuple
    adjacency: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = self.adjacency
        if a.shape != (self.n, self.n):
            raise GraphError(f"adjacency shape {a.shape} does not match n={self.n}")
        if not np.all(np.isfinite(a)):
            raise GraphError("adjacency contains non-finite entries")
        if np.any(a != a.T):
            raise GraphError("adjacency is not symmetric")
        if np.any(np.diag(a) != 0.0):
            raise GraphError("adjacency has nonzero diagonal entries")
        if np.any(a < 0.0):
            raise GraphError("adjacency has negative weights")

    @property
    def degrees(self) -> np.ndarray:
        """Weighted degree of every node (adjacency row sums)."""
        return self.adjacency.sum(axis=1)

    def neighbors(self, i: int) -> np.ndarray:
        return np.nonzero(self.adjacency[i])[0]


def from_edges(n, edges, index_base=0) -> Graph:
    """Build a validated Graph from an edge list.

    Each edge is (u, v) or (u, v, w); node labels start at `index_base`.
    Rejects self-loops, duplicate edges (in either orientation), labels out
    of range, and nonpositive weights.
    """
    if not isinstance(n, int) or n < 1:
        raise GraphError(f"node count must be a positive integer, got {n!r}")
    adjacency = np.zeros((n, n))
    seen = set()
    canonical = []
    for edge in edges:
        edge = tuple(edge)
        if len(edge) == 2:
            u, v = edge
            w = 1.0
        elif len(edge) == 3:
            u, v, w = edge
        else:
            raise GraphError(f"edge {edge!r} must be [u, v] or [u, v, w]")
        if not (isinstance(u, int) and isinstance(v, int)):
            raise GraphError(f"edge {edge!r} has non-integer endpoints")
        u -= index_base
        v -= index_base
        lo, hi = index_base, index_base + n - 1
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(
                f"edge {edge!r} has an endpoint outside [{lo}, {hi}]"
            )
        if u == v:
            raise GraphError(f"self-loop at node {u + index_base} is not allowed")
        w = float(w)
        if not np.isfinite(w) or w <= 0.0:
            raise GraphError(f"edge {edge!r} has nonpositive weight {w}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphError(
                f"duplicate edge between nodes {key[0] + index_base} and "
                f"{key[1] + index_base}"
            )
        seen.add(key)
        adjacency[u, v] = adjacency[v, u] = w
        canonical.append((key[0], key[1], w))
    return Graph(n=n, edges=tuple(canonical), adjacency=adjacency)


def load_graph(text: str) -> Graph:
    """Parse the JSON graph document format.

    Expected shape: {"nodes": int, "index_base": 1, "edges": [[u, v, w], ...]}
    with `index_base` optional (default 1) and per-edge weight optional
    (default 1.0).
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"graph document is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise GraphError("graph document must be a JSON object")
    if "nodes" not in doc:
        raise GraphError('graph document is missing the "nodes" field')
    if "edges" not in doc:
        raise GraphError('graph document is missing the "edges" field')
    index_base = doc.get("index_base", 1)
    if not isinstance(index_base, int):
        raise GraphError(f"index_base must be an integer, got {index_base!r}")
    return from_edges(doc["nodes"], doc["edges"], index_base=index_base)


def laplacian(g: Graph) -> np.ndarray:
    """Weighted Laplacian diag(degrees) - adjacency. Rows sum to zero."""
    return np.diag(g.degrees) - g.adjacency


def _bfs_hops(g: Graph, sources) -> np.ndarray:
    """Hop distance from the node set `sources` to every node; -1 if unreachable."""
    dist = np.full(g.n, -1, dtype=int)
    queue = deque()
    for s in sources:
        dist[s] = 0
        queue.append(s)
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def is_connected(g: Graph) -> bool:
    """True when every node is reachable from node 0."""
    return bool(np.all(_bfs_hops(g, [0]) >= 0))


def _require_connected(g: Graph, what: str):
    if not is_connected(g):
        raise GraphError(f"{what} requires a connected graph")


def hop_distances(g: Graph) -> np.ndarray:
    """All-pairs unweighted shortest-path hop counts (symmetric, zero diagonal)."""
    _require_connected(g, "hop_distances")
    return np.array([_bfs_hops(g, [s]) for s in range(g.n)])


def distance_to_set(g: Graph, nodes) -> np.ndarray:
    """Hop distance from every node to the nearest member of `nodes`."""
    nodes = sorted(set(int(i) for i in nodes))
    if not nodes:
        raise GraphError("distance_to_set requires a nonempty node set")
    if nodes[0] < 0 or nodes[-1] >= g.n:
        raise GraphError(f"node set {nodes} has members outside [0, {g.n - 1}]")
    _require_connected(g, "distance_to_set")
    return _bfs_hops(g, nodes)


@dataclass(frozen=True)
class LayeredPartition:
    """BFS layers of the node set by hop distance to a pinning set.

    layers[j] holds the nodes at hop distance j (ascending node order);
    couplings[j] is the weight block between layers j and j+1, with
    out_sums[j] its row sums (edges leaving layer j forward) and in_sums[j]
    its column sums (edges entering layer j+1 from layer j). k is the hop
    distance of the farthest node from the pinning set.
    """

    layers: tuple
    couplings: tuple
    out_sums: tuple
    in_sums: tuple
    k: int


def layer_partition(g: Graph, pins) -> LayeredPartition:
    """Partition nodes into BFS layers around the pinning set `pins`."""
    dist = distance_to_set(g, pins)
    k = int(dist.max())
    layers = tuple(np.nonzero(dist == j)[0] for j in range(k + 1))
    couplings = []
    out_sums = []
    in_sums = []
    for j in range(k):
        block = g.adjacency[np.ix_(layers[j], layers[j + 1])]
        couplings.append(block)
        out_sums.append(block.sum(axis=1))
        in_sums.append(block.sum(axis=0))
    return LayeredPartition(
        layers=layers,
        couplings=tuple(couplings),
        out_sums=tuple(out_sums),
        in_sums=tuple(in_sums),
        k=k,
    )


def closeness_centrality(g: Graph) -> np.ndarray:
    """Closeness (n-1) / sum of hop distances to all other nodes."""
    dist = hop_distances(g)
    return (g.n - 1) / dist.sum(axis=1)


def betweenness_centrality(g: Graph) -> np.ndarray:
    """Shortest-path betweenness, endpoints excluded, unnormalized.

    Counts every shortest path between unordered node pairs; hop metric.
    """
    _require_connected(g, "betweenness_centrality")
    n = g.n
    nbrs = [g.neighbors(i) for i in range(n)]
    score = np.zeros(n)
    for s in range(n):
        dist = np.full(n, -1, dtype=int)
        sigma = np.zeros(n)
        preds = [[] for _ in range(n)]
        dist[s] = 0
        sigma[s] = 1.0
        order = []
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in nbrs[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = np.zeros(n)
        for w in reversed(order):
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                score[w] += delta[w]
    return score / 2.0


def random_connected_graph(n, edge_prob, rng) -> Graph:
    """Seeded Erdos-Renyi graph with unit weights, resampled until connected."""
    if n < 1:
        raise GraphError("random_connected_graph needs n >= 1")
    while True:
        edges = [
            (u, v, 1.0)
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < edge_prob
        ]
        g = from_edges(n, [(u, v) for u, v, _ in edges], index_base=0)
        if is_connected(g):
            return g
