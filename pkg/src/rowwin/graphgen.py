"""Synthetic graph builders for tests, benchmarks, and the layout demo."""

from __future__ import annotations

import numpy as np

from .matrices import Graph, graph_from_edges, permute_symmetric


def empty_graph(n: int) -> Graph:
    return graph_from_edges(n, [], undirected=True)


def path_graph(n: int) -> Graph:
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)], undirected=True)


def star_graph(n: int) -> Graph:
    """Vertex 0 is the hub."""
    return graph_from_edges(n, [(0, i) for i in range(1, n)], undirected=True)


def clique(n: int) -> Graph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return graph_from_edges(n, edges, undirected=True)


def gnp_random(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p), undirected, no self loops."""
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    edges = list(zip(iu[keep].tolist(), ju[keep].tolist()))
    return graph_from_edges(n, edges, undirected=True)


def block_community(
    num_blocks: int,
    block_size: int,
    p_intra: float,
    p_inter: float,
    seed: int,
) -> Graph:
    """Planted-partition graph: dense within consecutive blocks, sparse across."""
    n = num_blocks * block_size
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    same_block = (iu // block_size) == (ju // block_size)
    prob = np.where(same_block, p_intra, p_inter)
    keep = rng.random(iu.size) < prob
    edges = list(zip(iu[keep].tolist(), ju[keep].tolist()))
    return graph_from_edges(n, edges, undirected=True)


def scramble(g: Graph, seed: int) -> tuple[Graph, np.ndarray]:
    """Relabel vertices with a random permutation; returns (graph, perm old->new)."""
    rng = np.random.default_rng(seed)
    perm = rng.permutation(g.num_vertices).astype(np.int64)
    adj = permute_symmetric(g.adjacency, perm)
    return Graph(g.num_vertices, adj, g.undirected), perm
