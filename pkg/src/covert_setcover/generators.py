"""Seeded instance and graph generators for experiments and fixtures.

Every generator is deterministic per (model, params, seed): one
``random.Random(seed)`` drives all draws in a fixed order.
"""

from __future__ import annotations

import random

from .graphs import Graph, all_pairs
from .setsystem import SetSystem, build_set_system

GRAPH_MODELS = ("path", "cycle", "complete", "star", "er-connected", "grid")
SET_MODELS = ("uniform-random", "planted-cover", "skewed")

ER_RETRY_BUDGET = 1000


def gen_graph(model: str, n: int = 0, seed: int = 0, p: float = 0.25,
              rows: int = 0, cols: int = 0) -> Graph:
    """Build a named-family or random connected graph.

    ``er-connected`` resamples an Erdos-Renyi graph until it is connected
    (at most ER_RETRY_BUDGET attempts); ``grid`` takes rows x cols with
    vertices numbered row-major.
    """
    if model == "path":
        _require(n >= 2, "path needs n >= 2")
        return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])
    if model == "cycle":
        _require(n >= 3, "cycle needs n >= 3")
        return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)] + [(n, 1)])
    if model == "complete":
        _require(n >= 2, "complete needs n >= 2")
        return Graph.from_edges(n, all_pairs(n))
    if model == "star":
        _require(n >= 2, "star needs n >= 2")
        return Graph.from_edges(n, [(1, i) for i in range(2, n + 1)])
    if model == "grid":
        _require(rows >= 1 and cols >= 1 and rows * cols >= 2, "grid needs rows*cols >= 2")
        edges = []
        for r in range(rows):
            for c in range(cols):
                v = r * cols + c + 1
                if c + 1 < cols:
                    edges.append((v, v + 1))
                if r + 1 < rows:
                    edges.append((v, v + cols))
        return Graph.from_edges(rows * cols, edges)
    if model == "er-connected":
        _require(n >= 2, "er-connected needs n >= 2")
        _require(0.0 <= p <= 1.0, "edge probability must be in [0, 1]")
        rng = random.Random(seed)
        pairs = all_pairs(n)
        for _ in range(ER_RETRY_BUDGET):
            edges = [pq for pq in pairs if rng.random() < p]
            candidate = Graph(
                n=n,
                adjacency=_adjacency_of(n, edges),
            )
            if candidate.is_connected():
                return candidate
        raise RuntimeError(
            f"no connected sample in {ER_RETRY_BUDGET} tries (n={n}, p={p}, seed={seed})"
        )
    raise ValueError(f"unknown graph model {model!r}; choose from {GRAPH_MODELS}")


def _adjacency_of(n, edges):
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u - 1].add(v)
        adj[v - 1].add(u)
    return tuple(frozenset(s) for s in adj)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


def gen_set_system(
    model: str,
    n: int,
    m: int,
    seed: int = 0,
    k: int = 0,
    density: float = 0.3,
) -> tuple[SetSystem, dict]:
    """Build a set-system instance plus metadata describing it.

    Models:
      uniform-random: each set contains each element with prob ``density``;
        may be uncoverable, which the metadata flags.
      planted-cover: the universe is split into ``k`` blocks hidden at random
        positions among m - k smaller decoy sets, so the optimum is at most k.
      skewed: set sizes follow a halving scale (n, n/2, n/4, ...) assigned at
        random, echoing instances with a few dominant sets.

    Returns (system, meta); meta records the model, parameters, whether the
    family covers the universe, and for planted-cover the planted indices.
    """
    _require(n >= 1, "need n >= 1 elements")
    _require(m >= 1, "need m >= 1 sets")
    rng = random.Random(seed)
    meta: dict = {"model": model, "n": n, "m": m, "seed": seed}

    if model == "uniform-random":
        sets = [
            [e for e in range(1, n + 1) if rng.random() < density]
            for _ in range(m)
        ]
        meta["density"] = density
    elif model == "planted-cover":
        _require(1 <= k <= min(n, m), "planted-cover needs 1 <= k <= min(n, m)")
        elements = list(range(1, n + 1))
        rng.shuffle(elements)
        cuts = sorted(rng.sample(range(1, n), k - 1)) if k > 1 else []
        blocks = []
        prev = 0
        for cut in cuts + [n]:
            blocks.append(sorted(elements[prev:cut]))
            prev = cut
        decoy_cap = max(1, n // (2 * k))
        decoys = [
            sorted(rng.sample(range(1, n + 1), rng.randint(1, decoy_cap)))
            for _ in range(m - k)
        ]
        sets = blocks + decoys
        order = list(range(m))
        rng.shuffle(order)
        sets = [sets[j] for j in order]
        planted = sorted(order.index(j) + 1 for j in range(k))
        meta["k"] = k
        meta["planted_indices"] = planted
    elif model == "skewed":
        sizes = []
        for _ in range(m):
            scale = rng.randint(0, max(0, n.bit_length() - 1))
            sizes.append(max(1, n >> scale))
        sets = [sorted(rng.sample(range(1, n + 1), size)) for size in sizes]
    else:
        raise ValueError(f"unknown set model {model!r}; choose from {SET_MODELS}")

    system = build_set_system(sets, universe_size=n)
    covered = set()
    for members in system.sets:
        covered |= members
    meta["coverable"] = len(covered) == n
    return system, meta
