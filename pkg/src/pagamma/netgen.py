"""Preferential-attachment growth and degree-sequence bookkeeping.

Networks are grown one node at a time. The seed graph is the complete
graph on m+1 nodes, which guarantees every node has degree >= m from the
start. Each later node attaches to m distinct existing nodes, picked with
probability proportional to current degree by sampling uniformly from a
flat list that contains each node once per unit of degree; repeats within
one attachment round are rejected, so the graph stays simple.

Randomness comes from NumPy's PCG64 generator (``numpy.random.default_rng``).
A fixed ``seed`` therefore reproduces the exact same degree sequence on
any platform. Only the degree sequence is retained unless edges are
explicitly requested.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidParamsError

_SEED_MAX = (1 << 64) - 1
_BLOCK = 1 << 14


@dataclass(frozen=True)
class GrowthParams:
    """Size, links per node, and seed for one growth run."""

    n_nodes: int
    m: int
    seed: int

    def __post_init__(self):
        if self.m < 1:
            raise InvalidParamsError(f"m must be >= 1, got {self.m}")
        if self.n_nodes < self.m + 2:
            raise InvalidParamsError(
                f"n_nodes must be >= m + 2 = {self.m + 2}, got {self.n_nodes}"
            )
        if not 0 <= self.seed <= _SEED_MAX:
            raise InvalidParamsError(f"seed must fit in 64 unsigned bits, got {self.seed}")


@dataclass(frozen=True, eq=False)
class DegreeSequence:
    """Degrees of a generated network, in node-creation order."""

    degrees: np.ndarray
    params: GrowthParams
    edges: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self):
        n, m = self.params.n_nodes, self.params.m
        if self.degrees.shape != (n,):
            raise InvalidParamsError(
                f"degree sequence has length {self.degrees.shape}, expected {n}"
            )
        if int(self.degrees.min()) < m:
            raise InvalidParamsError(f"minimum degree {self.degrees.min()} below m={m}")
        expected_total = m * (m + 1) + 2 * m * (n - m - 1)
        if int(self.degrees.sum()) != expected_total:
            raise InvalidParamsError(
                f"degree total {int(self.degrees.sum())} != {expected_total}"
            )
        self.degrees.setflags(write=False)


def _buffered_uniforms(rng: np.random.Generator, block: int = _BLOCK):
    """Callable returning one uniform [0,1) draw per call, batched for speed."""
    buf = rng.random(block)
    ptr = 0

    def next_u() -> float:
        nonlocal buf, ptr
        if ptr == block:
            buf = rng.random(block)
            ptr = 0
        u = buf[ptr]
        ptr += 1
        return u

    return next_u


def pick_targets(repeated_nodes: list, m: int, next_u) -> list:
    """Pick m distinct nodes from a degree-weighted flat list.

    ``repeated_nodes`` holds each node id once per unit of degree, so a
    uniform index is a degree-proportional draw. Draws already picked in
    this round are rejected and redrawn. ``next_u`` supplies uniforms.
    Index mapping is u -> int(u * len); the bias is O(len * 2**-53).
    """
    size = len(repeated_nodes)
    chosen = []
    while len(chosen) < m:
        cand = repeated_nodes[int(next_u() * size)]
        if cand not in chosen:
            chosen.append(cand)
    return chosen


def generate(params: GrowthParams, keep_edges: bool = False) -> DegreeSequence:
    """Grow a network and return its degree sequence.

    The result is deterministic for a fixed ``params.seed``. Set
    ``keep_edges`` to also retain the edge list (heavier on memory; meant
    for debugging and dumps).
    """
    n, m = params.n_nodes, params.m
    rng = np.random.default_rng(params.seed)
    next_u = _buffered_uniforms(rng)

    degrees = np.zeros(n, dtype=np.int64)
    degrees[: m + 1] = m
    repeated = [v for v in range(m + 1) for _ in range(m)]
    edges: list[tuple[int, int]] | None = None
    if keep_edges:
        edges = [(u, v) for u in range(m + 1) for v in range(u + 1, m + 1)]

    for source in range(m + 1, n):
        targets = pick_targets(repeated, m, next_u)
        for t in targets:
            degrees[t] += 1
        repeated.extend(targets)
        degrees[source] = m
        repeated.extend([source] * m)
        if edges is not None:
            edges.extend((source, t) for t in targets)

    return DegreeSequence(
        degrees=degrees,
        params=params,
        edges=tuple(edges) if edges is not None else None,
    )


def degree_histogram(seq: DegreeSequence) -> dict[int, int]:
    """Map degree -> number of nodes with that degree."""
    values, counts = np.unique(seq.degrees, return_counts=True)
    return {int(v): int(c) for v, c in zip(values, counts)}


def write_edge_list(seq: DegreeSequence, path) -> None:
    """Dump edges as one "u v" pair per line, nodes 0-indexed in creation order."""
    if seq.edges is None:
        raise DomainError("sequence was generated without keep_edges=True")
    with open(path, "w", encoding="ascii") as fh:
        for u, v in seq.edges:
            fh.write(f"{u} {v}\n")
