"""Bipartite graphs, exhaustive expansion certification, and Tanner codes.

Expansion is certified exactly by enumerating left-node subsets, never
estimated, which confines certified instances to a few dozen left nodes.
That is enough to validate the flip-decoder guarantees at desk scale.
"""

from __future__ import annotations

import itertools
import json
import math

import numpy as np

from . import classical, f2
from .classical import CapacityError, LinearCode
from .f2 import BitMatrix

#: Refuse subset enumerations beyond this many subsets.
SUBSET_BUDGET = 10_000_000


class BipartiteGraph:
    """An undirected bipartite graph with nL left and nR right nodes.

    Adjacency is stored per left node as a sorted tuple of right-node
    indices; parallel edges are not representable.  ``b`` is the common
    left degree when the graph is left-regular, else None.
    """

    def __init__(self, n_left: int, n_right: int, adjacency):
        self.n_left = n_left
        self.n_right = n_right
        adj = []
        for i, nbrs in enumerate(adjacency):
            t = tuple(sorted(nbrs))
            if len(set(t)) != len(t):
                raise ValueError(f"left node {i} has parallel edges")
            if t and (t[0] < 0 or t[-1] >= n_right):
                raise ValueError(f"left node {i} has neighbors out of range")
            adj.append(t)
        if len(adj) != n_left:
            raise ValueError("adjacency length does not match n_left")
        self.adjacency = tuple(adj)
        self.n_edges = sum(len(t) for t in adj)
        degrees = {len(t) for t in adj}
        self.b = degrees.pop() if len(degrees) == 1 else None
        # bit-packed right neighborhoods, used by the subset enumerations
        self._masks = [sum(1 << v for v in t) for t in adj]

    def right_degrees(self) -> list[int]:
        deg = [0] * self.n_right
        for t in self.adjacency:
            for v in t:
                deg[v] += 1
        return deg

    def neighbor_mask(self, left_nodes) -> int:
        m = 0
        for i in left_nodes:
            m |= self._masks[i]
        return m

    def incidence(self) -> BitMatrix:
        """The nL x nR incidence matrix (left nodes index rows)."""
        return BitMatrix(self.n_left, self.n_right, list(self._masks))

    def __eq__(self, other):
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (
            self.n_left == other.n_left
            and self.n_right == other.n_right
            and self.adjacency == other.adjacency
        )

    def __repr__(self) -> str:
        return f"BipartiteGraph(nL={self.n_left}, nR={self.n_right}, E={self.n_edges})"


class ExpansionCertificate:
    """Exact worst-case expansion of a left-regular graph, per subset size.

    ``epsilon_profile[s]`` is 1 - min_{|S|=s} |Gamma(S)| / (b s) for subset
    sizes 1..max_subset_size.  The certified operating point takes the
    worst epsilon over all enumerated sizes and delta = 1 - s_max / nL, so
    the expansion bound |Gamma(S)| >= (1 - eps) b |S| holds for every
    subset with |S| <= (1 - delta) nL.
    """

    def __init__(self, graph: BipartiteGraph, max_subset_size: int,
                 worst_neighbors: dict[int, int]):
        self.n = graph.n_left
        self.m = graph.n_right
        self.b = graph.b
        self.max_subset_size = max_subset_size
        self.worst_neighbors = dict(worst_neighbors)  # size -> min |Gamma(S)|
        self.epsilon_profile = {
            s: 1.0 - g / (graph.b * s) for s, g in worst_neighbors.items()
        }
        self.certified_epsilon = max(self.epsilon_profile.values(), default=0.0)
        self.certified_delta = 1.0 - max_subset_size / graph.n_left

    def admissible_subset_size(self) -> int:
        """The largest |S| covered by the certificate: floor((1-delta) n)."""
        return math.floor((1.0 - self.certified_delta) * self.n + 1e-9)

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "m": self.m,
                "b": self.b,
                "max_subset_size": self.max_subset_size,
                "worst_neighbors": {str(k): v for k, v in self.worst_neighbors.items()},
                "epsilon_profile": {str(k): v for k, v in self.epsilon_profile.items()},
                "certified_epsilon": self.certified_epsilon,
                "certified_delta": self.certified_delta,
            },
            indent=2,
        )

    def __repr__(self) -> str:
        return (
            f"ExpansionCertificate(eps={self.certified_epsilon:.4f}, "
            f"delta={self.certified_delta:.4f}, up to |S|={self.max_subset_size})"
        )


def random_bipartite(n_left: int, n_right: int, b: int, seed) -> BipartiteGraph:
    """A random left-regular bipartite graph, deterministic per seed.

    Each left node draws b distinct right neighbors uniformly without
    replacement; no parallel edges by construction.
    """
    if b > n_right:
        raise ValueError(f"left degree {b} exceeds {n_right} right nodes")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    adjacency = [
        [int(v) for v in rng.choice(n_right, size=b, replace=False)]
        for _ in range(n_left)
    ]
    return BipartiteGraph(n_left, n_right, adjacency)


def expansion_profile(graph: BipartiteGraph, max_subset_size: int) -> ExpansionCertificate:
    """Exact expansion over all left subsets of size 1..max_subset_size.

    Raises CapacityError if the enumeration would exceed SUBSET_BUDGET
    subsets.  Requires a left-regular graph.
    """
    if graph.b is None:
        raise ValueError("expansion certification requires a left-regular graph")
    n = graph.n_left
    if not 1 <= max_subset_size <= n:
        raise ValueError("max_subset_size out of range")
    total = sum(math.comb(n, s) for s in range(1, max_subset_size + 1))
    if total > SUBSET_BUDGET:
        raise CapacityError(f"{total} subsets exceed enumeration budget {SUBSET_BUDGET}")

    masks = graph._masks
    worst_neighbors: dict[int, int] = {}
    for s in range(1, max_subset_size + 1):
        worst = None
        for subset in itertools.combinations(range(n), s):
            gamma = 0
            for i in subset:
                gamma |= masks[i]
            size = gamma.bit_count()
            if worst is None or size < worst:
                worst = size
        worst_neighbors[s] = worst
    return ExpansionCertificate(graph, max_subset_size, worst_neighbors)


def unique_neighbors(graph: BipartiteGraph, left_subset) -> int:
    """Number of right nodes adjacent to exactly one node of the subset."""
    once = 0
    twice = 0
    for i in left_subset:
        m = graph._masks[i]
        twice |= once & m
        once |= m
    return (once & ~twice).bit_count()


def tanner_code(graph: BipartiteGraph) -> LinearCode:
    """The Tanner code: left nodes are bits, right nodes are parity checks.

    The check matrix is the transpose of the incidence matrix, so
    k >= nL - nR.
    """
    return classical.code_from_checks(graph.incidence().T)


def graph_from_checks(h: BitMatrix) -> BipartiteGraph:
    """Inverse of ``tanner_code``: bits become left nodes, checks right."""
    incidence = h.T
    adjacency = []
    for i in range(incidence.rows):
        r = incidence.row_int(i)
        nbrs = []
        while r:
            low = r & -r
            nbrs.append(low.bit_length() - 1)
            r ^= low
        adjacency.append(nbrs)
    return BipartiteGraph(h.cols, h.rows, adjacency)


def zigzag_parameter_bounds(epsilon: float, alpha: float, gamma: float,
                            sigma: float) -> tuple[float, float]:
    """Evaluate the published bounds for explicit expander families.

    Returns (bound on left degree b, bound on delta) for target expansion
    epsilon and right/left ratio alpha, given the family constants gamma
    and sigma.  Documentation aid only; no explicit family is built here.
    """
    if not (0 < epsilon and 0 < alpha < 1):
        raise ValueError("need epsilon > 0 and 0 < alpha < 1")
    b_bound = (1.0 / (epsilon * alpha)) ** gamma
    delta_bound = 1.0 - sigma * (epsilon * alpha) ** (gamma + 1.0)
    return (b_bound, delta_bound)


def to_alist(graph: BipartiteGraph) -> str:
    """Serialize as the alist of the Tanner check matrix H = incidence^T."""
    return classical.to_alist(graph.incidence().T)


def from_alist(text: str) -> BipartiteGraph:
    """Read a graph from the alist of its Tanner check matrix."""
    return graph_from_checks(classical.from_alist(text))
