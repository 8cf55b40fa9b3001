"""Undirected weighted graphs and their augmented normalized Laplacians.

The central object is an immutable :class:`Graph`: a node count plus a
sorted, duplicate-free list of weighted edges ``(u, v, w)`` with ``u < v``
and ``w > 0``.  Explicit self-loops are rejected; augmentation adds the
implicit unit self-loop to every node instead.  With ``A`` the weighted
adjacency matrix, ``Atil = A + I`` and ``Dtil = D + I`` (``D`` the diagonal
of weighted degrees), the augmented normalized Laplacian is

    Ltil = I - Dtil^{-1/2} Atil Dtil^{-1/2}

and the propagation matrix is its complement ``P = I - Ltil``.  ``Ltil`` is
symmetric positive semidefinite with eigenvalues in ``[0, 2)``, and
``P`` fixes the vector ``Dtil^{1/2} 1``.

Everything here is dense ``numpy`` at desk scale (a few thousand nodes).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParseError, ValidationError

Edge = tuple[int, int, float]


@dataclass(frozen=True)
class Graph:
    """Undirected weighted graph with normalized, validated edge storage."""

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValidationError(f"node count must be a positive integer, got {self.n!r}")
        prev = None
        for u, v, w in self.edges:
            if not (isinstance(u, int) and isinstance(v, int)):
                raise ValidationError(f"edge endpoints must be integers, got ({u!r}, {v!r})")
            if u == v:
                raise ValidationError(f"explicit self-loop on node {u}; loops are implicit")
            if not (0 <= u < v < self.n):
                raise ValidationError(
                    f"edge ({u}, {v}) out of range for n={self.n} or not ordered u < v"
                )
            if not (isinstance(w, float) and math.isfinite(w) and w > 0.0):
                raise ValidationError(f"edge ({u}, {v}) needs a finite positive weight, got {w!r}")
            if prev is not None and (u, v) <= prev:
                raise ValidationError(f"edges not sorted/unique at ({u}, {v})")
            prev = (u, v)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def weighted_degrees(self) -> np.ndarray:
        """Per-node sum of incident edge weights (no augmentation)."""
        deg = np.zeros(self.n)
        for u, v, w in self.edges:
            deg[u] += w
            deg[v] += w
        return deg

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u, v, w in self.edges:
            a[u, v] = w
            a[v, u] = w
        return a


def _merge_edges(n: int, raw: list[tuple[int, int, float]]) -> Graph:
    """Normalize endpoint order and merge duplicate pairs by summing weights."""
    merged: dict[tuple[int, int], float] = {}
    for u, v, w in raw:
        key = (u, v) if u < v else (v, u)
        merged[key] = merged.get(key, 0.0) + w
    edges = tuple((u, v, float(w)) for (u, v), w in sorted(merged.items()))
    return Graph(n=n, edges=edges)


def from_edge_list(text: str, n_hint: int | None = None) -> Graph:
    """Parse a plain-text edge list into a :class:`Graph`.

    Each non-empty line holds ``u v`` or ``u v w`` (weight defaults to 1.0);
    ``#`` starts a comment that runs to the end of the line.  Duplicate pairs,
    including reversed ones, are merged by summing their weights.  The node
    count is ``max id + 1`` or ``n_hint``, whichever is larger.
    """
    raw: list[tuple[int, int, float]] = []
    max_id = -1
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.partition("#")[0].strip()
        if not body:
            continue
        tokens = body.split()
        if len(tokens) not in (2, 3):
            raise ParseError(
                f"line {lineno}: expected 'u v' or 'u v w', got {len(tokens)} tokens"
            )
        try:
            u = int(tokens[0])
            v = int(tokens[1])
        except ValueError:
            raise ParseError(f"line {lineno}: node ids must be integers") from None
        if u < 0 or v < 0:
            raise ValidationError(f"line {lineno}: node ids must be nonnegative")
        if u == v:
            raise ValidationError(f"line {lineno}: self-loop on node {u} not allowed")
        w = 1.0
        if len(tokens) == 3:
            try:
                w = float(tokens[2])
            except ValueError:
                raise ParseError(f"line {lineno}: weight must be a real number") from None
            if not math.isfinite(w) or w <= 0.0:
                raise ValidationError(f"line {lineno}: weight must be finite and positive")
        raw.append((u, v, w))
        max_id = max(max_id, u, v)
    n = max(max_id + 1, n_hint or 0)
    if n < 1:
        raise ValidationError("empty edge list and no node-count hint")
    return _merge_edges(n, raw)


def augmented_degrees(g: Graph) -> np.ndarray:
    """Vector of ``1 + weighted degree``; every entry is at least 1."""
    return 1.0 + g.weighted_degrees()


def augmented_normalized_laplacian(g: Graph) -> np.ndarray:
    """Dense symmetric ``I - Dtil^{-1/2} (A + I) Dtil^{-1/2}``.

    Diagonal entries are ``1 - 1/dtil_i``; the off-diagonal entry for edge
    (i, j) is ``-w_ij / sqrt(dtil_i * dtil_j)``.
    """
    dtil = augmented_degrees(g)
    inv_sqrt = 1.0 / np.sqrt(dtil)
    lap = np.zeros((g.n, g.n))
    np.fill_diagonal(lap, 1.0 - 1.0 / dtil)
    for u, v, w in g.edges:
        lap[u, v] = lap[v, u] = -w * inv_sqrt[u] * inv_sqrt[v]
    return lap


def propagation_matrix(g: Graph) -> np.ndarray:
    """Complement ``P = I - Ltil``; fixes ``Dtil^{1/2} 1``."""
    return np.eye(g.n) - augmented_normalized_laplacian(g)


def connected_components(g: Graph) -> tuple[tuple[int, ...], ...]:
    """Connected components as sorted node tuples, ordered by smallest member."""
    neighbors: list[list[int]] = [[] for _ in range(g.n)]
    for u, v, _ in g.edges:
        neighbors[u].append(v)
        neighbors[v].append(u)
    seen = [False] * g.n
    components: list[tuple[int, ...]] = []
    for start in range(g.n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        nodes = []
        while stack:
            node = stack.pop()
            nodes.append(node)
            for nxt in neighbors[node]:
                if not seen[nxt]:
                    seen[nxt] = True
                    stack.append(nxt)
        components.append(tuple(sorted(nodes)))
    return tuple(components)


def generate(kind: str, n: int, seed: int = 0, *, p: float | None = None,
             k: int | None = None) -> Graph:
    """Build a unit-weight graph from a named family, deterministically per seed.

    Kinds: ``erdos_renyi`` (edge probability ``p``), ``ring`` (cycle, n >= 3),
    ``k_regular`` (circulant; ``k`` even, ``k < n``), ``complete``, ``path``.
    Only ``erdos_renyi`` consumes the seed.
    """
    if n < 1:
        raise ValidationError(f"generator needs n >= 1, got {n}")
    pairs: list[tuple[int, int]]
    if kind == "erdos_renyi":
        if p is None or not (0.0 <= p <= 1.0):
            raise ValidationError(f"erdos_renyi needs edge probability p in [0, 1], got {p!r}")
        rng = np.random.default_rng(seed)
        pairs = []
        for u in range(n):
            draws = rng.random(n - u - 1)
            pairs.extend((u, int(u + 1 + i)) for i in np.nonzero(draws < p)[0])
    elif kind == "ring":
        if n < 3:
            raise ValidationError(f"ring needs n >= 3, got {n}")
        pairs = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    elif kind == "k_regular":
        if k is None or k < 0 or k % 2 != 0 or k >= n:
            raise ValidationError(
                f"k_regular needs even k with 0 <= k < n, got k={k!r}, n={n}"
            )
        pairs = []
        for offset in range(1, k // 2 + 1):
            for i in range(n):
                j = (i + offset) % n
                pairs.append((i, j) if i < j else (j, i))
    elif kind == "complete":
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    elif kind == "path":
        pairs = [(i, i + 1) for i in range(n - 1)]
    else:
        raise ValidationError(f"unknown generator kind {kind!r}")
    return _merge_edges(n, [(u, v, 1.0) for u, v in set(pairs)])


@dataclass(frozen=True)
class PerturbationPlan:
    """Seeded edge perturbation: drop a fraction of edges or boost some weights.

    ``drop`` removes exactly ``ceil(ratio * edge_count)`` edges chosen
    uniformly at random; ``boost`` multiplies the weights of ``count``
    uniformly chosen edges by ``boost_factor``.  Node count never changes.
    """

    kind: str
    ratio: float = 0.0
    count: int = 0
    boost_factor: float = 1.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("drop", "boost"):
            raise ValidationError(f"perturbation kind must be 'drop' or 'boost', got {self.kind!r}")
        if self.kind == "drop" and not (0.0 <= self.ratio <= 1.0):
            raise ValidationError(f"drop ratio must lie in [0, 1], got {self.ratio}")
        if self.kind == "boost":
            if self.count < 1:
                raise ValidationError(f"boost count must be a positive integer, got {self.count}")
            if not (math.isfinite(self.boost_factor) and self.boost_factor >= 1.0):
                raise ValidationError(f"boost factor must be >= 1, got {self.boost_factor}")

    @classmethod
    def drop(cls, ratio: float, seed: int = 0) -> "PerturbationPlan":
        return cls(kind="drop", ratio=float(ratio), seed=seed)

    @classmethod
    def boost(cls, count: int, factor: float, seed: int = 0) -> "PerturbationPlan":
        return cls(kind="boost", count=int(count), boost_factor=float(factor), seed=seed)


def perturb(g: Graph, plan: PerturbationPlan) -> Graph:
    """Apply a :class:`PerturbationPlan`; bit-identical per (graph, plan)."""
    rng = np.random.default_rng(plan.seed)
    if plan.kind == "drop":
        m = math.ceil(plan.ratio * g.edge_count)
        if m == 0:
            return g
        dropped = set(rng.choice(g.edge_count, size=m, replace=False).tolist())
        kept = tuple(e for i, e in enumerate(g.edges) if i not in dropped)
        return Graph(n=g.n, edges=kept)
    if plan.count > g.edge_count:
        raise ValidationError(
            f"cannot boost {plan.count} edges, graph has only {g.edge_count}"
        )
    chosen = set(rng.choice(g.edge_count, size=plan.count, replace=False).tolist())
    edges = tuple(
        (u, v, w * plan.boost_factor) if i in chosen else (u, v, w)
        for i, (u, v, w) in enumerate(g.edges)
    )
    return Graph(n=g.n, edges=edges)
