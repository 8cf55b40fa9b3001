"""Seeded random instances (graphs, embeddings, weight chains) for suites and tests."""

from __future__ import annotations

import numpy as np

from .errors import ValidationError
from .graphs import Graph, PerturbationPlan, generate, perturb
from .network import make_weights

DEFAULT_KINDS = ("erdos_renyi", "ring", "k_regular", "path")
BOOST_FACTORS = (10.0, 100.0, 10000.0)


def random_graph(rng: np.random.Generator, *, n_lo: int = 5, n_hi: int = 60,
                 kinds=DEFAULT_KINDS, require_edges: bool = True,
                 boost_prob: float = 0.0) -> tuple[Graph, str]:
    """Draw one graph plus a short description of how it was built."""
    kind = kinds[int(rng.integers(len(kinds)))]
    n = int(rng.integers(n_lo, n_hi + 1))
    if kind in ("ring", "k_regular"):
        n = max(n, 3)
    desc = ""
    g: Graph | None = None
    if kind == "erdos_renyi":
        p = float(rng.uniform(0.05, 0.5))
        for _ in range(200):
            seed = int(rng.integers(2**63))
            g = generate("erdos_renyi", n, seed, p=p)
            if g.edge_count > 0 or not require_edges:
                break
        else:
            raise ValidationError(f"no edges after 200 draws for erdos_renyi({n}, {p})")
        desc = f"er(n={n},p={p:.3f},seed={seed})"
    elif kind == "ring":
        g = generate("ring", n)
        desc = f"ring(n={n})"
    elif kind == "k_regular":
        k_max = max(1, min(4, (n - 1) // 2))
        k = 2 * int(rng.integers(1, k_max + 1))
        g = generate("k_regular", n, k=k)
        desc = f"kregular(n={n},k={k})"
    elif kind == "complete":
        g = generate("complete", n)
        desc = f"complete(n={n})"
    else:
        g = generate("path", n)
        desc = f"path(n={n})"
    if g.edge_count and boost_prob > 0.0 and rng.random() < boost_prob:
        count = int(rng.integers(1, min(3, g.edge_count) + 1))
        factor = BOOST_FACTORS[int(rng.integers(len(BOOST_FACTORS)))]
        seed = int(rng.integers(2**63))
        g = perturb(g, PerturbationPlan.boost(count, factor, seed))
        desc += f"+boost(count={count},factor={factor:g},seed={seed})"
    return g, desc


def random_embedding(rng: np.random.Generator, n: int, *, c_lo: int = 1,
                     c_hi: int = 8) -> np.ndarray:
    channels = int(rng.integers(c_lo, c_hi + 1))
    return rng.standard_normal((n, channels))


def random_weight_chain(rng: np.random.Generator, c_in: int, *, depth_hi: int = 3,
                        target_lo: float = 0.2, target_hi: float = 1.0,
                        c_lo: int = 1, c_hi: int = 8) -> tuple[tuple[np.ndarray, ...], str]:
    """Rectangular weight chain with per-matrix top singular values in a range.

    Targets at most 1.0 by default so the chained energy bound with the
    unsquared gain product stays valid.
    """
    depth = int(rng.integers(1, depth_hi + 1))
    dims = [c_in] + [int(rng.integers(c_lo, c_hi + 1)) for _ in range(depth)]
    weights = []
    targets = []
    for h in range(depth):
        target = float(rng.uniform(target_lo, target_hi))
        targets.append(target)
        weights.append(make_weights(dims[h], dims[h + 1], target, seed=int(rng.integers(2**63))))
    desc = "x".join(str(d) for d in dims) + " targets=" + ",".join(f"{t:.3f}" for t in targets)
    return tuple(weights), desc
