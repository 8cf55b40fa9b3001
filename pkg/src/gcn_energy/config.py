"""Config documents and graph-source resolution for the command line.

Graphs can come from an edge-list file or from a compact generator spec:

    gen:ring:8            gen:path:3            gen:complete:5
    gen:kregular:10:4     gen:er:100:0.1        gen:er:100:0.1:42

Run and sweep configs are JSON documents; the exact schemas are documented
in the README and validated here with field-level error messages.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ParseError, ValidationError
from .graphs import Graph, from_edge_list, generate
from .network import Activation, LayerSpec, make_weights
from .seeding import derive_seed
from .spectral import PolynomialFilter
from .sweeps import ProbeSpec, SweepConfig

_GEN_ALIASES = {
    "er": "erdos_renyi",
    "erdos": "erdos_renyi",
    "erdos_renyi": "erdos_renyi",
    "ring": "ring",
    "kregular": "k_regular",
    "k_regular": "k_regular",
    "kreg": "k_regular",
    "complete": "complete",
    "path": "path",
}

# substream indices for the master run seed
_X0_STREAM = 0
_WEIGHT_STREAM_BASE = 1000


def parse_generator_spec(spec: str) -> Graph:
    """Build a graph from a ``gen:<kind>:<args>`` mini-spec."""
    parts = spec.split(":")
    if len(parts) < 3 or parts[0] != "gen":
        raise ValidationError(f"generator spec must look like gen:<kind>:<args>, got {spec!r}")
    kind = _GEN_ALIASES.get(parts[1].lower())
    if kind is None:
        raise ValidationError(f"unknown generator kind {parts[1]!r} in {spec!r}")
    try:
        n = int(parts[2])
    except ValueError:
        raise ValidationError(f"generator spec {spec!r}: node count must be an integer") from None
    args = parts[3:]
    if kind == "erdos_renyi":
        if len(args) not in (1, 2):
            raise ValidationError(f"gen:er needs gen:er:<n>:<p>[:<seed>], got {spec!r}")
        try:
            p = float(args[0])
            seed = int(args[1]) if len(args) == 2 else 0
        except ValueError:
            raise ValidationError(f"generator spec {spec!r}: bad numeric argument") from None
        return generate("erdos_renyi", n, seed, p=p)
    if kind == "k_regular":
        if len(args) != 1:
            raise ValidationError(f"gen:kregular needs gen:kregular:<n>:<k>, got {spec!r}")
        try:
            k = int(args[0])
        except ValueError:
            raise ValidationError(f"generator spec {spec!r}: k must be an integer") from None
        return generate("k_regular", n, k=k)
    if args:
        raise ValidationError(f"generator {parts[1]!r} takes no extra arguments, got {spec!r}")
    return generate(kind, n)


def resolve_graph_source(source: str) -> Graph:
    """A graph path or a ``gen:`` spec, wherever a graph is accepted."""
    if source.startswith("gen:"):
        return parse_generator_spec(source)
    path = Path(source)
    if not path.exists():
        raise ValidationError(f"graph file not found: {source}")
    return from_edge_list(path.read_text())


def config_hash(document: dict) -> str:
    """Stable sha256 over the resolved config document."""
    blob = json.dumps(document, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _load_json(path: str) -> dict:
    p = Path(path)
    if not p.exists():
        raise ValidationError(f"config file not found: {path}")
    try:
        doc = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"config {path}: line {exc.lineno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ValidationError(f"config {path}: top level must be an object")
    return doc


def _require(doc: dict, key: str, types, what: str):
    if key not in doc:
        raise ValidationError(f"config is missing required key {key!r}")
    value = doc[key]
    if not isinstance(value, types):
        raise ValidationError(f"config key {key!r} must be {what}, got {type(value).__name__}")
    return value


def _parse_activation(raw) -> Activation:
    if isinstance(raw, str):
        if raw == "leaky_relu":
            raise ValidationError("activation 'leaky_relu' needs a slope: "
                                  '{"kind": "leaky_relu", "slope": 0.2}')
        return Activation(raw)
    if isinstance(raw, dict):
        kind = _require(raw, "kind", str, "a string")
        slope = raw.get("slope")
        return Activation(kind, float(slope) if slope is not None else None)
    raise ValidationError(f"activation must be a string or object, got {type(raw).__name__}")


def _parse_filters(doc: dict, depth: int) -> list[PolynomialFilter]:
    if "filters" in doc and doc["filters"] is not None:
        raw = _require(doc, "filters", list, "a list of coefficient lists")
        if len(raw) != depth:
            raise ValidationError(f"'filters' must list {depth} filters, got {len(raw)}")
        return [PolynomialFilter.from_coefficients(c) for c in raw]
    raw = doc.get("filter", [1.0, -1.0])
    if not isinstance(raw, list):
        raise ValidationError("'filter' must be a list of coefficients")
    return [PolynomialFilter.from_coefficients(raw)] * depth


def _parse_weight_plan(doc: dict, depth: int, channels: int):
    """Yield per-layer lists of (rows, cols, target) triples."""
    weights = doc.get("weights", {})
    if not isinstance(weights, dict):
        raise ValidationError("'weights' must be an object")
    shapes = weights.get("shapes")
    target = weights.get("target_singular", 1.0)
    if shapes is None:
        per_layer_shapes = None  # square chain that follows the channel count
    else:
        if not (isinstance(shapes, list) and len(shapes) == depth):
            raise ValidationError(f"'weights.shapes' must list {depth} layer chains")
        per_layer_shapes = []
        for l, chain in enumerate(shapes):
            if not (isinstance(chain, list) and chain
                    and all(isinstance(s, list) and len(s) == 2 for s in chain)):
                raise ValidationError(
                    f"'weights.shapes[{l}]' must be a nonempty list of [rows, cols] pairs"
                )
            per_layer_shapes.append([(int(r), int(c)) for r, c in chain])

    def target_for(l: int, h: int, chain_len: int) -> float:
        if isinstance(target, (int, float)):
            return float(target)
        if isinstance(target, list) and len(target) == depth:
            entry = target[l]
            if isinstance(entry, (int, float)):
                return float(entry)
            if isinstance(entry, list) and len(entry) == chain_len:
                return float(entry[h])
        raise ValidationError(
            "'weights.target_singular' must be a number, a per-layer list, "
            "or a per-layer list of per-matrix lists"
        )

    plan = []
    current = channels
    for l in range(depth):
        chain = per_layer_shapes[l] if per_layer_shapes is not None else [(current, current)]
        if chain[0][0] != current:
            raise ValidationError(
                f"layer {l} weight chain starts at {chain[0][0]} rows "
                f"but the incoming embedding has {current} channels"
            )
        for h in range(len(chain) - 1):
            if chain[h][1] != chain[h + 1][0]:
                raise ValidationError(f"layer {l} weight chain breaks between matrices {h} and {h + 1}")
        plan.append([(r, c, target_for(l, h, len(chain))) for h, (r, c) in enumerate(chain)])
        current = chain[-1][1]
    return plan


@dataclass(frozen=True)
class RunSetup:
    """Everything a simulation run needs, resolved from a config document."""

    graph: Graph
    x0: np.ndarray
    layers: tuple[LayerSpec, ...]
    placement: str
    epsilon: float
    seed: int
    document: dict


def load_run_config(path: str) -> RunSetup:
    doc = _load_json(path)
    graph_source = _require(doc, "graph", str, "a path or gen: spec")
    graph = resolve_graph_source(graph_source)
    depth = _require(doc, "layers", int, "an integer")
    if depth < 1:
        raise ValidationError(f"a run needs at least one layer, got layers={depth}")
    channels = doc.get("channels", 4)
    if not isinstance(channels, int) or channels < 1:
        raise ValidationError(f"'channels' must be a positive integer, got {channels!r}")
    seed = doc.get("seed", 0)
    if not isinstance(seed, int):
        raise ValidationError(f"'seed' must be an integer, got {seed!r}")
    placement = doc.get("activation_placement", "paper")
    if placement not in ("paper", "conventional"):
        raise ValidationError(
            f"'activation_placement' must be 'paper' or 'conventional', got {placement!r}"
        )
    epsilon = doc.get("epsilon", 0.5)
    if not isinstance(epsilon, (int, float)) or not (0.0 < float(epsilon) < 1.0):
        raise ValidationError(f"'epsilon' must lie strictly in (0, 1), got {epsilon!r}")
    act = _parse_activation(doc.get("activation", "relu"))
    filters = _parse_filters(doc, depth)
    plan = _parse_weight_plan(doc, depth, channels)
    layers = []
    for l in range(depth):
        mats = tuple(
            make_weights(rows, cols, target, seed=derive_seed(seed, _WEIGHT_STREAM_BASE + l * 100 + h))
            for h, (rows, cols, target) in enumerate(plan[l])
        )
        layers.append(LayerSpec(filter=filters[l], weights=mats, activation=act))
    rng = np.random.default_rng(derive_seed(seed, _X0_STREAM))
    x0 = rng.standard_normal((graph.n, channels))
    return RunSetup(graph=graph, x0=x0, layers=tuple(layers), placement=placement,
                    epsilon=float(epsilon), seed=seed, document=doc)


def load_sweep_config(path: str) -> SweepConfig:
    doc = _load_json(path)
    graph_source = _require(doc, "graph", str, "a path or gen: spec")
    graph = resolve_graph_source(graph_source)
    drop_ratios = doc.get("drop_ratios", [])
    boost_counts = doc.get("boost_counts", [])
    if not isinstance(drop_ratios, list) or not isinstance(boost_counts, list):
        raise ValidationError("'drop_ratios' and 'boost_counts' must be lists")
    probe_doc = doc.get("probe", {"kind": "fixed-field"})
    if not isinstance(probe_doc, dict):
        raise ValidationError("'probe' must be an object")
    probe = ProbeSpec(
        kind=probe_doc.get("kind", "fixed-field"),
        channels=int(probe_doc.get("channels", 4)),
        seed=int(probe_doc.get("seed", 0)),
    )
    trials = doc.get("trials", 1)
    if not isinstance(trials, int):
        raise ValidationError(f"'trials' must be an integer, got {trials!r}")
    base_seed = doc.get("base_seed", 0)
    if not isinstance(base_seed, int):
        raise ValidationError(f"'base_seed' must be an integer, got {base_seed!r}")
    return SweepConfig(
        graph=graph,
        drop_ratios=tuple(float(r) for r in drop_ratios),
        boost_counts=tuple(int(c) for c in boost_counts),
        boost_factor=float(doc.get("boost_factor", 10000.0)),
        trials=trials,
        base_seed=base_seed,
        probe=probe,
        source=graph_source,
    )
