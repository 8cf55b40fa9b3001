"""Forward simulation of deep graph convolutional networks.

One layer filters the embedding spectrally and pushes it through a small
MLP:

    f(X) = sigma(... sigma(sigma(P(Ltil) X) W_1) W_2 ... W_H)

With the default ``paper`` placement the activation wraps the filtered
input first and then follows every weight multiplication, matching the
parenthesization above; ``conventional`` placement skips the innermost
activation, i.e. ``sigma(P(Ltil) X W_1)`` for a single weight.  A run
records the Dirichlet energy, Rayleigh quotient and the per-layer energy
bound ``s_l * c`` where ``s_l`` is the product of the realized top singular
values of the layer weights and ``c`` is the filter contraction factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .energy import as_embedding, dirichlet_energy_trace, rayleigh_quotient
from .errors import NumericError, ValidationError
from .spectral import PolynomialFilter, Spectrum, eval_filter_matrix, filter_contraction

ACTIVATION_KINDS = ("relu", "leaky_relu", "tanh", "sigmoid", "identity")
PLACEMENTS = ("paper", "conventional")


@dataclass(frozen=True)
class Activation:
    """Entrywise nonlinearity; ``leaky_relu`` carries a slope in (0, 1)."""

    kind: str
    slope: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ACTIVATION_KINDS:
            raise ValidationError(f"unknown activation {self.kind!r}")
        if self.kind == "leaky_relu":
            if self.slope is None or not (0.0 < self.slope < 1.0):
                raise ValidationError(
                    f"leaky_relu slope must lie strictly in (0, 1), got {self.slope!r}"
                )
        elif self.slope is not None:
            raise ValidationError(f"activation {self.kind!r} takes no slope")

    @classmethod
    def relu(cls) -> "Activation":
        return cls("relu")

    @classmethod
    def leaky_relu(cls, slope: float) -> "Activation":
        return cls("leaky_relu", float(slope))

    @classmethod
    def tanh(cls) -> "Activation":
        return cls("tanh")

    @classmethod
    def sigmoid(cls) -> "Activation":
        return cls("sigmoid")

    @classmethod
    def identity(cls) -> "Activation":
        return cls("identity")


def apply_activation(x: np.ndarray, act: Activation) -> np.ndarray:
    """Apply the nonlinearity entrywise, returning a new array."""
    x = np.asarray(x, dtype=float)
    if act.kind == "relu":
        return np.maximum(x, 0.0)
    if act.kind == "leaky_relu":
        return np.where(x > 0.0, x, act.slope * x)
    if act.kind == "tanh":
        return np.tanh(x)
    if act.kind == "sigmoid":
        # split by sign for overflow-free evaluation
        out = np.empty_like(x)
        pos = x >= 0.0
        out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
        ex = np.exp(x[~pos])
        out[~pos] = ex / (1.0 + ex)
        return out
    return x.copy()


def make_weights(rows: int, cols: int, target_top_singular: float, seed: int = 0) -> np.ndarray:
    """Seeded Gaussian matrix rescaled so its top singular value hits the target.

    The realized top singular value matches ``target_top_singular`` to within
    1e-9 relative; rectangular shapes are fine.
    """
    if rows < 1 or cols < 1:
        raise ValidationError(f"weight shape must be positive, got ({rows}, {cols})")
    if not (math.isfinite(target_top_singular) and target_top_singular > 0.0):
        raise ValidationError(
            f"target top singular value must be finite and positive, got {target_top_singular}"
        )
    rng = np.random.default_rng(seed)
    for _ in range(100):
        m = rng.standard_normal((rows, cols))
        top = float(np.linalg.svd(m, compute_uv=False)[0])
        if top > 1e-12:
            return m * (target_top_singular / top)
    raise NumericError("could not draw a nonzero Gaussian weight matrix")


def top_singular_value(w: np.ndarray) -> float:
    try:
        return float(np.linalg.svd(np.asarray(w, dtype=float), compute_uv=False)[0])
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"singular value computation failed: {exc}") from exc


@dataclass(frozen=True)
class LayerSpec:
    """One layer: a polynomial filter, a chain of weights, an activation."""

    filter: PolynomialFilter
    weights: tuple[np.ndarray, ...]
    activation: Activation

    def __post_init__(self) -> None:
        if len(self.weights) == 0:
            raise ValidationError("layer needs at least one weight matrix")
        for h, w in enumerate(self.weights):
            if not isinstance(w, np.ndarray) or w.ndim != 2:
                raise ValidationError(f"weight {h} must be a 2-D array")
            if not np.all(np.isfinite(w)):
                raise ValidationError(f"weight {h} has non-finite entries")
            w.flags.writeable = False
        for h in range(len(self.weights) - 1):
            if self.weights[h].shape[1] != self.weights[h + 1].shape[0]:
                raise ValidationError(
                    f"weight chain breaks between matrices {h} and {h + 1}: "
                    f"{self.weights[h].shape} -> {self.weights[h + 1].shape}"
                )

    @property
    def input_channels(self) -> int:
        return self.weights[0].shape[0]

    @property
    def output_channels(self) -> int:
        return self.weights[-1].shape[1]

    def gain(self) -> float:
        """Product of the top singular values of the weight chain."""
        out = 1.0
        for w in self.weights:
            out *= top_singular_value(w)
        return out


def layer_forward(x, spec: LayerSpec, lap_spectrum: Spectrum,
                  placement: str = "paper") -> np.ndarray:
    """Run one layer on an embedding matrix."""
    if placement not in PLACEMENTS:
        raise ValidationError(f"placement must be one of {PLACEMENTS}, got {placement!r}")
    x = as_embedding(x, lap_spectrum.n)
    if x.shape[1] != spec.input_channels:
        raise ValidationError(
            f"layer expects {spec.input_channels} input channels, got {x.shape[1]}"
        )
    h = eval_filter_matrix(spec.filter, lap_spectrum) @ x
    if placement == "paper":
        h = apply_activation(h, spec.activation)
    for w in spec.weights:
        h = apply_activation(h @ w, spec.activation)
    return h


@dataclass(frozen=True)
class LayerRecord:
    """Energy snapshot after a layer (layer 0 is the input embedding)."""

    layer: int
    energy: float
    rayleigh: float
    bound_paper: float
    bound_safe: float
    channels: int


@dataclass(frozen=True)
class Trajectory:
    """Per-layer records of a simulated run plus realized weight gains."""

    records: tuple[LayerRecord, ...]
    layer_gains: tuple[float, ...]

    def __post_init__(self) -> None:
        for i, rec in enumerate(self.records):
            if rec.layer != i:
                raise ValidationError(f"record {i} has layer index {rec.layer}")
            if rec.energy < 0.0:
                raise ValidationError(f"record {i} has negative energy {rec.energy}")

    @property
    def depth(self) -> int:
        return len(self.records) - 1

    @property
    def gain_sup(self) -> float:
        return max(self.layer_gains) if self.layer_gains else float("nan")

    def energies(self) -> np.ndarray:
        return np.array([rec.energy for rec in self.records])


def _guarded_rayleigh(x: np.ndarray, lap: np.ndarray) -> float:
    if float(np.sum(x * x)) <= 0.0:
        return float("nan")
    return rayleigh_quotient(x, lap)


def run_network(x0, layers, lap_spectrum: Spectrum, placement: str = "paper") -> Trajectory:
    """Simulate ``L`` layers and record the energy trajectory.

    The trajectory holds ``L + 1`` records; record 0 describes the input and
    carries NaN bounds since no layer produced it.
    """
    layers = tuple(layers)
    if not layers:
        raise ValidationError("run needs at least one layer")
    x = as_embedding(x0, lap_spectrum.n)
    channels = x.shape[1]
    for i, spec in enumerate(layers):
        if spec.input_channels != channels:
            raise ValidationError(
                f"layer {i} expects {spec.input_channels} input channels, "
                f"previous stage emits {channels}"
            )
        channels = spec.output_channels
    lap = lap_spectrum.reconstruct()
    records = [LayerRecord(
        layer=0,
        energy=dirichlet_energy_trace(x, lap),
        rayleigh=_guarded_rayleigh(x, lap),
        bound_paper=float("nan"),
        bound_safe=float("nan"),
        channels=x.shape[1],
    )]
    gains = []
    for i, spec in enumerate(layers, start=1):
        contraction = filter_contraction(spec.filter, lap_spectrum)
        gain = spec.gain()
        gains.append(gain)
        x = layer_forward(x, spec, lap_spectrum, placement=placement)
        records.append(LayerRecord(
            layer=i,
            energy=dirichlet_energy_trace(x, lap),
            rayleigh=_guarded_rayleigh(x, lap),
            bound_paper=gain * contraction.paper,
            bound_safe=gain * contraction.safe,
            channels=x.shape[1],
        ))
    return Trajectory(records=tuple(records), layer_gains=tuple(gains))
