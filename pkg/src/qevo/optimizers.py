"""Derivative-free optimizers for noisy sampled objectives.

Two methods: simultaneous-perturbation stochastic approximation with
gradient resampling, and an implicit-filtering-style coordinate stencil
with shrinking scales (faithful in spirit to the published stencil method,
not a port of any particular package).  Both are deterministic given their
configuration and seed, and invariant to constant shifts of the objective.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import NonFiniteLoss
from .sampler import make_rng

Objective = Callable[[np.ndarray], float]


@dataclass(frozen=True)
class SpsaConfig:
    a: float | None = None      # None: calibrated to the target first step
    c: float = 0.1
    stability: float | None = None  # None: 0.1 * max_iterations
    alpha: float = 0.602
    gamma: float = 0.101
    resamplings: int = 1
    first_step: float = 0.1     # target per-coordinate move for calibration

    def __post_init__(self):
        if self.resamplings < 1:
            raise ValueError("resamplings must be >= 1")


@dataclass(frozen=True)
class ImfilConfig:
    initial_scale: float = 0.4
    scale_decay: float = 0.5
    min_scale: float = 0.01
    max_stencil_failures: int = 1

    def __post_init__(self):
        if not (0 < self.scale_decay < 1):
            raise ValueError("scale_decay must be in (0, 1)")
        if self.initial_scale <= 0 or self.min_scale <= 0:
            raise ValueError("scales must be positive")


@dataclass(frozen=True)
class OptimizerConfig:
    method: str = "imfil"
    max_iterations: int = 100
    convergence_eps: float = 0.0
    convergence_window: int = 50
    spsa: SpsaConfig = field(default_factory=SpsaConfig)
    imfil: ImfilConfig = field(default_factory=ImfilConfig)

    def __post_init__(self):
        if self.method not in ("spsa", "imfil"):
            raise ValueError(f"unknown optimizer method {self.method!r}")


@dataclass(frozen=True)
class OptStep:
    iteration: int
    theta: np.ndarray
    loss: float
    step_scale: float  # gradient-estimate norm (spsa) or stencil scale (imfil)


class SpsaState:
    """Mutable per-run state: iteration counter and calibrated gain."""

    def __init__(self, cfg: SpsaConfig, max_iterations: int, rng: np.random.Generator):
        self.cfg = cfg
        self.k = 0
        self.rng = rng
        self.stability = (cfg.stability if cfg.stability is not None
                          else 0.1 * max_iterations)
        self.a = cfg.a  # calibrated lazily on the first step when None

    def calibrate(self, theta: np.ndarray, objective: Objective) -> None:
        """Sets the gain so the first update moves about first_step per
        coordinate, mirroring common practice for sampled objectives."""
        cfg = self.cfg
        probes = 10
        magnitudes = []
        for _ in range(probes):
            delta = self.rng.integers(0, 2, size=theta.size) * 2 - 1
            up = objective(theta + cfg.c * delta)
            down = objective(theta - cfg.c * delta)
            magnitudes.append(abs(up - down) / (2 * cfg.c))
        mean_mag = max(float(np.mean(magnitudes)), 1e-12)
        self.a = cfg.first_step * (self.stability + 1) ** cfg.alpha / mean_mag


def spsa_step(theta: np.ndarray, objective: Objective, state: SpsaState
              ) -> tuple[np.ndarray, OptStep]:
    """One SPSA update with ``resamplings`` independent perturbation pairs.

    Raises:
        NonFiniteLoss: if the loss stays non-finite after one retry at a
            halved gain.
    """
    cfg = state.cfg
    if state.a is None:
        state.calibrate(theta, objective)
    k = state.k
    a_k = state.a / (state.stability + k + 1) ** cfg.alpha
    c_k = cfg.c / (k + 1) ** cfg.gamma

    grad = np.zeros_like(theta)
    loss_probe = math.inf
    for _ in range(cfg.resamplings):
        delta = state.rng.integers(0, 2, size=theta.size) * 2 - 1
        up = objective(theta + c_k * delta)
        down = objective(theta - c_k * delta)
        grad += (up - down) / (2 * c_k) * delta
        loss_probe = min(loss_probe, up, down)
    grad /= cfg.resamplings

    if not np.all(np.isfinite(grad)) or not math.isfinite(loss_probe):
        a_k *= 0.5
        delta = state.rng.integers(0, 2, size=theta.size) * 2 - 1
        up = objective(theta + c_k * delta)
        down = objective(theta - c_k * delta)
        if not (math.isfinite(up) and math.isfinite(down)):
            raise NonFiniteLoss("objective returned non-finite values")
        grad = (up - down) / (2 * c_k) * delta
        loss_probe = min(up, down)

    new_theta = theta - a_k * grad
    state.k += 1
    step = OptStep(k, new_theta.copy(), float(loss_probe),
                   float(np.linalg.norm(grad)))
    return new_theta, step


class ImfilState:
    """Mutable per-run state: current scale and failure count."""

    def __init__(self, cfg: ImfilConfig):
        self.cfg = cfg
        self.scale = cfg.initial_scale
        self.failures = 0
        self.k = 0
        self.exhausted = False


def imfil_step(theta: np.ndarray, objective: Objective, state: ImfilState
               ) -> tuple[np.ndarray, OptStep]:
    """One stencil sweep: probe +-scale along every coordinate and move to
    the best improving point; shrink the scale after repeated failures.

    Non-finite stencil values count as +inf.  When the scale falls below
    min_scale the state is marked exhausted and theta no longer moves.
    """
    cfg = state.cfg
    k = state.k
    state.k += 1
    center = objective(theta)
    if not math.isfinite(center):
        center = math.inf
    if state.exhausted:
        return theta, OptStep(k, theta.copy(), float(center), state.scale)

    best_value = center
    best_point = theta
    for i in range(theta.size):
        for sign in (1.0, -1.0):
            probe = theta.copy()
            probe[i] += sign * state.scale
            value = objective(probe)
            if not math.isfinite(value):
                value = math.inf
            if value < best_value:
                best_value = value
                best_point = probe
    if best_point is theta:
        state.failures += 1
        if state.failures >= cfg.max_stencil_failures:
            state.failures = 0
            state.scale *= cfg.scale_decay
            if state.scale < cfg.min_scale:
                state.exhausted = True
    else:
        state.failures = 0
    return best_point, OptStep(k, np.array(best_point), float(best_value),
                               state.scale)


def run_optimizer(init_theta: Sequence[float], objective: Objective,
                  cfg: OptimizerConfig, rng_seed: int = 0,
                  callback: Callable[[OptStep], None] | None = None
                  ) -> list[OptStep]:
    """Iterates the configured method until the windowed convergence test
    or the iteration budget; returns the trajectory of steps.

    Convergence: once two consecutive windows of ``convergence_window``
    losses have running means within ``convergence_eps``, iteration stops.
    """
    theta = np.asarray(init_theta, dtype=float).copy()
    steps: list[OptStep] = []
    losses: list[float] = []
    spsa_state = SpsaState(cfg.spsa, cfg.max_iterations, make_rng(rng_seed, 0x59A))
    imfil_state = ImfilState(cfg.imfil)

    for _ in range(cfg.max_iterations):
        if cfg.method == "spsa":
            theta, step = spsa_step(theta, objective, spsa_state)
        else:
            theta, step = imfil_step(theta, objective, imfil_state)
        steps.append(step)
        losses.append(step.loss)
        if callback is not None:
            callback(step)
        if cfg.method == "imfil" and imfil_state.exhausted:
            break
        w = cfg.convergence_window
        if cfg.convergence_eps > 0 and len(losses) >= 2 * w:
            recent = np.mean(losses[-w:])
            previous = np.mean(losses[-2 * w:-w])
            if abs(recent - previous) <= cfg.convergence_eps:
                break
    return steps
