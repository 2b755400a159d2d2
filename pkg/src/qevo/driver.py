"""The outer optimization loop: sample, decode, score, update.

One run wires a sampler, the decoder, a molecule scorer and an optimizer
into the hybrid loop: every objective evaluation draws fresh shots from a
deterministic per-evaluation substream, decodes the histogram, computes the
ensemble loss against the target, and the optimizer updates the angles.
Every unique molecule ever sampled is logged with its score; the run
tracks the best molecule seen and per-step statistics.

Runs are reproducible: identical config and seed produce byte-identical
record rows.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field

import numpy as np

from .chem.fingerprint import Fingerprint, fingerprint
from .chem.scores import LossWeights, get_scorer
from .codec import TokenVocabulary, encode_tokens, get_vocabulary
from .decoder import decode_molecule
from .ensemble import EnsembleStats, LossConfig, total_loss
from .errors import ConfigError
from .fastscore import BitScoreCache
from .optimizers import OptimizerConfig, run_optimizer
from .refspace import ReferenceSpace, build_reference_space, check_same_scope
from .sampler import AnsatzSpec, biased_init, random_init, sample, uniform_init

INIT_MODES = ("uniform", "random", "biased")


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to reproduce one optimization run."""

    vocab: str = "table_2_3"
    k: int = 6
    ansatz: str = "RA"
    init_mode: str = "uniform"
    bias_target: tuple[str, ...] | None = None   # token sequence
    shots: int = 1024
    scorer: str = "plogp"
    alpha: float = 2.0
    beta: float = 1.0
    gamma: float = 0.0
    ref_molecule: tuple[str, ...] | None = None  # token sequence
    p0: float | None = None         # None: enumerated reference optimum
    reg_lambda: float = 0.0
    reg_form: str = "one_minus_sum_sq"
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    seed: int = 0
    sample_method: str = "auto"
    qubit_cap: int = 24             # dense-statevector size limit
    # Shot budget for optimizer-internal probe evaluations (stencil points,
    # perturbation pairs); the per-iteration record evaluation always uses
    # the full ``shots``.  None: probes also use the full budget.
    probe_shots: int | None = None
    preset: str | None = None

    def validate(self) -> None:
        if self.shots < 1:
            raise ConfigError("shots must be >= 1")
        if self.init_mode not in INIT_MODES:
            raise ConfigError(f"init_mode must be one of {INIT_MODES}")
        if self.init_mode == "biased" and not self.bias_target:
            raise ConfigError("biased init requires a target token sequence")
        if self.scorer not in ("plogp", "drug"):
            raise ConfigError(f"unknown scorer {self.scorer!r}")
        if self.scorer == "drug" and self.gamma > 0 and not self.ref_molecule:
            raise ConfigError("gamma > 0 requires ref_molecule tokens")
        vocab = get_vocabulary(self.vocab)
        if self.p0 is None and self.k * vocab.bits_per_token > 27:
            raise ConfigError("p0 must be set explicitly for spaces beyond "
                              "exhaustive enumeration")
        if self.bias_target:
            for t in self.bias_target:
                vocab.code_of(t)

    @property
    def num_output_bits(self) -> int:
        return self.k * get_vocabulary(self.vocab).bits_per_token

    def scorer_id(self) -> str:
        if self.scorer == "plogp":
            return "plogp"
        return f"drug[a={self.alpha},b={self.beta},g={self.gamma}]"


@dataclass
class RunRecord:
    """Per-iteration trace plus final artifacts of one run."""

    config: dict
    rows: list[dict] = field(default_factory=list)
    # canonical form -> (best score, iteration first sampled)
    molecules: dict[str, tuple[float, int]] = field(default_factory=dict)
    final_theta: list[float] = field(default_factory=list)
    best_canonical: str | None = None
    best_score: float = float("inf")
    total_evaluations: int = 0
    phase_windows: list[tuple[int, int]] = field(default_factory=list)

    @property
    def cumulative_unique(self) -> int:
        return len(self.molecules)

    def best_molecules(self, n: int = 10) -> list[tuple[str, float]]:
        ranked = sorted(((c, sc) for c, (sc, _) in self.molecules.items()),
                        key=lambda t: (t[1], t[0]))
        return ranked[:n]

    def to_summary(self) -> dict:
        return {
            "config": self.config,
            "best_canonical": self.best_canonical,
            "best_score": self.best_score,
            "unique_molecules": self.cumulative_unique,
            "iterations": len(self.rows),
            "total_evaluations": self.total_evaluations,
            "phase_windows": self.phase_windows,
            "final_theta": self.final_theta,
            "top_molecules": self.best_molecules(25),
        }

    def write(self, out_dir: str, stem: str = "run") -> tuple[str, str]:
        """Writes rows as JSONL, a summary JSON and a molecules CSV;
        returns the rows and summary paths."""
        os.makedirs(out_dir, exist_ok=True)
        rows_path = os.path.join(out_dir, f"{stem}.jsonl")
        summary_path = os.path.join(out_dir, f"{stem}_summary.json")
        molecules_path = os.path.join(out_dir, f"{stem}_molecules.csv")
        with open(rows_path, "w", encoding="utf-8") as fh:
            for row in self.rows:
                fh.write(json.dumps(row, sort_keys=True) + "\n")
        with open(summary_path, "w", encoding="utf-8") as fh:
            json.dump(self.to_summary(), fh, sort_keys=True, indent=1)
            fh.write("\n")
        with open(molecules_path, "w", encoding="utf-8") as fh:
            fh.write("canonical,score,first_iteration\n")
            for canon, (score, first) in sorted(self.molecules.items()):
                fh.write(f"{canon},{score!r},{first}\n")
        return rows_path, summary_path


class _Objective:
    """Sampled loss with per-evaluation substreams and score memoization."""

    def __init__(self, cfg: RunConfig, vocab: TokenVocabulary,
                 spec: AnsatzSpec, loss_cfg: LossConfig, record: RunRecord,
                 score_cache: BitScoreCache | None = None):
        self.cfg = cfg
        self.vocab = vocab
        self.spec = spec
        self.loss_cfg = loss_cfg
        self.record = record
        self.cache = score_cache or BitScoreCache(
            vocab, _build_molecule_scorer(cfg))
        self.seen: set[str] = set()
        self.eval_count = 0
        self.last_stats: EnsembleStats | None = None

    def score_bits(self, bits: str) -> float:
        score, canon = self.cache.lookup(bits)
        if canon is not None and bits not in self.seen:
            iteration = len(self.record.rows)
            prev = self.record.molecules.get(canon)
            if prev is None or score < prev[0]:
                self.record.molecules[canon] = (
                    score, prev[1] if prev else iteration)
            if score < self.record.best_score:
                self.record.best_score = score
                self.record.best_canonical = canon
        self.seen.add(bits)
        return score

    def evaluate(self, theta: np.ndarray, shots: int) -> EnsembleStats:
        self.eval_count += 1
        hist = sample(self.spec, theta, shots,
                      rng_seed=self.cfg.seed, method=self.cfg.sample_method,
                      qubit_cap=self.cfg.qubit_cap,
                      rng_stream=self.eval_count)
        stats = total_loss(hist, self.loss_cfg, self.score_bits)
        self.last_stats = stats
        return stats

    def __call__(self, theta: np.ndarray) -> float:
        shots = self.cfg.probe_shots or self.cfg.shots
        return self.evaluate(theta, shots).loss


def _build_molecule_scorer(cfg: RunConfig):
    if cfg.scorer == "plogp":
        return get_scorer("plogp")
    weights = LossWeights(cfg.alpha, cfg.beta, cfg.gamma)
    ref_fp: Fingerprint | None = None
    if cfg.gamma > 0:
        ref_graph = decode_molecule(list(cfg.ref_molecule))
        if not ref_graph.valid:
            raise ConfigError("ref_molecule decodes to an invalid molecule")
        ref_fp = fingerprint(ref_graph)
    return get_scorer("drug", weights=weights, ref=ref_fp)


def make_score_cache(cfg: RunConfig) -> BitScoreCache:
    """A score cache shareable by every run with this configuration."""
    return BitScoreCache(get_vocabulary(cfg.vocab),
                         _build_molecule_scorer(cfg))


def resolve_p0(cfg: RunConfig, cache_dir: str | None = None
               ) -> tuple[float, ReferenceSpace | None]:
    """Returns the loss target: the configured value, or the enumerated
    space optimum when unset."""
    if cfg.p0 is not None:
        return cfg.p0, None
    vocab = get_vocabulary(cfg.vocab)
    scorer = _build_molecule_scorer(cfg)
    ref = build_reference_space(vocab, cfg.k, scorer, cfg.scorer_id(),
                                cache_dir=cache_dir)
    return ref.best()[1], ref


def run_qevo(cfg: RunConfig, cache_dir: str | None = None,
             reference: ReferenceSpace | None = None,
             score_cache: BitScoreCache | None = None) -> RunRecord:
    """Executes one full optimization run.

    A shared ``score_cache`` lets a batch of seeds reuse decode/score work
    (the bitstring-to-score map is configuration-determined).

    Raises:
        ConfigError: before any compute, for invalid configurations.
    """
    cfg.validate()
    vocab = get_vocabulary(cfg.vocab)
    spec = AnsatzSpec(cfg.ansatz, cfg.num_output_bits)
    if cfg.p0 is not None:
        p0 = cfg.p0
    elif reference is not None:
        p0 = reference.best()[1]
    else:
        p0, reference = resolve_p0(cfg, cache_dir)
    loss_cfg = LossConfig(p0, cfg.reg_lambda, cfg.reg_form)

    record = RunRecord(config=_config_dict(cfg, p0))
    objective = _Objective(cfg, vocab, spec, loss_cfg, record, score_cache)

    if cfg.init_mode == "uniform":
        theta0 = uniform_init(spec)
    elif cfg.init_mode == "random":
        theta0 = random_init(spec, cfg.seed)
    else:
        bits = encode_tokens(list(cfg.bias_target), vocab)
        theta0 = biased_init(spec, bits)

    def on_step(step):
        # The iteration's record evaluation: the full shot budget at the
        # accepted parameters, regardless of the probe budget.
        stats = objective.evaluate(np.asarray(step.theta, dtype=float),
                                   cfg.shots)
        record.rows.append({
            "iteration": step.iteration,
            "loss": stats.loss,
            "probe_loss": step.loss,
            "p_m": stats.p_m,
            "purity": stats.purity,
            "cumulative_unique": record.cumulative_unique,
            "best_canonical": record.best_canonical,
            "best_score": record.best_score,
            "theta_hash": hashlib.sha256(
                np.asarray(step.theta).tobytes()).hexdigest()[:16],
            "step_scale": step.step_scale,
        })

    try:
        steps = run_optimizer(theta0, objective, cfg.optimizer,
                              rng_seed=cfg.seed, callback=on_step)
    except Exception as err:
        # Scorer or optimizer failures abort the run but keep the partial
        # trace attached for flushing by the caller.
        record.final_theta = [float(x) for x in np.asarray(theta0)]
        record.total_evaluations = objective.eval_count
        record.phase_windows = _phase_windows(len(record.rows))
        err.partial_record = record
        raise
    final_theta = steps[-1].theta if steps else theta0
    # One terminal evaluation so even a zero-iteration run samples once.
    if not steps:
        objective.evaluate(np.asarray(theta0, dtype=float), cfg.shots)
    record.final_theta = [float(x) for x in np.asarray(final_theta)]
    record.total_evaluations = objective.eval_count
    record.phase_windows = _phase_windows(len(record.rows))
    return record


def _config_dict(cfg: RunConfig, p0: float) -> dict:
    out = {
        "vocab": cfg.vocab, "k": cfg.k, "ansatz": cfg.ansatz,
        "init_mode": cfg.init_mode, "shots": cfg.shots,
        "scorer": cfg.scorer_id(), "p0": p0,
        "reg_lambda": cfg.reg_lambda, "reg_form": cfg.reg_form,
        "seed": cfg.seed, "preset": cfg.preset,
        "probe_shots": cfg.probe_shots,
        "optimizer": cfg.optimizer.method,
        "max_iterations": cfg.optimizer.max_iterations,
    }
    if cfg.bias_target:
        out["bias_target"] = "".join(cfg.bias_target)
    return out


def _phase_windows(total: int) -> list[tuple[int, int]]:
    """Six equal iteration windows for downstream phase-colored plots."""
    if total <= 0:
        return []
    bounds = [round(i * total / 6) for i in range(7)]
    return [(bounds[i], bounds[i + 1]) for i in range(6)]


def success_against_reference(record: RunRecord, ref: ReferenceSpace,
                              top_k: int = 10) -> bool:
    """True iff any logged molecule ranks in the reference top-k.

    Raises:
        ScopeMismatch: when the record and space were built differently.
    """
    cfgd = record.config
    check_same_scope(ref, cfgd["vocab"], cfgd["k"], cfgd["scorer"])
    top = ref.top_k_set(top_k)
    return any(c in top for c in record.molecules)
