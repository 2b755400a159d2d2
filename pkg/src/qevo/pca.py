"""Principal components of fingerprint space, dependency-free.

Components are fitted on the mean-centered fingerprints of the full
reference space by power iteration with deflation, then sampled molecules
are projected onto the top two components together with their loss values
and optimization-window indices.  The sign convention (the
largest-magnitude coordinate of each component is positive) makes
projections reproducible across platforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chem.fingerprint import Fingerprint, fingerprint
from .errors import DegenerateCovariance

POWER_TOL = 1e-9
POWER_MAX_ITER = 10_000


@dataclass(frozen=True)
class PcaModel:
    mean: np.ndarray
    components: np.ndarray          # (n_components, width)
    explained: tuple[float, ...]    # Rayleigh quotients, descending

    def project(self, fp: Fingerprint) -> np.ndarray:
        x = np.zeros(self.mean.size)
        x[list(fp.bits)] = 1.0
        return (self.components @ (x - self.mean))


def _power_iteration(data: np.ndarray, start: np.ndarray) -> tuple[np.ndarray, float]:
    v = start / np.linalg.norm(start)
    last = 0.0
    for _ in range(POWER_MAX_ITER):
        w = data.T @ (data @ v)
        norm = np.linalg.norm(w)
        if norm == 0:
            return v, 0.0
        w /= norm
        value = float(norm / len(data))
        if abs(value - last) <= POWER_TOL * max(1.0, value):
            v = w
            break
        v, last = w, value
    rayleigh = float(np.linalg.norm(data @ v) ** 2 / len(data))
    return v, rayleigh


def fit_components(fps: list[Fingerprint], n_components: int = 2) -> PcaModel:
    """Fits principal components on mean-centered fingerprint rows.

    Raises:
        DegenerateCovariance: with fewer than three distinct fingerprints.
    """
    distinct = {fp.bits for fp in fps}
    if len(distinct) < 3:
        raise DegenerateCovariance(
            f"need at least 3 distinct fingerprints, got {len(distinct)}")
    width = fps[0].width
    data = np.zeros((len(fps), width))
    for row, fp in enumerate(fps):
        data[row, list(fp.bits)] = 1.0
    mean = data.mean(axis=0)
    data -= mean
    components = []
    explained = []
    # Deterministic start: the coordinate directions of largest variance.
    for _ in range(n_components):
        variances = (data ** 2).sum(axis=0)
        start = np.zeros(width)
        start[int(np.argmax(variances))] = 1.0
        v, value = _power_iteration(data, start)
        # Fix the sign: largest-magnitude coordinate positive.
        peak = int(np.argmax(np.abs(v)))
        if v[peak] < 0:
            v = -v
        components.append(v)
        explained.append(value)
        data = data - np.outer(data @ v, v)
    return PcaModel(mean, np.array(components), tuple(explained))


def project_molecules(model: PcaModel, molecules: dict[str, tuple],
                      graph_of, total_iterations: int) -> list[dict]:
    """Projects sampled molecules: canonical -> (score, first_iteration).

    ``graph_of`` maps a canonical form to its MoleculeGraph.  Returns plot
    rows with the two coordinates, the loss and the six-phase window index.
    """
    rows = []
    for canon, (score, first_iter) in sorted(molecules.items()):
        coords = model.project(fingerprint(graph_of(canon)))
        window = 0
        if total_iterations > 0:
            window = min(5, int(6 * first_iter / total_iterations))
        rows.append({
            "canonical": canon,
            "pc1": float(coords[0]),
            "pc2": float(coords[1]),
            "loss": score,
            "window": window,
        })
    return rows
