"""Shot sampling from the two circuit families.

RA is the full-width ansatz: one Ry rotation per qubit, a single linear
CNOT chain (qubit i controls i+1, applied in chain order), and a second Ry
layer.  BY is the two-qubit recycled variant: per output bit a cell of two
Ry rotations on the emitted qubit separated by a pair of entangling gates
against a persistent bond qubit; the emitted qubit is measured and reset,
the bond qubit is never measured.

Because the RA entangler is a chain applied in order, the state is exactly
representable with a two-dimensional bond, so measurement outcomes can be
drawn qubit-by-qubit without materializing the 2^q statevector.  The dense
and sequential paths sample the same distribution; ``sample`` picks dense
below a cutoff and sequential above it.

Bit convention: qubit 0 is the leftmost character of a histogram key and
the most significant bit of a statevector index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatch, TooManyQubits

DENSE_CUTOFF = 16
DEFAULT_QUBIT_CAP = 24
HARD_QUBIT_MAX = 27


@dataclass(frozen=True)
class AnsatzSpec:
    """A circuit family sized for a number of output bits.

    RA uses num_output_bits qubits and 2q parameters (two Ry layers); BY
    uses two physical qubits and likewise 2 parameters per output bit.
    """

    family: str
    num_output_bits: int

    def __post_init__(self):
        if self.family not in ("RA", "BY"):
            raise ValueError(f"unknown ansatz family {self.family!r}")
        if self.num_output_bits < 1:
            raise ValueError("need at least one output bit")

    @property
    def num_parameters(self) -> int:
        return 2 * self.num_output_bits


@dataclass(frozen=True)
class SampleHistogram:
    """Counts per measured bitstring."""

    counts: dict[str, int]
    shots: int
    num_bits: int

    def __post_init__(self):
        assert sum(self.counts.values()) == self.shots
        assert all(len(k) == self.num_bits for k in self.counts)

    def weights(self) -> dict[str, float]:
        return {k: v / self.shots for k, v in self.counts.items()}


def _rotation(theta: float) -> np.ndarray:
    half = 0.5 * theta
    c, s = np.cos(half), np.sin(half)
    return np.array([[c, -s], [s, c]])


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based generator; (seed, stream) fixes the draw sequence."""
    return np.random.Generator(np.random.Philox(key=[seed & (2**64 - 1),
                                                      stream & (2**64 - 1)]))


def ra_statevector(spec: AnsatzSpec, theta, qubit_cap: int = DEFAULT_QUBIT_CAP
                   ) -> np.ndarray:
    """Real statevector of the RA circuit, length 2^q.

    Raises:
        TooManyQubits: when q exceeds the cap (or the hard maximum 27).
    """
    if spec.family != "RA":
        raise ValueError("statevector is defined for the RA family")
    q = spec.num_output_bits
    if q > min(qubit_cap, HARD_QUBIT_MAX):
        raise TooManyQubits(f"q={q} exceeds cap {min(qubit_cap, HARD_QUBIT_MAX)}")
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (2 * q,):
        raise LengthMismatch(f"expected {2 * q} angles, got {theta.shape}")
    state = np.zeros(2 ** q)
    state[0] = 1.0
    for i in range(q):
        state = _apply_ry(state, q, i, theta[i])
    for i in range(q - 1):
        state = _apply_cnot_adjacent(state, q, i)
    for i in range(q):
        state = _apply_ry(state, q, i, theta[q + i])
    return state


def _apply_ry(state: np.ndarray, q: int, qubit: int, angle: float) -> np.ndarray:
    rot = _rotation(angle)
    shaped = state.reshape(2 ** qubit, 2, -1)
    return np.einsum("ab,ibj->iaj", rot, shaped).reshape(-1)


def _apply_cnot_adjacent(state: np.ndarray, q: int, control: int) -> np.ndarray:
    # control = qubit i, target = qubit i+1 (adjacent in index order)
    shaped = state.reshape(2 ** control, 2, 2, -1).copy()
    shaped[:, 1] = shaped[:, 1, ::-1].copy()
    return shaped.reshape(-1)


def uniform_init(spec: AnsatzSpec) -> np.ndarray:
    """Angles that prepare the exact uniform superposition.

    First-layer rotations are zero so every entangler sees a control in
    its off state; second-layer rotations are pi/2, turning each qubit
    into an equal mix.
    """
    q = spec.num_output_bits
    theta = np.zeros(2 * q)
    if spec.family == "RA":
        theta[q:] = np.pi / 2
    else:
        theta[1::2] = np.pi / 2
    return theta


def random_init(spec: AnsatzSpec, rng_seed: int) -> np.ndarray:
    """Angles drawn independently and uniformly from [0, pi]."""
    rng = make_rng(rng_seed, stream=0xA11)
    return rng.uniform(0.0, np.pi, size=spec.num_parameters)


def biased_init(spec: AnsatzSpec, target_bits: str) -> np.ndarray:
    """Angles that make sampling return ``target_bits`` with certainty.

    First layer zero; second layer pi per 1-bit.  All entanglers act
    trivially because their controls stay in basis states.

    Raises:
        LengthMismatch: when the target length differs from the spec.
    """
    q = spec.num_output_bits
    if len(target_bits) != q or set(target_bits) - {"0", "1"}:
        raise LengthMismatch(f"target must be {q} bits")
    theta = np.zeros(2 * q)
    marks = np.array([np.pi if b == "1" else 0.0 for b in target_bits])
    if spec.family == "RA":
        theta[q:] = marks
    else:
        theta[1::2] = marks
    return theta


def sample(spec: AnsatzSpec, theta, shots: int, rng_seed: int,
           method: str = "auto", qubit_cap: int = DEFAULT_QUBIT_CAP,
           rng_stream: int = 0) -> SampleHistogram:
    """Draws ``shots`` measurement outcomes.

    Methods: ``dense`` (RA only, multinomial over the squared statevector,
    subject to the qubit cap), ``sequential`` (qubit-recycled conditional
    sampling), or ``auto`` (dense for small RA registers, else sequential).
    ``rng_stream`` selects an independent substream under the same seed,
    letting callers draw fresh shots per evaluation reproducibly.

    Raises:
        TooManyQubits: dense method beyond the cap.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    q = spec.num_output_bits
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (spec.num_parameters,):
        raise LengthMismatch(
            f"expected {spec.num_parameters} angles, got {theta.shape}")
    if spec.family == "BY":
        method = "sequential"
    elif method == "auto":
        method = "dense" if q <= DENSE_CUTOFF else "sequential"

    rng = make_rng(rng_seed, stream=(0x5A << 40) ^ rng_stream)
    if method == "dense":
        probs = ra_statevector(spec, theta, qubit_cap) ** 2
        probs /= probs.sum()
        counts_vec = rng.multinomial(shots, probs)
        nz = np.nonzero(counts_vec)[0]
        counts = {format(int(i), f"0{q}b"): int(counts_vec[i]) for i in nz}
        return SampleHistogram(counts, shots, q)
    if method != "sequential":
        raise ValueError(f"unknown sampling method {method!r}")

    bits = (_sequential_bits_ra(theta, q, shots, rng)
            if spec.family == "RA"
            else _sequential_bits_by(theta, q, shots, rng))
    return _histogram_from_bits(bits, shots, q)


def _histogram_from_bits(bits: np.ndarray, shots: int, q: int) -> SampleHistogram:
    keys = np.frombuffer(
        (bits + ord("0")).astype(np.uint8).tobytes(), dtype=f"S{q}")
    uniq, cnt = np.unique(keys, return_counts=True)
    counts = {k.decode(): int(c) for k, c in zip(uniq, cnt)}
    return SampleHistogram(counts, shots, q)


def _measure_rows(j00, j01, j10, j11, u):
    """Measures the row qubit of per-shot 2x2 joint amplitudes.

    Entries are (shots,) arrays indexed [row, col].  Returns the outcome
    bits and the collapsed, renormalized column state.
    """
    p1 = j10 * j10 + j11 * j11
    total = p1 + j00 * j00 + j01 * j01
    outcome = u * total < p1
    b0 = np.where(outcome, j10, j00)
    b1 = np.where(outcome, j11, j01)
    inv = 1.0 / np.sqrt(b0 * b0 + b1 * b1)
    return outcome, b0 * inv, b1 * inv


def _sequential_bits_ra(theta: np.ndarray, q: int, shots: int,
                        rng: np.random.Generator) -> np.ndarray:
    """Exact conditional sampling of the RA chain circuit.

    The chain entangler gives the state a two-dimensional bond: after
    measuring qubits 0..i-1, qubit i is in a pure conditional state, so
    outcomes can be drawn one qubit at a time.
    """
    bits = np.empty((shots, q), dtype=np.int8)
    half = 0.5 * theta[0]
    b0 = np.full(shots, np.cos(half))
    b1 = np.full(shots, np.sin(half))
    for i in range(q - 1):
        half = 0.5 * theta[i + 1]
        f0, f1 = np.cos(half), np.sin(half)              # next qubit, layer 1
        j00, j01 = b0 * f0, b0 * f1
        j11, j10 = b1 * f0, b1 * f1                      # CNOT(i -> i+1)
        half = 0.5 * theta[q + i]                        # layer 2 on qubit i
        c, s = np.cos(half), np.sin(half)
        n00 = c * j00 - s * j10
        n01 = c * j01 - s * j11
        n10 = s * j00 + c * j10
        n11 = s * j01 + c * j11
        bits[:, i], b0, b1 = _measure_rows(n00, n01, n10, n11,
                                           rng.random(shots))
    half = 0.5 * theta[2 * q - 1]
    c, s = np.cos(half), np.sin(half)
    l0 = c * b0 - s * b1
    l1 = s * b0 + c * b1
    p1 = l1 * l1 / (l0 * l0 + l1 * l1)
    bits[:, q - 1] = rng.random(shots) < p1
    return bits


def _sequential_bits_by(theta: np.ndarray, q: int, shots: int,
                        rng: np.random.Generator) -> np.ndarray:
    """BY cells: emit/bond register with measure-and-reset per output bit.

    Cell k: Ry(theta[2k]) on emit, CNOT(emit -> bond), Ry(theta[2k+1]) on
    emit, CNOT(bond -> emit), measure emit.  The bond qubit persists and is
    discarded (traced) after the last cell.
    """
    bits = np.empty((shots, q), dtype=np.int8)
    b0 = np.ones(shots)
    b1 = np.zeros(shots)
    for k in range(q):
        half = 0.5 * theta[2 * k]
        e0, e1 = np.cos(half), np.sin(half)
        j00, j01 = e0 * b0, e0 * b1                      # [emit, bond]
        j11, j10 = e1 * b0, e1 * b1                      # CNOT(emit -> bond)
        half = 0.5 * theta[2 * k + 1]                    # Ry on emit
        c, s = np.cos(half), np.sin(half)
        n00 = c * j00 - s * j10
        n01 = c * j01 - s * j11
        n10 = s * j00 + c * j10
        n11 = s * j01 + c * j11
        n01, n11 = n11, n01                              # CNOT(bond -> emit)
        bits[:, k], b0, b1 = _measure_rows(n00, n01, n10, n11,
                                           rng.random(shots))
    return bits
