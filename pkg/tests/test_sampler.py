"""Sampler: statevectors, initialization modes, shot distributions."""

import numpy as np
import pytest
from scipy import stats

from qevo.errors import LengthMismatch, TooManyQubits
from qevo.sampler import (
    AnsatzSpec, biased_init, make_rng, ra_statevector, random_init, sample,
    uniform_init,
)


def test_single_qubit_half_rotation():
    spec = AnsatzSpec("RA", 1)
    state = ra_statevector(spec, [0.0, np.pi / 2])
    assert state == pytest.approx([1 / np.sqrt(2), 1 / np.sqrt(2)], abs=1e-12)


def test_two_qubit_uniform_init():
    spec = AnsatzSpec("RA", 2)
    state = ra_statevector(spec, uniform_init(spec))
    assert state == pytest.approx([0.5] * 4, abs=1e-12)


def test_identity_circuit_stays_on_zero():
    spec = AnsatzSpec("RA", 3)
    state = ra_statevector(spec, np.zeros(6))
    expected = np.zeros(8)
    expected[0] = 1.0
    assert state == pytest.approx(expected, abs=1e-14)


def test_statevector_normalized_random_angles():
    rng = np.random.default_rng(2)
    for q in (2, 5, 9, 12):
        spec = AnsatzSpec("RA", q)
        for _ in (0, 1, 2):
            theta = rng.uniform(-np.pi, np.pi, 2 * q)
            state = ra_statevector(spec, theta)
            assert abs(np.linalg.norm(state) - 1.0) < 1e-10


def test_uniform_init_exact_at_q18():
    spec = AnsatzSpec("RA", 18)
    state = ra_statevector(spec, uniform_init(spec))
    expected = 1.0 / np.sqrt(2 ** 18)
    assert np.max(np.abs(state - expected)) < 1e-12


def test_too_many_qubits():
    with pytest.raises(TooManyQubits):
        ra_statevector(AnsatzSpec("RA", 25), np.zeros(50))
    with pytest.raises(TooManyQubits):
        sample(AnsatzSpec("RA", 25), np.zeros(50), 10, 0, method="dense")


def test_chi_square_uniformity_q6():
    spec = AnsatzSpec("RA", 6)
    hist = sample(spec, uniform_init(spec), 100_000, rng_seed=17)
    observed = np.zeros(64)
    for key, count in hist.counts.items():
        observed[int(key, 2)] = count
    _, p = stats.chisquare(observed)
    assert p > 0.001


def test_basis_aligned_angles_single_key():
    spec = AnsatzSpec("RA", 5)
    theta = np.zeros(10)
    theta[5:] = [0, np.pi, np.pi, 0, np.pi]
    hist = sample(spec, theta, 500, rng_seed=3)
    assert hist.counts == {"01101": 500}


def test_biased_init_hits_target_exactly():
    rng = np.random.default_rng(40)
    for spec in (AnsatzSpec("RA", 12), AnsatzSpec("BY", 12)):
        for _ in range(20):
            target = "".join(rng.choice(["0", "1"], 12))
            theta = biased_init(spec, target)
            hist = sample(spec, theta, 256, rng_seed=5)
            assert hist.counts == {target: 256}


def test_biased_init_length_check():
    with pytest.raises(LengthMismatch):
        biased_init(AnsatzSpec("RA", 4), "01")


def test_random_init_seeded_and_bounded():
    spec = AnsatzSpec("RA", 9)
    a = random_init(spec, 123)
    b = random_init(spec, 123)
    c = random_init(spec, 124)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert a.min() >= 0.0 and a.max() <= np.pi
    assert a.shape == (18,)


def test_seed_determinism_same_histogram():
    spec = AnsatzSpec("RA", 8)
    theta = random_init(spec, 9)
    h1 = sample(spec, theta, 2048, rng_seed=77)
    h2 = sample(spec, theta, 2048, rng_seed=77)
    assert h1.counts == h2.counts
    h3 = sample(spec, theta, 2048, rng_seed=78)
    assert h1.counts != h3.counts


def test_sequential_matches_dense_distribution():
    # The sequential path draws from the same law as the squared dense
    # amplitudes; compare empirical frequencies to exact probabilities.
    spec = AnsatzSpec("RA", 6)
    theta = random_init(spec, 31)
    probs = ra_statevector(spec, theta) ** 2
    shots = 200_000
    hist = sample(spec, theta, shots, rng_seed=11, method="sequential")
    emp = np.zeros(64)
    for key, count in hist.counts.items():
        emp[int(key, 2)] = count / shots
    tv = 0.5 * np.abs(emp - probs).sum()
    assert tv < 0.02


def test_exact_distribution_multinomial_bounds():
    spec = AnsatzSpec("RA", 5)
    theta = random_init(spec, 8)
    probs = ra_statevector(spec, theta) ** 2
    shots = 1_000_000
    hist = sample(spec, theta, shots, rng_seed=21, method="dense")
    for idx, p in enumerate(probs):
        if p < 1e-9:
            continue
        key = format(idx, "05b")
        observed = hist.counts.get(key, 0)
        sigma = np.sqrt(shots * p * (1 - p))
        assert abs(observed - shots * p) <= 5 * sigma + 1


def test_by_matches_ra_for_product_settings():
    # First-in-cell angles zero keep both entanglers trivial, so BY draws
    # independent per-bit outcomes matching an RA circuit with zero first
    # layer and the same second layer.
    q = 4
    rng = np.random.default_rng(6)
    marks = rng.uniform(0, np.pi, q)
    ra = AnsatzSpec("RA", q)
    by = AnsatzSpec("BY", q)
    theta_ra = np.concatenate([np.zeros(q), marks])
    theta_by = np.zeros(2 * q)
    theta_by[1::2] = marks
    shots = 100_000
    h_ra = sample(ra, theta_ra, shots, rng_seed=14)
    h_by = sample(by, theta_by, shots, rng_seed=15)
    keys = sorted(set(h_ra.counts) | set(h_by.counts))
    tv = 0.5 * sum(abs(h_ra.counts.get(k, 0) - h_by.counts.get(k, 0)) / shots
                   for k in keys)
    assert tv < 0.02


def test_by_constant_memory_long_register():
    spec = AnsatzSpec("BY", 160)
    theta = uniform_init(spec)
    hist = sample(spec, theta, 64, rng_seed=1)
    assert hist.num_bits == 160
    assert all(len(k) == 160 for k in hist.counts)
    assert sum(hist.counts.values()) == 64


def test_histogram_weights_sum_to_one():
    spec = AnsatzSpec("RA", 6)
    hist = sample(spec, uniform_init(spec), 4096, rng_seed=2)
    assert sum(hist.weights().values()) == pytest.approx(1.0, abs=1e-12)


def test_make_rng_streams_differ():
    a = make_rng(1, 0).random(4)
    b = make_rng(1, 1).random(4)
    assert not np.array_equal(a, b)
