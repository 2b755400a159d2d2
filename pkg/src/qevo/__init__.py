"""Classical simulation of sample-based variational molecule optimization.

Encodes molecules as fixed-width bitstrings, samples them from
parameterized quantum circuits, scores them with molecular property
functions, and optimizes the circuit parameters to concentrate sampling on
optimal molecules.
"""

from .codec import TABLE_2_3, TABLE_2_4, TokenVocabulary, decode_bits, \
    encode_tokens, get_vocabulary, load_vocabulary
from .decoder import DEFAULT_DIALECT, Dialect, decode_molecule
from .driver import RunConfig, RunRecord, make_score_cache, run_qevo, \
    success_against_reference
from .ensemble import EnsembleStats, LossConfig, ensemble_average, purity, \
    total_loss
from .graph import MoleculeGraph, canonicalize
from .optimizers import ImfilConfig, OptimizerConfig, SpsaConfig, \
    run_optimizer
from .presets import PRESET_NAMES, get_preset
from .refspace import ReferenceSpace, build_reference_space
from .sampler import AnsatzSpec, SampleHistogram, biased_init, \
    ra_statevector, random_init, sample, uniform_init

__version__ = "0.1.0"
