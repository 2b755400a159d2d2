from .crippen import crippen_logp
from .fingerprint import Fingerprint, fingerprint, tanimoto
from .scores import (
    LossWeights, PropertyScore, drug_design_loss, drug_term_a, drug_term_b,
    drug_term_c, plogp_loss, qed_proxy, sas_proxy, get_scorer,
)

__all__ = [
    "crippen_logp", "Fingerprint", "fingerprint", "tanimoto",
    "LossWeights", "PropertyScore", "drug_design_loss", "drug_term_a",
    "drug_term_b", "drug_term_c", "plogp_loss", "qed_proxy", "sas_proxy",
    "get_scorer",
]
