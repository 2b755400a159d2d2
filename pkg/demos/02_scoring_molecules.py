"""Property scoring: logP, the solubility loss, and the drug-design loss."""

from qevo.chem import crippen_logp, drug_design_loss, fingerprint, \
    plogp_loss, qed_proxy, sas_proxy, tanimoto, LossWeights
from qevo import decode_molecule, canonicalize

examples = {
    "hexane": ["[C]"] * 6,
    "pentanol": ["[O]"] + ["[C]"] * 5,
    "hexylamine": ["[N]"] + ["[C]"] * 6,
    "fluoropentene": ["[F]", "[=C]", "[=C]", "[C]", "[C]", "[C]"],
    "cyclopropene-ring": ["[C]", "[=C]", "[=C]", "[Ring1]", "[Ring1]"],
}

weights = LossWeights(alpha=2.0, beta=1.0, gamma=0.0)
print(f"{'molecule':>18} {'canonical':>12} {'logP':>8} {'plogp loss':>11} "
      f"{'qed~':>6} {'sas~':>6} {'drug loss':>10}")
for name, tokens in examples.items():
    g = decode_molecule(tokens)
    print(f"{name:>18} {canonicalize(g):>12} {crippen_logp(g):8.4f} "
          f"{plogp_loss(g).value:11.4f} {qed_proxy(g):6.3f} "
          f"{sas_proxy(g):6.2f} {drug_design_loss(g, weights).value:10.4f}")

# Tanimoto similarity over circular fingerprints drives the similarity
# term of the 40-token experiments.
hexane = fingerprint(decode_molecule(["[C]"] * 6))
hexanol = fingerprint(decode_molecule(["[O]"] + ["[C]"] * 5))
print("\ntanimoto(hexane, hexane) :", tanimoto(hexane, hexane))
print("tanimoto(hexane, hexanol):", round(tanimoto(hexane, hexanol), 4))
