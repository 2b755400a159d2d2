"""Golden-file emission by exhaustive enumeration through the stack.

The harness carries its own copy of the published token tables and walks
every token sequence of the requested length through the reference decoder
and canonicalizer, so its outputs are independent of the implementation
they validate.  Emitted files carry a manifest header with the stack
versions; reruns under the same pins are byte-identical.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .stack import ReferenceStack

# Published token-to-code tables (three-bit and four-bit dictionaries).
VOCABULARIES: dict[str, dict[str, str]] = {
    "table_2_3": {
        "[C]": "000", "[O]": "001", "[N]": "010", "[F]": "011",
        "[=C]": "100", "[#N]": "101", "[Ring1]": "110", "[Branch1]": "111",
    },
    "table_2_4": {
        "[C]": "0000", "[=C]": "1000", "[#C]": "0100", "[O]": "0010",
        "[=O]": "0001", "[N]": "1100", "[=N]": "0011", "[#N]": "0110",
        "[F]": "1001", "[Cl]": "1010", "[Ring1]": "0101", "[Ring2]": "1110",
        "[Branch1]": "0111", "[=Branch1]": "1101", "[Branch2]": "1011",
        "[=Branch2]": "1111",
    },
}


@dataclass
class SpaceScan:
    """Result of enumerating one token length through the stack."""

    k: int
    unique_forms: int                       # distinct canonical results
    molecules: dict[str, tuple[str, int]]   # canonical -> (tokens, mult)
    empty_count: int
    failed_count: int


def scan_space(stack: ReferenceStack, vocab_name: str, k: int) -> SpaceScan:
    """Decodes every k-token sequence and deduplicates by the reference
    canonical form.  Decoder failures count separately; the empty decode
    counts as one distinct form, matching the published convention."""
    tokens = list(VOCABULARIES[vocab_name])
    sf = stack.selfies
    chem = stack.rdkit_chem
    molecules: dict[str, tuple[str, int]] = {}
    empty = 0
    failed = 0
    for seq in itertools.product(tokens, repeat=k):
        text = "".join(seq)
        try:
            smiles = sf.decoder(text)
        except Exception:
            failed += 1
            continue
        if smiles is None:
            failed += 1
            continue
        if smiles == "":
            empty += 1
            continue
        mol = chem.MolFromSmiles(smiles)
        if mol is None:
            failed += 1
            continue
        canonical = chem.MolToSmiles(mol)
        if canonical in molecules:
            prev_tokens, mult = molecules[canonical]
            molecules[canonical] = (prev_tokens, mult + 1)
        else:
            molecules[canonical] = (text, 1)
    unique_forms = len(molecules) + (1 if empty else 0)
    return SpaceScan(k, unique_forms, molecules, empty, failed)


def format_manifest(kind: str, stack_versions: dict[str, str],
                    extra: dict[str, str]) -> str:
    fields = {"kind": kind, "version": "1"}
    fields.update({f"stack.{k}": v for k, v in sorted(stack_versions.items())})
    fields.update(extra)
    body = " ".join(f"{k}={v}" for k, v in fields.items())
    return f"# manifest: {body}\n"


def emit_unique_counts(stack: ReferenceStack, vocab_name: str,
                       k_list: list[int], out_path: str) -> list[int]:
    """Writes the unique-count golden file; returns the counts."""
    counts = []
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(format_manifest("unique-counts", stack.versions,
                                 {"vocab": vocab_name,
                                  "convention": "includes-empty-class"}))
        fh.write("# columns: token_count,unique_forms\n")
        for k in k_list:
            scan = scan_space(stack, vocab_name, k)
            counts.append(scan.unique_forms)
            fh.write(f"{k},{scan.unique_forms}\n")
    return counts


def emit_logp_golden(stack: ReferenceStack, vocab_name: str, k: int,
                     out_path: str) -> int:
    """Writes per-molecule reference logP for all unique valid molecules
    at length k, keyed by a representative token sequence; returns the row
    count."""
    scan = scan_space(stack, vocab_name, k)
    chem, crippen = stack.rdkit_chem, stack.rdkit_crippen
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(format_manifest("logp", stack.versions,
                                 {"vocab": vocab_name, "k": str(k)}))
        fh.write("# columns: tokens,logp,note\n")
        for canonical in sorted(scan.molecules):
            tokens, _ = scan.molecules[canonical]
            mol = chem.MolFromSmiles(canonical)
            value = crippen.MolLogP(mol)
            fh.write(f"{tokens},{value:.6f},{canonical}\n")
    return len(scan.molecules)


def emit_drug_ranking(stack: ReferenceStack, vocab_name: str, k: int,
                      out_path: str, alpha: float = 2.0, beta: float = 1.0,
                      top: int = 500) -> int:
    """Writes the reference-stack drug-design ranking of a token space.

    The loss is (alpha*a + beta*b) / (alpha + beta) with the published
    drug-likeness term a (large-ring branch included) and the normalized
    synthetic-accessibility term b, both computed by the reference stack.
    Downstream reports measure rank overlap of proxy-based rankings
    against this file; rows are capped at ``top``.
    """
    from rdkit.Chem import QED
    try:
        from rdkit.Chem import RDConfig
        import os as _os
        import sys as _sys
        _sys.path.append(_os.path.join(RDConfig.RDContribDir, "SA_Score"))
        import sascorer
    except ImportError as err:
        raise RuntimeError(
            "the reference synthetic-accessibility scorer is unavailable "
            "in this stack build") from err

    scan = scan_space(stack, vocab_name, k)
    chem = stack.rdkit_chem
    rows = []
    for canonical, (tokens, _) in scan.molecules.items():
        mol = chem.MolFromSmiles(canonical)
        ring_info = mol.GetRingInfo()
        big_ring = any(len(r) > 7 for r in ring_info.AtomRings())
        a = (1.0 if big_ring else 1.2) - QED.qed(mol)
        b = sascorer.calculateScore(mol) / 10.0
        loss = (alpha * a + beta * b) / (alpha + beta)
        rows.append((loss, canonical, tokens))
    rows.sort()
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(format_manifest("drug-ranking", stack.versions,
                                 {"vocab": vocab_name, "k": str(k),
                                  "alpha": str(alpha), "beta": str(beta)}))
        fh.write("# columns: rank,tokens,loss,note\n")
        for rank, (loss, canonical, tokens) in enumerate(rows[:top], 1):
            fh.write(f"{rank},{tokens},{loss:.6f},{canonical}\n")
    return min(top, len(rows))
