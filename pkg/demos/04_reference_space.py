"""The exhaustively enumerated reference space.

Every k-token bitstring is decoded and deduplicated by canonical form; the
result carries each molecule's score and multiplicity (how many bitstrings
map to it) and a deterministic ranking.  The 6-token space holds 5,790
distinct forms (counting the empty decode as one), out of 2^18 bitstrings.
"""

from qevo import TABLE_2_3, build_reference_space
from qevo.chem import get_scorer

ref = build_reference_space(TABLE_2_3, 6, get_scorer("plogp"), "plogp")

print("total combinations :", ref.total_combinations)
print("unique molecules   :", ref.unique_molecule_count)
print("published count    :", ref.published_unique_count)
print("empty-class strings:", ref.empty_multiplicity)

print("\nbest molecules (most negative loss = highest logP):")
for rank, (canon, score) in enumerate(ref.top_k(10), 1):
    mult = ref.entries[canon][1]
    print(f"  {rank:>2}. {canon:<10} loss {score:.4f}  ({mult} encodings)")

# Multiplicity is conserved: every bitstring lands somewhere.
total = sum(m for _, m in ref.entries.values())
print("\nvalid-mapped bitstrings:", total)
print("plus empty/truncated   :",
      ref.empty_multiplicity + ref.truncated_multiplicity)
