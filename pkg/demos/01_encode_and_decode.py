"""Tokens, bitstrings and molecules: the encoding round trip.

Every molecule in a run is a fixed-width bitstring.  A vocabulary of 2^n
tokens maps each n-bit block to one token, and the token sequence decodes
into a chemical graph under self-repair rules: impossible bonds are
clipped, dead branch and ring tokens are skipped, and the derivation
truncates gracefully at the end of the sequence.
"""

from qevo import TABLE_2_3, canonicalize, decode_bits, decode_molecule, \
    encode_tokens

# Hexane is six carbon tokens; each [C] carries the code 000.
tokens = ["[C]"] * 6
bits = encode_tokens(tokens, TABLE_2_3)
print("hexane tokens :", "".join(tokens))
print("hexane bits   :", bits)

graph = decode_molecule(tokens)
print("canonical     :", canonicalize(graph))
print("hydrogens     :", graph.hydrogens)

# Any 18-bit string decodes to something; here is a random-looking one.
bits = "101100111000110111"
tokens = decode_bits(bits, TABLE_2_3)
graph = decode_molecule(tokens)
print("\nbits          :", bits)
print("tokens        :", "".join(tokens))
if graph.valid:
    print("decoded       :", canonicalize(graph))
else:
    print("decoded       : invalid ->", graph.invalid_reason)

# Self-repair in action: a triple-bond request onto oxygen clips to the
# oxygen's two-bond capacity.
graph = decode_molecule(["[O]", "[#N]"])
print("\n[O][#N] bonds :", graph.bonds, "->", canonicalize(graph))
