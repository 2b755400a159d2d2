"""Bijective mapping between molecular string tokens and fixed-width bitstrings.

A vocabulary of 2^n tokens assigns every token a distinct n-bit code; a
molecule of k tokens is encoded by concatenating the k codes into one
bitstring of length k*n.  The leftmost character of a code is the most
significant bit and corresponds to qubit 0 of that token's block, so
histogram keys read the same way the codes are written.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import LengthMismatch, UnknownToken


@dataclass(frozen=True)
class TokenVocabulary:
    """An ordered set of 2^n tokens with their n-bit codes.

    Immutable after construction; safe to share across workers.
    """

    name: str
    tokens: tuple[str, ...]
    bits_per_token: int
    _code_of: dict[str, str] = field(repr=False, default_factory=dict)
    _token_of: dict[str, str] = field(repr=False, default_factory=dict)

    @staticmethod
    def from_pairs(name: str, pairs: list[tuple[str, str]]) -> "TokenVocabulary":
        """Builds a vocabulary from (token, bitcode) pairs.

        Requires exactly 2^n pairs with distinct tokens and distinct codes of
        a common width n, so that decoding is total over all n-bit codes.
        """
        if not pairs:
            raise ValueError("empty vocabulary")
        n = len(pairs[0][1])
        if any(len(code) != n for _, code in pairs):
            raise ValueError("codes have mixed widths")
        if len(pairs) != 2 ** n:
            raise ValueError(f"need exactly 2^{n} tokens, got {len(pairs)}")
        code_of = {}
        token_of = {}
        for token, code in pairs:
            if set(code) - {"0", "1"}:
                raise ValueError(f"code {code!r} is not binary")
            if token in code_of or code in token_of:
                raise ValueError(f"duplicate entry {token!r}/{code!r}")
            code_of[token] = code
            token_of[code] = token
        vocab = TokenVocabulary(
            name=name,
            tokens=tuple(t for t, _ in pairs),
            bits_per_token=n,
        )
        vocab._code_of.update(code_of)
        vocab._token_of.update(token_of)
        return vocab

    def code_of(self, token: str) -> str:
        try:
            return self._code_of[token]
        except KeyError:
            raise UnknownToken(f"token {token!r} not in vocabulary {self.name!r}") from None

    def token_of(self, code: str) -> str:
        try:
            return self._token_of[code]
        except KeyError:
            raise LengthMismatch(f"{code!r} is not a {self.bits_per_token}-bit code") from None

    def __len__(self) -> int:
        return len(self.tokens)


def encode_tokens(tokens: list[str] | tuple[str, ...], vocab: TokenVocabulary,
                  k: int | None = None) -> str:
    """Concatenates the codes of ``tokens`` into one bitstring.

    Args:
        tokens: token sequence, each token present in ``vocab``.
        vocab: the vocabulary to encode with.
        k: expected token count; when given, a differing length raises.

    Returns:
        Bitstring of length ``len(tokens) * vocab.bits_per_token``.
    """
    if k is not None and len(tokens) != k:
        raise LengthMismatch(f"expected {k} tokens, got {len(tokens)}")
    return "".join(vocab.code_of(t) for t in tokens)


def decode_bits(bits: str, vocab: TokenVocabulary) -> list[str]:
    """Splits ``bits`` into n-bit blocks and maps each back to its token.

    Total over all bitstrings whose length is a multiple of n; the only
    error is a length mismatch.
    """
    n = vocab.bits_per_token
    if len(bits) % n != 0:
        raise LengthMismatch(f"bitstring length {len(bits)} not divisible by {n}")
    return [vocab.token_of(bits[i:i + n]) for i in range(0, len(bits), n)]


def load_vocabulary(path: str, name: str | None = None) -> TokenVocabulary:
    """Reads a vocabulary file: one ``token=bitcode`` pair per line.

    Blank lines and lines starting with ``#`` are skipped.
    """
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            token, _, code = line.partition("=")
            if not _:
                raise ValueError(f"malformed vocabulary line: {line!r}")
            pairs.append((token.strip(), code.strip()))
    return TokenVocabulary.from_pairs(name or path, pairs)


# The two built-in presets.  table_2_3 covers a 2^3 dictionary on three bits
# per token; table_2_4 covers a 2^4 dictionary on four bits per token.

TABLE_2_3 = TokenVocabulary.from_pairs("table_2_3", [
    ("[C]", "000"),
    ("[O]", "001"),
    ("[N]", "010"),
    ("[F]", "011"),
    ("[=C]", "100"),
    ("[#N]", "101"),
    ("[Ring1]", "110"),
    ("[Branch1]", "111"),
])

TABLE_2_4 = TokenVocabulary.from_pairs("table_2_4", [
    ("[C]", "0000"),
    ("[=C]", "1000"),
    ("[#C]", "0100"),
    ("[O]", "0010"),
    ("[=O]", "0001"),
    ("[N]", "1100"),
    ("[=N]", "0011"),
    ("[#N]", "0110"),
    ("[F]", "1001"),
    ("[Cl]", "1010"),
    ("[Ring1]", "0101"),
    ("[Ring2]", "1110"),
    ("[Branch1]", "0111"),
    ("[=Branch1]", "1101"),
    ("[Branch2]", "1011"),
    ("[=Branch2]", "1111"),
])

PRESETS = {v.name: v for v in (TABLE_2_3, TABLE_2_4)}


def get_vocabulary(name: str) -> TokenVocabulary:
    """Looks up a built-in vocabulary preset by name."""
    try:
        return PRESETS[name]
    except KeyError:
        raise UnknownToken(f"no vocabulary preset named {name!r}") from None
