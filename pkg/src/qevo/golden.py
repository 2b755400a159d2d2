"""Reading committed golden files.

Golden files live under golden/ and begin with a manifest header line
(``# manifest: ...``).  Readers refuse files without one, so stale or
hand-edited data fails loudly.
"""

from __future__ import annotations

import os

GOLDEN_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(
    os.path.abspath(__file__)))), "golden")


def golden_path(name: str) -> str:
    return os.path.join(GOLDEN_DIR, name)


def read_golden(path: str) -> tuple[dict[str, str], list[list[str]]]:
    """Returns (manifest fields, data rows) of a golden CSV.

    Raises:
        ValueError: when the manifest header line is missing.
    """
    with open(path, encoding="utf-8") as fh:
        first = fh.readline().strip()
        if not first.startswith("# manifest:"):
            raise ValueError(f"{path}: missing golden manifest header")
        manifest = {}
        for part in first[len("# manifest:"):].split():
            key, _, value = part.partition("=")
            manifest[key] = value
        rows = []
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            rows.append(line.split(","))
    return manifest, rows


def read_logp_golden(path: str) -> list[tuple[list[str], float, str]]:
    """Rows of a logP golden file: (token sequence, reference logP, note)."""
    manifest, rows = read_golden(path)
    if manifest.get("kind") != "logp":
        raise ValueError(f"{path}: expected kind=logp, got {manifest}")
    out = []
    for row in rows:
        tokens = _split_tokens(row[0])
        out.append((tokens, float(row[1]), row[2] if len(row) > 2 else ""))
    return out


def read_counts_golden(path: str) -> dict[int, int]:
    """Rows of a unique-count golden file: token count -> unique forms."""
    manifest, rows = read_golden(path)
    if manifest.get("kind") != "unique-counts":
        raise ValueError(f"{path}: expected kind=unique-counts, got {manifest}")
    return {int(k): int(v) for k, v, *_ in rows}


def _split_tokens(text: str) -> list[str]:
    tokens = []
    i = 0
    while i < len(text):
        if text[i] != "[":
            raise ValueError(f"malformed token text {text!r}")
        j = text.index("]", i)
        tokens.append(text[i:j + 1])
        i = j + 1
    return tokens
