"""One-shot cross-validation scripts against the reference stack.

The harness enumerates token spaces through the reference string-decoding
and cheminformatics libraries and freezes the results into golden CSV
files: unique canonical counts per token length, and per-molecule logP for
every unique valid molecule.  The main test suite consumes only the
emitted golden files; the harness itself never becomes a runtime
dependency and shares no code with the main package.
"""

__version__ = "0.1.0"
