"""Reference-stack loading with a hard, instructive failure mode."""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass

LOCK_FILE = os.path.join(os.path.dirname(os.path.dirname(
    os.path.dirname(os.path.abspath(__file__)))), "reference_stack.lock")


class StackMissing(RuntimeError):
    pass


@dataclass(frozen=True)
class ReferenceStack:
    selfies: object
    rdkit_chem: object
    rdkit_crippen: object
    versions: dict[str, str]


def read_lock() -> dict[str, str]:
    pins = {}
    with open(LOCK_FILE, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            name, _, version = line.partition("==")
            pins[name] = version
    return pins


def load_stack(strict_versions: bool = False) -> ReferenceStack:
    """Imports the pinned reference stack.

    Raises:
        StackMissing: with installation instructions when a library is
            absent, or (strict mode) when an installed version deviates
            from the lock manifest.
    """
    pins = read_lock()
    try:
        import selfies
    except ImportError as err:
        raise StackMissing(_missing_message("selfies", pins)) from err
    try:
        from rdkit import Chem
        from rdkit.Chem import Crippen
    except ImportError as err:
        raise StackMissing(_missing_message("rdkit", pins)) from err
    import rdkit

    versions = {"selfies": selfies.__version__, "rdkit": rdkit.__version__}
    if strict_versions:
        for name, pinned in pins.items():
            if versions.get(name) != pinned:
                raise StackMissing(
                    f"{name} {versions.get(name)} installed but the lock "
                    f"manifest pins {pinned}; install the pinned version or "
                    f"re-freeze the lock file.")
    return ReferenceStack(selfies, Chem, Crippen, versions)


def _missing_message(name: str, pins: dict[str, str]) -> str:
    spec = f"{name}=={pins[name]}" if name in pins else name
    return (f"the reference stack is not installed ({name} missing). "
            f"Install it with: pip install \"{spec}\" "
            f"(see reference_stack.lock for all pins), then re-run.")


def abort_if_missing() -> ReferenceStack:
    try:
        return load_stack()
    except StackMissing as err:
        sys.stderr.write(f"error: {err}\n")
        raise SystemExit(3) from err
