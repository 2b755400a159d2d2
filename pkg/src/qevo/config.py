"""Run-configuration files: a minimal TOML-subset reader.

Supported syntax: ``[section]`` headers (one level), ``key = value`` pairs,
``#`` comments, and scalar values (quoted strings, integers, floats,
booleans) plus flat arrays of scalars.  This covers the configuration
surface without a third-party parser.
"""

from __future__ import annotations

import dataclasses

from .driver import RunConfig
from .errors import ConfigError
from .optimizers import ImfilConfig, OptimizerConfig, SpsaConfig
from .presets import get_preset


def parse_toml_subset(text: str) -> dict:
    """Parses the TOML subset into {section: {key: value}} (top-level keys
    live under the empty-string section)."""
    data: dict[str, dict] = {"": {}}
    section = ""
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(f"line {lineno}: malformed section header")
            section = line[1:-1].strip()
            data.setdefault(section, {})
            continue
        key, eq, value = line.partition("=")
        if not eq:
            raise ConfigError(f"line {lineno}: expected key = value")
        data[section][key.strip()] = _parse_value(value.strip(), lineno)
    return data


def _parse_value(text: str, lineno: int):
    if "#" in text and not text.startswith(("'", '"', "[")):
        text = text.split("#", 1)[0].strip()
    if text.startswith("[") and text.endswith("]"):
        inner = text[1:-1].strip()
        if not inner:
            return []
        return [_parse_value(part.strip(), lineno) for part in inner.split(",")]
    if text.startswith(("'", '"')) and text.endswith(text[0]) and len(text) >= 2:
        return text[1:-1]
    if text in ("true", "false"):
        return text == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"line {lineno}: cannot parse value {text!r}") from None


def _tokens_value(value) -> tuple[str, ...] | None:
    if value is None:
        return None
    if isinstance(value, list):
        return tuple(value)
    # compact form: "[C][O][N]"
    out = []
    i = 0
    while i < len(value):
        j = value.index("]", i)
        out.append(value[i:j + 1])
        i = j + 1
    return tuple(out)


def run_config_from_dict(data: dict) -> RunConfig:
    """Builds a RunConfig from parsed sections ``run``, ``optimizer.spsa``
    and ``optimizer.imfil``; a ``preset`` key seeds defaults first."""
    run = dict(data.get("run", {}))
    run.update(data.get("", {}))
    preset = run.pop("preset", None)
    if preset:
        cfg = get_preset(preset, seed=int(run.pop("seed", 0)))
    else:
        cfg = RunConfig()
    updates = {}
    for key in ("vocab", "k", "ansatz", "init_mode", "shots", "scorer",
                "alpha", "beta", "gamma", "p0", "reg_lambda", "reg_form",
                "seed", "sample_method"):
        if key in run:
            updates[key] = run[key]
    if "bias_target" in run:
        updates["bias_target"] = _tokens_value(run["bias_target"])
    if "ref_molecule" in run:
        updates["ref_molecule"] = _tokens_value(run["ref_molecule"])
    opt = dict(data.get("optimizer", {}))
    spsa_kw = data.get("optimizer.spsa", {})
    imfil_kw = data.get("optimizer.imfil", {})
    if opt or spsa_kw or imfil_kw:
        base = cfg.optimizer
        method = opt.get("method", base.method)
        updates["optimizer"] = OptimizerConfig(
            method=method,
            max_iterations=opt.get("max_iterations", base.max_iterations),
            convergence_eps=opt.get("convergence_eps", base.convergence_eps),
            convergence_window=opt.get("convergence_window",
                                       base.convergence_window),
            spsa=SpsaConfig(**spsa_kw) if spsa_kw else base.spsa,
            imfil=ImfilConfig(**imfil_kw) if imfil_kw else base.imfil,
        )
    unknown = set(run) - {"vocab", "k", "ansatz", "init_mode", "shots",
                          "scorer", "alpha", "beta", "gamma", "p0",
                          "reg_lambda", "reg_form", "seed", "sample_method",
                          "bias_target", "ref_molecule"}
    if unknown:
        raise ConfigError(f"unknown run keys: {sorted(unknown)}")
    try:
        cfg = dataclasses.replace(cfg, **updates)
    except TypeError as err:
        raise ConfigError(str(err)) from None
    cfg.validate()
    return cfg


def load_run_config(path: str) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return run_config_from_dict(parse_toml_subset(fh.read()))
