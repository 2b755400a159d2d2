"""Config file parsing and preset construction."""

import pytest

from qevo.config import load_run_config, parse_toml_subset, run_config_from_dict
from qevo.errors import ConfigError
from qevo.presets import PRESET_NAMES, REFERENCE_40TOK, get_preset


def test_parse_sections_and_values():
    text = """
# comment
[run]
preset = "plogp_k6"
seed = 7
shots = 2048
reg_lambda = 0.5
sample_method = "auto"

[optimizer]
method = "imfil"
max_iterations = 10

[optimizer.imfil]
initial_scale = 0.8
scale_decay = 0.5
min_scale = 0.05
"""
    data = parse_toml_subset(text)
    assert data["run"]["preset"] == "plogp_k6"
    assert data["run"]["seed"] == 7
    assert data["optimizer.imfil"]["initial_scale"] == 0.8
    cfg = run_config_from_dict(data)
    assert cfg.shots == 2048
    assert cfg.seed == 7
    assert cfg.reg_lambda == 0.5
    assert cfg.optimizer.max_iterations == 10
    assert cfg.optimizer.imfil.initial_scale == 0.8


def test_arrays_and_booleans():
    data = parse_toml_subset('x = [1, 2, 3]\nflag = true\nname = "abc"')
    assert data[""]["x"] == [1, 2, 3]
    assert data[""]["flag"] is True
    assert data[""]["name"] == "abc"


def test_bad_lines_raise():
    with pytest.raises(ConfigError):
        parse_toml_subset("just words")
    with pytest.raises(ConfigError):
        parse_toml_subset("[section\nx = 1")
    with pytest.raises(ConfigError):
        parse_toml_subset("x = @@")


def test_unknown_keys_rejected():
    with pytest.raises(ConfigError):
        run_config_from_dict({"run": {"temperature": 300}})


def test_load_file_round_trip(tmp_path):
    path = tmp_path / "run.toml"
    path.write_text('[run]\npreset = "plogp_k7"\nseed = 3\n')
    cfg = load_run_config(str(path))
    assert cfg.k == 7
    assert cfg.seed == 3
    assert cfg.preset == "plogp_k7"


def test_all_presets_construct_and_validate():
    for name in PRESET_NAMES:
        cfg = get_preset(name, seed=1)
        cfg.validate()
        assert cfg.preset == name
    with pytest.raises(KeyError):
        get_preset("plogp_k12")


def test_jak2_presets_shape():
    cfg = get_preset("jak2_40tok_biased")
    assert cfg.vocab == "table_2_4"
    assert cfg.k == 40
    assert cfg.shots == 10240
    assert cfg.gamma == 2.0
    assert cfg.optimizer.method == "spsa"
    assert cfg.optimizer.spsa.resamplings == 50
    assert cfg.bias_target == REFERENCE_40TOK
    assert cfg.p0 == 0.0
    unbiased = get_preset("jak2_40tok_unbiased")
    assert unbiased.init_mode == "uniform"
    assert unbiased.ref_molecule == REFERENCE_40TOK


def test_reference_molecule_decodes():
    from qevo.decoder import decode_molecule
    g = decode_molecule(list(REFERENCE_40TOK))
    assert g.valid
    assert g.num_atoms >= 15


def test_biased_preset_pins_target_exactly():
    from qevo.codec import TABLE_2_4, encode_tokens
    from qevo.sampler import AnsatzSpec, biased_init, sample
    cfg = get_preset("jak2_40tok_biased")
    bits = encode_tokens(list(cfg.bias_target), TABLE_2_4)
    spec = AnsatzSpec(cfg.ansatz, len(bits))
    hist = sample(spec, biased_init(spec, bits), shots=64, rng_seed=0)
    assert hist.counts == {bits: 64}
