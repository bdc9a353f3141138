# tests for configuration loading and validation


# ruff and mypy per file settings
#
# empty lines
# ruff: noqa: E302, E303
# naming conventions
# ruff: noqa: N801, N802, N803, N806, N812, N813, N815, N816, N818, N999


import pytest

from utils_Colombeau.utils_CGF_classes import ErrorConfig
from utils_Colombeau.utils_CGF_config import ExperimentConfig, config_from_dict, load_config, provenance
from utils_Colombeau.version import __version__



def test_defaults():
    config = config_from_dict({})
    assert config == ExperimentConfig()
    assert config.scale_fn().tag == "log"
    assert config.mollifier_obj().tag == "bump"
    assert len(config.eps.grid()) == 21
    assert config.grid.grid().shape == (1024,)
    assert config.hs.s0 == 1.5

def test_lists_become_tuples():
    config = config_from_dict({
        "val": {"nets": ["eps^2", "log"]},
        "wf": {"base_points": [[0.0], [0.5]], "dist": {"type": "heaviside", "x0": 0.25}},
    })
    assert config.val.nets == ("eps^2", "log")
    assert config.wf.base_points == ((0.0,), (0.5,))
    assert config.wf.dist == {"type": "heaviside", "x0": 0.25}

def test_numbers_widen():
    config = config_from_dict({"hs": {"T": 3}, "bichar": {"tau0": None, "t_span": [0, 2]}})
    assert isinstance(config.hs.T, float)
    assert config.hs.T == 3.0
    assert config.bichar.tau0 is None
    assert config.bichar.t_span == (0.0, 2.0)
    assert config_from_dict({"bichar": {"tau0": -1}}).bichar.tau0 == -1.0

def test_symbol_tags():
    for tag in ("xi", "multiplier:i*xi", "japanese:2", "scaled-japanese:log:1", "transport:tau+theta*xi"):
        assert config_from_dict({"symbol": {"symbol": tag}}).symbol.symbol == tag

def test_provenance():
    meta = provenance(config_from_dict({"jobs": 2}))
    assert meta["version"] == __version__
    assert meta["config"]["jobs"] == 2
    assert meta["config"]["eps"] == {"eps0": 0.0625, "ratio": 0.5, "count": 21}


@pytest.mark.parametrize(("data", "message"), [
    ({"foo": 1}, "'foo'"),
    ({"wf": {"foo": 1}}, "'wf.foo'"),
    ({"wf": {"input": "file"}}, "wf.input"),
    ({"bichar": {"coefficient": "sine"}}, "bichar.coefficient"),
    ({"prop": {"coefficient": "sine"}}, "prop.coefficient"),
    ({"jobs": 0}, "jobs"),
    ({"hs": 3}, "'hs'"),
    ({"hs": {"nx": "many"}}, "hs.nx"),
    ({"hs": {"upwind": 1}}, "hs.upwind"),
    ({"jobs": 2.5}, "jobs"),
    ({"bichar": {"t_span": [0.0]}}, "bichar.t_span"),
    ({"grid": {"counts": [1024.5]}}, "grid.counts[0]"),
    ({"wf": {"dist": "delta"}}, "wf.dist"),
])
def test_rejects(data, message):
    with pytest.raises(ErrorConfig) as excinfo:
        config_from_dict(data)
    assert message in str(excinfo.value)

@pytest.mark.parametrize("data", [
    {"scale": "sqrt"},
    {"mollifier": "gauss"},
    {"symbol": {"c": "pow:-1"}},
    {"symbol": {"symbol": "nope"}},
    {"symbol": {"symbol": "japanese:m"}},
    {"hs": {"inclusion_scale": "cubic"}},
    {"eps": {"ratio": 1.5}},
    {"grid": {"counts": [16]}},
    {"wf": {"dist": {"type": "dirac"}}},
])
def test_rejects_tags_and_grids(data):
    with pytest.raises(ErrorConfig):
        config_from_dict(data)


def test_load_config(write_config, tmp_path):
    config = load_config(write_config({"scale": "log+1"}))
    assert config.scale == "log+1"
    assert config.out == str(tmp_path / "out")

def test_load_config_errors(tmp_path):
    with pytest.raises(ErrorConfig):
        load_config(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{scale: log", encoding="utf-8")
    with pytest.raises(ErrorConfig):
        load_config(broken)
    array = tmp_path / "array.json"
    array.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(ErrorConfig):
        load_config(array)
