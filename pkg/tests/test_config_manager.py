# Copyright (c) 2024-2026 The tdrefine developers.
# tdrefine is open-source software under the MIT license (see LICENSE).

import os
import configparser
import pytest

import tdrefine
import tdrefine.utils as u
import tdrefine.config_manager as cm


def test_help_seed(capsys, mock_init):
    cm.help("seed")
    captured = capsys.readouterr()
    assert captured.out == """
The 'seed' parameter sets the default seed of the random graph generators.
The TDREFINE_SEED environment variable overrides both this value and
the --seed command-line argument.

The current seed is 0.\n"""


def test_help_oracle_max_vertices(capsys, mock_init):
    cm.help("oracle_max_vertices")
    captured = capsys.readouterr()
    assert captured.out == """
The 'oracle_max_vertices' parameter caps the number of vertices accepted by the exact
(exponential-time) oracle routines.  Larger inputs are refused rather
than approximated.

The current cap is 18 vertices.\n"""


def test_help_workers(capsys, mock_init):
    cm.help("workers")
    captured = capsys.readouterr()
    assert captured.out == """
The 'workers' parameter sets the number of worker processes used by
'tdrefine bench'.

The current number of workers is 1.\n"""


def test_help_home(capsys, mock_init):
    cm.help("home")
    captured = capsys.readouterr()
    assert captured.out == f"""
The 'home' parameter sets the home directory for tdrefine stats and
benchmark outputs.

The current directory is '{u.HOME}'.\n"""


def test_help_raise(mock_init):
    # Note that match only matches until the linebreak character.
    with pytest.raises(ValueError,
           match="'invalid_param' is not a valid tdrefine config parameter."):
        cm.help("invalid_param")


def test_display_all(capsys, mock_init):
    cm.display()
    captured = capsys.readouterr()
    assert captured.out == (
        "\ntdrefine configuration file:\n"
        "PARAMETER            VALUE\n"
        "-------------------  -----\n"
        "seed                 0\n"
        "oracle_max_vertices  18\n"
        "oracle_max_subsets   1000000\n"
        "heuristic            min_fill\n"
        "style                autumn\n"
        "workers              1\n"
       f"home                 {u.HOME}\n"
       f"version              {tdrefine.__version__}\n")


def test_display_each(capsys, mock_init):
    cm.display("style")
    captured = capsys.readouterr()
    assert captured.out == "style: autumn\n"
    cm.display("heuristic")
    captured = capsys.readouterr()
    assert captured.out == "heuristic: min_fill\n"


def test_display_each_raises(mock_init):
    with pytest.raises(ValueError,
           match="'invalid_param' is not a valid tdrefine config parameter."):
        cm.display("invalid_param")


def test_get(mock_init):
    assert cm.get("seed") == "0"
    assert cm.get("oracle_max_subsets") == "1000000"
    assert cm.get("home") == u.HOME


def test_get_raise(mock_init):
    with pytest.raises(ValueError,
           match="'invalid_param' is not a valid tdrefine config parameter."):
        cm.get("invalid_param")


def test_set_style(capsys, mock_init):
    cm.set("style", "fruity")
    assert cm.get("style") == "fruity"
    assert capsys.readouterr().out == "style updated to: fruity.\n"


def test_set_style_raises(mock_init):
    with pytest.raises(ValueError, match="'invalid' is not a valid style option."):
        cm.set("style", "invalid")


def test_set_heuristic(mock_init):
    cm.set("heuristic", "min_degree")
    assert cm.get("heuristic") == "min_degree"
    with pytest.raises(ValueError, match="'greedy' is not a valid heuristic."):
        cm.set("heuristic", "greedy")


@pytest.mark.parametrize('key, value',
    [('seed', '42'), ('oracle_max_vertices', '12'),
     ('oracle_max_subsets', '5000'), ('workers', '4')])
def test_set_integers(mock_init, key, value):
    cm.set(key, value)
    assert cm.get(key) == value


@pytest.mark.parametrize('key, value, lower',
    [('seed', '-1', 0), ('oracle_max_vertices', '0', 1),
     ('workers', 'two', 1), ('oracle_max_subsets', '1.5', 1)])
def test_set_integers_raises(mock_init, key, value, lower):
    with pytest.raises(ValueError,
            match=f"The {key} value must be an integer >= {lower}."):
        cm.set(key, value)


def test_set_version_raises(mock_init):
    with pytest.raises(ValueError, match="The version value is managed by"):
        cm.set("version", "9.9.9")


def test_set_home_success(tmp_path, mock_init):
    new_home = f"{tmp_path}/tdrefine"
    cm.set("home", new_home)
    assert cm.get("home") == new_home + "/"
    assert os.path.isdir(new_home)
    assert u.TD_STATS() == new_home + "/stats.jsonl"


def test_set_home_no_parent(mock_init):
    with pytest.raises(ValueError,
            match="The home value must have an existing parent folder"):
        cm.set("home", "fake_parent/some_dir")


def test_set_home_file_extension(mock_init):
    with pytest.raises(ValueError,
            match="The home value cannot have a file extension"):
        cm.set("home", "./some_file.jsonl")


def test_set_raises(mock_init):
    with pytest.raises(ValueError,
           match="'invalid_param' is not a valid tdrefine config parameter."):
        cm.set("invalid_param", "value")


def test_update_default(mock_init):
    cm.update_keys()
    config = configparser.ConfigParser()
    config.read(u.HOME + "config")
    rconfig = configparser.ConfigParser()
    rconfig.read(u.ROOT + "config")
    assert config.options("TDREFINE") == rconfig.options("TDREFINE")
    assert config.get("TDREFINE", "home") == u.HOME


def test_update_edited(mock_init):
    cm.set("workers", "3")
    cm.update_keys()
    assert cm.get("workers") == "3"


def test_init_reset(mock_init):
    cm.set("workers", "3")
    cm.init(reset=True)
    assert cm.get("workers") == "1"


def test_check_version_upgrade(mock_init):
    config = configparser.ConfigParser()
    config.read(u.HOME + "config")
    config.set("TDREFINE", "version", "0.0.1")
    with open(u.HOME + "config", "w") as f:
        config.write(f)
    cm.check_version()
    assert cm.get("version") == tdrefine.__version__


def test_check_version_newer_config(mock_init):
    config = configparser.ConfigParser()
    config.read(u.HOME + "config")
    config.set("TDREFINE", "version", "99.0.0")
    with open(u.HOME + "config", "w") as f:
        config.write(f)
    with pytest.raises(ValueError,
            match=r"tdrefine version \(.*\) is older than the saved config"):
        cm.check_version()
