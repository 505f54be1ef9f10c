# Copyright (c) 2024-2026 The tdrefine developers.
# tdrefine is open-source software under the MIT license (see LICENSE).

__all__ = [
    'help',
    'display',
    'get',
    'set',
    'update_keys',
    'init',
    'check_version',
]

import os
import configparser
import textwrap
import pathlib
from packaging import version

from pygments.styles import STYLE_MAP

from .. import utils as u
from ..version import __version__


styles = textwrap.fill(
    ", ".join(style for style in iter(STYLE_MAP)),
    width=79,
    initial_indent="  ",
    subsequent_indent="  ")

heuristics = ['min_fill', 'min_degree']

# Keys that must hold non-negative integers, and their lower bounds:
integer_keys = {
    'seed': 0,
    'oracle_max_vertices': 1,
    'oracle_max_subsets': 1,
    'workers': 1,
}


def help(key):
    """
    Display help information.

    Parameters
    ----------
    key: String
        A tdrefine config parameter.
    """
    seed_text = (
        f"\nThe '{key}' parameter sets the default seed of the random graph "
        "generators.\nThe TDREFINE_SEED environment variable overrides both "
        "this value and\nthe --seed command-line argument.\n\n"
        f"The current seed is {get(key)}.")

    vertices_text = (
        f"\nThe '{key}' parameter caps the number of vertices accepted by "
        "the exact\n(exponential-time) oracle routines.  Larger inputs are "
        "refused rather\nthan approximated.\n\n"
        f"The current cap is {get(key)} vertices.")

    subsets_text = (
        f"\nThe '{key}' parameter caps the number of subsets enumerated by "
        "the\nbrute-force oracle routines.\n\n"
        f"The current cap is {get(key)} subsets.")

    heuristic_text = (
        f"\nThe '{key}' parameter sets the elimination heuristic used to "
        "build an\ninput tree-decomposition when none is given.  Available "
        f"options are:\n  {', '.join(heuristics)}\n\n"
        f"The current heuristic is '{get(key)}'.")

    style_text = (
        f"\nThe '{key}' parameter sets the color-syntax style of displayed "
        "reports.\nThe default style is 'autumn'.  Available options "
        f"are:\n{styles}\n\nThe current style is '{get(key)}'.")

    workers_text = (
        f"\nThe '{key}' parameter sets the number of worker processes used "
        "by\n'tdrefine bench'.\n\n"
        f"The current number of workers is {get(key)}.")

    home_text = (
        f"\nThe '{key}' parameter sets the home directory for tdrefine "
        "stats and\nbenchmark outputs.\n\n"
        f"The current directory is '{get(key)}'.")

    version_text = (
        f"\nThe '{key}' parameter records the tdrefine version that last "
        f"wrote\nthe config file.\n\nThe current value is '{get(key)}'.")

    if key == 'seed':
        print(seed_text)
    elif key == 'oracle_max_vertices':
        print(vertices_text)
    elif key == 'oracle_max_subsets':
        print(subsets_text)
    elif key == 'heuristic':
        print(heuristic_text)
    elif key == 'style':
        print(style_text)
    elif key == 'workers':
        print(workers_text)
    elif key == 'home':
        print(home_text)
    elif key == 'version':
        print(version_text)
    else:
        # Call get() to trigger exception:
        get(key)


def display(key=None):
    """
    Display the value(s) of the tdrefine config file on the prompt.

    Parameters
    ----------
    key: String
        tdrefine config parameter to display.  Leave as None to display
        the values from all parameters.

    Examples
    --------
    >>> import tdrefine.config_manager as cm
    >>> # Show all parameters and values:
    >>> cm.display()
    tdrefine configuration file:
    PARAMETER            VALUE
    -------------------  -----
    seed                 0
    oracle_max_vertices  18
    oracle_max_subsets   1000000
    heuristic            min_fill
    style                autumn
    workers              1
    home                 /home/user/.tdrefine/
    version              0.3.0

    >>> # Show an specific parameter:
    >>> cm.display('workers')
    workers: 1
    """
    if key is not None:
        print(f"{key}: {get(key)}")
    else:
        config = configparser.ConfigParser()
        config.read(u.HOME + 'config')
        print("\ntdrefine configuration file:"
              "\nPARAMETER            VALUE"
              "\n-------------------  -----")
        for key, value in config['TDREFINE'].items():
            print(f"{key:19}  {value}")


def get(key):
    """
    Get the value of a parameter in the tdrefine config file.

    Parameters
    ----------
    key: String
        The requested parameter name.

    Returns
    -------
    value: String
        Value of the requested parameter.

    Examples
    --------
    >>> import tdrefine.config_manager as cm
    >>> cm.get('style')
    'autumn'
    >>> cm.get('oracle_max_vertices')
    '18'
    """
    config = configparser.ConfigParser()
    config.read(u.HOME + 'config')

    if not config.has_option('TDREFINE', key):
        rconfig = configparser.ConfigParser()
        rconfig.read(u.ROOT+'config')
        raise ValueError(
            f"'{key}' is not a valid tdrefine config parameter.\n"
            f"The available parameters are:\n  {rconfig.options('TDREFINE')}")
    return config.get('TDREFINE', key)


def set(key, value):
    """
    Set the value of a tdrefine config parameter.

    Parameters
    ----------
    key: String
        tdrefine config parameter to set.
    value: String
        Value to set for input parameter.

    Examples
    --------
    >>> import tdrefine.config_manager as cm
    >>> cm.set('workers', '4')
    workers updated to: 4.

    >>> # Invalid tdrefine parameter:
    >>> cm.set('styles', 'arduino')
    ValueError: 'styles' is not a valid tdrefine config parameter.
    The available parameters are:
      ['seed', 'oracle_max_vertices', 'oracle_max_subsets', 'heuristic',
       'style', 'workers', 'home', 'version']

    >>> # Attempt to set an invalid worker count:
    >>> cm.set('workers', '0')
    ValueError: The workers value must be an integer >= 1.
    """
    config = configparser.ConfigParser()
    config.read(u.HOME + 'config')

    # Use get on invalid key to raise an error:
    if not config.has_option('TDREFINE', key):
        get(key)

    value = str(value)
    if key == 'style' and value not in STYLE_MAP.keys():
        raise ValueError(
            f"'{value}' is not a valid style option.  "
            f"Available options are:\n{styles}")

    if key == 'heuristic' and value not in heuristics:
        raise ValueError(
            f"'{value}' is not a valid heuristic.  "
            f"Available options are: {heuristics}")

    if key in integer_keys:
        lower = integer_keys[key]
        if not value.isnumeric() or int(value) < lower:
            raise ValueError(
                f"The {key} value must be an integer >= {lower}.")

    if key == 'version':
        raise ValueError(f"The {key} value is managed by tdrefine.")

    if key == 'home':
        value = os.path.abspath(os.path.expanduser(value)) + '/'
        new_home = pathlib.Path(value)
        if not new_home.parent.is_dir():
            raise ValueError(
                f"The {key} value must have an existing parent folder")
        if new_home.suffix != '':
            raise ValueError(f"The {key} value cannot have a file extension")
        new_home.mkdir(exist_ok=True)

    # Set value if there were no exceptions raised:
    config.set('TDREFINE', key, value)
    with open(u.HOME+'config', 'w', encoding='utf-8') as configfile:
        config.write(configfile)
    print(f'{key} updated to: {value}.')


def update_keys():
    """Update config in HOME with keys from ROOT, without overwriting values."""
    config_root = configparser.ConfigParser()
    config_root.read(u.ROOT+'config')
    config_root.set('TDREFINE', 'home', u.HOME)
    # Won't complain if HOME+'config' does not exist (keep ROOT values):
    config_root.read(u.HOME+'config')
    config_root.set('TDREFINE', 'version', __version__)
    with open(u.HOME+'config', 'w', encoding='utf-8') as configfile:
        config_root.write(configfile)


def init(reset=False):
    """
    Make sure the tdrefine home folder and its config file exist.

    Parameters
    ----------
    reset: Bool
        If True, overwrite any existing config with the default values.
    """
    pathlib.Path(u.HOME).mkdir(parents=True, exist_ok=True)
    if reset:
        with u.ignored(OSError):
            os.remove(u.HOME + 'config')
    if not os.path.exists(u.HOME + 'config'):
        update_keys()


def check_version():
    """
    Compare the version that last wrote the config file against this
    package.  Older configs are upgraded in place; a config written by
    a newer tdrefine raises a ValueError.
    """
    config = configparser.ConfigParser()
    config.read(u.HOME + 'config')
    stored = config.get('TDREFINE', 'version', fallback='0.0.0')
    if version.parse(__version__) < version.parse(stored):
        raise ValueError(
            f"tdrefine version ({__version__}) is older than the saved "
            f"config ({stored}).  Please update to a version >= {stored}.")
    if version.parse(stored) < version.parse(__version__):
        update_keys()
