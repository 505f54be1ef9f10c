# Copyright (c) 2024-2026 The tdrefine developers.
# tdrefine is open-source software under the MIT license (see LICENSE).

__all__ = [
    # Constants:
    'HOME',
    'ROOT',
    'BOLD',
    'END',
    'BANNER',
    'SEED_VAR',
    # Pseudo-constants:
    'TD_STATS',
    'TD_BENCH',
    # Exceptions:
    'CertificateError',
    # Context managers:
    'ignored',
    'recursion_limit',
    # Functions:
    'certify',
    'to_fraction',
    'smallest',
    'get_seed',
    'warnings_format',
    'tokenizer',
    'display_tokens',
    'display_json',
]

import os
import sys
import json
from contextlib import contextmanager
from fractions import Fraction

import pygments
import pygments.styles
import prompt_toolkit
import prompt_toolkit.styles
from prompt_toolkit import print_formatted_text
from prompt_toolkit.formatted_text import PygmentsTokens
from prompt_toolkit.output.defaults import create_output
from pygments.lexers import JsonLexer
from pygments.token import Token

from .. import config_manager as cm


# Directories/files:
HOME = os.path.expanduser('~') + '/.tdrefine/'
ROOT = os.path.realpath(os.path.dirname(__file__) + '/..') + '/'

# Unicode to start/end bold-face syntax:
BOLD = '\033[1m'
END  = '\033[0m'

# A delimiter:
BANNER = "\n" + ":"*70 + "\n"

# Environment variable overriding any configured or command-line seed:
SEED_VAR = 'TDREFINE_SEED'


# Pseudo-constants:
def TD_STATS():
    """Default JSON-lines stats file"""
    return cm.get('home') + 'stats.jsonl'

def TD_BENCH():
    """Folder of benchmark outputs"""
    return cm.get('home') + 'bench/'


class CertificateError(Exception):
    """
    A proven bound or proof inequality failed at runtime.

    This signals a bug in a construction, never a user error.
    """
    def __init__(self, name, detail=''):
        self.name = name
        self.detail = detail
        message = name if detail == '' else f'{name}: {detail}'
        super().__init__(message)


@contextmanager
def ignored(*exceptions):
    """
    Context manager to ignore exceptions. Taken from here:
    https://www.youtube.com/watch?v=anrOzOapJ2E
    """
    try:
        yield
    except exceptions:
        pass


@contextmanager
def recursion_limit(limit):
    """
    Context manager to raise (never lower) the interpreter recursion
    limit while a deep recursive construction runs.
    """
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, limit))
    try:
        yield
    finally:
        sys.setrecursionlimit(old_limit)


def certify(condition, name, detail=''):
    """
    Raise a CertificateError named name unless condition holds.

    Parameters
    ----------
    condition: Bool
        The certified statement.
    name: String
        Short name of the certificate (e.g., 'slick_main width').
    detail: String
        Values that make the failure reproducible.

    Examples
    --------
    >>> import tdrefine.utils as u
    >>> u.certify(3 <= 5, 'width bound')
    >>> u.certify(7 <= 5, 'width bound', 'width 7 > 5')
    Traceback (most recent call last):
    ...
    tdrefine.utils.utils.CertificateError: width bound: width 7 > 5
    """
    if not condition:
        raise CertificateError(name, detail)


def to_fraction(value, name='value'):
    """
    Convert an int, Fraction, or string like '2/3' or '0.5' into an
    exact Fraction.

    Examples
    --------
    >>> import tdrefine.utils as u
    >>> u.to_fraction('2/3')
    Fraction(2, 3)
    >>> u.to_fraction('0.25')
    Fraction(1, 4)
    """
    if isinstance(value, float):
        value = repr(value)
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError):
        raise ValueError(f"Invalid rational number for {name}: '{value}'.")


def smallest(candidates, count):
    """Return the count smallest ids of candidates, in increasing order."""
    if count <= 0:
        return []
    return sorted(candidates)[:count]


def get_seed(seed=None):
    """
    Resolve the random seed: the TDREFINE_SEED environment variable
    wins over an explicit seed, which wins over the config value.
    """
    env_seed = os.environ.get(SEED_VAR)
    if env_seed is not None:
        if not env_seed.strip().lstrip('-').isdigit():
            raise ValueError(
                f"The {SEED_VAR} environment variable must be an integer.")
        return int(env_seed)
    if seed is not None:
        return int(seed)
    return int(cm.get('seed'))


def warnings_format(message, category, filename, lineno, file=None, line=None):
    """Custom format for warnings."""
    return f'Warning: {message}\n'


def tokenizer(attribute, value, value_token=Token.Literal.String):
    """
    Shortcut to generate formatted-text tokens for attribute-value texts.

    Parameters
    ----------
    attribute: String
        Name of the attribute.
    value: String
        The attribute's value.
    value_token: a pygments.token object
        The style for the attribute's value.

    Returns
    -------
    tokens: List of (style, text) tuples.

    Examples
    --------
    >>> import tdrefine.utils as u
    >>> u.tokenizer('width', '11')
    [(Token.Name.Attribute, 'width'),
     (Token.Punctuation, ': '),
     (Token.Literal.String, '11'),
     (Token.Text, '\n')]
    """
    if value is None or value == '':
        return []

    tokens = [
        (Token.Name.Attribute, attribute),
        (Token.Punctuation, ': '),
        (value_token, str(value)),
        (Token.Text, '\n'),
    ]
    return tokens


def display_tokens(tokens):
    """Print formatted-text tokens with the configured pygments style."""
    style = prompt_toolkit.styles.style_from_pygments_cls(
        pygments.styles.get_style_by_name(cm.get('style')))
    print_formatted_text(
        PygmentsTokens(tokens),
        end="",
        style=style,
        output=create_output(sys.stdout))


def display_json(content, header=None):
    """
    Pretty-print a JSON-serializable object with color syntax, using
    the configured pygments style.

    Parameters
    ----------
    content: Dict or List
        Object to display.
    header: String
        Optional header line, displayed after a banner.
    """
    tokens = []
    if header is not None:
        tokens += [(Token.Comment, BANNER), (Token.Text, header + '\n')]
    text = json.dumps(content, indent=2, sort_keys=True, default=str)
    tokens += list(pygments.lex(text, lexer=JsonLexer()))
    display_tokens(tokens)