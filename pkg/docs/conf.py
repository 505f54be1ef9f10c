# Copyright (c) 2024-2026 The tdrefine developers.
# tdrefine is open-source software under the MIT license (see LICENSE).

# Sphinx settings, build with: sphinx-build docs docs/_build

import os
import sys
from datetime import date

sys.path.insert(0, os.path.abspath('..'))
import tdrefine


project = 'tdrefine'
author = 'The tdrefine developers'
copyright = f'2024-{date.today().year}, {author}'
version = release = tdrefine.__version__

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
]
autodoc_member_order = 'bysource'

master_doc = 'index'
exclude_patterns = ['_build']
pygments_style = 'sphinx'
html_theme = 'sphinx_rtd_theme'
