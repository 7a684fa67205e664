# -*- coding: utf-8 -*-
#
# Sphinx configuration for the Nagata API documentation.

import os
import sys

sys.path.insert(0, os.path.abspath('../../'))

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.viewcode',
              'sphinx.ext.napoleon']

master_doc = 'index'
exclude_patterns = []

project = 'Nagata'
copyright = '2026, the Nagata developers'
author = 'the Nagata developers'
version = '0.0.1'
release = '0.0.1'

pygments_style = 'sphinx'
html_theme = 'sphinx_rtd_theme'
htmlhelp_basename = 'Nagatadoc'

# docstrings are written in the numpy style
napoleon_google_docstring = False
napoleon_numpy_docstring = True
napoleon_use_param = True
napoleon_use_rtype = True
autodoc_member_order = "bysource"
