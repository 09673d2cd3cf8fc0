#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# heisenberg-solvability documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join('..', '..')))

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'sphinx.ext.autosummary',
    'numpydoc',
]

# autosummary tables list functions and classes only
numpydoc_show_class_members = False
autosummary_generate = True

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'heisenberg-solvability'
copyright = '2026, heisenberg-solvability contributors'
author = 'heisenberg-solvability contributors'

import heisenberg.solvability
version = heisenberg.solvability.__version__
release = version

language = 'en'
exclude_patterns = []
pygments_style = 'sphinx'

# -- Options for HTML output ----------------------------------------------

on_rtd = os.environ.get('READTHEDOCS', None) == 'True'
if not on_rtd:  # only import and set the theme if we're building docs locally
    import sphinx_rtd_theme
    html_theme = 'sphinx_rtd_theme'
    html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]

html_static_path = ['_static']
htmlhelp_basename = 'heisenberg-solvability-doc'

# -- Options for LaTeX, manual page and Texinfo output ----------------------

latex_documents = [
    (master_doc, 'heisenberg-solvability.tex', 'heisenberg-solvability Documentation',
     author, 'manual'),
]

man_pages = [
    (master_doc, 'heisenberg-solvability', 'heisenberg-solvability Documentation',
     [author], 1)
]

texinfo_documents = [
    (master_doc, 'heisenberg-solvability', 'heisenberg-solvability Documentation',
     author, 'heisenberg-solvability', 'Local solvability on the Heisenberg group.',
     'Mathematics'),
]
