# -*- coding: utf-8 -*-
#
# Configuration file for the Sphinx documentation builder.
#
# This file does only contain a selection of the most common options. For a
# full list see the documentation:
# http://www.sphinx-doc.org/en/master/config

import os
import sys

on_rtd = os.environ.get('READTHEDOCS', None) == 'True'
sys.path.insert(0, os.path.abspath('../..'))
import hlspy

# -- Project information -----------------------------------------------------

project = 'hlspy'
version = hlspy.__version__

# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.autosummary",
    "sphinx.ext.doctest",
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",
    "sphinx.ext.napoleon",
    "nbsphinx",
]
autosummary_generate = True
autoclass_content = 'class'
napoleon_use_admonition_for_examples = True

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'
language = None
exclude_patterns = ['**checkpoint**']
autodoc_mock_imports = ['numpy', 'scipy', 'pandas']
pygments_style = 'colorful'

# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_static_path = ['_static']
htmlhelp_basename = 'hlspydoc'

# -- Options for LaTeX output ------------------------------------------------

latex_documents = [
    (master_doc, 'hlspy.tex', 'hlspy Documentation', '', 'manual'),
]

man_pages = [
    (master_doc, 'hlspy', 'hlspy Documentation', [], 1)
]
