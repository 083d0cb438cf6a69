# -*- coding: utf-8 -*-
#
# Configuration file for the Sphinx documentation builder.
#
# This file does only contain a selection of the most common options. For a
# full list see the documentation:
# http://www.sphinx-doc.org/en/master/config

# -- Path setup --------------------------------------------------------------

import os
import sys
cwd = os.path.dirname(os.path.realpath(__file__))
sys.path.insert(0, os.path.abspath(cwd))
sys.path.insert(0, os.path.abspath(os.path.join(cwd, '..')))

# AutoStructify needed for getting full Sphinx features from markdown (.md) files
# https://recommonmark.readthedocs.io/en/latest/auto_structify.html
import recommonmark
from recommonmark.transform import AutoStructify

# -- Project information -----------------------------------------------------

project = u'forked-tl-toolkit'
copyright = u'2020, forked-tl-toolkit developers'
author = u'forked-tl-toolkit developers'

# The short X.Y version
version = u''
# The full version, including alpha/beta/rc tags
release = u'1.0'

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autosummary',
    'sphinx.ext.autodoc',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'sphinx.ext.napoleon',
    'recommonmark'
]

templates_path = ['_templates']
source_suffix = {
    '.rst': 'restructuredtext',
    '.md': 'markdown'
}
master_doc = 'index'
language = None
exclude_patterns = [u'_build', 'Thumbs.db', '.DS_Store']
pygments_style = 'default'

# -- Options for HTML output -------------------------------------------------

html_theme = 'alabaster'
html_static_path = []
html_sidebars = {
    '**': ['about.html', 'navigation.html', 'relations.html', 'searchbox.html']
}
htmlhelp_basename = 'forked-tl-toolkitdoc'

# -- Extension configuration -------------------------------------------------

autodoc_member_order = 'bysource'
autodoc_default_options = {
    'members': True,
    'undoc-members': True,
    'show-inheritance': True
}
napoleon_google_docstring = True
napoleon_numpy_docstring = False

def setup(app):
    app.add_config_value('recommonmark_config', {
        'enable_auto_toc_tree': False,
        'enable_math': True
    }, True)
    app.add_transform(AutoStructify)
