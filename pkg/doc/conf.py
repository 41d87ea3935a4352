# -*- coding: utf-8 -*-
#
# eisfilm documentation build configuration file
#
# This file is execfile()d with the current directory set to its containing dir.

import sys
import os

import sphinx_bootstrap_theme

# Document the package from the source tree.
sys.path.insert(0, os.path.abspath('..'))

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.doctest',
    'sphinx.ext.todo',
    'sphinx.ext.coverage',
    'sphinx.ext.viewcode',
    'sphinx.ext.autosummary',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'eisfilm'
copyright = u'2026, The eisfilm developers'
version = '1.0'
release = '1.0'

exclude_patterns = ['_build']
pygments_style = 'sphinx'

html_theme = 'bootstrap'
html_theme_path = sphinx_bootstrap_theme.get_html_theme_path()
html_theme_options = {
    'navbar_class': "navbar navbar-inverse",
    'navbar_sidebarrel': False,
    'navbar_fixed_top': "false",
}
html_static_path = ['_static']
htmlhelp_basename = 'eisfilmdoc'

latex_elements = {}
latex_documents = [
    ('index', 'eisfilm.tex', u'eisfilm Documentation', u'The eisfilm developers', 'manual'),
]

man_pages = [
    ('index', 'eisfilm', u'eisfilm Documentation', [u'The eisfilm developers'], 1)
]

texinfo_documents = [
    (
        'index', 'eisfilm', u'eisfilm Documentation', u'The eisfilm developers', 'eisfilm',
        'Lubricant film thickness from impedance spectra.', 'Science'
    ),
]
