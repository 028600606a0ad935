"""Sphinx configuration for isoruled documentation."""

import os
import sys
from datetime import datetime

# Add the project root to the path so autodoc can find isoruled
sys.path.insert(0, os.path.abspath(".."))

project = "isoruled"
copyright = f"{datetime.now().year}, isoruled contributors"
author = "isoruled contributors"

try:
    import isoruled

    release = isoruled.__version__
    version = ".".join(release.split(".")[:2])
except ImportError:
    release = "0.1.0"
    version = "0.1"

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.autosummary",
    "sphinx.ext.viewcode",
    "sphinx.ext.intersphinx",
    "sphinx.ext.napoleon",
    "sphinx.ext.mathjax",
]

autodoc_default_options = {
    "members": True,
    "undoc-members": True,
    "show-inheritance": True,
}

autosummary_generate = True

napoleon_google_docstring = True
napoleon_numpy_docstring = True
napoleon_include_init_with_doc = False

html_theme = "sphinx_rtd_theme"
html_theme_options = {
    "display_version": True,
}

intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable", None),
    "scipy": ("https://docs.scipy.org/doc/scipy", None),
}

htmlhelp_basename = "isoruleddoc"

exclude_patterns = ["_build", "Thumbs.db", ".DS_Store", "README.md"]

master_doc = "index"
