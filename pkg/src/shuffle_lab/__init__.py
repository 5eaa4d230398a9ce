"""shuffle_lab: exact symmetric-function algebra and labeled lattice paths.

Modules
-------
qtring     exact arithmetic in Q(q, t)
symfunc    symmetric functions over Q(q, t) in the classical bases
macdonald  modified Macdonald polynomials and their eigenoperators
ehall      the operators Q_{m,n} and the functions e_{m,n}, p_{m,n}
paths      decorated rectangular paths, their statistics and bijections
verify     identity checks that compare symmetric-function and path sides
cli        the ``shuffle-lab`` command line
"""

from __future__ import annotations

__version__ = "0.1.0"

__all__ = ["__version__", "qtring", "symfunc", "macdonald", "ehall", "paths", "verify"]


def __getattr__(name):
    # Submodules are imported lazily so that ``import shuffle_lab`` stays cheap.
    if name in __all__[1:]:
        import importlib

        return importlib.import_module(f"{__name__}.{name}")
    raise AttributeError(name)
