"""Heat-equation laboratory on weighted graphs.

Discrete Laplacians and their chain-rule calculus, curvature-dimension
conditions with an explicit function catalog, relaxation functions, exact
heat semigroups, and numeric checks of Li-Yau / Harnack-type estimates.
"""

try:
    from liyau._liyau import *  # noqa: F401,F403  (installed layout)
except ImportError:  # pragma: no cover - build-tree layout
    from _liyau import *  # noqa: F401,F403

__version__ = "0.1.0"
