"""Cross-validated model assessment: folds, measures, blocked ANOVA, Tukey pairwise comparisons."""

try:
    from ._cvbench import *  # noqa: F401,F403  (installed package layout)
    from ._cvbench import CvbenchError  # noqa: F401
except ImportError:
    # Local CMake build: the extension sits on PYTHONPATH as a top-level module.
    from _cvbench import *  # noqa: F401,F403
    from _cvbench import CvbenchError  # noqa: F401

__version__ = "0.1.0"
