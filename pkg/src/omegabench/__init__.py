"""omegabench: arithmetized proof theory workbench.

Gödel coding, a Hilbert-style checker for Heyting arithmetic, fuelled
register-free program evaluation, constructive ordinal notations, recursive
progressions of theories, and checkable codes for infinitary proofs.
"""
from __future__ import annotations

import sys

# deep codes decode through deep Python recursion
if sys.getrecursionlimit() < 40_000:
    sys.setrecursionlimit(40_000)

from . import syntax  # noqa: E402,F401
from . import machine  # noqa: E402,F401
from . import hilbert  # noqa: E402,F401

__version__ = "0.1.0"
