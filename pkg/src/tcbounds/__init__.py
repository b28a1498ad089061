"""Degree bounds for tight closure, Frobenius closure, and ideal inclusion
in standard-graded rings, driven by the Froberg function, plus finite-field
linear-algebra oracles that verify the predictions empirically.
"""

from __future__ import annotations

__version__ = "0.1.0"
