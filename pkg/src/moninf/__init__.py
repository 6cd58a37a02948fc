"""Exact calculator for the Jordan form of the monodromy at infinity.

The package computes, in exact arithmetic, the complex algebraic monodromy
at infinity of a (*)-polynomial from its degree, the dimension, the local
singularity data of the hypersurface at infinity, and the equivariant
defects, together with independent consistency checks.
"""

from __future__ import annotations

__version__ = "0.1.0"
