"""debyekit: certified large-order asymptotics for Hankel and Bessel
functions.

The toolkit generates the Debye coefficient families exactly, evaluates the
truncated large-order expansions with rigorous computable error bounds in
every phase sector, cross-checks everything against independent quadrature
oracles, and implements terminant-based exponentially improved expansions
with erf Stokes smoothing. A command line front end exposes the lot.
"""

from .precision import (
    PrecisionContext,
    default_context,
    CpxHP,
    RealHP,
    DebyekitError,
    PoleError,
    BranchAmbiguityError,
    QuadratureError,
    SectorError,
)

__version__ = "0.1.0"

__all__ = [
    "PrecisionContext",
    "default_context",
    "CpxHP",
    "RealHP",
    "DebyekitError",
    "PoleError",
    "BranchAmbiguityError",
    "QuadratureError",
    "SectorError",
    "__version__",
]
