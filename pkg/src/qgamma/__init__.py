"""qgamma: quantum cohomology of Fano families with certified numerics.

Builds small quantum-cohomology data for concrete families (projective
spaces, products, hypersurfaces, Grassmannians, toric mirrors) and checks the
asymptotic-class, mirror-identity, and pairing/mutation statements attached to
them, exactly where possible and with controlled precision otherwise.
"""

__version__ = "0.1.0"

from .scalars import ConstantTable, make_constants, working_context

__all__ = [
    "ConstantTable",
    "make_constants",
    "working_context",
    "__version__",
]
