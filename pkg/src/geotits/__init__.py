"""geotits: exact verification of Solomon-Tits style theorems for finite
collections of geodesic subspaces in Euclidean, hyperbolic and spherical
geometry."""

__version__ = "0.1.0"

from geotits._kernel import BACKEND as kernel_backend  # noqa: F401
