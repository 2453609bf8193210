"""ramwalk: exact non-backtracking walk mixing analysis on regular graphs.

Builds explicit d-regular graphs (including arithmetic Cayley expanders),
computes non-backtracking walk distributions exactly through Chebyshev-type
integer recurrences, and checks total-variation mixing, variance, spectral
density, and distance-tail inequalities numerically at desk scale.
"""

from ._kernels import HAVE_EXTENSION, IMPLEMENTATION

__version__ = "0.1.0"

__all__ = ["HAVE_EXTENSION", "IMPLEMENTATION", "__version__"]
