"""Python access to the hypertrace core: Lorentz-group decompositions,
K-Bessel values, the transform pair, cycle invariants and lattice orbits."""

from ._hypertrace import *  # noqa: F401,F403
from ._hypertrace import __version__  # noqa: F401
