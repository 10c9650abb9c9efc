"""Pseudo-Hermitian qubit toolkit: spectra, metric operators, linear response and phase maps."""

from ._pht import *  # noqa: F401,F403
from ._pht import __doc__  # noqa: F401

__version__ = "0.1.0"
