"""Truncated and photon-added coherent states of a single bosonic mode.

Fock-space numerics for upper/lower truncated coherent states, (deformed)
photon-added coherent states, their nonclassicality diagnostics, the
beam-splitter entanglement potential and the atom-field generation protocol.
"""

from fockbench.fock import FockVector, DeformParam
from fockbench import special, fock, states, metrics, beamsplitter, jc

__all__ = [
    "FockVector",
    "DeformParam",
    "special",
    "fock",
    "states",
    "metrics",
    "beamsplitter",
    "jc",
]

__version__ = "0.1.0"
