"""Exact verification engine for the level-one free-boson realization of
the quantum affine superalgebra Uq[gl(1|1)^].

Subpackages build the graded Fock modules, the Drinfeld currents and
q-vertex operators realized as normal-ordered exponentials of free-boson
modes, the two-dimensional evaluation representation with its R-matrix,
and closed-form character series; verification suites check every defining
identity mechanically in exact arithmetic at configurable truncation.
"""

from .scalars import Scalar, qint, qnum, qpow

__all__ = ["Scalar", "qint", "qnum", "qpow"]
__version__ = "0.1.0"
