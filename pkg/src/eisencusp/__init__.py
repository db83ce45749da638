"""Exact weight-2 Eisenstein series on Gamma_0(DC) for squarefree D and C | D.

Submodules: :mod:`arith` (exact numbers), :mod:`characters`, :mod:`qseries`,
:mod:`cusps`, :mod:`eisenstein`, :mod:`dedekind`, :mod:`sweep` and :mod:`cli`.
"""

from ._version import __version__
from .arith import QuadExt
from .characters import QuadraticCharacter, n_psi, quad_char
from .cusps import Cusp, CuspRep, LevelShape, enumerate_cusps, level_shapes
from .dedekind import GammaElement, dedekind_sum, rademacher_phi, xi
from .eisenstein import (
    EisIndex,
    constant_term,
    constant_term_oracle,
    cuspidal_order,
    eigenvalue,
    eis_qexp,
    enumerate_H,
    order_nml,
)
from .qseries import QExpansion

__all__ = [
    "Cusp",
    "CuspRep",
    "EisIndex",
    "GammaElement",
    "LevelShape",
    "QExpansion",
    "QuadExt",
    "QuadraticCharacter",
    "constant_term",
    "constant_term_oracle",
    "cuspidal_order",
    "dedekind_sum",
    "eigenvalue",
    "eis_qexp",
    "enumerate_H",
    "enumerate_cusps",
    "level_shapes",
    "n_psi",
    "order_nml",
    "quad_char",
    "rademacher_phi",
    "xi",
]
