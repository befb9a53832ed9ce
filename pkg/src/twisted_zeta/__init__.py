"""Exact Reidemeister and Nielsen-type zeta functions.

Covers endomorphisms of finitely generated abelian groups, multiplication
maps on ``Z[1/S]`` with their rational-or-boundary dichotomy, finite
dynamical systems, and brute-force oracles on finite groups.
"""

__version__ = "0.1.0"

from ._limits import BitLimitExceeded
from .congruence import gauss_check, orbit_counts, realizable
from .fgab import (
    FgAbEndo,
    FgAbGroup,
    NonHyperbolicError,
    eventual_image,
    lefschetz_zeta,
    nilpotent_radical_quotient,
    reidemeister_number,
    reidemeister_sequence,
    reidemeister_zeta,
    sigma_r_p,
    torsion_tau,
    verify_functional_equation,
)
from .grouporacle import (
    AbelianCharEndo,
    FiniteGroupEndo,
    MalformedGroupError,
    tbft_check,
    twisted_classes,
)
from .orbitzeta import (
    FiniteMap,
    orbit_decomposition,
    periodic_product_formula,
    zeta_from_orbits,
)
from .solenoid import (
    SolenoidSpec,
    boundary_expansion,
    classify,
    lte_valuation,
    periodic_count,
    zeta_series,
)
from .zetaform import INFINITE, ZetaUndefined

__all__ = [
    "INFINITE",
    "AbelianCharEndo",
    "BitLimitExceeded",
    "FgAbEndo",
    "FgAbGroup",
    "FiniteGroupEndo",
    "FiniteMap",
    "MalformedGroupError",
    "NonHyperbolicError",
    "SolenoidSpec",
    "ZetaUndefined",
    "boundary_expansion",
    "classify",
    "eventual_image",
    "gauss_check",
    "lefschetz_zeta",
    "lte_valuation",
    "nilpotent_radical_quotient",
    "orbit_counts",
    "orbit_decomposition",
    "periodic_count",
    "periodic_product_formula",
    "realizable",
    "reidemeister_number",
    "reidemeister_sequence",
    "reidemeister_zeta",
    "sigma_r_p",
    "tbft_check",
    "torsion_tau",
    "twisted_classes",
    "verify_functional_equation",
    "zeta_from_orbits",
    "zeta_series",
]
