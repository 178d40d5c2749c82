"""Exact computations with the universal Racah algebra, the universal
additive DAHA of type (C1v, C1), and their finite-dimensional modules."""

from .catalog import ModuleSpec
from .daha import DahaRep, twist, verify_daha_relations, zeta_pullback
from .daha_modules import (
    build_E,
    build_H,
    build_O,
    classify_H,
    factor_mf_criterion,
    irr_criterion_H,
    pm_diag_criterion,
    predicted_factors,
    special_basis_witness,
)
from .engine import (
    GeneratorSet,
    brute_irreducible,
    composition_series,
    fingerprint_match,
    leonard_pair_check,
    leonard_triple_check,
    minimal_submodules,
    spin,
)
from .harness import verify_equivalences
from .linalg import MatQ, SubspaceBasis, char_poly, diagonalizability
from .racah import RacahRep, central_data, derived_relations, verify_racah_relations
from .racah_modules import build_R, c_basis_witness, diag_criterion_R, irr_criterion_R, spectrum_R
from .rational import PolyQ, Rat, format_rat, parse_rat, rat, rational_roots

__version__ = "0.1.0"
