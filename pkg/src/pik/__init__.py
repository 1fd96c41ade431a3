"""Exact toolkit for the partial inner automorphism group of a free group.

Group arithmetic in the semidirect normal form, word and conjugacy decision
procedures, the graded Lie algebra with its presentation certificates, and
bounded-degree verification of the embedding into the IA filtration's
Johnson Lie algebra.
"""

from .words import FreeWord, cyclic_reduce, free_conjugate, invert, multiply, parse_x_word
from .endos import EndoF, apply, check_mccool_relations, chi, compose, y_gen
from .magnus import NcPoly, gamma_degree, ia_degree, johnson_image, magnus_expand
from .igroup import IElem, abelianize, act, gen_elem, iinv, imul, to_endo, word_problem
from .conj import ConjResult, SearchBudget, conjugacy, peel, twisted_conjugate
from .lie import GradedLattice, LieElem, bracket, lattice_of, lyndon_basis, witt
from .decomp import (
    PsiMap,
    RelatorSet,
    build_psi,
    build_relators,
    gr_rank_table,
    ideal_graded_piece,
    verify_psi_automorphism,
    verify_theorem_th1,
    verify_tilde_T,
)
from .ajohnson import basic_commutators_In, inner_degree_check, l1_rank, thu1_bound

__version__ = "0.1.0"

__all__ = [
    "FreeWord",
    "EndoF",
    "NcPoly",
    "IElem",
    "ConjResult",
    "SearchBudget",
    "GradedLattice",
    "LieElem",
    "PsiMap",
    "RelatorSet",
    "abelianize",
    "act",
    "apply",
    "basic_commutators_In",
    "bracket",
    "build_psi",
    "build_relators",
    "check_mccool_relations",
    "chi",
    "compose",
    "conjugacy",
    "cyclic_reduce",
    "free_conjugate",
    "gamma_degree",
    "gen_elem",
    "gr_rank_table",
    "ia_degree",
    "ideal_graded_piece",
    "iinv",
    "imul",
    "inner_degree_check",
    "invert",
    "johnson_image",
    "l1_rank",
    "lattice_of",
    "lyndon_basis",
    "magnus_expand",
    "multiply",
    "parse_x_word",
    "peel",
    "thu1_bound",
    "to_endo",
    "twisted_conjugate",
    "verify_psi_automorphism",
    "verify_theorem_th1",
    "verify_tilde_T",
    "witt",
    "word_problem",
    "y_gen",
]
