"""Arithmetized provability: quoted proof predicates, diagonalization, and
transfinite progressions of reflection principles."""
from . import natives                                    # registers the quoting natives
from .diagonal import Diagonal, build_nu, diagonalize, fixed_point_proof, unfolded
from .natives import DIAG_VAR
from .provability import (VAR_AXIOM, VAR_STAGE, alpha0, con_instance,
                          lrf_instance, pr_formula, pr_instance, prf_formula,
                          q_alpha0, urf_instance)
from .progression import (ProgressionFormula, StageTheory, build_progression,
                          lift_cert, reflection_instance, rho_formula,
                          stage_axiom)

__all__ = [
    "Diagonal", "DIAG_VAR", "ProgressionFormula", "StageTheory", "VAR_AXIOM",
    "VAR_STAGE", "alpha0", "build_nu", "build_progression", "con_instance",
    "diagonalize", "fixed_point_proof", "lift_cert", "lrf_instance",
    "pr_formula", "pr_instance", "prf_formula", "q_alpha0",
    "reflection_instance", "rho_formula", "stage_axiom", "unfolded",
    "urf_instance",
]
