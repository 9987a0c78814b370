from . import axioms, checker, generate, toolkit  # noqa: F401
from .axioms import (is_ha_axiom, is_logical_axiom, is_q_axiom,
                     which_ha_axiom, which_logical_axiom)
from .checker import (HATheory, Hint, ProofObject, ProofReport, QTheory,
                      Theory, check, encode_proof, proof_from_json,
                      proof_to_json)
from .generate import prove_delta0, prove_sigma, refute_delta0
from .toolkit import ProofBuilder

__all__ = [n for n in dir() if not n.startswith("_")]
