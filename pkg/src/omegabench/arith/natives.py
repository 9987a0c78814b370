"""Machine primitives that quote provability statements.

These back the frozen descriptor ids F_DIAG, F_PR_CODE, F_CON_INST,
F_LRF_INST and F_URF_INST, so coded formulas can compute codes of other
formulas about themselves.  Every function is total on naturals and returns
0 on malformed input.  Presentation codes follow the slot convention of
provability.py: the decoded formula's free variables must be a subset of
{"z", "v"}.  (The lim35 shape native lives with the ordinal notations.)
"""
from __future__ import annotations

from ..errors import MalformedCodeError
from ..syntax import ast as A
from ..syntax import coding as C
from ..syntax import descriptors as D
from . import provability as P

DIAG_VAR = "u"          # the self slot closed by diagonalization


def diag(c: int) -> int:
    """Code of the formula at c with the numeral of c substituted for u."""
    try:
        phi = C.decode_formula(c)
    except MalformedCodeError:
        return 0
    return C.encode(A.sb(phi, [DIAG_VAR], [A.num(c)]))


def _presentation(a: int) -> A.Formula | None:
    try:
        phi = C.decode_formula(a)
    except MalformedCodeError:
        return None
    if not A.free_vars(phi) <= {P.VAR_STAGE, P.VAR_AXIOM}:
        return None
    return phi


def pr_code(a: int, tz: int, tx: int) -> int:
    """Code of Pr_alpha(stage, target) for term codes tz, tx."""
    alpha = _presentation(a)
    if alpha is None:
        return 0
    try:
        stage = C.decode_term(tz)
        target = C.decode_term(tx)
    except MalformedCodeError:
        return 0
    return C.encode(P.pr_instance(alpha, target, stage))


def con_inst(a: int, z: int) -> int:
    """Code of ~ Pr_alpha(z-bar, code of falsum)."""
    alpha = _presentation(a)
    if alpha is None:
        return 0
    return C.encode(P.con_instance(alpha, z))


def lrf_inst(a: int, z: int, f: int) -> int:
    """Code of the local reflection instance at stage z for the sentence f."""
    alpha = _presentation(a)
    if alpha is None:
        return 0
    try:
        phi = C.decode_formula(f)
    except MalformedCodeError:
        return 0
    if A.free_vars(phi):
        return 0
    return C.encode(P.lrf_instance(alpha, z, phi))


def urf_inst(a: int, z: int, f: int, x: int) -> int:
    """Code of the uniform reflection instance at stage z.

    f codes phi(x); x codes the variable term being generalized.
    """
    alpha = _presentation(a)
    if alpha is None:
        return 0
    try:
        phi = C.decode_formula(f)
        xt = C.decode_term(x)
    except MalformedCodeError:
        return 0
    if not isinstance(xt, A.Var) or A.free_vars(phi) - {xt.name}:
        return 0
    return C.encode(P.urf_instance(alpha, z, phi, xt.name))


D.register_native("diag", 1, diag)
D.register_native("pr_code", 3, pr_code)
D.register_native("con_inst", 2, con_inst)
D.register_native("lrf_inst", 3, lrf_inst)
D.register_native("urf_inst", 4, urf_inst)
