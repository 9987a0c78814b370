"""Provability predicates over axiom presentations.

A *presentation* is a formula with a distinguished free variable holding the
code of a candidate axiom (canonically ``v``); staged presentations (the
transfinite progressions of progression.py) additionally keep a stage slot
(canonically ``z``) free.  The proof predicate is the classical recipe on
coded line sequences:

    Prf(x, y) :=  Seq(y)
               /\ x = el(y, len(y) - 1)
               /\ forall i < len(y).
                      AxLogical(el(y, i))
                   \/ alpha[v := el(y, i)]
                   \/ Rule(el(y, i), restr(y, i))
    Pr(x)     :=  exists y. Prf(x, y)
    Con       :=  ~ Pr(code of falsum)

With a Sigma presentation alpha, Prf and Pr are Sigma (the bounded universal
quantifier stays inside Sigma) and Con is Pi.
"""
from __future__ import annotations

from ..errors import UnsupportedFormula
from ..syntax import ast as A
from ..syntax import classes as K
from ..syntax import coding as C
from ..syntax import descriptors as D

VAR_AXIOM = "v"     # candidate-axiom slot of a presentation
VAR_STAGE = "z"     # stage slot of a staged presentation

FALSUM_CODE = C.encode(A.Falsum())


def alpha0(v: str = VAR_AXIOM) -> A.Formula:
    """Base presentation of HA: some fuel certifies v as an axiom."""
    w = A.fresh_name("w", {v})
    return A.Exists(w, A.Eq(A.App(D.F_HA_AX, (A.Var(v), A.Var(w))), A.Zero()))


def q_alpha0(v: str = VAR_AXIOM) -> A.Formula:
    """Base presentation of the induction-free, bridge-free fragment."""
    w = A.fresh_name("w", {v})
    return A.Exists(w, A.Eq(A.App(D.F_Q_AX, (A.Var(v), A.Var(w))), A.Zero()))


def prf_formula(alpha: A.Formula, x: str = "x", y: str = "y", *,
                v: str = VAR_AXIOM) -> A.Formula:
    """Prf(x, y): y codes a proof of x from logic + the presentation alpha.

    x and y are left free; any other free variable of alpha (notably the
    stage slot) flows through untouched.
    """
    avoid = A.all_vars(alpha) | {x, v}
    y = A.fresh_name(y, avoid)
    i = A.fresh_name("i", avoid | {y})
    yt = A.Var(y)
    line = A.App(D.F_SEQ_EL, (yt, A.Var(i)))
    is_seq = A.Eq(A.App(D.F_SEQ_IS, (yt,)), A.Zero())
    last = A.App(D.F_SEQ_EL,
                 (yt, A.App(D.F_PRED, (A.App(D.F_SEQ_LEN, (yt,)),))))
    ends_at_x = A.Eq(A.Var(x), last)
    logical = A.Eq(A.App(D.F_AX_LOGICAL, (line,)), A.Zero())
    theory = A.sb(alpha, [v], [line])
    rule = A.Eq(A.App(D.F_RULE,
                      (line, A.App(D.F_SEQ_RESTR, (yt, A.Var(i))))),
                A.Zero())
    lines_ok = K.bounded_forall(i, A.App(D.F_SEQ_LEN, (yt,)),
                                A.Or(logical, A.Or(theory, rule)))
    return A.And(is_seq, A.And(ends_at_x, lines_ok))


def pr_formula(alpha: A.Formula, x: str = "x", *,
               v: str = VAR_AXIOM) -> A.Formula:
    """Pr(x) := exists y Prf(x, y)."""
    y = A.fresh_name("y", A.all_vars(alpha) | {x, v})
    return A.Exists(y, prf_formula(alpha, x, y, v=v))


def pr_instance(alpha: A.Formula, target: A.Term,
                stage: A.Term | None = None, *, v: str = VAR_AXIOM,
                z: str = VAR_STAGE) -> A.Formula:
    """Pr with the conclusion slot (and the stage slot, if given) filled."""
    x = A.fresh_name("x", A.all_vars(alpha) | A.term_vars(target) | {v, z})
    pr = pr_formula(alpha, x, v=v)
    names: list[str] = [x]
    terms: list[A.Term] = [target]
    if stage is not None:
        names.append(z)
        terms.append(stage)
    return A.sb(pr, names, terms)


def con_instance(alpha: A.Formula,
                 stage_value: int | None = None) -> A.Formula:
    """Con at a numeral stage: ~ Pr(stage-bar, code of falsum)."""
    stage = A.num(stage_value) if stage_value is not None else None
    return A.neg(pr_instance(alpha, A.num(FALSUM_CODE), stage))


def lrf_instance(alpha: A.Formula, stage_value: int | None,
                 phi: A.Formula) -> A.Formula:
    """Local reflection for a sentence: Pr(stage-bar, phi-bar) -> phi."""
    if A.free_vars(phi):
        raise UnsupportedFormula("local reflection needs a sentence")
    stage = A.num(stage_value) if stage_value is not None else None
    return A.Imp(pr_instance(alpha, A.num(C.encode(phi)), stage), phi)


def urf_instance(alpha: A.Formula, stage_value: int | None,
                 phi: A.Formula, xvar: str) -> A.Formula:
    """Uniform reflection: forall x (Pr(stage-bar, phi-bar(x-dot)) -> phi(x)).

    The provability target substitutes, on codes, the numeral of x for the
    variable x inside the code of phi.
    """
    if A.free_vars(phi) - {xvar}:
        raise UnsupportedFormula("uniform reflection needs phi(x) with "
                                 f"free variables within {xvar!r}")
    target = A.App(D.F_SB1, (A.num(C.encode(phi)),
                             A.num(C.encode(A.Var(xvar))),
                             A.App(D.F_NM, (A.Var(xvar),))))
    stage = A.num(stage_value) if stage_value is not None else None
    return A.Forall(xvar, A.Imp(pr_instance(alpha, target, stage), phi))
