"""Transfinite progressions of reflection principles.

A progression is a single formula alpha(z, v) -- "v is an axiom of stage z"
-- obtained by diagonalizing a template phi(u, z, v) that mentions the
presentation u of the progression itself:

  stage 0 (and every value that is neither 2^d nor 3*5^e): the base axioms;
  stage 2^d: anything whose stage-d membership the base theory proves, plus
    the chosen reflection instances rho(d, v);
  stage 3*5^e: the base axioms, plus anything provably a member of some
    probed stage {e}(n).

The reflection flavor rho is consistency (con), local reflection (lrf), or
uniform reflection (urf).  The template is a Sigma formula, so stage
membership is recursively enumerable with the stage as a parameter.

Stage membership checking is value-driven: a candidate axiom is accepted at
a stage by rebuilding the reflection instance at the predecessor stages
reached by descending through the stage's shape (2^c steps down to c,
3*5^f probes its enumerator).  Descent budgets make the third verdict
"unknown" honest rather than a failure.
"""
from __future__ import annotations

from dataclasses import dataclass

from .. import kleene_o as O
from ..errors import StageError, UnsupportedFormula
from ..hilbert import axioms as AX
from ..hilbert import checker as CH
from ..machine import Converged, MalformedIndexError, step_eval
from ..syntax import ast as A
from ..syntax import classes as K
from ..syntax import coding as C
from ..syntax import descriptors as D
from . import diagonal as DG
from . import natives as N
from . import provability as P

Verdict = str      # "accept" | "reject" | "unknown"

KINDS = ("con", "lrf", "urf")


# --- the reflection clause rho(u, z, v) ------------------------------------------

def rho_formula(kind: str, *, u: str = N.DIAG_VAR, z: str = P.VAR_STAGE,
                v: str = P.VAR_AXIOM) -> A.Formula:
    """v is a stage-z reflection instance for the presentation coded by u."""
    ut, zt, vt = A.Var(u), A.Var(z), A.Var(v)
    if kind == "con":
        return A.Eq(vt, A.App(D.F_CON_INST, (ut, zt)))
    if kind == "lrf":
        f = A.fresh_name("f", {u, z, v})
        closed = A.Eq(A.App(D.F_SNT, (A.Var(f),)), A.Zero())
        made = A.Eq(vt, A.App(D.F_LRF_INST, (ut, zt, A.Var(f))))
        return A.Exists(f, A.And(closed, made))
    if kind == "urf":
        f = A.fresh_name("f", {u, z, v})
        x = A.fresh_name("g", {u, z, v, f})
        closed = A.Eq(
            A.App(D.F_SNT, (A.App(D.F_ALL_CODE, (A.Var(x), A.Var(f))),)),
            A.Zero())
        made = A.Eq(vt, A.App(D.F_URF_INST, (ut, zt, A.Var(f), A.Var(x))))
        return A.Exists(f, A.Exists(x, A.And(closed, made)))
    raise ValueError(f"unknown reflection kind {kind!r}")


# --- the stage template ------------------------------------------------------------

def _provable_member(base: A.Formula, u_t: A.Term, d_t: A.Term,
                     v: str, z: str) -> A.Formula:
    """Pr_base of "the numeral of v is an axiom of stage d" per u's code."""
    member = A.App(D.F_SB2, (u_t,
                             A.num(C.encode(A.Var(z))),
                             A.num(C.encode(A.Var(v))),
                             A.App(D.F_NM, (d_t,)),
                             A.App(D.F_NM, (A.Var(v),))))
    return P.pr_instance(base, member, v=v)


def _converges_to(e_t: A.Term, n_t: A.Term, d_t: A.Term,
                  avoid: set[str]) -> A.Formula:
    w = A.fresh_name("w", avoid)
    halts = A.Eq(A.App(D.F_KLEENE_T, (e_t, n_t, A.Var(w))), A.Zero())
    value = A.Eq(A.App(D.F_KLEENE_U, (e_t, n_t, A.Var(w))), d_t)
    return A.Exists(w, A.And(halts, value))


def progression_template(rho: A.Formula, *, strong: bool = False,
                         u: str = N.DIAG_VAR, z: str = P.VAR_STAGE,
                         v: str = P.VAR_AXIOM) -> A.Formula:
    """phi(u, z, v): v is an axiom of stage z of the progression coded by u.

    The strong variant verifies stage membership inside the induction-free
    base; the weak (default) variant uses the full base axioms.
    """
    ut, zt = A.Var(u), A.Var(z)
    base = P.q_alpha0(v) if strong else P.alpha0(v)

    w = A.fresh_name("w", {u, z, v})
    not_succ = A.neg(A.Eq(zt, A.App(D.F_POW2, (A.Var(w),))))
    not_lim = A.neg(A.Eq(zt, A.App(D.F_LIM35, (A.Var(w),))))
    flat = A.Or(A.Eq(zt, A.Zero()),
                K.bounded_forall(w, zt, A.And(not_succ, not_lim)))
    clause0 = A.And(flat, P.alpha0(v))

    d = A.fresh_name("d", {u, z, v})
    at_pred = A.Or(_provable_member(base, ut, A.Var(d), v, z),
                   A.sb(rho, [z], [A.Var(d)]))
    clause1 = A.Exists(d, A.And(A.Eq(zt, A.App(D.F_POW2, (A.Var(d),))),
                                at_pred))

    e = A.fresh_name("e", {u, z, v})
    n = A.fresh_name("n", {u, z, v, e})
    dd = A.fresh_name("d", {u, z, v, e, n})
    probed = A.Exists(n, A.Exists(dd, A.And(
        _converges_to(A.Var(e), A.Var(n), A.Var(dd), {u, z, v, e, n, dd}),
        _provable_member(base, ut, A.Var(dd), v, z))))
    clause2 = A.Exists(e, A.And(A.Eq(zt, A.App(D.F_LIM35, (A.Var(e),))),
                                A.Or(P.alpha0(v), probed)))

    return A.Or(clause0, A.Or(clause1, clause2))


@dataclass(frozen=True)
class ProgressionFormula:
    """A diagonalized stage-membership formula alpha(z, v) with its parts."""

    kind: str
    strong: bool
    rho: A.Formula                 # free u, z, v
    template: A.Formula            # free u, z, v
    diagonal: DG.Diagonal

    @property
    def alpha(self) -> A.Formula:  # free z, v
        return self.diagonal.delta

    @property
    def code(self) -> int:
        return self.diagonal.code


def build_progression(kind: str = "urf", *, strong: bool = False,
                      ) -> ProgressionFormula:
    if kind not in KINDS:
        raise ValueError(f"reflection kind must be one of {KINDS}")
    rho = rho_formula(kind)
    template = progression_template(rho, strong=strong)
    diag = DG.diagonalize(template, N.DIAG_VAR)
    return ProgressionFormula(kind=kind, strong=strong, rho=rho,
                              template=template, diagonal=diag)


# --- reflection instances at a stage ----------------------------------------------

def _stage_value(d) -> int:
    if isinstance(d, int):
        if d < 0:
            raise StageError("stage values are naturals")
        return d
    if isinstance(d, O.Notation):
        v = O.render(d)
        if v is None:
            raise StageError(
                "stage notation has no materializable value; formulas can "
                "only embed renderable stages")
        return v
    raise TypeError(f"stage must be an int or a Notation, got {type(d)!r}")


def reflection_instance(prog: ProgressionFormula, d, phi: A.Formula | None = None,
                        xvar: str | None = None) -> A.Formula:
    """The rho-instance the progression adds at stage 2^d.

    For con no formula is needed; lrf takes a sentence phi; urf takes phi
    with one free variable xvar (default "x").
    """
    s = _stage_value(d)
    if prog.kind == "con":
        return P.con_instance(prog.alpha, s)
    if phi is None:
        raise UnsupportedFormula(f"{prog.kind} reflection needs a formula")
    if prog.kind == "lrf":
        return P.lrf_instance(prog.alpha, s, phi)
    return P.urf_instance(prog.alpha, s, phi, xvar or "x")


# --- stage membership recognition ---------------------------------------------------

def _shape(m):
    """(kind, payload) of a stage given as a value or a notation."""
    if isinstance(m, int):
        if m == 0:
            return ("zero", None)
        if m & (m - 1) == 0:
            return ("succ", m.bit_length() - 1)
        if m % 3 == 0:
            q, f = m // 3, 0
            while q % 5 == 0:
                q //= 5
                f += 1
            if q == 1:
                return ("lim", f)
        return ("flat", None)
    if isinstance(m, O.Zero):
        return ("zero", None)
    if isinstance(m, O.Succ):
        return ("succ", m.pred)
    if isinstance(m, O.Lim):
        return ("lim", m)
    raise TypeError(f"stage must be an int or a Notation, got {type(m)!r}")


def _rebuilds_at(prog: ProgressionFormula, pred, psi: A.Formula) -> bool:
    """Is psi exactly the reflection instance introduced at stage 2^pred?"""
    try:
        s = _stage_value(pred)
    except StageError:
        return False
    alpha = prog.alpha
    try:
        if prog.kind == "con":
            return psi == P.con_instance(alpha, s)
        if prog.kind == "lrf":
            if not isinstance(psi, A.Imp):
                return False
            return psi == P.lrf_instance(alpha, s, psi.rhs)
        if not (isinstance(psi, A.Forall) and isinstance(psi.body, A.Imp)):
            return False
        return psi == P.urf_instance(alpha, s, psi.body.rhs, psi.var)
    except UnsupportedFormula:
        return False


def _probe_stage(f, n: int, fuel: int):
    """Stage n of a limit's enumerator: int value, Notation, or None."""
    if isinstance(f, O.Lim):
        return O.probe_notation(f, n, fuel)
    try:
        out = step_eval(f, [n], fuel)
    except MalformedIndexError:
        return None
    return out.value if isinstance(out, Converged) else None


def stage_axiom(prog: ProgressionFormula, d, psi: A.Formula, cert=None, *,
                sig: D.Signature | None = None, fuel: int = AX.DEFAULT_COMP_FUEL,
                probes: int = 8, depth: int = 32) -> Verdict:
    """Is psi an axiom of the progression's stage d?

    d is a stage value (int) or a Notation.  Base axioms are accepted at
    every stage; reflection instances are matched by rebuilding them at the
    predecessor stages reached while descending through d.  A certificate
    -- ("ha",), ("refl",), ("stage", inner), or ("limit", n, inner) --
    replaces the descent search with a deterministic walk.

    "unknown" is returned only when a probe or descent budget runs out.
    """
    sig = sig or D.DEFAULT_SIGNATURE
    if AX.which_ha_axiom(psi, sig, fuel) is not None:
        return "accept"
    if cert is not None:
        return _check_cert(prog, d, psi, cert, sig, fuel)
    return _search(prog, d, psi, fuel, probes, depth)


def _check_cert(prog, d, psi, cert, sig, fuel) -> Verdict:
    kind, payload = cert[0], cert[1:]
    if kind == "ha":
        return "reject"          # would have been accepted above
    shape, arg = _shape(d)
    if kind == "refl":
        if shape != "succ":
            return "reject"
        return "accept" if _rebuilds_at(prog, arg, psi) else "reject"
    if kind == "stage":
        if shape != "succ":
            return "reject"
        return _check_cert(prog, arg, psi, payload[0], sig, fuel)
    if kind == "limit":
        if shape != "lim":
            return "reject"
        n, inner = payload
        got = _probe_stage(arg, n, fuel)
        if got is None:
            return "unknown"
        return _check_cert(prog, got, psi, inner, sig, fuel)
    raise ValueError(f"unknown certificate kind {cert[0]!r}")


def _search(prog, d, psi, fuel, probes, depth) -> Verdict:
    if depth < 0:
        return "unknown"
    shape, arg = _shape(d)
    if shape in ("zero", "flat"):
        return "reject"
    if shape == "succ":
        if _rebuilds_at(prog, arg, psi):
            return "accept"
        return _search(prog, arg, psi, fuel, probes, depth - 1)
    saw_unknown = False
    for n in range(probes):
        got = _probe_stage(arg, n, fuel)
        if got is None:
            saw_unknown = True
            continue
        r = _search(prog, got, psi, fuel, probes, depth - 1)
        if r == "accept":
            return "accept"
        if r == "unknown":
            saw_unknown = True
    del saw_unknown  # a limit's unprobed tail always leaves membership open
    return "unknown"


def lift_cert(cert, frm: O.Notation, to: O.Notation, *,
              fuel: int = O.PROBE_FUEL, probes: int = O.PROBE_BUDGET):
    """Re-target a membership certificate from stage frm to a stage above it.

    Walks the same descent lt_O uses: each successor adds a ("stage", _)
    wrapper, each limit a ("limit", n, _) wrapper through a probe that
    dominates frm.  Raises StageError when to does not dominate frm.
    """
    if to == frm:
        return cert
    if isinstance(to, O.Succ):
        return ("stage", lift_cert(cert, frm, to.pred, fuel=fuel,
                                   probes=probes))
    if isinstance(to, O.Lim):
        for n in range(probes):
            bn = O.probe_notation(to, n, fuel)
            if bn is None:
                continue
            if O.le_O(frm, bn, fuel=fuel, probes=probes) is True:
                return ("limit", n,
                        lift_cert(cert, frm, bn, fuel=fuel, probes=probes))
        raise StageError("no probed member of the limit dominates the "
                         "source stage")
    raise StageError("target stage does not dominate the source stage")


class StageTheory(CH.Theory):
    """A progression stage as a checkable axiom set."""

    def __init__(self, prog: ProgressionFormula, stage, *,
                 sig: D.Signature | None = None,
                 fuel: int = AX.DEFAULT_COMP_FUEL,
                 probes: int = 8, depth: int = 32):
        self.prog = prog
        self.stage = stage
        self.sig = sig or D.DEFAULT_SIGNATURE
        self.fuel = fuel
        self.probes = probes
        self.depth = depth
        self.name = f"{prog.kind}-progression"

    def is_axiom(self, phi, cert=None) -> bool:
        return stage_axiom(self.prog, self.stage, phi, cert, sig=self.sig,
                           fuel=self.fuel, probes=self.probes,
                           depth=self.depth) == "accept"
