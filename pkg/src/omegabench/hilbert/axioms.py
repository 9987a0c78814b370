"""Axiom schemas: intuitionistic Hilbert logic plus two arithmetic theories.

Logical schemas are recognized hint-free by shape, with substitution terms
inferred by structural diff and then verified by actually running sb (the
verification step is what rejects capture).  The arithmetic presentation
consists of successor axioms, true closed computation instances over the
descriptor signature, bounded enumeration, induction instances, and
normal-form bridge instances that tie a formula to its matrix descriptor.
The budgeted recognizers double as the total natives ax_logical / ha_ax /
q_ax / rule_step used inside arithmetized provability formulas.
"""
from __future__ import annotations

from .. import machine as M
from ..errors import MalformedCodeError, ProofError, UnsupportedFormula
from ..syntax import ast as A
from ..syntax import classes as K
from ..syntax import coding as C
from ..syntax import descriptors as D

DEFAULT_COMP_FUEL = 200_000


# --- logical schema constructors ---------------------------------------------

def ax_k(a: A.Formula, b: A.Formula) -> A.Formula:
    return A.Imp(a, A.Imp(b, a))


def ax_s(a: A.Formula, b: A.Formula, c: A.Formula) -> A.Formula:
    return A.Imp(A.Imp(a, A.Imp(b, c)),
                 A.Imp(A.Imp(a, b), A.Imp(a, c)))


def ax_and_i(a, b):
    return A.Imp(a, A.Imp(b, A.And(a, b)))


def ax_and_e1(a, b):
    return A.Imp(A.And(a, b), a)


def ax_and_e2(a, b):
    return A.Imp(A.And(a, b), b)


def ax_or_i1(a, b):
    return A.Imp(a, A.Or(a, b))


def ax_or_i2(a, b):
    return A.Imp(b, A.Or(a, b))


def ax_or_e(a, b, c):
    return A.Imp(A.Imp(a, c), A.Imp(A.Imp(b, c), A.Imp(A.Or(a, b), c)))


def ax_efq(a):
    return A.Imp(A.Falsum(), a)


def ax_forall_inst(x: str, phi: A.Formula, t: A.Term) -> A.Formula:
    return A.Imp(A.Forall(x, phi), A.sb(phi, [x], [t]))


def ax_exists_intro(x: str, phi: A.Formula, t: A.Term) -> A.Formula:
    return A.Imp(A.sb(phi, [x], [t]), A.Exists(x, phi))


def ax_forall_shift(x: str, psi: A.Formula, phi: A.Formula) -> A.Formula:
    if x in A.free_vars(psi):
        raise ProofError(f"{x} free in the antecedent")
    return A.Imp(A.Forall(x, A.Imp(psi, phi)), A.Imp(psi, A.Forall(x, phi)))


def ax_exists_elim(x: str, phi: A.Formula, psi: A.Formula) -> A.Formula:
    if x in A.free_vars(psi):
        raise ProofError(f"{x} free in the conclusion")
    return A.Imp(A.Forall(x, A.Imp(phi, psi)), A.Imp(A.Exists(x, phi), psi))


def ax_refl(t: A.Term) -> A.Formula:
    return A.Eq(t, t)


def ax_leibniz(s: A.Term, t: A.Term, chi: A.Formula, z: str) -> A.Formula:
    return A.Imp(A.Eq(s, t),
                 A.Imp(A.sb(chi, [z], [s]), A.sb(chi, [z], [t])))


# --- inference of substitution terms ------------------------------------------

class _DiffFail(Exception):
    pass


def _diff_terms(a: A.Term, b: A.Term, x: str, shadow: frozenset, out: list):
    if isinstance(a, A.Var) and a.name == x and x not in shadow:
        out.append(b)
        return
    # substitution collapses S(k-bar) to the numeral (k+1)-bar, so let a
    # successor pattern peel one off a numeral on the instance side
    if isinstance(a, A.Succ) and isinstance(b, A.Num):
        _diff_terms(a.arg, A.num(b.n - 1), x, shadow, out)
        return
    if type(a) is not type(b):
        raise _DiffFail
    if isinstance(a, A.Var):
        if a.name != b.name:
            raise _DiffFail
    elif isinstance(a, (A.Zero, A.Num)):
        if a != b:
            raise _DiffFail
    elif isinstance(a, A.Succ):
        _diff_terms(a.arg, b.arg, x, shadow, out)
    elif isinstance(a, A.App):
        if a.fid != b.fid or len(a.args) != len(b.args):
            raise _DiffFail
        for u, v in zip(a.args, b.args):
            _diff_terms(u, v, x, shadow, out)
    else:
        raise _DiffFail


def _diff_formulas(p: A.Formula, q: A.Formula, x: str, shadow: frozenset,
                   out: list):
    if type(p) is not type(q):
        raise _DiffFail
    if isinstance(p, A.Falsum):
        return
    if isinstance(p, A.Eq):
        _diff_terms(p.lhs, q.lhs, x, shadow, out)
        _diff_terms(p.rhs, q.rhs, x, shadow, out)
        return
    if isinstance(p, (A.And, A.Or, A.Imp)):
        _diff_formulas(p.lhs, q.lhs, x, shadow, out)
        _diff_formulas(p.rhs, q.rhs, x, shadow, out)
        return
    if isinstance(p, (A.Forall, A.Exists)):
        if p.var == q.var:
            _diff_formulas(p.body, q.body, x, shadow | {p.var}, out)
            return
        # capture-avoiding substitution may have renamed the binder; align
        # both bodies on a common fresh name (alpha-insensitive descent)
        w = A.fresh_name("w", A.all_vars(p.body) | A.all_vars(q.body) | {x})
        pb = A.sb(p.body, [p.var], [A.Var(w)])
        qb = A.sb(q.body, [q.var], [A.Var(w)])
        _diff_formulas(pb, qb, x, shadow | {w}, out)
        return
    raise _DiffFail


def infer_inst_term(phi: A.Formula, x: str, inst: A.Formula) -> A.Term | None:
    """t with phi[x:=t] == inst, if one exists (verified, capture-safe)."""
    out: list[A.Term] = []
    try:
        _diff_formulas(phi, inst, x, frozenset(), out)
    except _DiffFail:
        return None
    cands = out or [A.Zero()]
    t = cands[0]
    if any(c != t for c in cands):
        return None
    return t if A.sb(phi, [x], [t]) == inst else None


# --- Leibniz anti-unification ---------------------------------------------------

def _au_terms(a: A.Term, b: A.Term, s: A.Term, t: A.Term, z: str) -> A.Term:
    if a == s and b == t:
        return A.Var(z)
    if a == b:
        return a
    # peel collapsed numerals against successor patterns on either side
    if isinstance(a, A.Succ) and isinstance(b, A.Num) and b.n >= 1:
        return A.succ(_au_terms(a.arg, A.num(b.n - 1), s, t, z))
    if isinstance(a, A.Num) and isinstance(b, A.Succ) and a.n >= 1:
        return A.succ(_au_terms(A.num(a.n - 1), b.arg, s, t, z))
    if type(a) is not type(b):
        raise _DiffFail
    if isinstance(a, A.Succ):
        return A.succ(_au_terms(a.arg, b.arg, s, t, z))
    if isinstance(a, A.App) and a.fid == b.fid and len(a.args) == len(b.args):
        return A.App(a.fid, tuple(_au_terms(u, v, s, t, z)
                                  for u, v in zip(a.args, b.args)))
    raise _DiffFail


def _au_formulas(p: A.Formula, q: A.Formula, s, t, z) -> A.Formula:
    if type(p) is not type(q):
        raise _DiffFail
    if isinstance(p, A.Falsum):
        return p
    if isinstance(p, A.Eq):
        return A.Eq(_au_terms(p.lhs, q.lhs, s, t, z),
                    _au_terms(p.rhs, q.rhs, s, t, z))
    if isinstance(p, (A.And, A.Or, A.Imp)):
        return type(p)(_au_formulas(p.lhs, q.lhs, s, t, z),
                       _au_formulas(p.rhs, q.rhs, s, t, z))
    if isinstance(p, (A.Forall, A.Exists)):
        if p.var != q.var:
            raise _DiffFail
        return type(p)(p.var, _au_formulas(p.body, q.body, s, t, z))
    raise _DiffFail


def _match_leibniz(phi: A.Formula) -> bool:
    if not (isinstance(phi, A.Imp) and isinstance(phi.lhs, A.Eq)
            and isinstance(phi.rhs, A.Imp)):
        return False
    s, t = phi.lhs.lhs, phi.lhs.rhs
    p1, p2 = phi.rhs.lhs, phi.rhs.rhs
    avoid = (A.all_vars(p1) | A.all_vars(p2)
             | A.term_vars(s) | A.term_vars(t))
    z = A.fresh_name("z", avoid)
    try:
        chi = _au_formulas(p1, p2, s, t, z)
    except _DiffFail:
        return False
    return (A.sb(chi, [z], [s]) == p1) and (A.sb(chi, [z], [t]) == p2)


# --- logical recognizer -----------------------------------------------------------

def which_logical_axiom(phi: A.Formula) -> str | None:
    if isinstance(phi, A.Eq) and phi.lhs == phi.rhs:
        return "refl"
    if not isinstance(phi, A.Imp):
        return None
    l, r = phi.lhs, phi.rhs
    if isinstance(l, A.Falsum):
        return "efq"
    if isinstance(r, A.Imp):
        # K: a -> (b -> a)
        if r.rhs == l:
            return "k"
        # AND-I: a -> (b -> a & b)
        if isinstance(r.rhs, A.And) and r.rhs.lhs == l and r.rhs.rhs == r.lhs:
            return "and-i"
        # S: (a -> (b -> c)) -> ((a -> b) -> (a -> c))
        if (isinstance(l, A.Imp) and isinstance(l.rhs, A.Imp)
                and isinstance(r.lhs, A.Imp) and isinstance(r.rhs, A.Imp)
                and l.lhs == r.lhs.lhs == r.rhs.lhs
                and l.rhs.lhs == r.lhs.rhs and l.rhs.rhs == r.rhs.rhs):
            return "s"
        # OR-E: (a -> c) -> ((b -> c) -> (a | b -> c))
        if (isinstance(l, A.Imp) and isinstance(r.lhs, A.Imp)
                and isinstance(r.rhs, A.Imp) and isinstance(r.rhs.lhs, A.Or)
                and r.rhs.lhs.lhs == l.lhs and r.rhs.lhs.rhs == r.lhs.lhs
                and l.rhs == r.lhs.rhs == r.rhs.rhs):
            return "or-e"
    if isinstance(l, A.And):
        if r == l.lhs:
            return "and-e1"
        if r == l.rhs:
            return "and-e2"
    if isinstance(r, A.Or):
        if l == r.lhs:
            return "or-i1"
        if l == r.rhs:
            return "or-i2"
    if isinstance(l, A.Forall):
        # quantifier shifts before plain instantiation: their shapes are
        # special cases of forall-inst only when the diff degenerates
        if (isinstance(l.body, A.Imp) and isinstance(r, A.Imp)
                and isinstance(r.rhs, A.Forall) and r.rhs.var == l.var
                and l.body.lhs == r.lhs and l.body.rhs == r.rhs.body
                and l.var not in A.free_vars(r.lhs)):
            return "forall-shift"
        if (isinstance(l.body, A.Imp) and isinstance(r, A.Imp)
                and isinstance(r.lhs, A.Exists) and r.lhs.var == l.var
                and l.body.lhs == r.lhs.body and l.body.rhs == r.rhs
                and l.var not in A.free_vars(r.rhs)):
            return "exists-elim"
        if infer_inst_term(l.body, l.var, r) is not None:
            return "forall-inst"
    if isinstance(r, A.Exists):
        if infer_inst_term(r.body, r.var, l) is not None:
            return "exists-intro"
    if _match_leibniz(phi):
        return "leibniz"
    return None


def is_logical_axiom(phi: A.Formula) -> bool:
    return which_logical_axiom(phi) is not None


# --- arithmetic presentation --------------------------------------------------

def succ_inj(s: A.Term, t: A.Term) -> A.Formula:
    return A.Imp(A.Eq(A.succ(s), A.succ(t)), A.Eq(s, t))


def succ_nonzero(t: A.Term) -> A.Formula:
    return A.Imp(A.Eq(A.succ(t), A.Zero()), A.Falsum())


def enumeration_axiom(n: int, var: str = "x") -> A.Formula:
    """forall x (x < n-bar  ->  x = 0 | ... | x = (n-1)-bar)."""
    x = A.Var(var)
    if n == 0:
        body = A.Falsum()
    else:
        body = A.Eq(x, A.num(n - 1))
        for k in range(n - 2, -1, -1):
            body = A.Or(A.Eq(x, A.num(k)), body)
    return A.Forall(var, A.Imp(K.lt_formula(x, A.num(n)), body))


def induction_axiom(x: str, phi: A.Formula) -> A.Formula:
    return A.Imp(A.sb(phi, [x], [A.Zero()]),
                 A.Imp(A.Forall(x, A.Imp(phi, A.sb(phi, [x], [A.succ(A.Var(x))]))),
                       A.Forall(x, phi)))


def _succ_peel(t: A.Term) -> A.Term | None:
    """u with S(u) == t, if t has successor shape."""
    if isinstance(t, A.Succ):
        return t.arg
    n = A.numeral_value(t)
    if n is not None and n >= 1:
        return A.num(n - 1)
    return None


def _is_succ_inj(phi) -> bool:
    if not (isinstance(phi, A.Imp) and isinstance(phi.lhs, A.Eq)
            and isinstance(phi.rhs, A.Eq)):
        return False
    return (phi.lhs.lhs == A.succ(phi.rhs.lhs)
            and phi.lhs.rhs == A.succ(phi.rhs.rhs))


def _is_succ_nonzero(phi) -> bool:
    return (isinstance(phi, A.Imp) and isinstance(phi.rhs, A.Falsum)
            and isinstance(phi.lhs, A.Eq) and isinstance(phi.lhs.rhs, A.Zero)
            and _succ_peel(phi.lhs.lhs) is not None)


def _is_computation_instance(phi, sig: D.Signature, fuel: int) -> bool:
    """App(fid, numerals) = numeral, true by evaluation within the budget."""
    if not (isinstance(phi, A.Eq) and isinstance(phi.lhs, A.App)):
        return False
    vals = [A.numeral_value(a) for a in phi.lhs.args]
    rhs = A.numeral_value(phi.rhs)
    if rhs is None or any(v is None for v in vals):
        return False
    try:
        prog = sig.lookup(phi.lhs.fid)
    except KeyError:
        return False
    out = M.eval_program(prog, vals, fuel)
    return isinstance(out, M.Converged) and out.value == rhs


def _is_enumeration(phi) -> bool:
    got = K.match_bounded_forall(phi)
    if not got:
        return False
    var, bound, _ = got
    n = A.numeral_value(bound)
    return n is not None and phi == enumeration_axiom(n, var)


def _is_induction(phi) -> bool:
    if not (isinstance(phi, A.Imp) and isinstance(phi.rhs, A.Imp)):
        return False
    step, concl = phi.rhs.lhs, phi.rhs.rhs
    if not (isinstance(concl, A.Forall) and isinstance(step, A.Forall)
            and step.var == concl.var and isinstance(step.body, A.Imp)):
        return False
    x, target = concl.var, concl.body
    return (step.body.lhs == target
            and step.body.rhs == A.sb(target, [x], [A.succ(A.Var(x))])
            and phi.lhs == A.sb(target, [x], [A.Zero()]))


# normal-form bridges ----------------------------------------------------------

def nf_formula(phi: A.Formula, kind: str,
               sig: D.Signature | None = None) -> A.Formula:
    """The canonical matrix form of phi: exists w F(xs,w)=0 or the forall dual.

    Deterministic given the signature: the matrix program is interned and the
    witness variable is the first fresh name over the parameters.
    """
    sig = sig or D.DEFAULT_SIGNATURE
    nf = K.normal_form(phi, sig, want=kind)
    if not nf.ha_provable:
        raise UnsupportedFormula("normal form not admissible as a bridge")
    fid = sig.intern(nf.matrix)
    w = A.fresh_name("w", set(nf.params))
    atom = A.Eq(A.App(fid, tuple(A.Var(p) for p in nf.params) + (A.Var(w),)),
                A.Zero())
    return A.Exists(w, atom) if kind == "sigma" else A.Forall(w, atom)


def bridge_axiom(phi: A.Formula, kind: str, direction: str,
                 sig: D.Signature | None = None) -> A.Formula:
    nf = nf_formula(phi, kind, sig)
    return A.Imp(phi, nf) if direction == "out" else A.Imp(nf, phi)


def _looks_like_nf(psi) -> bool:
    return (isinstance(psi, (A.Exists, A.Forall))
            and isinstance(psi.body, A.Eq)
            and isinstance(psi.body.lhs, A.App)
            and isinstance(psi.body.rhs, A.Zero)
            and all(isinstance(a, A.Var) for a in psi.body.lhs.args))


def _is_bridge(phi, sig: D.Signature) -> bool:
    if not isinstance(phi, A.Imp):
        return False
    for cand, nf_side, direction in ((phi.lhs, phi.rhs, "out"),
                                     (phi.rhs, phi.lhs, "in")):
        if not _looks_like_nf(nf_side):
            continue
        kind = "sigma" if isinstance(nf_side, A.Exists) else "pi"
        try:
            if nf_formula(cand, kind, sig) == nf_side:
                return True
        except (UnsupportedFormula, ValueError):
            continue
    return False


_HA_CLAUSES = ("succ-inj", "succ-nonzero", "computation", "enumeration",
               "induction", "bridge")


def which_ha_axiom(phi: A.Formula, sig: D.Signature | None = None,
                   fuel: int = DEFAULT_COMP_FUEL, *, with_induction=True,
                   with_bridge=True) -> str | None:
    sig = sig or D.DEFAULT_SIGNATURE
    if _is_succ_inj(phi):
        return "succ-inj"
    if _is_succ_nonzero(phi):
        return "succ-nonzero"
    if _is_computation_instance(phi, sig, fuel):
        return "computation"
    if _is_enumeration(phi):
        return "enumeration"
    if with_induction and _is_induction(phi):
        return "induction"
    if with_bridge and _is_bridge(phi, sig):
        return "bridge"
    return None


def is_ha_axiom(phi, sig=None, fuel: int = DEFAULT_COMP_FUEL) -> bool:
    return which_ha_axiom(phi, sig, fuel) is not None


def is_q_axiom(phi, sig=None, fuel: int = DEFAULT_COMP_FUEL) -> bool:
    """The induction-free, bridge-free sub-presentation."""
    return which_ha_axiom(phi, sig, fuel, with_induction=False,
                          with_bridge=False) is not None


# --- natives -------------------------------------------------------------------

def _nat_ax_logical(v: int) -> int:
    try:
        phi = C.decode_formula(v)
    except MalformedCodeError:
        return 1
    return 0 if is_logical_axiom(phi) else 1


def _nat_ha_ax(v: int, z: int) -> int:
    try:
        phi = C.decode_formula(v)
    except MalformedCodeError:
        return 1
    return 0 if is_ha_axiom(phi, fuel=z) else 1


def _nat_q_ax(v: int, z: int) -> int:
    try:
        phi = C.decode_formula(v)
    except MalformedCodeError:
        return 1
    return 0 if is_q_axiom(phi, fuel=z) else 1


def _nat_rule_step(v: int, s: int) -> int:
    """0 iff v follows from the coded line sequence s by MP or Gen."""
    items = C._seq_items(s)
    if items is None:
        return 1
    if any(C.imp_code(b, v) == a for a in items for b in items):
        return 0
    got = C.try_unpair(v)
    if got and got[0] == C.TAG_ALL:
        inner = C.try_unpair(got[1])
        if inner:
            name, body = inner
            try:
                C.name_decode(name)
            except MalformedCodeError:
                return 1
            if body in items:
                return 0
    return 1


D.register_native("ax_logical", 1, _nat_ax_logical)
D.register_native("ha_ax", 2, _nat_ha_ax)
D.register_native("q_ax", 2, _nat_q_ax)
D.register_native("rule_step", 2, _nat_rule_step)
