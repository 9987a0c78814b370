"""Decision-by-proof for closed Delta0 sentences, and witness-driven Sigma.

prove_delta0 returns a checkable proof of a true closed Delta0 sentence; on
a false one it raises NotTrue carrying a proof of the negation.  The
generator works by recursion on the formula: closed terms get evaluation
proofs (computation instances stitched with Leibniz rewriting), distinct
numerals get refutation chains through successor injectivity, bounded
quantifiers get per-case proofs folded through the enumeration axiom.

prove_sigma proves a closed Sigma sentence from a list of witnesses,
consumed left to right as unbounded existentials are peeled.
"""
from __future__ import annotations

from ..errors import NotTrue, ProofError, UnsupportedFormula
from ..syntax import ast as A
from ..syntax import classes as K
from ..syntax import descriptors as D
from .. import machine as M
from . import axioms as AX
from .checker import ProofObject
from .toolkit import ProofBuilder

TERM_FUEL = 500_000


def closed_value(t: A.Term, sig: D.Signature) -> int:
    n = A.numeral_value(t)
    if n is not None:
        return n
    if isinstance(t, A.Succ):
        return closed_value(t.arg, sig) + 1
    if isinstance(t, A.App):
        vals = [closed_value(a, sig) for a in t.args]
        out = M.eval_program(sig.lookup(t.fid), vals, TERM_FUEL)
        if not isinstance(out, M.Converged):
            raise UnsupportedFormula(f"term too expensive to evaluate: {t}")
        return out.value
    raise UnsupportedFormula(f"not closed: {t}")


def _fresh(*pieces) -> str:
    avoid: set[str] = set()
    for p in pieces:
        avoid |= A.term_vars(p) if isinstance(p, A.Term) else A.all_vars(p)
    return A.fresh_name("z", avoid)


def prove_term_eval(b: ProofBuilder, t: A.Term, sig: D.Signature) -> tuple[int, int]:
    """Line proving t = v-bar for closed t; returns (line, v)."""
    n = A.numeral_value(t)
    if n is not None:
        return b.logic(AX.ax_refl(t)), n
    if isinstance(t, A.Succ):
        li, v = prove_term_eval(b, t.arg, sig)
        vn = A.num(v)
        z = _fresh(t)
        chi = A.Eq(A.succ(A.Var(z)), A.num(v + 1))
        sym = b.eq_sym(li)                              # v-bar = arg
        return b.rewrite(sym, chi, z, b.logic(AX.ax_refl(A.num(v + 1)))), v + 1
    if isinstance(t, A.App):
        parts = [prove_term_eval(b, a, sig) for a in t.args]
        vals = [v for _, v in parts]
        out = M.eval_program(sig.lookup(t.fid), vals, TERM_FUEL)
        if not isinstance(out, M.Converged):
            raise UnsupportedFormula(f"term too expensive to evaluate: {t}")
        v = out.value
        cur_args = [A.num(x) for x in vals]
        cur = b.theory(A.Eq(A.App(t.fid, tuple(cur_args)), A.num(v)),
                       cert=("computation",))
        for i, (li, vi) in enumerate(parts):
            if t.args[i] == cur_args[i]:
                continue                                 # literal numeral arg
            z = _fresh(t, A.num(v))
            tpl_args = (tuple(t.args[:i]) + (A.Var(z),)
                        + tuple(cur_args[i + 1:]))
            chi = A.Eq(A.App(t.fid, tpl_args), A.num(v))
            sym = b.eq_sym(li)                           # vi-bar = t_i
            cur = b.rewrite(sym, chi, z, cur)
            cur_args[i] = t.args[i]
        return cur, v
    raise UnsupportedFormula(f"not closed: {t}")


def numeral_distinct(b: ProofBuilder, m: int, n: int) -> int:
    """Line proving m-bar = n-bar -> falsum, for m != n."""
    if m == n:
        raise ProofError("numerals are equal")
    d = min(m, n)
    chain = None
    for i in range(d):
        inst = b.theory(AX.succ_inj(A.num(m - i - 1), A.num(n - i - 1)),
                        cert=("succ-inj",))
        chain = inst if chain is None else b.syll(chain, inst)
    mm, nn = m - d, n - d          # one of them is 0
    if nn == 0:
        last = b.theory(AX.succ_nonzero(A.num(mm - 1)), cert=("succ-nonzero",))
    else:
        # 0 = k-bar -> falsum: flip the equation, then successor-nonzero
        k = A.num(nn)
        z = _fresh(k)
        lb = b.logic(AX.ax_leibniz(A.Zero(), k, A.Eq(A.Var(z), A.Zero()), z))
        flipped = b.swap(lb)                       # (0=0) -> ((0=k) -> (k=0))
        refl = b.logic(AX.ax_refl(A.Zero()))
        flip = b.mp(flipped, refl)                 # (0=k) -> (k=0)
        nonzero = b.theory(AX.succ_nonzero(A.num(nn - 1)), cert=("succ-nonzero",))
        last = b.syll(flip, nonzero)
    return last if chain is None else b.syll(chain, last)


def _decide_eq(b, phi: A.Eq, sig) -> tuple[bool, int]:
    ls, vs = prove_term_eval(b, phi.lhs, sig)
    lt, vt = prove_term_eval(b, phi.rhs, sig)
    if vs == vt:
        return True, b.eq_trans(ls, b.eq_sym(lt))
    s, t = phi.lhs, phi.rhs
    z = _fresh(s, t, A.num(vs), A.num(vt))
    l1 = b.logic(AX.ax_leibniz(s, A.num(vs), A.Eq(A.Var(z), t), z))
    step1 = b.mp(l1, ls)                           # (s=t) -> (vs-bar = t)
    l2 = b.logic(AX.ax_leibniz(t, A.num(vt), A.Eq(A.num(vs), A.Var(z)), z))
    step2 = b.mp(l2, lt)                           # (vs-bar=t) -> (vs-bar=vt-bar)
    to_nums = b.syll(step1, step2)
    return False, b.syll(to_nums, numeral_distinct(b, vs, vt))


def _open_case_implication(b, x: str, k: int, phi: A.Formula, phi_line: int) -> int:
    """From |- phi[x:=k-bar] conclude |- (x = k-bar) -> phi  (x free)."""
    xk = A.Eq(A.Var(x), A.num(k))
    z1 = _fresh(phi, A.Var(x), A.num(k))
    lb = b.logic(AX.ax_leibniz(A.Var(x), A.num(k), A.Eq(A.Var(z1), A.Var(x)), z1))
    sw = b.swap(lb)                                 # (x=x) -> ((x=k) -> (k=x))
    sym_imp = b.mp(sw, b.logic(AX.ax_refl(A.Var(x))))   # (x=k) -> (k=x)
    z2 = A.fresh_name("z", A.all_vars(phi) | {x})
    tpl = A.sb(phi, [x], [A.Var(z2)])
    lb2 = b.logic(AX.ax_leibniz(A.num(k), A.Var(x), tpl, z2))
    # (k=x) -> (phi[k] -> phi);  swap, discharge phi[k]
    sw2 = b.swap(lb2)
    use = b.mp(sw2, phi_line)                       # (k=x) -> phi
    return b.syll(sym_imp, use)


def _decide_bounded_forall(b, x, bound, body, sig) -> tuple[bool, int]:
    bval = closed_value(bound, sig)
    lt_open = K.lt_formula(A.Var(x), bound)
    cases = []
    for k in range(bval):
        inst = A.sb(body, [x], [A.num(k)])
        ok, line = _decide(b, inst, sig)
        if not ok:
            # refute the whole bounded forall at witness k
            fi = b.logic(AX.ax_forall_inst(x, A.Imp(lt_open, body), A.num(k)))
            lt_inst = A.sb(lt_open, [x], [A.num(k)])
            okl, lt_line = _decide_eq(b, lt_inst, sig)
            assert okl, "witness below the bound"
            mpi = b.mp_internal(lt_inst, inst)
            use = b.mp(mpi, lt_line)                # (k<t -> phi_k) -> phi_k
            to_phik = b.syll(fi, use)               # whole -> phi_k
            return False, b.syll(to_phik, line)
        cases.append(line)
    # all cases hold: fold through the enumeration axiom
    enum_ax = AX.enumeration_axiom(bval, var=x)
    enum = b.theory(enum_ax, cert=("enumeration",))
    fi = b.logic(AX.ax_forall_inst(x, enum_ax.body, A.Var(x)))
    lt_to_or = b.mp(fi, enum)                       # x<bval-bar -> big-or
    if bval == 0:
        efq = b.logic(AX.ax_efq(body))
        open_imp = b.syll(lt_to_or, efq)            # x<0 -> phi
    else:
        tail = _open_case_implication(b, x, bval - 1, body, cases[-1])
        for k in range(bval - 2, -1, -1):
            head = _open_case_implication(b, x, k, body, cases[k])
            ore = b.logic(AX.ax_or_e(A.Eq(A.Var(x), A.num(k)),
                                     _or_tail(x, k + 1, bval), body))
            tail = b.mp(b.mp(ore, head), tail)
        open_imp = b.syll(lt_to_or, tail)           # x<bval-bar -> phi
    closed = b.gen(open_imp, x)                     # forall x (x<bval-bar -> phi)
    if bound != A.num(bval):
        eqline, _ = prove_term_eval(b, bound, sig)  # bound = bval-bar
        z = A.fresh_name("z", A.all_vars(b.at(closed)))
        chi = A.Forall(x, A.Imp(K.lt_formula(A.Var(x), A.Var(z)), body))
        closed = b.rewrite(b.eq_sym(eqline), chi, z, closed)
    return True, closed


def _or_tail(x: str, k: int, bval: int) -> A.Formula:
    body = A.Eq(A.Var(x), A.num(bval - 1))
    for j in range(bval - 2, k - 1, -1):
        body = A.Or(A.Eq(A.Var(x), A.num(j)), body)
    return body


def _decide_bounded_exists(b, x, bound, body_full, sig) -> tuple[bool, int]:
    # body_full = (x < bound) & phi
    phi = body_full.rhs
    lt_open = body_full.lhs
    bval = closed_value(bound, sig)
    for k in range(bval):
        inst = A.sb(phi, [x], [A.num(k)])
        ok = K.eval_true(inst, {}, sig)
        if ok is True:
            _, phil = _decide(b, inst, sig)
            okl, ltl = _decide_eq(b, A.sb(lt_open, [x], [A.num(k)]), sig)
            assert okl
            conj = b.and_intro(ltl, phil)
            ei = b.logic(AX.ax_exists_intro(x, body_full, A.num(k)))
            return True, b.mp(ei, conj)
    # no witness: forall x (x<bound -> (phi -> falsum)), then shift
    neg_body = A.Imp(phi, A.Falsum())
    okall, all_line = _decide_bounded_forall(b, x, bound, neg_body, sig)
    assert okall, "refuted case should have produced a witness"
    fi = b.logic(AX.ax_forall_inst(
        x, A.Imp(K.lt_formula(A.Var(x), bound), neg_body), A.Var(x)))
    open_neg = b.mp(fi, all_line)                   # x<bound -> (phi -> _|_)
    ae1 = b.logic(AX.ax_and_e1(lt_open, phi))       # C -> x<bound
    ae2 = b.logic(AX.ax_and_e2(lt_open, phi))       # C -> phi
    c_to_negphi = b.syll(ae1, open_neg)             # C -> (phi -> _|_)
    s = b.logic(AX.ax_s(body_full, phi, A.Falsum()))
    c_to_bot = b.mp(b.mp(s, c_to_negphi), ae2)      # C -> _|_
    gen = b.gen(c_to_bot, x)
    shift = b.logic(AX.ax_exists_elim(x, body_full, A.Falsum()))
    return False, b.mp(shift, gen)


def _decide(b: ProofBuilder, phi: A.Formula, sig) -> tuple[bool, int]:
    """(truth, line index proving phi or phi -> falsum) for closed Delta0."""
    if isinstance(phi, A.Falsum):
        return False, b.identity(A.Falsum())
    if isinstance(phi, A.Eq):
        return _decide_eq(b, phi, sig)
    if isinstance(phi, A.And):
        okl, ll = _decide(b, phi.lhs, sig)
        if not okl:
            e1 = b.logic(AX.ax_and_e1(phi.lhs, phi.rhs))
            return False, b.syll(e1, ll)
        okr, lr = _decide(b, phi.rhs, sig)
        if not okr:
            e2 = b.logic(AX.ax_and_e2(phi.lhs, phi.rhs))
            return False, b.syll(e2, lr)
        return True, b.and_intro(ll, lr)
    if isinstance(phi, A.Or):
        okl, ll = _decide(b, phi.lhs, sig)
        if okl:
            return True, b.mp(b.logic(AX.ax_or_i1(phi.lhs, phi.rhs)), ll)
        okr, lr = _decide(b, phi.rhs, sig)
        if okr:
            return True, b.mp(b.logic(AX.ax_or_i2(phi.lhs, phi.rhs)), lr)
        ore = b.logic(AX.ax_or_e(phi.lhs, phi.rhs, A.Falsum()))
        return False, b.mp(b.mp(ore, ll), lr)
    if isinstance(phi, A.Imp):
        okl, ll = _decide(b, phi.lhs, sig)
        if not okl:
            efq = b.logic(AX.ax_efq(phi.rhs))
            return True, b.syll(ll, efq)
        okr, lr = _decide(b, phi.rhs, sig)
        if okr:
            return True, b.const_imp(phi.lhs, lr)
        mpi = b.mp_internal(phi.lhs, phi.rhs)
        use = b.mp(mpi, ll)                          # (lhs -> rhs) -> rhs
        return False, b.syll(use, lr)
    got = K.match_bounded_forall(phi)
    if got:
        return _decide_bounded_forall(b, got[0], got[1], got[2], sig)
    got = K.match_bounded_exists(phi)
    if got:
        return _decide_bounded_exists(b, got[0], got[1], phi.body, sig)
    raise UnsupportedFormula(f"not closed Delta0: {phi}")


def prove_delta0(phi: A.Formula, sig: D.Signature | None = None) -> ProofObject:
    """Proof of a true closed Delta0 sentence; NotTrue (with a proof of the
    negation attached) on a false one."""
    sig = sig or D.DEFAULT_SIGNATURE
    if A.free_vars(phi):
        raise UnsupportedFormula("sentence required")
    if not K.is_delta0(phi):
        raise UnsupportedFormula("Delta0 required")
    b = ProofBuilder()
    ok, line = _decide(b, phi, sig)
    if not ok:
        raise NotTrue(f"false sentence: {phi}", refutation=b.build(line))
    proof = b.build(line)
    assert proof.conclusion == phi
    return proof


def refute_delta0(phi: A.Formula, sig: D.Signature | None = None) -> ProofObject:
    """Proof of phi -> falsum for a false closed Delta0 sentence."""
    try:
        prove_delta0(phi, sig)
    except NotTrue as exc:
        return exc.refutation
    raise ProofError(f"sentence is true: {phi}")


# --- Sigma sentences from witnesses ---------------------------------------------


def _sigma_truth(phi, witnesses: list[int], sig) -> tuple[bool, list[int]]:
    """Truth under the witness discipline; returns remaining witnesses."""
    if K.is_delta0(phi):
        got = K.eval_true(phi, {}, sig)
        return bool(got), witnesses
    if isinstance(phi, A.Exists):
        if not witnesses:
            return False, witnesses
        w, rest = witnesses[0], witnesses[1:]
        return _sigma_truth(A.sb(phi.body, [phi.var], [A.num(w)]), rest, sig)
    if isinstance(phi, A.And):
        okl, rest = _sigma_truth(phi.lhs, witnesses, sig)
        if not okl:
            return False, rest
        return _sigma_truth(phi.rhs, rest, sig)
    if isinstance(phi, A.Or):
        okl, rest = _sigma_truth(phi.lhs, list(witnesses), sig)
        if okl:
            return True, rest
        return _sigma_truth(phi.rhs, list(witnesses), sig)
    if isinstance(phi, A.Imp):
        got = K.eval_true(phi.lhs, {}, sig)
        if got is False:
            return True, witnesses
        return _sigma_truth(phi.rhs, witnesses, sig)
    return False, witnesses


def _prove_sigma(b, phi, witnesses: list[int], sig) -> int:
    if K.is_delta0(phi):
        ok, line = _decide(b, phi, sig)
        if not ok:
            raise NotTrue(f"false Delta0 part: {phi}", refutation=b.build())
        return line
    if isinstance(phi, A.Exists):
        if not witnesses:
            raise UnsupportedFormula("witness list exhausted")
        w = witnesses.pop(0)
        inst = A.sb(phi.body, [phi.var], [A.num(w)])
        inner = _prove_sigma(b, inst, witnesses, sig)
        ei = b.logic(AX.ax_exists_intro(phi.var, phi.body, A.num(w)))
        return b.mp(ei, inner)
    if isinstance(phi, A.And):
        ll = _prove_sigma(b, phi.lhs, witnesses, sig)
        lr = _prove_sigma(b, phi.rhs, witnesses, sig)
        return b.and_intro(ll, lr)
    if isinstance(phi, A.Or):
        okl, _ = _sigma_truth(phi.lhs, list(witnesses), sig)
        if okl:
            inner = _prove_sigma(b, phi.lhs, witnesses, sig)
            return b.mp(b.logic(AX.ax_or_i1(phi.lhs, phi.rhs)), inner)
        inner = _prove_sigma(b, phi.rhs, witnesses, sig)
        return b.mp(b.logic(AX.ax_or_i2(phi.lhs, phi.rhs)), inner)
    if isinstance(phi, A.Imp):
        if not K.is_delta0(phi.lhs):
            raise UnsupportedFormula(f"implication antecedent not Delta0: {phi}")
        got = K.eval_true(phi.lhs, {}, sig)
        if got is False:
            _, neg = _decide(b, phi.lhs, sig)
            efq = b.logic(AX.ax_efq(phi.rhs))
            return b.syll(neg, efq)
        inner = _prove_sigma(b, phi.rhs, witnesses, sig)
        return b.const_imp(phi.lhs, inner)
    if isinstance(phi, A.Forall):
        raise UnsupportedFormula(
            "bounded universal over a proper Sigma kernel is out of scope")
    raise UnsupportedFormula(f"not Sigma: {phi}")


def prove_sigma(phi: A.Formula, witnesses: list[int],
                sig: D.Signature | None = None) -> ProofObject:
    """Proof of a closed Sigma sentence, existential witnesses supplied
    outside-in, left to right."""
    sig = sig or D.DEFAULT_SIGNATURE
    if A.free_vars(phi):
        raise UnsupportedFormula("sentence required")
    b = ProofBuilder()
    line = _prove_sigma(b, phi, list(witnesses), sig)
    proof = b.build(line)
    assert proof.conclusion == phi
    return proof
