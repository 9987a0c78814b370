"""Formula classes and normal forms.

Delta0: atomic formulas (including falsum), closed under &, |, ->, and
bounded quantifiers  forall x (x<t -> ...) / exists x (x<t & ...)  where
x<t abbreviates S(x)-.t = 0 (cutoff subtraction, descriptor f_0) and t does
not contain x.  Sigma adds unbounded exists (and keeps bounded forall);
Pi is dual.  classify returns the most specific tag.

normal_form produces, for a Delta0 formula, a descriptor F with
F(xs) = 0  iff  the formula is true at xs;  for Sigma (Pi), a matrix F with
phi <-> exists w F(xs, w) = 0  (resp. forall w).  The witness for compound
shapes is packed with the pairing/sequence natives.  The one shape accepted
beyond the strict classes is sigma -> pi (covering negated Sigma), which is
Pi over the standard model and intuitionistically sound.  The Pi |-clause
merge is true classically but not intuitionistically derivable; normal forms
that use it are flagged ha_provable=False and are not admitted as bridge
axioms (hilbert/axioms.py).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from ..errors import NativeOverflow, UnsupportedFormula
from . import ast as A
from . import descriptors as D
from .descriptors import (F_MONUS, Signature, and_r, bounded_prod,
                          bounded_sum, compose, cond, eq_r_of, imp_r, projs)


class FormulaClass(enum.Enum):
    Delta0 = "Delta0"
    Sigma1 = "Sigma1"
    Pi1 = "Pi1"
    Pi2 = "Pi2"
    Sigma = "Sigma"
    Pi = "Pi"
    Other = "Other"


def lt_formula(x: A.Term, t: A.Term) -> A.Formula:
    """x < t  :=  S(x) -. t = 0."""
    return A.Eq(A.App(F_MONUS, (A.succ(x), t)), A.Zero())


def bounded_forall(var: str, bound: A.Term, body: A.Formula) -> A.Formula:
    if var in A.term_vars(bound):
        raise ValueError("bound must not contain the quantified variable")
    return A.Forall(var, A.Imp(lt_formula(A.Var(var), bound), body))


def bounded_exists(var: str, bound: A.Term, body: A.Formula) -> A.Formula:
    if var in A.term_vars(bound):
        raise ValueError("bound must not contain the quantified variable")
    return A.Exists(var, A.And(lt_formula(A.Var(var), bound), body))


def match_lt(phi: A.Formula) -> tuple[A.Term, A.Term] | None:
    """(x, t) if phi is the x<t pattern."""
    if (isinstance(phi, A.Eq) and isinstance(phi.rhs, A.Zero)
            and isinstance(phi.lhs, A.App) and phi.lhs.fid == F_MONUS
            and len(phi.lhs.args) == 2):
        s = phi.lhs.args[0]
        if isinstance(s, A.Succ):
            return s.arg, phi.lhs.args[1]
        n = A.numeral_value(s)
        if n is not None and n >= 1:
            return A.num(n - 1), phi.lhs.args[1]
    return None


def match_bounded_forall(phi: A.Formula):
    """(var, bound, body) for  forall x. x<t -> body  with x not in t."""
    if isinstance(phi, A.Forall) and isinstance(phi.body, A.Imp):
        got = match_lt(phi.body.lhs)
        if got and got[0] == A.Var(phi.var) and phi.var not in A.term_vars(got[1]):
            return phi.var, got[1], phi.body.rhs
    return None


def match_bounded_exists(phi: A.Formula):
    if isinstance(phi, A.Exists) and isinstance(phi.body, A.And):
        got = match_lt(phi.body.lhs)
        if got and got[0] == A.Var(phi.var) and phi.var not in A.term_vars(got[1]):
            return phi.var, got[1], phi.body.rhs
    return None


def is_delta0(phi: A.Formula) -> bool:
    if isinstance(phi, (A.Falsum, A.Eq)):
        return True
    if isinstance(phi, (A.And, A.Or, A.Imp)):
        return is_delta0(phi.lhs) and is_delta0(phi.rhs)
    if isinstance(phi, A.Forall):
        got = match_bounded_forall(phi)
        return got is not None and is_delta0(got[2])
    if isinstance(phi, A.Exists):
        got = match_bounded_exists(phi)
        return got is not None and is_delta0(got[2])
    return False


def is_sigma(phi: A.Formula) -> bool:
    if is_delta0(phi):
        return True
    if isinstance(phi, (A.And, A.Or)):
        return is_sigma(phi.lhs) and is_sigma(phi.rhs)
    if isinstance(phi, A.Imp):
        return is_delta0(phi.lhs) and is_sigma(phi.rhs)
    if isinstance(phi, A.Forall):
        got = match_bounded_forall(phi)
        return got is not None and is_sigma(got[2])
    if isinstance(phi, A.Exists):
        return is_sigma(phi.body)
    return False


def is_pi(phi: A.Formula) -> bool:
    if is_delta0(phi):
        return True
    if isinstance(phi, (A.And, A.Or)):
        return is_pi(phi.lhs) and is_pi(phi.rhs)
    if isinstance(phi, A.Imp):
        return is_delta0(phi.lhs) and is_pi(phi.rhs)
    if isinstance(phi, A.Exists):
        got = match_bounded_exists(phi)
        return got is not None and is_pi(got[2])
    if isinstance(phi, A.Forall):
        return is_pi(phi.body)
    return False


def classify(phi: A.Formula) -> FormulaClass:
    if is_delta0(phi):
        return FormulaClass.Delta0
    if isinstance(phi, A.Exists) and is_delta0(phi.body):
        return FormulaClass.Sigma1
    if isinstance(phi, A.Forall) and is_delta0(phi.body):
        return FormulaClass.Pi1
    if (isinstance(phi, A.Forall) and isinstance(phi.body, A.Exists)
            and is_delta0(phi.body.body)):
        return FormulaClass.Pi2
    if is_sigma(phi):
        return FormulaClass.Sigma
    if is_pi(phi):
        return FormulaClass.Pi
    return FormulaClass.Other


# --- normal forms -----------------------------------------------------------

_UNL = D.Native("unpair_left")
_UNR = D.Native("unpair_right")
_SEQ_EL = D.Native("seq_el")


@dataclass(frozen=True)
class NormalForm:
    cls: str                      # "delta0" | "sigma" | "pi"
    matrix: D.Program             # arity len(params) (+1 unless delta0)
    params: tuple[str, ...]       # free-variable order of the matrix
    ha_provable: bool             # False iff the Pi |-merge was used


def term_descriptor(t: A.Term, params: tuple[str, ...], sig: Signature) -> D.Program:
    n = len(params)
    if isinstance(t, A.Var):
        return D.Proj(params.index(t.name), n)
    if isinstance(t, A.Zero):
        return D.ZeroFn(n)
    if isinstance(t, A.Num):
        return D.Const(t.n, n)
    if isinstance(t, A.Succ):
        return compose(D.SuccFn(), term_descriptor(t.arg, params, sig))
    if isinstance(t, A.App):
        return compose(sig.lookup(t.fid),
                       *(term_descriptor(a, params, sig) for a in t.args))
    raise TypeError(t)


def delta0_rf(phi: A.Formula, params: tuple[str, ...], sig: Signature) -> D.Program:
    """Representing function: 0 iff true (arity len(params))."""
    n = len(params)
    if isinstance(phi, A.Falsum):
        return D.Const(1, n)
    if isinstance(phi, A.Eq):
        return eq_r_of(term_descriptor(phi.lhs, params, sig),
                       term_descriptor(phi.rhs, params, sig))
    if isinstance(phi, A.And):
        return and_r(delta0_rf(phi.lhs, params, sig), delta0_rf(phi.rhs, params, sig))
    if isinstance(phi, A.Or):
        return D.or_r(delta0_rf(phi.lhs, params, sig), delta0_rf(phi.rhs, params, sig))
    if isinstance(phi, A.Imp):
        return imp_r(delta0_rf(phi.lhs, params, sig), delta0_rf(phi.rhs, params, sig))
    got = match_bounded_forall(phi)
    if got:
        var, bound, body = got
        inner = delta0_rf(body, (var,) + params, sig)
        return compose(bounded_sum(inner),
                       term_descriptor(bound, params, sig), *projs(n, *range(n)))
    got = match_bounded_exists(phi)
    if got:
        var, bound, body = got
        inner = delta0_rf(body, (var,) + params, sig)
        return compose(bounded_prod(inner),
                       term_descriptor(bound, params, sig), *projs(n, *range(n)))
    raise UnsupportedFormula(f"not Delta0: {phi}")


def _padded_rf(phi, params, sig) -> D.Program:
    """delta0 representing function over params plus one ignored slot."""
    dummy = A.fresh_name("w", set(params))
    return delta0_rf(phi, params + (dummy,), sig)


def _nf_sigma(phi, params, sig) -> tuple[D.Program, bool]:
    n = len(params)
    ps = projs(n + 1, *range(n))
    wp = D.Proj(n, n + 1)
    if is_delta0(phi):
        return _padded_rf(phi, params, sig), True
    if isinstance(phi, A.Forall):
        got = match_bounded_forall(phi)
        if got is None:
            raise UnsupportedFormula(f"not Sigma: {phi}")
        var, bound, body = got
        g, ok = _nf_sigma(body, (var,) + params, sig)   # g(x, params, w)
        h = compose(g, D.Proj(0, n + 2), *projs(n + 2, *range(1, n + 1)),
                    compose(_SEQ_EL, D.Proj(n + 1, n + 2), D.Proj(0, n + 2)))
        return compose(bounded_sum(h),
                       compose(term_descriptor(bound, params, sig), *ps),
                       *ps, wp), ok
    if isinstance(phi, A.Exists):
        g, ok = _nf_sigma(phi.body, (phi.var,) + params, sig)  # g(x, params, w')
        return compose(g, compose(_UNL, wp), *ps, compose(_UNR, wp)), ok
    if isinstance(phi, A.And):
        g1, o1 = _nf_sigma(phi.lhs, params, sig)
        g2, o2 = _nf_sigma(phi.rhs, params, sig)
        return and_r(compose(g1, *ps, compose(_UNL, wp)),
                     compose(g2, *ps, compose(_UNR, wp))), o1 and o2
    if isinstance(phi, A.Or):
        g1, o1 = _nf_sigma(phi.lhs, params, sig)
        g2, o2 = _nf_sigma(phi.rhs, params, sig)
        return cond(compose(_UNL, wp),
                    compose(g1, *ps, compose(_UNR, wp)),
                    compose(g2, *ps, compose(_UNR, wp))), o1 and o2
    if isinstance(phi, A.Imp):
        if not is_delta0(phi.lhs):
            raise UnsupportedFormula(f"not Sigma: {phi}")
        g, ok = _nf_sigma(phi.rhs, params, sig)
        return imp_r(_padded_rf(phi.lhs, params, sig), g), ok
    raise UnsupportedFormula(f"not Sigma: {phi}")


def _nf_pi(phi, params, sig) -> tuple[D.Program, bool]:
    n = len(params)
    ps = projs(n + 1, *range(n))
    wp = D.Proj(n, n + 1)
    if is_delta0(phi):
        return _padded_rf(phi, params, sig), True
    if isinstance(phi, A.Exists):
        got = match_bounded_exists(phi)
        if got is None:
            raise UnsupportedFormula(f"not Pi: {phi}")
        var, bound, body = got
        g, ok = _nf_pi(body, (var,) + params, sig)
        h = compose(g, D.Proj(0, n + 2), *projs(n + 2, *range(1, n + 1)),
                    compose(_SEQ_EL, D.Proj(n + 1, n + 2), D.Proj(0, n + 2)))
        return compose(bounded_prod(h),
                       compose(term_descriptor(bound, params, sig), *ps),
                       *ps, wp), ok
    if isinstance(phi, A.Forall):
        g, ok = _nf_pi(phi.body, (phi.var,) + params, sig)
        return compose(g, compose(_UNL, wp), *ps, compose(_UNR, wp)), ok
    if isinstance(phi, A.And):
        g1, o1 = _nf_pi(phi.lhs, params, sig)
        g2, o2 = _nf_pi(phi.rhs, params, sig)
        return and_r(compose(g1, *ps, compose(_UNL, wp)),
                     compose(g2, *ps, compose(_UNR, wp))), o1 and o2
    if isinstance(phi, A.Or):
        # classically sound merge; not intuitionistically derivable
        g1, _ = _nf_pi(phi.lhs, params, sig)
        g2, _ = _nf_pi(phi.rhs, params, sig)
        return D.or_r(compose(g1, *ps, compose(_UNL, wp)),
                      compose(g2, *ps, compose(_UNR, wp))), False
    if isinstance(phi, A.Imp):
        if is_delta0(phi.lhs):
            g, ok = _nf_pi(phi.rhs, params, sig)
            return imp_r(_padded_rf(phi.lhs, params, sig), g), ok
        if is_sigma(phi.lhs) and (_is_pi_extended(phi.rhs) or isinstance(phi.rhs, A.Falsum)):
            # sigma -> pi is Pi:  forall w (G(xs,w0) = 0 -> H(xs,w1) = 0)
            gl, o1 = _nf_sigma(phi.lhs, params, sig)
            gr, o2 = _nf_pi(phi.rhs, params, sig)
            return imp_r(compose(gl, *ps, compose(_UNL, wp)),
                         compose(gr, *ps, compose(_UNR, wp))), o1 and o2
        raise UnsupportedFormula(f"not Pi: {phi}")
    raise UnsupportedFormula(f"not Pi: {phi}")


def normal_form(phi: A.Formula, sig: Signature | None = None,
                want: str | None = None) -> NormalForm:
    """Normal form per the class of phi (or the requested `want`).

    delta0 -> representing function; sigma -> exists-matrix; pi ->
    forall-matrix.  Raises UnsupportedFormula off the classes.
    """
    sig = sig or D.DEFAULT_SIGNATURE
    params = tuple(sorted(A.free_vars(phi)))
    if want is None:
        if is_delta0(phi):
            want = "delta0"
        elif is_sigma(phi):
            want = "sigma"
        elif is_pi(phi) or _is_pi_extended(phi):
            want = "pi"
        else:
            raise UnsupportedFormula(f"no normal form clause applies: {phi}")
    if want == "delta0":
        return NormalForm("delta0", delta0_rf(phi, params, sig), params, True)
    if want == "sigma":
        m, ok = _nf_sigma(phi, params, sig)
        return NormalForm("sigma", m, params, ok)
    if want == "pi":
        m, ok = _nf_pi(phi, params, sig)
        return NormalForm("pi", m, params, ok)
    raise ValueError(f"unknown normal form kind {want!r}")


def _is_pi_extended(phi: A.Formula) -> bool:
    """Pi including the sigma->pi entry shape."""
    if is_pi(phi):
        return True
    if isinstance(phi, A.Imp) and is_sigma(phi.lhs):
        return isinstance(phi.rhs, A.Falsum) or is_pi(phi.rhs) or _is_pi_extended(phi.rhs)
    if isinstance(phi, A.Forall):
        return _is_pi_extended(phi.body)
    return False


# --- bounded truth evaluation ------------------------------------------------

BOUND_CAP = 10 ** 6


def term_value(t: A.Term, env: dict[str, int], sig: Signature) -> int:
    if isinstance(t, A.Var):
        return env[t.name]
    if isinstance(t, A.Zero):
        return 0
    if isinstance(t, A.Num):
        return t.n
    if isinstance(t, A.Succ):
        return term_value(t.arg, env, sig) + 1
    if isinstance(t, A.App):
        return D.eval_pr(sig.lookup(t.fid),
                         [term_value(a, env, sig) for a in t.args])
    raise TypeError(t)


def eval_true(phi: A.Formula, env: dict[str, int] | None = None,
              sig: Signature | None = None, exists_bound: int = 64) -> bool | None:
    """Three-valued bounded truth in the standard model.

    Unbounded quantifiers are probed up to exists_bound witnesses; None means
    the budget could not decide.  Bounded quantifiers over bounds beyond
    BOUND_CAP also return None rather than loop.
    """
    env = env or {}
    sig = sig or D.DEFAULT_SIGNATURE
    try:
        return _ev3(phi, env, sig, exists_bound)
    except NativeOverflow:
        return None


def _ev3(phi, env, sig, eb) -> bool | None:
    if isinstance(phi, A.Falsum):
        return False
    if isinstance(phi, A.Eq):
        return term_value(phi.lhs, env, sig) == term_value(phi.rhs, env, sig)
    if isinstance(phi, A.And):
        l = _ev3(phi.lhs, env, sig, eb)
        if l is False:
            return False
        r = _ev3(phi.rhs, env, sig, eb)
        if r is False:
            return False
        return True if (l is True and r is True) else None
    if isinstance(phi, A.Or):
        l = _ev3(phi.lhs, env, sig, eb)
        if l is True:
            return True
        r = _ev3(phi.rhs, env, sig, eb)
        if r is True:
            return True
        return False if (l is False and r is False) else None
    if isinstance(phi, A.Imp):
        l = _ev3(phi.lhs, env, sig, eb)
        if l is False:
            return True
        r = _ev3(phi.rhs, env, sig, eb)
        if r is True:
            return True
        if l is True and r is False:
            return False
        return None
    if isinstance(phi, (A.Forall, A.Exists)):
        unk = False
        bf = match_bounded_forall(phi) if isinstance(phi, A.Forall) else \
            match_bounded_exists(phi)
        if bf:
            var, bound, body = bf
            b = term_value(bound, env, sig)
            if b > BOUND_CAP:
                return None
            rng = range(b)
            body_phi = body
        else:
            var, body_phi = phi.var, phi.body
            rng = range(eb)
            unk = True                       # probing, not exhausting
        hit_unknown = False
        for v in rng:
            got = _ev3(body_phi, {**env, var: v}, sig, eb)
            if isinstance(phi, A.Forall) and got is False:
                return False
            if isinstance(phi, A.Exists) and got is True:
                return True
            if got is None:
                hit_unknown = True
        if unk or hit_unknown:
            return None
        return isinstance(phi, A.Forall)
    raise TypeError(phi)
