"""Capture of a Pi1 sentence inside the ordinal notations.

For a decidable matrix theta(x), ``pi1_capture_index`` builds an index e
with, by the recursion theorem,

    {e}(n) = value of the notation n          if theta(0), ..., theta(n)
    {e}(n) = value of 2^{3 * 5^e}             otherwise  (e itself!)

so e enumerates an ordinal-notation path that keeps climbing exactly as
long as the sentence forall x theta(x) keeps being true, and collapses to
a fixed self-referential value at the first counterexample.

The self-referential value 2^{3 * 5^e} is far beyond materialization (e is
a genuine program index), so the machine honestly reports an overflowing
out-of-fuel there; ``capture_value`` delivers the same value structurally,
with the limit's enumerator index literally equal to e.
"""
from __future__ import annotations

from .. import kleene_o as O
from .. import machine as M
from ..errors import UnsupportedFormula
from ..syntax import ast as A
from ..syntax import classes as K
from ..syntax import descriptors as D

__all__ = ["pi1_capture_index", "capture_step_index", "capture_value",
           "holds_up_to"]


def _univ(e_prog: D.Program, *args: D.Program) -> D.Program:
    return D.Comp(D.Univ(len(args)), (e_prog, *args))


def _violations_program(theta: A.Formula, xvar: str,
                        sig: D.Signature) -> D.Program:
    """Arity-1 program counting x <= n with theta(x) false."""
    if not K.is_delta0(theta):
        raise UnsupportedFormula("capture needs a decidable (Delta0) matrix")
    if A.free_vars(theta) - {xvar}:
        raise UnsupportedFormula(f"free variables beyond {xvar!r}")
    rf = K.delta0_rf(theta, (xvar,), sig)         # 0 iff true, arity 1
    flag = D.compose(D.SGN, D.compose(rf, D.Proj(0, 1)))
    return D.compose(D.bounded_sum(flag),
                     D.compose(D.SuccFn(), D.Proj(0, 1)))


def capture_step_index(theta: A.Formula, xvar: str = "x", *,
                       sig: D.Signature | None = None) -> int:
    """Index of the two-argument step (self, n) before tying the knot.

    Feeding a stand-in value c in place of the real self-index
    materializes the otherwise astronomical false branch exactly:
    {step}(c, n) = 2^(3*5^c) whenever theta has a counterexample <= n.
    """
    sig = sig or D.DEFAULT_SIGNATURE
    bad = _violations_program(theta, xvar, sig)

    self_p, n = D.projs(2, 0, 1)
    fin_prog = D.PrimRec(D.ZeroFn(0),
                         D.compose(D.Native("o_pow2"), D.Proj(0, 2)))
    true_branch = D.compose(fin_prog, n)
    false_branch = D.compose(D.Native("o_pow2"),
                             D.compose(D.Native("lim35"), self_p))
    it = D.Const(M.program_index(true_branch), 2)
    if_ = D.Const(M.program_index(false_branch), 2)
    sel = D.cond(D.compose(bad, n), it, if_)
    step = _univ(sel, self_p, n)
    return M.program_index(step)


def pi1_capture_index(theta: A.Formula, xvar: str = "x", *,
                      sig: D.Signature | None = None) -> int:
    return M.fix(capture_step_index(theta, xvar, sig=sig))


def holds_up_to(theta: A.Formula, xvar: str, n: int,
                sig: D.Signature | None = None) -> bool:
    sig = sig or D.DEFAULT_SIGNATURE
    rf = K.delta0_rf(theta, (xvar,), sig)
    return all(D.eval_pr(rf, [x]) == 0 for x in range(n + 1))


def capture_value(e: int, theta: A.Formula, xvar: str, n: int, *,
                  sig: D.Signature | None = None) -> O.Notation:
    """The notation {e}(n) stands for, delivered structurally.

    On the true prefix this is the finite notation of n (whose value the
    machine also materializes); at or past a counterexample it is the
    self-referential 2^{3*5^e} with the capture index itself under the
    limit.
    """
    if holds_up_to(theta, xvar, n, sig):
        return O.fin(n)
    return O.Succ(O.Lim(e, O.EnumCert("capture", {"e": e},
                                      notation_of=None)))
