"""Self-referential sentences by diagonalization.

For a template phi with a free self slot u, let

    inner = phi[u := Diag(u)],        g = code(inner),
    delta = phi[u := Diag(g-bar)].

Then Diag(g-bar) evaluates to code(delta) exactly (diag substitutes the
numeral of its argument for u on codes), so delta asserts phi of delta's own
code.  fixed_point_proof derives the biconditional

    delta <-> phi[u := numeral of code(delta)]

from one computation instance Diag(g-bar) = code(delta)-bar and two Leibniz
steps.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..hilbert import axioms as AX
from ..hilbert.checker import ProofObject
from ..hilbert.toolkit import ProofBuilder
from ..syntax import ast as A
from ..syntax import coding as C
from ..syntax import descriptors as D
from . import natives as N
from . import provability as P


@dataclass(frozen=True)
class Diagonal:
    phi: A.Formula          # the template, self slot free
    u: str                  # name of the self slot
    g: int                  # code of phi[u := Diag(u)]
    delta: A.Formula        # the fixed point phi[u := Diag(g-bar)]

    @property
    def code(self) -> int:
        return C.encode(self.delta)

    @property
    def self_term(self) -> A.Term:
        """The closed term Diag(g-bar) whose value is code(delta)."""
        return A.App(D.F_DIAG, (A.num(self.g),))


def diagonalize(phi: A.Formula, u: str = N.DIAG_VAR) -> Diagonal:
    inner = A.sb(phi, [u], [A.App(D.F_DIAG, (A.Var(u),))])
    g = C.encode(inner)
    delta = A.sb(phi, [u], [A.App(D.F_DIAG, (A.num(g),))])
    return Diagonal(phi=phi, u=u, g=g, delta=delta)


def unfolded(d: Diagonal) -> A.Formula:
    """phi with the numeral of delta's code in the self slot."""
    return A.sb(d.phi, [d.u], [A.num(d.code)])


def fixed_point_proof(d: Diagonal) -> ProofObject:
    """Proof of delta <-> phi(code(delta)-bar) over HA.

    One theory line (the computation instance evaluating Diag(g-bar)), then
    Leibniz in both directions on the context phi[u := w].
    """
    t = d.self_term
    n = A.num(d.code)
    b = ProofBuilder()
    eq = b.theory(A.Eq(t, n))
    w = A.fresh_name("w", A.all_vars(d.phi))
    chi = A.sb(d.phi, [d.u], [A.Var(w)])
    fwd = b.mp(b.logic(AX.ax_leibniz(t, n, chi, w)), eq)
    bwd = b.mp(b.logic(AX.ax_leibniz(n, t, chi, w)), b.eq_sym(eq))
    return b.build(b.and_intro(fwd, bwd))


def build_nu(alpha: A.Formula) -> Diagonal:
    """The family nu(z) with nu(z) <-> ~ Pr_alpha(z, code of nu(z-dot)).

    The template is ~ Pr_alpha(z, Sb(u, "z", Nm(z))): the diagonal fixed
    point asserts its own unprovability at stage z.  With a Sigma alpha,
    nu(z) is the negation of a Sigma formula, hence Pi.
    """
    target = A.App(D.F_SB1, (A.Var(N.DIAG_VAR),
                             A.num(C.encode(A.Var(P.VAR_STAGE))),
                             A.App(D.F_NM, (A.Var(P.VAR_STAGE),))))
    phi = A.neg(P.pr_instance(alpha, target))
    return diagonalize(phi, N.DIAG_VAR)
