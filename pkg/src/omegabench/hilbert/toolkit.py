"""Proof assembly helpers: a builder plus derived combinator templates.

Everything here bottoms out in the K/S fragment, so the derived moves
(identity, syllogism, swap, internalized modus ponens, equality symmetry
and transitivity) are fixed-size line templates rather than search.
"""
from __future__ import annotations

from ..errors import ProofError
from ..syntax import ast as A
from . import axioms as AX
from .checker import Hint, ProofObject


class ProofBuilder:
    def __init__(self):
        self._lines: list[A.Formula] = []
        self._hints: list[Hint | None] = []
        self._where: dict[A.Formula, int] = {}

    def __len__(self) -> int:
        return len(self._lines)

    def at(self, i: int) -> A.Formula:
        return self._lines[i]

    def _push(self, phi: A.Formula, hint: Hint) -> int:
        got = self._where.get(phi)
        if got is not None:
            return got
        self._lines.append(phi)
        self._hints.append(hint)
        self._where[phi] = len(self._lines) - 1
        return len(self._lines) - 1

    def logic(self, phi: A.Formula) -> int:
        if not AX.is_logical_axiom(phi):
            raise ProofError(f"not a logical axiom: {phi}")
        return self._push(phi, Hint("logic"))

    def theory(self, phi: A.Formula, cert=None) -> int:
        return self._push(phi, Hint("theory", cert=cert))

    def mp(self, imp_i: int, ant_i: int) -> int:
        imp = self._lines[imp_i]
        if not (isinstance(imp, A.Imp) and imp.lhs == self._lines[ant_i]):
            raise ProofError("modus ponens premises do not fit")
        return self._push(imp.rhs, Hint("mp", j=imp_i, k=ant_i))

    def gen(self, i: int, x: str) -> int:
        return self._push(A.Forall(x, self._lines[i]), Hint("gen", j=i))

    def build(self, conclusion: int | None = None) -> ProofObject:
        """Freeze into a ProofObject.

        Lines are deduplicated as they are added, so the requested conclusion
        may sit before the end of the tape; truncating after it is sound
        because every line depends only on earlier ones.
        """
        if conclusion is None:
            conclusion = len(self._lines) - 1
        n = conclusion + 1
        return ProofObject(lines=tuple(self._lines[:n]),
                           hints=tuple(self._hints[:n]))

    def absorb(self, proof: ProofObject) -> int:
        """Append another checked proof's lines; returns its conclusion index."""
        offset_map: dict[int, int] = {}
        last = -1
        for i, phi in enumerate(proof.lines):
            h = proof.hint_at(i)
            if h is None:
                raise ProofError("can only absorb fully hinted proofs")
            if h.kind == "mp":
                last = self.mp(offset_map[h.j], offset_map[h.k])
            elif h.kind == "gen":
                last = self.gen(offset_map[h.j], phi.var)
            elif h.kind == "logic":
                last = self._push(phi, h)
            else:
                last = self._push(phi, h)
            offset_map[i] = last
        return last

    # --- derived templates ----------------------------------------------------

    def identity(self, a: A.Formula) -> int:
        """|- a -> a."""
        aa = A.Imp(a, a)
        k1 = self.logic(AX.ax_k(a, aa))                  # a -> ((a->a) -> a)
        s1 = self.logic(AX.ax_s(a, aa, a))
        step = self.mp(s1, k1)                           # (a -> (a->a)) -> (a->a)
        k2 = self.logic(AX.ax_k(a, a))
        return self.mp(step, k2)

    def syll(self, ab_i: int, bc_i: int) -> int:
        """From |- a->b and |- b->c conclude |- a->c."""
        ab, bc = self._lines[ab_i], self._lines[bc_i]
        if not (isinstance(ab, A.Imp) and isinstance(bc, A.Imp)
                and ab.rhs == bc.lhs):
            raise ProofError("syllogism premises do not fit")
        a, b, c = ab.lhs, ab.rhs, bc.rhs
        k = self.logic(AX.ax_k(bc, a))                   # (b->c) -> (a -> (b->c))
        lifted = self.mp(k, bc_i)                        # a -> (b -> c)
        s = self.logic(AX.ax_s(a, b, c))
        return self.mp(self.mp(s, lifted), ab_i)

    def swap(self, i: int) -> int:
        """From |- a -> (b -> c) conclude |- b -> (a -> c)."""
        phi = self._lines[i]
        if not (isinstance(phi, A.Imp) and isinstance(phi.rhs, A.Imp)):
            raise ProofError("swap wants a -> (b -> c)")
        a, b, c = phi.lhs, phi.rhs.lhs, phi.rhs.rhs
        s = self.logic(AX.ax_s(a, b, c))
        d = self.mp(s, i)                                # (a->b) -> (a->c)
        k = self.logic(AX.ax_k(b, a))                    # b -> (a -> b)
        return self.syll(k, d)

    def const_imp(self, a: A.Formula, i: int) -> int:
        """From |- b conclude |- a -> b."""
        b = self._lines[i]
        k = self.logic(AX.ax_k(b, a))
        return self.mp(k, i)

    def mp_internal(self, a: A.Formula, b: A.Formula) -> int:
        """|- a -> ((a -> b) -> b)."""
        return self.swap(self.identity(A.Imp(a, b)))

    def dneg(self, a: A.Formula) -> int:
        """|- a -> ((a -> _|_) -> _|_)."""
        return self.mp_internal(a, A.Falsum())

    def and_intro(self, i: int, j: int) -> int:
        ax = self.logic(AX.ax_and_i(self._lines[i], self._lines[j]))
        return self.mp(self.mp(ax, i), j)

    def eq_sym(self, i: int) -> int:
        """From |- s = t conclude |- t = s."""
        eq = self._lines[i]
        if not isinstance(eq, A.Eq):
            raise ProofError("eq_sym wants an equation")
        s, t = eq.lhs, eq.rhs
        z = A.fresh_name("z", A.term_vars(s) | A.term_vars(t))
        lb = self.logic(AX.ax_leibniz(s, t, A.Eq(A.Var(z), s), z))
        step = self.mp(lb, i)                            # (s=s) -> (t=s)
        refl = self.logic(AX.ax_refl(s))
        return self.mp(step, refl)

    def eq_trans(self, i: int, j: int) -> int:
        """From |- a = b and |- b = c conclude |- a = c."""
        e1, e2 = self._lines[i], self._lines[j]
        if not (isinstance(e1, A.Eq) and isinstance(e2, A.Eq)
                and e1.rhs == e2.lhs):
            raise ProofError("eq_trans premises do not fit")
        a, b, c = e1.lhs, e1.rhs, e2.rhs
        z = A.fresh_name("z", A.term_vars(a) | A.term_vars(b) | A.term_vars(c))
        lb = self.logic(AX.ax_leibniz(b, c, A.Eq(a, A.Var(z)), z))
        return self.mp(self.mp(lb, j), i)

    def rewrite(self, eq_i: int, chi: A.Formula, z: str, phi_i: int) -> int:
        """From |- s = t and |- chi[z:=s] conclude |- chi[z:=t]."""
        eq = self._lines[eq_i]
        if not isinstance(eq, A.Eq):
            raise ProofError("rewrite wants an equation")
        lb = self.logic(AX.ax_leibniz(eq.lhs, eq.rhs, chi, z))
        return self.mp(self.mp(lb, eq_i), phi_i)
