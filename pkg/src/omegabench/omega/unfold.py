"""Stepping and local checking of omega proof codes.

``unfold(a, n)`` is the one-step child map.  Writing 2^phi for an axiomatic
head, its clauses are, in order:

  1. a axiomatic with an actual axiom head              -> Raw(0)
  2. a universal with head forall x body                -> the pending child
                                                           Pending(body[x:=n-bar], e, n, 0)
  3. a pending whose {e} has not converged in z steps   -> same, z+1
  4. a pending whose {e}(m) = b, b shaped like a code   -> b
  5. a pending whose {e}(m) = b, b shapeless            -> Axiomatic(phi)
  6. an inference whose head follows by a rule,
     n below the child count                            -> child n
  7. anything else with a formula head                  -> Axiomatic(head)
  8. anything else                                      -> Raw(0)

Raw numbers are read through the classical shapes first, so the numeric and
structural readings agree wherever both exist.

``check_local`` explores a code breadth-first under depth/width/fuel budgets
and reports one of three verdicts: "locally-correct" (every check performed
within the budgets passed), "refuted" (a node failed a local condition; the
report carries the path from the root), or "exhausted" (some check was
blocked because a machine run did not converge within the fuel budget).
Depth and width bound how far exploration reaches; stopping at those bounds
is not a failure.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .. import machine as M
from ..hilbert import axioms as AX
from ..hilbert import checker as CH
from ..syntax import ast as A
from .codes import (Axiomatic, Inference, OmegaCode, Pending, Raw, Universal,
                    classical_parse, decode_omega, head_formula, phi_of)

__all__ = ["unfold", "classify_node", "follows_by_rule", "check_local",
           "LocalReport", "Refutation", "DEFAULT_THEORY"]

DEFAULT_THEORY = CH.HATheory()


def _is_axiom(phi: A.Formula, theory: CH.Theory) -> bool:
    return AX.is_logical_axiom(phi) or theory.is_axiom(phi)


def follows_by_rule(phi: A.Formula, premises: list[A.Formula]) -> bool:
    """Does phi follow from the premises by modus ponens or generalization?"""
    for p in premises:
        if isinstance(p, A.Imp) and p.rhs == phi and p.lhs in premises:
            return True
    if isinstance(phi, A.Forall) and phi.body in premises:
        return True
    return False


def classify_node(code: OmegaCode) -> str:
    """Rule class of a code; pendings count as repetition steps."""
    if isinstance(code, Raw):
        parsed = classical_parse(code.n)
        if parsed is None:
            return "raw"
        code = parsed
    if isinstance(code, Axiomatic):
        return "axiomatic"
    if isinstance(code, Universal):
        return "universal"
    if isinstance(code, Inference):
        return "inference"
    if isinstance(code, Pending):
        return "repetition"
    raise TypeError(code)


def unfold(code: OmegaCode, n: int, *,
           theory: CH.Theory | None = None) -> OmegaCode:
    """The n-th one-step child of a proof code."""
    theory = theory or DEFAULT_THEORY
    if isinstance(code, Raw):
        parsed = classical_parse(code.n)
        if parsed is not None:
            return unfold(parsed, n, theory=theory)
        head = head_formula(code)
        if head is not None:
            return Axiomatic(head)                              # clause 7
        return Raw(0)                                           # clause 8
    if isinstance(code, Axiomatic):
        if _is_axiom(code.phi, theory):
            return Raw(0)                                       # clause 1
        return Axiomatic(code.phi)                              # clause 7
    if isinstance(code, Universal):
        if isinstance(code.phi, A.Forall):
            inst = A.sb(code.phi.body, [code.phi.var], [A.num(n)])
            return Pending(inst, code.e, n, 0)                  # clause 2
        return Axiomatic(code.phi)                              # clause 7
    if isinstance(code, Pending):
        try:
            out = M.step_eval(code.e, [code.m], code.z)
        except M.MalformedIndexError:
            out = None
        if not isinstance(out, M.Converged):
            return Pending(code.phi, code.e, code.m, code.z + 1)  # clause 3
        got = decode_omega(out.value)
        if head_formula(got) is not None:
            return got                                          # clause 4
        return Axiomatic(code.phi)                              # clause 5
    if isinstance(code, Inference):
        premises = [phi_of(c) for c in code.children]
        if follows_by_rule(code.phi, premises) and n < len(code.children):
            return code.children[n]                             # clause 6
        return Axiomatic(code.phi)                              # clause 7
    raise TypeError(code)


# --- local checking ---------------------------------------------------------------

@dataclass(frozen=True)
class Refutation:
    path: tuple[int, ...]
    reason: str


@dataclass
class LocalReport:
    explored: int = 0
    depth: int = 0
    verdict: str = "locally-correct"
    repetition: dict = field(default_factory=lambda: {
        "chains": 0, "steps": 0, "longest": 0})
    refutation: Refutation | None = None

    def to_json(self) -> dict:
        out = {"explored": self.explored, "depth": self.depth,
               "verdict": self.verdict, "repetition": dict(self.repetition)}
        if self.refutation is not None:
            out["refutation"] = {"path": list(self.refutation.path),
                                 "reason": self.refutation.reason}
        return out


def _resolve_pending(code: Pending, fuel: int, report: LocalReport):
    """Run a pending child to its value within fuel; None when it stays open.

    Fuel spent and the implied repetition-chain length are booked into the
    report's repetition stats: a pending that converges after u machine steps
    stands for a chain of u+1 unfold repetitions.
    """
    try:
        out = M.step_eval(code.e, [code.m], fuel)
    except M.MalformedIndexError:
        return None
    report.repetition["chains"] += 1
    spent = out.used if isinstance(out, M.Converged) else out.spent
    chain = max(spent - code.z + 1, 1)
    report.repetition["steps"] += chain
    report.repetition["longest"] = max(report.repetition["longest"], chain)
    if not isinstance(out, M.Converged):
        return None
    got = decode_omega(out.value)
    if head_formula(got) is not None:
        return got
    return Axiomatic(code.phi)


def check_local(code: OmegaCode, *, depth: int = 8, width: int = 4,
                fuel: int = 10 ** 5,
                theory: CH.Theory | None = None) -> LocalReport:
    """Breadth-first budgeted exploration of a proof code.

    Depth counts expansion levels (repetition steps are compressed away by
    resolving pendings directly); width bounds how many children of each
    universal node are probed.
    """
    theory = theory or DEFAULT_THEORY
    report = LocalReport()
    queue: deque[tuple[OmegaCode, tuple[int, ...], int]] = deque(
        [(code, (), 0)])
    saw_open = False

    def refute(path, reason) -> LocalReport:
        report.verdict = "refuted"
        report.refutation = Refutation(path, reason)
        return report

    while queue:
        node, path, d = queue.popleft()
        if isinstance(node, Raw):
            parsed = classical_parse(node.n)
            if parsed is None:
                return refute(path, f"opaque code {node.n} is not a proof")
            node = parsed
        if isinstance(node, Pending):
            got = _resolve_pending(node, fuel, report)
            if got is None:
                saw_open = True
                continue
            node = got
            if isinstance(node, Raw):
                parsed = classical_parse(node.n)
                if parsed is None:
                    return refute(path,
                                  f"pending resolved to the opaque code "
                                  f"{node.n}")
                node = parsed
        report.explored += 1
        report.depth = max(report.depth, d)
        if isinstance(node, Axiomatic):
            if not _is_axiom(node.phi, theory):
                return refute(path, "head is not an axiom")
            continue
        if d >= depth:
            continue          # deliberate exploration bound, not a failure
        if isinstance(node, Universal):
            if not isinstance(node.phi, A.Forall):
                return refute(path, "universal head is not a forall")
            x, body = node.phi.var, node.phi.body
            for n in range(width):
                child = unfold(node, n, theory=theory)
                got = _resolve_pending(child, fuel, report)
                if got is None:
                    saw_open = True
                    continue
                want = A.sb(body, [x], [A.num(n)])
                have = head_formula(got)
                if have != want:
                    return refute(path + (n,),
                                  f"child {n} proves the wrong instance")
                queue.append((got, path + (n,), d + 1))
            continue
        if isinstance(node, Inference):
            premises = [phi_of(c) for c in node.children]
            if not follows_by_rule(node.phi, premises):
                return refute(path, "no logical rule derives the head "
                                    "from the children")
            for n, child in enumerate(node.children):
                queue.append((child, path + (n,), d + 1))
            continue
        raise TypeError(node)

    if saw_open:
        report.verdict = "exhausted"
    return report
