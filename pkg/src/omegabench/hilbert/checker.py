"""Hilbert-style proof objects and their verification.

A proof is a sequence of formulas; each line must be a logical axiom, a
theory axiom, or follow from earlier lines by modus ponens or
generalization.  Hints are optional per-line justifications that make
checking fast and deterministic; without them the checker searches (modus
ponens candidates are looked up by matching consequents, with a scan cap).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ProofError
from ..syntax import ast as A
from ..syntax import coding as C
from ..syntax import descriptors as D
from ..syntax import parser as P
from . import axioms as AX

MP_SCAN_CAP = 10_000


@dataclass(frozen=True)
class Hint:
    kind: str                 # "logic" | "theory" | "mp" | "gen"
    j: int = -1               # mp: implication line; gen: premise line
    k: int = -1               # mp: antecedent line
    cert: object = None       # theory certificate, passed through


@dataclass(frozen=True)
class ProofObject:
    lines: tuple[A.Formula, ...]
    hints: tuple[Hint | None, ...] = ()

    @property
    def conclusion(self) -> A.Formula:
        return self.lines[-1]

    def hint_at(self, i: int) -> Hint | None:
        return self.hints[i] if i < len(self.hints) else None


class Theory:
    """Axiom-membership predicate for the non-logical part."""

    name = "logic"

    def is_axiom(self, phi: A.Formula, cert=None) -> bool:
        return False


class HATheory(Theory):
    name = "HA"

    def __init__(self, sig: D.Signature | None = None,
                 fuel: int = AX.DEFAULT_COMP_FUEL):
        self.sig = sig or D.DEFAULT_SIGNATURE
        self.fuel = fuel

    def is_axiom(self, phi, cert=None) -> bool:
        return AX.is_ha_axiom(phi, self.sig, self.fuel)


class QTheory(HATheory):
    name = "Q"

    def is_axiom(self, phi, cert=None) -> bool:
        return AX.is_q_axiom(phi, self.sig, self.fuel)


@dataclass
class ProofReport:
    ok: bool
    n_lines: int
    failures: list[tuple[int, str]] = field(default_factory=list)
    justifications: list[str] = field(default_factory=list)

    def ensure(self) -> "ProofReport":
        if not self.ok:
            i, why = self.failures[0]
            raise ProofError(f"line {i}: {why}")
        return self


def _check_line(i, phi, proof, theory, seen, imps_by_rhs, hint):
    if hint is not None:
        if hint.kind == "mp":
            j, k = hint.j, hint.k
            if not (0 <= j < i and 0 <= k < i):
                return None, "mp hint out of range"
            if proof.lines[j] == A.Imp(proof.lines[k], phi):
                return f"mp {j},{k}", None
            return None, "mp hint does not fit"
        if hint.kind == "gen":
            j = hint.j
            if not (0 <= j < i and isinstance(phi, A.Forall)
                    and phi.body == proof.lines[j]):
                return None, "gen hint does not fit"
            return f"gen {j}", None
        if hint.kind == "logic":
            got = AX.which_logical_axiom(phi)
            return (f"logic {got}", None) if got else (None, "not a logical axiom")
        if hint.kind == "theory":
            if theory.is_axiom(phi, hint.cert):
                return f"theory {theory.name}", None
            return None, f"not an axiom of {theory.name}"
        return None, f"unknown hint kind {hint.kind!r}"
    # hint-free search
    got = AX.which_logical_axiom(phi)
    if got:
        return f"logic {got}", None
    if theory.is_axiom(phi, None):
        return f"theory {theory.name}", None
    if isinstance(phi, A.Forall) and phi.body in seen:
        return f"gen {seen[phi.body]}", None
    cands = imps_by_rhs.get(phi, [])
    for n, (j, lhs) in enumerate(cands):
        if n >= MP_SCAN_CAP:
            break
        k = seen.get(lhs)
        if k is not None:
            return f"mp {j},{k}", None
    return None, "no justification found"


def check(proof: ProofObject, theory: Theory | None = None) -> ProofReport:
    theory = theory or Theory()
    seen: dict[A.Formula, int] = {}
    imps_by_rhs: dict[A.Formula, list] = {}
    report = ProofReport(ok=True, n_lines=len(proof.lines))
    for i, phi in enumerate(proof.lines):
        just, why = _check_line(i, phi, proof, theory, seen, imps_by_rhs,
                                proof.hint_at(i))
        if just is None:
            report.ok = False
            report.failures.append((i, why))
            report.justifications.append("?")
        else:
            report.justifications.append(just)
        if phi not in seen:
            seen[phi] = i
        if isinstance(phi, A.Imp):
            imps_by_rhs.setdefault(phi.rhs, []).append((i, phi.lhs))
    return report


# --- serialization --------------------------------------------------------------

def _remap_fids(phi, table: dict[int, int]):
    def rt(t):
        if isinstance(t, A.Succ):
            return A.succ(rt(t.arg))
        if isinstance(t, A.App):
            return A.App(table.get(t.fid, t.fid), tuple(rt(a) for a in t.args))
        return t

    if isinstance(phi, A.Eq):
        return A.Eq(rt(phi.lhs), rt(phi.rhs))
    if isinstance(phi, (A.And, A.Or, A.Imp)):
        return type(phi)(_remap_fids(phi.lhs, table), _remap_fids(phi.rhs, table))
    if isinstance(phi, (A.Forall, A.Exists)):
        return type(phi)(phi.var, _remap_fids(phi.body, table))
    return phi


def _used_fids(phi, acc: set):
    def wt(t):
        if isinstance(t, A.Succ):
            wt(t.arg)
        elif isinstance(t, A.App):
            acc.add(t.fid)
            for a in t.args:
                wt(a)

    if isinstance(phi, A.Eq):
        wt(phi.lhs), wt(phi.rhs)
    elif isinstance(phi, (A.And, A.Or, A.Imp)):
        _used_fids(phi.lhs, acc), _used_fids(phi.rhs, acc)
    elif isinstance(phi, (A.Forall, A.Exists)):
        _used_fids(phi.body, acc)


def proof_to_json(proof: ProofObject, sig: D.Signature | None = None) -> dict:
    sig = sig or D.DEFAULT_SIGNATURE
    fids: set[int] = set()
    for phi in proof.lines:
        _used_fids(phi, fids)
    interned = {f: D.program_to_json(sig.lookup(f))
                for f in sorted(fids) if f >= D.Signature.FIRST_FREE}
    hints = []
    for i in range(len(proof.lines)):
        h = proof.hint_at(i)
        if h is None:
            hints.append(None)
        else:
            d = {"kind": h.kind}
            if h.kind == "mp":
                d["j"], d["k"] = h.j, h.k
            elif h.kind == "gen":
                d["j"] = h.j
            if h.cert is not None:
                d["cert"] = h.cert
            hints.append(d)
    return {"lines": [P.print_formula(l) for l in proof.lines],
            "hints": hints,
            "interned": {str(k): v for k, v in interned.items()}}


def proof_from_json(data: dict, sig: D.Signature | None = None) -> ProofObject:
    sig = sig or D.DEFAULT_SIGNATURE
    table: dict[int, int] = {}
    for fid_s, pj in sorted(data.get("interned", {}).items(),
                            key=lambda kv: int(kv[0])):
        table[int(fid_s)] = sig.intern(D.program_from_json(pj))
    lines = tuple(_remap_fids(P.parse_formula(s), table)
                  for s in data["lines"])
    hints = []
    for h in data.get("hints", []) or [None] * len(lines):
        if h is None:
            hints.append(None)
        else:
            hints.append(Hint(kind=h["kind"], j=h.get("j", -1),
                              k=h.get("k", -1), cert=h.get("cert")))
    return ProofObject(lines=lines, hints=tuple(hints))


def encode_proof(proof: ProofObject) -> int:
    """Sequence code of the line codes (the checker-facing numeric form)."""
    return C.encode([C.encode(l) for l in proof.lines])
