"""Certified construction of omega proof codes.

Each constructor verifies the local condition its node claims before
handing the node back, so a code assembled exclusively through this module
is locally correct by construction; violations raise BuildError naming the
offending sub-part.  ``build_p`` assembles a code from a JSON-style recipe.
"""
from __future__ import annotations

from .. import machine as M
from ..errors import BuildError
from ..hilbert import axioms as AX
from ..hilbert import checker as CH
from ..syntax import ast as A
from ..syntax import coding as C
from ..syntax import descriptors as D
from .codes import (Axiomatic, Inference, OmegaCode, Raw, Universal,
                    decode_omega, head_formula)
from .unfold import DEFAULT_THEORY, follows_by_rule, _is_axiom

__all__ = ["build_axiomatic", "build_inference", "build_universal",
           "axiomatic_enumerator", "build_p"]

PROBE_FUEL = 10 ** 5


def build_axiomatic(phi: A.Formula, *,
                    theory: CH.Theory | None = None) -> Axiomatic:
    theory = theory or DEFAULT_THEORY
    if not _is_axiom(phi, theory):
        raise BuildError(f"axiomatic head is not an axiom: {phi}")
    return Axiomatic(phi)


def build_inference(phi: A.Formula, children: tuple[OmegaCode, ...] | list,
                    ) -> Inference:
    children = tuple(children)
    if not children:
        raise BuildError("inference nodes need at least one child")
    premises = []
    for i, child in enumerate(children):
        if not isinstance(child, OmegaCode):
            raise BuildError(f"inference child {i} is not a proof code")
        head = head_formula(child)
        if head is None:
            raise BuildError(f"inference child {i} has no formula head")
        premises.append(head)
    if not follows_by_rule(phi, premises):
        raise BuildError("no logical rule derives the head from the "
                         "children: " + ", ".join(str(p) for p in premises))
    return Inference(phi, children)


def axiomatic_enumerator(phi: A.Formula, *,
                         theory: CH.Theory | None = None,
                         probes: int = 3) -> int:
    """Index of n -> code of Axiomatic(body[x := n-bar]) for phi = forall x body.

    The program builds the child code arithmetically (pair the axiomatic
    tag onto the substituted formula code), so it is a genuine total machine
    index, not a table.  The probed instances must actually be axioms.
    """
    theory = theory or DEFAULT_THEORY
    if not isinstance(phi, A.Forall):
        raise BuildError("an axiomatic enumerator needs a forall head")
    x, body = phi.var, phi.body
    for n in range(probes):
        inst = A.sb(body, [x], [A.num(n)])
        if not _is_axiom(inst, theory):
            raise BuildError(f"instance at n={n} is not an axiom: {inst}")
    prog = D.compose(
        D.Native("pair"),
        D.Const(C.TAG_OAX, 1),
        D.compose(D.Native("sb1"),
                  D.Const(C.encode(body), 1),
                  D.Const(C.encode(A.Var(x)), 1),
                  D.compose(D.Native("nm"), D.Proj(0, 1))))
    return M.program_index(prog)


def build_universal(phi: A.Formula, e: int, *, probes: int = 3,
                    fuel: int = PROBE_FUEL,
                    theory: CH.Theory | None = None) -> Universal:
    """A universal node after probing its enumerator.

    Probed children must converge, decode to codes with formula heads, and
    prove exactly the instances of the head's body.
    """
    if not isinstance(phi, A.Forall):
        raise BuildError("universal head must be a forall")
    x, body = phi.var, phi.body
    for n in range(probes):
        try:
            out = M.step_eval(e, [n], fuel)
        except M.MalformedIndexError:
            raise BuildError(f"enumerator index {e} does not decode")
        if not isinstance(out, M.Converged):
            raise BuildError(f"enumerator did not converge at n={n} "
                             f"within fuel {fuel}")
        child = decode_omega(out.value)
        have = head_formula(child)
        want = A.sb(body, [x], [A.num(n)])
        if have != want:
            raise BuildError(f"child {n} proves {have}, wanted {want}")
    return Universal(phi, e)


def build_p(recipe: dict, *, theory: CH.Theory | None = None,
            probes: int = 3, fuel: int = PROBE_FUEL) -> OmegaCode:
    """Assemble a certified code from a JSON-style recipe.

    {"tag": "axiomatic", "formula": ...}
    {"tag": "inference", "formula": ..., "children": [...]}
    {"tag": "universal", "formula": ..., "index": e}   explicit enumerator
    {"tag": "universal", "formula": ...}               axiomatic enumerator
    {"tag": "raw", "value": n}                         passed through
    """
    from ..syntax.parser import parse_formula
    tag = recipe.get("tag")
    raw = recipe.get("formula")
    phi = parse_formula(raw) if isinstance(raw, str) else raw
    if tag == "axiomatic":
        return build_axiomatic(phi, theory=theory)
    if tag == "inference":
        kids = []
        for i, sub in enumerate(recipe.get("children", [])):
            try:
                kids.append(build_p(sub, theory=theory, probes=probes,
                                    fuel=fuel))
            except BuildError as err:
                raise BuildError(f"inference child {i}: {err}") from None
        return build_inference(phi, kids)
    if tag == "universal":
        if "index" in recipe:
            e = int(recipe["index"])
        else:
            e = axiomatic_enumerator(phi, theory=theory, probes=probes)
        return build_universal(phi, e, probes=probes, fuel=fuel,
                               theory=theory)
    if tag == "raw":
        return Raw(int(recipe["value"]))
    raise BuildError(f"unknown recipe tag {tag!r}")
