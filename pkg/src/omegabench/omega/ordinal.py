"""Ordinal height notations for omega proof codes.

``g_of`` assigns each proof code a notation bounding the height of its
proof tree:

    axiomatic heads            -> 0
    universal/inference nodes  -> successor of the limit over partial sums
                                  2^{g(child 0)} +_O ... +_O 2^{g(child n)}
    pending (repetition) nodes -> successor of the limit of
                                  g(resolved child) +_O n

The same recursion exists as a genuine machine index (``g_index()``), built
by the recursion theorem over the one-step unfold map.  The two agree after
rendering wherever a value materializes at all — which, honestly, is only
the axiomatic class (every other class tops a limit whose value outgrows
memory); everywhere else agreement is checked at the level of the limits'
enumerator probes, and the structural side embeds the very enumerator
indices the machine side constructs, so the comparison is exact.
"""
from __future__ import annotations

from .. import kleene_o as O
from .. import machine as M
from ..hilbert import checker as CH
from ..syntax import descriptors as D
from .codes import OmegaCode, Axiomatic, Inference, Pending, Raw, Universal, \
    classical_parse, decode_omega, encode_omega, head_formula
from .unfold import DEFAULT_THEORY, classify_node, unfold

__all__ = ["g_of", "g_index", "h_of", "j_of", "machine_g", "OM_UNFOLD_FUEL"]

OM_UNFOLD_FUEL = 10 ** 5

_CLASS_NUMS = {"axiomatic": 0, "universal": 1, "inference": 2,
               "repetition": 3, "raw": 4}


def _nat_om_unfold(a: int, n: int) -> int:
    """Total one-step child map on machine-form codes."""
    return encode_omega(unfold(decode_omega(a), n, theory=DEFAULT_THEORY))


def _nat_om_tag(a: int) -> int:
    return _CLASS_NUMS[classify_node(decode_omega(a))]


def _nat_o_l(e: int) -> int:
    return O.l_index(e)


D.register_native("om_unfold", 2, _nat_om_unfold)
D.register_native("om_tag", 1, _nat_om_tag)
D.register_native("o_L", 1, _nat_o_l)


def _univ(e_prog: D.Program, *args: D.Program) -> D.Program:
    return D.Comp(D.Univ(len(args)), (e_prog, *args))


def _build_h_template() -> D.Program:
    """(g, a, n) -> {g}(unfold(a, n)): child heights of a node."""
    g, a, n = D.projs(3, 0, 1, 2)
    return _univ(g, D.compose(D.Native("om_unfold"), a, n))


def _build_j_template() -> D.Program:
    """(g, a, n) -> {g}(unfold(a, 0)) +_O n: repetition-chain heights."""
    g, a, n = D.projs(3, 0, 1, 2)
    resolved = _univ(g, D.compose(D.Native("om_unfold"), a,
                                  D.ZeroFn(3)))
    fin_prog = D.PrimRec(D.ZeroFn(0),
                         D.compose(D.Native("o_pow2"), D.Proj(0, 2)))
    return _univ(D.Const(O.PLUS_INDEX, 3), resolved,
                 D.compose(fin_prog, n))


H_OM_TEMPLATE_IX = M.program_index(_build_h_template())
J_OM_TEMPLATE_IX = M.program_index(_build_j_template())


def _smn2(template_ix: D.Program, *rest: D.Program) -> D.Program:
    return D.compose(D.Native("smn2"), template_ix, *rest)


def _build_g_step() -> D.Program:
    """(self, a) -> height value of the code a.

    Dispatch goes through index constants and a universal application so
    that only the selected branch is ever evaluated; the non-axiomatic
    branches top out in 3*5^e / 2^x shapes whose materialization the o_pow2
    and lim35 natives honestly refuse beyond their caps.
    """
    self_p, a = D.projs(2, 0, 1)
    tag = D.compose(D.Native("om_tag"), a)

    zero_branch = D.ZeroFn(2)
    h_ix = _smn2(D.Const(H_OM_TEMPLATE_IX, 2), self_p, a)
    ui_branch = D.compose(D.Native("o_pow2"),
                          D.compose(D.Native("lim35"),
                                    D.compose(D.Native("o_L"), h_ix)))
    j_ix = _smn2(D.Const(J_OM_TEMPLATE_IX, 2), self_p, a)
    pend_branch = D.compose(D.Native("o_pow2"),
                            D.compose(D.Native("lim35"), j_ix))

    iz = D.Const(M.program_index(zero_branch), 2)
    iu = D.Const(M.program_index(ui_branch), 2)
    ip = D.Const(M.program_index(pend_branch), 2)
    two = D.Const(2, 2)
    three = D.Const(3, 2)
    sel = D.cond(tag, iz,
                 D.cond(D.compose(D.MONUS, tag, two), iu,
                        D.cond(D.compose(D.MONUS, tag, three), ip, iz)))
    return _univ(sel, self_p, a)


_G_INDEX: int | None = None


def g_index() -> int:
    """The machine form of the height assignment (a fixed point index)."""
    global _G_INDEX
    if _G_INDEX is None:
        _G_INDEX = M.fix(M.program_index(_build_g_step()))
    return _G_INDEX


def machine_g(code: OmegaCode, fuel: int = OM_UNFOLD_FUEL):
    """Run the machine form on a code; the raw machine outcome."""
    return M.step_eval(g_index(), [encode_omega(code)], fuel)


def h_of(code: OmegaCode) -> int:
    """The child-height enumerator index the machine form builds for code."""
    return M.smn(H_OM_TEMPLATE_IX, [g_index(), encode_omega(code)])


def j_of(code: OmegaCode) -> int:
    """The repetition-chain enumerator index for a pending code."""
    return M.smn(J_OM_TEMPLATE_IX, [g_index(), encode_omega(code)])


def _step_to_resolution(code: Pending, fuel: int):
    """(fully-stepped pending, resolved child) or (code, None) if open."""
    try:
        out = M.step_eval(code.e, [code.m], fuel)
    except M.MalformedIndexError:
        return code, None
    if not isinstance(out, M.Converged):
        return code, None
    stepped = Pending(code.phi, code.e, code.m, max(out.used, code.z))
    got = decode_omega(out.value)
    if head_formula(got) is None:
        got = Axiomatic(code.phi)
    return stepped, got


def g_of(code: OmegaCode, *, theory: CH.Theory | None = None,
         probes: int = 3, fuel: int = O.PROBE_FUEL) -> O.Notation:
    """Structural height notation of a proof code.

    The limits embed exactly the enumerator indices the machine form builds
    (the smn-specializations of the shared templates over ``g_index()``),
    with derived certificates that rebuild child heights structurally.

    Pendings are first stepped to the fuel count at which they resolve, so
    the height returned is that of the last pending of the repetition
    chain; the finitely many repetitions above it are compressed away.  At
    that point the structural certificate and the machine enumerator agree
    probe for probe whenever the machine can materialize at all.
    """
    theory = theory or DEFAULT_THEORY
    if isinstance(code, Raw):
        parsed = classical_parse(code.n)
        if parsed is None:
            return O.Zero()
        code = parsed
    if isinstance(code, Axiomatic):
        return O.Zero()
    if isinstance(code, (Universal, Inference)):
        def child_height(n: int) -> O.Notation | None:
            child = unfold(code, n, theory=theory)
            return g_of(child, theory=theory, probes=probes, fuel=fuel)

        lim = O.limit_G(h_of(code), child_height, probes=probes, fuel=fuel)
        return O.Succ(lim)
    if isinstance(code, Pending):
        stepped, resolved = _step_to_resolution(code, fuel)
        base = None if resolved is None else \
            g_of(resolved, theory=theory, probes=probes, fuel=fuel)

        def chain_height(n: int, _b=base) -> O.Notation | None:
            if _b is None:
                return None
            return O.plus_O(_b, O.fin(n))

        j_ix = j_of(stepped)
        lim = O.Lim(j_ix, O.EnumCert("pend-sum", {"e": j_ix},
                                     notation_of=chain_height))
        for n in range(min(probes, 3)):
            O.probe_value(lim, n, fuel)
        return O.Succ(lim)
    raise TypeError(code)
