"""Ordinal notations: 0, successor 2^d, limit 3*5^e, with certificates.

Membership in the notation system is Pi-1-1, so it is replaced here by
constructor discipline: every public constructor returns a Notation whose
limits carry an EnumCert naming the builder that produced the enumerator
plus a log of machine probes, and the comparison lt_O trusts structure plus
probing.  Probing a limit runs the enumerator index under fuel, so Unknown
(fuel or probe budget exhausted) is a first-class verdict.

Numeric rendering is partial: render(d) is the natural the notation denotes,
or None once the value cannot be materialized (the cap is RENDER_CAP_BITS on
the bit length).  Notation addition exists twice -- structurally (plus_O)
and as a genuine machine index built with the recursion theorem
(plus_O_index) -- and the two agree through render on renderable inputs
because the structural limit case embeds the very same runtime-built
enumerator index.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import machine as M
from .errors import CertificateError, NativeOverflow
from .syntax import coding as C
from .syntax import descriptors as D

RENDER_CAP_BITS = 1 << 20     # max bit length of a rendered value
PROBE_FUEL = 10 ** 6
PROBE_BUDGET = 16


class Unknown:
    """Verdict for comparisons that exhaust their probing budget."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Unknown"

    def __bool__(self):
        raise TypeError("Unknown is not a truth value; compare explicitly")


UNKNOWN = Unknown()


# --- notations ---------------------------------------------------------------

class Notation:
    __slots__ = ()


@dataclass(frozen=True)
class Zero(Notation):
    pass


@dataclass(frozen=True)
class Succ(Notation):
    pred: Notation


@dataclass(frozen=True)
class Lim(Notation):
    e: int                                    # machine index of the enumerator
    cert: "EnumCert" = field(compare=False)


@dataclass
class EnumCert:
    builder: str                              # provenance tag
    params: dict = field(default_factory=dict)
    probes: list = field(default_factory=list)   # [(n, value, fuel_used)], n ascending
    notation_of: Callable[[int], "Notation | None"] | None = \
        field(default=None, repr=False)       # structural probe, when derivable


def fin(n: int) -> Notation:
    """The finite notation: n-fold successor of zero."""
    if n < 0:
        raise ValueError("finite notations index naturals")
    d: Notation = Zero()
    for _ in range(n):
        d = Succ(d)
    return d


def render(d: Notation) -> int | None:
    """The natural number the notation denotes, or None above the cap."""
    spine = []
    while isinstance(d, Succ):
        spine.append(None)
        d = d.pred
    if isinstance(d, Zero):
        v = 0
    elif isinstance(d, Lim):
        if d.e > LIM35_MAX_EXP:
            return None
        v = 3 * 5 ** d.e
    else:
        raise TypeError(d)
    for _ in spine:
        if v >= RENDER_CAP_BITS:
            return None
        v = 1 << v
    return v


LIM35_MAX_EXP = 1 << 16      # mirrors the lim35 native's materialization bound


# --- probing -----------------------------------------------------------------

def probe_value(lim: Lim, n: int, fuel: int = PROBE_FUEL) -> int | None:
    """{e}(n) under fuel, logged in the certificate; None if unavailable.

    Appending to the log re-checks the strict-increase invariant: a probe
    that definitely fails it is a refutation of the certificate.
    """
    for (m, v, _) in lim.cert.probes:
        if m == n:
            return v
    try:
        out = M.step_eval(lim.e, [n], fuel)
    except M.MalformedIndexError:
        return None
    if not isinstance(out, M.Converged):
        return None
    prev = [(m, v) for (m, v, _) in lim.cert.probes if m < n]
    if prev:
        _, pv = max(prev)
        a, b = from_value(pv), from_value(out.value)
        if a is None or b is None or lt_O(a, b, fuel=fuel) is False:
            raise CertificateError(
                f"enumerator probe at n={n} does not increase: "
                f"{pv} then {out.value}")
    lim.cert.probes.append((n, out.value, out.used))
    lim.cert.probes.sort()
    return out.value


def probe_notation(lim: Lim, n: int, fuel: int = PROBE_FUEL) -> Notation | None:
    """A notation for {e}(n): structural if the builder supports it, else
    recovered from the value's shape."""
    if lim.cert.notation_of is not None:
        got = lim.cert.notation_of(n)
        if got is not None:
            return got
    v = probe_value(lim, n, fuel)
    return from_value(v) if v is not None else None


def from_value(z: int) -> Notation | None:
    """Recover a notation from a value's multiplicative shape.

    Limits recovered this way carry a "value" certificate: their enumerator
    is probed honestly but has no trusted provenance.
    """
    spine = 0
    while True:
        if z == 0:
            d: Notation = Zero()
            break
        if z & (z - 1) == 0:
            spine += 1
            z = z.bit_length() - 1
            continue
        if z % 3 == 0:
            q, f = z // 3, 0
            while q % 5 == 0:
                q //= 5
                f += 1
            if q == 1:
                d = Lim(f, EnumCert("value"))
                break
        return None
    for _ in range(spine):
        d = Succ(d)
    return d


# --- comparison ----------------------------------------------------------------

def lt_O(a: Notation, b: Notation, *, fuel: int = PROBE_FUEL,
         probes: int = PROBE_BUDGET):
    """a <_O b, by descent on b: a <_O 2^d iff a <=_O d, and a <_O 3*5^e iff
    a <=_O {e}(n) for some n.  Returns True, False, or UNKNOWN."""
    if a == b:
        return False
    saw_unknown = False
    while True:
        if isinstance(b, Zero):
            return UNKNOWN if saw_unknown else False
        if isinstance(b, Succ):
            if a == b.pred:
                return True
            b = b.pred
            continue
        if isinstance(b, Lim):
            for n in range(probes):
                bn = probe_notation(b, n, fuel)
                if bn is None:
                    saw_unknown = True
                    continue
                if a == bn:
                    return True
                r = lt_O(a, bn, fuel=fuel, probes=probes)
                if r is True:
                    return True
                if r is UNKNOWN:
                    saw_unknown = True
            return UNKNOWN
        raise TypeError(b)


def le_O(a: Notation, b: Notation, *, fuel: int = PROBE_FUEL,
         probes: int = PROBE_BUDGET):
    if a == b:
        return True
    return lt_O(a, b, fuel=fuel, probes=probes)


# --- machine-side primitives ---------------------------------------------------

def _nat_lim35(e: int) -> int:
    """3 * 5**e, the limit-notation shape (backs descriptor id F_LIM35).

    Total on paper; raises NativeOverflow above the materialization bound
    (evaluation contexts treat that as resource exhaustion, never a value).
    """
    if e > LIM35_MAX_EXP:
        raise NativeOverflow("3*5**e is too large to materialize "
                             f"(exponent has {e.bit_length()} bits)")
    return 3 * 5 ** e


def _nat_o_pow2(x: int) -> int:
    if x > RENDER_CAP_BITS:
        raise NativeOverflow("2**x is too large to materialize "
                             f"(exponent has {x.bit_length()} bits)")
    return 1 << x


def _nat_o_succ_arg(b: int) -> int:
    """c+1 if b = 2^c, else 0."""
    if b > 0 and b & (b - 1) == 0:
        return b.bit_length()
    return 0


def _nat_o_lim_arg(b: int) -> int:
    """f+1 if b = 3*5^f, else 0."""
    if b == 0 or b % 3:
        return 0
    q, f = b // 3, 0
    while q % 5 == 0:
        q //= 5
        f += 1
    return f + 1 if q == 1 else 0


def _nat_o_overflow(_: int) -> int:
    raise NativeOverflow("value exceeds every materialization bound")


D.register_native("lim35", 1, _nat_lim35)
D.register_native("o_pow2", 1, _nat_o_pow2)
D.register_native("o_succ_arg", 1, _nat_o_succ_arg)
D.register_native("o_lim_arg", 1, _nat_o_lim_arg)
D.register_native("o_overflow", 1, _nat_o_overflow)

_OVERFLOW_ENUM = D.compose(D.Native("o_overflow"), D.Proj(0, 1))


def _univ(e_prog: D.Program, *args: D.Program) -> D.Program:
    return D.Comp(D.Univ(len(args)), (e_prog, *args))


def _build_h_template() -> D.Program:
    """(s, a, f, n) -> {s}(a, 2^{{f}(n)}): the limit-clause enumerator body."""
    s, a, f, n = D.projs(4, 0, 1, 2, 3)
    en = _univ(f, n)
    return _univ(s, a, D.compose(D.Native("o_pow2"), en))


H_TEMPLATE = _build_h_template()
H_TEMPLATE_IX = M.program_index(H_TEMPLATE)


def h_index(plus_ix: int, a_value: int, e: int) -> int:
    """Index with {h}(n) = {plus_ix}(a_value, 2^{{e}(n)})."""
    return M.smn(M.smn(H_TEMPLATE_IX, [plus_ix, a_value]), [e])


def _build_plus_step() -> D.Program:
    """(self, a, b) -> a +_O b by one unfolding of the defining cases.

    Branching picks an index and dispatches through Univ, so only the taken
    branch is evaluated.
    """
    def branch(p: D.Program) -> int:
        return M.program_index(p)

    s3, a3, b3 = D.projs(3, 0, 1, 2)
    i_zero = branch(a3)
    sa = D.compose(D.Native("o_succ_arg"), b3)
    la = D.compose(D.Native("o_lim_arg"), b3)
    pred_sa = D.compose(D.MONUS, sa, D.const(1, 3))
    i_succ = branch(D.compose(D.Native("o_pow2"), _univ(s3, a3, pred_sa)))
    pred_la = D.compose(D.MONUS, la, D.const(1, 3))
    inner = D.compose(D.Native("smn2"), D.const(H_TEMPLATE_IX, 3), s3, a3)
    i_lim = branch(D.compose(D.Native("lim35"),
                             D.compose(D.Native("smn1"), inner, pred_la)))
    i_other = branch(D.const(7, 3))
    sel = D.cond(D.compose(D.SGN, b3), D.const(i_zero, 3),
                 D.cond(D.compose(D.SGN, sa),
                        D.cond(D.compose(D.SGN, la),
                               D.const(i_other, 3), D.const(i_lim, 3)),
                        D.const(i_succ, 3)))
    return _univ(sel, s3, a3, b3)


PLUS_STEP = _build_plus_step()
PLUS_INDEX = M.fix(M.program_index(PLUS_STEP))


def plus_O_index() -> int:
    """The recursion-theorem index for value-level notation addition.

    {plus}(a, b) follows the case split on b's shape -- a for 0, 2^{a +_O c}
    for 2^c, 3*5^{H(a,e)} for 3*5^e with {H(a,e)}(n) = a +_O 2^{{e}(n)} --
    and returns 7 on every other shape.
    """
    return PLUS_INDEX


def plus_O(a: Notation, b: Notation) -> Notation:
    """Notation addition by recursion on b.

    The limit case builds, at run time, the same enumerator index the
    machine form uses, so render(plus_O(a, b)) equals the machine value
    whenever both materialize; it needs render(a), falling back to an
    enumerator that honestly refuses to materialize when a has no value.
    """
    spine = 0
    while isinstance(b, Succ):
        spine += 1
        b = b.pred
    if isinstance(b, Zero):
        out = a
    elif isinstance(b, Lim):
        ra = render(a)
        if ra is None:
            e_new = M.program_index(_OVERFLOW_ENUM)
        else:
            e_new = h_index(PLUS_INDEX, ra, b.e)
        inner_probe = b.cert.notation_of
        blim = b

        def notation_of(n: int, _a=a, _b=blim, _p=inner_probe):
            got = _p(n) if _p is not None else probe_notation(_b, n)
            return plus_O(_a, Succ(got)) if got is not None else None

        out = Lim(e_new, EnumCert("plus", {"a": to_json(a), "b": to_json(blim)},
                                  notation_of=notation_of))
    else:
        raise TypeError(b)
    for _ in range(spine):
        out = Succ(out)
    return out


# --- limit constructors ----------------------------------------------------------

def fin_enum_index() -> int:
    """Index of n -> render(fin(n)): base 0, step 2^previous."""
    prog = D.PrimRec(D.ZeroFn(0),
                     D.compose(D.Native("o_pow2"), D.Proj(0, 2)))
    return M.program_index(prog)


def omega_limit() -> Notation:
    """The limit notation over the finite-notation enumerator."""
    return Lim(fin_enum_index(), EnumCert("fin", notation_of=fin))


def l_index(e: int) -> int:
    """Index of the summing enumerator, built without any probing."""
    base = D.compose(D.Native("o_pow2"),
                     _univ(D.Const(e, 0), D.ZeroFn(0)))
    step = _univ(D.Const(PLUS_INDEX, 2), D.Proj(0, 2),
                 D.compose(D.Native("o_pow2"),
                           _univ(D.Const(e, 2),
                                 D.compose(D.SuccFn(), D.Proj(1, 2)))))
    return M.program_index(D.PrimRec(base, step))


def limit_L(e: int, *, probes: int = 4, fuel: int = PROBE_FUEL) -> int:
    """The summing enumerator: {L(e)}(n) = 2^{{e}(0)} +_O ... +_O 2^{{e}(n)}.

    Probes {e}(n) for n < probes and raises CertificateError naming the
    first n whose output is not a notation shape.
    """
    for n in range(probes):
        try:
            out = M.step_eval(e, [n], fuel)
        except M.MalformedIndexError:
            raise CertificateError(f"enumerator index does not decode (n={n})")
        if isinstance(out, M.Converged) and from_value(out.value) is None:
            raise CertificateError(
                f"enumerator output at n={n} is not a notation shape: "
                f"{out.value}")
    return l_index(e)


def limit_G(e: int, notation_of: Callable[[int], Notation | None] | None = None,
            *, probes: int = 4, fuel: int = PROBE_FUEL) -> Notation:
    """3*5^{L(e)}: the limit over the partial sums of 2^{{e}(n)}.

    When notation_of gives structural notations for {e}(n), the derived
    certificate folds them through plus_O for structural probing.
    """
    l_ix = limit_L(e, probes=probes, fuel=fuel)
    derived = None
    if notation_of is not None:
        def derived(n: int, _f=notation_of):
            acc: Notation | None = None
            for k in range(n + 1):
                ek = _f(k)
                if ek is None:
                    return None
                acc = Succ(ek) if acc is None else plus_O(acc, Succ(ek))
            return acc
    lim = Lim(l_ix, EnumCert("sum", {"e": e}, notation_of=derived))
    for n in range(min(probes, 3)):
        probe_value(lim, n, fuel)
    return lim


# --- serialization ----------------------------------------------------------------

def to_json(d: Notation) -> dict:
    if isinstance(d, Zero):
        return {"kind": "zero"}
    if isinstance(d, Succ):
        spine = 0
        while isinstance(d, Succ):
            spine += 1
            d = d.pred
        return {"kind": "succ", "count": spine, "pred": to_json(d)}
    if isinstance(d, Lim):
        return {"kind": "lim", "e": d.e,
                "cert": {"builder": d.cert.builder,
                         "params": d.cert.params,
                         "probes": [list(p) for p in d.cert.probes]}}
    raise TypeError(d)


def from_json(data: dict) -> Notation:
    kind = data["kind"]
    if kind == "zero":
        return Zero()
    if kind == "succ":
        d = from_json(data["pred"])
        for _ in range(data.get("count", 1)):
            d = Succ(d)
        return d
    if kind == "lim":
        cd = data.get("cert", {})
        builder = cd.get("builder", "user")
        notation_of = fin if builder == "fin" else None
        cert = EnumCert(builder, cd.get("params", {}),
                        [tuple(p) for p in cd.get("probes", [])],
                        notation_of)
        return Lim(data["e"], cert)
    raise ValueError(f"unknown notation kind {kind!r}")


def audit(d: Notation, *, fuel: int = PROBE_FUEL, probes: int = 3) -> list[str]:
    """Structural re-check of a notation's certificates.

    Returns a list of problems (empty means the audit passed): successor
    spines must end in Zero or a limit, and limit probe logs must strictly
    increase (probing fresh values if the log is shorter than `probes`).
    """
    problems: list[str] = []
    while isinstance(d, Succ):
        d = d.pred
    if isinstance(d, Zero):
        return problems
    if not isinstance(d, Lim):
        return [f"unexpected notation node {type(d).__name__}"]
    try:
        for n in range(max(probes, len(d.cert.probes))):
            if n >= probes and all(m != n for m, _, _ in d.cert.probes):
                continue
            v = probe_value(d, n, fuel)
            if v is None:
                problems.append(f"probe {n} did not converge under fuel")
                continue
            inner = from_value(v)
            if inner is None:
                problems.append(f"probe {n} value {v} is not a notation shape")
            elif isinstance(inner, (Succ, Lim)):
                problems.extend(f"probe {n}: {p}"
                                for p in audit(inner, fuel=fuel, probes=0))
    except CertificateError as exc:
        problems.append(str(exc))
    return problems


# --- CLI literals ------------------------------------------------------------------

def parse_notation(text: str, load_file=None) -> Notation:
    """Notation literals: 0, fin(k), s(<literal>), lim(<index file>)."""
    s = text.strip()
    if s == "0":
        return Zero()
    if s.startswith("fin(") and s.endswith(")"):
        return fin(int(s[4:-1]))
    if s.startswith("s(") and s.endswith(")"):
        return Succ(parse_notation(s[2:-1], load_file))
    if s.startswith("lim(") and s.endswith(")"):
        inner = s[4:-1].strip()
        if inner == "fin":
            return omega_limit()
        if load_file is None:
            raise ValueError("lim(<file>) needs a file loader")
        prog = D.program_from_json(load_file(inner))
        e = M.program_index(prog)
        lim = Lim(e, EnumCert("user"))
        probe_value(lim, 0)
        return lim
    raise ValueError(f"bad notation literal {text!r}")
