"""Descriptions of (partial) recursive functions as combinator trees.

The primitive recursive fragment is zero / succ / proj / comp / primrec,
extended with two convenience leaves:

  * Const(c, arity)  -- definable as succ^c . zero, kept primitive so that
    numeral-sized constants stay polylog;
  * Native(name)     -- a named total function implemented in Python and
    resolved through a registry at evaluation time.  These stand in for the
    arithmetization primitives (numeral-of, substitution-on-codes, sequence
    operations, recognizers) that are primitive recursive on paper but not
    worth programming as raw combinators.

Mu (unbounded search) and Univ (universal application of an index) extend the
grammar to full partial recursiveness; they are only evaluated by the fuelled
machine (machine.py), never by eval_pr.

PrimRec convention: f = PrimRec(base, step) has arity(base)+1, recursion on
the FIRST argument:  f(0, xs) = base(xs);  f(n+1, xs) = step(f(n, xs), n, xs).
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import NotPrimitiveRecursive, UnknownNative


class Program:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class ZeroFn(Program):
    arity_: int


@dataclass(frozen=True, slots=True)
class SuccFn(Program):
    pass


@dataclass(frozen=True, slots=True)
class Proj(Program):
    i: int
    n: int

    def __post_init__(self):
        if not 0 <= self.i < self.n:
            raise ValueError(f"Proj({self.i},{self.n})")


@dataclass(frozen=True, slots=True)
class Comp(Program):
    f: Program
    gs: tuple[Program, ...]


@dataclass(frozen=True, slots=True)
class PrimRec(Program):
    base: Program
    step: Program


@dataclass(frozen=True, slots=True)
class Const(Program):
    c: int
    arity_: int


@dataclass(frozen=True, slots=True)
class Native(Program):
    name: str


@dataclass(frozen=True, slots=True)
class Mu(Program):
    """mu y [ body(y, xs) = 0 ]; arity(body) - 1."""
    body: Program


@dataclass(frozen=True, slots=True)
class Univ(Program):
    """(e, x1..xk) -> {e}(x1..xk); arity k+1."""
    k: int


# --- native registry ------------------------------------------------------

_NATIVES: dict[str, tuple[int, object]] = {}


def register_native(name: str, arity: int, fn, replace: bool = False) -> None:
    if name in _NATIVES and not replace:
        old_arity, _ = _NATIVES[name]
        if old_arity != arity:
            raise ValueError(f"native {name} re-registered with new arity")
        return
    _NATIVES[name] = (arity, fn)


def native_arity(name: str) -> int:
    try:
        return _NATIVES[name][0]
    except KeyError:
        raise UnknownNative(name) from None


def native_impl(name: str):
    try:
        return _NATIVES[name][1]
    except KeyError:
        raise UnknownNative(name) from None


def native_registered(name: str) -> bool:
    return name in _NATIVES


def arity(p: Program) -> int:
    if isinstance(p, ZeroFn):
        return p.arity_
    if isinstance(p, SuccFn):
        return 1
    if isinstance(p, Proj):
        return p.n
    if isinstance(p, Comp):
        if not p.gs:
            raise ValueError("Comp with no inner functions")
        n = arity(p.gs[0])
        for g in p.gs[1:]:
            if arity(g) != n:
                raise ValueError("Comp inner arity mismatch")
        if arity(p.f) != len(p.gs):
            raise ValueError("Comp outer arity mismatch")
        return n
    if isinstance(p, PrimRec):
        b = arity(p.base)
        if arity(p.step) != b + 2:
            raise ValueError("PrimRec step arity must be base+2")
        return b + 1
    if isinstance(p, Const):
        return p.arity_
    if isinstance(p, Native):
        return native_arity(p.name)
    if isinstance(p, Mu):
        b = arity(p.body)
        if b < 1:
            raise ValueError("Mu body needs the search argument")
        return b - 1
    if isinstance(p, Univ):
        return p.k + 1
    raise TypeError(p)


def is_pr(p: Program) -> bool:
    """True if the tree avoids Mu/Univ (totality by construction)."""
    if isinstance(p, (Mu, Univ)):
        return False
    if isinstance(p, Comp):
        return is_pr(p.f) and all(is_pr(g) for g in p.gs)
    if isinstance(p, PrimRec):
        return is_pr(p.base) and is_pr(p.step)
    return True


def eval_pr(p: Program, args: list[int] | tuple[int, ...]) -> int:
    """Total evaluation of a primitive recursive descriptor.

    Direct recursion, no fuel: only defined on is_pr trees.  The fuelled
    small-step interpreter in machine.py is the oracle for everything else.
    """
    args = tuple(args)
    if len(args) != arity(p):
        raise ValueError(f"arity mismatch: {len(args)} args for arity {arity(p)}")
    return _ev(p, args)


def _ev(p: Program, args: tuple[int, ...]) -> int:
    if isinstance(p, ZeroFn):
        return 0
    if isinstance(p, SuccFn):
        return args[0] + 1
    if isinstance(p, Proj):
        return args[p.i]
    if isinstance(p, Const):
        return p.c
    if isinstance(p, Native):
        return native_impl(p.name)(*args)
    if isinstance(p, Comp):
        inner = tuple(_ev(g, args) for g in p.gs)
        return _ev(p.f, inner)
    if isinstance(p, PrimRec):
        n, rest = args[0], args[1:]
        val = _ev(p.base, rest)
        for i in range(n):
            val = _ev(p.step, (val, i) + rest)
        return val
    raise NotPrimitiveRecursive(f"eval_pr cannot evaluate {type(p).__name__}")


# --- builder helpers ------------------------------------------------------

def compose(f: Program, *gs: Program) -> Program:
    return Comp(f, tuple(gs))


def projs(n: int, *idx: int) -> tuple[Program, ...]:
    return tuple(Proj(i, n) for i in idx)


def const(c: int, n: int) -> Program:
    return Const(c, n)


# --- standard combinator library ------------------------------------------

PRED = PrimRec(ZeroFn(0), Proj(1, 2))                       # pred
ADD = PrimRec(Proj(0, 1), compose(SuccFn(), Proj(0, 3)))    # add(a,b), rec on a
_MONUSREV = PrimRec(Proj(0, 1), compose(PRED, Proj(0, 3)))  # (b,a) -> a-.b
MONUS = compose(_MONUSREV, Proj(1, 2), Proj(0, 2))          # a -. b (cutoff)
SGN = PrimRec(ZeroFn(0), Const(1, 2))
MUL = PrimRec(ZeroFn(1), compose(ADD, Proj(0, 3), Proj(2, 3)))
POW2 = PrimRec(Const(1, 0), compose(ADD, Proj(0, 2), Proj(0, 2)))

# representing-function algebra: value 0 means "true"
NOT_R = compose(MONUS, Const(1, 1), Proj(0, 1))


def not_r(p: Program) -> Program:
    n = arity(p)
    return compose(MONUS, Const(1, n), p) if n else compose(MONUS, Const(1, 0), p)


def and_r(p: Program, q: Program) -> Program:
    return compose(SGN, compose(ADD, p, q))


def or_r(p: Program, q: Program) -> Program:
    return compose(SGN, compose(MUL, p, q))


def imp_r(p: Program, q: Program) -> Program:
    n = arity(p)
    return compose(SGN, compose(MUL, compose(MONUS, Const(1, n), p), q))


def eq_r_of(s: Program, t: Program) -> Program:
    """Representing function of s = t (same arity)."""
    return compose(SGN, compose(ADD, compose(MONUS, s, t), compose(MONUS, t, s)))


def bounded_sum(f: Program) -> Program:
    """f has arity k+1 (first arg is the summation variable);
    returns g(t, xs) = sum_{j<t} f(j, xs) of arity k+1."""
    k = arity(f) - 1
    step = compose(ADD, Proj(0, k + 2),
                   compose(f, *projs(k + 2, *range(1, k + 2))))
    return PrimRec(ZeroFn(k), step)


def bounded_prod(f: Program) -> Program:
    k = arity(f) - 1
    step = compose(MUL, compose(SGN, Proj(0, k + 2)),
                   compose(SGN, compose(f, *projs(k + 2, *range(1, k + 2)))))
    return PrimRec(Const(1, k), step)


register_native("choose", 3, lambda c, a, b: b if c else a)


def cond(c: Program, a: Program, b: Program) -> Program:
    """a if c = 0 else b (pointwise).

    Goes through a native rather than the a*(1-sgn c)+b*sgn c arithmetic:
    the latter is fine on paper but iterates payload-many successor steps
    under the fuelled machine, which matters when the payloads are codes.
    """
    return compose(Native("choose"), c, a, b)


# --- signature (descriptor table) ------------------------------------------

class Signature:
    """Mapping from function-symbol ids to descriptors.

    Godel codes of formulas embed these ids, so they are part of the coding:
    ids below FIRST_FREE are frozen built-ins, intern() hands out fresh ids
    deterministically in registration order.
    """

    FIRST_FREE = 100

    def __init__(self):
        self._by_id: dict[int, Program] = {}
        self._by_tree: dict[Program, int] = {}
        self._next = self.FIRST_FREE

    def register(self, fid: int, p: Program) -> int:
        if fid in self._by_id:
            if self._by_id[fid] != p:
                raise ValueError(f"id {fid} already bound")
            return fid
        if fid >= self.FIRST_FREE:
            raise ValueError("explicit ids must be below FIRST_FREE")
        self._by_id[fid] = p
        self._by_tree.setdefault(p, fid)
        return fid

    def intern(self, p: Program) -> int:
        got = self._by_tree.get(p)
        if got is not None:
            return got
        fid = self._next
        self._next += 1
        self._by_id[fid] = p
        self._by_tree[p] = fid
        return fid

    def lookup(self, fid: int) -> Program:
        try:
            return self._by_id[fid]
        except KeyError:
            raise KeyError(f"unknown descriptor id f_{fid}") from None

    def has(self, fid: int) -> bool:
        return fid in self._by_id

    def ids(self) -> list[int]:
        return sorted(self._by_id)

    def fid_arity(self, fid: int) -> int:
        return arity(self.lookup(fid))


# frozen built-in ids (codes depend on these)
F_MONUS = 0
F_ADD = 1
F_MUL = 2
F_SGN = 3
F_PRED = 4
F_POW2 = 5
F_PAIR = 6
F_UNL = 7
F_UNR = 8
F_SEQ_IS = 9
F_SEQ_LEN = 10
F_SEQ_EL = 11
F_SEQ_RESTR = 12
F_NM = 13
F_SB1 = 14
F_SB2 = 15
F_DIAG = 16
F_IMP_CODE = 17
F_ALL_CODE = 18
F_SNT = 19
F_FML = 20
F_AX_LOGICAL = 21
F_RULE = 22
F_HA_AX = 23
F_Q_AX = 24
F_KLEENE_T = 25
F_KLEENE_U = 26
F_LIM35 = 27
F_PR_CODE = 28
F_URF_INST = 29
F_CON_INST = 30
F_LRF_INST = 31

_NATIVE_IDS = {
    F_PAIR: "pair",
    F_UNL: "unpair_left",
    F_UNR: "unpair_right",
    F_SEQ_IS: "seq_is",
    F_SEQ_LEN: "seq_len",
    F_SEQ_EL: "seq_el",
    F_SEQ_RESTR: "seq_restr",
    F_NM: "nm",
    F_SB1: "sb1",
    F_SB2: "sb2",
    F_DIAG: "diag",
    F_IMP_CODE: "imp_code",
    F_ALL_CODE: "all_code",
    F_SNT: "snt",
    F_FML: "fml",
    F_AX_LOGICAL: "ax_logical",
    F_RULE: "rule_step",
    F_HA_AX: "ha_ax",
    F_Q_AX: "q_ax",
    F_KLEENE_T: "kleene_t",
    F_KLEENE_U: "kleene_u",
    F_LIM35: "lim35",
    F_PR_CODE: "pr_code",
    F_URF_INST: "urf_inst",
    F_CON_INST: "con_inst",
    F_LRF_INST: "lrf_inst",
}


def _build_default_signature() -> Signature:
    sig = Signature()
    sig.register(F_MONUS, MONUS)
    sig.register(F_ADD, ADD)
    sig.register(F_MUL, MUL)
    sig.register(F_SGN, SGN)
    sig.register(F_PRED, PRED)
    sig.register(F_POW2, POW2)
    for fid, name in _NATIVE_IDS.items():
        sig.register(fid, Native(name))
    return sig


DEFAULT_SIGNATURE = _build_default_signature()


# --- JSON form --------------------------------------------------------------

def program_to_json(p: Program):
    if isinstance(p, ZeroFn):
        return {"op": "zero", "arity": p.arity_}
    if isinstance(p, SuccFn):
        return {"op": "succ"}
    if isinstance(p, Proj):
        return {"op": "proj", "i": p.i, "n": p.n}
    if isinstance(p, Comp):
        return {"op": "comp", "f": program_to_json(p.f),
                "gs": [program_to_json(g) for g in p.gs]}
    if isinstance(p, PrimRec):
        return {"op": "primrec", "base": program_to_json(p.base),
                "step": program_to_json(p.step)}
    if isinstance(p, Const):
        return {"op": "const", "c": p.c, "arity": p.arity_}
    if isinstance(p, Native):
        return {"op": "native", "name": p.name}
    if isinstance(p, Mu):
        return {"op": "mu", "body": program_to_json(p.body)}
    if isinstance(p, Univ):
        return {"op": "univ", "k": p.k}
    raise TypeError(p)


def program_from_json(d) -> Program:
    op = d["op"]
    if op == "zero":
        return ZeroFn(d["arity"])
    if op == "succ":
        return SuccFn()
    if op == "proj":
        return Proj(d["i"], d["n"])
    if op == "comp":
        return Comp(program_from_json(d["f"]),
                    tuple(program_from_json(g) for g in d["gs"]))
    if op == "primrec":
        return PrimRec(program_from_json(d["base"]), program_from_json(d["step"]))
    if op == "const":
        return Const(d["c"], d["arity"])
    if op == "native":
        return Native(d["name"])
    if op == "mu":
        return Mu(program_from_json(d["body"]))
    if op == "univ":
        return Univ(d["k"])
    raise ValueError(f"unknown op {op!r}")


def signature_to_json(sig: Signature):
    return {f"f_{fid}": program_to_json(sig.lookup(fid)) for fid in sig.ids()}
