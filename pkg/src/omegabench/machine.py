"""Fuelled evaluation of coded programs.

A program index is the code (coding.encode) of a program tree.  step_eval
runs an index on arguments under a fuel budget: every node application costs
one unit, natives cost one unit regardless of their size, and the universal
node re-dispatches on a coded program with the same budget.  Running out of
budget yields OutOfFuel; supplying a malformed index to step_eval itself
raises MalformedIndexError, while the universal node treats a malformed coded
operand as divergence (OutOfFuel at every budget, so the halting predicate
stays total and monotone).

smn specializes leading arguments by composition with constants; fix is the
standard self-referential index construction on top of the smn1 native.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import MalformedCodeError, MalformedIndexError, NativeOverflow
from .syntax import coding
from .syntax import descriptors as D
from .syntax.descriptors import (Comp, Const, Mu, Native, PrimRec, Program,
                                 Proj, SuccFn, Univ, ZeroFn, arity, compose,
                                 projs, register_native)


@dataclass(frozen=True)
class Converged:
    value: int
    used: int


@dataclass(frozen=True)
class OutOfFuel:
    spent: int
    overflow: bool = False      # a native refused an astronomic intermediate


Outcome = Converged | OutOfFuel


class _Fuel(Exception):
    pass


class _Counter:
    __slots__ = ("left",)

    def __init__(self, fuel: int):
        self.left = fuel

    def spend(self) -> None:
        if self.left <= 0:
            raise _Fuel
        self.left -= 1

    def drain(self) -> None:
        self.left = 0
        raise _Fuel


def _go(p: Program, args: list[int], ctr: _Counter) -> int:
    ctr.spend()
    if isinstance(p, ZeroFn):
        return 0
    if isinstance(p, SuccFn):
        return args[0] + 1
    if isinstance(p, Proj):
        return args[p.i]
    if isinstance(p, Const):
        return p.c
    if isinstance(p, Native):
        return D.native_impl(p.name)(*args)
    if isinstance(p, Comp):
        vals = [_go(g, args, ctr) for g in p.gs]
        return _go(p.f, vals, ctr)
    if isinstance(p, PrimRec):
        n, rest = args[0], args[1:]
        acc = _go(p.base, rest, ctr)
        for j in range(n):
            acc = _go(p.step, [acc, j, *rest], ctr)
        return acc
    if isinstance(p, Mu):
        j = 0
        while True:
            if _go(p.body, [j, *args], ctr) == 0:
                return j
            j += 1
    if isinstance(p, Univ):
        try:
            q = coding.decode_program(args[0])
            if arity(q) != p.k:
                raise MalformedCodeError("arity mismatch under universal node")
        except (MalformedCodeError, ValueError):
            ctr.drain()
        return _go(q, args[1:], ctr)
    raise TypeError(p)


def eval_program(p: Program, args: list[int] | tuple[int, ...], fuel: int) -> Outcome:
    """Run a program tree under a fuel budget."""
    if arity(p) != len(args):
        raise MalformedIndexError(
            f"program wants {arity(p)} arguments, got {len(args)}")
    ctr = _Counter(fuel)
    try:
        v = _go(p, list(args), ctr)
    except _Fuel:
        return OutOfFuel(spent=fuel)
    except NativeOverflow:
        return OutOfFuel(spent=fuel, overflow=True)
    return Converged(value=v, used=fuel - ctr.left)


def step_eval(e: int, args: list[int] | tuple[int, ...], fuel: int) -> Outcome:
    """Run a program index under a fuel budget."""
    try:
        p = coding.decode_program(e)
    except MalformedCodeError as exc:
        raise MalformedIndexError(str(exc)) from exc
    return eval_program(p, args, fuel)


def program_index(p: Program) -> int:
    return coding.encode(p)


def converges(e: int, args, fuel: int) -> bool:
    try:
        return isinstance(step_eval(e, args, fuel), Converged)
    except MalformedIndexError:
        return False


# --- parameter fixing and self reference -------------------------------------

def smn_program(p: Program, fixed: list[int] | tuple[int, ...]) -> Program:
    k = arity(p)
    m = len(fixed)
    if not 0 < m <= k:
        raise ValueError(f"cannot fix {m} of {k} arguments")
    rest = k - m
    inners = [Const(v, rest) for v in fixed] + list(projs(rest, *range(rest)))
    return Comp(p, tuple(inners))


def smn(e: int, fixed: list[int] | tuple[int, ...]) -> int:
    try:
        p = coding.decode_program(e)
    except MalformedCodeError as exc:
        raise MalformedIndexError(str(exc)) from exc
    return program_index(smn_program(p, fixed))


def _nat_smn(e: int, *fixed: int) -> int:
    try:
        return smn(e, list(fixed))
    except (MalformedIndexError, ValueError):
        return 0        # 0 is not a program code: diverges, like {e} itself


register_native("smn1", 2, lambda e, v: _nat_smn(e, v))
register_native("smn2", 3, lambda e, v1, v2: _nat_smn(e, v1, v2))


def fix(e: int) -> int:
    """An index r with {r}(xs) = {e}(r, xs) for every xs.

    e must code a program of arity 1+k; the result has arity k.  Built the
    usual way: B(y, xs) = {e}(smn1(y, y), xs), r = smn1(b, b) where b codes B.
    """
    try:
        p = coding.decode_program(e)
    except MalformedCodeError as exc:
        raise MalformedIndexError(str(exc)) from exc
    k = arity(p) - 1
    if k < 0:
        raise MalformedIndexError("fix needs arity at least 1")
    self_ix = compose(Native("smn1"), Proj(0, k + 1), Proj(0, k + 1))
    b_prog = Comp(p, (self_ix, *projs(k + 1, *range(1, k + 1))))
    b = program_index(b_prog)
    return _nat_smn(b, b)


def kleene_t(e: int, x: int, z: int) -> int:
    """0 iff the unary index e halts on x within budget z (total)."""
    try:
        out = step_eval(e, [x], z)
    except MalformedIndexError:
        return 1
    return 0 if isinstance(out, Converged) else 1


def kleene_u(e: int, x: int, z: int) -> int:
    """Output of e on x if within budget z, else 0 (total)."""
    try:
        out = step_eval(e, [x], z)
    except MalformedIndexError:
        return 0
    return out.value if isinstance(out, Converged) else 0


register_native("kleene_t", 3, kleene_t)
register_native("kleene_u", 3, kleene_u)
