"""Terms and formulas of first-order arithmetic.

The language has one relation symbol (=), falsum, and a function symbol for
every primitive recursive function (referenced by descriptor id, see
descriptors.py).  Negation is not a node: ~p is p -> _|_.

Numerals are canonical: the closed successor tower S(S(...S(0)...)) and the
numeral literal #n denote the same term and are represented identically --
Zero for 0, Num(n) for n >= 1, and Succ is only ever applied to a non-numeral.
The smart constructors `succ` and `num` maintain this; building Succ(Num(k))
directly raises.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


class Term:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Var(Term):
    name: str

    def __post_init__(self):
        if not self.name or not _is_ident(self.name):
            raise ValueError(f"bad variable name: {self.name!r}")


@dataclass(frozen=True, slots=True)
class Zero(Term):
    pass


@dataclass(frozen=True, slots=True)
class Num(Term):
    """Numeral literal for n >= 1 (0 is the Zero node)."""
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("Num is for n >= 1; use Zero for 0")


@dataclass(frozen=True, slots=True)
class Succ(Term):
    arg: Term

    def __post_init__(self):
        if isinstance(self.arg, (Zero, Num)):
            raise ValueError("non-canonical numeral; use succ()")


@dataclass(frozen=True, slots=True)
class App(Term):
    fid: int            # descriptor id in a Signature
    args: tuple[Term, ...]


def num(n: int) -> Term:
    if n < 0:
        raise ValueError("numerals are naturals")
    return Zero() if n == 0 else Num(n)


def succ(t: Term) -> Term:
    if isinstance(t, Zero):
        return Num(1)
    if isinstance(t, Num):
        return Num(t.n + 1)
    return Succ(t)


def numeral_value(t: Term) -> int | None:
    """n if t is the numeral of n, else None."""
    if isinstance(t, Zero):
        return 0
    if isinstance(t, Num):
        return t.n
    return None


class Formula:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Falsum(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Eq(Formula):
    lhs: Term
    rhs: Term


@dataclass(frozen=True, slots=True)
class And(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True, slots=True)
class Imp(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True, slots=True)
class Forall(Formula):
    var: str
    body: Formula

    def __post_init__(self):
        if not _is_ident(self.var):
            raise ValueError(f"bad variable name: {self.var!r}")


@dataclass(frozen=True, slots=True)
class Exists(Formula):
    var: str
    body: Formula

    def __post_init__(self):
        if not _is_ident(self.var):
            raise ValueError(f"bad variable name: {self.var!r}")


def neg(phi: Formula) -> Formula:
    return Imp(phi, Falsum())


def iff(a: Formula, b: Formula) -> Formula:
    """No biconditional node; a <-> b is (a -> b) & (b -> a)."""
    return And(Imp(a, b), Imp(b, a))


def _is_ident(s: str) -> bool:
    if not s or s[0].isdigit():
        return False
    return all(c.isalnum() or c == "_" for c in s)


def term_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Succ):
        return term_vars(t.arg)
    if isinstance(t, App):
        out: set[str] = set()
        for a in t.args:
            out |= term_vars(a)
        return out
    return set()


def free_vars(phi: Formula) -> set[str]:
    if isinstance(phi, Falsum):
        return set()
    if isinstance(phi, Eq):
        return term_vars(phi.lhs) | term_vars(phi.rhs)
    if isinstance(phi, (And, Or, Imp)):
        return free_vars(phi.lhs) | free_vars(phi.rhs)
    if isinstance(phi, (Forall, Exists)):
        return free_vars(phi.body) - {phi.var}
    raise TypeError(phi)


def all_vars(phi: Formula) -> set[str]:
    """Free and bound variable names (for freshness)."""
    if isinstance(phi, Falsum):
        return set()
    if isinstance(phi, Eq):
        return term_vars(phi.lhs) | term_vars(phi.rhs)
    if isinstance(phi, (And, Or, Imp)):
        return all_vars(phi.lhs) | all_vars(phi.rhs)
    if isinstance(phi, (Forall, Exists)):
        return all_vars(phi.body) | {phi.var}
    raise TypeError(phi)


def fresh_name(base: str, avoid: set[str]) -> str:
    """Smallest-index rename of base not in avoid."""
    if base not in avoid:
        return base
    k = 1
    while f"{base}_{k}" in avoid:
        k += 1
    return f"{base}_{k}"


def sb_term(t: Term, subst: dict[str, Term]) -> Term:
    if isinstance(t, Var):
        return subst.get(t.name, t)
    if isinstance(t, Succ):
        return succ(sb_term(t.arg, subst))
    if isinstance(t, App):
        return App(t.fid, tuple(sb_term(a, subst) for a in t.args))
    return t


def sb(phi: Formula, names: list[str] | tuple[str, ...],
       terms: list[Term] | tuple[Term, ...]) -> Formula:
    """Simultaneous capture-avoiding substitution of terms for free names.

    Binders whose variable would capture a substituted term are renamed with
    fresh_name, so the result is deterministic.
    """
    if len(names) != len(terms):
        raise ValueError("names/terms length mismatch")
    return _sb(phi, dict(zip(names, terms)))


def _sb(phi: Formula, subst: dict[str, Term]) -> Formula:
    if not subst:
        return phi
    if isinstance(phi, Falsum):
        return phi
    if isinstance(phi, Eq):
        return Eq(sb_term(phi.lhs, subst), sb_term(phi.rhs, subst))
    if isinstance(phi, (And, Or, Imp)):
        return type(phi)(_sb(phi.lhs, subst), _sb(phi.rhs, subst))
    if isinstance(phi, (Forall, Exists)):
        inner = {n: t for n, t in subst.items() if n != phi.var}
        body_free = free_vars(phi.body)
        inner = {n: t for n, t in inner.items() if n in body_free}
        if not inner:
            return type(phi)(phi.var, phi.body)
        captured = any(phi.var in term_vars(t) for t in inner.values())
        var, body = phi.var, phi.body
        if captured:
            avoid = set(inner) | body_free
            for t in inner.values():
                avoid |= term_vars(t)
            var = fresh_name(phi.var, avoid)
            body = _sb(body, {phi.var: Var(var)})
        return type(phi)(var, _sb(body, inner))
    raise TypeError(phi)


def term_size(t: Term) -> int:
    if isinstance(t, Succ):
        return 1 + term_size(t.arg)
    if isinstance(t, App):
        return 1 + sum(term_size(a) for a in t.args)
    return 1


def formula_size(phi: Formula) -> int:
    if isinstance(phi, Falsum):
        return 1
    if isinstance(phi, Eq):
        return 1 + term_size(phi.lhs) + term_size(phi.rhs)
    if isinstance(phi, (And, Or, Imp)):
        return 1 + formula_size(phi.lhs) + formula_size(phi.rhs)
    if isinstance(phi, (Forall, Exists)):
        return 1 + formula_size(phi.body)
    raise TypeError(phi)


def subformulas(phi: Formula) -> Iterator[Formula]:
    yield phi
    if isinstance(phi, (And, Or, Imp)):
        yield from subformulas(phi.lhs)
        yield from subformulas(phi.rhs)
    elif isinstance(phi, (Forall, Exists)):
        yield from subformulas(phi.body)
