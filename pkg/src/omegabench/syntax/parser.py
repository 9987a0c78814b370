"""Concrete syntax.

  terms:     0    S(t)    #n    f_k(t, ...)    x
  formulas:  t=t   t<t   _|_   &   |   ->   forall x. ...   exists x. ...
             forall x < t. ...   exists x < t. ...

`#n` is the numeral literal (parsed to the same canonical term as the
successor tower).  `f_<digits>` is a function-symbol reference into a
descriptor table.  & binds tighter than |, which binds tighter than the
right-associative ->;  quantifier bodies extend as far right as possible.
`S`, `forall` and `exists` are reserved words.  `s < t` abbreviates the
equation S(s) -* t = 0, and `forall x < t. phi` / `exists x < t. phi`
expand to the implication/conjunction forms of the bounded quantifiers.
"""
from __future__ import annotations

import re

from . import ast as A
from . import classes as C

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<falsum>_\|_)
  | (?P<arrow>->)
  | (?P<fid>f_[0-9]+)
  | (?P<num>\#[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<zero>0)
  | (?P<punct>[().,=&|<])
""", re.VERBOSE)

_RESERVED = {"S", "forall", "exists"}


class ParseError(ValueError):
    pass


def _tokenize(src: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"cannot tokenize at {src[pos:pos+12]!r}")
        pos = m.end()
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group()))
    out.append(("eof", ""))
    return out


class _P:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text):
        kind, val = self.next()
        if val != text:
            raise ParseError(f"expected {text!r}, got {val!r}")

    def formula(self) -> A.Formula:
        left = self.or_formula()
        if self.peek()[0] == "arrow":
            self.next()
            return A.Imp(left, self.formula())
        return left

    def or_formula(self) -> A.Formula:
        left = self.and_formula()
        while self.peek()[1] == "|":
            self.next()
            left = A.Or(left, self.and_formula())
        return left

    def and_formula(self) -> A.Formula:
        left = self.atom_formula()
        while self.peek()[1] == "&":
            self.next()
            left = A.And(left, self.atom_formula())
        return left

    def atom_formula(self) -> A.Formula:
        kind, val = self.peek()
        if kind == "falsum":
            self.next()
            return A.Falsum()
        if kind == "ident" and val in ("forall", "exists"):
            self.next()
            vkind, vname = self.next()
            if vkind != "ident" or vname in _RESERVED:
                raise ParseError(f"bad bound variable {vname!r}")
            bound = None
            if self.peek()[1] == "<":
                self.next()
                bound = self.term()
            self.expect(".")
            body = self.formula()
            if bound is not None:
                build = (C.bounded_forall if val == "forall"
                         else C.bounded_exists)
                return build(vname, bound, body)
            return (A.Forall if val == "forall" else A.Exists)(vname, body)
        if val == "(":
            self.next()
            inner = self.formula()
            self.expect(")")
            return inner
        lhs = self.term()
        op = self.next()[1]
        if op == "<":
            return C.lt_formula(lhs, self.term())
        if op != "=":
            raise ParseError(f"expected '=' or '<', got {op!r}")
        return A.Eq(lhs, self.term())

    def term(self) -> A.Term:
        kind, val = self.next()
        if kind == "zero":
            return A.Zero()
        if kind == "num":
            return A.num(int(val[1:]))
        if kind == "fid":
            fid = int(val[2:])
            self.expect("(")
            args = [self.term()]
            while self.peek()[1] == ",":
                self.next()
                args.append(self.term())
            self.expect(")")
            return A.App(fid, tuple(args))
        if kind == "ident":
            if val == "S":
                self.expect("(")
                inner = self.term()
                self.expect(")")
                return A.succ(inner)
            if val in _RESERVED:
                raise ParseError(f"{val!r} is reserved")
            return A.Var(val)
        raise ParseError(f"unexpected {val!r} in term")


def parse_formula(src: str) -> A.Formula:
    p = _P(_tokenize(src))
    out = p.formula()
    if p.peek()[0] != "eof":
        raise ParseError(f"trailing input {p.peek()[1]!r}")
    return out


def parse_term(src: str) -> A.Term:
    p = _P(_tokenize(src))
    out = p.term()
    if p.peek()[0] != "eof":
        raise ParseError(f"trailing input {p.peek()[1]!r}")
    return out


def print_term(t: A.Term, tower: bool = False) -> str:
    if isinstance(t, A.Var):
        return t.name
    if isinstance(t, A.Zero):
        return "0"
    if isinstance(t, A.Num):
        if tower:
            return "S(" * t.n + "0" + ")" * t.n
        return f"#{t.n}"
    if isinstance(t, A.Succ):
        return f"S({print_term(t.arg, tower)})"
    if isinstance(t, A.App):
        return f"f_{t.fid}({', '.join(print_term(a, tower) for a in t.args)})"
    raise TypeError(t)


# precedence: -> is 1 (right assoc), | is 2, & is 3, atoms 4
def print_formula(p: A.Formula, tower: bool = False, _level: int = 0) -> str:
    if isinstance(p, A.Falsum):
        return "_|_"
    if isinstance(p, A.Eq):
        return f"{print_term(p.lhs, tower)}={print_term(p.rhs, tower)}"
    if isinstance(p, (A.Forall, A.Exists)):
        q = "forall" if isinstance(p, A.Forall) else "exists"
        s = f"{q} {p.var}. {print_formula(p.body, tower, 0)}"
        return f"({s})" if _level > 0 else s
    if isinstance(p, A.Imp):
        s = (f"{print_formula(p.lhs, tower, 2)} -> "
             f"{print_formula(p.rhs, tower, 1)}")
        return f"({s})" if _level > 1 else s
    if isinstance(p, A.Or):
        s = (f"{print_formula(p.lhs, tower, 2)} | "
             f"{print_formula(p.rhs, tower, 3)}")
        return f"({s})" if _level > 2 else s
    if isinstance(p, A.And):
        s = (f"{print_formula(p.lhs, tower, 3)} & "
             f"{print_formula(p.rhs, tower, 4)}")
        return f"({s})" if _level > 3 else s
    raise TypeError(p)
