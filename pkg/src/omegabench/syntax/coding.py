"""Godel coding of terms, formulas, programs and sequences.

Everything is built from one injective pairing on naturals.  Cantor-style
polynomial pairings double the bit count per nesting level, which would make
codes of quoted quotations astronomically large, so we use a self-delimiting
bit-concatenation scheme instead: the code of pair(a, b), read MSB-first, is

    1  1^h 0  [h-bit length of a]  [bits of a]  [bits of b]

with h = bitlength(bitlength(a)).  The leading 1 is a sentinel so the bit
stream is recoverable from the integer.  Every field is length-canonical, so
unpair rejects every natural outside the image (decode really is a two-sided
inverse).  |pair(a,b)| ~ |a| + |b| + 2 log|a|: linear, quotations stay cheap.

A node code is pair(tag, payload); tag 0 is unused so small naturals like 0,
1, 7 are all malformed.  Numeral literals code their value directly in the
payload (polylog in n), never as successor towers.
"""
from __future__ import annotations

from ..errors import MalformedCodeError
from . import ast as A
from . import descriptors as D


def pair(a: int, b: int) -> int:
    if a < 0 or b < 0:
        raise ValueError("pairing is on naturals")
    la = a.bit_length()
    hl = la.bit_length()
    v = 1
    v = (v << hl) | ((1 << hl) - 1)   # unary header
    v <<= 1                           # terminator
    v = (v << hl) | la
    v = (v << la) | a
    v = (v << b.bit_length()) | b
    return v


def unpair(c: int) -> tuple[int, int]:
    if c < 2:
        raise MalformedCodeError(f"malformed code: {c}")
    pos = c.bit_length() - 1          # bits below the sentinel

    def take(k: int) -> int:
        nonlocal pos
        if k > pos:
            raise MalformedCodeError(f"malformed code: truncated at {c}")
        pos -= k
        return (c >> pos) & ((1 << k) - 1)

    hl = 0
    while take(1) == 1:
        hl += 1
    la = take(hl)
    if la.bit_length() != hl:
        raise MalformedCodeError(f"malformed code: padded length in {c}")
    a = take(la)
    if a.bit_length() != la:
        raise MalformedCodeError(f"malformed code: padded payload in {c}")
    b = c & ((1 << pos) - 1)
    if b.bit_length() != pos:
        raise MalformedCodeError(f"malformed code: padded tail in {c}")
    return a, b


def try_unpair(c: int) -> tuple[int, int] | None:
    try:
        return unpair(c)
    except MalformedCodeError:
        return None


# --- node tags (0 unused) ---------------------------------------------------

TAG_VAR = 1
TAG_SUCC = 2
TAG_ZERO = 3
TAG_NUM = 4
TAG_APP = 5
TAG_FALSUM = 6
TAG_EQ = 7
TAG_AND = 8
TAG_OR = 9
TAG_IMP = 10
TAG_ALL = 11
TAG_EX = 12
TAG_PZERO = 13
TAG_PSUCC = 14
TAG_PPROJ = 15
TAG_PCOMP = 16
TAG_PREC = 17
TAG_PNATIVE = 18
TAG_PMU = 19
TAG_PUNIV = 20
TAG_PCONST = 21
TAG_SEQ = 22
# reserved for omega-proof codes (omega/codes.py)
TAG_OAX = 23
TAG_OUNIV = 24
TAG_OINF = 25
TAG_OPEND = 26

_FORMULA_TAGS = {TAG_FALSUM, TAG_EQ, TAG_AND, TAG_OR, TAG_IMP, TAG_ALL, TAG_EX}
_TERM_TAGS = {TAG_VAR, TAG_SUCC, TAG_ZERO, TAG_NUM, TAG_APP}
_PROGRAM_TAGS = {TAG_PZERO, TAG_PSUCC, TAG_PPROJ, TAG_PCOMP, TAG_PREC,
                 TAG_PNATIVE, TAG_PMU, TAG_PUNIV, TAG_PCONST}


def name_code(s: str) -> int:
    b = s.encode("utf-8")
    return int.from_bytes(b, "big") if b else 0


def name_decode(n: int) -> str:
    if n <= 0:
        raise MalformedCodeError("empty name")
    b = n.to_bytes((n.bit_length() + 7) // 8, "big")
    try:
        s = b.decode("utf-8")
    except UnicodeDecodeError:
        raise MalformedCodeError("name is not utf-8") from None
    if not s or s[0].isdigit() or not all(c.isalnum() or c == "_" for c in s):
        raise MalformedCodeError(f"bad identifier {s!r}")
    return s


def decode_seq_payload(payload: int) -> list[int]:
    n, fold = unpair(payload)
    items = []
    for _ in range(n):
        h, fold = unpair(fold)
        items.append(h)
    if fold != 0:
        raise MalformedCodeError("sequence tail is not nil")
    return items


def encode(obj) -> int:
    """Code of a Term, Formula, Program, or list/tuple of already-coded
    naturals (a sequence)."""
    if isinstance(obj, A.Term):
        return _enc_term(obj)
    if isinstance(obj, A.Formula):
        return _enc_formula(obj)
    if isinstance(obj, D.Program):
        return _enc_program(obj)
    if isinstance(obj, (list, tuple)):
        fold = 0
        for c in reversed(obj):
            if not isinstance(c, int):
                raise TypeError("sequences hold naturals")
            fold = pair(c, fold)
        return pair(TAG_SEQ, pair(len(obj), fold))
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _enc_term(t: A.Term) -> int:
    if isinstance(t, A.Var):
        return pair(TAG_VAR, name_code(t.name))
    if isinstance(t, A.Zero):
        return pair(TAG_ZERO, 0)
    if isinstance(t, A.Num):
        return pair(TAG_NUM, t.n)
    if isinstance(t, A.Succ):
        return pair(TAG_SUCC, _enc_term(t.arg))
    if isinstance(t, A.App):
        return pair(TAG_APP, pair(t.fid, encode(list(map(_enc_term, t.args)))))
    raise TypeError(t)


def _enc_formula(p: A.Formula) -> int:
    if isinstance(p, A.Falsum):
        return pair(TAG_FALSUM, 0)
    if isinstance(p, A.Eq):
        return pair(TAG_EQ, pair(_enc_term(p.lhs), _enc_term(p.rhs)))
    if isinstance(p, A.And):
        return pair(TAG_AND, pair(_enc_formula(p.lhs), _enc_formula(p.rhs)))
    if isinstance(p, A.Or):
        return pair(TAG_OR, pair(_enc_formula(p.lhs), _enc_formula(p.rhs)))
    if isinstance(p, A.Imp):
        return pair(TAG_IMP, pair(_enc_formula(p.lhs), _enc_formula(p.rhs)))
    if isinstance(p, A.Forall):
        return pair(TAG_ALL, pair(name_code(p.var), _enc_formula(p.body)))
    if isinstance(p, A.Exists):
        return pair(TAG_EX, pair(name_code(p.var), _enc_formula(p.body)))
    raise TypeError(p)


def _enc_program(p: D.Program) -> int:
    if isinstance(p, D.ZeroFn):
        return pair(TAG_PZERO, p.arity_)
    if isinstance(p, D.SuccFn):
        return pair(TAG_PSUCC, 0)
    if isinstance(p, D.Proj):
        return pair(TAG_PPROJ, pair(p.i, p.n))
    if isinstance(p, D.Comp):
        return pair(TAG_PCOMP, pair(_enc_program(p.f),
                                    encode([_enc_program(g) for g in p.gs])))
    if isinstance(p, D.PrimRec):
        return pair(TAG_PREC, pair(_enc_program(p.base), _enc_program(p.step)))
    if isinstance(p, D.Const):
        return pair(TAG_PCONST, pair(p.c, p.arity_))
    if isinstance(p, D.Native):
        return pair(TAG_PNATIVE, name_code(p.name))
    if isinstance(p, D.Mu):
        return pair(TAG_PMU, _enc_program(p.body))
    if isinstance(p, D.Univ):
        return pair(TAG_PUNIV, p.k)
    raise TypeError(p)


def decode(c: int):
    """Inverse of encode.  Returns a Term, Formula, Program, or list of
    naturals; raises MalformedCodeError off the image."""
    tag, payload = unpair(c)
    if tag in _TERM_TAGS:
        return _dec_term(tag, payload)
    if tag in _FORMULA_TAGS:
        return _dec_formula(tag, payload)
    if tag in _PROGRAM_TAGS:
        return _dec_program(tag, payload)
    if tag == TAG_SEQ:
        return decode_seq_payload(payload)
    raise MalformedCodeError(f"malformed code: unknown tag {tag}")


def _dec_term(tag: int, payload: int) -> A.Term:
    if tag == TAG_VAR:
        return A.Var(name_decode(payload))
    if tag == TAG_ZERO:
        if payload != 0:
            raise MalformedCodeError("zero-term payload")
        return A.Zero()
    if tag == TAG_NUM:
        if payload < 1:
            raise MalformedCodeError("numeral literal must be >= 1")
        return A.Num(payload)
    if tag == TAG_SUCC:
        arg = decode_term(payload)
        if isinstance(arg, (A.Zero, A.Num)):
            raise MalformedCodeError("non-canonical numeral tower")
        return A.Succ(arg)
    if tag == TAG_APP:
        fid, argsc = unpair(payload)
        args = decode(argsc)
        if not isinstance(args, list):
            raise MalformedCodeError("App arguments are a sequence")
        return A.App(fid, tuple(decode_term(a) for a in args))
    raise MalformedCodeError(f"bad term tag {tag}")


def _dec_formula(tag: int, payload: int) -> A.Formula:
    if tag == TAG_FALSUM:
        if payload != 0:
            raise MalformedCodeError("falsum payload")
        return A.Falsum()
    if tag == TAG_EQ:
        l, r = unpair(payload)
        return A.Eq(decode_term(l), decode_term(r))
    if tag in (TAG_AND, TAG_OR, TAG_IMP):
        l, r = unpair(payload)
        cls = {TAG_AND: A.And, TAG_OR: A.Or, TAG_IMP: A.Imp}[tag]
        return cls(decode_formula(l), decode_formula(r))
    if tag in (TAG_ALL, TAG_EX):
        nm, body = unpair(payload)
        cls = A.Forall if tag == TAG_ALL else A.Exists
        return cls(name_decode(nm), decode_formula(body))
    raise MalformedCodeError(f"bad formula tag {tag}")


def _dec_program(tag: int, payload: int) -> D.Program:
    if tag == TAG_PZERO:
        return D.ZeroFn(payload)
    if tag == TAG_PSUCC:
        if payload != 0:
            raise MalformedCodeError("succ payload")
        return D.SuccFn()
    if tag == TAG_PPROJ:
        i, n = unpair(payload)
        if not 0 <= i < n:
            raise MalformedCodeError("projection out of range")
        return D.Proj(i, n)
    if tag == TAG_PCOMP:
        f, gsc = unpair(payload)
        gs = decode(gsc)
        if not isinstance(gs, list) or not gs:
            raise MalformedCodeError("composition inner list")
        return D.Comp(decode_program(f), tuple(decode_program(g) for g in gs))
    if tag == TAG_PREC:
        b, s = unpair(payload)
        return D.PrimRec(decode_program(b), decode_program(s))
    if tag == TAG_PCONST:
        cval, ar = unpair(payload)
        return D.Const(cval, ar)
    if tag == TAG_PNATIVE:
        return D.Native(name_decode(payload))
    if tag == TAG_PMU:
        return D.Mu(decode_program(payload))
    if tag == TAG_PUNIV:
        return D.Univ(payload)
    raise MalformedCodeError(f"bad program tag {tag}")


def decode_term(c: int) -> A.Term:
    tag, payload = unpair(c)
    if tag not in _TERM_TAGS:
        raise MalformedCodeError(f"not a term code (tag {tag})")
    return _dec_term(tag, payload)


def decode_formula(c: int) -> A.Formula:
    tag, payload = unpair(c)
    if tag not in _FORMULA_TAGS:
        raise MalformedCodeError(f"not a formula code (tag {tag})")
    return _dec_formula(tag, payload)


def decode_program(c: int) -> D.Program:
    tag, payload = unpair(c)
    if tag not in _PROGRAM_TAGS:
        raise MalformedCodeError(f"not a program code (tag {tag})")
    return _dec_program(tag, payload)


def decode_seq(c: int) -> list[int]:
    tag, payload = unpair(c)
    if tag != TAG_SEQ:
        raise MalformedCodeError(f"not a sequence code (tag {tag})")
    return decode_seq_payload(payload)


def is_formula_code(c: int) -> bool:
    try:
        decode_formula(c)
        return True
    except MalformedCodeError:
        return False


def is_sentence_code(c: int) -> bool:
    try:
        return not A.free_vars(decode_formula(c))
    except MalformedCodeError:
        return False


def nm(n: int) -> int:
    """Code of the n-th numeral term."""
    if n < 0:
        raise ValueError("numerals are naturals")
    return encode(A.num(n))


def sb_codes(fc: int, var_codes: list[int], term_codes: list[int]) -> int:
    """Arithmetized simultaneous substitution: acts on codes, commutes with
    the syntactic sb.  Returns 0 on malformed input (total-function
    convention for natives)."""
    try:
        phi = decode(fc)
        if not isinstance(phi, (A.Formula, A.Term)):
            return 0
        names = []
        for vc in var_codes:
            v = decode_term(vc)
            if not isinstance(v, A.Var):
                return 0
            names.append(v.name)
        terms = [decode_term(tc) for tc in term_codes]
    except MalformedCodeError:
        return 0
    if isinstance(phi, A.Term):
        return encode(A.sb_term(phi, dict(zip(names, terms))))
    return encode(A.sb(phi, names, terms))


# --- natives ---------------------------------------------------------------

def _nat_pair(a, b):
    return pair(a, b)


def _nat_unl(c):
    got = try_unpair(c)
    return got[0] if got else 0


def _nat_unr(c):
    got = try_unpair(c)
    return got[1] if got else 0


def _seq_items(c) -> list[int] | None:
    got = try_unpair(c)
    if not got or got[0] != TAG_SEQ:
        return None
    try:
        return decode_seq_payload(got[1])
    except MalformedCodeError:
        return None


def _nat_seq_is(c):
    return 0 if _seq_items(c) is not None else 1


def _nat_seq_len(c):
    items = _seq_items(c)
    return len(items) if items is not None else 0


def _nat_seq_el(c, i):
    items = _seq_items(c)
    if items is None or i >= len(items):
        return 0
    return items[i]


def _nat_seq_restr(c, i):
    items = _seq_items(c)
    if items is None:
        return 0
    return encode(items[: min(i, len(items))])


def _nat_nm(n):
    return nm(n)


def _nat_sb1(fc, vc, tc):
    return sb_codes(fc, [vc], [tc])


def _nat_sb2(fc, vc1, vc2, tc1, tc2):
    return sb_codes(fc, [vc1, vc2], [tc1, tc2])


def _nat_imp_code(a, b):
    return pair(TAG_IMP, pair(a, b))


def _nat_all_code(vc, body):
    # vc is the code of a variable term
    got = try_unpair(vc)
    if not got or got[0] != TAG_VAR:
        return 0
    try:
        name_decode(got[1])
    except MalformedCodeError:
        return 0
    return pair(TAG_ALL, pair(got[1], body))


def _nat_snt(c):
    return 0 if is_sentence_code(c) else 1


def _nat_fml(c):
    return 0 if is_formula_code(c) else 1


# public names for the sequence operations (same total semantics as natives)
seq_is = _nat_seq_is
seq_len = _nat_seq_len
seq_el = _nat_seq_el
seq_restr = _nat_seq_restr
unpair_left = _nat_unl
unpair_right = _nat_unr
imp_code = _nat_imp_code
all_code = _nat_all_code


D.register_native("pair", 2, _nat_pair)
D.register_native("unpair_left", 1, _nat_unl)
D.register_native("unpair_right", 1, _nat_unr)
D.register_native("seq_is", 1, _nat_seq_is)
D.register_native("seq_len", 1, _nat_seq_len)
D.register_native("seq_el", 2, _nat_seq_el)
D.register_native("seq_restr", 2, _nat_seq_restr)
D.register_native("nm", 1, _nat_nm)
D.register_native("sb1", 3, _nat_sb1)
D.register_native("sb2", 5, _nat_sb2)
D.register_native("imp_code", 2, _nat_imp_code)
D.register_native("all_code", 2, _nat_all_code)
D.register_native("snt", 1, _nat_snt)
D.register_native("fml", 1, _nat_fml)
