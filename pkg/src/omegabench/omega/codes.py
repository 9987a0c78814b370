"""Codes for proof trees of the omega rule.

A proof code is a tagged tree over formulas and machine indices:

    Axiomatic(phi)              head claimed to be an axiom
    Universal(phi, e)           phi = forall x body; {e}(n) must yield a
                                child code proving body[x := n-bar]
    Inference(phi, children)    phi follows from the children's heads by a
                                logical rule (modus ponens or generalization)
    Pending(phi, e, m, z)       a delayed child of head phi: {e}(m) has not
                                converged within z fuel steps yet
    Raw(n)                      a bare number, read through the numeric shapes

Two numeric renderings coexist:

- the *machine form* (``encode_omega``/``decode_omega``) uses the pairing
  coding with dedicated tags and is total on tagged trees; it is what codes
  look like whenever they flow through machine programs;
- the *classical form* (``to_nat``/``from_nat``) uses multiplicative shapes
  (2^phi for an axiomatic head, 2^phi * 3 * 5^e for a universal step, and so
  on).  Those numbers outgrow memory for all but the tiniest formulas, so
  ``to_nat`` is size-capped and partial; ``unfold`` reads Raw numbers through
  the same shapes.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import MalformedCodeError
from ..syntax import ast as A
from ..syntax import coding as C

__all__ = [
    "OmegaCode", "Axiomatic", "Universal", "Inference", "Pending", "Raw",
    "phi_of", "head_formula", "encode_omega", "decode_omega",
    "to_nat", "from_nat", "classical_parse",
    "code_to_json", "code_from_json", "NAT_CAP_BITS",
]

NAT_CAP_BITS = 1 << 16   # classical-form numbers beyond this have no to_nat


@dataclass(frozen=True)
class OmegaCode:
    pass


@dataclass(frozen=True)
class Axiomatic(OmegaCode):
    phi: A.Formula


@dataclass(frozen=True)
class Universal(OmegaCode):
    phi: A.Formula
    e: int


@dataclass(frozen=True)
class Inference(OmegaCode):
    phi: A.Formula
    children: tuple[OmegaCode, ...]


@dataclass(frozen=True)
class Pending(OmegaCode):
    phi: A.Formula
    e: int
    m: int
    z: int = 0


@dataclass(frozen=True)
class Raw(OmegaCode):
    n: int


# --- head formulas ------------------------------------------------------------

def head_formula(code: OmegaCode) -> A.Formula | None:
    """The head formula, or None for an opaque Raw number."""
    if isinstance(code, (Axiomatic, Universal, Inference, Pending)):
        return code.phi
    if isinstance(code, Raw):
        n = code.n
        if n <= 0:
            return None
        k = (n & -n).bit_length() - 1        # exponent of 2 in n
        if C.is_formula_code(k):
            return C.decode_formula(k)
        return None
    raise TypeError(code)


def phi_of(code: OmegaCode) -> A.Formula:
    """Total head reading: opaque codes fall back to falsum."""
    got = head_formula(code)
    return got if got is not None else A.Falsum()


# --- machine form (pairing coding, total) ---------------------------------------

def encode_omega(code: OmegaCode) -> int:
    if isinstance(code, Axiomatic):
        return C.pair(C.TAG_OAX, C.encode(code.phi))
    if isinstance(code, Universal):
        return C.pair(C.TAG_OUNIV, C.pair(C.encode(code.phi), code.e))
    if isinstance(code, Inference):
        kids = C.encode([encode_omega(c) for c in code.children])
        return C.pair(C.TAG_OINF, C.pair(C.encode(code.phi), kids))
    if isinstance(code, Pending):
        return C.pair(C.TAG_OPEND,
                      C.pair(C.encode(code.phi),
                             C.pair(code.e, C.pair(code.m, code.z))))
    if isinstance(code, Raw):
        return code.n
    raise TypeError(code)


def decode_omega(v: int) -> OmegaCode:
    """Machine-value reading: tagged pairing first, then the classical
    shapes, and finally an opaque Raw."""
    got = _decode_tagged(v)
    if got is not None:
        return got
    got = classical_parse(v)
    if got is not None:
        return got
    return Raw(v)


def _decode_tagged(v: int) -> OmegaCode | None:
    parts = C.try_unpair(v)
    if parts is None:
        return None
    tag, payload = parts
    try:
        if tag == C.TAG_OAX:
            return Axiomatic(C.decode_formula(payload))
        if tag == C.TAG_OUNIV:
            fc, e = C.unpair(payload)
            return Universal(C.decode_formula(fc), e)
        if tag == C.TAG_OINF:
            fc, kids = C.unpair(payload)
            phi = C.decode_formula(fc)
            items = C.decode_seq(kids)
            return Inference(phi, tuple(decode_omega(k) for k in items))
        if tag == C.TAG_OPEND:
            fc, rest = C.unpair(payload)
            e, rest = C.unpair(rest)
            m, z = C.unpair(rest)
            return Pending(C.decode_formula(fc), e, m, z)
    except (MalformedCodeError, ValueError):
        return None
    return None


# --- classical form (multiplicative shapes, partial) -----------------------------

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _v_split(n: int, p: int) -> tuple[int, int]:
    """(k, rest) with n = p^k * rest, p not dividing rest."""
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def classical_parse(n: int) -> OmegaCode | None:
    """Structural reading of a classical-form number, if it has one.

    2^f            -> Axiomatic       (f a formula code)
    2^f * 3 * 5^e  -> Universal
    2^f * 9 * 5^a  -> Inference       (a = p_0^{c_0} * ... * p_k^{c_k})
    2^f * 27 * 5^e * 7^(2^m * 3^z) -> Pending
    """
    if n <= 0:
        return None
    k, rest = _v_split(n, 2)
    if not C.is_formula_code(k):
        return None
    phi = C.decode_formula(k)
    if rest == 1:
        return Axiomatic(phi)
    three, rest = _v_split(rest, 3)
    if three == 1:
        e, rest = _v_split(rest, 5)
        if rest != 1:
            return None
        return Universal(phi, e)
    if three == 2:
        a, rest = _v_split(rest, 5)
        if rest != 1 or a == 0:
            return None
        kids = _parse_bundle(a)
        if kids is None:
            return None
        return Inference(phi, kids)
    if three == 3:
        e, rest = _v_split(rest, 5)
        w, rest = _v_split(rest, 7)
        if rest != 1 or w == 0:
            return None
        m, odd = _v_split(w, 2)
        z, odd = _v_split(odd, 3)
        if odd != 1:
            return None
        return Pending(phi, e, m, z)
    return None


def _parse_bundle(a: int) -> tuple[OmegaCode, ...] | None:
    """Child codes packed as exponents of consecutive primes."""
    kids: list[OmegaCode] = []
    for p in _PRIMES:
        if a == 1:
            break
        c, a = _v_split(a, p)
        kids.append(from_nat(c))
    if a != 1 or not kids:
        return None
    return tuple(kids)


def from_nat(n: int) -> OmegaCode:
    """Total classical reading; numbers without a shape stay Raw."""
    got = classical_parse(n)
    return got if got is not None else Raw(n)


def to_nat(code: OmegaCode, cap_bits: int = NAT_CAP_BITS) -> int | None:
    """Classical-form number of a code, or None once it outgrows cap_bits.

    The classical rendering of anything but toy codes is astronomically
    large, so partiality is the honest contract here; the structural form
    is the operative one.
    """
    if isinstance(code, Raw):
        return code.n if code.n.bit_length() <= cap_bits else None
    f = C.encode(code.phi)
    if f >= cap_bits:
        return None
    head = 1 << f
    if isinstance(code, Axiomatic):
        return head
    if isinstance(code, Universal):
        tail = _checked_mul(3, _checked_pow(5, code.e, cap_bits), cap_bits)
        return _checked_mul(head, tail, cap_bits)
    if isinstance(code, Inference):
        if len(code.children) > len(_PRIMES):
            return None
        bundle = 1
        for p, child in zip(_PRIMES, code.children):
            c = to_nat(child, cap_bits)
            if c is None:
                return None
            bundle = _checked_mul(bundle, _checked_pow(p, c, cap_bits),
                                  cap_bits)
            if bundle is None:
                return None
        tail = _checked_mul(9, _checked_pow(5, bundle, cap_bits), cap_bits)
        return _checked_mul(head, tail, cap_bits)
    if isinstance(code, Pending):
        w = _checked_mul(_checked_pow(2, code.m, cap_bits),
                         _checked_pow(3, code.z, cap_bits), cap_bits)
        tail = _checked_mul(27, _checked_pow(5, code.e, cap_bits), cap_bits)
        tail = _checked_mul(tail, _checked_pow(7, w, cap_bits), cap_bits)
        return _checked_mul(head, tail, cap_bits)
    raise TypeError(code)


def _checked_pow(p: int, k: int | None, cap_bits: int) -> int | None:
    if k is None or k * p.bit_length() > cap_bits:
        return None
    return p ** k


def _checked_mul(a: int | None, b: int | None, cap_bits: int) -> int | None:
    if a is None or b is None:
        return None
    out = a * b
    return out if out.bit_length() <= cap_bits else None


# --- JSON ----------------------------------------------------------------------

def code_to_json(code: OmegaCode) -> dict:
    from ..syntax.parser import print_formula
    if isinstance(code, Axiomatic):
        return {"tag": "axiomatic", "formula": print_formula(code.phi)}
    if isinstance(code, Universal):
        return {"tag": "universal", "formula": print_formula(code.phi),
                "index": code.e}
    if isinstance(code, Inference):
        return {"tag": "inference", "formula": print_formula(code.phi),
                "children": [code_to_json(c) for c in code.children]}
    if isinstance(code, Pending):
        return {"tag": "pending", "formula": print_formula(code.phi),
                "index": code.e, "arg": code.m, "steps": code.z}
    if isinstance(code, Raw):
        return {"tag": "raw", "value": code.n}
    raise TypeError(code)


def code_from_json(data: dict) -> OmegaCode:
    from ..syntax.parser import parse_formula
    tag = data.get("tag")
    if tag == "axiomatic":
        return Axiomatic(parse_formula(data["formula"]))
    if tag == "universal":
        return Universal(parse_formula(data["formula"]), int(data["index"]))
    if tag == "inference":
        return Inference(parse_formula(data["formula"]),
                         tuple(code_from_json(c) for c in data["children"]))
    if tag == "pending":
        return Pending(parse_formula(data["formula"]), int(data["index"]),
                       int(data["arg"]), int(data.get("steps", 0)))
    if tag == "raw":
        return Raw(int(data["value"]))
    raise ValueError(f"unknown omega code tag {tag!r}")
