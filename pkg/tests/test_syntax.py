"""Syntax layer: terms, coding, parsing, substitution, classes.

The oracles here are deliberately independent re-implementations: a de
Bruijn converter for alpha-matters, a from-scratch bit-pairing function, and
hand-written Python semantics for the arithmetic descriptor ids.
"""
from __future__ import annotations

import random

import pytest

from omegabench.syntax import ast as A
from omegabench.syntax import coding as C
from omegabench.syntax import descriptors as D
from omegabench.syntax import parser as P
from omegabench.syntax import (FormulaClass, classify, eval_true, lt_formula,
                               normal_form)
from omegabench.errors import MalformedCodeError

# --- oracle 1: independent pairing -------------------------------------------


def oracle_pair(a: int, b: int) -> int:
    la = a.bit_length()
    h = la.bit_length()
    bits = "1" + "1" * h + "0"
    bits += format(la, "b").zfill(h) if h else ""
    bits += format(a, "b") if la else ""
    bits += format(b, "b") if b else ""
    return int(bits, 2)


# --- oracle 2: de Bruijn skeletons for alpha-equivalence ----------------------


def db_term(t, env):
    if isinstance(t, A.Var):
        return ("b", env.index(t.name)) if t.name in env else ("f", t.name)
    if isinstance(t, A.Zero):
        return ("0",)
    if isinstance(t, A.Num):
        return ("n", t.n)
    if isinstance(t, A.Succ):
        return ("s", db_term(t.arg, env))
    return ("a", t.fid, tuple(db_term(x, env) for x in t.args))


def db(phi, env=()):
    if isinstance(phi, A.Falsum):
        return ("F",)
    if isinstance(phi, A.Eq):
        return ("=", db_term(phi.lhs, env), db_term(phi.rhs, env))
    if isinstance(phi, (A.And, A.Or, A.Imp)):
        return (type(phi).__name__, db(phi.lhs, env), db(phi.rhs, env))
    return (type(phi).__name__, db(phi.body, (phi.var,) + env))


def alpha_eq(a, b) -> bool:
    return db(a) == db(b)


# --- oracle 3: hand-written semantics of the arithmetic ids ------------------

ARITH_ORACLE = {
    D.F_MONUS: lambda a, b: max(a - b, 0),
    D.F_ADD: lambda a, b: a + b,
    D.F_MUL: lambda a, b: a * b,
    D.F_SGN: lambda a: 1 if a else 0,
    D.F_PRED: lambda a: max(a - 1, 0),
    D.F_POW2: lambda a: 2 ** a,
}


# --- random generators --------------------------------------------------------

VARS = ["x", "y", "z", "u", "v"]


def rand_term(rng, depth, vars_):
    pick = rng.random()
    if depth <= 0 or pick < 0.35:
        k = rng.random()
        if vars_ and k < 0.5:
            return A.Var(rng.choice(vars_))
        if k < 0.75:
            return A.num(rng.randrange(4))
        return A.num(rng.randrange(10))
    if pick < 0.55:
        return A.succ(rand_term(rng, depth - 1, vars_))
    fid = rng.choice([D.F_MONUS, D.F_ADD, D.F_MUL, D.F_SGN, D.F_PRED])
    n = 1 if fid in (D.F_SGN, D.F_PRED) else 2
    return A.App(fid, tuple(rand_term(rng, depth - 1, vars_) for _ in range(n)))


def rand_delta0(rng, depth, vars_):
    pick = rng.random()
    if depth <= 0 or pick < 0.3:
        if rng.random() < 0.08:
            return A.Falsum()
        return A.Eq(rand_term(rng, depth, vars_), rand_term(rng, depth, vars_))
    if pick < 0.7:
        ctor = rng.choice([A.And, A.Or, A.Imp])
        return ctor(rand_delta0(rng, depth - 1, vars_),
                    rand_delta0(rng, depth - 1, vars_))
    v = rng.choice([w for w in VARS if w not in vars_])
    bound = rand_term(rng, 1, vars_)
    body = rand_delta0(rng, depth - 1, vars_ + [v])
    if rng.random() < 0.5:
        return A.Forall(v, A.Imp(lt_formula(A.Var(v), bound), body))
    return A.Exists(v, A.And(lt_formula(A.Var(v), bound), body))


def rand_formula(rng, depth, vars_):
    if depth > 0 and rng.random() < 0.3:
        v = rng.choice([w for w in VARS if w not in vars_] or ["q"])
        ctor = rng.choice([A.Forall, A.Exists])
        return ctor(v, rand_formula(rng, depth - 1, vars_ + [v]))
    return rand_delta0(rng, depth, vars_)


# --- independent truth oracle (no package evaluator) --------------------------


def oracle_term(t, env):
    if isinstance(t, A.Var):
        return env[t.name]
    if isinstance(t, A.Zero):
        return 0
    if isinstance(t, A.Num):
        return t.n
    if isinstance(t, A.Succ):
        return oracle_term(t.arg, env) + 1
    return ARITH_ORACLE[t.fid](*(oracle_term(a, env) for a in t.args))


def oracle_truth(phi, env):
    """Total on Delta0 formulas over the arithmetic ids."""
    if isinstance(phi, A.Falsum):
        return False
    if isinstance(phi, A.Eq):
        return oracle_term(phi.lhs, env) == oracle_term(phi.rhs, env)
    if isinstance(phi, A.And):
        return oracle_truth(phi.lhs, env) and oracle_truth(phi.rhs, env)
    if isinstance(phi, A.Or):
        return oracle_truth(phi.lhs, env) or oracle_truth(phi.rhs, env)
    if isinstance(phi, A.Imp):
        return (not oracle_truth(phi.lhs, env)) or oracle_truth(phi.rhs, env)
    if isinstance(phi, A.Forall):
        v, b, body = phi.var, phi.body.lhs, phi.body.rhs
        bound = oracle_term(b.lhs.args[1], env)
        return all(oracle_truth(body, {**env, v: k}) for k in range(bound))
    if isinstance(phi, A.Exists):
        v, b, body = phi.var, phi.body.lhs, phi.body.rhs
        bound = oracle_term(b.lhs.args[1], env)
        return any(oracle_truth(body, {**env, v: k}) for k in range(bound))
    raise AssertionError(phi)


# --- pairing and coding -------------------------------------------------------


def test_pair_matches_independent_oracle():
    rng = random.Random(11)
    for _ in range(500):
        a = rng.randrange(0, 1 << rng.randrange(1, 40))
        b = rng.randrange(0, 1 << rng.randrange(1, 40))
        assert C.pair(a, b) == oracle_pair(a, b)
        l, r = C.unpair(C.pair(a, b))
        assert (l, r) == (a, b)


def test_pair_growth_is_linear_in_bits():
    a = (1 << 200) - 3
    b = (1 << 300) + 7
    c = C.pair(a, b)
    assert c.bit_length() < 200 + 300 + 40


def test_unpair_rejects_non_image():
    hits = 0
    for n in range(5000):
        got = C.try_unpair(n)
        if got is None:
            continue
        hits += 1
        assert C.pair(*got) == n
    assert hits > 50          # plenty of valid pairs in range


def test_small_codes_are_malformed():
    for n in range(8):
        with pytest.raises(MalformedCodeError):
            C.decode(n)


def test_encode_decode_roundtrip_random():
    rng = random.Random(23)
    for _ in range(250):
        phi = rand_formula(rng, 3, [])
        c = C.encode(phi)
        assert C.decode(c) == phi
    for _ in range(250):
        t = rand_term(rng, 3, ["x", "y"])
        c = C.encode(t)
        assert C.decode(c) == t


def test_encode_injective_on_sample():
    rng = random.Random(31)
    seen = {}
    for _ in range(400):
        phi = rand_formula(rng, 3, [])
        c = C.encode(phi)
        if c in seen:
            assert seen[c] == phi
        seen[c] = phi


def test_decode_encode_identity_on_image_scan():
    # every decodable small number re-encodes to itself (canonical coding)
    decodable = 0
    for n in range(20000):
        try:
            obj = C.decode(n)
        except MalformedCodeError:
            continue
        decodable += 1
        assert C.encode(obj) == n
    assert decodable > 0


def test_sequence_codes():
    rng = random.Random(47)
    for _ in range(100):
        xs = [rng.randrange(100) for _ in range(rng.randrange(0, 6))]
        c = C.encode(xs)
        assert C.decode_seq(c) == xs
        assert C.seq_is(c) == 0
        assert C.seq_len(c) == len(xs)
        for i, x in enumerate(xs):
            assert C.seq_el(c, i) == x
        for k in range(len(xs) + 1):
            assert C.decode_seq(C.seq_restr(c, k)) == xs[:k]
    assert C.seq_is(C.encode(A.Zero())) == 1


def test_numeral_codes_strictly_monotone_in_n():
    # nm is injective; handy sanity for substitution of numerals
    vals = [C.nm(n) for n in range(50)]
    assert len(set(vals)) == 50


# --- parser -------------------------------------------------------------------


def test_parser_roundtrip_random():
    rng = random.Random(59)
    for _ in range(300):
        phi = rand_formula(rng, 3, [])
        assert P.parse_formula(P.print_formula(phi)) == phi


def test_parser_fixed_strings():
    phi = P.parse_formula("forall x. (x = 0 | exists y. x = S(y))")
    assert isinstance(phi, A.Forall)
    assert P.parse_formula("_|_") == A.Falsum()
    assert P.parse_formula("#3 = S(S(S(0)))") == A.Eq(A.num(3), A.num(3))
    with pytest.raises(Exception):
        P.parse_formula("forall x x = 0")
    with pytest.raises(Exception):
        P.parse_formula("x = ")


def test_printer_parenthesizes_minimally():
    s = P.print_formula(P.parse_formula("x = 0 -> y = 0 -> z = 0"))
    assert s == "x=0 -> y=0 -> z=0"          # right-assoc needs no parens
    t = P.parse_formula("(x = 0 -> y = 0) -> z = 0")
    assert P.parse_formula(P.print_formula(t)) == t


# --- substitution -------------------------------------------------------------


def test_sb_avoids_capture_handcrafted():
    # (forall y. x = y)[x := y]  must rename the binder
    phi = A.Forall("y", A.Eq(A.Var("x"), A.Var("y")))
    got = A.sb(phi, ["x"], [A.Var("y")])
    want = A.Forall("y_1", A.Eq(A.Var("y"), A.Var("y_1")))
    assert alpha_eq(got, want)
    assert "y" in A.free_vars(got)


def test_sb_noop_for_bound_variable():
    phi = A.Forall("x", A.Eq(A.Var("x"), A.Zero()))
    assert A.sb(phi, ["x"], [A.num(5)]) == phi


def test_sb_substitution_lemma_semantic():
    # truth of phi[x:=numeral k]  ==  truth of phi at x=k
    rng = random.Random(61)
    for _ in range(150):
        phi = rand_delta0(rng, 2, ["x"])
        k = rng.randrange(5)
        inst = A.sb(phi, ["x"], [A.num(k)])
        assert not A.free_vars(inst) - {"y", "z", "u", "v"}
        env = {w: rng.randrange(4) for w in A.free_vars(inst) | {"x"}}
        env["x"] = k
        assert oracle_truth(inst, env) == oracle_truth(phi, env)


def test_sb_codes_commutes_with_syntactic_sb():
    rng = random.Random(67)
    for _ in range(150):
        phi = rand_delta0(rng, 2, ["x", "y"])
        k = rng.randrange(6)
        code = C.encode(phi)
        direct = C.encode(A.sb(phi, ["x"], [A.num(k)]))
        via_codes = C.sb_codes(code, [C.encode(A.Var("x"))], [C.nm(k)])
        assert direct == via_codes


def test_sb_codes_total_on_garbage():
    assert C.sb_codes(7, [C.encode(A.Var("x"))], [C.nm(1)]) == 0
    assert C.sb_codes(C.encode(A.Falsum()), [5], [C.nm(1)]) == 0


# --- classification -----------------------------------------------------------


def test_classify_table():
    f = P.parse_formula
    cases = [
        ("0 = 0", FormulaClass.Delta0),
        ("_|_", FormulaClass.Delta0),
        ("forall x. (f_0(S(x), #4) = 0 -> x = 0 | x = #1)", FormulaClass.Delta0),
        ("exists y. y = #2", FormulaClass.Sigma1),
        ("forall y. y = #2", FormulaClass.Pi1),
        ("forall x. exists y. y = S(x)", FormulaClass.Pi2),
        ("exists x. exists y. x = y", FormulaClass.Sigma),
        ("forall x. forall y. x = y", FormulaClass.Pi),
        ("exists x. forall y. x = y", FormulaClass.Other),
        ("(forall x. x = 0) -> 0 = 0", FormulaClass.Other),   # Pi1 antecedent
    ]
    for s, want in cases:
        assert classify(f(s)) is want, s


def test_classify_bounded_quantifier_bound_must_omit_var():
    # x < S(x) is not a legal bound (mentions x): quantifier stays unbounded,
    # so this is Pi1 rather than Delta0
    phi = A.Forall("x", A.Imp(lt_formula(A.Var("x"), A.succ(A.Var("x"))),
                              A.Eq(A.Var("x"), A.Var("x"))))
    assert classify(phi) is FormulaClass.Pi1


# --- normal forms vs the truth oracle ------------------------------------------


def test_delta0_representing_function_random():
    rng = random.Random(71)
    for _ in range(120):
        phi = rand_delta0(rng, 2, ["x", "y"])
        nf = normal_form(phi)
        assert nf.cls == "delta0"
        env = {v: rng.randrange(4) for v in nf.params}
        args = [env[v] for v in nf.params]
        want = oracle_truth(phi, env)
        assert (D.eval_pr(nf.matrix, args) == 0) == want


def test_sigma_normal_form_soundness_and_witnesses():
    f = P.parse_formula
    enc = C.pair
    # (formula, witness builder) pairs with explicit packed witnesses
    phi1 = f("exists x. x = #3")
    w1 = enc(3, 0)
    phi2 = f("exists x. exists y. (x = S(y) & y = #2)")
    w2 = enc(3, enc(2, 0))
    phi3 = f("exists x. x = #1 | exists y. y = 0")
    w3 = enc(1, enc(0, enc(0, 0)))   # right branch selected by (w)_0 = 1? see cond
    for phi, w in [(phi1, w1), (phi2, w2)]:
        nf = normal_form(phi)
        assert D.eval_pr(nf.matrix, [w]) == 0
    nf3 = normal_form(phi3)
    found = any(D.eval_pr(nf3.matrix, [w]) == 0
                for w in [enc(0, enc(1, 0)), enc(1, enc(0, 0)), w3])
    assert found
    # soundness sweep: F(w)=0 for some scanned w only if formula is true
    bad = f("exists x. (x = S(x))")
    nfb = normal_form(bad)
    assert all(D.eval_pr(nfb.matrix, [w]) != 0 for w in range(3000))


def test_pi_normal_form_for_negated_sigma():
    t = A.neg(P.parse_formula("exists x. x = S(x)"))     # true Pi
    nf = normal_form(t)
    assert nf.cls == "pi" and nf.ha_provable
    assert all(D.eval_pr(nf.matrix, [w]) == 0 for w in range(500))
    fls = A.neg(P.parse_formula("exists x. x = #2"))     # false Pi
    nff = normal_form(fls)
    w = C.pair(C.pair(2, 0), 0)
    assert D.eval_pr(nff.matrix, [w]) != 0


def test_pi_or_merge_flagged_not_ha():
    phi = A.Or(A.Forall("x", A.Eq(A.Var("x"), A.Var("x"))),
               A.Forall("y", A.Eq(A.Var("y"), A.Zero())))
    nf = normal_form(phi)
    assert nf.cls == "pi" and not nf.ha_provable


def test_eval_true_three_valued():
    f = P.parse_formula
    assert eval_true(f("forall x. exists y. y = S(x)")) is None   # probe only
    assert eval_true(f("exists y. y = #7")) is True
    assert eval_true(f("forall x. x = 0")) is False
    assert eval_true(f("forall x. (f_0(S(x), #6) = 0 -> f_0(x, #6) = 0)")) is True
