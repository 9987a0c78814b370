"""Axiom recognizers, the proof checker, and the proof generators.

The generators are validated against the three-valued evaluator from the
syntax layer: every proof they emit must pass the hint-free checker, and
their true/false verdicts must agree with direct evaluation.
"""
import random

import pytest

from omegabench.errors import NotTrue, ProofError, UnsupportedFormula
from omegabench.syntax import ast as A
from omegabench.syntax import classes as K
from omegabench.syntax import coding as C
from omegabench.syntax import descriptors as D
from omegabench.syntax.parser import parse_formula
import omegabench.hilbert.axioms as AX
from omegabench.hilbert.checker import (HATheory, Hint, ProofObject, QTheory,
                                        check, encode_proof, proof_from_json,
                                        proof_to_json)
from omegabench.hilbert.generate import (prove_delta0, prove_sigma,
                                         refute_delta0)
from omegabench.hilbert.toolkit import ProofBuilder

SIG = D.DEFAULT_SIGNATURE
HA = HATheory(SIG)
Q = QTheory(SIG)

P = parse_formula
a0 = P("0 = 0")
b0 = P("#1 = #2")
c0 = P("#3 = #3")


# --- logical axiom recognizer ------------------------------------------------

POSITIVE_LOGICAL = [
    AX.ax_k(a0, b0),
    AX.ax_s(a0, b0, c0),
    AX.ax_and_i(a0, b0),
    AX.ax_and_e1(a0, b0),
    AX.ax_and_e2(a0, b0),
    AX.ax_or_i1(a0, b0),
    AX.ax_or_i2(a0, b0),
    AX.ax_or_e(a0, b0, c0),
    AX.ax_efq(b0),
    AX.ax_refl(A.App(1, (A.Var("x"), A.num(3)))),
    AX.ax_forall_inst("x", P("x = x"), A.num(4)),
    AX.ax_forall_inst("x", P("exists y. f_1(x, y) = #2"), A.Var("z")),
    AX.ax_exists_intro("x", P("x = #5"), A.num(5)),
    AX.ax_forall_shift("x", a0, P("x = x")),
    AX.ax_exists_elim("x", P("x = 0"), b0),
    AX.ax_leibniz(A.Var("u"), A.num(2), P("f_1(z, z) = #4"), "z"),
]

NEGATIVE_LOGICAL = [
    b0,                                                # a false equation
    A.Imp(a0, b0),
    A.Imp(b0, b0),                                     # identity derives, not axiom
    A.Imp(A.And(a0, b0), c0),
    A.And(a0, a0),
    A.Forall("x", P("x = x")),
    A.Imp(A.Forall("x", P("x = x")), P("y = 0")),      # not an instance
    A.Imp(P("x = #5"), A.Exists("x", P("x = #6"))),    # wrong witness shape
    A.Imp(A.Exists("x", P("x = x")), a0),
    A.Falsum(),
]


@pytest.mark.parametrize("i", range(len(POSITIVE_LOGICAL)))
def test_logical_axioms_recognized(i):
    phi = POSITIVE_LOGICAL[i]
    assert AX.is_logical_axiom(phi), phi


@pytest.mark.parametrize("i", range(len(NEGATIVE_LOGICAL)))
def test_non_axioms_rejected(i):
    phi = NEGATIVE_LOGICAL[i]
    assert not AX.is_logical_axiom(phi), phi


def test_forall_inst_capture_rejected():
    # forall x. exists y. x = S(y), instantiated at the BOUND y: the naive
    # instance exists y. y = S(y) must not be accepted (capture), and the
    # constructor must rename instead.
    phi = A.Exists("y", A.Eq(A.Var("x"), A.succ(A.Var("y"))))
    bad = A.Imp(A.Forall("x", phi),
                A.Exists("y", A.Eq(A.Var("y"), A.succ(A.Var("y")))))
    assert not AX.is_logical_axiom(bad)
    good = AX.ax_forall_inst("x", phi, A.Var("y"))
    assert AX.is_logical_axiom(good)
    inst = good.rhs
    assert isinstance(inst, A.Exists) and inst.var != "y"


def test_forall_shift_side_condition():
    # psi must not mention the shifted variable freely
    psi_bad = P("x = 0")
    phi = P("x = x")
    shape = A.Imp(A.Forall("x", A.Imp(psi_bad, phi)),
                  A.Imp(psi_bad, A.Forall("x", phi)))
    assert not AX.is_logical_axiom(shape)
    with pytest.raises(ProofError):
        AX.ax_forall_shift("x", psi_bad, phi)


def test_exists_elim_side_condition():
    psi_bad = P("x = 0")
    phi = P("x = x")
    shape = A.Imp(A.Forall("x", A.Imp(phi, psi_bad)),
                  A.Imp(A.Exists("x", phi), psi_bad))
    assert not AX.is_logical_axiom(shape)


def test_leibniz_inference():
    # (s = t) -> (chi[s] -> chi[t]) for a chi with several occurrences
    s = A.App(1, (A.num(1), A.num(1)))
    t = A.num(2)
    chi = P("f_2(z, z) = f_1(z, #2)")
    phi = AX.ax_leibniz(s, t, chi, "z")
    assert AX.is_logical_axiom(phi)
    # mixed: one site replaced, one kept, still an instance of some chi
    half = A.Imp(A.Eq(s, t),
                 A.Imp(A.Eq(A.App(2, (s, s)), s), A.Eq(A.App(2, (t, s)), s)))
    assert AX.is_logical_axiom(half)
    # sides swapped in the conclusion is not Leibniz
    wrong = A.Imp(A.Eq(s, t),
                  A.Imp(A.Eq(s, A.Zero()), A.Eq(A.Zero(), t)))
    assert not AX.is_logical_axiom(wrong)


def test_leibniz_numeral_collapse():
    # replacing inside S(...) where substitution collapsed the numeral
    s = A.App(1, (A.num(0), A.num(1)))                 # evaluates to 1
    phi = A.Imp(A.Eq(A.num(1), s),
                A.Imp(A.Eq(A.num(2), A.num(2)),
                      A.Eq(A.Succ(s), A.num(2))))
    assert AX.is_logical_axiom(phi)


# --- theory axiom recognizers ------------------------------------------------

def test_ha_axiom_clauses():
    assert AX.is_ha_axiom(AX.succ_inj(A.Var("x"), A.num(3)), SIG)
    assert AX.is_ha_axiom(AX.succ_nonzero(A.Var("x")), SIG)
    assert AX.is_ha_axiom(P("S(x) = 0 -> _|_"), SIG)
    assert not AX.is_ha_axiom(P("0 = S(x) -> _|_"), SIG)   # orientation only
    assert AX.is_ha_axiom(P("f_1(#2, #2) = #4"), SIG)      # computation
    assert not AX.is_ha_axiom(P("f_1(#2, #2) = #5"), SIG)
    assert not AX.is_ha_axiom(P("f_1(x, #2) = #4"), SIG)   # open: not closed inst
    assert AX.is_ha_axiom(AX.enumeration_axiom(3), SIG)
    assert AX.is_ha_axiom(AX.enumeration_axiom(0), SIG)
    ind = AX.induction_axiom("x", P("f_1(x, 0) = x"))
    assert AX.is_ha_axiom(ind, SIG)
    assert not AX.is_q_axiom(ind, SIG)                     # Q has no induction
    assert AX.is_q_axiom(P("f_1(#2, #2) = #4"), SIG)
    assert AX.which_ha_axiom(P("0 = 0"), SIG) is None


def test_computation_instance_fuel_monotone():
    phi = P("f_2(#6, #6) = #36")
    assert not AX.is_ha_axiom(phi, SIG, fuel=5)
    assert AX.is_ha_axiom(phi, SIG, fuel=100_000)


def test_bridge_axiom_is_ha_axiom():
    phi = P("exists x. f_1(x, x) = #4")
    for direction in ("to_nf", "from_nf"):
        br = AX.bridge_axiom(phi, "sigma", direction, SIG)
        assert AX.is_ha_axiom(br, SIG), direction
        assert not AX.is_q_axiom(br, SIG), direction


def test_bridge_rejects_classical_only():
    # a disjunction of Pi sentences normalizes only classically
    phi = A.Or(A.Forall("x", P("x = x")), A.Forall("y", P("y = y")))
    nf = K.normal_form(phi, SIG, "pi")
    assert not nf.ha_provable
    with pytest.raises(UnsupportedFormula):
        AX.bridge_axiom(phi, "pi", "to_nf", SIG)


# --- native recognizers over codes ---------------------------------------------

def test_native_recognizers():
    ax = AX.ax_k(a0, b0)
    assert AX._nat_ax_logical(C.encode(ax)) == 0
    assert AX._nat_ax_logical(C.encode(b0)) == 1
    comp = P("f_1(#2, #3) = #5")
    v = C.encode(comp)
    assert AX._nat_ha_ax(v, 100_000) == 0
    assert AX._nat_ha_ax(v, 1) == 1                      # fuel budget honored
    assert AX._nat_q_ax(v, 100_000) == 0
    ind = C.encode(AX.induction_axiom("x", P("x = 0")))
    assert AX._nat_ha_ax(ind, 10) == 0                   # no machine work needed
    assert AX._nat_q_ax(ind, 100_000) == 1
    assert AX._nat_ha_ax(7, 100) == 1                    # malformed code


def test_rule_step_native():
    phi, psi = a0, c0
    imp = A.Imp(phi, psi)
    items = C.encode([C.encode(imp), C.encode(phi)])
    assert AX._nat_rule_step(C.encode(psi), items) == 0
    assert AX._nat_rule_step(C.encode(b0), items) == 1
    gen = A.Forall("x", P("x = x"))
    items2 = C.encode([C.encode(P("x = x"))])
    assert AX._nat_rule_step(C.encode(gen), items2) == 0
    assert AX._nat_rule_step(C.encode(gen), C.encode([])) == 1


# --- checker ----------------------------------------------------------------

def _mp_chain_proof():
    b = ProofBuilder()
    k = b.logic(AX.ax_k(a0, b0))
    r = b.logic(AX.ax_refl(A.Zero()))
    b.mp(k, r)
    return b.build()


def test_checker_accepts_hinted_and_hintfree():
    pf = _mp_chain_proof()
    assert check(pf, HA).ok
    bare = ProofObject(lines=pf.lines, hints=(None,) * len(pf.lines))
    assert check(bare, HA).ok


def test_checker_rejects_garbage():
    bad = ProofObject(lines=(b0,), hints=(None,))
    rep = check(bad, HA)
    assert not rep.ok
    assert rep.failures[0][0] == 0
    with pytest.raises(ProofError):
        rep.ensure()


def test_checker_rejects_wrong_hint():
    pf = _mp_chain_proof()
    hints = list(pf.hints)
    hints[-1] = Hint(kind="mp", j=1, k=0)                # arguments flipped
    assert not check(ProofObject(pf.lines, tuple(hints)), HA).ok


def test_checker_generalization():
    b = ProofBuilder()
    r = b.logic(AX.ax_refl(A.Var("x")))
    b.gen(r, "x")
    pf = b.build()
    assert pf.conclusion == A.Forall("x", P("x = x"))
    assert check(pf, HA).ok
    bare = ProofObject(lines=pf.lines, hints=(None,) * len(pf.lines))
    assert check(bare, HA).ok


def test_theory_line_needs_theory():
    phi = P("f_1(#2, #3) = #5")
    pf = ProofObject(lines=(phi,), hints=(None,))
    assert check(pf, HA).ok
    assert not check(pf).ok                              # pure logic: no axioms


def test_q_theory_is_weaker():
    ind = AX.induction_axiom("x", P("f_1(x, 0) = x"))
    pf = ProofObject(lines=(ind,), hints=(None,))
    assert check(pf, HA).ok
    assert not check(pf, Q).ok


# --- proof JSON / encoding ----------------------------------------------------

def test_proof_json_roundtrip():
    pf = prove_delta0(P("forall x < #3. f_1(x, x) = f_2(x, #2)"), SIG)
    data = proof_to_json(pf, SIG)
    back = proof_from_json(data, SIG)
    assert back.lines == pf.lines
    assert check(back, HA).ok


def test_proof_json_remaps_fresh_descriptors():
    # a signature with an interned descriptor gets remapped on load into a
    # fresh signature that assigns a different id
    sig1 = D._build_default_signature()
    square = D.compose(D.MUL, D.Proj(0, 1), D.Proj(0, 1))
    fid1 = sig1.intern(square)
    phi = A.Eq(A.App(fid1, (A.num(3),)), A.num(9))
    pf = prove_delta0(phi, sig1)
    data = proof_to_json(pf, sig1)

    sig2 = D._build_default_signature()
    pad = D.compose(D.ADD, D.Proj(0, 1), D.Proj(0, 1))
    sig2.intern(pad)                                     # shift the id space
    back = proof_from_json(data, sig2)
    fid2 = sig2.intern(square)
    assert fid2 != fid1
    assert back.conclusion == A.Eq(A.App(fid2, (A.num(3),)), A.num(9))
    assert check(back, HATheory(sig2)).ok


def test_encode_proof_is_sequence_of_formula_codes():
    pf = _mp_chain_proof()
    v = encode_proof(pf)
    assert C.decode_seq(v) == [C.encode(l) for l in pf.lines]


# --- generator vs evaluator ----------------------------------------------------

def _rand_term(rng, depth, fv):
    r = rng.random()
    if depth <= 0 or r < 0.35:
        if fv and rng.random() < 0.5:
            return A.Var(rng.choice(fv))
        return A.num(rng.randrange(0, 7))
    if r < 0.5:
        return A.succ(_rand_term(rng, depth - 1, fv))
    fid = rng.choice([D.F_ADD, D.F_MUL, D.F_MONUS, D.F_SGN, D.F_PRED])
    n = SIG.fid_arity(fid)
    return A.App(fid, tuple(_rand_term(rng, depth - 1, fv) for _ in range(n)))


def _rand_delta0(rng, depth, fv):
    r = rng.random()
    if depth <= 0 or r < 0.3:
        return A.Eq(_rand_term(rng, 1, fv), _rand_term(rng, 1, fv))
    if r < 0.45:
        return A.And(_rand_delta0(rng, depth - 1, fv),
                     _rand_delta0(rng, depth - 1, fv))
    if r < 0.6:
        return A.Or(_rand_delta0(rng, depth - 1, fv),
                    _rand_delta0(rng, depth - 1, fv))
    if r < 0.75:
        return A.Imp(_rand_delta0(rng, depth - 1, fv),
                     _rand_delta0(rng, depth - 1, fv))
    x = f"v{len(fv)}"
    body = _rand_delta0(rng, depth - 1, fv + [x])
    bound = A.num(rng.randrange(0, 4))
    if r < 0.9:
        return K.bounded_forall(x, bound, body)
    return K.bounded_exists(x, bound, body)


def test_prove_delta0_agrees_with_evaluator():
    rng = random.Random(20260815)
    proved = refuted = 0
    for _ in range(120):
        phi = _rand_delta0(rng, 3, [])
        want = K.eval_true(phi, {}, SIG)
        assert want is not None
        if want:
            pf = prove_delta0(phi, SIG)
            assert pf.conclusion == phi
            proved += 1
        else:
            pf = refute_delta0(phi, SIG)
            assert pf.conclusion == A.Imp(phi, A.Falsum())
            refuted += 1
        check(pf, HA).ensure()
        # every proof also passes with hints stripped
        bare = ProofObject(lines=pf.lines, hints=(None,) * len(pf.lines))
        check(bare, HA).ensure()
    assert proved >= 20 and refuted >= 20


def test_prove_delta0_rejects_open_and_nondelta0():
    with pytest.raises(UnsupportedFormula):
        prove_delta0(P("x = x"), SIG)
    with pytest.raises(UnsupportedFormula):
        prove_delta0(P("forall x. x = x"), SIG)


def test_prove_sigma_cases():
    cases = [
        ("exists x. x = #5", [5]),
        ("exists x. exists y. f_1(x, y) = #5", [2, 3]),
        ("(exists x. x = #2) & (exists y. y = #3)", [2, 3]),
        ("(#1 = #2) | (exists x. x = #3)", [3]),
        ("(#1 = #2) -> (exists x. x = #99)", []),
        ("(#1 = #1) -> (exists x. x = #3)", [3]),
        ("exists x. forall y < #3. f_1(y, x) = f_1(x, y)", [7]),
        ("exists x. (#2 < x) & (x < #9)", [4]),
    ]
    for s, w in cases:
        phi = P(s)
        pf = prove_sigma(phi, w, SIG)
        assert pf.conclusion == phi, s
        check(pf, HA).ensure()


def test_prove_sigma_bad_witness():
    with pytest.raises(NotTrue):
        prove_sigma(P("exists x. x = #5"), [4], SIG)
    with pytest.raises(UnsupportedFormula):
        prove_sigma(P("exists x. x = #5"), [], SIG)


def test_refutation_carried_by_not_true():
    phi = P("exists x < #3. f_1(x, x) = #7")
    with pytest.raises(NotTrue) as exc:
        prove_delta0(phi, SIG)
    pf = exc.value.refutation
    assert pf.conclusion == A.Imp(phi, A.Falsum())
    check(pf, HA).ensure()


# --- toolkit ------------------------------------------------------------------

def test_toolkit_templates_check():
    b = ProofBuilder()
    b.identity(b0)
    i = b.logic(AX.ax_refl(A.Zero()))
    b.const_imp(b0, i)
    b.dneg(a0)
    ab = b.logic(AX.ax_k(a0, b0))                        # a0 -> (b0 -> a0)
    sw = b.swap(ab)                                      # b0 -> (a0 -> a0)
    assert b.at(sw) == A.Imp(b0, A.Imp(a0, a0))
    b.mp(ab, i)
    pf = b.build()
    check(pf, HA).ensure()


def test_toolkit_rewrite():
    # from 2+2 = 4 rewrite a computed fact into a composite term
    b = ProofBuilder()
    eq = b.theory(P("f_1(#2, #2) = #4"), cert=("computation",))
    sym = b.eq_sym(eq)                                   # #4 = f_1(#2, #2)
    base = b.theory(P("f_2(#4, 0) = 0"), cert=("computation",))
    chi = P("f_2(z, 0) = 0")
    out = b.rewrite(sym, chi, "z", base)
    assert b.at(out) == P("f_2(f_1(#2, #2), 0) = 0")
    check(b.build(out), HA).ensure()
