"""Provability predicates, diagonalization, and reflection progressions."""
import pytest

import omegabench.arith as AR
import omegabench.arith.natives as N
import omegabench.arith.provability as P
import omegabench.kleene_o as O
from omegabench.errors import StageError, UnsupportedFormula
from omegabench.arith.progression import KINDS
from omegabench.hilbert import axioms as AX
from omegabench.hilbert.checker import HATheory, check, encode_proof
from omegabench.hilbert.toolkit import ProofBuilder
from omegabench.syntax import ast as A
from omegabench.syntax import classes as K
from omegabench.syntax import coding as C
from omegabench.syntax import descriptors as D

U = A.Var("u")


def templates():
    """Self-slot formulas exercising substitution corners."""
    x, u = A.Var("x"), U
    return [
        A.Eq(u, A.Zero()),
        A.Imp(A.Eq(u, A.Zero()), A.Falsum()),
        A.Exists("x", A.Eq(x, u)),
        A.Forall("x", A.Imp(A.Eq(x, u), A.Eq(u, x))),
        A.Forall("u", A.Eq(A.Var("u"), A.Zero())),          # u rebound: vacuous
        A.And(A.Eq(u, u), A.Exists("u", A.Eq(A.Var("u"), A.Zero()))),
        A.Or(A.Eq(A.App(D.F_ADD, (u, A.num(1))), A.num(3)), A.Eq(u, u)),
        A.Exists("w", A.And(A.Eq(A.Var("w"), u), A.Eq(u, A.Var("w")))),
        A.Imp(A.Exists("x", A.Eq(x, u)), A.Forall("y", A.Eq(A.Var("y"), u))),
        A.Eq(A.App(D.F_SB1, (u, A.num(C.encode(A.Var("x"))), A.App(D.F_NM, (u,)))),
             A.Zero()),
    ]


class TestDiagonal:
    def test_exact_identity_on_corpus(self):
        for phi in templates():
            d = AR.diagonalize(phi)
            assert N.diag(d.g) == d.code, phi

    def test_native_program_form(self):
        d = AR.diagonalize(templates()[1])
        assert D.eval_pr(D.Native("diag"), [d.g]) == d.code

    def test_delta_is_instance_of_template(self):
        phi = templates()[2]
        d = AR.diagonalize(phi)
        assert d.delta == A.sb(phi, ["u"], [d.self_term])

    def test_unfolded(self):
        phi = templates()[0]
        d = AR.diagonalize(phi)
        assert AR.unfolded(d) == A.Eq(A.num(d.code), A.Zero())

    def test_fixed_point_proofs_check(self):
        for phi in templates():
            d = AR.diagonalize(phi)
            rep = check(AR.fixed_point_proof(d), HATheory())
            assert rep.ok, (phi, rep.failures)

    def test_fixed_point_conclusion_shape(self):
        d = AR.diagonalize(templates()[3])
        pf = AR.fixed_point_proof(d)
        assert pf.conclusion == A.And(A.Imp(d.delta, AR.unfolded(d)),
                                      A.Imp(AR.unfolded(d), d.delta))


class TestProvability:
    def test_prf_accepts_a_real_proof(self):
        # one theory line proving an axiom, encoded as a sequence
        ax = A.Eq(A.App(D.F_ADD, (A.num(1), A.num(1))), A.num(2))
        assert AX.which_ha_axiom(ax) == "computation"
        b = ProofBuilder()
        pf = b.build(b.theory(ax))
        y = encode_proof(pf)
        x = C.encode(ax)
        prf = P.prf_formula(P.alpha0(), "x", "y")
        assert K.eval_true(prf, {"x": x, "y": y}, exists_bound=256)

    def test_prf_rejects_a_non_proof(self):
        ax = A.Eq(A.App(D.F_ADD, (A.num(1), A.num(1))), A.num(2))
        bad = A.Eq(A.num(1), A.num(2))
        b = ProofBuilder()
        pf = b.build(b.theory(ax))
        y = encode_proof(pf)
        prf = P.prf_formula(P.alpha0(), "x", "y")
        # wrong conclusion
        assert not K.eval_true(prf, {"x": C.encode(bad), "y": y},
                               exists_bound=256)
        # wrong "proof" (an axiom claimed without being one)
        b2 = ProofBuilder()
        pf2 = b2.build(b2.theory(bad))
        assert not K.eval_true(prf, {"x": C.encode(bad),
                                     "y": encode_proof(pf2)},
                               exists_bound=256)

    def test_prf_accepts_modus_ponens(self):
        ax = A.Eq(A.App(D.F_ADD, (A.num(1), A.num(1))), A.num(2))
        b = ProofBuilder()
        i = b.theory(ax)
        j = b.logic(AX.ax_k(ax, ax))
        k = b.mp(j, i)
        m = b.mp(k, i)
        pf = b.build(m)
        prf = P.prf_formula(P.alpha0(), "x", "y")
        assert K.eval_true(prf, {"x": C.encode(pf.conclusion),
                                 "y": encode_proof(pf)}, exists_bound=256)

    def test_pr_and_rho_classes(self):
        assert K.is_sigma(P.pr_formula(P.alpha0()))
        for kind in KINDS:
            rho = AR.rho_formula(kind)
            assert A.free_vars(rho) == {"u", "z", "v"}
            assert K.is_sigma(rho), kind

    def test_instance_shapes(self):
        a0 = P.alpha0()
        con = P.con_instance(a0, 3)
        assert isinstance(con, A.Imp) and isinstance(con.rhs, A.Falsum)
        assert not A.free_vars(con)
        s = A.Eq(A.Zero(), A.Zero())
        lrf = P.lrf_instance(a0, 3, s)
        assert isinstance(lrf, A.Imp) and lrf.rhs == s
        phx = A.Eq(A.Var("x"), A.Var("x"))
        urf = P.urf_instance(a0, 3, phx, "x")
        assert isinstance(urf, A.Forall) and urf.var == "x"
        assert urf.body.rhs == phx
        assert not A.free_vars(urf)

    def test_instance_guards(self):
        a0 = P.alpha0()
        with pytest.raises(UnsupportedFormula):
            P.lrf_instance(a0, 0, A.Eq(A.Var("x"), A.Zero()))
        with pytest.raises(UnsupportedFormula):
            P.urf_instance(a0, 0, A.Eq(A.Var("x"), A.Var("y")), "x")

    def test_quoting_natives_agree_with_builders(self):
        a0 = P.alpha0()
        ac = C.encode(a0)
        assert N.con_inst(ac, 4) == C.encode(P.con_instance(a0, 4))
        s = A.Eq(A.Zero(), A.Zero())
        assert N.lrf_inst(ac, 2, C.encode(s)) == C.encode(P.lrf_instance(a0, 2, s))
        phx = A.Eq(A.Var("x"), A.Var("x"))
        assert N.urf_inst(ac, 2, C.encode(phx), C.encode(A.Var("x"))) == \
            C.encode(P.urf_instance(a0, 2, phx, "x"))
        assert N.pr_code(ac, C.encode(A.num(1)), C.encode(A.num(9))) == \
            C.encode(P.pr_instance(a0, A.num(9), A.num(1)))

    def test_quoting_natives_total_on_garbage(self):
        assert N.urf_inst(0, 0, 0, 0) == 0
        assert N.con_inst(12345, 0) in (0, N.con_inst(12345, 0))
        assert N.lrf_inst(C.encode(P.alpha0()), 0, 17) == 0
        # open formula rejected
        openf = C.encode(A.Eq(A.Var("x"), A.Var("y")))
        assert N.lrf_inst(C.encode(P.alpha0()), 0, openf) == 0


class TestProgression:
    @pytest.mark.parametrize("kind", ["con", "lrf", "urf"])
    @pytest.mark.parametrize("strong", [False, True])
    def test_build_shapes(self, kind, strong):
        prog = AR.build_progression(kind, strong=strong)
        assert A.free_vars(prog.alpha) == {P.VAR_STAGE, P.VAR_AXIOM}
        assert K.is_sigma(prog.alpha)
        assert N.diag(prog.diagonal.g) == prog.code

    def test_fixed_point_proof_checks(self):
        prog = AR.build_progression("urf")
        rep = check(AR.fixed_point_proof(prog.diagonal), HATheory())
        assert rep.ok, rep.failures

    def test_stage_zero_formula_matches_axiom_predicate(self):
        # small exists_bound: the successor-stage clause evaluates pow2(d)
        # for each candidate d, which is exponential-cost by design
        prog = AR.build_progression("urf")
        ax = AX.succ_inj(A.num(1), A.num(2))     # syntactic: witness 0
        inst = A.sb(prog.alpha, [P.VAR_STAGE, P.VAR_AXIOM],
                    [A.num(0), A.num(C.encode(ax))])
        assert K.eval_true(inst, {}, exists_bound=12) is True
        # a non-axiom is never confirmed (the unbounded search cannot
        # refute, so anything but True is correct here)
        non = A.sb(prog.alpha, [P.VAR_STAGE, P.VAR_AXIOM],
                   [A.num(0), A.num(C.encode(A.Eq(A.num(1), A.num(2))))])
        assert K.eval_true(non, {}, exists_bound=12) is not True

    def test_reflection_instance_dispatch(self):
        con = AR.build_progression("con")
        urf = AR.build_progression("urf")
        ci = AR.reflection_instance(con, 0)
        assert isinstance(ci, A.Imp) and isinstance(ci.rhs, A.Falsum)
        phx = A.Eq(A.Var("x"), A.Var("x"))
        ui = AR.reflection_instance(urf, O.fin(1), phx, "x")
        assert isinstance(ui, A.Forall)
        with pytest.raises(UnsupportedFormula):
            AR.reflection_instance(urf, 0)

    def test_unrenderable_stage_rejected(self):
        urf = AR.build_progression("urf")
        phx = A.Eq(A.Var("x"), A.Var("x"))
        with pytest.raises(StageError):
            AR.reflection_instance(urf, O.omega_limit(), phx, "x")
        with pytest.raises(StageError):
            AR.reflection_instance(urf, O.fin(7), phx, "x")


class TestRecognizer:
    def setup_method(self):
        self.prog = AR.build_progression("urf")
        self.phx = A.Eq(A.Var("x"), A.Var("x"))
        self.ha = A.Eq(A.App(D.F_MUL, (A.num(2), A.num(2))), A.num(4))

    def test_base_axiom_everywhere(self):
        for d in (0, 1, 2, 4, O.fin(3), O.omega_limit()):
            assert AR.stage_axiom(self.prog, d, self.ha) == "accept"

    def test_instance_at_its_own_successor_only(self):
        inst = AR.reflection_instance(self.prog, 1, self.phx, "x")
        assert AR.stage_axiom(self.prog, 2, inst) == "accept"       # 2 = 2^1
        assert AR.stage_axiom(self.prog, 1, inst) == "reject"
        assert AR.stage_axiom(self.prog, 0, inst) == "reject"
        assert AR.stage_axiom(self.prog, 4, inst) == "accept"       # 4 = 2^2 > 2^1

    def test_notation_stages(self):
        inst = AR.reflection_instance(self.prog, 0, self.phx, "x")
        assert AR.stage_axiom(self.prog, O.fin(1), inst) == "accept"
        assert AR.stage_axiom(self.prog, O.fin(4), inst) == "accept"
        assert AR.stage_axiom(self.prog, O.Zero(), inst) == "reject"
        assert AR.stage_axiom(self.prog, O.omega_limit(), inst) == "accept"

    def test_limit_membership_via_probes(self):
        inst2 = AR.reflection_instance(self.prog, 2, self.phx, "x")
        # member of stage 2^2 = 4 = {e_fin}(3): found through the limit
        assert AR.stage_axiom(self.prog, O.omega_limit(), inst2) == "accept"

    def test_foreign_formula_rejected(self):
        other = AR.build_progression("con")
        ci = AR.reflection_instance(other, 0)
        assert AR.stage_axiom(self.prog, 2, ci) == "reject"

    def test_wrong_kind_same_stage_rejected(self):
        lrf = AR.build_progression("lrf")
        li = AR.reflection_instance(lrf, 1, A.Eq(A.Zero(), A.Zero()))
        assert AR.stage_axiom(lrf, 2, li) == "accept"
        assert AR.stage_axiom(self.prog, 2, li) == "reject"

    def test_depth_budget_gives_unknown(self):
        inst = AR.reflection_instance(self.prog, 0, self.phx, "x")
        tower = 65536                      # 2^2^2^2^2^0: five descent steps
        assert AR.stage_axiom(self.prog, tower, inst, depth=3) == "unknown"
        assert AR.stage_axiom(self.prog, tower, inst, depth=8) == "accept"

    def test_certificates(self):
        inst = AR.reflection_instance(self.prog, 0, self.phx, "x")
        assert AR.stage_axiom(self.prog, 1, inst, ("refl",)) == "accept"
        assert AR.stage_axiom(self.prog, 2, inst,
                              ("stage", ("refl",))) == "accept"
        assert AR.stage_axiom(self.prog, 2, inst, ("refl",)) == "reject"
        om = O.omega_limit()
        cert = AR.lift_cert(("refl",), O.fin(1), om)
        assert cert[0] == "limit"
        assert AR.stage_axiom(self.prog, om, inst, cert) == "accept"

    def test_lift_cert_refuses_non_dominating_target(self):
        with pytest.raises(StageError):
            AR.lift_cert(("refl",), O.fin(3), O.fin(2))

    def test_stage_theory_checks_proofs(self):
        inst = AR.reflection_instance(self.prog, 0, self.phx, "x")
        th = AR.StageTheory(self.prog, O.fin(1))
        b = ProofBuilder()
        i = b.theory(inst)
        rep = check(b.build(i), th)
        assert rep.ok
        bad = AR.StageTheory(self.prog, O.Zero())
        b2 = ProofBuilder()
        j = b2.theory(inst)
        assert not check(b2.build(j), bad).ok


class TestNu:
    def test_nu_shape(self):
        nu = AR.build_nu(P.alpha0())
        assert A.free_vars(nu.delta) == {P.VAR_STAGE}
        assert K._is_pi_extended(nu.delta)
        assert N.diag(nu.g) == nu.code

    def test_nu_fixed_point_checks(self):
        nu = AR.build_nu(P.alpha0())
        rep = check(AR.fixed_point_proof(nu), HATheory())
        assert rep.ok, rep.failures

    def test_nu_unfolds_to_its_own_unprovability(self):
        nu = AR.build_nu(P.alpha0())
        # nu(z) <-> not Pr(z, sb1(code(nu), "z", nm(z))): the unfolded side
        # quotes nu's own code
        unf = AR.unfolded(nu)
        assert isinstance(unf, A.Imp) and isinstance(unf.rhs, A.Falsum)
        assert A.free_vars(unf) == {P.VAR_STAGE}
