import json
from fractions import Fraction
from importlib import resources

import pytest

from fpp_verify import surfacecalc as sc
from fpp_verify import verifier as vf
from fpp_verify.exactcore import rank

X = {case: sc.build_config_X(case) for case in ("I", "II")}
XL = {case: vf.attach_line_bundle(X[case])[0] for case in ("I", "II")}
GOLDEN = json.loads(resources.files("fpp_verify").joinpath("data", "descent_scripts.json").read_text("utf-8"))


def test_candidate_triples():
    cands = vf.candidate_triples()
    assert len(cands) == 21 and all(sum(t) == 5 and min(t) >= 0 for t in cands)


def test_feasibility_system_shape():
    a, b, labels = vf.feasibility_system(X["I"])
    assert a.shape == (15, 9) and len(b) == 15 == len(labels)
    a16, _, _ = vf.feasibility_system(X["I"], include_fiber=True)
    assert a16.shape == (16, 9)


@pytest.mark.parametrize("include_fiber", [False, True])
def test_feasible_triples(include_fiber):
    assert vf.feasible_triples(X["I"], include_fiber) == {(2, 1, 2), (1, 3, 1)}


def test_feasibility_verdict_matches_rank_oracle():
    # consistent iff rank(A) == rank(A|b), checked independently
    for t in vf.candidate_triples():
        cfg = sc.with_case_params(X["I"], t)
        a, b, _ = vf.feasibility_system(cfg)
        aug = [list(r) + [x] for r, x in zip(a.tolist(), b)]
        expect = rank(a) == rank(aug)
        assert vf.solve_triple(X["I"], t).consistent == expect


def test_infeasible_when_alpha_is_three():
    assert not any(r.consistent for r in vf.scan_triples(X["I"]) if r.triple[0] == 3)


@pytest.mark.parametrize("case", ["I", "II"])
def test_witness_residuals_vanish(case):
    res = vf.solve_triple(X[case])
    assert res.consistent
    assert set(vf.witness_residuals(X[case], res).values()) == {Fraction(0)}
    w = res.witness
    assert all(w[k] + w[3 + k] + w[6 + k] == 0 for k in range(3))


@pytest.mark.parametrize("case,glue", [("I", (4, 2)), ("II", (2, 4))])
def test_glue_vector_unique(case, glue):
    cert = vf.glue_vector(X[case])
    assert (cert.glue.a, cert.glue.b) == glue
    assert cert.candidates == 49 and cert.survivors == (glue,)
    assert len(cert.rejections) == 48
    for (a, b), (curve, val) in cert.rejections.items():
        assert val.denominator == 7
        assert vf.glue_obstruction(X[case], a, b) == (curve, val)


@pytest.mark.parametrize("case", ["I", "II"])
def test_glue_overlattice(case):
    cert = vf.glue_vector(X[case])
    norm, listed = vf.glue_overlattice_check(X[case], cert.glue)
    assert norm == -9 and listed


@pytest.mark.parametrize("case", ["I", "II"])
def test_B_matches_printed_and_is_divisible(case):
    cert = vf.glue_vector(X[case])
    B = cert.glue.divisor_B()
    assert B == sc.PRINTED_B[case]
    dots = vf.b_divisibility(X[case], B)
    assert all(v % 7 == 0 for v in dots.values())
    assert dots["K"] == 14


def test_glue_vector_raises_without_unique_survivor():
    broken = sc.with_case_params(X["I"], (3, 1, 1))
    with pytest.raises(vf.VerificationError):
        vf.glue_vector(broken)


def test_disc_form_on_chain_generators():
    form = vf.disc_form_on_chain_generators(X["I"])
    assert form == [[Fraction(4, 7) if j == k else 0 for k in range(3)] for j in range(3)]


@pytest.mark.parametrize("case", ["I", "II"])
@pytest.mark.parametrize("i", range(1, 7))
def test_descent_search(case, i):
    trace = vf.descent_search(XL[case], i)
    assert trace.final_dot_F == -6 == 12 * i - 6 * (2 * i + 1)
    assert sum(trace.section_multiplicities) == 2 * i + 1
    assert set(trace.fiber_part) <= set(sc.I9_COMPONENTS)
    assert all(s.pairing < 0 for s in trace.steps)
    assert list(trace.script) == GOLDEN["search"][case][str(i)]


@pytest.mark.parametrize("i", range(1, 7))
def test_printed_targets_from_golden_scripts(i):
    golden = GOLDEN["printed_caseI"][str(i)]
    trace = vf.descent_replay(XL["I"], i, golden["script"])
    remainder = golden["remainder"]
    # the printed divisor is the endpoint plus an effective fibre remainder
    assert all(v > 0 and n in sc.I9_COMPONENTS for n, v in remainder.items())
    target = vf.printed_divisor(XL["I"], i)
    assert sc.intersect(XL["I"], target, sc.curve_divisor(XL["I"], "F")) == -6
    diff = {n: target.coefficient(n) - trace.final.coefficient(n)
            for n in XL["I"].names if target.coefficient(n) != trace.final.coefficient(n)}
    assert diff == remainder
    assert target.k_multiple == trace.final.k_multiple and target.l_multiple == trace.final.l_multiple


@pytest.mark.parametrize("i", [1, 4])
def test_target_search_reproduces_golden(i):
    trace, remainder = vf.descent_to_target(XL["I"], i, vf.PRINTED_DESCENT[i])
    assert list(trace.script) == GOLDEN["printed_caseI"][str(i)]["script"]
    assert remainder == GOLDEN["printed_caseI"][str(i)]["remainder"]
    assert (remainder == {}) == (i != 4)


def test_replay_rejections():
    x = XL["I"]
    good = GOLDEN["search"]["I"]["1"]
    with pytest.raises(ValueError):
        vf.descent_replay(x, 0, good)
    with pytest.raises(ValueError):
        vf.descent_replay(x, 1, [])
    with pytest.raises(vf.DescentRejected) as exc:
        vf.descent_replay(x, 1, ["F"] + good)
    assert exc.value.step == 1
    with pytest.raises(vf.DescentRejected):
        vf.descent_replay(x, 1, good[:-1])  # stops with D.F >= 0
    with pytest.raises(vf.DescentRejected):
        # A1 first: D.A1 = 0 on K + L
        vf.descent_replay(x, 1, ["A1"] + good)
    with pytest.raises(ValueError, match="attach B"):
        vf.descent_replay(X["I"], 1, good)


def test_descent_search_is_deterministic():
    assert vf.descent_search(XL["II"], 5).script == vf.descent_search(XL["II"], 5).script


def test_chern_pipeline():
    n = vf.chern_pipeline(X["I"])
    assert (n.e_X, n.e_contracted, n.e_X0, n.branch_points) == (12, 12, 0, 3)
    assert (n.c2, n.chi, n.c1_squared) == (3, 1, 9)
    assert n.c1_squared == 3 * n.c2


def test_y_side():
    r = vf.y_side_checks()
    assert r.seven_chain_det == -7 and r.seven_chain_orders == (7,)
    assert r.seven_chain_orthogonal
    assert r.lattice.h2_rank == 10 and r.lattice.perp_rank == 4
    assert r.lattice.contracted_divisors == (1, 1, 1, 3, 3, 3)
    assert r.lattice.contracted_elementary == (True, 3)
    assert r.lattice.overlattice_count >= 1
    assert r.lattice.signature == (1, 9, 3)
    assert r.cover_inference == "asserted-unverified"


@pytest.mark.parametrize("case", ["I", "II"])
def test_x_lattice_side(case):
    r = vf.lattice_side(X[case], sc.X_CONTRACTED, 7)
    assert r.contracted_elementary == (True, 3)
    assert r.perp_rank == 1 and r.span_rank == 10
    assert r.signature[:2] == (1, 9)
    assert r.overlattice_count == 8
