"""One test per acceptance criterion; each records a PASS/FAIL line.

All comparisons are exact.  The lines are printed in the terminal summary
(see conftest.py) or directly when this file is run as a script.
"""

import copy
import io
import json
import contextlib
import random
from importlib import resources

import pytest

from fpp_verify import cli
from fpp_verify import surfacecalc as sc
from fpp_verify import verifier as vf
from fpp_verify.exactcore import IntMatrix, determinant, smith_normal_form
from fpp_verify.latticekit import (Lattice, discriminant_group, enumerate_integral_overlattices,
                                   p_elementary_and_length)
from oracles import brute_overlattices, cofactor_det, determinantal_divisors, minor_rank

Y = sc.build_config_Y()
X = {case: sc.build_config_X(case) for case in ("I", "II")}
XL = {case: vf.attach_line_bundle(X[case])[0] for case in ("I", "II")}


def record(lines, key, ok, detail):
    line = f"criterion {key:<5} {'PASS' if ok else 'FAIL'}  {detail}"
    lines[key] = line
    print(line)
    assert ok, line


def test_criterion_01_R_elementary_divisors(acceptance):
    lat = vf.contracted_lattice(Y, sc.Y_CONTRACTED)
    d = smith_normal_form(lat.gram).elementary_divisors
    el = p_elementary_and_length(lat, 3)
    record(acceptance, "1", d == (1, 1, 1, 3, 3, 3) and el == (True, 3),
           f"SNF(A2^3) = {d}, 3-elementary/length = {el}")


def test_criterion_02_seven_chain(acceptance):
    lat = vf.contracted_lattice(Y, sc.Y_SEVEN_CHAIN)
    det = determinant(lat.gram)
    orders = discriminant_group(lat).cyclic_orders
    record(acceptance, "2", det == -7 and orders == (7,), f"det = {det}, discriminant orders = {orders}")


def test_criterion_03_R_overlattices(acceptance):
    lat = vf.contracted_lattice(Y, sc.Y_CONTRACTED)
    certs = enumerate_integral_overlattices(lat, 3)
    dets = {abs(determinant(c.new_gram)) for c in certs}
    ok = bool(certs) and dets == {27 // 9} and all(c.new_gram.is_symmetric() for c in certs)
    record(acceptance, "3", ok, f"{len(certs)} index-3 overlattices, |det| values {sorted(dets)}")


def test_criterion_04_chain_disc_form(acceptance):
    lat = vf.contracted_lattice(X["I"])
    orders = discriminant_group(lat).cyclic_orders
    gens = vf.chain_generators()
    raw = [[lat.pair(g, h) for h in gens] for g in gens]
    diag_ok = all(raw[k][k] == sc.Fraction(-3, 7) for k in range(3))
    off_ok = all(raw[j][k].denominator == 1 for j in range(3) for k in range(3) if j != k)
    record(acceptance, "4", orders == (7, 7, 7) and diag_ok and off_ok,
           f"orders {orders}, b(g_k, g_k) = {[str(raw[k][k]) for k in range(3)]}, off-diagonal integral = {off_ok}")


def test_criterion_05_feasibility(acceptance):
    results = vf.scan_triples(X["I"])
    found = {r.triple for r in results if r.consistent}
    record(acceptance, "5", len(results) == 21 and found == {(2, 1, 2), (1, 3, 1)},
           f"{len(results)} candidates, solvable {sorted(found)}")


def test_criterion_06_glue_vectors(acceptance):
    got = {case: vf.glue_vector(X[case]) for case in ("I", "II")}
    ok = all(len(c.survivors) == 1 and c.candidates == 49 for c in got.values())
    ok = ok and (got["I"].glue.a, got["I"].glue.b) == (4, 2) and (got["II"].glue.a, got["II"].glue.b) == (2, 4)
    record(acceptance, "6", ok, "; ".join(f"Case {k}: {c.survivors} of {c.candidates}" for k, c in got.items()))


def test_criterion_07_L_tables(acceptance):
    bad, total = [], 0
    for case in ("I", "II"):
        entries, integral = sc.verify_L_table(XL[case], case)
        total += len(entries)
        bad += [(case, e.name) for e in entries if not e.ok]
        if not integral:
            bad.append((case, "integrality"))
    dots = sc.line_bundle_dots(XL["I"])
    record(acceptance, "7", not bad and total == 28 and dots["K"] == 2 and dots["F"] == 12,
           f"{total - len(bad)}/{total} entries match; L.K = {dots['K']}, L.F = {dots['F']}")


def test_criterion_08a_descent_traces(acceptance):
    finals = {(case, i): vf.descent_search(XL[case], i).final_dot_F
              for case in ("I", "II") for i in range(1, 7)}
    record(acceptance, "8a", set(finals.values()) == {-6},
           f"replay-valid traces for 12 (case, i) pairs, D.F values {sorted({str(v) for v in finals.values()})}")


@pytest.mark.parametrize("i", range(1, 7))
def test_criterion_08b_printed_divisors(acceptance, i):
    # the bounded BFS is complete below the target, so a nonzero remainder
    # means no valid descent ends exactly at the printed divisor
    trace, remainder = vf.descent_to_target(XL["I"], i, vf.PRINTED_DESCENT[i])
    same = trace.final == vf.printed_divisor(XL["I"], i)
    detail = "final divisor equals printed D_%d" % i if same else \
        f"no descent ends at printed D_{i}; nearest endpoint + {remainder} = printed"
    record(acceptance, f"8b.{i}", same and not remainder, detail)


def test_criterion_09_chern(acceptance):
    n = vf.chern_pipeline(X["I"])
    ok = (n.e_X, n.e_X0, n.c2, n.c1_squared) == (12, 0, 3, 9) and n.c1_squared == 3 * n.c2
    record(acceptance, "9", ok, f"e(X) = {n.e_X}, e(X0) = {n.e_X0}, c2 = {n.c2}, c1^2 = {n.c1_squared}")


def test_criterion_10_property_suites(acceptance):
    rng = random.Random(10)
    snf_cases = 0
    for _ in range(1000):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        rows = [[rng.randint(-3, 3) for _ in range(c)] for _ in range(r)]
        m = IntMatrix.from_rows(rows)
        res = smith_normal_form(m)
        d = [x for x in res.elementary_divisors if x]
        assert (res.left_transform @ m) @ res.right_transform == res.diagonal()
        assert d == determinantal_divisors(rows) and len(d) == minor_rank(rows)
        snf_cases += 1
    lat_cases = 0
    while lat_cases < 200:
        n = rng.randint(1, 4)
        g = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                g[a][b] = g[b][a] = rng.randint(-3, 3)
        det = cofactor_det(g)
        if not det or abs(det) > 50:
            continue
        lat = Lattice.from_gram(g)
        for p in (2, 3, 5, 7):
            got = set()
            for cert in enumerate_integral_overlattices(lat, p):
                key = tuple(int(p * x) % p for x in cert.glue_lift())
                got.add(frozenset(tuple((k * a) % p for a in key) for k in range(1, p)))
            assert got == brute_overlattices(g, p)
        lat_cases += 1
    configs = [Y, X["I"], X["II"]]
    inv_ok = all(r.ok for c in configs for r in sc.adjunction_check(c))
    inv_ok = inv_ok and all(not sc.rotation_violations(X[k]) for k in X)
    record(acceptance, "10", inv_ok, f"{snf_cases} SNF/rank cases, {lat_cases} lattices vs brute force, "
                         "adjunction and rotation invariants hold")


def _perturbations(data):
    for k, row in enumerate(data["intersections"]):
        if row[2]:
            yield f"{row[0]}.{row[1]}", ("intersections", k)
    for k, c in enumerate(data["curves"]):
        if c["self_intersection"]:
            yield f"{c['name']}^2", ("curves", k)


def test_criterion_11_fault_injection(acceptance, tmp_path):
    files = {n: json.loads(resources.files("fpp_verify").joinpath("data", n).read_text("utf-8"))
             for n in ("Y.json", "X_caseI.json", "X_caseII.json")}
    runs, escaped = 0, []
    for case, fname in (("I", "X_caseI.json"), ("II", "X_caseII.json")):
        for label, (where, k) in _perturbations(files[fname]):
            data = copy.deepcopy(files[fname])
            if where == "intersections":
                data[where][k][2] += 1
            else:
                data[where][k]["self_intersection"] += 1
            for n, d in files.items():
                (tmp_path / n).write_text(json.dumps(data if n == fname else d))
            with contextlib.redirect_stderr(io.StringIO()):
                code = cli.run(case, str(tmp_path), str(tmp_path / "report.json"))
            runs += 1
            if code != 1:
                escaped.append((case, label, code))
    record(acceptance, "11", not escaped and runs > 0, f"{runs} perturbed runs, all exit 1" if not escaped
           else f"{len(escaped)} of {runs} runs did not exit 1: {escaped}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
