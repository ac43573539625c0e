"""The claim registry: every checked fact of the construction, one entry each.

Claims are independent: each one recomputes what it needs from the
loaded configurations, so they can run in any order or in parallel.
Results are put back in claim-id order by the report layer.
"""

from __future__ import annotations

import json
import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Callable, Mapping

from . import surfacecalc as sc
from . import verifier as vf
from .exactcore import IntMatrix, determinant, inertia, rank
from .report import ClaimReport

log = logging.getLogger(__name__)

CASES = ("I", "II")
CONFIG_FILES = {"Y": "Y.json", "I": "X_caseI.json", "II": "X_caseII.json"}
ASSERTED = "asserted-unverified"


@dataclass(frozen=True)
class Outcome:
    ok: bool
    expected: Any
    computed: Any
    trace: Any = None


@dataclass(frozen=True)
class ClaimSpec:
    claim_id: str
    section: str
    statement: str
    scope: str  # "Y", "I", "II" or "global"
    run: Callable[[Context], Outcome] | None  # None: asserted, not computed


class Context:
    """Loaded configurations plus a thread-safe memo for shared results."""

    def __init__(self, configs: Mapping[str, sc.SurfaceConfig], cases=CASES):
        self.configs = dict(configs)
        self.cases = tuple(cases)
        self._memo: dict = {}
        self._lock = threading.RLock()

    def memo(self, key, fn):
        # failures are cached too, so dependent claims fail fast and alike
        with self._lock:
            if key not in self._memo:
                try:
                    self._memo[key] = (True, fn())
                except Exception as exc:
                    self._memo[key] = (False, exc)
            ok, value = self._memo[key]
        if not ok:
            raise value
        return value

    @property
    def y(self) -> sc.SurfaceConfig:
        return self.configs["Y"]

    def x(self, case: str) -> sc.SurfaceConfig:
        return self.configs[case]

    @property
    def x_primary(self) -> sc.SurfaceConfig:
        return self.configs[self.cases[0]]

    def glue(self, case: str) -> vf.GlueCertificate:
        return self.memo(("glue", case), lambda: vf.glue_vector(self.x(case)))

    def x_with_L(self, case: str) -> sc.SurfaceConfig:
        return self.memo(("xL", case), lambda: self.x(case).with_B(self.glue(case).glue.divisor_B()))

    def y_side(self) -> vf.YSideReport:
        return self.memo("y_side", lambda: vf.y_side_checks(self.y))

    def descent(self, case: str, i: int) -> vf.DescentTrace:
        return self.memo(("descent", case, i), lambda: vf.descent_search(self.x_with_L(case), i))


def load_configs(config_dir: str | Path | None = None, cases=CASES) -> dict[str, sc.SurfaceConfig]:
    """Read Y and the requested X-side files from ``config_dir`` (default: shipped data)."""
    out = {}
    for key in ("Y",) + tuple(cases):
        fname = CONFIG_FILES[key]
        if config_dir is None:
            text = resources.files("fpp_verify").joinpath("data", fname).read_text("utf-8")
            out[key] = _parse(text, fname)
        else:
            out[key] = sc.load_config(Path(config_dir) / fname)
    return out


def _parse(text: str, fname: str) -> sc.SurfaceConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise sc.ConfigError(f"{fname}: not valid JSON ({exc})") from None
    return sc.config_from_dict(data, name=Path(fname).stem)


# -- claim bodies -----------------------------------------------------------

def _eq(expected, computed, trace=None) -> Outcome:
    return Outcome(expected == computed, expected, computed, trace)


def _adjunction(cfg: sc.SurfaceConfig) -> Outcome:
    bad = [(r.name, r.self_intersection + r.canonical, r.expected)
           for r in sc.adjunction_check(cfg) if not r.ok]
    return _eq([], bad)


def _fibre_class(cfg: sc.SurfaceConfig) -> Outcome:
    fc = cfg.fiber_class_name
    problems = [list(m) for m in sc.fiber_class_mismatches(cfg)]
    problems += [[fc, "F.F", cfg.dot(fc, fc)]] if cfg.dot(fc, fc) != 0 else []
    problems += [[c, "F.C", cfg.dot(fc, c)] for c in cfg.fiber_components if cfg.dot(fc, c) != 0]
    # every fibre with named components is numerically the same class
    for f in cfg.fibers:
        if f.components and f.components != cfg.fiber_components:
            for n in cfg.irreducible_names:
                a = sum(cfg.table(c, n) for c in f.components)
                if a != cfg.dot(fc, n):
                    problems.append([n, "fibre mismatch", a])
    return _eq([], problems)


def _sections_meet_F(cfg: sc.SurfaceConfig) -> Outcome:
    fc = cfg.fiber_class_name
    secs = [c.name for c in cfg.curves if c.role == "multisection"]
    return _eq({s: 6 for s in secs}, {s: cfg.dot(s, fc) for s in secs})


def _hodge(cfg: sc.SurfaceConfig) -> Outcome:
    gram = IntMatrix.from_rows(cfg.gram())
    b2 = vf.h2_rank(cfg)
    r = rank(gram)
    return _eq({"rank": b2, "signature": [1, b2 - 1]},
               {"rank": r, "signature": list(inertia(gram)[:2])})


def _canonical_x(cfg: sc.SurfaceConfig) -> Outcome:
    fc = cfg.fiber_class_name
    want = {"K.K": 0, "K.F": 0, **{f"K.{c}": 0 for c in sc.I9_COMPONENTS},
            **{f"K.{e}": 1 for e in sc.SECTIONS}}
    got = {"K.K": cfg.canonical_dot("K"), "K.F": cfg.canonical_dot(fc),
           **{f"K.{c}": cfg.canonical_dot(c) for c in sc.I9_COMPONENTS},
           **{f"K.{e}": cfg.canonical_dot(e) for e in sc.SECTIONS}}
    return _eq(want, got)


def _case_params(cfg: sc.SurfaceConfig, case: str) -> Outcome:
    table = [cfg.table("E1", n) for n in ("A3", "B3", "C3")]
    params = list(cfg.case_params) if cfg.case_params else None
    want = list(sc.CASE_PARAMS[case])
    return Outcome(table == want and params == want, want,
                   {"case_params": params, "E1.(A3,B3,C3)": table})


def _scan(cfg: sc.SurfaceConfig, include_fiber: bool) -> Outcome:
    results = vf.scan_triples(cfg, include_fiber)
    found = {r.triple for r in results if r.consistent}
    computed = {"consistent": sorted(found), "scanned": len(results)}
    expected = {"consistent": sorted(vf.FEASIBLE_TRIPLES), "scanned": 21}
    trace = {"".join(map(str, r.triple)): r.consistent for r in results}
    return _eq(expected, computed, trace)


def _own_triple(cfg: sc.SurfaceConfig) -> Outcome:
    res = vf.solve_triple(cfg)
    residual = None
    if res.consistent:
        residual = sorted({str(v) for v in vf.witness_residuals(cfg, res).values()})
    computed = {"triple": list(res.triple), "sum": sum(res.triple), "consistent": res.consistent,
                "witness_residuals": residual}
    expected = {"triple": list(res.triple), "sum": 5, "consistent": True, "witness_residuals": ["0"]}
    return _eq(expected, computed, {"witness": res.witness})


def _chain_disc_group(cfg: sc.SurfaceConfig) -> Outcome:
    from .latticekit import discriminant_group, p_elementary_and_length
    lat = vf.contracted_lattice(cfg)
    return _eq({"orders": [7, 7, 7], "7-elementary": [True, 3]},
               {"orders": list(discriminant_group(lat).cyclic_orders),
                "7-elementary": list(p_elementary_and_length(lat, 7))})


def _chain_disc_form(cfg: sc.SurfaceConfig) -> Outcome:
    form = vf.disc_form_on_chain_generators(cfg)
    want = [[Fraction(4, 7) if j == k else Fraction(0) for k in range(3)] for j in range(3)]
    return _eq(want, form)


def _perp_rank(cfg: sc.SurfaceConfig, contracted, expected) -> Outcome:
    return _eq(expected, vf.h2_rank(cfg) - len(contracted),
               {"b2": vf.h2_rank(cfg), "contracted_rank": len(contracted)})


def _overlattices(cfg: sc.SurfaceConfig, contracted, p: int, det_abs: int) -> Outcome:
    from .latticekit import enumerate_integral_overlattices
    lat = vf.contracted_lattice(cfg, contracted)
    certs = enumerate_integral_overlattices(lat, p)
    dets = sorted({abs(determinant(c.new_gram)) for c in certs})
    integral = all(c.new_gram.is_symmetric() for c in certs)
    ok = bool(certs) and dets == [det_abs] and integral
    return Outcome(ok, {"nonempty": True, "|det|": [det_abs]},
                   {"nonempty": bool(certs), "|det|": dets, "count": len(certs)},
                   {"glue": [c.glue_generators[0] for c in certs]})


def _glue(ctx: Context, case: str) -> Outcome:
    cert = ctx.glue(case)
    want = list(vf.PRINTED_GLUE[case])
    got = [cert.glue.a, cert.glue.b]
    return _eq({"residues": want, "survivors": 1, "candidates": 49},
               {"residues": got, "survivors": len(cert.survivors), "candidates": cert.candidates},
               {"rejected_by": {f"{a}{b}": n for (a, b), (n, _) in sorted(cert.rejections.items())}})


def _glue_overlattice(ctx: Context, case: str) -> Outcome:
    cert = ctx.glue(case)
    norm, listed = vf.glue_overlattice_check(ctx.x(case), cert.glue)
    return Outcome(norm.denominator == 1 and listed, {"b(v,v) integral": True, "listed": True},
                   {"b(v,v)": norm, "listed": listed})


def _printed_B(ctx: Context, case: str) -> Outcome:
    cert = ctx.glue(case)
    return _eq(sc.PRINTED_B[case], cert.glue.divisor_B())


def _B_divisible(ctx: Context, case: str) -> Outcome:
    cert = ctx.glue(case)
    dots = vf.b_divisibility(ctx.x(case), cert.glue.divisor_B())
    bad = {n: v for n, v in dots.items() if v % 7}
    return Outcome(not bad, {"non-divisible": {}}, {"non-divisible": bad}, {"B.C": dots})


def _L_table(ctx: Context, case: str) -> Outcome:
    entries, integral = sc.verify_L_table(ctx.x_with_L(case), case)
    return Outcome(all(e.ok for e in entries) and integral,
                   {e.name: e.expected for e in entries},
                   {e.name: e.computed for e in entries},
                   {"integral_on_all_curves": integral})


def _descent(ctx: Context, case: str, i: int) -> Outcome:
    trace = ctx.descent(case, i)
    return _eq({"D.F": -6, "section_sum": 2 * i + 1},
               {"D.F": trace.final_dot_F, "section_sum": sum(trace.section_multiplicities)},
               {"script": trace.script, "sections": trace.section_multiplicities})


def _printed_descent(ctx: Context, i: int) -> Outcome:
    x = ctx.x_with_L("I")
    golden = _golden()["printed_caseI"][str(i)]
    trace = vf.descent_replay(x, i, golden["script"])
    endpoint = trace.subtracted()
    target = vf.PRINTED_DESCENT[i]
    remainder = {n: endpoint.get(n, 0) - target.get(n, 0)
                 for n in set(endpoint) | set(target) if endpoint.get(n, 0) != target.get(n, 0)}
    fibre = set(x.fiber_components)
    effective_rest = all(v > 0 and n in fibre for n, v in remainder.items())
    target_f = sc.intersect(x, vf.printed_divisor(x, i), sc.curve_divisor(x, x.fiber_class_name))
    ok = effective_rest and target_f == -6 and remainder == golden["remainder"]
    computed = {"D.F": target_f, "endpoint_is_printed": not remainder,
                "printed_minus_endpoint": dict(sorted(remainder.items()))}
    return Outcome(ok, {"D.F": -6}, computed, {"script": trace.script})


def _descent_all(ctx: Context) -> Outcome:
    got = {}
    for case in ctx.cases:
        got[case] = [ctx.descent(case, i).final_dot_F for i in range(1, 7)]
    return _eq({c: [-6] * 6 for c in ctx.cases}, got)


def _chern(ctx: Context) -> vf.ChernNumbers:
    return ctx.memo("chern", lambda: vf.chern_pipeline(ctx.x_primary))


def _x_fibres(cfg: sc.SurfaceConfig) -> Outcome:
    kinds = sorted(f.type if f.type != "multiple" else f"m{f.multiplicity}" for f in cfg.fibers)
    return _eq({"fibres": ["I1", "I1", "I1", "I9", "m2", "m3"], "e": 12},
               {"fibres": kinds, "e": sc.euler_number(cfg)})


# -- registry ---------------------------------------------------------------

def _x_claims(case: str) -> list[ClaimSpec]:
    p = f"X.case{case}"
    cfg_section = f"X configuration, Case {case}"
    lat_section = f"X lattice and glue, Case {case}"
    div_section = f"X divisors and descent, Case {case}"
    specs = [
        ClaimSpec(f"{p}.config.adjunction", cfg_section,
                  "C^2 + K.C = -2 for every curve, 0 for F", case,
                  lambda c: _adjunction(c.x(case))),
        ClaimSpec(f"{p}.config.canonical", cfg_section,
                  "K.K = 0, K.F = 0, K.(fibre components) = 0, K.E_i = 1", case,
                  lambda c: _canonical_x(c.x(case))),
        ClaimSpec(f"{p}.config.case_params", cfg_section,
                  f"E1.(A3, B3, C3) = {sc.CASE_PARAMS[case]}", case,
                  lambda c: _case_params(c.x(case), case)),
        ClaimSpec(f"{p}.config.fibre_class", cfg_section,
                  "F = sum of I9 components; F.F = 0, F.A_i = F.B_i = F.C_i = 0", case,
                  lambda c: _fibre_class(c.x(case))),
        ClaimSpec(f"{p}.config.fibres", cfg_section,
                  "one I9, three I1, multiple fibres of multiplicity 2 and 3; e(X) = 12", case,
                  lambda c: _x_fibres(c.x(case))),
        ClaimSpec(f"{p}.config.hodge_index", cfg_section,
                  "curve classes span rank b2 = 10 with signature (1, 9)", case,
                  lambda c: _hodge(c.x(case))),
        ClaimSpec(f"{p}.config.rotation", cfg_section,
                  "intersection table invariant under A->B->C->A, E1->E2->E3->E1", case,
                  lambda c: _eq([], [list(v) for v in sc.rotation_violations(c.x(case))])),
        ClaimSpec(f"{p}.config.sextuple_sections", cfg_section,
                  "E_i.F = 6 for i = 1, 2, 3", case,
                  lambda c: _sections_meet_F(c.x(case))),
        ClaimSpec(f"{p}.feasibility.own_triple", cfg_section,
                  "the configured (alpha, beta, gamma) sums to 5 and solves the 15-equation system", case,
                  lambda c: _own_triple(c.x(case))),
        ClaimSpec(f"{p}.feasibility.scan", cfg_section,
                  "of the 21 triples with sum 5 exactly (2,1,2) and (1,3,1) are solvable", case,
                  lambda c: _scan(c.x(case), False)),
        ClaimSpec(f"{p}.feasibility.scan_with_fibre_row", cfg_section,
                  "adding the redundant F-row leaves the solvable set unchanged", case,
                  lambda c: _scan(c.x(case), True)),
        ClaimSpec(f"{p}.lattice.chain.disc_group", lat_section,
                  "disc of the nine-curve lattice is 7-elementary of length 3", case,
                  lambda c: _chain_disc_group(c.x(case))),
        ClaimSpec(f"{p}.lattice.chain.disc_form", lat_section,
                  "b(g_j, g_k) = -3/7 on the diagonal and 0 off it, g_j = (1/7)(chain_j . (1,2,3))", case,
                  lambda c: _chain_disc_form(c.x(case))),
        ClaimSpec(f"{p}.lattice.chain.overlattice_index7", lat_section,
                  "an integral overlattice of index 7 exists; |det| drops from 343 to 7", case,
                  lambda c: _overlattices(c.x(case), sc.X_CONTRACTED, 7, 7)),
        ClaimSpec(f"{p}.lattice.chain.perp_rank", lat_section,
                  "the orthogonal complement of the nine curves has rank 10 - 9 = 1", case,
                  lambda c: _perp_rank(c.x(case), sc.X_CONTRACTED, 1)),
        ClaimSpec(f"{p}.glue.residues", lat_section,
                  f"v = g1 + a g2 + b g3 pairs integrally with every curve iff (a, b) = {vf.PRINTED_GLUE[case]} mod 7", case,
                  lambda c: _glue(c, case)),
        ClaimSpec(f"{p}.glue.overlattice", lat_section,
                  "b(v, v) is integral and <v> is one of the index-7 integral overlattices", case,
                  lambda c: _glue_overlattice(c, case)),
        ClaimSpec(f"{p}.divisor.B.printed", div_section,
                  "the effective representative of 7v equals the printed B", case,
                  lambda c: _printed_B(c, case)),
        ClaimSpec(f"{p}.divisor.B.divisible", div_section,
                  "B.C is divisible by 7 for every curve C and for K", case,
                  lambda c: _B_divisible(c, case)),
        ClaimSpec(f"{p}.divisor.L_table", div_section,
                  "L = B/7 reproduces all 14 printed intersection numbers, incl. L.K = 2 and L.F = 12", case,
                  lambda c: _L_table(c, case)),
    ]
    for i in range(1, 7):
        specs.append(ClaimSpec(
            f"{p}.descent.search.i{i}", div_section,
            f"negative-curve descent from K + {i}L reaches D with D.F = -6", case,
            lambda c, i=i: _descent(c, case, i)))
    if case == "I":
        for i in range(1, 7):
            specs.append(ClaimSpec(
                f"{p}.descent.printed.i{i}", div_section,
                f"the printed D_{i} is effective, certified by a replayed descent", case,
                lambda c, i=i: _printed_descent(c, i)))
    return specs


def build_registry() -> list[ClaimSpec]:
    y_cfg, y_lat = "Y configuration", "Y lattice"
    chern, lemmas = "Euler and Chern numbers", "Lemmas and theorem"
    specs = [
        ClaimSpec("Y.config.adjunction", y_cfg, "C^2 + K.C = -2 for every curve, 0 for F", "Y",
                  lambda c: _adjunction(c.y)),
        ClaimSpec("Y.config.fibre_class", y_cfg,
                  "the four I3 fibres are numerically equal to F", "Y",
                  lambda c: _fibre_class(c.y)),
        ClaimSpec("Y.config.sextuple_section", y_cfg, "E.F_Y = 6", "Y",
                  lambda c: _sections_meet_F(c.y)),
        ClaimSpec("Y.config.hodge_index", y_cfg,
                  "curve classes span rank b2 = 10 with signature (1, 9)", "Y",
                  lambda c: _hodge(c.y)),
        ClaimSpec("Y.lattice.R.snf", y_lat,
                  "elementary divisors of the A2^3 Gram are (1,1,1,3,3,3)", "Y",
                  lambda c: _eq([1, 1, 1, 3, 3, 3],
                                list(c.y_side().lattice.contracted_divisors))),
        ClaimSpec("Y.lattice.R.elementary", y_lat, "disc(R) is 3-elementary of length 3", "Y",
                  lambda c: _eq([True, 3],
                                list(c.y_side().lattice.contracted_elementary))),
        ClaimSpec("Y.lattice.R.overlattice_index3", y_lat,
                  "an integral overlattice of index 3 of R exists; |det| drops from 27 to 3", "Y",
                  lambda c: _overlattices(c.y, sc.Y_CONTRACTED, 3, 3)),
        ClaimSpec("Y.lattice.R.perp_rank", y_lat, "rank R^perp = 10 - 6 = 4", "Y",
                  lambda c: _perp_rank(c.y, sc.Y_CONTRACTED, 4)),
        ClaimSpec("Y.lattice.seven_chain.gram", y_lat,
                  "E, A41, A42 have Gram [[-3,1,0],[1,-2,1],[0,1,-2]]", "Y",
                  lambda c: _eq([[-3, 1, 0], [1, -2, 1], [0, 1, -2]],
                                [list(r) for r in c.y_side().seven_chain_gram])),
        ClaimSpec("Y.lattice.seven_chain.disc", y_lat,
                  "det = -7 and the discriminant group is cyclic of order 7", "Y",
                  lambda c: (lambda r: _eq({"det": -7, "orders": [7]},
                                           {"det": r.seven_chain_det, "orders": list(r.seven_chain_orders)}))(
                      c.y_side())),
        ClaimSpec("Y.lattice.seven_chain.in_R_perp", y_lat,
                  "E, A41, A42 are orthogonal to the six curves of R", "Y",
                  lambda c: _eq(True, c.y_side().seven_chain_orthogonal)),
        ClaimSpec("Y.lattice.length_bound", y_lat,
                  "l(disc(R-bar)) = l(disc(R^perp)) <= 2 (needs embedding data; cited)", "Y", None),
        ClaimSpec("Y.cover.degree3", y_lat,
                  "the index-3 overlattice yields a cyclic triple cover X -> Y' branched at 3 points",
                  "Y", None),
        ClaimSpec("chern.e_Y", chern, "e(Y) = 4 x e(I3) = 12", "Y",
                  lambda c: _eq(12, sc.euler_number(c.y))),
        ClaimSpec("chern.e_X", chern, "e(X) = e(I9) + 3 e(I1) = 12", "global",
                  lambda c: _eq(12, _chern(c).e_X)),
        ClaimSpec("chern.e_contracted", chern,
                  "the three contracted chains have Euler number 3 x 4 = 12", "global",
                  lambda c: _eq(12, _chern(c).e_contracted)),
        ClaimSpec("chern.e_X0", chern, "e(X0) = e(X) - 12 = 0", "global",
                  lambda c: _eq(0, _chern(c).e_X0)),
        ClaimSpec("chern.c2Z", chern, "c2(Z) = 7 e(X0) + 3 = 3", "global",
                  lambda c: _eq(3, _chern(c).c2)),
        ClaimSpec("chern.c1sqZ", chern, "c1^2(Z) = 12 chi - c2 = 9", "global",
                  lambda c: _eq(9, _chern(c).c1_squared)),
        ClaimSpec("chern.noether", chern, "chi = 1, c1^2 + c2 = 12 and c1^2 = 3 c2", "global",
                  lambda c: (lambda n: _eq({"chi": 1, "c1^2+c2": 12, "c1^2-3c2": 0},
                                           {"chi": n.chi, "c1^2+c2": n.c1_squared + n.c2,
                                            "c1^2-3c2": n.c1_squared - 3 * n.c2}))(_chern(c))),
        ClaimSpec("cover.X.degree7", lemmas,
                  "the index-7 overlattice yields a cyclic cover Z -> X' of degree 7 branched at 3 points",
                  "global", None),
        ClaimSpec("lemma.general_type", lemmas,
                  "Z is of general type (log Kodaira dimension argument; no -3-curve in a fibre)",
                  "global", None),
        ClaimSpec("lemma.pg.h0_K", lemmas, "H^0(X, K_X) = 0 (input: p_g(X) = 0)", "global", None),
        ClaimSpec("lemma.pg.vanishing", lemmas,
                  "H^0(X, K_X + iL) = 0 for i = 1..6, by descent to D with D.F = -6 < 0", "global",
                  _descent_all),
        ClaimSpec("lemma.pg.sheaf_steps", lemmas,
                  "H^2(W, O_W) = sum_{i=0..6} H^0(K_X + iL), hence p_g(Z) = 0 (normalization, Leray)",
                  "global", None),
        ClaimSpec("theorem.fake_plane", lemmas,
                  "Z is a fake projective plane: general type, p_g = 0, c2 = 3, c1^2 = 9",
                  "global", None),
    ]
    for case in CASES:
        specs += _x_claims(case)
    return sorted(specs, key=lambda s: s.claim_id)


REGISTRY = build_registry()


def select(case: str = "all", registry=None) -> list[ClaimSpec]:
    registry = REGISTRY if registry is None else registry
    if case == "all":
        return list(registry)
    if case not in CASES:
        raise ValueError(f"case must be I, II or all, got {case!r}")
    return [s for s in registry if s.scope in ("Y", "global", case)]


def run_claim(spec: ClaimSpec, ctx: Context) -> ClaimReport:
    if spec.run is None:
        return ClaimReport(spec.claim_id, spec.section, spec.statement, ASSERTED)
    try:
        out = spec.run(ctx)
    except Exception as exc:  # a crash inside a check is a failed claim, not a crashed run
        log.debug("claim %s raised", spec.claim_id, exc_info=True)
        return ClaimReport(spec.claim_id, spec.section, spec.statement, "failed",
                           None, f"error: {type(exc).__name__}: {exc}")
    status = "verified" if out.ok else "failed"
    log.debug("%s: %s", spec.claim_id, status)
    return ClaimReport(spec.claim_id, spec.section, spec.statement, status,
                       out.expected, out.computed, out.trace)


def run_claims(configs: Mapping[str, sc.SurfaceConfig], case: str = "all",
               jobs: int = 1) -> list[ClaimReport]:
    cases = CASES if case == "all" else (case,)
    ctx = Context(configs, cases)
    specs = select(case)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda s: run_claim(s, ctx), specs))
    else:
        results = [run_claim(s, ctx) for s in specs]
    return sorted(results, key=lambda r: r.claim_id)


_GOLDEN_LOCK = threading.Lock()
_GOLDEN: dict | None = None


def _golden() -> dict:
    global _GOLDEN
    with _GOLDEN_LOCK:
        if _GOLDEN is None:
            text = resources.files("fpp_verify").joinpath("data", "descent_scripts.json").read_text("utf-8")
            _GOLDEN = json.loads(text)
        return _GOLDEN


def registry_listing(registry=None) -> list[dict]:
    registry = REGISTRY if registry is None else registry
    return [{"claim_id": s.claim_id, "section": s.section, "statement": s.statement,
             "scope": s.scope, "asserted": s.run is None} for s in registry]
