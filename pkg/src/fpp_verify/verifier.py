"""Construction-specific verification algorithms.

* the scan over E1 . (A3, B3, C3) that leaves exactly two solvable cases,
* the mod-7 glue vector and the divisor B = 7L it determines,
* negative-curve descent certificates for H^0(K + iL) = 0, i = 1..6,
* Euler-number and Chern-number bookkeeping for the degree-7 cover,
* the lattice checks on the Y side.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import surfacecalc as sc
from .exactcore import IntMatrix, determinant, inertia, rank, smith_normal_form, solve_rational
from .latticekit import (
    Lattice,
    bilinear_mod_z,
    discriminant_group,
    enumerate_integral_overlattices,
    p_elementary_and_length,
    sublattice,
)

MAX_DESCENT_STEPS = 200
GLUE_PRIME = 7
CHAIN_WEIGHTS = (1, 2, 3)

# D_i printed for Case I: subtracted multiplicities of K + iL
PRINTED_DESCENT = {
    6: {"E1": 3, "E2": 5, "E3": 5, "A1": 1, "A2": 2, "A3": 1, "B1": 4, "B2": 1, "C1": 1, "C2": 3},
    5: {"E1": 3, "E2": 4, "E3": 4, "A1": 1, "A2": 2, "A3": 1, "B1": 3, "B2": 1, "C1": 1, "C2": 2},
    4: {"E1": 2, "E2": 3, "E3": 4, "A1": 1, "A2": 1, "B1": 2, "B2": 1, "C1": 1, "C2": 2},
    3: {"E1": 1, "E2": 3, "E3": 3, "A1": 1, "A2": 1, "B1": 2, "B2": 1, "B3": 1, "C1": 1, "C2": 2},
    2: {"E1": 1, "E2": 1, "E3": 3, "A1": 1, "A2": 1, "B1": 1, "C1": 1, "C2": 2, "C3": 1},
    1: {"E1": 1, "E2": 1, "E3": 1, "B1": 1, "B2": 1, "B3": 1, "C1": 1, "C2": 1},
}

PRINTED_GLUE = {"I": (4, 2), "II": (2, 4)}
FEASIBLE_TRIPLES = {(2, 1, 2), (1, 3, 1)}


class VerificationError(Exception):
    """A computation that must succeed did not."""


class DescentRejected(VerificationError):
    def __init__(self, step: int | None, reason: str):
        self.step = step
        where = "final divisor" if step is None else f"step {step}"
        super().__init__(f"{where}: {reason}")


def _case_label(config: sc.SurfaceConfig) -> str:
    return config.case or config.name


# -- (alpha, beta, gamma) feasibility ---------------------------------------

@dataclass(frozen=True)
class FeasibilityResult:
    triple: tuple[int, int, int]
    consistent: bool
    witness: tuple[Fraction, ...] | None


def feasibility_system(config: sc.SurfaceConfig, include_fiber: bool = False):
    """Linear system for E2 - E1 = sum a_i A_i + sum b_i B_i + sum c_i C_i.

    Unknowns are ordered A1..C3.  Rows: pairing with the nine components
    and E1, E2, E3 (12 rows), optionally with F (automatically satisfied),
    then a_i + b_i + c_i = 0 for i = 1, 2, 3.  Returns the integer matrix,
    right-hand side and row labels.
    """
    comps = sc.I9_COMPONENTS
    targets = list(comps) + list(sc.SECTIONS)
    if include_fiber:
        targets.append(config.fiber_class_name)
    rows, rhs, labels = [], [], []
    for t in targets:
        rows.append([config.dot(c, t) for c in comps])
        rhs.append(config.dot("E2", t) - config.dot("E1", t))
        labels.append(f"(E2-E1).{t}")
    for i in range(3):
        row = [0] * 9
        row[i] = row[3 + i] = row[6 + i] = 1
        rows.append(row)
        rhs.append(0)
        labels.append(f"a{i + 1}+b{i + 1}+c{i + 1}")
    return IntMatrix.from_rows(rows), tuple(rhs), tuple(labels)


def solve_triple(config: sc.SurfaceConfig, triple=None, include_fiber: bool = False) -> FeasibilityResult:
    """Solve the system for ``triple`` (default: the config's own incidences)."""
    if triple is not None:
        config = sc.with_case_params(config, tuple(triple))
    else:
        triple = tuple(config.table("E1", n) for n in ("A3", "B3", "C3"))
    a, b, _ = feasibility_system(config, include_fiber)
    res = solve_rational(a, b)
    return FeasibilityResult(tuple(triple), res.consistent, res.solution)


def candidate_triples(total: int = 5) -> list[tuple[int, int, int]]:
    return [t for t in itertools.product(range(total + 1), repeat=3) if sum(t) == total]


def scan_triples(config: sc.SurfaceConfig | None = None, include_fiber: bool = False) -> list[FeasibilityResult]:
    """Solve the system for every nonnegative triple with sum 5."""
    config = config or sc.build_config_X("I")
    return [solve_triple(config, t, include_fiber) for t in candidate_triples()]


def feasible_triples(config: sc.SurfaceConfig | None = None, include_fiber: bool = False) -> set[tuple[int, int, int]]:
    return {r.triple for r in scan_triples(config, include_fiber) if r.consistent}


def witness_residuals(config: sc.SurfaceConfig, result: FeasibilityResult) -> dict[str, Fraction]:
    """(E2 - E1 - witness) . T for the 12 named curves; all zero when the witness is right."""
    config = sc.with_case_params(config, result.triple)
    coeffs = dict(zip(sc.I9_COMPONENTS, result.witness))
    lhs = config.divisor({"E2": 1, "E1": -1}) - config.divisor(coeffs)
    return {
        t: sc.intersect(config, lhs, sc.curve_divisor(config, t))
        for t in sc.I9_COMPONENTS + sc.SECTIONS
    }


# -- glue vector ----------------------------------------------------------------

@dataclass(frozen=True)
class GlueVector:
    """v = g1 + a g2 + b g3 with g_k = (1/7)(chain_k . (1, 2, 3))."""

    a: int
    b: int

    def coefficients(self) -> dict[str, Fraction]:
        out = {}
        for mult, chain in zip((1, self.a, self.b), sc.X_CHAINS):
            for w, n in zip(CHAIN_WEIGHTS, chain):
                if mult * w:
                    out[n] = Fraction(mult * w, GLUE_PRIME)
        return out

    def divisor_B(self) -> dict[str, int]:
        """Effective representative of 7v with coefficients in 1..6."""
        return {n: int(c * GLUE_PRIME) % GLUE_PRIME for n, c in self.coefficients().items()
                if int(c * GLUE_PRIME) % GLUE_PRIME}


@dataclass(frozen=True)
class GlueCertificate:
    glue: GlueVector
    candidates: int
    survivors: tuple[tuple[int, int], ...]
    rejections: Mapping[tuple[int, int], tuple[str, Fraction]]


def glue_obstruction(config: sc.SurfaceConfig, a: int, b: int) -> tuple[str, Fraction] | None:
    """First curve with a non-integral pairing against v, or None."""
    # 7v is integral, so pair it through the integer table and divide once
    seven_v = {c: int(x * GLUE_PRIME) for c, x in GlueVector(a, b).coefficients().items()}
    for n in config.names:
        val = Fraction(sum(m * config.dot(c, n) for c, m in seven_v.items()), GLUE_PRIME)
        if val.denominator != 1:
            return n, val
    return None


def glue_vector(config: sc.SurfaceConfig) -> GlueCertificate:
    """Brute-force the 49 residue pairs; exactly one must pair integrally with every curve."""
    survivors, rejected = [], {}
    for a, b in itertools.product(range(GLUE_PRIME), repeat=2):
        obstruction = glue_obstruction(config, a, b)
        if obstruction is None:
            survivors.append((a, b))
        else:
            rejected[(a, b)] = obstruction
    if len(survivors) != 1:
        raise VerificationError(
            f"{config.name}: expected one glue vector, found {len(survivors)}: {survivors}"
        )
    return GlueCertificate(GlueVector(*survivors[0]), GLUE_PRIME ** 2, tuple(survivors), rejected)


def contracted_lattice(config: sc.SurfaceConfig, names: Sequence[str] = sc.X_CONTRACTED) -> Lattice:
    return Lattice(tuple(names), IntMatrix.from_rows(config.gram(names)))


def chain_generators(names: Sequence[str] = sc.X_CONTRACTED) -> tuple[tuple[Fraction, ...], ...]:
    """g1, g2, g3 as coordinate vectors in the basis ``names``."""
    out = []
    for chain in sc.X_CHAINS:
        weights = dict(zip(chain, CHAIN_WEIGHTS))
        out.append(tuple(Fraction(weights.get(n, 0), GLUE_PRIME) for n in names))
    return tuple(out)


def glue_overlattice_check(config: sc.SurfaceConfig, glue: GlueVector) -> tuple[Fraction, bool]:
    """b(v, v) and whether <v> is among the integral index-7 overlattices of the chain lattice."""
    lat = contracted_lattice(config)
    gens = chain_generators()
    v = tuple(sum((c * g[k] for c, g in zip((1, glue.a, glue.b), gens)), Fraction(0))
              for k in range(lat.rank))
    certs = enumerate_integral_overlattices(lat, GLUE_PRIME, gens)
    listed = any(c.glue_generators[0] == (1, glue.a, glue.b) for c in certs)
    return lat.pair(v, v), listed


def b_divisibility(config: sc.SurfaceConfig, B: Mapping[str, int]) -> dict[str, Fraction]:
    """B . C for every curve and K; 7L = B needs all of them divisible by 7."""
    d = config.divisor(B)
    out = {n: sc.intersect(config, d, sc.curve_divisor(config, n)) for n in config.names}
    out["K"] = sc.intersect(config, d, sc.K(config))
    return out


def attach_line_bundle(config: sc.SurfaceConfig) -> tuple[sc.SurfaceConfig, GlueCertificate]:
    cert = glue_vector(config)
    return config.with_B(cert.glue.divisor_B()), cert


# -- descent ----------------------------------------------------------------

@dataclass(frozen=True)
class DescentStep:
    curve: str
    pairing: Fraction  # D . C just before C is subtracted


@dataclass(frozen=True)
class DescentTrace:
    case: str
    i: int
    steps: tuple[DescentStep, ...]
    divisors: tuple[sc.Divisor, ...]  # running divisor after each step
    final: sc.Divisor
    final_dot_F: Fraction
    section_multiplicities: tuple[int, ...]
    fiber_part: Mapping[str, int]

    @property
    def script(self) -> tuple[str, ...]:
        return tuple(s.curve for s in self.steps)

    def subtracted(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for s in self.steps:
            out[s.curve] = out.get(s.curve, 0) + 1
        return out


def _check_level(i: int):
    if not isinstance(i, int) or not 1 <= i <= 6:
        raise ValueError(f"descent level must be in 1..6, got {i!r}")


def _start(config: sc.SurfaceConfig, i: int) -> sc.Divisor:
    if config.B is None:
        raise ValueError(f"{config.name}: attach B before running a descent")
    return config.divisor(k=1, l=i)


def descent_replay(config: sc.SurfaceConfig, i: int, script: Sequence[str]) -> DescentTrace:
    """Check a subtraction script starting from K + iL.

    Every step must subtract a curve C with C^2 < 0 and D . C < 0 (so C is
    a fixed component of |D| whenever D is effective).  The final divisor
    must have negative degree on the nef fibre class, with section
    multiplicities summing to 2i + 1 and the rest supported on the I9
    fibre.  Raises :class:`DescentRejected` naming the failing step.
    """
    _check_level(i)
    if not script:
        raise ValueError("descent script is empty")
    fc = config.fiber_class_name
    fiber = set(config.fiber_components)
    d = _start(config, i)
    steps, divisors = [], []
    for k, name in enumerate(script, start=1):
        if name not in config.irreducible_names:
            raise DescentRejected(k, f"{name!r} is not an irreducible curve of {config.name}")
        c = sc.curve_divisor(config, name)
        self_int = sc.intersect(config, c, c)
        if self_int >= 0:
            raise DescentRejected(k, f"{name}^2 = {self_int} is not negative")
        val = sc.intersect(config, d, c)
        if val >= 0:
            raise DescentRejected(k, f"D.{name} = {val} is not negative")
        d = d - c
        steps.append(DescentStep(name, val))
        divisors.append(d)
    final_f = sc.intersect(config, d, sc.curve_divisor(config, fc))
    if final_f >= 0:
        raise DescentRejected(None, f"D.F = {final_f} is not negative")
    taken: dict[str, int] = {}
    for s in steps:
        taken[s.curve] = taken.get(s.curve, 0) + 1
    mults = tuple(taken.get(e, 0) for e in sc.SECTIONS)
    if sum(mults) != 2 * i + 1:
        raise DescentRejected(None, f"section multiplicities {mults} do not sum to {2 * i + 1}")
    fiber_part = {n: m for n, m in taken.items() if n not in sc.SECTIONS}
    stray = sorted(set(fiber_part) - fiber)
    if stray:
        raise DescentRejected(None, f"{stray} are not components of the I9 fibre")
    return DescentTrace(_case_label(config), i, tuple(steps), tuple(divisors), d,
                        final_f, mults, fiber_part)


class _FastPairing:
    """D . C for D = K + iL - sum m_x x, using precomputed integer tables."""

    def __init__(self, config: sc.SurfaceConfig, i: int):
        self.names = config.irreducible_names
        ell = sc.line_bundle_dots(config)
        self.base = {c: config.canonical.get(c, 0) + i * ell[c] for c in self.names}
        self.table = {(x, c): config.table(x, c) for x in self.names for c in self.names}
        self.neg = {c for c in self.names if config.table(c, c) < 0}
        self.fiber_dot = {x: config.dot(x, config.fiber_class_name) for x in self.names}
        self.base_f = i * ell[config.fiber_class_name] + config.canonical_dot(config.fiber_class_name)

    def dot(self, m: Mapping[str, int], c: str) -> Fraction:
        return self.base[c] - sum(v * self.table[x, c] for x, v in m.items() if v)

    def dot_f(self, m: Mapping[str, int]) -> Fraction:
        return self.base_f - sum(v * self.fiber_dot[x] for x, v in m.items() if v)


def descent_search(config: sc.SurfaceConfig, i: int, cap: int = MAX_DESCENT_STEPS) -> DescentTrace:
    """Greedy descent: subtract the curve with the most negative D . C.

    Ties go to the earlier curve in declaration order.  Stops once D . F < 0
    and returns the trace re-checked by :func:`descent_replay`.
    """
    _check_level(i)
    _start(config, i)
    fast = _FastPairing(config, i)
    m: dict[str, int] = {}
    script: list[str] = []
    while fast.dot_f(m) >= 0:
        if len(script) >= cap:
            raise VerificationError(f"{config.name}, i={i}: step cap {cap} exhausted")
        best = None
        for c in fast.names:
            if c not in fast.neg:
                continue
            v = fast.dot(m, c)
            if v < 0 and (best is None or v < best[0]):
                best = (v, c)
        if best is None:
            raise VerificationError(
                f"{config.name}, i={i}: no negative curve left with D.F = {fast.dot_f(m)} >= 0"
            )
        script.append(best[1])
        m[best[1]] = m.get(best[1], 0) + 1
    return descent_replay(config, i, script)


def descent_to_target(config: sc.SurfaceConfig, i: int, target: Mapping[str, int],
                      slack: int = 2) -> tuple[DescentTrace, dict[str, int]]:
    """Find a valid script whose subtracted multiset reaches ``target``.

    Tries the exact target first.  Failing that, it looks for an endpoint
    that subtracts the same sections and at least the target's fibre
    components (at most ``slack`` extra of each).  The returned remainder
    is endpoint minus target: the target divisor equals the endpoint plus
    this effective, fibre-supported remainder.
    """
    _check_level(i)
    _start(config, i)
    fast = _FastPairing(config, i)
    names = fast.names

    def explore(bound):
        # BFS over subtracted multisets; validity of a step depends only on the state
        start = tuple(0 for _ in names)
        parent = {start: None}
        queue = deque([start])
        while queue:
            state = queue.popleft()
            m = dict(zip(names, state))
            for k, c in enumerate(names):
                if state[k] < bound[c] and c in fast.neg and fast.dot(m, c) < 0:
                    nxt = state[:k] + (state[k] + 1,) + state[k + 1:]
                    if nxt not in parent:
                        parent[nxt] = (state, c)
                        queue.append(nxt)
        return parent

    def path_to(parent, state):
        out = []
        while parent[state] is not None:
            state, c = parent[state]
            out.append(c)
        return out[::-1]

    exact = {n: target.get(n, 0) for n in names}
    goal = tuple(exact[n] for n in names)
    parent = explore(exact)
    if goal in parent:
        script = path_to(parent, goal)
    else:
        loose = {n: exact[n] + (0 if n in sc.SECTIONS else slack) for n in names}
        parent = explore(loose)
        ends = [
            st for st in parent
            if all(x >= y for x, y in zip(st, goal))
            and all(st[k] == goal[k] for k, n in enumerate(names) if n in sc.SECTIONS)
        ]
        if not ends:
            raise VerificationError(f"{config.name}, i={i}: target not reachable by descent")
        # smallest remainder first, then a fixed order for determinism
        best = min(ends, key=lambda st: (sum(st) - sum(goal), st))
        script = path_to(parent, best)
    trace = descent_replay(config, i, script)
    got = trace.subtracted()
    remainder = {n: got.get(n, 0) - exact[n] for n in names if got.get(n, 0) != exact[n]}
    return trace, remainder


def printed_divisor(config: sc.SurfaceConfig, i: int) -> sc.Divisor:
    return config.divisor(k=1, l=i) - config.divisor(PRINTED_DESCENT[i])


# -- Euler and Chern numbers -----------------------------------------------

@dataclass(frozen=True)
class ChernNumbers:
    e_X: int
    e_contracted: int
    e_X0: int
    branch_points: int
    c2: int
    chi: int
    c1_squared: int


def chern_pipeline(x: sc.SurfaceConfig | None = None, pg: int = 0, q: int = 0,
                   degree: int = GLUE_PRIME) -> ChernNumbers:
    """Chern numbers of the degree-7 cover Z.

    Z is unramified over X0 and totally ramified over the branch points,
    so c2(Z) = 7 e(X0) + (number of branch points).  Noether's formula with
    chi = 1 - q + pg then gives c1^2.  pg = q = 0 are inputs.
    """
    x = x or sc.build_config_X("I")
    e_x = sc.euler_number(x)
    e_exc = sc.contracted_euler(x, sc.X_CONTRACTED)
    branch = len(sc.connected_components(x, sc.X_CONTRACTED))
    e_x0 = e_x - e_exc
    c2 = degree * e_x0 + branch
    chi = 1 - q + pg
    return ChernNumbers(e_x, e_exc, e_x0, branch, c2, chi, 12 * chi - c2)


# -- lattice bookkeeping ------------------------------------------------------

@dataclass(frozen=True)
class LatticeSideReport:
    h2_rank: int
    span_rank: int
    signature: tuple[int, int, int]
    contracted_divisors: tuple[int, ...]
    contracted_elementary: tuple[bool, int]
    perp_rank: int
    overlattice_count: int


def h2_rank(config: sc.SurfaceConfig) -> int:
    # b1 = b3 = 0, so b2 = e - 2
    return sc.euler_number(config) - 2


def lattice_side(config: sc.SurfaceConfig, contracted: Sequence[str], p: int) -> LatticeSideReport:
    gram = IntMatrix.from_rows(config.gram())
    lat = contracted_lattice(config, contracted)
    b2 = h2_rank(config)
    return LatticeSideReport(
        h2_rank=b2,
        span_rank=rank(gram),
        signature=inertia(gram),
        contracted_divisors=smith_normal_form(lat.gram).elementary_divisors,
        contracted_elementary=p_elementary_and_length(lat, p),
        perp_rank=b2 - lat.rank,
        overlattice_count=len(enumerate_integral_overlattices(lat, p)),
    )


@dataclass(frozen=True)
class YSideReport:
    lattice: LatticeSideReport
    seven_chain_gram: tuple[tuple[int, ...], ...]
    seven_chain_det: int
    seven_chain_orders: tuple[int, ...]
    seven_chain_orthogonal: bool
    cover_inference: str = "asserted-unverified"


def y_side_checks(y: sc.SurfaceConfig | None = None) -> YSideReport:
    """Computable ingredients of the degree-3 cover on the Y side."""
    y = y or sc.build_config_Y()
    lat = lattice_side(y, sc.Y_CONTRACTED, 3)
    full = Lattice(y.irreducible_names, IntMatrix.from_rows(y.gram()))
    seven = sublattice(full, sc.Y_SEVEN_CHAIN)
    orth = all(y.dot(a, b) == 0 for a in sc.Y_SEVEN_CHAIN for b in sc.Y_CONTRACTED)
    det = determinant(seven.gram)
    orders = discriminant_group(seven).cyclic_orders if det else ()
    return YSideReport(lat, tuple(map(tuple, seven.gram.tolist())), det, orders, orth)


def disc_form_on_chain_generators(config: sc.SurfaceConfig) -> list[list[Fraction]]:
    """b(g_j, g_k) mod Z for the three chain generators."""
    lat = contracted_lattice(config)
    gens = chain_generators()
    return [[bilinear_mod_z(lat, g, h) for h in gens] for g in gens]
