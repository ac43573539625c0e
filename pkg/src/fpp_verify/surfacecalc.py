"""Curve configurations on the two elliptic surfaces and divisor calculus.

A :class:`SurfaceConfig` records named curve classes, their pairwise
intersection numbers, the singular and multiple fibres, and the
intersection functional of the canonical class.  Divisors are exact
rational combinations of curves plus integer multiples of K and of L,
where L is defined through 7L = B for an effective divisor B.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from functools import cached_property
from math import lcm
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping

ROLES = ("fiber-component", "multisection", "fiber-class")

# X-side naming: the I9 cycle in clockwise order and the three sextuple sections
I9_COMPONENTS = ("A1", "A2", "A3", "B1", "B2", "B3", "C1", "C2", "C3")
SECTIONS = ("E1", "E2", "E3")
X_CHAINS = (("A1", "A2", "E1"), ("B1", "B2", "E2"), ("C1", "C2", "E3"))
X_CONTRACTED = tuple(n for chain in X_CHAINS for n in chain)

Y_CONTRACTED = ("A11", "A12", "A21", "A22", "A31", "A32")
Y_SEVEN_CHAIN = ("E", "A41", "A42")

CASE_PARAMS = {"I": (2, 1, 2), "II": (1, 3, 1)}

# B for each case, as printed; 7L = B
PRINTED_B = {
    "I": {"A1": 1, "A2": 2, "E1": 3, "B1": 4, "B2": 1, "E2": 5, "C1": 2, "C2": 4, "E3": 6},
    "II": {"A1": 1, "A2": 2, "E1": 3, "B1": 2, "B2": 4, "E2": 6, "C1": 4, "C2": 1, "E3": 5},
}

# L . (curve) as printed, both cases; "K" and "F" are the canonical and fibre classes
PRINTED_L_TABLE = {
    "I": {
        "A1": 0, "A2": 0, "A3": 4,
        "B1": -1, "B2": 1, "B3": 4,
        "C1": 0, "C2": 0, "C3": 4,
        "E1": -1, "E2": -2, "E3": -2,
        "K": 2, "F": 12,
    },
    "II": {
        "A1": 0, "A2": 0, "A3": 4,
        "B1": 0, "B2": 0, "B3": 4,
        "C1": -1, "C2": 1, "C3": 4,
        "E1": -1, "E2": -2, "E3": -2,
        "K": 2, "F": 12,
    },
}

_ROTATION = {
    **{f"A{i}": f"B{i}" for i in (1, 2, 3)},
    **{f"B{i}": f"C{i}" for i in (1, 2, 3)},
    **{f"C{i}": f"A{i}" for i in (1, 2, 3)},
    "E1": "E2", "E2": "E3", "E3": "E1", "F": "F",
}

_FIBER_TYPE = re.compile(r"^I(\d+)$")


class ConfigError(ValueError):
    """A configuration file or dict does not match the schema."""


@dataclass(frozen=True)
class CurveClass:
    name: str
    self_intersection: int
    role: str


@dataclass(frozen=True)
class Fiber:
    type: str
    components: tuple[str, ...] = ()
    multiplicity: int = 1

    @property
    def euler_number(self) -> int:
        if self.type == "multiple":
            # multiple fibres here have smooth elliptic support
            return 0
        return int(_FIBER_TYPE.match(self.type).group(1))


@dataclass(frozen=True)
class SurfaceConfig:
    """Intersection data for one surface.

    ``intersections`` holds nonzero off-diagonal pairs keyed by
    ``frozenset({a, b})``; unlisted pairs are 0.  ``canonical`` maps a
    curve name to K.C, and the special key ``"K"`` to K.K.  The fibre class
    curve (role ``fiber-class``) is also available as the sum of the
    components of the first fibre that lists components.
    """

    name: str
    curves: tuple[CurveClass, ...]
    intersections: Mapping[frozenset, int]
    fibers: tuple[Fiber, ...]
    canonical: Mapping[str, int]
    case_params: tuple[int, int, int] | None = None
    B: Mapping[str, Fraction] | None = field(default=None, compare=False)

    # -- lookups ---------------------------------------------------------
    @property
    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.curves)

    @property
    def irreducible_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.curves if c.role != "fiber-class")

    @cached_property
    def _by_name(self) -> dict[str, CurveClass]:
        return {c.name: c for c in self.curves}

    @cached_property
    def _dense(self) -> dict[str, dict[str, int]]:
        names = self.names
        return {a: {b: self.table(a, b) for b in names} for a in names}

    def curve(self, name: str) -> CurveClass:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"{self.name}: no curve named {name!r}") from None

    @cached_property
    def fiber_class_name(self) -> str | None:
        return next((c.name for c in self.curves if c.role == "fiber-class"), None)

    @cached_property
    def fiber_components(self) -> tuple[str, ...]:
        return next((f.components for f in self.fibers if f.components), ())

    @property
    def case(self) -> str | None:
        for case, params in CASE_PARAMS.items():
            if self.case_params == params:
                return case
        return None

    def table(self, a: str, b: str) -> int:
        """Raw table value, treating the fibre class as a formal element."""
        if a == b:
            return self.curve(a).self_intersection
        return self.intersections.get(frozenset((a, b)), 0)

    def expand(self, name: str) -> dict[str, int]:
        """Curve as a combination of irreducible curves."""
        if name == self.fiber_class_name:
            return {c: 1 for c in self.fiber_components}
        self.curve(name)
        return {name: 1}

    def dot(self, a: str, b: str) -> int:
        """a . b with the fibre class expanded into its components."""
        by = self._by_name
        if a not in by or b not in by:
            self.curve(a), self.curve(b)  # raises KeyError naming the culprit
        fc = self.fiber_class_name
        if a != fc and b != fc:
            return self.table(a, b)
        cache = self._dot_cache
        key = (a, b)
        if key not in cache:
            ea, eb = self.expand(a), self.expand(b)
            cache[key] = sum(x * y * self.table(p, q) for p, x in ea.items() for q, y in eb.items())
        return cache[key]

    @cached_property
    def _b_expanded(self) -> tuple[int, dict[str, int]]:
        # B over its common denominator, fibre class expanded
        den = lcm(*(Fraction(v).denominator for v in self.B.values())) if self.B else 1
        out: dict[str, int] = {}
        for n, v in self.B.items():
            c = int(Fraction(v) * den)
            for p, x in self.expand(n).items():
                out[p] = out.get(p, 0) + c * x
        return den, out

    @cached_property
    def _dot_cache(self) -> dict[tuple[str, str], int]:
        return {}

    def canonical_dot(self, name: str) -> int:
        if name == "K":
            return self.canonical.get("K", 0)
        return sum(x * self.canonical.get(p, 0) for p, x in self.expand(name).items())

    def gram(self, names: Iterable[str] | None = None) -> list[list[int]]:
        names = list(self.irreducible_names if names is None else names)
        return [[self.dot(a, b) for b in names] for a in names]

    def with_B(self, B: Mapping[str, int | Fraction]) -> SurfaceConfig:
        for n in B:
            if n not in self.names:
                raise KeyError(f"{self.name}: B uses unknown curve {n!r}")
        return replace(self, B={k: Fraction(v) for k, v in B.items() if v})

    def divisor(self, coefficients: Mapping[str, int | Fraction] | None = None,
                k: int = 0, l: int = 0) -> Divisor:
        coefficients = dict(coefficients or {})
        for n in coefficients:
            if n not in self.names:
                raise KeyError(f"{self.name}: no curve named {n!r}")
        return Divisor(self.name, _clean(coefficients), k, l)


def _clean(coeffs: Mapping) -> dict[str, Fraction]:
    return {k: Fraction(v) for k, v in coeffs.items() if v}


@dataclass(frozen=True)
class Divisor:
    """sum(coefficients[C] C) + k_multiple K + l_multiple L on one surface."""

    surface: str
    coefficients: Mapping[str, Fraction]
    k_multiple: int = 0
    l_multiple: int = 0

    def _same(self, other: Divisor):
        if self.surface != other.surface:
            raise ValueError(
                f"divisors live on different surfaces: {self.surface!r} vs {other.surface!r}"
            )

    def __add__(self, other: Divisor) -> Divisor:
        self._same(other)
        c = dict(self.coefficients)
        for n, v in other.coefficients.items():
            c[n] = c.get(n, 0) + v
        return Divisor(self.surface, _clean(c), self.k_multiple + other.k_multiple,
                       self.l_multiple + other.l_multiple)

    def __neg__(self) -> Divisor:
        return Divisor(self.surface, {n: -v for n, v in self.coefficients.items()},
                       -self.k_multiple, -self.l_multiple)

    def __sub__(self, other: Divisor) -> Divisor:
        return self + (-other)

    def __rmul__(self, s: int) -> Divisor:
        if not isinstance(s, int):
            raise TypeError("divisors scale by integers only")
        return Divisor(self.surface, _clean({n: s * v for n, v in self.coefficients.items()}),
                       s * self.k_multiple, s * self.l_multiple)

    def coefficient(self, name: str) -> Fraction:
        return self.coefficients.get(name, Fraction(0))


def _curve_part(config: SurfaceConfig, d: Divisor) -> tuple[int, dict[str, int]]:
    """Irreducible-curve part of ``d`` as (denominator, integer coefficients)."""
    den = lcm(*(v.denominator for v in d.coefficients.values())) if d.coefficients else 1
    bden, bexp = 1, {}
    if d.l_multiple:
        if config.B is None:
            raise ValueError(f"{config.name}: L is undefined until B is attached")
        bden, bexp = config._b_expanded
        bden *= 7
        den = lcm(den, bden)
    out: dict[str, int] = {}
    for n, v in d.coefficients.items():
        c = v.numerator * (den // v.denominator)
        for p, x in config.expand(n).items():
            out[p] = out.get(p, 0) + c * x
    if bexp:
        s = d.l_multiple * (den // bden)
        for p, x in bexp.items():
            out[p] = out.get(p, 0) + s * x
    return den, {p: c for p, c in out.items() if c}


def intersect(config: SurfaceConfig, d1: Divisor, d2: Divisor) -> Fraction:
    """Exact intersection number d1 . d2."""
    for d in (d1, d2):
        if d.surface != config.name:
            raise ValueError(
                f"divisor on {d.surface!r} used with configuration {config.name!r}"
            )
    (n1, c1), (n2, c2) = _curve_part(config, d1), _curve_part(config, d2)
    table, canon = config._dense, config.canonical
    total = 0
    for a, x in c1.items():
        row = table[a]
        total += x * sum(y * row[b] for b, y in c2.items())
    out = Fraction(total, n1 * n2)
    if d1.k_multiple:
        out += Fraction(d1.k_multiple * sum(y * canon.get(b, 0) for b, y in c2.items()), n2)
    if d2.k_multiple:
        out += Fraction(d2.k_multiple * sum(x * canon.get(a, 0) for a, x in c1.items()), n1)
    return out + d1.k_multiple * d2.k_multiple * canon.get("K", 0)


def curve_divisor(config: SurfaceConfig, name: str) -> Divisor:
    return config.divisor({name: 1})


def K(config: SurfaceConfig) -> Divisor:
    return config.divisor(k=1)


def L(config: SurfaceConfig) -> Divisor:
    return config.divisor(l=1)


# -- builders -------------------------------------------------------------

def _pairs(items: Iterable[tuple[str, str, int]]) -> dict[frozenset, int]:
    out = {}
    for a, b, v in items:
        if v:
            out[frozenset((a, b))] = v
    return out


def build_config_Y() -> SurfaceConfig:
    """The Y side: four I3 fibres F1..F4 and the sextuple section E."""
    curves = [CurveClass(f"A{i}{j}", -2, "fiber-component") for i in range(1, 5) for j in range(1, 4)]
    curves.append(CurveClass("E", -3, "multisection"))
    curves.append(CurveClass("F", 0, "fiber-class"))
    items = []
    for i in range(1, 5):
        a = [f"A{i}{j}" for j in range(1, 4)]
        items += [(a[0], a[1], 1), (a[1], a[2], 1), (a[0], a[2], 1)]
    items += [("E", "A13", 6), ("E", "A23", 6), ("E", "A33", 6), ("E", "A41", 1), ("E", "A43", 5)]
    items.append(("E", "F", 6))
    fibers = [Fiber("I3", tuple(f"A{i}{j}" for j in range(1, 4))) for i in range(1, 5)]
    fibers += [Fiber("multiple", (), 2), Fiber("multiple", (), 3)]
    canonical = {"E": 1, "F": 0, "K": 0}
    return SurfaceConfig("Y", tuple(curves), _pairs(items), tuple(fibers), canonical)


def _section_rows(alpha: int, beta: int, gamma: int) -> list[tuple[str, str, int]]:
    # E2 and E3 rows are the E1 row moved by the order-3 rotation
    return [
        ("E1", "A3", alpha), ("E1", "B3", beta), ("E1", "C3", gamma),
        ("E2", "A3", gamma), ("E2", "B3", alpha), ("E2", "C3", beta),
        ("E3", "A3", beta), ("E3", "B3", gamma), ("E3", "C3", alpha),
    ]


def build_config_X(case: str) -> SurfaceConfig:
    """The X side for Case I or II: the I9 cycle, E1, E2, E3 and F."""
    if case not in CASE_PARAMS:
        raise ValueError(f"case must be one of {sorted(CASE_PARAMS)}, got {case!r}")
    alpha, beta, gamma = CASE_PARAMS[case]
    curves = [CurveClass(n, -2, "fiber-component") for n in I9_COMPONENTS]
    curves += [CurveClass(n, -3, "multisection") for n in SECTIONS]
    curves.append(CurveClass("F", 0, "fiber-class"))
    items = [(I9_COMPONENTS[k], I9_COMPONENTS[(k + 1) % 9], 1) for k in range(9)]
    items += [("E1", "A2", 1), ("E2", "B2", 1), ("E3", "C2", 1)]
    items += _section_rows(alpha, beta, gamma)
    items += [(e, "F", 1 + alpha + beta + gamma) for e in SECTIONS]
    fibers = (
        Fiber("I9", I9_COMPONENTS),
        Fiber("I1"), Fiber("I1"), Fiber("I1"),
        Fiber("multiple", (), 2), Fiber("multiple", (), 3),
    )
    canonical = {**{e: 1 for e in SECTIONS}, "F": 0, "K": 0}
    return SurfaceConfig(f"X_case{case}", tuple(curves), _pairs(items), fibers, canonical,
                         (alpha, beta, gamma))


def with_case_params(config: SurfaceConfig, triple: tuple[int, int, int]) -> SurfaceConfig:
    """Copy of an X-side config with E_i . (A3, B3, C3) reset from ``triple``."""
    alpha, beta, gamma = triple
    inter = dict(config.intersections)
    for a, b, _ in _section_rows(0, 0, 0):
        inter.pop(frozenset((a, b)), None)
    inter.update(_pairs(_section_rows(alpha, beta, gamma)))
    fc = config.fiber_class_name
    if fc is not None:
        for e in SECTIONS:
            inter.pop(frozenset((e, fc)), None)
            inter.update(_pairs([(e, fc, sum(inter.get(frozenset((e, c)), 0)
                                             for c in config.fiber_components))]))
    return replace(config, intersections=inter, case_params=(alpha, beta, gamma))


# -- JSON -----------------------------------------------------------------

def config_to_dict(config: SurfaceConfig) -> dict:
    order = {n: i for i, n in enumerate(config.names)}
    inter = []
    for key, v in config.intersections.items():
        a, b = sorted(key, key=order.__getitem__)
        inter.append([a, b, v])
    inter.sort(key=lambda t: (order[t[0]], order[t[1]]))
    out = {
        "surface": config.name,
        "curves": [
            {"name": c.name, "self_intersection": c.self_intersection, "role": c.role}
            for c in config.curves
        ],
        "intersections": inter,
        "fibers": [
            {"type": f.type, "components": list(f.components), "multiplicity": f.multiplicity}
            for f in config.fibers
        ],
        "canonical": [[n, v] for n, v in config.canonical.items()],
    }
    if config.case_params is not None:
        a, b, g = config.case_params
        out["case_params"] = {"alpha": a, "beta": b, "gamma": g}
    return out


def _need(d: Mapping, key: str, kind, where: str):
    if key not in d:
        raise ConfigError(f"{where}: missing key {key!r}")
    v = d[key]
    if not isinstance(v, kind) or (kind is int and isinstance(v, bool)):
        raise ConfigError(f"{where}: {key!r} must be {getattr(kind, '__name__', kind)}")
    return v


def config_from_dict(data, name: str | None = None) -> SurfaceConfig:
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a JSON object")
    name = data.get("surface", name)
    if not isinstance(name, str) or not name:
        raise ConfigError("configuration needs a surface name")

    curves = []
    for k, c in enumerate(_need(data, "curves", list, name)):
        where = f"{name}: curves[{k}]"
        if not isinstance(c, dict):
            raise ConfigError(f"{where} must be an object")
        role = _need(c, "role", str, where)
        if role not in ROLES:
            raise ConfigError(f"{where}: role {role!r} not in {ROLES}")
        curves.append(CurveClass(_need(c, "name", str, where),
                                 _need(c, "self_intersection", int, where), role))
    names = [c.name for c in curves]
    if not names:
        raise ConfigError(f"{name}: no curves")
    if len(set(names)) != len(names):
        raise ConfigError(f"{name}: duplicate curve names")
    if sum(c.role == "fiber-class" for c in curves) > 1:
        raise ConfigError(f"{name}: at most one fiber-class curve allowed")

    def known(n, where):
        if n not in names:
            raise ConfigError(f"{where}: unknown curve {n!r}")
        return n

    inter: dict[frozenset, int] = {}
    for k, t in enumerate(_need(data, "intersections", list, name)):
        where = f"{name}: intersections[{k}]"
        if (not isinstance(t, list) or len(t) != 3 or not isinstance(t[2], int)
                or isinstance(t[2], bool)):
            raise ConfigError(f"{where} must be [nameA, nameB, integer]")
        a, b = known(t[0], where), known(t[1], where)
        if a == b:
            raise ConfigError(f"{where}: self-intersections belong in curves")
        key = frozenset((a, b))
        if key in inter:
            raise ConfigError(f"{where}: pair {a}-{b} listed twice")
        if t[2]:
            inter[key] = t[2]

    fibers = []
    for k, f in enumerate(_need(data, "fibers", list, name)):
        where = f"{name}: fibers[{k}]"
        if not isinstance(f, dict):
            raise ConfigError(f"{where} must be an object")
        ftype = _need(f, "type", str, where)
        if ftype != "multiple" and not _FIBER_TYPE.match(ftype):
            raise ConfigError(f"{where}: unknown fiber type {ftype!r}")
        comps = tuple(known(n, where) for n in f.get("components", []))
        mult = f.get("multiplicity", 1)
        if not isinstance(mult, int) or isinstance(mult, bool) or mult < 1:
            raise ConfigError(f"{where}: multiplicity must be a positive integer")
        fibers.append(Fiber(ftype, comps, mult))

    canonical = {}
    for k, t in enumerate(_need(data, "canonical", list, name)):
        where = f"{name}: canonical[{k}]"
        if (not isinstance(t, list) or len(t) != 2 or not isinstance(t[1], int)
                or isinstance(t[1], bool)):
            raise ConfigError(f"{where} must be [name, integer]")
        n = t[0] if t[0] == "K" else known(t[0], where)
        canonical[n] = t[1]

    params = None
    if "case_params" in data:
        cp = data["case_params"]
        if not isinstance(cp, dict):
            raise ConfigError(f"{name}: case_params must be an object")
        params = tuple(_need(cp, k, int, f"{name}: case_params") for k in ("alpha", "beta", "gamma"))

    return SurfaceConfig(name, tuple(curves), inter, tuple(fibers), canonical, params)


def load_config(path: str | Path) -> SurfaceConfig:
    """Read a configuration file; schema problems raise :class:`ConfigError`.

    I/O problems propagate as :class:`OSError`.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON ({exc})") from None
    return config_from_dict(data, name=path.stem)


def dumps_config(config: SurfaceConfig) -> str:
    """JSON text with one list item per line, so files diff and edit well."""
    data = config_to_dict(config)
    parts = []
    for key, value in data.items():
        if isinstance(value, list):
            items = ",\n".join("    " + json.dumps(v) for v in value)
            parts.append(f'  {json.dumps(key)}: [\n{items}\n  ]')
        else:
            parts.append(f"  {json.dumps(key)}: {json.dumps(value)}")
    return "{\n" + ",\n".join(parts) + "\n}\n"


def dump_config(config: SurfaceConfig, path: str | Path) -> None:
    Path(path).write_text(dumps_config(config), encoding="utf-8")


# -- checks ---------------------------------------------------------------

@dataclass(frozen=True)
class TableEntry:
    name: str
    expected: Fraction
    computed: Fraction

    @property
    def ok(self) -> bool:
        return self.expected == self.computed


def line_bundle_dots(config: SurfaceConfig) -> dict[str, Fraction]:
    """L . X for every curve name plus K and F."""
    ell = L(config)
    out = {n: intersect(config, ell, curve_divisor(config, n)) for n in config.names}
    out["K"] = intersect(config, ell, K(config))
    return out


def verify_L_table(config: SurfaceConfig, case: str | None = None) -> tuple[list[TableEntry], bool]:
    """Compare L . C against the printed table; also report integrality.

    Returns the 14 entries and whether L . C is an integer for every curve.
    """
    case = case or config.case
    if case not in PRINTED_L_TABLE:
        raise ValueError(f"{config.name}: no printed L table for case {case!r}")
    dots = line_bundle_dots(config)
    fc = config.fiber_class_name or "F"
    entries = []
    for n, v in PRINTED_L_TABLE[case].items():
        key = fc if n == "F" else n
        entries.append(TableEntry(n, Fraction(v), dots.get(key)))
    integral = all(v.denominator == 1 for v in dots.values())
    return entries, integral


def euler_number(config: SurfaceConfig) -> int:
    """Topological Euler number as the sum over singular fibres."""
    return sum(f.euler_number for f in config.fibers)


def contracted_euler(config: SurfaceConfig, names: Iterable[str]) -> int:
    """Euler number of a normal-crossing union of smooth rational curves.

    Each curve is a sphere (2) and each transverse meeting point glues
    two of them (-1).
    """
    names = list(names)
    pts = sum(config.table(a, b) for i, a in enumerate(names) for b in names[i + 1:])
    return 2 * len(names) - pts


def connected_components(config: SurfaceConfig, names: Iterable[str]) -> list[tuple[str, ...]]:
    names = list(names)
    seen, out = set(), []
    for n in names:
        if n in seen:
            continue
        comp, stack = [], [n]
        seen.add(n)
        while stack:
            a = stack.pop()
            comp.append(a)
            for b in names:
                if b not in seen and config.table(a, b):
                    seen.add(b)
                    stack.append(b)
        out.append(tuple(sorted(comp, key=names.index)))
    return out


def euler_numbers(y: SurfaceConfig | None = None, x: SurfaceConfig | None = None) -> tuple[int, int, int]:
    """(e(Y), e(X), e(X0)); X0 is X minus the nine contracted curves."""
    y = y or build_config_Y()
    x = x or build_config_X("I")
    e_x = euler_number(x)
    e_x0 = e_x - contracted_euler(x, X_CONTRACTED)
    return euler_number(y), e_x, e_x0


@dataclass(frozen=True)
class AdjunctionRow:
    name: str
    self_intersection: int
    canonical: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.self_intersection + self.canonical == self.expected


def adjunction_check(config: SurfaceConfig) -> list[AdjunctionRow]:
    """C^2 + K.C = 2g - 2 with g = 0 for curves and g = 1 for the fibre class."""
    rows = []
    for c in config.curves:
        expected = 0 if c.role == "fiber-class" else -2
        rows.append(AdjunctionRow(c.name, config.dot(c.name, c.name),
                                  config.canonical_dot(c.name), expected))
    return rows


def rotation_violations(config: SurfaceConfig) -> list[tuple[str, str, int, int]]:
    """Pairs whose intersection number changes under A->B->C->A, E1->E2->E3->E1."""
    bad = []
    names = [n for n in config.names if n in _ROTATION]
    for i, a in enumerate(names):
        for b in names[i:]:
            before, after = config.table(a, b), config.table(_ROTATION[a], _ROTATION[b])
            if before != after:
                bad.append((a, b, before, after))
    for n in names:
        if config.canonical.get(n, 0) != config.canonical.get(_ROTATION[n], 0):
            bad.append((n, "K", config.canonical.get(n, 0), config.canonical.get(_ROTATION[n], 0)))
    return bad


def fiber_class_mismatches(config: SurfaceConfig) -> list[tuple[str, int, int]]:
    """Where the formal fibre-class row disagrees with its component sum."""
    fc = config.fiber_class_name
    if fc is None:
        return []
    bad = []
    comps = config.fiber_components
    for n in config.names:
        formal = config.table(fc, n)
        summed = sum(config.table(c, n) if n != fc else config.dot(c, fc) for c in comps)
        if formal != summed:
            bad.append((n, formal, summed))
    formal_k = config.canonical.get(fc, 0)
    summed_k = sum(config.canonical.get(c, 0) for c in comps)
    if formal_k != summed_k:
        bad.append(("K", formal_k, summed_k))
    return bad
