"""Integral lattices, discriminant groups and prime-index overlattices."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .exactcore import IntMatrix, determinant, row_basis, smith_normal_form


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p ** 0.5) + 1))


def _frac_mod(x: Fraction, m: int) -> Fraction:
    return x - m * (x // m)


@dataclass(frozen=True)
class Lattice:
    """Free Z-module with a symmetric integral bilinear form."""

    basis_labels: tuple[str, ...]
    gram: IntMatrix

    def __post_init__(self):
        if not isinstance(self.gram, IntMatrix):
            object.__setattr__(self, "gram", IntMatrix.from_rows(self.gram))
        object.__setattr__(self, "basis_labels", tuple(self.basis_labels))
        if not self.gram.is_symmetric():
            raise ValueError("Gram matrix must be square and symmetric")
        if len(self.basis_labels) != self.gram.rows:
            raise ValueError(
                f"{len(self.basis_labels)} labels for a rank {self.gram.rows} Gram matrix"
            )
        if len(set(self.basis_labels)) != len(self.basis_labels):
            raise ValueError("basis labels must be distinct")

    @classmethod
    def from_gram(cls, gram, labels: Sequence[str] | None = None) -> Lattice:
        gram = gram if isinstance(gram, IntMatrix) else IntMatrix.from_rows(gram)
        if labels is None:
            labels = [f"e{i + 1}" for i in range(gram.rows)]
        return cls(tuple(labels), gram)

    @property
    def rank(self) -> int:
        return self.gram.rows

    @property
    def det(self) -> int:
        return determinant(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i, i] % 2 == 0 for i in range(self.rank))

    def pair(self, x: Sequence, y: Sequence) -> Fraction:
        """Bilinear form on coordinate vectors (rational allowed)."""
        n = self.rank
        if len(x) != n or len(y) != n:
            raise ValueError(f"vectors must have length {n}")
        # clear denominators so the double sum runs on plain ints
        dx, xi = _integral(x)
        dy, yi = _integral(y)
        e = self.gram.entries
        total = 0
        for i in range(n):
            if xi[i]:
                row = i * n
                total += xi[i] * sum(e[row + j] * yi[j] for j in range(n) if yi[j])
        return Fraction(total, dx * dy)

    def is_dual_vector(self, v: Sequence) -> bool:
        return all(self.pair(v, e).denominator == 1 for e in _unit_vectors(self.rank))


def _integral(v: Sequence) -> tuple[int, list[int]]:
    fr = [Fraction(c) for c in v]
    d = lcm(*(c.denominator for c in fr)) if fr else 1
    return d, [int(c * d) for c in fr]


def _unit_vectors(n: int):
    for i in range(n):
        yield tuple(int(i == j) for j in range(n))


def sublattice(l: Lattice, labels: Sequence[str]) -> Lattice:
    """Restrict ``l`` to the basis vectors named by ``labels`` (in that order)."""
    idx = []
    for name in labels:
        try:
            idx.append(l.basis_labels.index(name))
        except ValueError:
            raise KeyError(f"unknown basis label {name!r}") from None
    return Lattice(tuple(labels), l.gram.submatrix(idx, idx))


@dataclass(frozen=True)
class DiscriminantGroup:
    """The finite group L*/L written as a product of cyclic groups.

    ``generator_lifts[k]`` is a vector of the dual lattice (coordinates in
    the lattice basis) whose class generates the cyclic factor of order
    ``cyclic_orders[k]``.  Group elements are integer tuples of the same
    length, read modulo the respective orders.
    """

    lattice: Lattice
    cyclic_orders: tuple[int, ...]
    generator_lifts: tuple[tuple[Fraction, ...], ...]
    _coordinate_map: IntMatrix  # rows of U @ G that read off coordinates

    @property
    def order(self) -> int:
        out = 1
        for d in self.cyclic_orders:
            out *= d
        return out

    @property
    def length(self) -> int:
        return len(self.cyclic_orders)

    def _check(self, x: Sequence[int]) -> tuple[int, ...]:
        if len(x) != self.length or any(
            not isinstance(c, int) or isinstance(c, bool) for c in x
        ):
            raise ValueError(
                f"group element must be {self.length} integers, got {tuple(x)!r}"
            )
        return tuple(c % d for c, d in zip(x, self.cyclic_orders))

    def lift(self, x: Sequence[int]) -> tuple[Fraction, ...]:
        x = self._check(x)
        n = self.lattice.rank
        out = [Fraction(0)] * n
        for c, g in zip(x, self.generator_lifts):
            if c:
                for i in range(n):
                    out[i] += c * g[i]
        return tuple(out)

    def coordinates(self, v: Sequence) -> tuple[int, ...]:
        """Group element represented by the dual vector ``v``."""
        v = [Fraction(c) for c in v]
        if not self.lattice.is_dual_vector(v):
            raise ValueError("vector is not in the dual lattice")
        out = []
        for k, d in enumerate(self.cyclic_orders):
            row = self._coordinate_map.row(k)
            val = sum((r * c for r, c in zip(row, v)), Fraction(0))
            assert val.denominator == 1
            out.append(int(val) % d)
        return tuple(out)

    def elements(self):
        for x in itertools.product(*(range(d) for d in self.cyclic_orders)):
            yield x


def discriminant_group(l: Lattice) -> DiscriminantGroup:
    """Compute L*/L from the Smith normal form of the Gram matrix.

    With ``U G V = D`` the columns of ``V`` scaled by ``1/d_k`` lie in the
    dual lattice and their classes split L*/L into cyclic factors.
    """
    det = l.det
    if det == 0:
        raise ValueError(
            f"degenerate Gram matrix (det 0) for lattice on {list(l.basis_labels)}"
        )
    snf = smith_normal_form(l.gram)
    ug = snf.left_transform @ l.gram
    orders, lifts, coord_rows = [], [], []
    for k, d in enumerate(snf.elementary_divisors):
        if d > 1:
            orders.append(d)
            lifts.append(tuple(Fraction(c, d) for c in snf.right_transform.col(k)))
            coord_rows.append(ug.row(k))
    n = l.rank
    cmap = IntMatrix.from_rows(coord_rows, cols=n) if coord_rows else IntMatrix.zeros(0, n)
    return DiscriminantGroup(l, tuple(orders), tuple(lifts), cmap)


@dataclass(frozen=True)
class DiscFormValue:
    bilinear: Fraction
    quadratic: Fraction | None = None


def disc_bilinear(l: Lattice, x: Sequence[int], y: Sequence[int],
                  group: DiscriminantGroup | None = None) -> Fraction:
    """b(x, y) in Q/Z, normalized to [0, 1)."""
    group = group or discriminant_group(l)
    return _frac_mod(l.pair(group.lift(x), group.lift(y)), 1)


def bilinear_mod_z(l: Lattice, v: Sequence, w: Sequence) -> Fraction:
    """b on explicit dual vectors, normalized to [0, 1)."""
    return _frac_mod(l.pair(v, w), 1)


def disc_form_value(l: Lattice, x: Sequence[int],
                    group: DiscriminantGroup | None = None) -> DiscFormValue:
    group = group or discriminant_group(l)
    v = group.lift(x)
    q = l.pair(v, v)
    return DiscFormValue(_frac_mod(q, 1), _frac_mod(q, 2) if l.is_even else None)


def p_elementary_and_length(l: Lattice, p: int) -> tuple[bool, int]:
    """(every cyclic order equals p, number of cyclic factors).

    The trivial group counts as p-elementary of length 0 for every p.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    group = discriminant_group(l)
    return all(d == p for d in group.cyclic_orders), group.length


@dataclass(frozen=True)
class OverlatticeCertificate:
    """An index-p integral overlattice L + Z v with v in the glue subgroup.

    ``glue_generators`` are coefficient tuples mod p over ``torsion_basis``
    (dual vectors of order p), normalized so the first nonzero entry is 1.
    ``basis`` lists the overlattice basis in coordinates of the old lattice
    and ``new_gram`` is the Gram matrix in that basis.
    """

    index: int
    glue_generators: tuple[tuple[int, ...], ...]
    torsion_basis: tuple[tuple[Fraction, ...], ...]
    basis: tuple[tuple[Fraction, ...], ...]
    new_gram: IntMatrix
    is_even: bool

    def glue_lift(self, k: int = 0) -> tuple[Fraction, ...]:
        coeffs = self.glue_generators[k]
        n = len(self.torsion_basis[0])
        return tuple(
            _frac_mod(sum((c * t[i] for c, t in zip(coeffs, self.torsion_basis)), Fraction(0)), 1)
            for i in range(n)
        )


def p_torsion_basis(l: Lattice, p: int) -> tuple[tuple[Fraction, ...], ...]:
    """Dual vectors whose classes form an F_p-basis of the p-torsion of L*/L."""
    group = discriminant_group(l)
    out = []
    for d, g in zip(group.cyclic_orders, group.generator_lifts):
        if d % p == 0:
            out.append(tuple((d // p) * c for c in g))
    return tuple(out)


def _overlattice_basis(l: Lattice, v: Sequence[Fraction]) -> tuple[int, list[list[int]]]:
    """Basis of L + Z v as integer rows over a common denominator."""
    n = l.rank
    den = lcm(*(Fraction(c).denominator for c in v))
    gens = [[den * int(i == j) for j in range(n)] for i in range(n)]
    gens.append([int(den * Fraction(c)) for c in v])
    return den, row_basis(gens)


def overlattice_gram(l: Lattice, den: int, rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], bool]:
    """Gram matrix of the rows (divided by ``den``) and whether it is integral.

    When it is not integral the returned entries are floors and meaningless.
    """
    n = l.rank
    e = l.gram.entries
    # G times each basis row, once
    gv = [[sum(e[i * n + j] * v[j] for j in range(n) if v[j]) for i in range(n)] for v in rows]
    d2 = den * den
    raw = [[sum(x * y for x, y in zip(u, w)) for w in gv] for u in rows]
    integral = all(x % d2 == 0 for r in raw for x in r)
    return [[x // d2 for x in r] for r in raw], integral


def enumerate_integral_overlattices(
    l: Lattice, p: int, torsion_basis: Sequence[Sequence] | None = None
) -> list[OverlatticeCertificate]:
    """All integral overlattices M with [M : L] = p.

    These correspond to order-p subgroups H of L*/L on which the bilinear
    form is integral.  A cyclic H = <h> only needs b(h, h) in Z, since
    b(h, jh) = j b(h, h).  ``torsion_basis`` may be given to express the
    glue in a preferred basis of the p-torsion; it defaults to one read
    off the Smith normal form.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    det = l.det
    if det == 0 or det % (p * p):
        return []
    if torsion_basis is None:
        torsion_basis = p_torsion_basis(l, p)
    else:
        torsion_basis = tuple(tuple(Fraction(c) for c in t) for t in torsion_basis)
        for t in torsion_basis:
            if not l.is_dual_vector(t):
                raise ValueError("torsion basis vector is not in the dual lattice")
            if not all((p * c).denominator == 1 for c in t):
                raise ValueError("torsion basis vector does not have order dividing p")
    k = len(torsion_basis)
    n = l.rank
    e = l.gram.entries
    scaled = [[int(p * c) for c in t] for t in torsion_basis]
    out = []
    for coeffs in itertools.product(range(p), repeat=k):
        nz = next((c for c in coeffs if c), 0)
        if nz != 1:
            # one representative per subgroup: first nonzero coefficient is 1
            continue
        # work with p*h, which is integral, and only build fractions for survivors
        ph = [sum(c * t[i] for c, t in zip(coeffs, scaled)) for i in range(n)]
        if all(x % p == 0 for x in ph):
            continue
        if sum(ph[i] * e[i * n + j] * ph[j] for i in range(n) if ph[i]
               for j in range(n) if ph[j]) % (p * p):
            continue
        h = tuple(Fraction(x, p) for x in ph)
        den, rows = _overlattice_basis(l, h)
        gram, integral = overlattice_gram(l, den, rows)
        assert integral, "bilinear integrality on a cyclic glue group implies an integral overlattice"
        new_gram = IntMatrix.from_rows(gram)
        basis = tuple(tuple(Fraction(x, den) for x in r) for r in rows)
        out.append(OverlatticeCertificate(
            index=p,
            glue_generators=(coeffs,),
            torsion_basis=tuple(torsion_basis),
            basis=basis,
            new_gram=new_gram,
            is_even=all(new_gram[i, i] % 2 == 0 for i in range(new_gram.rows)),
        ))
    return out
