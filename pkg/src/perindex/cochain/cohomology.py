"""Cohomology groups with explicit cocycle representatives.

One integral Smith form of δ^d (with column transforms V, V⁻¹) serves every
coefficient group: over Z/m a cochain x is a cocycle iff y = V⁻¹x has
d_i·y_i ≡ 0 (mod m) at each pivot, i.e. y_i ∈ (m/gcd(d_i, m))Z.  Rescaling those
coordinates gives a lattice basis of the cocycles, and a second Smith form of
the relations (coboundaries plus m-multiples) yields canonical generators.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Sequence

from ..zmodule import FinAbGroup, GroupElem, IntMatrix, SNF, _coker_from_snf, smith
from .cochains import Cochain, Cocycle, DegreeMismatch, ModulusMismatch, NotACocycle
from .complex import SimplicialComplex


def coboundary_snf(K: SimplicialComplex, d: int) -> SNF:
    memo = K.cache()
    key = ("snf", d)
    if key not in memo:
        memo[key] = smith(K.coboundary_matrix(d), cols=True)
    return memo[key]


@dataclass(frozen=True, eq=False)
class CohomClass:
    """An element of a cohomology group together with a cocycle representing it."""

    group: "CohomologyGroup"
    elem: GroupElem
    representative: Cocycle

    @property
    def degree(self) -> int:
        return self.group.degree

    @property
    def modulus(self) -> int:
        return self.group.modulus

    @property
    def coords(self) -> tuple[int, ...]:
        return self.elem.coords

    def is_zero(self) -> bool:
        return self.elem.is_zero()

    def order(self) -> int | float:
        return self.elem.order()

    def __eq__(self, other) -> bool:
        if not isinstance(other, CohomClass):
            return NotImplemented
        return self.group is other.group and self.elem == other.elem

    def __hash__(self) -> int:
        return hash((id(self.group), self.elem.coords))

    def __add__(self, other: "CohomClass") -> "CohomClass":
        return self.group.element(self.elem + other.elem)

    def __neg__(self) -> "CohomClass":
        return self.group.element(-self.elem)

    def __sub__(self, other: "CohomClass") -> "CohomClass":
        return self + (-other)

    def __rmul__(self, k: int) -> "CohomClass":
        return self.group.element(k * self.elem)

    def __repr__(self) -> str:
        return f"<H^{self.degree}(;{self.group.coeff_name}) class {list(self.coords)} in {self.group.group}>"


@dataclass(eq=False)
class CohomologyGroup:
    complex: SimplicialComplex
    degree: int
    modulus: int
    group: FinAbGroup
    reps: list[Cocycle]
    _kept: list[tuple[int, int]] = field(repr=False)   # (V-column, scale)
    _vinv: list[dict[int, int]] = field(repr=False)    # rows of V⁻¹ for kept columns

    def __iter__(self) -> Iterator:
        # allows ``group, reps = cohomology(...)``
        yield self.group
        yield self.reps

    @property
    def coeff_name(self) -> str:
        return "Z" if self.modulus == 0 else f"Z/{self.modulus}"

    def class_of(self, z: Cochain) -> CohomClass:
        if z.complex is not self.complex:
            raise ValueError("cochain lives on a different complex")
        if z.degree != self.degree:
            raise DegreeMismatch(f"degree-{z.degree} cochain in H^{self.degree}")
        if z.modulus != self.modulus:
            raise ModulusMismatch(f"mod-{z.modulus} cochain in {self.coeff_name} cohomology")
        K, d, m = self.complex, self.degree, self.modulus
        if d > K.dim:
            return self.element(self.group.zero())
        snf = coboundary_snf(K, d)
        vals = z.values
        # cocycle test: pivot coordinates of V⁻¹x must be killed by d_i mod m
        for r, c, dd in snf.pivots:
            y = sum(v * vals[t] for t, v in snf.Vinv_rows[c].items())
            if (dd * y) % m if m else y:
                raise NotACocycle(f"degree-{d} cochain is not a cocycle mod {m}")
        lat = []
        for (c, s), row in zip(self._kept, self._vinv):
            y = sum(v * vals[t] for t, v in row.items())
            assert y % s == 0
            lat.append(y // s)
        coords = self.group.canonical_coords(lat) if self.group.ngens else ()
        rep = z if isinstance(z, Cocycle) else Cocycle._trusted(K, d, z.values, m)
        return CohomClass(self, self.group.elem(coords), rep)

    def representative(self, coords: Sequence[int] | GroupElem) -> Cocycle:
        c = coords.coords if isinstance(coords, GroupElem) else tuple(coords)
        K, d, m = self.complex, self.degree, self.modulus
        vals = [0] * K.count(d)
        for k, rep in zip(c, self.reps):
            if k:
                for j, v in enumerate(rep.values):
                    if v:
                        vals[j] += k * v
        return Cocycle._trusted(K, d, vals, m)

    def element(self, coords: Sequence[int] | GroupElem) -> CohomClass:
        e = coords if isinstance(coords, GroupElem) else self.group.elem(coords)
        return CohomClass(self, e, self.representative(e))

    def zero(self) -> CohomClass:
        return self.element(self.group.zero())

    def gens(self) -> list[CohomClass]:
        return [self.element(g) for g in self.group.gens()]

    def __repr__(self) -> str:
        return f"H^{self.degree}({self.complex.name or 'K'}; {self.coeff_name}) = {self.group}"


def cohomology(K: SimplicialComplex, modulus: int, degree: int) -> CohomologyGroup:
    """H^degree(K; Z/modulus) (modulus 0 means Z), cached on the complex."""
    if degree < 0:
        raise ValueError("degree must be >= 0")
    if modulus < 0:
        raise ValueError("modulus must be >= 0")
    memo = K.cache()
    key = ("H", degree, modulus)
    if key not in memo:
        memo[key] = _compute(K, modulus, degree)
    return memo[key]


def _compute(K: SimplicialComplex, m: int, d: int) -> CohomologyGroup:
    if d > K.dim:
        return CohomologyGroup(K, d, m, FinAbGroup(()), [], [], [])
    snf = coboundary_snf(K, d)
    n = K.count(d)
    piv = {c: dd for _, c, dd in snf.pivots}
    kept: list[tuple[int, int]] = []
    for c in range(n):
        if c in piv:
            if m == 0:
                continue
            g = gcd(piv[c], m)
            if g == 1:
                continue  # coordinate lies in mZ and dies against the m-relation
            kept.append((c, m // g))
        else:
            kept.append((c, 1))
    vinv = [snf.Vinv_rows[c] for c, _ in kept]

    # relations: coboundaries of elementary (d-1)-cochains, plus m-multiples
    ent: dict[tuple[int, int], int] = {}
    ncol = 0
    if d >= 1:
        prev_rows = K.coboundary_matrix(d - 1).row_dicts()  # row t: δ^{d-1}[t, :]
        for k, ((c, s), row) in enumerate(zip(kept, vinv)):
            acc: dict[int, int] = {}
            for t, v in row.items():
                for j, w in prev_rows[t].items():
                    acc[j] = acc.get(j, 0) + v * w
            for j, v in acc.items():
                if v:
                    assert v % s == 0
                    ent[(k, j)] = v // s
        ncol = K.count(d - 1)
    if m:
        for k, (c, s) in enumerate(kept):
            ent[(k, ncol + k)] = m // s
        ncol += len(kept)
    rel = IntMatrix(len(kept), ncol, ent)
    rs = smith(rel, rows=True)
    grp = _coker_from_snf(rs, len(kept))

    reps = []
    vcols = snf.V_cols
    for g in grp.from_canonical or ():
        vals = [0] * n
        for k, a in enumerate(g):
            if a:
                c, s = kept[k]
                for t, v in vcols[c].items():
                    vals[t] += a * s * v
        reps.append(Cocycle._trusted(K, d, vals, m))
    return CohomologyGroup(K, d, m, grp, reps, kept, vinv)


def cohomology_groups(K: SimplicialComplex, modulus: int = 0) -> list[FinAbGroup]:
    return [cohomology(K, modulus, d).group for d in range(K.dim + 1)]
