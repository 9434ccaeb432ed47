"""Bocksteins, Steenrod squares, integral Sq³, the Pontrjagin square, evaluation
against fundamental classes and mod-2 Wu classes."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .. import fp
from .cochains import (Cochain, Cocycle, DegreeMismatch, IncompatibleModuli, coboundary, cup, cup_i,
                       power, reduce_mod)
from .cohomology import CohomClass, cohomology
from .complex import SimplicialComplex


class OddModulus(ValueError):
    pass


class NotPseudomanifold(ValueError):
    pass


class NotOrientable(ValueError):
    pass


class DualityFailure(ValueError):
    pass


def _rep(z: Cocycle | CohomClass) -> Cocycle:
    return z.representative if isinstance(z, CohomClass) else z


def _class(c: Cochain) -> CohomClass:
    return cohomology(c.complex, c.modulus, c.degree).class_of(c)


# -- Bocksteins ---------------------------------------------------------------


def bockstein_cochain(z: Cochain) -> Cochain:
    """δ(ẑ)/n for the lift ẑ with values in [0, n)."""
    n = z.modulus
    if n < 2:
        raise IncompatibleModuli("Bockstein needs a modulus n >= 2")
    d = coboundary(z.lift())
    if any(v % n for v in d.values):
        raise ValueError("input is not a cocycle mod n")
    return Cochain(z.complex, d.degree, tuple(v // n for v in d.values), 0)


def bockstein(z: Cocycle | CohomClass) -> CohomClass:
    """β^{Z/n}: H^d(K; Z/n) -> H^{d+1}(K; Z)."""
    return _class(bockstein_cochain(_rep(z)))


def bockstein_qz(K: SimplicialComplex, degree: int, values: Sequence[Fraction | int]) -> CohomClass:
    """β^{Q/Z} of a Q/Z-valued cocycle, lifted to [0, 1)."""
    lift = [Fraction(v) % 1 for v in values]
    if len(lift) != K.count(degree):
        raise ValueError("wrong number of values")
    out = []
    for fs in (K.faces(degree + 1) if degree + 1 <= K.dim else []):
        t = Fraction(0)
        for i, f in enumerate(fs):
            t += -lift[f] if i % 2 else lift[f]
        if t.denominator != 1:
            raise ValueError("values do not form a Q/Z cocycle")
        out.append(int(t))
    return _class(Cochain(K, degree + 1, tuple(out), 0))


def bockstein_ladder_check(z: Cocycle, k: int) -> tuple[CohomClass, CohomClass]:
    """Both sides of β^{Z/3}(ρ_3 x) = k·β^{Z/3k}(x)."""
    if z.modulus != 3 * k:
        raise IncompatibleModuli(f"expected a mod-{3 * k} cocycle")
    lhs = bockstein(reduce_mod(z, 3))
    rhs = k * bockstein(z)
    return lhs, rhs


# -- Steenrod squares ---------------------------------------------------------


def steenrod_sq_cochain(z: Cochain, r: int) -> Cochain:
    if z.modulus != 2:
        raise IncompatibleModuli("Steenrod squares act on mod-2 cochains")
    if r < 0:
        raise ValueError("r must be >= 0")
    d = z.degree
    if r > d:
        return Cochain.zero(z.complex, d + r, 2)
    return cup_i(z, z, d - r)


def steenrod_sq(z: Cocycle | CohomClass, r: int) -> CohomClass:
    """Sq^r[z] = [z ∪_{deg z - r} z] mod 2."""
    return _class(steenrod_sq_cochain(_rep(z), r))


def sq3_integral(z: Cocycle | CohomClass) -> CohomClass:
    """Sq³_Z = β^{Z/2} ∘ Sq² ∘ ρ_2 on integral classes."""
    zz = _rep(z)
    if zz.modulus != 0:
        raise IncompatibleModuli("Sq3_Z acts on integral classes")
    return bockstein(Cocycle._trusted(zz.complex, zz.degree + 2, steenrod_sq_cochain(reduce_mod(zz, 2), 2).values, 2))


def pontrjagin_square_cochain(z: Cochain) -> Cochain:
    n = z.modulus
    if n % 2 or n == 0:
        raise OddModulus(f"Pontrjagin square needs an even modulus, got {n}")
    if z.degree != 2:
        raise DegreeMismatch("Pontrjagin square is implemented in degree 2")
    zh = z.lift()
    sq = cup(zh, zh)
    corr = cup_i(zh, coboundary(zh), 1)
    return Cochain(z.complex, 4, tuple(a + b for a, b in zip(sq.values, corr.values)), 2 * n)


def pontrjagin_square(z: Cocycle | CohomClass) -> CohomClass:
    """P_2: H^2(K; Z/n) -> H^4(K; Z/2n), n even; class of ẑ∪ẑ + ẑ∪_1 δẑ."""
    return _class(pontrjagin_square_cochain(_rep(z)))


@dataclass(frozen=True)
class CubeMultiple:
    value: CohomClass
    derivation: str  # "beta3_rho3_cube" when 3 | n, "n_times_n_torsion" otherwise


def cube_and_Rn_multiple(z: Cocycle | CohomClass) -> CubeMultiple:
    """n·R_n(z) for a degree-2 mod-n class.

    For 3 | n this is β^{Z/3}(ρ_3(z³)); for 3 ∤ n it is n·β^{Z/n}(z³), which is 0.
    """
    zz = _rep(z)
    n = zz.modulus
    if zz.degree != 2:
        raise DegreeMismatch("expects a degree-2 class")
    if n < 2:
        raise IncompatibleModuli("expects a mod-n class")
    cube = power(zz, 3)
    if n % 3 == 0:
        return CubeMultiple(bockstein(reduce_mod(cube, 3)), "beta3_rho3_cube")
    zero = cohomology(zz.complex, 0, 7).zero()
    return CubeMultiple(zero, "n_times_n_torsion")


# -- fundamental classes ------------------------------------------------------


@dataclass(frozen=True)
class FundamentalClass:
    complex: SimplicialComplex
    top_degree: int
    orientation: tuple[int, ...]   # parallel to complex.simplices[top_degree]

    def sign(self, facet: Sequence[int]) -> int:
        return self.orientation[self.complex.index[self.top_degree][tuple(sorted(facet))]]

    def is_cycle(self) -> bool:
        K, d = self.complex, self.top_degree
        acc = [0] * K.count(d - 1)
        for s, fs in enumerate(K.faces(d)):
            for i, f in enumerate(fs):
                acc[f] += self.orientation[s] * (-1 if i % 2 else 1)
        return not any(acc)


def _pseudomanifold_check(K: SimplicialComplex) -> dict[int, list[tuple[int, int]]]:
    if not K.facets:
        raise NotPseudomanifold("empty complex")
    if not K.is_pure():
        raise NotPseudomanifold("complex is not pure")
    d = K.dim
    if d == 0:
        if K.count(0) != 1:
            raise NotPseudomanifold("0-dimensional and not a point")
        return {}
    ridges: dict[int, list[tuple[int, int]]] = {}
    for s, fs in enumerate(K.faces(d)):
        for i, f in enumerate(fs):
            ridges.setdefault(f, []).append((s, i))
    for r in range(K.count(d - 1)):
        if len(ridges.get(r, ())) != 2:
            raise NotPseudomanifold(f"ridge {K.simplices[d - 1][r]} lies in {len(ridges.get(r, ()))} facets")
    return ridges


def fundamental_class(K: SimplicialComplex) -> FundamentalClass:
    """Coherent orientation of a closed, connected, orientable pseudomanifold."""
    ridges = _pseudomanifold_check(K)
    d = K.dim
    nf = K.count(d)
    orient = [0] * nf
    orient[0] = 1
    queue = deque([0])
    faces = K.faces(d)
    while queue:
        s = queue.popleft()
        for i, f in enumerate(faces[s]):
            (a, ia), (b, ib) = ridges[f]
            t, it = (b, ib) if a == s else (a, ia)
            # induced signs on the shared ridge must cancel
            want = -orient[s] * (-1) ** (i + it)
            if orient[t] == 0:
                orient[t] = want
                queue.append(t)
            elif orient[t] != want:
                raise NotOrientable(f"{K.name or 'complex'} is not orientable")
    if 0 in orient:
        raise NotPseudomanifold("complex is not strongly connected")
    return FundamentalClass(K, d, tuple(orient))


def mod2_fundamental_class(K: SimplicialComplex) -> FundamentalClass:
    """The mod-2 fundamental class (all facets with coefficient 1)."""
    _pseudomanifold_check(K)
    d = K.dim
    seen = {0}
    queue = deque([0])
    adj: dict[int, list[int]] = {}
    for s, fs in enumerate(K.faces(d)):
        for f in fs:
            adj.setdefault(f, []).append(s)
    faces = K.faces(d)
    while queue:
        s = queue.popleft()
        for f in faces[s]:
            for t in adj[f]:
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
    if len(seen) != K.count(d):
        raise NotPseudomanifold("complex is not strongly connected")
    return FundamentalClass(K, d, (1,) * K.count(d))


def evaluate(z: Cochain | CohomClass, fc: FundamentalClass) -> int:
    """⟨z, [K]⟩ = Σ orientation(σ)·z(σ), reduced mod the coefficient modulus."""
    c = _rep(z) if isinstance(z, CohomClass) else z
    if c.degree != fc.top_degree:
        raise DegreeMismatch(f"degree {c.degree} cochain against a degree {fc.top_degree} class")
    t = sum(o * v for o, v in zip(fc.orientation, c.values))
    return t % c.modulus if c.modulus else t


def wu_class_mod2(K: SimplicialComplex, r: int, fc: FundamentalClass | None = None) -> CohomClass:
    """v_r with ⟨v_r ∪ u, [K]⟩ = ⟨Sq^r u, [K]⟩ for all u ∈ H^{dim-r}(K; Z/2)."""
    if fc is None:
        fc = mod2_fundamental_class(K)
    d = fc.top_degree
    if r < 0 or r > d:
        raise ValueError(f"r must lie in [0, {d}]")
    Hr = cohomology(K, 2, r)
    Hu = cohomology(K, 2, d - r)
    if Hr.group.ngens != Hu.group.ngens:
        raise DualityFailure(f"dim H^{r} != dim H^{d - r} mod 2")
    us = Hu.reps
    A = [[evaluate(cup(b, u), fc) % 2 for b in Hr.reps] for u in us]
    rhs = [evaluate(steenrod_sq_cochain(u, r), fc) % 2 for u in us]
    if A and fp.rank(A, (len(A), len(A[0])), 2) != len(A):
        raise DualityFailure("cup pairing is degenerate mod 2")
    x = fp.solve(A, rhs, 2)
    if x is None:
        raise DualityFailure("Wu system is inconsistent")
    return Hr.element(x)
