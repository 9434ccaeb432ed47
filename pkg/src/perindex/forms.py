"""Linking pairings of closed oriented manifolds and symmetric trilinear forms over F_3."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from . import fp
from .cochain.cochains import Cocycle, cup, power, reduce_mod
from .cochain.cohomology import cohomology
from .cochain.complex import SimplicialComplex
from .cochain.operations import FundamentalClass, bockstein, evaluate
from .zmodule import FinAbGroup, PairingAdjoints, QmodZ, solve_in_group, torsion_dual_pairing_adjoints

P = 3


class NotDimension8(ValueError):
    pass


class SymmetryViolation(RuntimeError):
    pass


class WitnessNotFound(RuntimeError):
    pass


class InvalidForm(ValueError):
    pass


# ---------------------------------------------------------------------------
# Linking pairings


@dataclass
class LinkingPairing:
    k: int
    source: FinAbGroup          # TH^k
    target: FinAbGroup          # TH^{m-k+1}
    matrix: list[list[QmodZ]]   # values on canonical torsion generators
    adjoints: PairingAdjoints

    @property
    def is_perfect(self) -> bool:
        return self.adjoints.is_perfect

    def pair(self, x: Sequence[int], y: Sequence[int]) -> QmodZ:
        """b(x, y) for x, y in torsion-generator coordinates."""
        total = QmodZ(0)
        for i, a in enumerate(x):
            for j, b in enumerate(y):
                if a and b:
                    total = total + (a * b) * self.matrix[i][j]
        return total


def _torsion_part(H) -> list[int]:
    return [i for i, d in enumerate(H.group.invariant_factors) if d]


def bockstein_preimage(K: SimplicialComplex, degree: int, coords: Sequence[int], l: int) -> Cocycle:
    """A mod-l (degree-1)-cocycle x̃ with β^{Z/l}(x̃) equal to the given integral class."""
    Hl = cohomology(K, l, degree - 1)
    images = [bockstein(g).coords for g in Hl.gens()]
    H = cohomology(K, 0, degree).group
    sol = solve_in_group(H, images, H.reduce(coords))
    if sol is None:
        raise ValueError(f"class {list(coords)} is not in the image of the Z/{l} Bockstein")
    return Hl.representative(sol)


def linking_pairing(K: SimplicialComplex, fc: FundamentalClass, k: int) -> LinkingPairing:
    """b(x, y) = ι_l⟨x̃ ∪ y, [M]⟩ on TH^k × TH^{m-k+1}, with β(x̃) = x."""
    m = fc.top_degree
    Hx, Hy = cohomology(K, 0, k), cohomology(K, 0, m - k + 1)
    tx, ty = _torsion_part(Hx), _torsion_part(Hy)
    G = FinAbGroup(tuple(Hx.group.invariant_factors[i] for i in tx))
    H = FinAbGroup(tuple(Hy.group.invariant_factors[j] for j in ty))
    mat: list[list[QmodZ]] = []
    for i in tx:
        l = Hx.group.invariant_factors[i]
        unit = [int(t == i) for t in range(Hx.group.ngens)]
        xt = bockstein_preimage(K, k, unit, l)
        row = []
        for j in ty:
            y = reduce_mod(Hy.reps[j], l)
            row.append(QmodZ.iota(l, evaluate(cup(xt, y), fc)))
        mat.append(row)
    return LinkingPairing(k, G, H, mat, torsion_dual_pairing_adjoints(mat, G, H))


# ---------------------------------------------------------------------------
# Trilinear forms over F_3


def _key(i: int, j: int, k: int) -> tuple[int, int, int]:
    return tuple(sorted((i, j, k)))  # type: ignore[return-value]


@dataclass
class TrilinearForm:
    """Symmetric trilinear form on F_3^dim, stored on sorted index triples."""

    dim: int
    entries: dict[tuple[int, int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim < 0:
            raise InvalidForm("dimension must be >= 0")
        clean = {}
        for key, v in self.entries.items():
            if len(key) != 3 or any(not 0 <= t < self.dim for t in key):
                raise InvalidForm(f"index triple {key} out of range")
            if v % P:
                clean[_key(*key)] = v % P
        self.entries = clean

    def value(self, i: int, j: int, k: int) -> int:
        return self.entries.get(_key(i, j, k), 0)

    def __call__(self, u: Sequence[int], v: Sequence[int], w: Sequence[int]) -> int:
        su = [i for i, a in enumerate(u) if a % P]
        sv = [j for j, b in enumerate(v) if b % P]
        sw = [k for k, c in enumerate(w) if c % P]
        t = 0
        for i in su:
            for j in sv:
                for k in sw:
                    val = self.entries.get(_key(i, j, k))
                    if val:
                        t += u[i] * v[j] * w[k] * val
        return t % P

    def __eq__(self, other) -> bool:
        return isinstance(other, TrilinearForm) and self.dim == other.dim and self.entries == other.entries

    # structure ------------------------------------------------------------

    def adjoint1(self) -> list[list[int]]:
        """λ̂¹ as a (dim² x dim) matrix: row (j, k), column i holds λ(e_i, e_j, e_k)."""
        n = self.dim
        return [[self.value(i, j, k) for i in range(n)] for j in range(n) for k in range(n)]

    def restrict(self, basis: Sequence[Sequence[int]]) -> "TrilinearForm":
        """The form pulled back along the given vectors (as a new basis)."""
        ent = {}
        for a, b, c in itertools.combinations_with_replacement(range(len(basis)), 3):
            v = self(basis[a], basis[b], basis[c])
            if v:
                ent[(a, b, c)] = v
        return TrilinearForm(len(basis), ent)

    @classmethod
    def cube(cls, dim: int = 1) -> "TrilinearForm":
        """Σ x_i³ — the diagonal cube form."""
        return cls(dim, {(i, i, i): 1 for i in range(dim)})

    @classmethod
    def zero(cls, dim: int) -> "TrilinearForm":
        return cls(dim, {})

    def direct_sum(self, other: "TrilinearForm") -> "TrilinearForm":
        ent = dict(self.entries)
        s = self.dim
        for (i, j, k), v in other.entries.items():
            ent[(i + s, j + s, k + s)] = v
        return TrilinearForm(self.dim + other.dim, ent)

    # serialisation ----------------------------------------------------------

    def to_dict(self) -> dict:
        return {"dim": self.dim, "entries": [[i, j, k, v] for (i, j, k), v in sorted(self.entries.items())]}

    @classmethod
    def from_dict(cls, data: dict) -> "TrilinearForm":
        try:
            dim = data["dim"]
            raw = data.get("entries", [])
        except (TypeError, KeyError) as exc:
            raise InvalidForm("trilinear form JSON needs 'dim' and 'entries'") from exc
        if not isinstance(dim, int) or dim < 0:
            raise InvalidForm("'dim' must be a non-negative integer")
        ent = {}
        for row in raw:
            if not (isinstance(row, list) and len(row) == 4 and all(isinstance(t, int) for t in row)):
                raise InvalidForm(f"bad entry {row!r}")
            i, j, k, v = row
            if not (i <= j <= k):
                raise InvalidForm(f"entry indices must satisfy i <= j <= k: {row}")
            if v not in (0, 1, 2):
                raise InvalidForm(f"entry value must be in {{0,1,2}}: {row}")
            ent[(i, j, k)] = v
        return cls(dim, ent)

    @classmethod
    def load(cls, path: str | Path) -> "TrilinearForm":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def vectors(dim: int) -> Iterable[tuple[int, ...]]:
    return itertools.product(range(P), repeat=dim)


def radical(f: TrilinearForm) -> list[list[int]]:
    """Basis of {u : λ(u, v, w) = 0 for all v, w}."""
    if f.dim == 0:
        return []
    return fp.nullspace(f.adjoint1(), f.dim, P)


@dataclass
class Decomposition:
    radical: list[list[int]]
    complement: list[list[int]]
    reduced: TrilinearForm


def decompose(f: TrilinearForm) -> Decomposition:
    """Split off the radical; the form restricted to a complement is nondegenerate."""
    rad = radical(f)
    _, piv = fp.rref(rad, f.dim, P) if rad else ([], ())
    comp = [[int(i == c) for i in range(f.dim)] for c in range(f.dim) if c not in piv]
    return Decomposition(rad, comp, f.restrict(comp))


def characteristic_element(f: TrilinearForm) -> list[int]:
    """γ(λ)(e_i) = λ(e_i, e_i, e_i)."""
    return [f.value(i, i, i) for i in range(f.dim)]


def gamma(f: TrilinearForm, v: Sequence[int]) -> int:
    return f(v, v, v)


def second_adjoint_witness(f: TrilinearForm) -> tuple[list[int], list[int]]:
    """(u, v) with λ(u, v, ·) = γ(λ); the first hit in lexicographic order of u
    over the nondegenerate part."""
    if f.dim == 0:
        return [], []
    g = characteristic_element(f)
    if not any(g):
        return [0] * f.dim, [0] * f.dim
    dec = decompose(f)
    red = dec.reduced
    n = red.dim
    g_red = characteristic_element(red)
    basis = [[int(i == j) for i in range(n)] for j in range(n)]
    for u in vectors(n):
        # λ'(u, e_j, e_k) v_j summed over j must equal γ'(e_k)
        rows = [[red(u, basis[j], basis[k]) for j in range(n)] for k in range(n)]
        v = fp.solve(rows, g_red, P)
        if v is None:
            continue
        lift = lambda x: [sum(x[a] * dec.complement[a][i] for a in range(n)) % P for i in range(f.dim)]
        U, V = lift(list(u)), lift(v)
        if all(f(U, V, e) == g[i] for i, e in enumerate([[int(i == j) for i in range(f.dim)] for j in range(f.dim)])):
            return U, V
    raise WitnessNotFound("no (u, v) with λ(u, v, ·) = γ(λ)")


# ---------------------------------------------------------------------------
# Forms from 8-manifolds


def _v_basis(K: SimplicialComplex) -> list[Cocycle]:
    """Mod-3 reductions of the torsion generators of H^2 whose order is divisible by 3."""
    H2 = cohomology(K, 0, 2)
    out = []
    for i, d in enumerate(H2.group.invariant_factors):
        if d and d % P == 0:
            out.append(reduce_mod(H2.reps[i], P))
    return out


def trilinear_from_manifold(K: SimplicialComplex, fc: FundamentalClass, x: Cocycle) -> TrilinearForm:
    """λ^V_x(z1, z2, z3) = ⟨x z1 z2 z3, [M]⟩ mod 3 on V = TH^2(M) ⊗ Z/3.

    Integral torsion classes are reduced mod 3 before multiplying with x.
    """
    if fc.top_degree != 8:
        raise NotDimension8(f"expected an 8-manifold, got dimension {fc.top_degree}")
    if x.modulus != P or x.degree != 2:
        raise ValueError("x must be a mod-3 2-cocycle")
    zs = _v_basis(K)
    n = len(zs)
    xz = [cup(x, z) for z in zs]
    xzz = {(a, b): cup(xz[a], zs[b]) for a in range(n) for b in range(n)}
    vals = {}
    for a, b, c in itertools.product(range(n), repeat=3):
        vals[(a, b, c)] = evaluate(cup(xzz[(a, b)], zs[c]), fc) % P
    for (a, b, c), v in vals.items():
        if vals[_key(a, b, c)] != v:
            raise SymmetryViolation(f"λ({a},{b},{c}) differs from its permutation")
    return TrilinearForm(n, {k: v for k, v in vals.items() if k == _key(*k)})


@dataclass
class CubicIdentity:
    lhs: list[QmodZ]   # ι_3 γ(λ^V_x) on the basis of V
    rhs: list[QmodZ]   # z ↦ ι_3⟨x z³, [M]⟩ on the same basis

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def cubic_identity_check(K: SimplicialComplex, fc: FundamentalClass, x: Cocycle) -> CubicIdentity:
    form = trilinear_from_manifold(K, fc, x)
    lhs = [QmodZ.iota(P, g) for g in characteristic_element(form)]
    rhs = [QmodZ.iota(P, evaluate(cup(x, power(z, 3)), fc)) for z in _v_basis(K)]
    return CubicIdentity(lhs, rhs)
