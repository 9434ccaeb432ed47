"""Cochains, coboundary, and the cup / cup-i products."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .complex import SimplicialComplex


class ModulusMismatch(ValueError):
    pass


class NotACocycle(ValueError):
    pass


class IncompatibleModuli(ValueError):
    pass


class DegreeMismatch(ValueError):
    pass


def _norm(values: Sequence[int], m: int) -> tuple[int, ...]:
    if m:
        return tuple(int(v) % m for v in values)
    return tuple(int(v) for v in values)


@dataclass(frozen=True, eq=False)
class Cochain:
    """A simplicial cochain with coefficients in Z (modulus 0) or Z/m.

    ``values[k]`` is the value on the k-th simplex of ``complex.simplices[degree]``.
    Mod-m values are kept as residues in [0, m).
    """

    complex: SimplicialComplex
    degree: int
    values: tuple[int, ...]
    modulus: int = 0

    def __post_init__(self):
        if self.modulus < 0:
            raise ValueError("modulus must be >= 0")
        n = self.complex.count(self.degree)
        if len(self.values) != n:
            raise ValueError(f"degree-{self.degree} cochain needs {n} values, got {len(self.values)}")
        object.__setattr__(self, "values", _norm(self.values, self.modulus))

    # construction helpers
    @classmethod
    def zero(cls, K: SimplicialComplex, degree: int, modulus: int = 0) -> "Cochain":
        return cls(K, degree, (0,) * K.count(degree), modulus)

    @classmethod
    def from_dict(cls, K: SimplicialComplex, degree: int, vals: dict, modulus: int = 0) -> "Cochain":
        out = [0] * K.count(degree)
        idx = K.index[degree] if 0 <= degree <= K.dim else {}
        for s, v in vals.items():
            out[idx[tuple(sorted(s))]] = v
        return cls(K, degree, tuple(out), modulus)

    def value(self, simplex: Sequence[int]) -> int:
        return self.values[self.complex.index[self.degree][tuple(sorted(simplex))]]

    def is_zero(self) -> bool:
        return not any(self.values)

    def _check(self, other: "Cochain") -> None:
        if other.complex is not self.complex or other.degree != self.degree:
            raise DegreeMismatch("cochains live on different complexes or degrees")
        if other.modulus != self.modulus:
            raise ModulusMismatch(f"moduli {self.modulus} and {other.modulus} differ")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        vals = [a + b for a, b in zip(self.values, other.values)]
        if isinstance(self, Cocycle) and isinstance(other, Cocycle):
            return Cocycle._trusted(self.complex, self.degree, vals, self.modulus)
        return Cochain(self.complex, self.degree, tuple(vals), self.modulus)

    def __neg__(self) -> "Cochain":
        return self.scale(-1)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, k: int) -> "Cochain":
        vals = [k * v for v in self.values]
        if isinstance(self, Cocycle):
            return Cocycle._trusted(self.complex, self.degree, vals, self.modulus)
        return Cochain(self.complex, self.degree, tuple(vals), self.modulus)

    def __rmul__(self, k: int) -> "Cochain":
        return self.scale(k)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Cochain) and other.complex is self.complex and other.degree == self.degree
                and other.modulus == self.modulus and other.values == self.values)

    def __hash__(self) -> int:
        return hash((id(self.complex), self.degree, self.modulus, self.values))

    def lift(self) -> "Cochain":
        """Integral cochain with values in [0, m)."""
        return Cochain(self.complex, self.degree, self.values, 0)

    def coboundary(self) -> "Cochain":
        return coboundary(self)

    def is_cocycle(self) -> bool:
        return coboundary(self).is_zero()


class Cocycle(Cochain):
    """A cochain whose coboundary vanishes (checked on construction)."""

    def __post_init__(self):
        super().__post_init__()
        if not coboundary(self).is_zero():
            raise NotACocycle(f"degree-{self.degree} cochain is not a cocycle mod {self.modulus}")

    @classmethod
    def _trusted(cls, K, degree, values, modulus) -> "Cocycle":
        obj = object.__new__(cls)
        object.__setattr__(obj, "complex", K)
        object.__setattr__(obj, "degree", degree)
        object.__setattr__(obj, "values", _norm(values, modulus))
        object.__setattr__(obj, "modulus", modulus)
        return obj

    @classmethod
    def of(cls, c: Cochain) -> "Cocycle":
        return cls(c.complex, c.degree, c.values, c.modulus)

    @classmethod
    def unit(cls, K: SimplicialComplex, modulus: int = 0) -> "Cocycle":
        """The constant 0-cocycle 1."""
        return cls._trusted(K, 0, [1] * K.count(0), modulus)


def coboundary(c: Cochain) -> Cochain:
    K, d = c.complex, c.degree
    if d + 1 > K.dim or d < 0:
        return Cochain.zero(K, d + 1, c.modulus)
    vals = c.values
    out = []
    for fs in K.faces(d + 1):
        t = 0
        sgn = 1
        for f in fs:
            t += sgn * vals[f]
            sgn = -sgn
        out.append(t)
    return Cochain(K, d + 1, tuple(out), c.modulus)


def _result_modulus(a: Cochain, b: Cochain) -> int:
    if a.complex is not b.complex:
        raise ModulusMismatch("cochains live on different complexes")
    if a.modulus == b.modulus:
        return a.modulus
    if a.modulus == 0:
        return b.modulus
    if b.modulus == 0:
        return a.modulus
    raise ModulusMismatch(f"cannot multiply mod {a.modulus} by mod {b.modulus}")


@lru_cache(maxsize=None)
def cup_i_pattern(p: int, q: int, i: int) -> tuple[tuple[int, tuple[int, ...], tuple[int, ...]], ...]:
    """Terms (sign, left positions, right positions) of a ∪_i b on a standard simplex.

    For x = [0..n], n = p+q-i, sum over U ⊆ {0..n} with |U| = n-i.  Writing
    U = {u_1 < ... < u_{n-i}}, u_j goes to U0 when u_j + j is even and to U1
    otherwise; the left factor sees x with U0 removed and the right factor x with
    U1 removed.  With sign (-1)^(ΣU0 + pq + q(q+1)/2 + i(i+1)/2) the products obey
    Steenrod's relation

        δ(a ∪_i b) = (-1)^i δa ∪_i b + (-1)^(i+p) a ∪_i δb
                     - (-1)^i a ∪_{i-1} b - (-1)^(pq) b ∪_{i-1} a

    and ∪_0 is the Alexander-Whitney cup product.
    """
    n = p + q - i
    if i < 0 or n < 0 or i > min(p, q):
        return ()
    base = p * q + q * (q + 1) // 2 + i * (i + 1) // 2
    terms = []
    for U in itertools.combinations(range(n + 1), n - i):
        u0 = [u for j, u in enumerate(U, 1) if (u + j) % 2 == 0]
        u1 = [u for j, u in enumerate(U, 1) if (u + j) % 2 == 1]
        if len(u0) != n - p or len(u1) != n - q:
            continue
        s0, s1 = set(u0), set(u1)
        left = tuple(k for k in range(n + 1) if k not in s0)
        right = tuple(k for k in range(n + 1) if k not in s1)
        sign = -1 if (sum(u0) + base) % 2 else 1
        terms.append((sign, left, right))
    return tuple(terms)


def cup_i(a: Cochain, b: Cochain, i: int) -> Cochain:
    """Steenrod's ∪_i product (see :func:`cup_i_pattern` for the sign convention)."""
    m = _result_modulus(a, b)
    K = a.complex
    p, q = a.degree, b.degree
    n = p + q - i
    if i < 0:
        raise ValueError("i must be >= 0")
    if n < 0:
        raise ValueError(f"∪_{i} of degrees {p} and {q} has negative degree")
    if n > K.dim or p > K.dim or q > K.dim:
        return Cochain.zero(K, n, m)
    pat = cup_i_pattern(p, q, i)
    ip, iq = K.index[p], K.index[q]
    av, bv = a.values, b.values
    out = []
    for s in K.simplices[n]:
        t = 0
        for sign, left, right in pat:
            x = av[ip[tuple(s[k] for k in left)]]
            if x:
                y = bv[iq[tuple(s[k] for k in right)]]
                if y:
                    t += sign * x * y
        out.append(t)
    if isinstance(a, Cocycle) and isinstance(b, Cocycle) and i == 0:
        return Cocycle._trusted(K, n, out, m)
    return Cochain(K, n, tuple(out), m)


def cup(a: Cochain, b: Cochain) -> Cochain:
    """Alexander-Whitney product: (a ∪ b)(v0..vn) = a(v0..vp) b(vp..vn)."""
    m = _result_modulus(a, b)
    K = a.complex
    p, q = a.degree, b.degree
    n = p + q
    if n > K.dim:
        return Cochain.zero(K, n, m)
    ip, iq = K.index[p], K.index[q]
    av, bv = a.values, b.values
    out = []
    for s in K.simplices[n]:
        x = av[ip[s[: p + 1]]]
        out.append(x * bv[iq[s[p:]]] if x else 0)
    if isinstance(a, Cocycle) and isinstance(b, Cocycle):
        return Cocycle._trusted(K, n, out, m)
    return Cochain(K, n, tuple(out), m)


def power(z: Cochain, k: int) -> Cochain:
    out = z
    for _ in range(k - 1):
        out = cup(out, z)
    return out


# -- coefficient ladder --------------------------------------------------------


def reduce_mod(z: Cochain, m: int) -> Cochain:
    """ρ_m: reduction, defined when m divides the source modulus (or source is Z)."""
    if m <= 0:
        raise IncompatibleModuli("reduction target must be a positive modulus")
    if z.modulus and z.modulus % m:
        raise IncompatibleModuli(f"cannot reduce mod {z.modulus} to mod {m}")
    cls = Cocycle._trusted if isinstance(z, Cocycle) else (lambda K, d, v, mm: Cochain(K, d, tuple(v), mm))
    return cls(z.complex, z.degree, z.values, m)


def multiply(z: Cochain, k: int, target: int | None = None) -> Cochain:
    """×k on values, landing in ``target`` (default: same modulus).

    With source Z/m and target Z/(km) this is the inclusion Z/m -> Z/km.
    """
    tgt = z.modulus if target is None else target
    if z.modulus and tgt and (k * z.modulus) % tgt:
        raise IncompatibleModuli(f"×{k} is not defined from Z/{z.modulus} to Z/{tgt}")
    if z.modulus and not tgt:
        raise IncompatibleModuli(f"×{k} from Z/{z.modulus} to Z is not well defined")
    vals = [k * v for v in z.values]
    if isinstance(z, Cocycle):
        return Cocycle._trusted(z.complex, z.degree, vals, tgt)
    return Cochain(z.complex, z.degree, tuple(vals), tgt)


def include_qz(z: Cochain) -> list[Fraction]:
    """ι_l: Z/l -> Q/Z, value a ↦ a/l (returned as fractions in [0, 1))."""
    if not z.modulus:
        raise IncompatibleModuli("ι needs a finite modulus")
    return [Fraction(v, z.modulus) for v in z.values]


def coefficient_map(z: Cochain, target: int, kind: str, k: int = 1):
    """Dispatch for the coefficient ladder: 'reduce', 'multiply' or 'include'.

    'include' returns Q/Z values as fractions (target is ignored).
    """
    if kind == "reduce":
        return reduce_mod(z, target)
    if kind == "multiply":
        return multiply(z, k, target)
    if kind == "include":
        return include_qz(z)
    raise ValueError(f"unknown coefficient map {kind!r}")
