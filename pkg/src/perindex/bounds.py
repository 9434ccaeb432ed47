"""Index bounds, sharp values for the universal spaces K_n, and an admissibility
filter for period vectors."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .fp import NotPrime


class NoTheorem(ValueError):
    """No theorem-backed answer exists for the requested context."""


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def epsilon(p: int, n: int) -> int:
    """ε_p(n) = gcd(p, n) for a prime p."""
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n < 1:
        raise ValueError("n must be positive")
    return math.gcd(p, n)


KINDS = ("complex", "orientable_manifold")


@dataclass(frozen=True)
class BoundContext:
    dimension: int
    space_kind: str = "complex"
    spin_c: bool | None = None   # informational only

    def __post_init__(self):
        if self.space_kind not in KINDS:
            raise ValueError(f"space_kind must be one of {KINDS}")


def sharp_kn_index(n: int, dim: int) -> int:
    """ind(ζ_n) on the dim-skeleton of K_n (dim 6 or 8)."""
    if n < 1:
        raise ValueError("n must be positive")
    e2, e3 = epsilon(2, n), epsilon(3, n)
    if dim == 6:
        return e2 * n ** 2
    if dim == 8:
        return e3 * n ** 3 if n % 4 == 0 else e2 * e3 * n ** 3
    raise NoTheorem(f"no sharp value is known in dimension {dim}")


def index_bound(n: int, ctx: BoundContext) -> int:
    """B with ind(α) | B for every α of period n in the given context."""
    if n < 1:
        raise ValueError("n must be positive")
    if ctx.dimension == 8 and ctx.space_kind == "orientable_manifold":
        return 2 * n ** 3 if n % 4 == 2 else n ** 3
    if ctx.dimension in (6, 8) and ctx.space_kind == "complex":
        return sharp_kn_index(n, ctx.dimension)
    raise NoTheorem(f"no bound for a {ctx.space_kind} of dimension {ctx.dimension}")


def tpic_threshold(n: int, dim: int) -> int:
    """per^(d-1) for a 2d-dimensional space."""
    if dim % 2:
        raise ValueError("dimension must be even")
    return n ** (dim // 2 - 1)


def tpic_verdict(n: int, ind: int, dim: int) -> str:
    """'holds' when ind | n^(dim/2 - 1), else 'violated'."""
    return "holds" if tpic_threshold(n, dim) % ind == 0 else "violated"


@dataclass(frozen=True)
class RegistryEntry:
    vector: tuple[int, ...]
    realization: str
    properties: dict = field(default_factory=dict)

    @property
    def index(self) -> int:
        return math.prod(self.vector)


def registry() -> list[RegistryEntry]:
    """Period vectors realised on closed 8-manifolds."""
    return [
        RegistryEntry(
            (2, 4, 2),
            "non-spin^c closed orientable 8-manifold obtained by surgery",
            {"spin_c": False, "parallelisable": False, "tpic_violating": True, "dimension": 8},
        ),
        RegistryEntry(
            (2, 4, 1),
            "closed connected parallelisable 8-manifold",
            {"spin_c": True, "parallelisable": True, "tpic_violating": False, "dimension": 8},
        ),
    ]


def registry_lookup(vector: Sequence[int]) -> RegistryEntry | None:
    v = tuple(vector)
    return next((e for e in registry() if e.vector == v), None)


@dataclass(frozen=True)
class Verdict:
    status: str                     # admissible | rejected | unknown
    reasons: tuple[str, ...] = ()
    registry: RegistryEntry | None = None

    @property
    def ok(self) -> bool:
        return self.status != "rejected"


def admissible(vector: Sequence[int], n: int | None = None) -> Verdict:
    """Check a dim-8 period vector (a0, a1, a2) against the known constraints."""
    v = tuple(int(a) for a in vector)
    if len(v) != 3:
        return Verdict("unknown", (f"only 3-entry (dimension 8) vectors are checked, got {len(v)}",))
    if any(a < 1 for a in v):
        return Verdict("rejected", ("entries must be positive",))
    a0, a1, a2 = v
    if n is not None and n != a0:
        return Verdict("rejected", (f"entry 0 must equal the period {n}",))
    reasons = []
    if (a0, a1) == (2, 2) and 2 % a2:
        return Verdict("rejected", (f"period 2 with ord(G1) = 2 forces ord(G2) | 2, got {a2}",))
    sharp = sharp_kn_index(a0, 8)
    if sharp % math.prod(v):
        return Verdict("rejected", (f"index {math.prod(v)} does not divide the universal index {sharp}",))
    reasons.append(f"index {math.prod(v)} divides the universal index {sharp}")
    if (a0, a1) == (2, 2):
        reasons.append("period 2 with ord(G1) = 2: ord(G2) | 2 satisfied")
    hit = registry_lookup(v)
    if hit is not None:
        reasons.append("realised: " + hit.realization)
        return Verdict("admissible", tuple(reasons), hit)
    return Verdict("admissible", tuple(reasons))
