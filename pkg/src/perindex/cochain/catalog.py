"""Named complexes shipped with the package, addressable as ``builtin:NAME``."""
from __future__ import annotations

from functools import lru_cache

from .complex import (SimplicialComplex, boundary_of_simplex, lens_space, product, rp2, rp4, sphere_product,
                      suspension)


def torsion5_complex() -> SimplicialComplex:
    """Σ(L(5,1) × S¹): five-dimensional, with H³ ≅ Z/5, H² ≅ Z and torsion-free H⁵."""
    K = suspension(product(lens_space(5), boundary_of_simplex(2)))
    K.name = "S(L(5,1)xS1)"
    return K


@lru_cache(maxsize=32)
def builtin(name: str) -> SimplicialComplex:
    """Resolve a catalog name.

    sphere:k, S3, RP2, RP4, lens:p[:q], SaxSb (e.g. S2xS6) and torsion5.
    """
    parts = name.split(":")
    head = parts[0].lower()
    try:
        if head == "sphere":
            return _named(boundary_of_simplex(int(parts[1]) + 1), f"S{parts[1]}")
        if head == "s3":
            return _named(boundary_of_simplex(4), "S3")
        if head == "rp2":
            return rp2()
        if head == "rp4":
            return rp4()
        if head == "lens":
            q = int(parts[2]) if len(parts) > 2 else 1
            return lens_space(int(parts[1]), q)
        if head == "torsion5":
            return torsion5_complex()
        if head.startswith("s") and "xs" in head:
            a, b = head[1:].split("xs")
            return _named(sphere_product(int(a), int(b)), f"S{a}xS{b}")
    except (IndexError, ValueError) as exc:
        raise KeyError(f"bad catalog name {name!r}: {exc}") from exc
    raise KeyError(f"unknown catalog name {name!r}")


def _named(K: SimplicialComplex, name: str) -> SimplicialComplex:
    K.name = name
    return K


NAMES = ("sphere:k", "S3", "RP2", "RP4", "lens:p[:q]", "SaxSb", "torsion5")
