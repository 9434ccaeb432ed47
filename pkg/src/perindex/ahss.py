"""The (0,0)-column of the twisted Atiyah-Hirzebruch spectral sequence.

Two backends share the same page logic:

* simplicial complexes, where d3(y) = Sq³_Z(y) + (-1)^s y·α is evaluated on
  cochains, and
* symbolic models: graded groups with cup, Sq³_Z and Bockstein tables, plus
  optional d5/d7 rules.  ``kn_model(n)`` encodes the universal space K_n.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, Union

from . import bounds
from .cochain.cochains import Cocycle, cup
from .cochain.cohomology import CohomClass, cohomology
from .cochain.complex import SimplicialComplex
from .cochain.operations import bockstein, pontrjagin_square_cochain, sq3_integral
from .forms import bockstein_preimage
from .zmodule import FinAbGroup, Subquotient, element_order, hom_kernel, subquotient


class NotTorsion(ValueError):
    pass


class ModelInvalid(ValueError):
    pass


class BocksteinMismatch(ValueError):
    pass


Coords = tuple[int, ...]


# ---------------------------------------------------------------------------
# Symbolic models


@dataclass
class SymbolicModel:
    """Integral cohomology of a space, described by tables.

    Degrees absent from ``groups`` are unknown (not zero); ``top`` is the
    dimension of the modelled skeleton.  Elements are canonical coordinate
    tuples in the group of their degree.
    """

    name: str
    top: int
    groups: dict[int, FinAbGroup]
    names: dict[int, list[str]]
    alpha: Coords
    cup: dict[tuple[str, str], Coords] = field(default_factory=dict)
    sq3: dict[str, Coords] = field(default_factory=dict)
    mod_classes: dict[str, tuple[int, int]] = field(default_factory=dict)   # name -> (degree, modulus)
    bockstein: dict[str, Coords] = field(default_factory=dict)             # name -> class in degree+1
    pontrjagin: dict[str, str] = field(default_factory=dict)               # mod-n class -> its P2 (mod 2n)
    d5: tuple[int, Coords] | None = None          # d5^{0,0}(source) = target in H^5
    d7: tuple[int, Coords] | None = None          # d7^{0,0}(source) = target in H^7
    d5_from_h2: dict[str, Coords] | None = None    # d5^{2,-2} on H^2 generators
    n: int | None = None
    kind: str = "table"

    # -- element arithmetic ----------------------------------------------

    def group(self, d: int) -> FinAbGroup | None:
        if d < 0 or d > self.top:
            return FinAbGroup(())
        return self.groups.get(d)

    def known(self, d: int) -> bool:
        return self.group(d) is not None

    def _need(self, d: int) -> FinAbGroup:
        g = self.group(d)
        if g is None:
            raise ModelInvalid(f"{self.name}: H^{d} is not modelled")
        return g

    def reduce(self, d: int, coords: Sequence[int]) -> Coords:
        return self._need(d).reduce(coords)

    def zero(self, d: int) -> Coords:
        return (0,) * self._need(d).ngens

    def gen_names(self, d: int) -> list[str]:
        return self.names.get(d, [])

    def unit(self) -> Coords:
        return (1,)

    def add(self, d: int, a: Sequence[int], b: Sequence[int]) -> Coords:
        return self.reduce(d, [x + y for x, y in zip(a, b)])

    def scale(self, d: int, k: int, a: Sequence[int]) -> Coords:
        return self.reduce(d, [k * x for x in a])

    def _gen_product(self, p: int, i: int, q: int, j: int) -> Coords:
        if p == 0:
            return tuple(int(t == j) for t in range(self._need(q).ngens))
        if q == 0:
            return tuple(int(t == i) for t in range(self._need(p).ngens))
        a, b = self.names[p][i], self.names[q][j]
        if (a, b) in self.cup:
            return self.reduce(p + q, self.cup[(a, b)])
        if (b, a) in self.cup:
            return self.scale(p + q, (-1) ** (p * q), self.cup[(b, a)])
        if p + q > self.top or (self.group(p + q) is not None and not self.group(p + q).ngens):
            return self.zero(p + q) if p + q <= self.top else ()
        raise ModelInvalid(f"{self.name}: product {a}·{b} is not tabulated")

    def mul(self, p: int, a: Sequence[int], q: int, b: Sequence[int]) -> Coords:
        if p + q > self.top:
            return ()
        out = list(self.zero(p + q))
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    g = self._gen_product(p, i, q, j)
                    for t, v in enumerate(g):
                        out[t] += x * y * v
        return self.reduce(p + q, out)

    def sq3_of(self, d: int, a: Sequence[int]) -> Coords:
        if d + 3 > self.top:
            return ()
        out = list(self.zero(d + 3))
        for i, x in enumerate(a):
            if x:
                name = self.names[d][i] if d > 0 else None
                if d == 0:
                    continue  # Sq3 vanishes in degree 0
                if name not in self.sq3:
                    if not self._need(d + 3).ngens:
                        continue
                    raise ModelInvalid(f"{self.name}: Sq3_Z({name}) is not tabulated")
                for t, v in enumerate(self.sq3[name]):
                    out[t] += x * v
        return self.reduce(d + 3, out)

    # -- validation ----------------------------------------------------------

    def validate(self) -> "SymbolicModel":
        for d, g in self.groups.items():
            if len(self.names.get(d, [])) != g.ngens:
                raise ModelInvalid(f"H^{d}: {g.ngens} generators but names {self.names.get(d)}")
        if self.group(3) is None or len(self.alpha) != self.group(3).ngens:
            raise ModelInvalid("alpha must be given in H^3 coordinates")
        if self.group(0) is None or self.group(0).invariant_factors != (0,):
            raise ModelInvalid("H^0 must be Z (connected space)")

        def check(d, coords, what):
            g = self.group(d)
            if g is None:
                raise ModelInvalid(f"{what} lands in unmodelled H^{d}")
            if len(coords) != g.ngens:
                raise ModelInvalid(f"{what}: expected {g.ngens} coordinates in H^{d}, got {list(coords)}")

        name_deg = {nm: d for d, ns in self.names.items() for nm in ns}
        for (a, b), v in self.cup.items():
            if a not in name_deg or b not in name_deg:
                raise ModelInvalid(f"cup table mentions unknown generator in {a}·{b}")
            check(name_deg[a] + name_deg[b], v, f"{a}·{b}")
        for a, v in self.sq3.items():
            check(name_deg[a] + 3, v, f"Sq3({a})")
        for m, (d, mod) in self.mod_classes.items():
            if m in self.bockstein:
                check(d + 1, self.bockstein[m], f"β({m})")
        for m, t in self.pontrjagin.items():
            if m not in self.mod_classes or t not in self.mod_classes:
                raise ModelInvalid(f"Pontrjagin table entry {m} -> {t} names unknown classes")
            (d, mod), (d2, mod2) = self.mod_classes[m], self.mod_classes[t]
            if d2 != 2 * d or mod2 != 2 * mod:
                raise ModelInvalid(f"P2({m}) must live in degree {2 * d} mod {2 * mod}")
        if self.d5 is not None:
            check(5, self.d5[1], "d5 target")
        if self.d7 is not None:
            check(7, self.d7[1], "d7 target")
        if self.kind == "kn":
            self._validate_kn()
        return self

    def _validate_kn(self) -> None:
        n = self.n
        if n is None or n < 2:
            raise ModelInvalid("K_n model needs n >= 2")
        e2, e3 = bounds.epsilon(2, n), bounds.epsilon(3, n)
        expect = {0: (0,), 3: (n,), 5: (e2 * n,), 7: (e3 * n,)}
        for d, inv in expect.items():
            if d > self.top:
                continue
            g = self.group(d)
            got = tuple(sorted(g.invariant_factors)) if g is not None else None
            want = tuple(x for x in inv if x != 1)
            if got != want:
                raise ModelInvalid(f"K_{n}: H^{d} should be {want}, model has {got}")
        if element_order(self.groups[3].elem(self.alpha)) != n:
            raise ModelInvalid(f"K_{n}: alpha must generate H^3")
        # ε2 Q = β(ζ'^2), ε3 R = β(ζ'^3), β(ζ') = α
        need = {"zeta'": (3, self.alpha), "zeta'^2": (5, self.scale(5, e2, self._gen(5))),
                "zeta'^3": (7, self.scale(7, e3, self._gen(7)) if self.top >= 7 else ())}
        for m, (d, val) in need.items():
            if d > self.top:
                continue
            if m not in self.bockstein or self.reduce(d, self.bockstein[m]) != val:
                raise ModelInvalid(f"K_{n}: Bockstein relation for {m} fails")

    def _gen(self, d: int) -> Coords:
        g = self._need(d)
        return tuple(int(i == 0) for i in range(g.ngens))

    # -- serialisation -------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "name": self.name, "top": self.top, "kind": self.kind, "n": self.n,
            "groups": {str(d): list(g.invariant_factors) for d, g in sorted(self.groups.items())},
            "generators": {str(d): ns for d, ns in sorted(self.names.items())},
            "alpha": list(self.alpha),
            "cup": [[a, b, list(v)] for (a, b), v in sorted(self.cup.items())],
            "sq3": {a: list(v) for a, v in sorted(self.sq3.items())},
            "mod_classes": {m: [d, mod] for m, (d, mod) in sorted(self.mod_classes.items())},
            "bockstein": {m: list(v) for m, v in sorted(self.bockstein.items())},
            "pontrjagin": dict(sorted(self.pontrjagin.items())),
            "d5": None if self.d5 is None else [self.d5[0], list(self.d5[1])],
            "d7": None if self.d7 is None else [self.d7[0], list(self.d7[1])],
            "d5_from_h2": None if self.d5_from_h2 is None else {a: list(v) for a, v in self.d5_from_h2.items()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SymbolicModel":
        try:
            groups = {int(d): FinAbGroup(tuple(int(x) for x in v)) for d, v in data["groups"].items()}
            names = {int(d): list(v) for d, v in data["generators"].items()}
            m = cls(
                name=data.get("name", "model"), top=int(data["top"]), groups=groups, names=names,
                alpha=tuple(data["alpha"]),
                cup={(a, b): tuple(v) for a, b, v in data.get("cup", [])},
                sq3={a: tuple(v) for a, v in data.get("sq3", {}).items()},
                mod_classes={k: (int(v[0]), int(v[1])) for k, v in data.get("mod_classes", {}).items()},
                bockstein={k: tuple(v) for k, v in data.get("bockstein", {}).items()},
                pontrjagin=dict(data.get("pontrjagin", {})),
                d5=None if data.get("d5") is None else (int(data["d5"][0]), tuple(data["d5"][1])),
                d7=None if data.get("d7") is None else (int(data["d7"][0]), tuple(data["d7"][1])),
                d5_from_h2=None if data.get("d5_from_h2") is None else
                {k: tuple(v) for k, v in data["d5_from_h2"].items()},
                n=data.get("n"), kind=data.get("kind", "table"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelInvalid(f"malformed model: {exc}") from exc
        return m.validate()

    @classmethod
    def load(cls, path: str | Path) -> "SymbolicModel":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def kn_model(n: int, top: int = 8) -> SymbolicModel:
    """The top-skeleton of K_n = K(Z/n, 2) with α = ζ_n.

    Groups in degrees 0..5 and 7 are tabulated; H^6 and H^8 are left unmodelled.
    d5(n) = Q_n and d7(ε2(n)n²) = R_n, or 2R_n (an element of order ε3(n)n/2)
    when 4 | n; the units in front are taken to be 1.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if top not in (6, 8):
        raise ValueError("K_n models are provided for the 6- and 8-skeleton")
    e2, e3 = bounds.epsilon(2, n), bounds.epsilon(3, n)
    groups = {0: FinAbGroup((0,)), 1: FinAbGroup(()), 2: FinAbGroup(()), 3: FinAbGroup((n,)),
              4: FinAbGroup(()), 5: FinAbGroup((e2 * n,))}
    names = {0: ["1"], 1: [], 2: [], 3: ["zeta"], 4: [], 5: ["Q"]}
    mod = {"zeta'": (2, n), "zeta'^2": (4, n)}
    bock = {"zeta'": (1,), "zeta'^2": (e2,)}
    pont = {}
    if n % 2 == 0:
        mod["P2(zeta')"] = (4, 2 * n)
        pont["zeta'"] = "P2(zeta')"
        bock["P2(zeta')"] = (1,)     # β^{Z/2n} P2(ζ') = Q
    d7 = None
    if top == 8:
        groups[7] = FinAbGroup((e3 * n,))
        names[7] = ["R"]
        mod["zeta'^3"] = (6, n)
        bock["zeta'^3"] = (e3,)
        d7 = (e2 * n * n, (2,) if n % 4 == 0 else (1,))
    model = SymbolicModel(
        name=f"K_{n}^({top})", top=top, groups=groups, names=names, alpha=(1,),
        mod_classes=mod, bockstein=bock, pontrjagin=pont,
        d5=(n, (1,)), d7=d7, d5_from_h2={}, n=n, kind="kn",
    )
    return model.validate()


def model_from_complex(K: SimplicialComplex, alpha: Sequence[int], name: str | None = None) -> SymbolicModel:
    """Tabulate the integral cohomology ring, Sq³_Z and α of a complex."""
    top = K.dim
    groups, names, reps = {}, {}, {}
    for d in range(top + 1):
        H = cohomology(K, 0, d)
        groups[d] = H.group
        names[d] = [f"x{d}_{i}" for i in range(H.group.ngens)]
        reps[d] = H.reps
    cupt, sq3t = {}, {}
    for p in range(1, top + 1):
        for q in range(p, top + 1 - p):
            for i, a in enumerate(reps[p]):
                for j, b in enumerate(reps[q]):
                    cupt[(names[p][i], names[q][j])] = cohomology(K, 0, p + q).class_of(cup(a, b)).coords
    for d in range(1, top - 2):
        for i, a in enumerate(reps[d]):
            sq3t[names[d][i]] = sq3_integral(a).coords
    return SymbolicModel(name or f"model({K.name})", top, groups, names, tuple(alpha), cupt, sq3t).validate()


# ---------------------------------------------------------------------------
# Pages

Source = Union[SimplicialComplex, SymbolicModel]


@dataclass
class TwistedPage:
    """A page of the twisted AHSS; only the t = 0 row is stored (Bott periodicity
    makes every even row identical and odd rows vanish)."""

    r: int
    source: Source
    alpha: Coords
    cells: dict[int, FinAbGroup | Subquotient | None]
    differentials: dict[int, list[Coords]] = field(default_factory=dict)
    e00_generator: int = 1     # E_r^{0,0} = e00_generator · Z

    def cell(self, s: int, t: int = 0):
        if t % 2:
            return FinAbGroup(())
        c = self.cells.get(s, FinAbGroup(()))
        return c.group if isinstance(c, Subquotient) else c


def _dim(source: Source) -> int:
    return source.dim if isinstance(source, SimplicialComplex) else source.top


def _group(source: Source, d: int) -> FinAbGroup | None:
    if isinstance(source, SimplicialComplex):
        return cohomology(source, 0, d).group
    return source.group(d)


def _alpha_coords(source: Source, alpha) -> Coords:
    if isinstance(alpha, CohomClass):
        return alpha.coords
    if alpha is None:
        return source.alpha if isinstance(source, SymbolicModel) else ()
    return tuple(alpha)


def check_torsion(source: Source, alpha: Coords) -> int:
    g = _group(source, 3)
    if g is None:
        raise ModelInvalid("H^3 is not modelled")
    o = element_order(g.elem(alpha))
    if o == math.inf:
        raise NotTorsion("α has infinite order")
    return int(o)


def e2_page(source: Source, alpha=None) -> TwistedPage:
    a = _alpha_coords(source, alpha)
    check_torsion(source, a)
    cells = {s: _group(source, s) for s in range(_dim(source) + 1)}
    return TwistedPage(2, source, a, cells)


def d3(page: TwistedPage, s: int, y: Sequence[int]) -> Coords:
    """d3(y) = Sq³_Z(y) + (-1)^s y·α for y ∈ H^s (row t = 0)."""
    src = page.source
    if s + 3 > _dim(src):
        return ()
    sign = -1 if s % 2 else 1
    if isinstance(src, SymbolicModel):
        sq = src.sq3_of(s, y)
        ya = src.mul(s, y, 3, page.alpha)
        return src.add(s + 3, sq, src.scale(s + 3, sign, ya))
    Hs = cohomology(src, 0, s)
    Ht = cohomology(src, 0, s + 3)
    yrep = Hs.representative(y)
    arep = cohomology(src, 0, 3).representative(page.alpha)
    out = sq3_integral(yrep) if s > 0 else Ht.zero()
    out = out + sign * Ht.class_of(cup(yrep, arep))
    return out.coords


def untwisted_d3(source: Source, s: int, y: Sequence[int]) -> Coords:
    """Sq³_Z, the d3 of the untwisted sequence."""
    if s + 3 > _dim(source):
        return ()
    if isinstance(source, SymbolicModel):
        return source.sq3_of(s, y)
    if s == 0:
        return cohomology(source, 0, 3).zero().coords
    return sq3_integral(cohomology(source, 0, s).representative(y)).coords


def turn_page_d3(page: TwistedPage) -> TwistedPage:
    """E5 = E4 = homology of d3 (even pages carry no differentials)."""
    src = page.source
    top = _dim(src)
    images: dict[int, list[Coords]] = {}
    for s in range(top + 1):
        g = page.cell(s)
        if g is None or s + 3 > top:
            continue
        if _group(src, s + 3) is None:
            continue
        images[s] = [d3(page, s, e.coords) for e in g.gens()]
    cells: dict[int, FinAbGroup | Subquotient | None] = {}
    e00 = 1
    for s in range(top + 1):
        G = _group(src, s)
        if G is None:
            cells[s] = None
            continue
        if s in images:
            T = _group(src, s + 3)
            ker = hom_kernel(G, T, images[s]) if G.ngens else []
        elif s + 3 > top:
            ker = [g.coords for g in G.gens()]
        else:
            cells[s] = None  # outgoing d3 lands in an unmodelled degree
            continue
        inc = images.get(s - 3, []) if s >= 3 else []
        cells[s] = subquotient(G, ker, inc)
        if s == 0:
            e00 = abs(ker[0][0]) if ker else 0
    return TwistedPage(5, src, page.alpha, cells, images, e00)


# ---------------------------------------------------------------------------
# G1 and indeterminacy


@dataclass
class G1Result:
    value: Coords          # β^{Z/ε2(n)n}(P2 ξ) in H^5
    quotient: Subquotient  # H^5 / αH^2 (restricted to the subgroup generated by the value)
    order: int
    lam: int = 1


def _alpha_h2(source: Source, alpha: Coords) -> list[Coords]:
    g2 = _group(source, 2)
    if g2 is None or not g2.ngens:
        return []
    if isinstance(source, SymbolicModel):
        return [source.mul(3, alpha, 2, e.coords) for e in g2.gens()]
    H2 = cohomology(source, 0, 2)
    a = cohomology(source, 0, 3).representative(alpha)
    H5 = cohomology(source, 0, 5)
    return [H5.class_of(cup(a, r)).coords for r in H2.reps]


def g1(source: Source, alpha=None, xi: Cocycle | str | None = None, lam: int = 1) -> G1Result:
    """G1(α) = [λ β^{Z/ε2(n)n}(P2(ξ))] ∈ H^5 / αH^2, where β^{Z/n}(ξ) = α."""
    a = _alpha_coords(source, alpha)
    n = check_torsion(source, a)
    e2 = bounds.epsilon(2, n)
    H5 = _group(source, 5)
    if H5 is None:
        raise ModelInvalid("H^5 is not modelled")
    if isinstance(source, SymbolicModel):
        name = xi if isinstance(xi, str) else "zeta'"
        if name not in source.mod_classes:
            raise BocksteinMismatch(f"no mod-n class {name!r} in the model")
        if source.reduce(3, source.bockstein.get(name, ())) != source.reduce(3, a):
            raise BocksteinMismatch(f"β({name}) != α")
        if n % 2:
            target = f"{name}^2"
            if target not in source.bockstein:
                raise ModelInvalid(f"β of {target} is not tabulated")
            val = source.bockstein[target]
        else:
            p = source.pontrjagin.get(name)
            if p is None or p not in source.bockstein:
                raise ModelInvalid(f"β^{{Z/2n}} P2({name}) is not tabulated")
            val = source.bockstein[p]
        val = source.scale(5, lam, val)
    else:
        K = source
        if K.dim < 5:
            val = ()
        else:
            if xi is None:
                xi = bockstein_preimage(K, 3, a, n)
            if not isinstance(xi, Cocycle) or xi.modulus != n or xi.degree != 2:
                raise BocksteinMismatch(f"ξ must be a mod-{n} 2-cocycle")
            if bockstein(xi).coords != cohomology(K, 0, 3).group.reduce(a):
                raise BocksteinMismatch("β(ξ) != α")
            if n == 1:
                val = cohomology(K, 0, 5).zero().coords
            else:
                if n % 2:
                    sq = cup(xi, xi)
                else:
                    sq = pontrjagin_square_cochain(xi)   # mod 2n = ε2(n)n
                val = bockstein(Cocycle._trusted(K, 4, sq.values, e2 * n)).coords
            val = H5.reduce([lam * v for v in val])
    if not H5.ngens:
        val = ()
    rel = _alpha_h2(source, a)
    q = subquotient(H5, [val] + [r for r in rel], rel) if H5.ngens else subquotient(H5, [], [])
    order = 1
    if H5.ngens:
        order = element_order(q.class_of(val))
        if order == math.inf:
            raise NotTorsion("G1 has infinite order")
    return G1Result(tuple(val), q, int(order), lam)


@dataclass
class Indeterminacy:
    generators: list[Coords]
    partial: bool            # True when the d5^{2,-2} summand could not be included
    group: Subquotient | None


def indeterminacy_I2(source: Source, alpha=None) -> Indeterminacy:
    """I2 = (Sq³_Z + ∪α) H^4 + im d5^{2,-2}(H^2) inside H^7."""
    a = _alpha_coords(source, alpha)
    H7 = _group(source, 7)
    if H7 is None:
        raise ModelInvalid("H^7 is not modelled")
    gens: list[Coords] = []
    if _dim(source) >= 7 and H7.ngens:
        H4 = _group(source, 4)
        page = TwistedPage(2, source, a, {})
        for e in (H4.gens() if H4 is not None else []):
            gens.append(d3(page, 4, e.coords))
    partial = True
    if isinstance(source, SymbolicModel) and source.d5_from_h2 is not None:
        partial = False
        gens.extend(H7.reduce(v) for v in source.d5_from_h2.values())
    gens = [g for g in gens if any(g)]
    grp = subquotient(H7, gens, []) if H7.ngens else None
    return Indeterminacy(gens, partial, grp)


# ---------------------------------------------------------------------------
# Period vectors


@dataclass
class PeriodVector:
    entries: list[int]
    provenance: list[str]     # exact | theorem-bound | registry
    notes: list[str] = field(default_factory=list)

    @property
    def index(self) -> int:
        return math.prod(self.entries)

    @property
    def exact(self) -> bool:
        return all(p == "exact" for p in self.provenance)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        if isinstance(other, PeriodVector):
            return self.entries == other.entries
        try:
            return list(self.entries) == list(other)
        except TypeError:
            return NotImplemented

    def to_dict(self) -> dict:
        return {"entries": self.entries, "provenance": self.provenance, "index": self.index,
                "index_exact": self.exact, "notes": self.notes}


@dataclass(frozen=True)
class DifferentialRule:
    page: int
    source: int            # the multiple of 1 in E_r^{0,0} the rule applies to
    target: Coords         # value in H^{r}
    target_order: int


def kn_differentials(model: SymbolicModel) -> tuple[DifferentialRule, DifferentialRule | None]:
    if model.kind != "kn":
        raise ModelInvalid("kn_differentials needs a K_n model")
    model.validate()
    if model.d5 is None:
        raise ModelInvalid("model has no d5 rule")
    r5 = DifferentialRule(5, model.d5[0], model.d5[1], int(element_order(model.groups[5].elem(model.d5[1]))))
    r7 = None
    if model.d7 is not None:
        r7 = DifferentialRule(7, model.d7[0], model.d7[1], int(element_order(model.groups[7].elem(model.d7[1]))))
    return r5, r7


def _entries_for(dim: int) -> int:
    return max(1, (dim + 1) // 2 - 1)


def period_vector(source: Source, alpha=None, dim: int | None = None, xi=None,
                  kind: str = "complex") -> PeriodVector:
    """(ord G0, ord G1, ...) with per-entry provenance."""
    d = _dim(source) if dim is None else dim
    if d < 0:
        raise ValueError("dimension must be >= 0")
    a = _alpha_coords(source, alpha)
    a0 = check_torsion(source, a)
    count = _entries_for(d)
    entries, prov, notes = [a0], ["exact"], []
    if count >= 2:
        if isinstance(source, SymbolicModel) and source.d5 is not None:
            src, tgt = source.d5
            if src != a0:
                raise ModelInvalid(f"d5 rule is stated on {src}, but E5^(0,0) = {a0}Z")
            q = subquotient(source.groups[5], [tgt] + _alpha_h2(source, a), _alpha_h2(source, a))
            a1 = int(element_order(q.class_of(tgt)))
        else:
            a1 = g1(source, a, xi).order
        entries.append(a1)
        prov.append("exact")
    if count >= 3:
        a01 = entries[0] * entries[1]
        if isinstance(source, SymbolicModel) and source.d7 is not None:
            src, tgt = source.d7
            if src != a01:
                raise ModelInvalid(f"d7 rule is stated on {src}, but E7^(0,0) = {a01}Z")
            I2 = indeterminacy_I2(source, a)
            H7 = source.groups[7]
            q = subquotient(H7, [tgt] + I2.generators, I2.generators)
            entries.append(int(element_order(q.class_of(tgt))))
            prov.append("exact")
        else:
            H7 = _group(source, 7)
            if H7 is not None and not H7.ngens and d <= 8:
                entries.append(1)
                prov.append("exact")
                notes.append("H^7 = 0, so d7 vanishes")
            else:
                try:
                    B = bounds.index_bound(a0, bounds.BoundContext(8, kind))
                except bounds.NoTheorem:
                    B = None
                if B is None or B % a01:
                    raise bounds.NoTheorem("no theorem bounds the third period here")
                bound = B // a01
                entries.append(bound)
                prov.append("exact" if bound == 1 else "theorem-bound")
                notes.append(f"third period divides {bound} (index bound {B})")
        for _ in range(3, count):
            entries.append(1)
            prov.append("theorem-bound")
            notes.append("periods beyond the third are not computed")
    return PeriodVector(entries, prov, notes)
