"""Finite ordered simplicial complexes and the shipped constructions."""
from __future__ import annotations

import itertools
import json
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

from ..zmodule import IntMatrix


class InvalidComplex(ValueError):
    pass


class SimplicialComplex:
    """A finite simplicial complex given by its facets.

    Simplices are stored as sorted vertex tuples; the vertex order is the
    ordering used by every cochain-level formula (cup, cup-i, Bockstein lifts).
    """

    def __init__(self, facets: Iterable[Sequence[int]], name: str = "", num_vertices: int | None = None):
        fs = []
        for f in facets:
            t = tuple(sorted(int(v) for v in f))
            if not t:
                raise InvalidComplex("empty facet")
            if len(set(t)) != len(t):
                raise InvalidComplex(f"facet {list(f)} repeats a vertex")
            if t[0] < 0:
                raise InvalidComplex(f"facet {list(f)} has a negative vertex index")
            fs.append(t)
        fs = sorted(set(fs), key=lambda t: (len(t), t))
        # drop facets contained in larger ones
        keep = []
        sets = [frozenset(t) for t in fs]
        by_vertex: dict[int, list[int]] = {}
        for k, t in enumerate(fs):
            for v in t:
                by_vertex.setdefault(v, []).append(k)
        for k, t in enumerate(fs):
            cands = by_vertex[t[0]]
            if any(len(fs[j]) > len(t) and sets[k] <= sets[j] for j in cands):
                continue
            keep.append(t)
        self.facets: list[tuple[int, ...]] = sorted(keep)
        self.name = name
        top = max((v for f in self.facets for v in f), default=-1)
        self.num_vertices = max(top + 1, num_vertices or 0)

    # -- face lattice -------------------------------------------------------

    @cached_property
    def simplices(self) -> list[list[tuple[int, ...]]]:
        if not self.facets:
            return []
        dim = max(len(f) for f in self.facets) - 1
        layers: list[set[tuple[int, ...]]] = [set() for _ in range(dim + 1)]
        for f in self.facets:
            for k in range(1, len(f) + 1):
                layers[k - 1].update(itertools.combinations(f, k))
        return [sorted(s) for s in layers]

    @cached_property
    def index(self) -> list[dict[tuple[int, ...], int]]:
        return [{s: i for i, s in enumerate(layer)} for layer in self.simplices]

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def count(self, d: int) -> int:
        if d < 0 or d > self.dim:
            return 0
        return len(self.simplices[d])

    @property
    def f_vector(self) -> list[int]:
        return [len(s) for s in self.simplices]

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.f_vector))

    @cached_property
    def _faces(self) -> list[list[tuple[int, ...]]]:
        """faces[d][s][i] = index of the face of d-simplex s omitting vertex i."""
        out: list[list[tuple[int, ...]]] = [[]]
        for d in range(1, self.dim + 1):
            idx = self.index[d - 1]
            out.append([tuple(idx[s[:i] + s[i + 1:]] for i in range(d + 1)) for s in self.simplices[d]])
        return out

    def faces(self, d: int) -> list[tuple[int, ...]]:
        return self._faces[d]

    def coboundary_matrix(self, d: int) -> IntMatrix:
        """delta^d : C^d -> C^{d+1}; rows are (d+1)-simplices, columns d-simplices."""
        nrows, ncols = self.count(d + 1), self.count(d)
        if d < 0 or d + 1 > self.dim:
            return IntMatrix(nrows, ncols)
        ent = {}
        for s, fs in enumerate(self._faces[d + 1]):
            for i, f in enumerate(fs):
                ent[(s, f)] = -1 if i % 2 else 1
        return IntMatrix(nrows, ncols, ent)

    def boundary_matrix(self, d: int) -> IntMatrix:
        """partial_d : C_d -> C_{d-1}."""
        return self.coboundary_matrix(d - 1).transpose()

    # -- misc -----------------------------------------------------------------

    def cache(self) -> dict:
        """Per-complex memo for derived algebraic data (SNFs, cohomology)."""
        c = self.__dict__.get("_memo")
        if c is None:
            c = self.__dict__["_memo"] = {}
        return c

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<SimplicialComplex{label} dim={self.dim} f={self.f_vector}>"

    # -- serialisation --------------------------------------------------------

    def to_dict(self, orientation: Sequence[int] | None = None) -> dict:
        out: dict = {"name": self.name, "facets": [list(f) for f in self.facets]}
        if orientation is not None:
            out["orientation"] = [int(o) for o in orientation]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "SimplicialComplex":
        if not isinstance(data, dict) or "facets" not in data:
            raise InvalidComplex("complex JSON needs a 'facets' list")
        facets = data["facets"]
        if not isinstance(facets, list):
            raise InvalidComplex("'facets' must be a list")
        for k, f in enumerate(facets):
            if not isinstance(f, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in f):
                raise InvalidComplex(f"facet #{k} is not a list of integers: {f!r}")
        orient = data.get("orientation")
        if orient is not None:
            if len(orient) != len(facets) or any(o not in (1, -1) for o in orient):
                raise InvalidComplex("'orientation' must be a list of +-1 parallel to 'facets'")
        return cls(facets, name=str(data.get("name", "")))


def load_complex(path: str | Path) -> SimplicialComplex:
    with open(path) as fh:
        return SimplicialComplex.from_dict(json.load(fh))


def save_complex(K: SimplicialComplex, path: str | Path, orientation: Sequence[int] | None = None) -> None:
    with open(path, "w") as fh:
        json.dump(K.to_dict(orientation), fh)


# ---------------------------------------------------------------------------
# Constructions


def boundary_of_simplex(k: int) -> SimplicialComplex:
    """The boundary of the k-simplex, a (k-1)-sphere."""
    verts = range(k + 1)
    return SimplicialComplex(itertools.combinations(verts, k), name=f"boundary_simplex_{k}")


def rp2() -> SimplicialComplex:
    """The 6-vertex real projective plane."""
    facets = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
              (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]
    return SimplicialComplex(facets, name="RP2")


def cone(K: SimplicialComplex) -> SimplicialComplex:
    apex = K.num_vertices
    return SimplicialComplex([f + (apex,) for f in K.facets], name=f"C({K.name})")


def suspension(K: SimplicialComplex) -> SimplicialComplex:
    a, b = K.num_vertices, K.num_vertices + 1
    facets = [f + (a,) for f in K.facets] + [f + (b,) for f in K.facets]
    return SimplicialComplex(facets, name=f"S({K.name})")


def product(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Staircase triangulation of K x L; vertex (u, w) gets index u * |L| + w."""
    nl = L.num_vertices
    facets = []
    for s in K.facets:
        for t in L.facets:
            p, q = len(s) - 1, len(t) - 1
            for ups in itertools.combinations(range(p + q), q):
                i = j = 0
                simplex = [s[0] * nl + t[0]]
                upset = set(ups)
                for step in range(p + q):
                    if step in upset:
                        j += 1
                    else:
                        i += 1
                    simplex.append(s[i] * nl + t[j])
                facets.append(simplex)
    return SimplicialComplex(facets, name=f"{K.name}x{L.name}")


def relabel(K: SimplicialComplex, name: str | None = None) -> SimplicialComplex:
    used = sorted({v for f in K.facets for v in f})
    m = {v: i for i, v in enumerate(used)}
    return SimplicialComplex([[m[v] for v in f] for f in K.facets], name=K.name if name is None else name)


def regular_quotient(top_cells: Iterable[Sequence[int]], act, order: int, name: str = "") -> SimplicialComplex:
    """Order complex of the face poset of a free simplicial quotient.

    ``top_cells`` are the maximal simplices of a complex carrying a free action
    of a cyclic group whose generator acts on vertices by ``act``.  When no
    simplex contains two vertices of the same orbit the quotient is a regular
    CW complex, and the chains of its face poset triangulate it.
    """

    def canon(cell: tuple[int, ...]) -> tuple[int, ...]:
        best = cell
        cur = cell
        for _ in range(order - 1):
            cur = tuple(sorted(act(v) for v in cur))
            if cur < best:
                best = cur
        return best

    def orbit_of(v: int) -> int:
        best = v
        cur = v
        for _ in range(order - 1):
            cur = act(cur)
            best = min(best, cur)
        return best

    tops = {canon(tuple(sorted(c))) for c in top_cells}
    ids: dict[tuple[int, ...], int] = {}

    def cell_id(c: tuple[int, ...]) -> int:
        k = canon(tuple(sorted(c)))
        if k not in ids:
            ids[k] = len(ids)
        return ids[k]

    facets = []
    for t in sorted(tops):
        if len({orbit_of(v) for v in t}) != len(t):
            raise InvalidComplex("quotient is not regular: a cell meets an orbit twice")
        for perm in itertools.permutations(t):
            facets.append([cell_id(perm[: k + 1]) for k in range(len(t))])
    return SimplicialComplex(facets, name=name)


def lens_space(p: int, q: int = 1, simplify: bool = True) -> SimplicialComplex:
    """A triangulation of the lens space L(p, q).

    Built from the join of two circles (2p vertices each) with Z/p rotating
    them by (1, q) turns, then shrunk by link-condition edge contractions.
    """
    if p < 2:
        raise ValueError("p must be >= 2")
    import math

    if math.gcd(p, q) != 1:
        raise ValueError("q must be prime to p")
    a = b = 2
    na, nb = p * a, p * b

    def act(v: int) -> int:
        if v < na:
            return (v + a) % na
        return na + (v - na + q * b) % nb

    tops = [(i, (i + 1) % na, na + j, na + (j + 1) % nb) for i in range(na) for j in range(nb)]
    K = regular_quotient(tops, act, p, name=f"L({p},{q})")
    if simplify:
        K = contract_edges(K)
    return relabel(K, name=f"L({p},{q})")


def rp4(simplify: bool = True) -> SimplicialComplex:
    """RP^4 as the antipodal quotient of the boundary of the 5-dim cross-polytope."""
    n = 5
    tops = []
    for signs in itertools.product((0, 1), repeat=n):
        tops.append(tuple(i + n * s for i, s in enumerate(signs)))
    K = regular_quotient(tops, lambda v: (v + n) % (2 * n), 2, name="RP4")
    if simplify:
        K = contract_edges(K)
    return relabel(K, name="RP4")


def sphere_product(a: int, b: int) -> SimplicialComplex:
    return product(boundary_of_simplex(a + 1), boundary_of_simplex(b + 1))


# ---------------------------------------------------------------------------
# Simplification


def contract_edges(K: SimplicialComplex, max_rounds: int = 50) -> SimplicialComplex:
    """Greedy edge contractions under the link condition Lk(u) & Lk(v) == Lk(uv).

    The link condition guarantees the contraction is a homotopy equivalence
    (a PL homeomorphism for manifolds), so all cohomological data survive.
    """
    facets = [frozenset(f) for f in K.facets]
    star: dict[int, set[frozenset]] = {}
    for f in facets:
        for v in f:
            star.setdefault(v, set()).add(f)

    def link_faces(v: int) -> set[frozenset]:
        out: set[frozenset] = set()
        for f in star[v]:
            rest = tuple(f - {v})
            for k in range(len(rest) + 1):
                out.update(frozenset(c) for c in itertools.combinations(rest, k))
        return out

    def edge_link(u: int, v: int) -> set[frozenset]:
        out: set[frozenset] = set()
        for f in star[u]:
            if v in f:
                rest = tuple(f - {u, v})
                for k in range(len(rest) + 1):
                    out.update(frozenset(c) for c in itertools.combinations(rest, k))
        return out

    for _ in range(max_rounds):
        changed = False
        for u in sorted(star):
            if u not in star:
                continue
            nbrs = sorted({w for f in star[u] for w in f if w != u})
            for v in nbrs:
                if v not in star or u not in star:
                    continue
                lu, lv = link_faces(u), link_faces(v)
                if (lu & lv) != edge_link(u, v):
                    continue
                # contract v into u
                old = star.pop(v)
                for f in old:
                    for w in f:
                        if w != v:
                            star[w].discard(f)
                for f in old:
                    if u in f:
                        continue
                    g = (f - {v}) | {u}
                    for w in g:
                        star.setdefault(w, set()).add(g)
                changed = True
                break
        if not changed:
            break
    out = set()
    for fs in star.values():
        out.update(fs)
    return SimplicialComplex([sorted(f) for f in out], name=K.name)
