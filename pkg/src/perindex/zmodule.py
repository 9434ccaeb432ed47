"""Exact arithmetic for finitely generated abelian groups.

Everything here works over arbitrary-precision Python integers.  Matrices are
stored sparsely; the Smith normal form routine keeps the unimodular
transforms (and their inverses) so that callers can move representatives
between presentation coordinates and canonical coordinates.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "SNF",
    "smith",
    "smith_normal_form",
    "FinAbGroup",
    "GroupElem",
    "QmodZ",
    "cokernel",
    "relation_cokernel",
    "element_order",
    "subquotient",
    "Subquotient",
    "hom_kernel",
    "solve_in_group",
    "torsion_dual_pairing_adjoints",
    "NotBilinear",
    "NotContained",
]


class NotBilinear(ValueError):
    pass


class NotContained(ValueError):
    pass


class IntMatrix:
    """Sparse integer matrix, ``entries[(i, j)] = value`` with no stored zeros."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: dict | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        self.entries = {k: int(v) for k, v in (entries or {}).items() if v}

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        ent = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged matrix")
            for j, v in enumerate(row):
                if v:
                    ent[(i, j)] = int(v)
        return cls(rows, cols, ent)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        return cls(rows, cols, {(i, i): d for i, d in enumerate(diag) if d})

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def row_dicts(self) -> list[dict[int, int]]:
        out: list[dict[int, int]] = [{} for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def col_dicts(self) -> list[dict[int, int]]:
        out: list[dict[int, int]] = [{} for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            out[j][i] = v
        return out

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        rhs = other.row_dicts()
        acc: dict[tuple[int, int], int] = {}
        for (i, k), a in self.entries.items():
            for j, b in rhs[k].items():
                key = (i, j)
                acc[key] = acc.get(key, 0) + a * b
        return IntMatrix(self.rows, other.cols, acc)

    def apply(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = [0] * self.rows
        for (i, j), v in self.entries.items():
            if vec[j]:
                out[i] += v * vec[j]
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def determinant(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination; dense."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        a = self.to_dense()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((r for r in range(k + 1, n) if a[r][k]), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.entries == other.entries

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


# ---------------------------------------------------------------------------
# Smith normal form


class _Sparse:
    """Row- and column-indexed sparse storage used during elimination."""

    def __init__(self, m: IntMatrix):
        self.rows = m.row_dicts()
        self.cols: list[set[int]] = [set() for _ in range(m.cols)]
        for (i, j) in m.entries:
            self.cols[j].add(i)


class _Transform:
    """Accumulated elementary operations; ``fwd`` is kept as rows, ``inv`` as columns
    for row transforms, and the other way around for column transforms."""

    def __init__(self, n: int):
        self.a: list[dict[int, int]] = [{i: 1} for i in range(n)]
        self.b: list[dict[int, int]] = [{i: 1} for i in range(n)]

    @staticmethod
    def _axpy(target: dict[int, int], source: dict[int, int], q: int) -> None:
        for k, v in source.items():
            nv = target.get(k, 0) + q * v
            if nv:
                target[k] = nv
            else:
                target.pop(k, None)


@dataclass
class SNF:
    """Smith form ``U @ m @ V = D`` in pivot form.

    ``pivots`` lists ``(row, col, d)`` with ``d > 0`` and d_1 | d_2 | ...  The
    transforms are optional; when present ``U_rows[i]`` is row i of U,
    ``Uinv_cols[i]`` column i of U^-1, ``V_cols[j]`` column j of V and
    ``Vinv_rows[j]`` row j of V^-1, all as sparse dicts.
    """

    shape: tuple[int, int]
    pivots: list[tuple[int, int, int]]
    U_rows: list[dict[int, int]] | None = None
    Uinv_cols: list[dict[int, int]] | None = None
    V_cols: list[dict[int, int]] | None = None
    Vinv_rows: list[dict[int, int]] | None = None

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def diagonal(self) -> list[int]:
        return [d for _, _, d in self.pivots]

    def pivot_cols(self) -> set[int]:
        return {c for _, c, _ in self.pivots}

    def pivot_rows(self) -> set[int]:
        return {r for r, _, _ in self.pivots}

    def row_order(self) -> list[int]:
        used = [r for r, _, _ in self.pivots]
        seen = set(used)
        return used + [r for r in range(self.shape[0]) if r not in seen]

    def col_order(self) -> list[int]:
        used = [c for _, c, _ in self.pivots]
        seen = set(used)
        return used + [c for c in range(self.shape[1]) if c not in seen]


def smith(m: IntMatrix, rows: bool = False, cols: bool = False) -> SNF:
    """Sparse Smith normal form.

    Pivots are chosen as the entry of smallest absolute value in the active
    part, ties broken by lowest row then lowest column.  ``rows``/``cols``
    request the row (U, U^-1) and column (V, V^-1) transforms.
    """
    nr, nc = m.rows, m.cols
    A = _Sparse(m)
    U = _Transform(nr) if rows else None
    V = _Transform(nc) if cols else None
    heap: list[tuple[int, int, int]] = []
    row_done = [False] * nr
    col_done = [False] * nc
    pivots: list[tuple[int, int, int]] = []

    track = [False]      # push changed entries onto the entry heap (phase 2 only)
    row_heap: list[int] = []

    def row_op(dst: int, src: int, q: int) -> None:
        # row[dst] -= q * row[src]
        rs, rd = A.rows[src], A.rows[dst]
        cols = A.cols
        push = track[0]
        for j, v in rs.items():
            nv = rd.get(j, 0) - q * v
            if nv:
                if j not in rd:
                    cols[j].add(dst)
                rd[j] = nv
                if push:
                    heapq.heappush(heap, (abs(nv), dst, j))
            else:
                del rd[j]
                cols[j].discard(dst)
        if not push:
            heapq.heappush(row_heap, dst)
        if U is not None:
            _Transform._axpy(U.a[dst], U.a[src], -q)
            _Transform._axpy(U.b[src], U.b[dst], q)

    def col_op(dst: int, src: int, q: int) -> None:
        # col[dst] -= q * col[src]
        for i in list(A.cols[src]):
            ri = A.rows[i]
            nv = ri.get(dst, 0) - q * ri[src]
            if nv:
                if dst not in ri:
                    A.cols[dst].add(i)
                ri[dst] = nv
                heapq.heappush(heap, (abs(nv), i, dst))
            else:
                del ri[dst]
                A.cols[dst].discard(i)
        if V is not None:
            _Transform._axpy(V.a[dst], V.a[src], -q)
            _Transform._axpy(V.b[src], V.b[dst], q)

    def unit_phase() -> None:
        # While a unit exists it is the minimal pivot; take the lowest row holding
        # one and its lowest unit column.  Active rows only meet active columns.
        row_heap.extend(range(nr))
        heapq.heapify(row_heap)
        last = -1
        while row_heap:
            r = heapq.heappop(row_heap)
            if r == last or row_done[r]:
                continue
            last = r
            row = A.rows[r]
            c = min((j for j, v in row.items() if v == 1 or v == -1), default=None)
            if c is None:
                continue
            last = -1
            p = row[c]
            for r2 in list(A.cols[c]):
                if r2 != r:
                    row_op(r2, r, A.rows[r2][c] * p)
            for c2 in [j for j in row if j != c]:
                q = row.pop(c2) * p
                A.cols[c2].discard(r)
                if V is not None:
                    _Transform._axpy(V.a[c2], V.a[c], -q)
                    _Transform._axpy(V.b[c], V.b[c2], q)
            row_done[r] = True
            col_done[c] = True
            pivots.append((r, c, p))

    def eliminate() -> None:
        while heap:
            val, r, c = heap[0]
            if row_done[r] or col_done[c] or abs(A.rows[r].get(c, 0)) != val:
                heapq.heappop(heap)
                continue
            p = A.rows[r][c]
            clean = True
            for r2 in list(A.cols[c]):
                if r2 == r:
                    continue
                q = _round_div(A.rows[r2][c], p)
                row_op(r2, r, q)
                if A.rows[r2].get(c):
                    clean = False
            if not clean:
                continue
            for c2 in list(A.rows[r]):
                if c2 == c:
                    continue
                q = _round_div(A.rows[r][c2], p)
                col_op(c2, c, q)
                if A.rows[r].get(c2):
                    clean = False
            if not clean:
                continue
            heapq.heappop(heap)
            row_done[r] = True
            col_done[c] = True
            pivots.append((r, c, p))

    unit_phase()
    track[0] = True
    heap.extend((abs(v), i, j) for i, row in enumerate(A.rows) if not row_done[i] for j, v in row.items())
    heapq.heapify(heap)
    eliminate()

    # enforce the divisibility chain on the diagonal; only non-units can fail
    def normalise() -> None:
        for k, (r, c, p) in enumerate(pivots):
            if p < 0:
                A.rows[r][c] = -p
                if U is not None:
                    U.a[r] = {j: -v for j, v in U.a[r].items()}
                    U.b[r] = {j: -v for j, v in U.b[r].items()}
                pivots[k] = (r, c, -p)
        pivots.sort(key=lambda t: (t[2], t[0], t[1]))

    normalise()
    while True:
        big = [k for k, t in enumerate(pivots) if t[2] > 1]
        bad = next(((a, b) for i, a in enumerate(big) for b in big[i + 1:]
                    if pivots[b][2] % pivots[a][2]), None)
        if bad is None:
            break
        a, b = bad
        ra, ca, _ = pivots[a]
        rb, cb, _ = pivots[b]
        # row_a += row_b gives [[da, db], [0, db]]; re-diagonalise that block
        row_op(ra, rb, -1)
        for x in (ra, rb):
            row_done[x] = False
            for y, v in A.rows[x].items():
                heapq.heappush(heap, (abs(v), x, y))
        for y in (ca, cb):
            col_done[y] = False
        del pivots[b]
        del pivots[a]
        eliminate()
        normalise()

    res = SNF((nr, nc), pivots)
    if U is not None:
        res.U_rows, res.Uinv_cols = U.a, U.b
    if V is not None:
        res.V_cols, res.Vinv_rows = V.a, V.b
    return res


def _round_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if 2 * abs(r) > abs(b):
        q += 1
    return q


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``U @ m @ V == D`` diagonal and U, V unimodular."""
    s = smith(m, rows=True, cols=True)
    rorder, corder = s.row_order(), s.col_order()
    U = IntMatrix(m.rows, m.rows, {(i, j): v for i, r in enumerate(rorder) for j, v in s.U_rows[r].items()})
    V = IntMatrix(m.cols, m.cols, {(i, j): v for j, c in enumerate(corder) for i, v in s.V_cols[c].items()})
    D = IntMatrix(m.rows, m.cols, {(k, k): d for k, (_, _, d) in enumerate(s.pivots)})
    return U, D, V


# ---------------------------------------------------------------------------
# Groups


@dataclass(frozen=True)
class FinAbGroup:
    """Finitely generated abelian group ``Z/d_1 + ... + Z/d_k``.

    Torsion factors come first in divisibility order, free summands (encoded as
    0) last.  ``to_canonical`` maps presentation-generator coordinates to
    canonical coordinates (rows = canonical generators) and ``from_canonical``
    lists each canonical generator in presentation coordinates; both are None
    for groups built directly from invariant factors.
    """

    invariant_factors: tuple[int, ...]
    to_canonical: tuple[tuple[tuple[int, int], ...], ...] | None = field(default=None, compare=False, repr=False)
    from_canonical: tuple[tuple[int, ...], ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        inv = tuple(int(d) for d in self.invariant_factors)
        tors = [d for d in inv if d != 0]
        if any(d < 2 for d in tors):
            raise ValueError(f"invalid invariant factors {inv}")
        if any(tors[i + 1] % tors[i] for i in range(len(tors) - 1)):
            raise ValueError(f"divisibility chain violated: {inv}")
        if inv != tuple(tors) + (0,) * (len(inv) - len(tors)):
            raise ValueError(f"free summands must come last: {inv}")
        object.__setattr__(self, "invariant_factors", inv)

    @classmethod
    def from_factors(cls, factors: Iterable[int]) -> "FinAbGroup":
        """Canonicalise an arbitrary list of cyclic orders (0 = Z, 1 dropped)."""
        fs = [abs(int(f)) for f in factors]
        free = sum(1 for f in fs if f == 0)
        tors = [f for f in fs if f > 1]
        return cls(tuple(_invariant_chain(tors)) + (0,) * free)

    @property
    def ngens(self) -> int:
        return len(self.invariant_factors)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d == 0)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d)

    @property
    def order(self) -> int | None:
        """Group order, or None when the group is infinite."""
        if self.rank:
            return None
        return math.prod(self.torsion)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        if len(coords) != self.ngens:
            raise ValueError(f"expected {self.ngens} coordinates, got {len(coords)}")
        return tuple(c % d if d else int(c) for c, d in zip(coords, self.invariant_factors))

    def elem(self, coords: Sequence[int]) -> "GroupElem":
        return GroupElem(self, self.reduce(coords))

    def zero(self) -> "GroupElem":
        return GroupElem(self, (0,) * self.ngens)

    def gens(self) -> list["GroupElem"]:
        return [self.elem([int(i == j) for j in range(self.ngens)]) for i in range(self.ngens)]

    def elements(self) -> Iterable["GroupElem"]:
        if self.rank:
            raise ValueError("cannot enumerate an infinite group")
        import itertools

        for c in itertools.product(*(range(d) for d in self.invariant_factors)):
            yield GroupElem(self, c)

    def canonical_coords(self, presentation_vec: Sequence[int]) -> tuple[int, ...]:
        """Canonical coordinates of a vector given in presentation generators."""
        if self.to_canonical is None:
            return self.reduce(presentation_vec)
        out = []
        for row in self.to_canonical:
            out.append(sum(v * presentation_vec[j] for j, v in row))
        return self.reduce(out)

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " + ".join("Z" if d == 0 else f"Z/{d}" for d in self.invariant_factors)


def _invariant_chain(orders: list[int]) -> list[int]:
    """Turn a list of cyclic orders into the invariant factor chain."""
    primes: dict[int, list[int]] = {}
    for n in orders:
        for p, e in _factorize(n).items():
            primes.setdefault(p, []).append(p**e)
    length = max((len(v) for v in primes.values()), default=0)
    chain = [1] * length
    for p, powers in primes.items():
        powers.sort()
        for k, q in enumerate(powers):
            chain[length - len(powers) + k] *= q
    return [c for c in chain if c > 1]


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_factors(n: int) -> list[int]:
    return sorted(_factorize(abs(n)))


@dataclass(frozen=True)
class GroupElem:
    group: FinAbGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", self.group.reduce(self.coords))

    def __add__(self, other: "GroupElem") -> "GroupElem":
        if self.group != other.group:
            raise ValueError("elements of different groups")
        return GroupElem(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "GroupElem":
        return GroupElem(self.group, tuple(-a for a in self.coords))

    def __sub__(self, other: "GroupElem") -> "GroupElem":
        return self + (-other)

    def __rmul__(self, k: int) -> "GroupElem":
        return GroupElem(self.group, tuple(k * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def order(self) -> int | float:
        return element_order(self, self.group)


def element_order(g: GroupElem, G: FinAbGroup | None = None) -> int | float:
    """Least m >= 1 with m*g = 0, or ``math.inf`` for elements of infinite order."""
    G = G or g.group
    m = 1
    for c, d in zip(g.group.reduce(g.coords), G.invariant_factors):
        if d == 0:
            if c:
                return math.inf
            continue
        k = d // math.gcd(c, d)
        m = m * k // math.gcd(m, k)
    return m


class QmodZ:
    """An element of Q/Z stored as a reduced fraction a/b with 0 <= a < b."""

    __slots__ = ("value",)

    def __init__(self, num: int | Fraction, den: int = 1):
        f = Fraction(num, den) if not isinstance(num, Fraction) else num / den
        self.value = f - math.floor(f)

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    @classmethod
    def iota(cls, l: int, a: int) -> "QmodZ":
        """The inclusion Z/l -> Q/Z, 1 -> 1/l."""
        return cls(a, l)

    def __add__(self, other: "QmodZ") -> "QmodZ":
        return QmodZ(self.value + other.value)

    def __neg__(self) -> "QmodZ":
        return QmodZ(-self.value)

    def __sub__(self, other: "QmodZ") -> "QmodZ":
        return QmodZ(self.value - other.value)

    def __rmul__(self, k: int) -> "QmodZ":
        return QmodZ(k * self.value)

    def __mul__(self, k: int) -> "QmodZ":
        return QmodZ(k * self.value)

    def __eq__(self, other) -> bool:
        if isinstance(other, QmodZ):
            return self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == QmodZ(other).value
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def is_zero(self) -> bool:
        return self.value == 0

    def __repr__(self) -> str:
        return f"{self.value.numerator}/{self.value.denominator}"


# ---------------------------------------------------------------------------
# Cokernels, kernels, subquotients


def cokernel(m: IntMatrix) -> FinAbGroup:
    """Z^cols / (row span of m), with basis maps recorded.

    Columns index presentation generators and each row is a relation, so an
    empty ``0 x k`` matrix presents Z^k.
    """
    return relation_cokernel(m.transpose())


def relation_cokernel(rel: IntMatrix) -> FinAbGroup:
    """Z^rows / (column span of rel): generators are rows, relations columns."""
    s = smith(rel, rows=True)
    return _coker_from_snf(s, rel.rows)


def _coker_from_snf(s: SNF, n: int) -> FinAbGroup:
    diag = {r: d for r, _, d in s.pivots}
    entries = []  # (factor, row index into U)
    for r, _, d in s.pivots:
        if d > 1:
            entries.append((d, r))
    free = [r for r in range(n) if r not in diag]
    entries.extend((0, r) for r in free)
    to_can = tuple(tuple(sorted(s.U_rows[r].items())) for _, r in entries)
    from_can = tuple(tuple(s.Uinv_cols[r].get(i, 0) for i in range(n)) for _, r in entries)
    return FinAbGroup(tuple(d for d, _ in entries), to_can, from_can)


def hom_kernel(G: FinAbGroup, H: FinAbGroup, images: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Generators (in canonical coordinates of G) of the kernel of G -> H.

    ``images[i]`` is the image of the i-th canonical generator of G in canonical
    coordinates of H.
    """
    k, l = G.ngens, H.ngens
    # x in Z^k is in the kernel iff M x + D_H w = 0 for some w, and x relations of G
    # are automatically in the kernel.  Kernel of [M | D_H] projected to x.
    ent = {}
    for i, img in enumerate(images):
        for j, v in enumerate(img):
            if v:
                ent[(j, i)] = v
    for j, d in enumerate(H.invariant_factors):
        if d:
            ent[(j, k + j)] = d
    big = IntMatrix(l, k + l, ent)
    s = smith(big, cols=True)
    piv = s.pivot_cols()
    gens = []
    for c in range(k + l):
        if c in piv:
            continue
        col = s.V_cols[c]
        x = tuple(col.get(i, 0) for i in range(k))
        gens.append(G.reduce(x))
    return [g for g in gens if any(g)]


def solve_in_group(H: FinAbGroup, images: Sequence[Sequence[int]], target: Sequence[int]) -> list[int] | None:
    """Find integers c with sum_i c_i images[i] == target in H, or None."""
    k, l = len(images), H.ngens
    ent = {}
    for i, img in enumerate(images):
        for j, v in enumerate(img):
            if v:
                ent[(j, i)] = v
    for j, d in enumerate(H.invariant_factors):
        if d:
            ent[(j, k + j)] = d
    big = IntMatrix(l, k + l, ent)
    s = smith(big, rows=True, cols=True)
    # U big V = D ; solve D y = U t
    ut = [sum(v * target[j] for j, v in s.U_rows[r].items()) for r in range(l)]
    y = {}
    piv_rows = set()
    for r, c, d in s.pivots:
        piv_rows.add(r)
        if ut[r] % d:
            return None
        y[c] = ut[r] // d
    if any(ut[r] for r in range(l) if r not in piv_rows):
        return None
    x = [0] * (k + l)
    for c, yc in y.items():
        for i, v in s.V_cols[c].items():
            x[i] += v * yc
    return x[:k]


@dataclass
class Subquotient:
    """<sub> / <quot> inside an ambient group, with a class map."""

    ambient: FinAbGroup
    group: FinAbGroup
    sub_gens: list[tuple[int, ...]]
    _to_can: list[dict[int, int]]
    _from_can: list[tuple[int, ...]]

    def class_of(self, elem: GroupElem | Sequence[int]) -> GroupElem:
        coords = elem.coords if isinstance(elem, GroupElem) else tuple(elem)
        c = solve_in_group(self.ambient, self.sub_gens, coords)
        if c is None:
            raise NotContained(f"{coords} is not in the subgroup")
        out = [sum(v * c[j] for j, v in row.items()) for row in self._to_can]
        return self.group.elem(out)

    def lift(self, elem: GroupElem | Sequence[int]) -> tuple[int, ...]:
        """An ambient representative of a class given in canonical coordinates."""
        coords = elem.coords if isinstance(elem, GroupElem) else tuple(elem)
        combo = [0] * len(self.sub_gens)
        for k, a in enumerate(coords):
            for j, v in enumerate(self._from_can[k]):
                combo[j] += a * v
        vec = [0] * self.ambient.ngens
        for j, g in enumerate(self.sub_gens):
            for i, v in enumerate(g):
                vec[i] += combo[j] * v
        return self.ambient.reduce(vec)


def subquotient(G: FinAbGroup, sub_gens: Sequence[GroupElem | Sequence[int]],
                quot_gens: Sequence[GroupElem | Sequence[int]]) -> Subquotient:
    """The group <sub_gens> / <quot_gens> with a class map for elements of <sub_gens>."""

    def coords(x):
        return G.reduce(x.coords if isinstance(x, GroupElem) else tuple(x))

    subs = [coords(x) for x in sub_gens]
    quots = [coords(x) for x in quot_gens]
    a = len(subs)
    # presentation on sub generators: relations = kernel of Z^a -> G, plus quot gens
    rel_cols: list[list[int]] = []
    for q in quots:
        c = solve_in_group(G, subs, q)
        if c is None:
            raise NotContained(f"quotient generator {q} is not in the subgroup")
        rel_cols.append(c)
    # kernel of Z^a -> G
    ent = {}
    for i, sg in enumerate(subs):
        for j, v in enumerate(sg):
            if v:
                ent[(j, i)] = v
    for j, d in enumerate(G.invariant_factors):
        if d:
            ent[(j, a + j)] = d
    big = IntMatrix(G.ngens, a + G.ngens, ent)
    s = smith(big, cols=True)
    piv = s.pivot_cols()
    for c in range(a + G.ngens):
        if c not in piv:
            rel_cols.append([s.V_cols[c].get(i, 0) for i in range(a)])
    rel = IntMatrix(a, len(rel_cols), {(i, j): v for j, col in enumerate(rel_cols) for i, v in enumerate(col) if v})
    sr = smith(rel, rows=True)
    grp = _coker_from_snf(sr, a)
    to_can = [dict(row) for row in grp.to_canonical]
    from_can = list(grp.from_canonical)
    return Subquotient(G, FinAbGroup(grp.invariant_factors), subs, to_can, from_can)


# ---------------------------------------------------------------------------
# Pairings


@dataclass
class PairingAdjoints:
    left: list[tuple[int, ...]]   # image of each generator of G in Hom(H, Q/Z) coords
    right: list[tuple[int, ...]]  # image of each generator of H in Hom(G, Q/Z) coords
    is_perfect: bool
    left_kernel: list[tuple[int, ...]]
    right_kernel: list[tuple[int, ...]]


def torsion_dual_pairing_adjoints(pairing: Sequence[Sequence[QmodZ]], G: FinAbGroup, H: FinAbGroup) -> PairingAdjoints:
    """Adjoints G -> H^ and H -> G^ of a Q/Z-valued pairing of finite groups.

    Hom(H, Q/Z) is identified with H itself via f -> (h_j * f(e_j) mod h_j).
    """
    if G.rank or H.rank:
        raise ValueError("torsion dual needs finite groups")
    g, h = G.invariant_factors, H.invariant_factors
    for i in range(len(g)):
        for j in range(len(h)):
            v = pairing[i][j]
            if not (g[i] * v).is_zero() or not (h[j] * v).is_zero():
                raise NotBilinear(f"pairing value {v} at ({i},{j}) not annihilated by orders {g[i]}, {h[j]}")
    left = [tuple((h[j] * pairing[i][j].value).numerator for j in range(len(h))) for i in range(len(g))]
    right = [tuple((g[i] * pairing[i][j].value).numerator for i in range(len(g))) for j in range(len(h))]
    left = [H.reduce(x) for x in left]
    right = [G.reduce(x) for x in right]
    lk = hom_kernel(G, H, left)
    rk = hom_kernel(H, G, right)
    perfect = G.order == H.order and not lk and not rk
    return PairingAdjoints(left, right, perfect, lk, rk)
