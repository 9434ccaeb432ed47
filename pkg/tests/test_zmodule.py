from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from perindex.zmodule import (FinAbGroup, IntMatrix, NotBilinear, NotContained, QmodZ, cokernel, element_order,
                              hom_kernel, relation_cokernel, smith, smith_normal_form, solve_in_group, subquotient,
                              torsion_dual_pairing_adjoints)


def sympy_factors(rows, ncols):
    """Nonzero invariant factors from sympy, an independent implementation."""
    if not rows or not ncols:
        return []
    return [abs(int(d)) for d in invariant_factors(Matrix(rows), domain=ZZ) if d != 0]


matrices = st.integers(0, 7).flatmap(
    lambda r: st.integers(0, 7).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
        .map(lambda rows: (rows, c))))


@settings(max_examples=150)
@given(matrices)
def test_smith_matches_sympy(mc):
    rows, c = mc
    m = IntMatrix.from_dense(rows, cols=c)
    assert smith(m).diagonal == sympy_factors(rows, c)


@settings(max_examples=100)
@given(matrices)
def test_smith_transforms(mc):
    rows, c = mc
    m = IntMatrix.from_dense(rows, cols=c)
    U, D, V = smith_normal_form(m)
    assert U @ m @ V == D
    assert abs(U.determinant()) == 1 and abs(V.determinant()) == 1
    diag = [D.entries.get((i, i), 0) for i in range(min(m.rows, m.cols))]
    assert all(i == j for i, j in D.entries)
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


def test_pivot_prefers_smallest_entry():
    s = smith(IntMatrix.from_dense([[4, 6], [6, 2]]))
    assert s.pivots[0][:2] == (1, 1)
    assert s.diagonal == [2, 14]


def test_cokernel_examples():
    assert cokernel(IntMatrix.from_dense([[2, 0], [0, 0]])).invariant_factors == (2, 0)
    assert cokernel(IntMatrix(0, 3)).invariant_factors == (0, 0, 0)
    assert cokernel(IntMatrix.from_dense([[3]])).invariant_factors == (3,)
    assert cokernel(IntMatrix.from_dense([[1, 1]])).invariant_factors == (0,)
    G = relation_cokernel(IntMatrix.from_dense([[2, 0], [0, 3]]))
    assert G.invariant_factors == (6,)
    # generator images survive the basis change
    assert element_order(G.elem(G.canonical_coords([1, 0]))) == 2
    assert element_order(G.elem(G.canonical_coords([0, 1]))) == 3


def test_group_validation():
    with pytest.raises(ValueError):
        FinAbGroup((4, 2))
    with pytest.raises(ValueError):
        FinAbGroup((0, 2))
    with pytest.raises(ValueError):
        FinAbGroup((1,))
    assert FinAbGroup.from_factors([6, 4, 0, 1]).invariant_factors == (2, 12, 0)
    assert str(FinAbGroup((2, 0))) == "Z/2 + Z"
    assert FinAbGroup(()).is_trivial() and str(FinAbGroup(())) == "0"
    assert FinAbGroup((2, 4)).order == 8 and FinAbGroup((0,)).order is None


def test_element_orders():
    G = FinAbGroup((2, 12, 0))
    assert element_order(G.elem((1, 0, 0))) == 2
    assert element_order(G.elem((1, 8, 0))) == 6
    assert element_order(G.elem((0, 0, 3))) == float("inf")
    assert element_order(G.zero()) == 1
    assert (5 * G.elem((1, 1, 1))).coords == (1, 5, 5)


def test_hom_kernel_and_solve():
    Z6, Z3 = FinAbGroup((6,)), FinAbGroup((3,))
    ker = hom_kernel(Z6, Z3, [(1,)])
    assert ker and all(element_order(Z6.elem(k)) == 2 for k in ker)
    assert solve_in_group(Z6, [(4,)], (2,)) is not None
    assert solve_in_group(Z6, [(2,)], (1,)) is None
    Z = FinAbGroup((0,))
    assert [tuple(map(abs, k)) for k in hom_kernel(Z, FinAbGroup((5,)), [(1,)])] == [(5,)]


def test_subquotient():
    Z12 = FinAbGroup((12,))
    q = subquotient(Z12, [(2,)], [(6,)])
    assert q.group.invariant_factors == (3,)
    assert element_order(q.class_of((4,))) == 3
    assert q.class_of((6,)).is_zero()
    assert q.class_of(q.lift((1,))) == q.group.elem((1,))
    with pytest.raises(NotContained):
        q.class_of((1,))
    with pytest.raises(NotContained):
        subquotient(Z12, [(4,)], [(2,)])


def test_qmodz():
    a = QmodZ(Fraction(7, 5))
    assert a == QmodZ(2, 5) and (5 * a).is_zero()
    assert (a - a).is_zero() and (-a) == QmodZ(3, 5)
    assert QmodZ.iota(4, 6) == QmodZ(1, 2)
    assert a.denominator == 5


def test_pairing_adjoints():
    Z5 = FinAbGroup((5,))
    assert torsion_dual_pairing_adjoints([[QmodZ(1, 5)]], Z5, Z5).is_perfect
    assert not torsion_dual_pairing_adjoints([[QmodZ(0)]], Z5, Z5).is_perfect
    Z2 = FinAbGroup((2,))
    with pytest.raises(NotBilinear):
        torsion_dual_pairing_adjoints([[QmodZ(1, 3)]], Z2, Z2)
    # hyperbolic pairing on Z/2 + Z/2
    G = FinAbGroup((2, 2))
    h = [[QmodZ(0), QmodZ(1, 2)], [QmodZ(1, 2), QmodZ(0)]]
    assert torsion_dual_pairing_adjoints(h, G, G).is_perfect
