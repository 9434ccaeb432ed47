import json
import math
import random

import pytest

from perindex import bounds
from perindex.ahss import (BocksteinMismatch, ModelInvalid, NotTorsion, PeriodVector, SymbolicModel, d3, e2_page,
                           g1, indeterminacy_I2, kn_differentials, kn_model, model_from_complex, period_vector,
                           turn_page_d3, untwisted_d3)
from perindex.cochain import boundary_of_simplex, builtin, cohomology, lens_space, product

NS = [2, 3, 4, 5, 6, 7, 8, 9, 10, 12]


@pytest.fixture(scope="module")
def lens_circle():
    K = product(lens_space(3), boundary_of_simplex(2))
    H3 = cohomology(K, 0, 3).group
    alpha = tuple(int(i == 0) for i in range(H3.ngens))   # the Z/3 summand comes first
    assert H3.invariant_factors[0] == 3
    return K, alpha


@pytest.mark.parametrize("n", NS)
def test_kn_model_validates(n):
    for top in (6, 8):
        m = kn_model(n, top)
        assert m.group(6) is None and m.group(3).invariant_factors == (n,)
        assert m.group(5).invariant_factors == (bounds.epsilon(2, n) * n,)


@pytest.mark.parametrize("n", NS)
def test_kn_vectors_multiply_to_sharp_index(n):
    v8 = period_vector(kn_model(n), dim=8)
    v6 = period_vector(kn_model(n, 6), dim=6)
    assert v8.exact and v6.exact
    assert v8.index == bounds.sharp_kn_index(n, 8)
    assert v6.index == bounds.sharp_kn_index(n, 6)
    assert v8.entries[:2] == v6.entries          # d5 only sees the 6-skeleton


def test_kn_vectors_frozen():
    got = {n: period_vector(kn_model(n), dim=8).entries for n in NS}
    assert got == {2: [2, 4, 2], 3: [3, 3, 9], 4: [4, 8, 2], 5: [5, 5, 5], 6: [6, 12, 18], 7: [7, 7, 7],
                   8: [8, 16, 4], 9: [9, 9, 27], 10: [10, 20, 10], 12: [12, 24, 18]}


def test_kn_differentials():
    r5, r7 = kn_differentials(kn_model(4))
    assert (r5.page, r5.source, r5.target_order) == (5, 4, 8)
    assert (r7.page, r7.source, r7.target_order) == (7, 32, 2)
    r5, r7 = kn_differentials(kn_model(3, 6))
    assert r7 is None and r5.target_order == 3


def test_kn_model_rejects_broken_tables():
    m = kn_model(4)
    m.bockstein["zeta'^2"] = (1,)
    with pytest.raises(ModelInvalid):
        m.validate()
    m = kn_model(3)
    m.groups[5] = m.groups[3].__class__((9,))
    with pytest.raises(ModelInvalid):
        m.validate()
    m = kn_model(3)
    m.alpha = (3,)
    with pytest.raises(ModelInvalid):
        m.validate()


@pytest.mark.parametrize("n", [2, 3, 4, 6, 9])
def test_g1_order_is_unit_invariant(n):
    m = kn_model(n, 6)
    base = g1(m).order
    assert base == bounds.epsilon(2, n) * n
    for lam in range(1, 3 * n):
        if math.gcd(lam, n) == 1:
            assert g1(m, lam=lam).order == base


def test_g1_needs_matching_class():
    m = kn_model(3, 6)
    with pytest.raises(BocksteinMismatch):
        g1(m, xi="nope")
    m.bockstein["zeta'"] = (2,)
    with pytest.raises(BocksteinMismatch):
        g1(m)


def test_indeterminacy():
    I2 = indeterminacy_I2(kn_model(6))
    assert I2.generators == [] and not I2.partial
    assert indeterminacy_I2(kn_model(6, 6)).group is None   # H^7 of a 6-skeleton is 0


def test_model_round_trip(tmp_path):
    m = kn_model(6)
    p = tmp_path / "m.json"
    p.write_text(json.dumps(m.to_dict()))
    back = SymbolicModel.load(p)
    assert back.to_dict() == m.to_dict()
    assert period_vector(back, dim=8) == [6, 12, 18]
    bad = m.to_dict()
    bad["alpha"] = [1, 0]
    with pytest.raises(ModelInvalid):
        SymbolicModel.from_dict(bad)


def test_not_torsion():
    S3 = builtin("S3")
    with pytest.raises(NotTorsion):
        period_vector(S3, (1,))
    with pytest.raises(NotTorsion):
        e2_page(S3, (1,))


def test_page_turn_on_complex(lens_circle):
    K, alpha = lens_circle
    page = turn_page_d3(e2_page(K, alpha))
    assert page.r == 5 and page.e00_generator == 3
    assert untwisted_d3(K, 1, cohomology(K, 0, 1).group.gens()[0].coords) == (0,) * cohomology(K, 0, 4).group.ngens
    assert period_vector(K, alpha).entries == [3]


def _leibniz(model, seed):
    rng = random.Random(seed)
    page = e2_page(model)
    checked = 0
    for s in range(model.top + 1):
        for t in range(model.top + 1 - s - 3):
            Gs, Gt = model.group(s), model.group(t)
            for _ in range(8):
                u = Gs.reduce([rng.randint(-5, 5) for _ in range(Gs.ngens)])
                v = Gt.reduce([rng.randint(-5, 5) for _ in range(Gt.ngens)])
                lhs = d3(page, s + t, model.mul(s, u, t, v))
                rhs = model.add(s + t + 3, model.mul(s + 3, untwisted_d3(model, s, u), t, v),
                                model.scale(s + t + 3, (-1) ** s, model.mul(s, u, t + 3, d3(page, t, v))))
                assert lhs == rhs, (s, t, u, v)
                checked += 1
    return checked


def test_leibniz_on_tabulated_models(lens_circle):
    K, alpha = lens_circle
    assert _leibniz(model_from_complex(K, alpha), 1) > 0
    T5 = builtin("torsion5")
    assert _leibniz(model_from_complex(T5, (1,)), 2) > 0


def test_period_vector_object():
    pv = PeriodVector([2, 4, 2], ["exact", "exact", "theorem-bound"])
    assert pv.index == 16 and not pv.exact and pv == (2, 4, 2) and len(pv) == 3
    assert pv.to_dict()["index"] == 16


def test_model_d5_source_must_match():
    m = kn_model(3, 6)
    m.d5 = (9, (1,))
    with pytest.raises(ModelInvalid):
        period_vector(m, dim=6)
