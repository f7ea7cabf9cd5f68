import math

import pytest

from eqpoincare.charring import CharacterRing
from eqpoincare.engine import (
    augmented_series,
    curve_poincare,
    divisorial_poincare,
    restrict_to_character,
)
from eqpoincare.oracle import (
    INF,
    MonomialModel,
    OracleError,
    _shell,
    monomial_character,
    oracle_poincare,
    oracle_tables,
    oracle_whole_series,
)
from eqpoincare.resolution import ResolutionGraph
from eqpoincare.strata import (
    Branch,
    RemovedPointOrbit,
    Stratum,
    StratumModel,
    curve_strata,
)

from test_strata import three_chain_model


def z3_monomials():
    return MonomialModel(order=3, weights=(1, -1), sigma_x=3, sigma_y=1)


def test_monomial_characters():
    mm = z3_monomials()
    assert monomial_character(mm, 0, 1) == (1,)  # the function y
    assert monomial_character(mm, 1, 0) == (2,)  # the function x
    assert monomial_character(mm, 1, 1) == (0,)
    trivial = MonomialModel(order=1, weights=(0, 0))
    assert monomial_character(trivial, 5, 7) == ()


def test_shell_walks_each_point_once():
    pts = list(_shell((2, 1), box=3))
    assert len(set(pts)) == len(pts)
    assert set(pts) == {
        v
        for v in [(i, j) for i in range(-1, 4) for j in range(-1, 4)]
        if v[0] <= 2 and v[1] <= 1 and (v[0] == 2 or v[1] == 1)
    }
    # an infinite coordinate is never pinned but ranges over the box
    pts = set(_shell((1, INF), box=2))
    assert pts == {(1, j) for j in range(-1, 3)}
    assert list(_shell((INF, INF), box=2)) == []
    # weights entirely above the box contribute nothing
    assert list(_shell((5, 7), box=3)) == []


def test_divisorial_tables_hand_counts():
    mm = z3_monomials()
    model = three_chain_model()
    tables = oracle_tables(mm, model, degree=4)
    # only the constant monomial sits at exactly (0,0,0)
    assert tables[(0,)].value((0, 0, 0)) == 1
    assert tables[(1,)].value((0, 0, 0)) == 0
    # character u: y has weight (2,1,1); x^2 has weight (2,2,4) which is
    # >= (2,1,1) but not >= (3,2,2), so both count there
    assert tables[(1,)].value((2, 1, 1)) == 2
    assert tables[(0,)].value((-1, -1, -1)) == 0


def test_oracle_matches_engine_on_three_chain():
    mm = z3_monomials()
    model = three_chain_model()
    engine = divisorial_poincare(model, 6)
    oracle = oracle_poincare(mm, model, 6)
    assert oracle == engine
    for alpha in model.ring.characters():
        assert restrict_to_character(oracle, alpha) == restrict_to_character(
            engine, alpha
        )


def test_whole_ring_is_augmentation():
    mm = z3_monomials()
    model = three_chain_model()
    total = oracle_whole_series(mm, model, 6)
    assert total == augmented_series(divisorial_poincare(model, 6))


def test_enlarging_the_box_changes_nothing():
    mm = z3_monomials()
    model = three_chain_model()
    small = oracle_poincare(mm, model, 5)
    large = oracle_poincare(mm, model, 10)
    assert small == large.truncate(5)


def test_curve_oracle_y_axis():
    mm = MonomialModel(order=3, weights=(1, -1), curve_axes=("x=0",))
    model = three_chain_model()
    p = oracle_poincare(mm, model, 8, mode="curve")
    u = model.ring.monomial((1,))
    for k in range(9):
        assert p.coefficient((k,)) == u**k
    adjusted, _ = curve_strata(model, [RemovedPointOrbit("y-axis point", 1)])
    assert p == curve_poincare(model, (Branch(3),), adjusted, 8)


def test_curve_oracle_node():
    g = ResolutionGraph(((1, -1),), (), 1)
    ring = CharacterRing(())
    strata = (
        Stratum((1,), 1, label="x-axis point"),
        Stratum((1,), 1, label="y-axis point"),
        Stratum((1,), 0, label="open"),
    )
    model = StratumModel(g, ring, (1,), strata)
    mm = MonomialModel(order=1, weights=(0, 0), curve_axes=("y=0", "x=0"))
    p = oracle_poincare(mm, model, 8, mode="curve")
    assert p.num_vars == 2
    assert p.coefficient((0, 0)) == ring.one()
    assert all(c.is_zero() for v, c in p.terms.items() if v != (0, 0))
    adjusted, _ = curve_strata(
        model,
        [RemovedPointOrbit("x-axis point", 1), RemovedPointOrbit("y-axis point", 1)],
    )
    branches = (Branch(1, "x-axis"), Branch(1, "y-axis"))
    assert p == curve_poincare(model, branches, adjusted, 8)


def test_single_blowup_dimension_counts():
    g = ResolutionGraph(((1, -1),), (), 1)
    model = StratumModel(g, CharacterRing(()), (1,), (Stratum((1,), 2),))
    mm = MonomialModel(order=1, weights=(0, 0), sigma_x=1, sigma_y=1)
    tables = oracle_tables(mm, model, degree=6)
    # x^a y^b sits at exactly a + b: v + 1 monomials at level v
    for v in range(7):
        assert tables[()].value((v,)) == v + 1
    p = oracle_poincare(mm, model, 6)
    assert [p.coefficient((v,)).trivial_part() for v in range(7)] == list(range(1, 8))


def test_oracle_validation():
    model = three_chain_model()
    with pytest.raises(OracleError, match="sigma"):
        oracle_poincare(MonomialModel(3, (1, -1)), model, 3)
    with pytest.raises(OracleError, match="unknown component"):
        oracle_poincare(MonomialModel(3, (1, -1), sigma_x=9, sigma_y=1), model, 3)
    with pytest.raises(OracleError, match="orders"):
        oracle_poincare(MonomialModel(5, (1, -1), sigma_x=3, sigma_y=1), model, 3)
    with pytest.raises(OracleError, match="axis"):
        MonomialModel(3, (1, -1), curve_axes=("diagonal",))
    with pytest.raises(OracleError, match="mode"):
        oracle_tables(z3_monomials(), model, 3, mode="nonsense")


def test_unfaithful_weights_warn():
    with pytest.warns(RuntimeWarning, match="share the factor"):
        MonomialModel(order=4, weights=(2, 2), sigma_x=1, sigma_y=1)
    # the trivial group never warns
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("error")
        MonomialModel(order=1, weights=(0, 0))
