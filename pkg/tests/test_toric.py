import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from desing.errors import BudgetExceeded
from desing.lattice import Cone, Fan, cone_multiplicity, is_primitive, rank
from desing.toric import resolve_fan

from oracles import hj_continued_fraction, hj_rays, hj_rays_for, hj_rays_of_cone


def test_continued_fraction_oracle():
    assert hj_continued_fraction(7, 3) == [3, 2, 2]
    assert hj_continued_fraction(5, 4) == [2, 2, 2, 2]
    assert hj_rays(2, 1) == [(1, 0)]


def test_resolve_a1():
    out, history = resolve_fan(Fan((Cone(((1, 0), (1, 2))),)))
    assert len(history) == 1 and history.rays == [(1, 1)]
    assert len(out.cones) == 2 and out.is_smooth()


def test_smooth_fan_unchanged():
    fan = Fan((Cone(((1, 0), (0, 1))), Cone(((0, 1), (-1, 0)))))
    out, history = resolve_fan(fan)
    assert out == fan and len(history) == 0


@pytest.mark.parametrize("m", range(2, 13))
def test_family_matches_hirzebruch_jung(m):
    out, history = resolve_fan(Fan((Cone(((1, 0), (1, m))),)))
    assert set(history.rays) == hj_rays_for(m) == {(1, k) for k in range(1, m)}
    assert len(out.cones) == m and out.is_smooth()


def test_general_2d_cone_contains_minimal_resolution():
    # cone((0,1),(7,-3)): 7/3 = [3,2,2], minimal resolution inserts 2 rays
    out, history = resolve_fan(Fan((Cone(((0, 1), (7, -3))),)))
    assert out.is_smooth()
    assert set(hj_rays(7, 3)[1:]) <= set(out.rays())


def test_budget_exceeded_carries_partial():
    with pytest.raises(BudgetExceeded) as err:
        resolve_fan(Fan((Cone(((1, 0), (1, 9))),)), max_steps=2)
    fan, history = err.value.partial
    assert len(history) == 2 and not fan.is_smooth()


@st.composite
def cones(draw, n):
    rays = draw(st.lists(st.tuples(*[st.integers(-4, 4)] * n).filter(is_primitive), min_size=n, max_size=n))
    assume(rank(rays) == n)
    c = Cone(tuple(rays))
    assume(cone_multiplicity(c) <= 20)
    return c


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([2, 3]).flatmap(cones))
def test_resolution_terminates_and_refines(c):
    m = cone_multiplicity(c)
    out, history = resolve_fan(Fan((c,)), max_steps=500)
    assert out.is_smooth()
    # each output cone lies inside the input cone
    for oc in out.cones:
        assert all(c.contains(r) for r in oc.rays)
    # maximal multiplicity never increases, and the number of steps is bounded
    maxima = [max(s.before) for s in history.steps] + [1]
    assert all(a >= b for a, b in zip(maxima, maxima[1:]))
    assert maxima[0] == m if history.steps else m == 1
    for s in history.steps:
        assert max(s.after) <= max(s.before)


@settings(max_examples=60, deadline=None)
@given(cones(2))
def test_2d_resolution_contains_hirzebruch_jung_rays(c):
    out, _ = resolve_fan(Fan((c,)))
    assert out.is_smooth()
    # every smooth refinement of a 2D cone contains its minimal resolution
    assert hj_rays_of_cone(*c.rays) <= set(out.rays())


@pytest.mark.parametrize("m", range(2, 13))
def test_cone_oracle_agrees_with_family(m):
    assert hj_rays_of_cone((1, 0), (1, m)) == hj_rays_for(m)
