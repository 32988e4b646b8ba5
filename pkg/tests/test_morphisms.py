import numpy as np
import pytest

from groupoids import (GroupoidMorphism, InvalidMorphism, MalformedMap,
                       compose_morphisms, identity_morphism, is_isomorphism,
                       make_cyclic, pair_groupoid, single_unit_group_groupoid,
                       validate_groupoid_morphism)


def test_identity_morphism_is_valid_iso():
    g = pair_groupoid(3)
    m = identity_morphism(g)
    rep = validate_groupoid_morphism(m)
    assert rep.ok and is_isomorphism(m)


def test_eager_validation_raises_with_report():
    g = pair_groupoid(2)
    f = np.arange(4)
    f[0] = 3   # break unit preservation and endpoints
    with pytest.raises(InvalidMorphism) as exc:
        GroupoidMorphism(source=g, target=g, f=f, f0=[0, 1])
    assert exc.value.report is not None
    assert not exc.value.report.ok


def test_shape_and_range_checks():
    g = pair_groupoid(2)
    with pytest.raises(MalformedMap):
        GroupoidMorphism(source=g, target=g, f=[0, 1, 2], f0=[0, 1])
    with pytest.raises(MalformedMap):
        GroupoidMorphism(source=g, target=g, f=[0, 1, 2, 9], f0=[0, 1])
    with pytest.raises(MalformedMap):
        GroupoidMorphism(source=g, target=g, f=np.arange(4), f0=[0, 7])


def test_collapse_morphism_to_single_unit():
    """Collapsing the pair groupoid of n onto the one-point groupoid."""
    g = pair_groupoid(3)
    t = single_unit_group_groupoid(make_cyclic(1)).groupoid
    m = GroupoidMorphism(source=g, target=t, f=np.zeros(9, dtype=int),
                         f0=np.zeros(3, dtype=int))
    assert validate_groupoid_morphism(m).ok
    assert not is_isomorphism(m)


def test_multiplicativity_violation_witnessed():
    g = pair_groupoid(3)
    # swap two base points in f0 only: endpoints break
    m = GroupoidMorphism(source=g, target=g, f=np.arange(9), f0=[1, 0, 2],
                         check=False)
    rep = validate_groupoid_morphism(m)
    assert "endpoints-alpha" in rep.counts or "endpoints-beta" in rep.counts


def test_compose_morphisms():
    g = pair_groupoid(2)
    swap_f = np.array([3, 2, 1, 0])   # relabel points 0<->1
    swap = GroupoidMorphism(source=g, target=g, f=swap_f, f0=[1, 0])
    assert is_isomorphism(swap)
    twice = compose_morphisms(swap, swap)
    assert np.array_equal(twice.f, np.arange(4))
    assert np.array_equal(twice.f0, np.arange(2))
    assert validate_groupoid_morphism(twice).ok


def test_compose_requires_chained_endpoints():
    g2, g3 = pair_groupoid(2), pair_groupoid(3)
    a = identity_morphism(g2)
    b = identity_morphism(g3)
    with pytest.raises(InvalidMorphism):
        compose_morphisms(b, a)


def test_derived_checks_flag_internal_inconsistency_shape():
    """A morphism failing only the derived unit law is reported as an
    internal inconsistency (the defining conditions imply it)."""
    # build a fake "morphism" by hand onto a 2-arrow groupoid where the
    # defining checks pass vacuously but a derived one fails is impossible
    # for honest structures; instead check the flag stays unset normally.
    g = pair_groupoid(3)
    rep = validate_groupoid_morphism(identity_morphism(g))
    assert not rep.internal_inconsistency
