import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupoids import (BadBaseId, BadCarrier, FiniteGroupoid,
                       MalformedStructure, NotComposable, alpha_fiber,
                       beta_fiber, check_hom, composable_pairs,
                       direct_product_groupoid, is_transitive,
                       isotropy_bundle, isotropy_group, isotropy_transport,
                       pair_groupoid, validate_groupoid)

from conftest import oracle_groupoid_ok, oracle_transitive


@pytest.fixture
def p3():
    return pair_groupoid(3)


def test_pair_groupoid_by_hand(p3):
    # arrow (x, y) -> x*3 + y
    assert p3.arrows == 9 and p3.base == 3
    assert p3.compose(1, 5) == 2          # (0,1).(1,2) = (0,2)
    assert p3.unit(2) == 8                # (2,2)
    assert p3.invert(5) == 7              # (1,2)^-1 = (2,1)
    assert int(p3.alpha[5]) == 1 and int(p3.beta[5]) == 2
    assert validate_groupoid(p3).ok
    assert oracle_groupoid_ok(p3)


def test_not_composable_is_loud(p3):
    with pytest.raises(NotComposable):
        p3.compose(1, 1)   # beta(0,1)=1 != alpha(0,1)=0


def test_mul_dict_and_canonical_triples(p3):
    assert p3.mul[(1, 5)] == 2
    tri = p3.canonical_mul_triples()
    assert tri.shape == (27, 3)
    assert np.array_equal(tri, tri[np.lexsort((tri[:, 1], tri[:, 0]))])
    assert len(composable_pairs(p3)) == 27
    assert composable_pairs(p3) == sorted(
        (int(x), int(y)) for (x, y) in p3.mul)


def test_malformed_structures_rejected():
    ok = dict(arrows=2, base=1, alpha=[0, 0], beta=[0, 0], eps=[0],
              inv=[0, 1], mul_x=[0, 0, 1, 1], mul_y=[0, 1, 0, 1],
              mul_z=[0, 1, 1, 0])
    FiniteGroupoid(**ok)
    with pytest.raises(MalformedStructure):
        FiniteGroupoid(**{**ok, "alpha": [0]})
    with pytest.raises(MalformedStructure):
        FiniteGroupoid(**{**ok, "eps": [3]})
    with pytest.raises(MalformedStructure):
        FiniteGroupoid(**{**ok, "arrows": 0, "alpha": [], "beta": [],
                          "inv": [], "mul_x": [], "mul_y": [], "mul_z": []})


def test_validator_flags_each_axiom():
    p = pair_groupoid(2)

    def rebuild(**kw):
        return FiniteGroupoid(
            arrows=4, base=2,
            alpha=kw.get("alpha", p.alpha), beta=kw.get("beta", p.beta),
            eps=kw.get("eps", p.eps), inv=kw.get("inv", p.inv),
            mul_x=kw.get("mul_x", p.mul_x), mul_y=kw.get("mul_y", p.mul_y),
            mul_z=kw.get("mul_z", p.mul_z))

    rep = validate_groupoid(rebuild(alpha=[0, 0, 0, 0]))
    assert "alpha-surjective" in rep.counts
    rep = validate_groupoid(rebuild(eps=[0, 0]))
    assert "eps-injective" in rep.counts
    mz = np.array(p.mul_z)
    mz[0] = (mz[0] + 1) % 4
    rep = validate_groupoid(rebuild(mul_z=mz))
    assert not rep.ok
    iv = np.array(p.inv)
    iv[1] = 1
    rep = validate_groupoid(rebuild(inv=iv))
    assert "G3-left" in rep.counts or "G3-right" in rep.counts
    # dropping a composable pair is a domain failure
    rep = validate_groupoid(rebuild(mul_x=p.mul_x[1:], mul_y=p.mul_y[1:],
                                    mul_z=p.mul_z[1:]))
    assert "mul-domain-missing" in rep.counts
    # adding a non-composable pair likewise
    rep = validate_groupoid(rebuild(
        mul_x=np.append(p.mul_x, 0), mul_y=np.append(p.mul_y, 2),
        mul_z=np.append(p.mul_z, 0)))
    assert "mul-domain-extra" in rep.counts


def test_validator_matches_oracle_on_mutants():
    p = pair_groupoid(2)
    for i in range(p.mul_z.size):
        mz = np.array(p.mul_z)
        mz[i] = (mz[i] + 1) % p.arrows
        cand = FiniteGroupoid(arrows=4, base=2, alpha=p.alpha, beta=p.beta,
                              eps=p.eps, inv=p.inv, mul_x=p.mul_x,
                              mul_y=p.mul_y, mul_z=mz)
        assert validate_groupoid(cand).ok == oracle_groupoid_ok(cand)


def test_g1_witness_is_genuine():
    p = pair_groupoid(3)
    mz = np.array(p.mul_z)
    mz[4] = (mz[4] + 3) % 9
    cand = FiniteGroupoid(arrows=9, base=3, alpha=p.alpha, beta=p.beta,
                          eps=p.eps, inv=p.inv, mul_x=p.mul_x,
                          mul_y=p.mul_y, mul_z=mz)
    rep = validate_groupoid(cand)
    assert not rep.ok
    if "G1" in rep.witnesses:
        x, y, z = rep.witnesses["G1"][0]
        m = cand.mul
        left = m.get((m[(x, y)], z))
        right_inner = m.get((y, z))
        right = m.get((x, right_inner)) if right_inner is not None else None
        assert left != right


def test_fibers(p3):
    assert alpha_fiber(p3, 1) == [3, 4, 5]
    assert beta_fiber(p3, 1) == [1, 4, 7]
    with pytest.raises(BadBaseId):
        alpha_fiber(p3, 3)
    with pytest.raises(BadBaseId):
        beta_fiber(p3, -1)


def test_isotropy_group_trivial_for_pair_groupoid(p3):
    iso = isotropy_group(p3, 1)
    assert iso.group.order == 1
    assert iso.to_arrow(0) == 4   # arrow (1,1)
    with pytest.raises(BadBaseId):
        isotropy_group(p3, 9)


def test_isotropy_group_from_single_unit_structure():
    from groupoids import make_cyclic, single_unit_group_groupoid
    gg = single_unit_group_groupoid(make_cyclic(5))
    iso = isotropy_group(gg.groupoid, 0)
    assert iso.group.order == 5
    assert np.array_equal(iso.group.table, make_cyclic(5).table)


def test_isotropy_bundle(p3):
    bundle = isotropy_bundle(p3)
    assert bundle.arrows == 3 and bundle.base == 3
    assert np.array_equal(bundle.alpha, bundle.beta)
    assert validate_groupoid(bundle).ok


def test_isotropy_transport(p3):
    h = isotropy_transport(p3, 0, 2, carrier=2)   # arrow (0,2)
    rep = check_hom(h)
    assert rep.ok and rep.injective and rep.surjective
    with pytest.raises(BadCarrier):
        isotropy_transport(p3, 0, 2, carrier=4)   # (1,1) has wrong endpoints


def test_isotropy_transport_nontrivial():
    from groupoids import make_cyclic, trivial_group_groupoid
    gg = trivial_group_groupoid(make_cyclic(3), make_cyclic(2))
    g = gg.groupoid
    carrier = [x for x in range(g.arrows)
               if g.alpha[x] == 0 and g.beta[x] == 1][0]
    h = isotropy_transport(g, 0, 1, carrier)
    rep = check_hom(h)
    assert rep.ok and rep.injective and rep.surjective
    assert h.source.order == h.target.order == 3


def test_direct_product_groupoid_componentwise(p3):
    p2 = pair_groupoid(2)
    prod = direct_product_groupoid(p3, p2)
    assert prod.arrows == 36 and prod.base == 6
    assert validate_groupoid(prod).ok
    # arrow (x, x') -> x*4 + x'; compose componentwise
    left = p3.compose(1, 5)
    right = p2.compose(1, 3)
    assert prod.compose(1 * 4 + 1, 5 * 4 + 3) == left * 4 + right


@settings(max_examples=25, deadline=None)
@given(n=st.integers(1, 6))
def test_pair_groupoid_transitive_and_valid(n):
    g = pair_groupoid(n)
    assert validate_groupoid(g).ok
    ok, missing = is_transitive(g)
    assert ok and missing == []
    assert oracle_transitive(g)


def test_transitivity_missing_pairs():
    from groupoids import make_cyclic, null_group_groupoid
    g = null_group_groupoid(make_cyclic(3)).groupoid
    ok, missing = is_transitive(g)
    assert not ok
    assert (0, 1) in missing and (2, 0) in missing
    assert len(missing) == 6
    assert oracle_transitive(g) == ok
