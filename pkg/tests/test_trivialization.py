import numpy as np
import pytest

from groupoids import (GroupHom, NoSplitSection, NotCommutative,
                       NotTransitive, SearchBudgetExceeded, SectionInvalid,
                       Trivialization, alpha_fiber_group, build_phi,
                       find_hom_section, find_split_section,
                       group_pair_groupoid, is_isomorphism, isotropy_group,
                       make_cyclic, make_direct_product,
                       modular_group_groupoid, null_group_groupoid,
                       single_unit_group_groupoid, trivial_group_groupoid,
                       trivialize, validate_gg_morphism)


def check_certificate(t: Trivialization):
    c = t.source
    assert validate_gg_morphism(t.phi, c, t.target).ok
    assert is_isomorphism(t.phi)
    assert np.array_equal(t.phi.f0, np.arange(c.groupoid.base))
    assert (c.groupoid.arrows
            == c.groupoid.base ** 2 * t.isotropy.group.order)


def test_tgg_trivializes_onto_itself():
    c = trivial_group_groupoid(make_cyclic(2), make_cyclic(3))
    t = trivialize(c)
    check_certificate(t)
    # smallest admissible choice: gamma(u) = (0, 0, u), arrow id u
    assert t.gamma.tolist() == [0, 1, 2]
    # phi is then the identity relabeling
    assert np.array_equal(t.phi.f, np.arange(18))


def test_modular_gamma_values():
    c = modular_group_groupoid(6, 5)
    t = trivialize(c)
    check_certificate(t)
    # fiber arrows are (0, y) = y with beta = 5y, so gamma(u) = 5u mod 6
    assert t.gamma.tolist() == [0, 5, 4, 3, 2, 1]
    assert t.isotropy.group.order == 1
    assert t.target.groupoid.arrows == 36      # the pair structure on Z_6


@pytest.mark.parametrize("c", [
    modular_group_groupoid(8, 3),
    modular_group_groupoid(5, 4),
    single_unit_group_groupoid(make_cyclic(7)),
    single_unit_group_groupoid(make_direct_product(make_cyclic(2),
                                                   make_cyclic(2))),
    group_pair_groupoid(make_cyclic(4)),
    trivial_group_groupoid(make_cyclic(4), make_cyclic(2)),
    trivial_group_groupoid(make_direct_product(make_cyclic(2), make_cyclic(2)),
                           make_cyclic(3)),
], ids=lambda c: repr(c))
def test_trivialize_families_end_to_end(c):
    check_certificate(trivialize(c))


def test_single_unit_case_is_the_isotropy_itself():
    c = single_unit_group_groupoid(make_cyclic(6))
    t = trivialize(c)
    assert t.gamma.tolist() == [0]
    assert t.isotropy.group.order == 6
    assert np.array_equal(t.phi.f, np.arange(6))   # nothing to move


def test_phi_fixes_isotropy_pointwise():
    c = modular_group_groupoid(4, 3)
    t = trivialize(c)
    na, nb = t.isotropy.group.order, c.groupoid.base
    pos = {int(a): k for k, a in enumerate(t.isotropy.member_arrows)}
    for a in t.isotropy.member_arrows:
        assert t.phi.f[a] == (0 * na + pos[int(a)]) * nb + 0


def test_alpha_fiber_group_examples():
    c = trivial_group_groupoid(make_cyclic(2), make_cyclic(3))
    fib = alpha_fiber_group(c)
    assert fib.group.order == 6                 # (0, a, b2): 2*3 choices
    c = single_unit_group_groupoid(make_cyclic(4))
    assert alpha_fiber_group(c).group.order == 4    # the whole arrow group
    c = modular_group_groupoid(5, 4)
    assert alpha_fiber_group(c).group.order == 5


def test_not_commutative_rejected(S3):
    with pytest.raises(NotCommutative):
        trivialize(group_pair_groupoid(S3))


def test_not_transitive_rejected():
    with pytest.raises(NotTransitive) as exc:
        trivialize(null_group_groupoid(make_cyclic(2)))
    assert (0, 1) in exc.value.missing


def test_no_hom_section_for_z4_onto_z2():
    """The projection Z_4 -> Z_2 has no homomorphic section: both
    candidates for gamma(1) square to 2, not 0."""
    h = GroupHom(make_cyclic(4), make_cyclic(2), [0, 1, 0, 1])
    with pytest.raises(NoSplitSection):
        find_hom_section(h)


def test_hom_section_for_klein_four_onto_z2():
    v4 = make_direct_product(make_cyclic(2), make_cyclic(2))
    h = GroupHom(v4, make_cyclic(2), [0, 0, 1, 1])   # first coordinate
    gamma = find_hom_section(h)
    assert h.map[gamma].tolist() == [0, 1]
    assert gamma.tolist() == [0, 2]                  # smallest admissible
    # and it is a hom
    assert v4.op(gamma[1], gamma[1]) == gamma[0]


def test_non_surjective_map_has_no_section():
    h = GroupHom(make_cyclic(2), make_cyclic(4), [0, 2])
    with pytest.raises(NoSplitSection):
        find_hom_section(h)


def test_budget_exhaustion_is_distinct():
    h = GroupHom(make_cyclic(4), make_cyclic(4), np.arange(4))
    with pytest.raises(SearchBudgetExceeded):
        find_hom_section(h, budget=2)
    c = modular_group_groupoid(6, 5)
    with pytest.raises(SearchBudgetExceeded):
        trivialize(c, budget=1)
    # a sufficient budget succeeds on the same input
    check_certificate(trivialize(c, budget=100))


def test_find_split_section_matches_check():
    c = modular_group_groupoid(9, 8)
    gamma = find_split_section(c)
    target, phi = build_phi(c, gamma)
    assert validate_gg_morphism(phi, c, target).ok


def test_section_invalid_paths():
    c = modular_group_groupoid(6, 5)
    with pytest.raises(SectionInvalid):
        build_phi(c, np.arange(5))                    # wrong shape
    with pytest.raises(SectionInvalid):
        build_phi(c, np.array([6, 5, 4, 3, 2, 1]))    # 6 leaves the fiber
    with pytest.raises(SectionInvalid):
        build_phi(c, np.array([0, 5, 4, 3, 2, 2]))    # not a section at 5
    t = trivial_group_groupoid(make_cyclic(2), make_cyclic(3))
    with pytest.raises(SectionInvalid):
        build_phi(t, np.array([3, 1, 2]))             # section but not a hom


def test_group_pair_trivializes_with_trivial_isotropy():
    c = group_pair_groupoid(make_cyclic(5))
    t = trivialize(c)
    check_certificate(t)
    assert t.isotropy.group.order == 1
    assert t.gamma.tolist() == [0, 1, 2, 3, 4]        # arrows (0, u)
