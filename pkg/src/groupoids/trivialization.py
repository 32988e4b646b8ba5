"""Trivialization of transitive commutative group-groupoids.

Pipeline: restrict the target map beta to the alpha-fiber over the base
unit, search for a homomorphic section gamma of that restriction, and use
it to build the isomorphism

    phi(x) = gamma(alpha(x)) . x . gamma(beta(x))^-1

(the inverse is groupoid inversion) onto the trivial group-groupoid built
from the isotropy group at the base unit. The construction is verified
exhaustively afterwards; a verification failure after a successful build is
reported as an internal inconsistency, since it cannot happen if the
implementation is correct.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (InternalInconsistency, NoSplitSection, NotCommutative,
                     NotTransitive, SearchBudgetExceeded, SectionInvalid)
from .groupoid import IsotropyGroup, is_transitive, isotropy_group
from .groups import EmbeddedGroup, GroupHom, subgroup_from_members
from .group_groupoid import (GroupGroupoid, is_commutative_gg,
                             validate_gg_morphism)
from .morphisms import GroupoidMorphism, is_isomorphism
from .constructions import trivial_group_groupoid

DEFAULT_SEARCH_BUDGET = 10 ** 6


@dataclass
class Trivialization:
    """Certificate of a successful trivialization."""

    source: GroupGroupoid
    e0: int
    alpha_fiber: EmbeddedGroup       # the group on alpha^-1(e0)
    gamma: np.ndarray                # base id -> arrow id inside alpha^-1(e0)
    isotropy: IsotropyGroup          # G(e0)
    target: GroupGroupoid            # trivial gg on (isotropy, base group)
    phi: GroupoidMorphism


def alpha_fiber_group(c: GroupGroupoid) -> EmbeddedGroup:
    """The subgroup of the arrow group on alpha^-1(e0): the kernel of
    alpha, hence closed; re-indexed densely (members[i] = arrow id)."""
    e0 = c.base_group.identity
    members = np.nonzero(c.groupoid.alpha == e0)[0]
    return subgroup_from_members(c.arrow_group, members)


def find_hom_section(h: GroupHom, budget: int = DEFAULT_SEARCH_BUDGET) -> np.ndarray:
    """A right inverse of h that is itself a homomorphism, or proof of
    absence.

    Deterministic backtracking: target elements are assigned preimages in
    ascending id order, trying the smallest admissible source id first, and
    pruning as soon as a partial assignment violates
    gamma(u+v) = gamma(u)+gamma(v) on already-assigned ids. Raises
    NoSplitSection when the exhaustive search finishes empty and
    SearchBudgetExceeded when ``budget`` partial assignments were tried
    first."""
    src, tgt = h.source, h.target
    n = tgt.order
    candidates = [np.nonzero(h.map == v)[0] for v in range(n)]
    if any(c.size == 0 for c in candidates):
        raise NoSplitSection("the map is not surjective; no section exists")
    gamma = np.full(n, -1, dtype=np.int64)
    tried = 0

    def consistent(v: int) -> bool:
        # check every constraint involving v among assigned ids
        for u in range(n):
            if gamma[u] < 0:
                continue
            for a, b in ((u, v), (v, u)):
                s = tgt.op(a, b)
                if gamma[s] >= 0 and gamma[s] != src.op(gamma[a], gamma[b]):
                    return False
        return True

    def search(v: int) -> bool:
        nonlocal tried
        if v == n:
            return True
        for cand in candidates[v]:
            tried += 1
            if tried > budget:
                raise SearchBudgetExceeded(
                    f"section search stopped after {budget} partial "
                    f"assignments")
            gamma[v] = cand
            if consistent(v) and search(v + 1):
                return True
            gamma[v] = -1
        return False

    if not search(0):
        raise NoSplitSection(
            "exhaustive search: no homomorphic section of the map exists")
    return gamma


def find_split_section(c: GroupGroupoid,
                       budget: int = DEFAULT_SEARCH_BUDGET) -> np.ndarray:
    """A homomorphic section gamma of beta restricted to alpha^-1(e0),
    as an array base id -> arrow id. Checks the theorem hypotheses first."""
    if not is_commutative_gg(c):
        raise NotCommutative(
            "arrow and base groups must both be commutative")
    transitive, missing = is_transitive(c.groupoid)
    if not transitive:
        raise NotTransitive(
            f"anchor map misses {len(missing)} base pair(s), e.g. "
            f"{missing[:4]}", missing=missing)
    fiber = alpha_fiber_group(c)
    beta_restricted = GroupHom(fiber.group, c.base_group,
                               c.groupoid.beta[fiber.members])
    local = find_hom_section(beta_restricted, budget)
    return fiber.members[local].astype(np.int64)


def _check_section(c: GroupGroupoid, gamma: np.ndarray) -> None:
    g = c.groupoid
    gamma = np.asarray(gamma)
    if gamma.shape != (g.base,):
        raise SectionInvalid("gamma must assign one arrow per base id")
    e0 = c.base_group.identity
    if np.any(g.alpha[gamma] != e0):
        raise SectionInvalid("gamma image must lie in the alpha-fiber of e0")
    bad = np.nonzero(g.beta[gamma] != np.arange(g.base))[0]
    if bad.size:
        raise SectionInvalid(
            f"not a section of beta: beta(gamma({int(bad[0])})) = "
            f"{int(g.beta[gamma[bad[0]]])}")
    T, T0 = c.arrow_group.table, c.base_group.table
    if not np.array_equal(gamma[T0], T[np.ix_(gamma, gamma)]):
        raise SectionInvalid("gamma is not a group homomorphism")
    if int(g.eps[e0]) != c.arrow_group.identity:
        raise SectionInvalid(
            "eps(e0) is not the arrow-group unit; the input is not a valid "
            "group-groupoid")


def build_phi(c: GroupGroupoid, gamma: np.ndarray):
    """The trivializing morphism determined by a homomorphic section.

    Returns (target, phi) where target is the trivial group-groupoid on
    (G(e0), G0) and phi fixes the base pointwise."""
    _check_section(c, gamma)
    g = c.groupoid
    e0 = c.base_group.identity
    iso = isotropy_group(g, e0)
    target = trivial_group_groupoid(iso.group, c.base_group)

    M = g._dense_mul
    ids = np.arange(g.arrows)
    left = M[gamma[g.alpha], ids]
    if np.any(left < 0):
        raise SectionInvalid("gamma(alpha(x)) and x are not composable")
    middle = M[left, g.inv[gamma[g.beta]]]
    if np.any(middle < 0):
        raise SectionInvalid("x.gamma(beta(x))^-1 is not composable")
    # certify the middle factor lies in the isotropy group at e0
    pos = -np.ones(g.arrows, dtype=np.int64)
    pos[iso.member_arrows] = np.arange(iso.member_arrows.size)
    if np.any(pos[middle] < 0):
        raise SectionInvalid(
            "gamma(alpha(x)).x.gamma(beta(x))^-1 left the isotropy group")
    na, nb = iso.group.order, g.base
    f = (g.alpha.astype(np.int64) * na + pos[middle]) * nb + g.beta
    phi = GroupoidMorphism(source=g, target=target.groupoid, f=f,
                           f0=np.arange(g.base), check=False)
    return target, phi


def trivialize(c: GroupGroupoid,
               budget: int = DEFAULT_SEARCH_BUDGET) -> Trivialization:
    """Full pipeline with exhaustive post-verification.

    Raises NotCommutative / NotTransitive / NoSplitSection when the
    corresponding hypothesis fails, SearchBudgetExceeded when the section
    search gives up, and InternalInconsistency if the constructed phi fails
    verification (which would contradict a theorem, hence flags a bug
    here, not in the input)."""
    gamma = find_split_section(c, budget)
    target, phi = build_phi(c, gamma)
    rep = validate_gg_morphism(phi, c, target)
    if not rep.ok:
        raise InternalInconsistency(
            "constructed phi is not a group-groupoid morphism:\n"
            + rep.summary())
    if not is_isomorphism(phi):
        raise InternalInconsistency("constructed phi is not bijective")
    e0 = c.base_group.identity
    iso = isotropy_group(c.groupoid, e0)
    if c.groupoid.arrows != c.groupoid.base ** 2 * iso.group.order:
        raise InternalInconsistency(
            f"|G| = {c.groupoid.arrows} != |G0|^2 * |G(e0)| = "
            f"{c.groupoid.base ** 2 * iso.group.order}")
    return Trivialization(source=c, e0=e0, alpha_fiber=alpha_fiber_group(c),
                          gamma=gamma, isotropy=iso, target=target, phi=phi)
