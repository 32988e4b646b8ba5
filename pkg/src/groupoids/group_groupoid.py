"""Group-groupoids: a groupoid whose arrow and base sets also carry group
structures, with all structure functions compatible.

Two definitions are implemented as separate code paths and kept in
agreement by tests:

* validate_def24 checks that alpha, beta, eps, i are group homomorphisms
  and that the interchange law (x.y)+(z.t) = (x+z).(y+t) holds over every
  pair of composable pairs.
* validate_def23 realizes the group operation, the unit selection and the
  group inversion as groupoid morphisms (the operation from the direct
  product groupoid GxG, the unit from the one-point groupoid) and runs the
  groupoid-morphism validator on each.

The interchange law is quadratic in the number of composable pairs.  Small
structures get the literal quantification; above a size threshold an
exact generator reduction is used: with alpha and beta verified as
homomorphisms the composable pairs form a subgroup of G+G, and a map out
of a group is a homomorphism as soon as f(p+g) = f(p)+f(g) holds for every
element p and every generator g (induction on word length in the
generators). Any violation found this way is a genuine interchange
witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import InvalidInput, MalformedStructure
from .groupoid import FiniteGroupoid, direct_product_groupoid
from .groups import FiniteGroup, GroupHom, check_hom, is_commutative, validate_group
from .morphisms import GroupoidMorphism, validate_groupoid_morphism
from .report import DEFAULT_WITNESS_CAP, PropertyReport, ValidationReport

# literal pairs-of-pairs quantification while k^2 stays below this
_LITERAL_INTERCHANGE_MAX = 4_000_000
# materialize the product groupoid for the morphism route below this k^2
_MATERIALIZE_MAX = 4_000_000


@dataclass(eq=False)
class GroupGroupoid:
    """A groupoid plus group structures on its arrow and base id spaces.

    The groups share the groupoid's id spaces directly (the interchange
    law mixes both operations on the same elements, so a relabeling layer
    would only obscure it). ``certificates`` records which validators have
    passed this instance.
    """

    groupoid: FiniteGroupoid
    arrow_group: FiniteGroup
    base_group: FiniteGroup
    certificates: set = field(default_factory=set)

    def __post_init__(self):
        if self.arrow_group.order != self.groupoid.arrows:
            raise MalformedStructure(
                f"arrow group order {self.arrow_group.order} != "
                f"arrow count {self.groupoid.arrows}")
        if self.base_group.order != self.groupoid.base:
            raise MalformedStructure(
                f"base group order {self.base_group.order} != "
                f"base count {self.groupoid.base}")

    def __eq__(self, other):
        return (isinstance(other, GroupGroupoid)
                and self.groupoid == other.groupoid
                and self.arrow_group == other.arrow_group
                and self.base_group == other.base_group)

    def __repr__(self):
        return (f"GroupGroupoid(arrows={self.groupoid.arrows}, "
                f"base={self.groupoid.base})")


# --- interchange law -------------------------------------------------------

def _pair_group_index(g: FiniteGroupoid) -> np.ndarray:
    """Dense (x, y) -> composable-pair index, -1 off the composable set."""
    idx = np.full((g.arrows, g.arrows), -1, dtype=np.int32)
    idx[g.mul_x, g.mul_y] = np.arange(g.mul_x.size, dtype=np.int32)
    return idx


def _pair_generators(g: FiniteGroupoid, plus: np.ndarray, e: int,
                     idx: np.ndarray) -> list[int]:
    """Generating set for the group of composable pairs under componentwise +.

    Assumes alpha and beta are verified homomorphisms, so the set is closed
    and (e, e) is its identity."""
    k = g.mul_x.size
    reached = np.zeros(k, dtype=bool)
    reached[idx[e, e]] = True
    gens: list[int] = []
    px, py = g.mul_x, g.mul_y

    def step(cur):
        before = reached.copy()
        for gi in gens:
            nxt = idx[plus[px[cur], px[gi]], plus[py[cur], py[gi]]]
            reached[nxt[nxt >= 0]] = True
        return np.flatnonzero(reached & ~before)

    for i in range(k):
        if reached[i]:
            continue
        gens.append(i)
        reached[i] = True
        frontier = np.nonzero(reached)[0]
        while frontier.size:
            frontier = step(frontier)
    return gens


def _interchange_violations(g: FiniteGroupoid, plus: np.ndarray, e: int,
                            cap: int, endpoints_are_homs: bool):
    """Exhaustive interchange check; returns (witnesses, total, complete).

    Witnesses are ((x, y), (z, t)) pairs of composable pairs. ``complete``
    is False only when the structure is too large for the literal check and
    the generator reduction is unsound because alpha/beta are not
    homomorphisms (in which case the caller already has hom violations)."""
    k = int(g.mul_x.size)
    px, py, pp = g.mul_x, g.mul_y, g.mul_z
    M = g._dense_mul

    if k * k <= _LITERAL_INTERCHANGE_MAX:
        wit = np.empty((cap, 2), dtype=np.int32)
        total, w = _kernels.interchange_literal(M, plus, px, py, pp, wit, cap)
        out = [((int(px[i]), int(py[i])), (int(px[j]), int(py[j])))
               for i, j in wit[:w]]
        return out, total, True

    if not endpoints_are_homs:
        return [], 0, False

    idx = _pair_group_index(g)
    gens = _pair_generators(g, plus, e, idx)
    out = []
    total = 0
    if not gens:
        # the only composable pair is (e, e); one instance remains
        i = int(idx[e, e])
        if plus[pp[i], pp[i]] != pp[i]:
            out.append(((e, e), (e, e)))
            total = 1
        return out, total, True
    for gi in gens:
        lhs = plus[pp, pp[gi]]
        rhs = M[plus[px, px[gi]], plus[py, py[gi]]]
        bad = np.nonzero(lhs != rhs)[0]
        total += int(bad.size)
        for i in bad[: max(0, cap - len(out))]:
            out.append(((int(px[i]), int(py[i])), (int(px[gi]), int(py[gi]))))
    return out, total, True


# --- the two definitions ----------------------------------------------------

def _structure_homs(c: GroupGroupoid):
    g = c.groupoid
    return [
        ("alpha", GroupHom(c.arrow_group, c.base_group, g.alpha)),
        ("beta", GroupHom(c.arrow_group, c.base_group, g.beta)),
        ("eps", GroupHom(c.base_group, c.arrow_group, g.eps)),
        ("i", GroupHom(c.arrow_group, c.arrow_group, g.inv)),
    ]


def validate_def24(c: GroupGroupoid,
                   cap: int = DEFAULT_WITNESS_CAP) -> ValidationReport:
    """Homomorphism-style validation: both groups valid, the four structure
    functions are group homomorphisms, and the interchange law holds.

    Groupoid validity is a precondition and is not re-checked here."""
    rep = ValidationReport(cap=cap)
    rep.merge(validate_group(c.arrow_group, cap), prefix="arrow-group-")
    rep.merge(validate_group(c.base_group, cap), prefix="base-group-")

    for name, hom in _structure_homs(c):
        hrep = check_hom(hom, cap)
        rep.merge(hrep, prefix=f"{name}-")

    endpoints_ok = "alpha-hom" not in rep.counts and "beta-hom" not in rep.counts
    wit, total, complete = _interchange_violations(
        c.groupoid, c.arrow_group.table, c.arrow_group.identity, cap,
        endpoints_are_homs=endpoints_ok)
    rep.add_many("interchange", wit, total=total)
    if not complete:
        rep.add("interchange-unchecked",
                ("alpha/beta are not homomorphisms; pair set is not closed",))
    if rep.ok:
        c.certificates.add("def24")
    return rep


def _one_point_groupoid() -> FiniteGroupoid:
    return FiniteGroupoid(arrows=1, base=1, alpha=[0], beta=[0], eps=[0],
                          inv=[0], mul_x=[0], mul_y=[0], mul_z=[0])


def _validate_omega_virtual(c: GroupGroupoid, cap: int) -> ValidationReport:
    """The group operation as a groupoid morphism from GxG, checked without
    materializing the product groupoid's multiplication table."""
    rep = ValidationReport(cap=cap)
    g = c.groupoid
    T, T0 = c.arrow_group.table, c.base_group.table

    for sfun, label in ((g.alpha, "endpoints-alpha"), (g.beta, "endpoints-beta")):
        bad = np.nonzero(sfun[T] != T0[np.ix_(sfun, sfun)])
        rep.add_many(label,
                     [(int(x) * g.arrows + int(z),)
                      for x, z in zip(bad[0][:cap], bad[1][:cap])],
                     total=int(bad[0].size))

    endpoints_ok = rep.ok
    wit, total, complete = _interchange_violations(
        g, T, c.arrow_group.identity, cap, endpoints_are_homs=endpoints_ok)
    # report with product-groupoid arrow ids (pairs (x,z) and (y,t))
    A = g.arrows
    rep.add_many("multiplicative",
                 [(x * A + z, y * A + t) for (x, y), (z, t) in wit],
                 total=total)
    if not complete:
        rep.add("multiplicative-unchecked",
                ("endpoint conditions fail; composable set is not closed",))
    defining_ok = rep.ok

    bad = np.nonzero(T[np.ix_(g.eps, g.eps)] != g.eps[T0])
    rep.add_many("derived-units",
                 [(int(u) * g.base + int(v),)
                  for u, v in zip(bad[0][:cap], bad[1][:cap])],
                 total=int(bad[0].size))
    bad = np.nonzero(T[np.ix_(g.inv, g.inv)] != g.inv[T])
    rep.add_many("derived-inverses",
                 [(int(x) * A + int(z),)
                  for x, z in zip(bad[0][:cap], bad[1][:cap])],
                 total=int(bad[0].size))
    if defining_ok and not rep.ok:
        rep.internal_inconsistency = True
    return rep


def validate_def23(c: GroupGroupoid,
                   cap: int = DEFAULT_WITNESS_CAP) -> ValidationReport:
    """Morphism-style validation: both groups valid and the three group
    operations (binary, unit selection, inversion) are groupoid morphisms.

    The binary operation lives on the direct product groupoid GxG, which is
    built explicitly when its multiplication table fits the size budget;
    beyond that the same morphism conditions are evaluated against the
    product structure computed on the fly."""
    rep = ValidationReport(cap=cap)
    g = c.groupoid
    rep.merge(validate_group(c.arrow_group, cap), prefix="arrow-group-")
    rep.merge(validate_group(c.base_group, cap), prefix="base-group-")

    k = int(g.mul_x.size)
    if k * k <= _MATERIALIZE_MAX:
        square = direct_product_groupoid(g, g)
        omega = GroupoidMorphism(source=square, target=g,
                                 f=c.arrow_group.table.reshape(-1),
                                 f0=c.base_group.table.reshape(-1), check=False)
        rep.merge(validate_groupoid_morphism(omega, cap), prefix="omega-")
    else:
        rep.merge(_validate_omega_virtual(c, cap), prefix="omega-")

    point = _one_point_groupoid()
    nu = GroupoidMorphism(source=point, target=g,
                          f=[c.arrow_group.identity],
                          f0=[c.base_group.identity], check=False)
    rep.merge(validate_groupoid_morphism(nu, cap), prefix="nu-")

    sigma = GroupoidMorphism(source=g, target=g,
                             f=c.arrow_group.inverse,
                             f0=c.base_group.inverse, check=False)
    rep.merge(validate_groupoid_morphism(sigma, cap), prefix="sigma-")

    if rep.ok:
        c.certificates.add("def23")
    return rep


# --- derived property suite --------------------------------------------------

def check_prop21(c: GroupGroupoid,
                 cap: int = DEFAULT_WITNESS_CAP) -> PropertyReport:
    """Exhaustive verification of the six compatibility law groups that
    follow from the definition: interchange; alpha, beta, eps, i are group
    homomorphisms preserving units and inverses; and inversion distributes
    over the groupoid multiplication.

    Every law is quantified over its full domain; the input must already
    carry a validation certificate."""
    if "def24" not in c.certificates and "def23" not in c.certificates:
        raise InvalidInput("structure has no validation certificate; "
                           "run validate_def24 or validate_def23 first")
    rep = PropertyReport(cap=cap)
    g = c.groupoid
    T, T0 = c.arrow_group.table, c.base_group.table
    e, e0 = c.arrow_group.identity, c.base_group.identity
    sbar, s0bar = c.arrow_group.inverse, c.base_group.inverse

    wit, total, _ = _interchange_violations(g, T, e, cap, endpoints_are_homs=True)
    rep.add_many("interchange", wit, total=total)

    hom_laws = [
        ("source", g.alpha, T0, e0, s0bar),
        ("target", g.beta, T0, e0, s0bar),
        ("inversion", g.inv, T, e, sbar),
    ]
    for label, fmap, ttab, te, tbar in hom_laws:
        bad = np.nonzero(fmap[T] != ttab[np.ix_(fmap, fmap)])
        rep.add_many(f"{label}-additive",
                     [(int(x), int(y)) for x, y in zip(bad[0][:cap], bad[1][:cap])],
                     total=int(bad[0].size))
        if fmap[e] != te:
            rep.add(f"{label}-unit", (int(e),))
        bad = np.nonzero(fmap[sbar] != tbar[fmap])[0]
        rep.add_many(f"{label}-negation",
                     [(int(x),) for x in bad[:cap]], total=int(bad.size))

    bad = np.nonzero(g.eps[T0] != T[np.ix_(g.eps, g.eps)])
    rep.add_many("unit-inclusion-additive",
                 [(int(u), int(v)) for u, v in zip(bad[0][:cap], bad[1][:cap])],
                 total=int(bad[0].size))
    if g.eps[e0] != e:
        rep.add("unit-inclusion-unit", (int(e0),))
    bad = np.nonzero(g.eps[s0bar] != sbar[g.eps])[0]
    rep.add_many("unit-inclusion-negation",
                 [(int(u),) for u in bad[:cap]], total=int(bad.size))

    # group negation distributes over the groupoid multiplication
    M = g._dense_mul
    bad = np.nonzero(M[sbar[g.mul_x], sbar[g.mul_y]] != sbar[g.mul_z])[0]
    rep.add_many("negation-multiplicative",
                 [(int(g.mul_x[i]), int(g.mul_y[i])) for i in bad[:cap]],
                 total=int(bad.size))
    return rep


def is_commutative_gg(c: GroupGroupoid) -> bool:
    return is_commutative(c.arrow_group) and is_commutative(c.base_group)


def validate_gg_morphism(h: GroupoidMorphism, src: GroupGroupoid,
                         tgt: GroupGroupoid,
                         cap: int = DEFAULT_WITNESS_CAP) -> ValidationReport:
    """A group-groupoid morphism is a groupoid morphism whose arrow and
    base maps are additionally group homomorphisms."""
    from .errors import EndpointMismatch
    if h.source != src.groupoid or h.target != tgt.groupoid:
        raise EndpointMismatch("morphism endpoints do not match the given "
                               "group-groupoids")
    rep = ValidationReport(cap=cap)
    rep.merge(validate_groupoid_morphism(h, cap))
    rep.merge(check_hom(GroupHom(src.arrow_group, tgt.arrow_group, h.f), cap),
              prefix="arrow-group-")
    rep.merge(check_hom(GroupHom(src.base_group, tgt.base_group, h.f0), cap),
              prefix="base-group-")
    return rep
