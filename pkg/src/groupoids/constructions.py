"""Named groupoid and group-groupoid constructions with fixed id encodings.

Every constructor documents its id encoding in a CanonicalEncoding record
(also attached to the returned structure as ``.encoding``) so each element
of an output can be decoded back to its semantic tuple bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (BadTypeParameter, InvalidOrder, NonCommutativeGroup,
                     NotEpimorphism)
from .groupoid import FiniteGroupoid, direct_product_groupoid
from .groups import (FiniteGroup, GroupHom, check_hom, is_commutative,
                     make_cyclic, make_direct_product, noncommuting_pair)
from .group_groupoid import GroupGroupoid
from .morphisms import GroupoidMorphism


@dataclass(frozen=True)
class CanonicalEncoding:
    """How a construction packs semantic tuples into dense ids."""

    construction: str
    params: tuple
    arrow_formula: str
    base_formula: str


def _attach(obj, enc: CanonicalEncoding):
    obj.encoding = enc
    return obj


# --- basic groupoids ---------------------------------------------------------

def pair_groupoid(n: int) -> FiniteGroupoid:
    """Arrows are ordered pairs (x, y) over a set of size n, with
    (x, y).(y, z) = (x, z); arrow id = x*n + y."""
    if n < 1:
        raise InvalidOrder(f"pair groupoid needs a nonempty set, got n={n}")
    ids = np.arange(n * n, dtype=np.int64)
    x, y = ids // n, ids % n
    # composable pairs: ((x, y), (y, z)) -> (x, z)
    a = np.repeat(np.arange(n, dtype=np.int64), n * n)
    b = np.tile(np.repeat(np.arange(n, dtype=np.int64), n), n)
    c = np.tile(np.arange(n, dtype=np.int64), n * n)
    g = FiniteGroupoid(
        arrows=n * n, base=n,
        alpha=x, beta=y,
        eps=np.arange(n, dtype=np.int64) * (n + 1),
        inv=y * n + x,
        mul_x=a * n + b, mul_y=b * n + c, mul_z=a * n + c)
    return _attach(g, CanonicalEncoding(
        "pair", (n,), "(x, y) -> x*n + y", "point x -> x"))


def null_group_groupoid(g0: FiniteGroup) -> GroupGroupoid:
    """The group g0 seen as a group-groupoid over itself: one arrow per
    element, all structure maps the identity, u.u = u."""
    n = g0.order
    ids = np.arange(n, dtype=np.int64)
    gpd = FiniteGroupoid(arrows=n, base=n, alpha=ids, beta=ids, eps=ids,
                         inv=ids, mul_x=ids, mul_y=ids, mul_z=ids)
    gg = GroupGroupoid(groupoid=gpd, arrow_group=g0, base_group=g0)
    return _attach(gg, CanonicalEncoding(
        "null", (n,), "element u -> u", "element u -> u"))


def single_unit_group_groupoid(g: FiniteGroup) -> GroupGroupoid:
    """A commutative group as a group-groupoid over a one-point base; the
    groupoid multiplication coincides with the group operation."""
    if not is_commutative(g):
        x, y = noncommuting_pair(g)
        e = g.identity
        # with m = + the interchange instance ((e,x),(y,e)) evaluates to
        # x+y on one side and y+x on the other
        raise NonCommutativeGroup(
            f"group is not commutative: {x}+{y} = {g.op(x, y)} but "
            f"{y}+{x} = {g.op(y, x)}; interchange fails on the composable "
            f"pairs (({e},{x}), ({y},{e}))",
            witness=((e, x), (y, e)))
    n = g.order
    mx, my = np.divmod(np.arange(n * n, dtype=np.int64), n)
    gpd = FiniteGroupoid(
        arrows=n, base=1,
        alpha=np.zeros(n, dtype=np.int64), beta=np.zeros(n, dtype=np.int64),
        eps=[g.identity], inv=g.inverse,
        mul_x=mx, mul_y=my, mul_z=g.table.reshape(-1))
    gg = GroupGroupoid(groupoid=gpd, arrow_group=g, base_group=make_cyclic(1))
    return _attach(gg, CanonicalEncoding(
        "single-unit", (n,), "element x -> x", "the single unit -> 0"))


# --- group-groupoid families -------------------------------------------------

def group_pair_groupoid(x: FiniteGroup) -> GroupGroupoid:
    """Pair groupoid of the carrier of x with the componentwise group
    structure on arrows; arrow (x1, x2) -> x1*n + x2."""
    n = x.order
    gpd = pair_groupoid(n)
    gg = GroupGroupoid(groupoid=gpd, arrow_group=make_direct_product(x, x),
                       base_group=x)
    return _attach(gg, CanonicalEncoding(
        "group-pair", (n,), "(x1, x2) -> x1*n + x2", "element u -> u"))


def modular_group_groupoid(n: int, a: int) -> GroupGroupoid:
    """Arrows Z_n x Z_n with (x, y).(ay, z) = (x, z), over the base
    {(x, ax)} encoded by x. Requires a*a = 1 mod n so that the endpoint
    maps are involutive."""
    if n < 1:
        raise InvalidOrder(f"modulus must be >= 1, got {n}")
    a = a % n if n > 1 else 0
    if (a * a) % n != 1 % n:
        raise BadTypeParameter(f"a^2 = {(a * a) % n} mod {n}, expected 1")
    ids = np.arange(n * n, dtype=np.int64)
    x, y = ids // n, ids % n
    # composable: beta(x, y) = a*y must equal alpha(z, t) = z
    xs = np.repeat(np.arange(n, dtype=np.int64), n * n)
    ys = np.tile(np.repeat(np.arange(n, dtype=np.int64), n), n)
    zs = np.tile(np.arange(n, dtype=np.int64), n * n)
    gpd = FiniteGroupoid(
        arrows=n * n, base=n,
        alpha=x, beta=(a * y) % n,
        eps=(np.arange(n, dtype=np.int64) * n + (a * np.arange(n)) % n),
        inv=((a * y) % n) * n + (a * x) % n,
        mul_x=xs * n + ys, mul_y=((a * ys) % n) * n + zs, mul_z=xs * n + zs)
    zn = make_cyclic(n)
    gg = GroupGroupoid(groupoid=gpd, arrow_group=make_direct_product(zn, zn),
                       base_group=zn)
    return _attach(gg, CanonicalEncoding(
        "modular", (n, a), "(x, y) -> x*n + y", "unit (x, ax) -> x"))


def trivial_group_groupoid(a: FiniteGroup, b: FiniteGroup) -> GroupGroupoid:
    """TGG(A, B): arrows (b1, t, b2) with (b1, t1, b2).(b2, t2, b3) =
    (b1, t1+t2, b3); arrow id = (b1*|A| + t)*|B| + b2."""
    for grp, label in ((a, "first"), (b, "second")):
        if not is_commutative(grp):
            x, y = noncommuting_pair(grp)
            raise NonCommutativeGroup(
                f"{label} group is not commutative: {x}+{y} != {y}+{x}")
    na, nb = a.order, b.order
    ids = np.arange(nb * na * nb, dtype=np.int64)
    b1, rest = ids // (na * nb), ids % (na * nb)
    t, b2 = rest // nb, rest % nb
    # composable: (b1, t1, b2) with (b2, t2, b3)
    kb1 = np.repeat(np.arange(nb, dtype=np.int64), na * nb * na * nb)
    kt1 = np.tile(np.repeat(np.arange(na, dtype=np.int64), nb * na * nb), nb)
    kb2 = np.tile(np.repeat(np.arange(nb, dtype=np.int64), na * nb), nb * na)
    kt2 = np.tile(np.repeat(np.arange(na, dtype=np.int64), nb), nb * na * nb)
    kb3 = np.tile(np.arange(nb, dtype=np.int64), nb * na * nb * na)

    def enc(p, q, r):
        return (p * na + q) * nb + r

    units = np.arange(nb, dtype=np.int64)
    gpd = FiniteGroupoid(
        arrows=nb * na * nb, base=nb,
        alpha=b1, beta=b2,
        eps=enc(units, a.identity, units),
        inv=enc(b2, a.inverse[t], b1),
        mul_x=enc(kb1, kt1, kb2), mul_y=enc(kb2, kt2, kb3),
        mul_z=enc(kb1, a.table[kt1, kt2], kb3))
    arrow_group = make_direct_product(make_direct_product(b, a), b)
    gg = GroupGroupoid(groupoid=gpd, arrow_group=arrow_group, base_group=b)
    return _attach(gg, CanonicalEncoding(
        "tgg", (na, nb), "(b1, t, b2) -> (b1*|A| + t)*|B| + b2",
        "element b -> b"))


def epimorphism_groupoid(pi: GroupHom) -> GroupGroupoid:
    """The sub-group-groupoid of the group-pair groupoid of E on pairs
    identified by a surjective hom pi: E -> F; pairs sorted
    lexicographically and densely re-indexed."""
    E, F = pi.source, pi.target
    for grp, label in ((E, "source"), (F, "target")):
        if not is_commutative(grp):
            x, y = noncommuting_pair(grp)
            raise NonCommutativeGroup(
                f"{label} group is not commutative: {x}+{y} != {y}+{x}")
    hrep = check_hom(pi)
    if not hrep.ok:
        raise NotEpimorphism("map is not a homomorphism:\n" + hrep.summary())
    if not hrep.surjective:
        missing = np.setdiff1d(np.arange(F.order), np.unique(pi.map))
        raise NotEpimorphism(
            f"map is not surjective; {missing.tolist()} not in the image")
    n = E.order
    same = pi.map[:, None] == pi.map[None, :]
    xs, ys = np.nonzero(same)        # lexicographic by construction
    k = xs.size
    pos = -np.ones((n, n), dtype=np.int64)
    pos[xs, ys] = np.arange(k)

    # composable pairs: arrow i = (x, y), arrow j = (y, z)
    ci, cj = np.nonzero(ys[:, None] == xs[None, :])
    gpd = FiniteGroupoid(
        arrows=k, base=n,
        alpha=xs, beta=ys,
        eps=pos[np.arange(n), np.arange(n)],
        inv=pos[ys, xs],
        mul_x=ci, mul_y=cj, mul_z=pos[xs[ci], ys[cj]])
    arrow_group = FiniteGroup(
        order=k,
        table=pos[E.table[np.ix_(xs, xs)], E.table[np.ix_(ys, ys)]],
        identity=int(pos[E.identity, E.identity]),
        inverse=pos[E.inverse[xs], E.inverse[ys]])
    gg = GroupGroupoid(groupoid=gpd, arrow_group=arrow_group, base_group=E)
    return _attach(gg, CanonicalEncoding(
        "epi", (n, F.order),
        "pair (x, y) with pi(x) = pi(y) -> its rank in lexicographic order",
        "element x -> x"))


def direct_product_gg(c: GroupGroupoid, cp: GroupGroupoid) -> GroupGroupoid:
    """Componentwise product on both the groupoid and the group layers."""
    gg = GroupGroupoid(
        groupoid=direct_product_groupoid(c.groupoid, cp.groupoid),
        arrow_group=make_direct_product(c.arrow_group, cp.arrow_group),
        base_group=make_direct_product(c.base_group, cp.base_group))
    return _attach(gg, CanonicalEncoding(
        "product", (c.groupoid.arrows, cp.groupoid.arrows),
        "(x, x') -> x*|G'| + x'", "(u, u') -> u*|G0'| + u'"))


def gg_projections(c: GroupGroupoid, cp: GroupGroupoid):
    """The two canonical projections out of direct_product_gg(c, cp)."""
    prod = direct_product_gg(c, cp)
    a2, b2 = cp.groupoid.arrows, cp.groupoid.base
    ids_a = np.arange(prod.groupoid.arrows, dtype=np.int64)
    ids_b = np.arange(prod.groupoid.base, dtype=np.int64)
    p1 = GroupoidMorphism(source=prod.groupoid, target=c.groupoid,
                          f=ids_a // a2, f0=ids_b // b2, check=False)
    p2 = GroupoidMorphism(source=prod.groupoid, target=cp.groupoid,
                          f=ids_a % a2, f0=ids_b % b2, check=False)
    return prod, p1, p2


def tgg_morphism(theta: GroupHom, theta0: GroupHom) -> GroupoidMorphism:
    """The induced morphism TGG(A, B) -> TGG(A', B') acting as
    (b1, t, b2) -> (theta0(b1), theta(t), theta0(b2))."""
    src = trivial_group_groupoid(theta.source, theta0.source)
    tgt = trivial_group_groupoid(theta.target, theta0.target)
    na, nb = theta.source.order, theta0.source.order
    nap, nbp = theta.target.order, theta0.target.order
    ids = np.arange(nb * na * nb, dtype=np.int64)
    b1, rest = ids // (na * nb), ids % (na * nb)
    t, b2 = rest // nb, rest % nb
    f = ((theta0.map[b1].astype(np.int64) * nap + theta.map[t]) * nbp
         + theta0.map[b2])
    m = GroupoidMorphism(source=src.groupoid, target=tgt.groupoid,
                         f=f, f0=theta0.map, check=False)
    m.source_gg = src
    m.target_gg = tgt
    return m
