"""Finite groupoids: structure functions, axioms, fibers, isotropy,
transitivity and direct products.

A groupoid is stored as dense arrays for the total structure functions
(source alpha, target beta, inclusion eps, inversion inv) plus a sparse
table of composable-pair products. Looking up a product outside the
composable set is a loud NotComposable error, never a sentinel.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels
from .errors import BadBaseId, BadCarrier, MalformedStructure, NotComposable
from .groups import FiniteGroup, GroupHom
from .report import DEFAULT_WITNESS_CAP, ValidationReport


@dataclass(eq=False)
class FiniteGroupoid:
    """Arrow set 0..arrows-1 over base 0..base-1 with structure functions."""

    arrows: int
    base: int
    alpha: np.ndarray   # base id per arrow (source)
    beta: np.ndarray    # base id per arrow (target)
    eps: np.ndarray     # arrow id per base id (inclusion)
    inv: np.ndarray     # arrow id per arrow (inversion)
    mul_x: np.ndarray   # sparse multiplication: mul_x[i] . mul_y[i] = mul_z[i]
    mul_y: np.ndarray
    mul_z: np.ndarray

    def __post_init__(self):
        for name in ("alpha", "beta", "eps", "inv", "mul_x", "mul_y", "mul_z"):
            arr = np.ascontiguousarray(np.asarray(getattr(self, name), dtype=np.int32))
            arr.setflags(write=False)
            setattr(self, name, arr)
        A, B = self.arrows, self.base
        if A < 1 or B < 1:
            raise MalformedStructure("arrow and base sets must be nonempty")
        if self.alpha.shape != (A,) or self.beta.shape != (A,) or self.inv.shape != (A,):
            raise MalformedStructure("alpha/beta/inv must have one entry per arrow")
        if self.eps.shape != (B,):
            raise MalformedStructure("eps must have one entry per base id")
        if not (self.mul_x.shape == self.mul_y.shape == self.mul_z.shape):
            raise MalformedStructure("multiplication columns must have equal length")
        for arr, hi, what in ((self.alpha, B, "alpha"), (self.beta, B, "beta"),
                              (self.eps, A, "eps"), (self.inv, A, "inv"),
                              (self.mul_x, A, "mul"), (self.mul_y, A, "mul"),
                              (self.mul_z, A, "mul")):
            if arr.size and (arr.min() < 0 or arr.max() >= hi):
                raise MalformedStructure(f"{what} contains an out-of-range id")

    @classmethod
    def from_mul_map(cls, arrows, base, alpha, beta, eps, inv, mul: dict) -> "FiniteGroupoid":
        items = sorted(mul.items())
        mx = np.fromiter((x for (x, _), _ in items), dtype=np.int32, count=len(items))
        my = np.fromiter((y for (_, y), _ in items), dtype=np.int32, count=len(items))
        mz = np.fromiter((z for _, z in items), dtype=np.int32, count=len(items))
        return cls(arrows=arrows, base=base, alpha=alpha, beta=beta,
                   eps=eps, inv=inv, mul_x=mx, mul_y=my, mul_z=mz)

    @cached_property
    def mul(self) -> dict:
        """The partial multiplication as a {(x, y): xy} mapping."""
        return {(int(x), int(y)): int(z)
                for x, y, z in zip(self.mul_x, self.mul_y, self.mul_z)}

    @cached_property
    def _dense_mul(self) -> np.ndarray:
        m = np.full((self.arrows, self.arrows), -1, dtype=np.int32)
        m[self.mul_x, self.mul_y] = self.mul_z
        m.setflags(write=False)
        return m

    @cached_property
    def _canonical_order(self) -> np.ndarray:
        return np.lexsort((self.mul_y, self.mul_x))

    def canonical_mul_triples(self) -> np.ndarray:
        """(x, y, xy) rows sorted lexicographically by (x, y)."""
        o = self._canonical_order
        return np.stack([self.mul_x[o], self.mul_y[o], self.mul_z[o]], axis=1)

    def compose(self, x: int, y: int) -> int:
        """m(x, y); raises NotComposable outside the composable set."""
        z = self._dense_mul[x, y]
        if z < 0:
            raise NotComposable(
                f"arrows {x} and {y} are not composable: "
                f"beta({x}) = {int(self.beta[x])} != {int(self.alpha[y])} = alpha({y})")
        return int(z)

    def invert(self, x: int) -> int:
        return int(self.inv[x])

    def unit(self, u: int) -> int:
        return int(self.eps[u])

    def __eq__(self, other):
        return (isinstance(other, FiniteGroupoid)
                and self.arrows == other.arrows and self.base == other.base
                and np.array_equal(self.alpha, other.alpha)
                and np.array_equal(self.beta, other.beta)
                and np.array_equal(self.eps, other.eps)
                and np.array_equal(self.inv, other.inv)
                and np.array_equal(self.canonical_mul_triples(),
                                   other.canonical_mul_triples()))

    def __repr__(self):
        return (f"FiniteGroupoid(arrows={self.arrows}, base={self.base}, "
                f"composable={self.mul_x.size})")


@dataclass
class IsotropyGroup:
    """The group of arrows with both endpoints at one base point."""

    at: int
    member_arrows: np.ndarray
    group: FiniteGroup

    def to_arrow(self, i: int) -> int:
        return int(self.member_arrows[i])

    def from_arrow(self, arrow: int) -> int:
        hits = np.nonzero(self.member_arrows == arrow)[0]
        if hits.size == 0:
            raise MalformedStructure(f"arrow {arrow} is not in the isotropy group")
        return int(hits[0])


def _alpha_fibers(g: FiniteGroupoid):
    """Arrow ids grouped by alpha: (start offsets, arrow array), ascending."""
    order = np.argsort(g.alpha, kind="stable").astype(np.int32)
    counts = np.bincount(g.alpha, minlength=g.base)
    start = np.zeros(g.base + 1, dtype=np.int64)
    start[1:] = np.cumsum(counts)
    return start, order


def validate_groupoid(g: FiniteGroupoid,
                      cap: int = DEFAULT_WITNESS_CAP) -> ValidationReport:
    """Exhaustive check of the groupoid axioms plus the six derived laws.

    Axioms: alpha/beta surjective, eps injective, multiplication defined on
    exactly the composable pairs, associativity (G1), unit laws (G2),
    inverse laws (G3). The derived laws are redundant given the axioms, so
    a derived failure with clean axioms is flagged as an internal
    inconsistency (it would mean this implementation is buggy).
    """
    rep = ValidationReport(cap=cap)
    A, B = g.arrows, g.base
    ids = np.arange(A, dtype=np.int32)
    uids = np.arange(B, dtype=np.int32)

    missing = np.nonzero(np.bincount(g.alpha, minlength=B) == 0)[0]
    rep.add_many("alpha-surjective", [(int(u),) for u in missing[:cap]],
                 total=int(missing.size))
    missing = np.nonzero(np.bincount(g.beta, minlength=B) == 0)[0]
    rep.add_many("beta-surjective", [(int(u),) for u in missing[:cap]],
                 total=int(missing.size))

    counts = np.bincount(g.eps, minlength=A)
    dup = np.nonzero(counts > 1)[0]
    rep.add_many("eps-injective", [(int(x),) for x in dup[:cap]], total=int(dup.size))

    # multiplication domain must be exactly {(x, y) : beta(x) = alpha(y)}
    enc = g.mul_x.astype(np.int64) * A + g.mul_y
    if enc.size != np.unique(enc).size:
        srt = np.sort(enc)
        dups = srt[:-1][srt[:-1] == srt[1:]]
        rep.add_many("mul-duplicate-key",
                     [(int(e // A), int(e % A)) for e in np.unique(dups)[:cap]],
                     total=int(enc.size - np.unique(enc).size))
    stray = np.nonzero(g.beta[g.mul_x] != g.alpha[g.mul_y])[0]
    rep.add_many("mul-domain-extra",
                 [(int(g.mul_x[i]), int(g.mul_y[i])) for i in stray[:cap]],
                 total=int(stray.size))
    expected = int(np.sum(np.bincount(g.beta, minlength=B).astype(np.int64)
                          * np.bincount(g.alpha, minlength=B)))
    defined = int(np.unique(enc).size - stray.size)
    if defined < expected:
        # recover up-to-cap missing composable pairs
        M = g._dense_mul
        found = []
        for x in range(A):
            ys = np.nonzero((g.alpha == g.beta[x]) & (M[x] < 0))[0]
            found.extend((int(x), int(y)) for y in ys[: cap - len(found)])
            if len(found) >= cap:
                break
        rep.add_many("mul-domain-missing", found, total=expected - defined)

    M = g._dense_mul

    # G2: eps(alpha(x)) . x = x = x . eps(beta(x))
    bad = np.nonzero(M[g.eps[g.alpha], ids] != ids)[0]
    rep.add_many("G2-left", [(int(x),) for x in bad[:cap]], total=int(bad.size))
    bad = np.nonzero(M[ids, g.eps[g.beta]] != ids)[0]
    rep.add_many("G2-right", [(int(x),) for x in bad[:cap]], total=int(bad.size))

    # G3: inv(x) . x = eps(beta(x)), x . inv(x) = eps(alpha(x))
    bad = np.nonzero(M[g.inv, ids] != g.eps[g.beta])[0]
    rep.add_many("G3-left", [(int(x),) for x in bad[:cap]], total=int(bad.size))
    bad = np.nonzero(M[ids, g.inv] != g.eps[g.alpha])[0]
    rep.add_many("G3-right", [(int(x),) for x in bad[:cap]], total=int(bad.size))

    # G1 over every composable triple
    fstart, farr = _alpha_fibers(g)
    wit = np.empty((cap, 3), dtype=np.int32)
    total, w = _kernels.assoc_check(M, g.mul_x, g.mul_y, g.mul_z, g.beta,
                                    fstart, farr, wit, cap)
    rep.add_many("G1", [(int(a), int(b), int(c)) for a, b, c in wit[:w]], total=total)

    axioms_ok = rep.ok

    # derived laws (i)-(vi); redundant cross-checks of the implementation
    bad = np.nonzero(g.alpha[g.mul_z] != g.alpha[g.mul_x])[0]
    rep.add_many("derived-i-alpha",
                 [(int(g.mul_x[i]), int(g.mul_y[i])) for i in bad[:cap]],
                 total=int(bad.size))
    bad = np.nonzero(g.beta[g.mul_z] != g.beta[g.mul_y])[0]
    rep.add_many("derived-i-beta",
                 [(int(g.mul_x[i]), int(g.mul_y[i])) for i in bad[:cap]],
                 total=int(bad.size))
    bad = np.nonzero((g.alpha[g.inv] != g.beta) | (g.beta[g.inv] != g.alpha))[0]
    rep.add_many("derived-ii", [(int(x),) for x in bad[:cap]], total=int(bad.size))
    bad = np.nonzero((M[g.eps, g.eps] != g.eps) | (g.inv[g.eps] != g.eps))[0]
    rep.add_many("derived-iii", [(int(u),) for u in bad[:cap]], total=int(bad.size))
    inv_pair_bad = np.nonzero(M[g.inv[g.mul_y], g.inv[g.mul_x]] != g.inv[g.mul_z])[0]
    rep.add_many("derived-iv",
                 [(int(g.mul_x[i]), int(g.mul_y[i])) for i in inv_pair_bad[:cap]],
                 total=int(inv_pair_bad.size))
    bad = np.nonzero((g.alpha[g.eps] != uids) | (g.beta[g.eps] != uids))[0]
    rep.add_many("derived-v", [(int(u),) for u in bad[:cap]], total=int(bad.size))
    bad = np.nonzero(g.inv[g.inv] != ids)[0]
    rep.add_many("derived-vi", [(int(x),) for x in bad[:cap]], total=int(bad.size))

    if axioms_ok and not rep.ok:
        rep.internal_inconsistency = True
    return rep


def composable_pairs(g: FiniteGroupoid) -> list[tuple[int, int]]:
    """All (x, y) with beta(x) = alpha(y), lexicographically ordered.

    Computed from alpha and beta directly, independent of the stored
    multiplication table."""
    fstart, farr = _alpha_fibers(g)
    out = []
    for x in range(g.arrows):
        v = g.beta[x]
        ys = np.sort(farr[fstart[v]:fstart[v + 1]])
        out.extend((x, int(y)) for y in ys)
    return out


def is_transitive(g: FiniteGroupoid):
    """(True, []) when the anchor map is onto the base square; otherwise
    (False, missing (u, v) pairs)."""
    anchor = np.unique(g.alpha.astype(np.int64) * g.base + g.beta)
    if anchor.size == g.base * g.base:
        return True, []
    missing = np.setdiff1d(np.arange(g.base * g.base, dtype=np.int64), anchor,
                           assume_unique=True)
    return False, [(int(p // g.base), int(p % g.base)) for p in missing]


def alpha_fiber(g: FiniteGroupoid, u: int) -> list[int]:
    if not 0 <= u < g.base:
        raise BadBaseId(f"base id {u} out of range 0..{g.base - 1}")
    return [int(x) for x in np.nonzero(g.alpha == u)[0]]


def beta_fiber(g: FiniteGroupoid, u: int) -> list[int]:
    if not 0 <= u < g.base:
        raise BadBaseId(f"base id {u} out of range 0..{g.base - 1}")
    return [int(x) for x in np.nonzero(g.beta == u)[0]]


def isotropy_group(g: FiniteGroupoid, u: int) -> IsotropyGroup:
    """The induced group on arrows with both endpoints at u."""
    if not 0 <= u < g.base:
        raise BadBaseId(f"base id {u} out of range 0..{g.base - 1}")
    members = np.nonzero((g.alpha == u) & (g.beta == u))[0].astype(np.int32)
    pos = -np.ones(g.arrows, dtype=np.int32)
    pos[members] = np.arange(members.size, dtype=np.int32)
    sub = g._dense_mul[np.ix_(members, members)]
    if np.any(sub < 0) or np.any(pos[sub] < 0):
        raise MalformedStructure(
            f"arrows at base id {u} are not closed under multiplication")
    e = int(g.eps[u])
    if pos[e] < 0:
        raise MalformedStructure(f"eps({u}) does not lie in the isotropy set")
    if np.any(pos[g.inv[members]] < 0):
        raise MalformedStructure(
            f"isotropy set at {u} is not closed under inversion")
    group = FiniteGroup(order=int(members.size), table=pos[sub],
                        identity=int(pos[e]), inverse=pos[g.inv[members]])
    return IsotropyGroup(at=u, member_arrows=members, group=group)


def isotropy_bundle(g: FiniteGroupoid) -> FiniteGroupoid:
    """The sub-groupoid of arrows with alpha = beta (the isotropy bundle)."""
    members = np.nonzero(g.alpha == g.beta)[0].astype(np.int32)
    pos = -np.ones(g.arrows, dtype=np.int32)
    pos[members] = np.arange(members.size, dtype=np.int32)
    if np.any(pos[g.eps] < 0):
        raise MalformedStructure("a unit arrow has alpha != beta")
    if np.any(pos[g.inv[members]] < 0):
        raise MalformedStructure("isotropy bundle not closed under inversion")
    keep = (pos[g.mul_x] >= 0) & (pos[g.mul_y] >= 0)
    mz = g.mul_z[keep]
    if np.any(pos[mz] < 0):
        raise MalformedStructure("isotropy bundle not closed under multiplication")
    return FiniteGroupoid(
        arrows=int(members.size), base=g.base,
        alpha=g.alpha[members], beta=g.beta[members],
        eps=pos[g.eps], inv=pos[g.inv[members]],
        mul_x=pos[g.mul_x[keep]], mul_y=pos[g.mul_y[keep]], mul_z=pos[mz])


def isotropy_transport(g: FiniteGroupoid, u: int, v: int, carrier: int) -> GroupHom:
    """Conjugation h -> carrier^-1 . h . carrier from the isotropy group at u
    to the one at v, for a carrier arrow u -> v."""
    if not 0 <= carrier < g.arrows:
        raise BadCarrier(f"carrier {carrier} is not an arrow id")
    if int(g.alpha[carrier]) != u or int(g.beta[carrier]) != v:
        raise BadCarrier(
            f"carrier endpoints ({int(g.alpha[carrier])}, {int(g.beta[carrier])}) "
            f"do not match ({u}, {v})")
    gu = isotropy_group(g, u)
    gv = isotropy_group(g, v)
    cinv = g.invert(carrier)
    mapping = np.empty(gu.group.order, dtype=np.int32)
    for i, h in enumerate(gu.member_arrows):
        t = g.compose(g.compose(cinv, int(h)), carrier)
        mapping[i] = gv.from_arrow(t)
    return GroupHom(source=gu.group, target=gv.group, map=mapping)


def direct_product_groupoid(g: FiniteGroupoid, h: FiniteGroupoid) -> FiniteGroupoid:
    """Componentwise product; arrow (x, x') gets id x*|H| + x'."""
    A2, B2 = h.arrows, h.base
    alpha = (g.alpha[:, None].astype(np.int64) * B2 + h.alpha[None, :]).ravel()
    beta = (g.beta[:, None].astype(np.int64) * B2 + h.beta[None, :]).ravel()
    eps = (g.eps[:, None].astype(np.int64) * A2 + h.eps[None, :]).ravel()
    inv = (g.inv[:, None].astype(np.int64) * A2 + h.inv[None, :]).ravel()
    mx = (g.mul_x[:, None].astype(np.int64) * A2 + h.mul_x[None, :]).ravel()
    my = (g.mul_y[:, None].astype(np.int64) * A2 + h.mul_y[None, :]).ravel()
    mz = (g.mul_z[:, None].astype(np.int64) * A2 + h.mul_z[None, :]).ravel()
    return FiniteGroupoid(arrows=g.arrows * A2, base=g.base * B2,
                          alpha=alpha, beta=beta, eps=eps, inv=inv,
                          mul_x=mx, mul_y=my, mul_z=mz)
