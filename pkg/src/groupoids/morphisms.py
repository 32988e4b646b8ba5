"""Morphisms between finite groupoids.

A morphism is a pair of maps (f on arrows, f0 on base points) that commutes
with source/target and preserves the partial multiplication. Preservation
of units and inverses is a consequence and is checked as a redundant
cross-check: a failure there with the defining conditions passing is
flagged as an internal inconsistency.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidMorphism, MalformedMap
from .groupoid import FiniteGroupoid
from .report import DEFAULT_WITNESS_CAP, ValidationReport


@dataclass(eq=False)
class GroupoidMorphism:
    """(f, f0) from ``source`` to ``target``; validated on construction
    unless ``check=False``."""

    source: FiniteGroupoid
    target: FiniteGroupoid
    f: np.ndarray    # arrow map, one target arrow id per source arrow
    f0: np.ndarray   # base map, one target base id per source base id

    def __init__(self, source, target, f, f0, check=True):
        self.source = source
        self.target = target
        self.f = np.ascontiguousarray(np.asarray(f, dtype=np.int32))
        self.f0 = np.ascontiguousarray(np.asarray(f0, dtype=np.int32))
        self.f.setflags(write=False)
        self.f0.setflags(write=False)
        if self.f.shape != (source.arrows,):
            raise MalformedMap("arrow map must have one entry per source arrow")
        if self.f0.shape != (source.base,):
            raise MalformedMap("base map must have one entry per source base id")
        if self.f.size and (self.f.min() < 0 or self.f.max() >= target.arrows):
            raise MalformedMap("arrow map contains an out-of-range arrow id")
        if self.f0.size and (self.f0.min() < 0 or self.f0.max() >= target.base):
            raise MalformedMap("base map contains an out-of-range base id")
        if check:
            rep = validate_groupoid_morphism(self)
            if not rep.ok:
                raise InvalidMorphism(
                    "not a groupoid morphism:\n" + rep.summary(), report=rep)

    def __call__(self, arrow: int) -> int:
        return int(self.f[arrow])

    def on_base(self, u: int) -> int:
        return int(self.f0[u])

    def __eq__(self, other):
        return (isinstance(other, GroupoidMorphism)
                and self.source == other.source and self.target == other.target
                and np.array_equal(self.f, other.f)
                and np.array_equal(self.f0, other.f0))


def validate_groupoid_morphism(m: GroupoidMorphism,
                               cap: int = DEFAULT_WITNESS_CAP) -> ValidationReport:
    """Check the two defining conditions and the two derived laws.

    (1) endpoint compatibility: alpha' f = f0 alpha and beta' f = f0 beta;
    (2) multiplicativity: f(x.y) = f(x).f(y) on every composable pair
        (including that the image pair is composable at all);
    derived: f eps = eps' f0 and f inv = inv' f.
    """
    rep = ValidationReport(cap=cap)
    s, t, f, f0 = m.source, m.target, m.f, m.f0

    bad = np.nonzero(t.alpha[f] != f0[s.alpha])[0]
    rep.add_many("endpoints-alpha", [(int(x),) for x in bad[:cap]],
                 total=int(bad.size))
    bad = np.nonzero(t.beta[f] != f0[s.beta])[0]
    rep.add_many("endpoints-beta", [(int(x),) for x in bad[:cap]],
                 total=int(bad.size))

    M = t._dense_mul
    bad = np.nonzero(M[f[s.mul_x], f[s.mul_y]] != f[s.mul_z])[0]
    rep.add_many("multiplicative",
                 [(int(s.mul_x[i]), int(s.mul_y[i])) for i in bad[:cap]],
                 total=int(bad.size))

    defining_ok = rep.ok

    bad = np.nonzero(f[s.eps] != t.eps[f0])[0]
    rep.add_many("derived-units", [(int(u),) for u in bad[:cap]],
                 total=int(bad.size))
    bad = np.nonzero(f[s.inv] != t.inv[f])[0]
    rep.add_many("derived-inverses", [(int(x),) for x in bad[:cap]],
                 total=int(bad.size))

    if defining_ok and not rep.ok:
        rep.internal_inconsistency = True
    return rep


def is_isomorphism(m: GroupoidMorphism) -> bool:
    """True when both the arrow map and the base map are bijections."""
    return (np.unique(m.f).size == m.target.arrows
            and m.f.size == m.target.arrows
            and np.unique(m.f0).size == m.target.base
            and m.f0.size == m.target.base)


def compose_morphisms(second: GroupoidMorphism,
                      first: GroupoidMorphism) -> GroupoidMorphism:
    """second after first (first.target must be second.source)."""
    if first.target is not second.source and first.target != second.source:
        raise InvalidMorphism("morphisms are not composable: middle groupoids differ")
    return GroupoidMorphism(source=first.source, target=second.target,
                            f=second.f[first.f], f0=second.f0[first.f0],
                            check=False)


def identity_morphism(g: FiniteGroupoid) -> GroupoidMorphism:
    return GroupoidMorphism(source=g, target=g,
                            f=np.arange(g.arrows, dtype=np.int32),
                            f0=np.arange(g.base, dtype=np.int32), check=False)
