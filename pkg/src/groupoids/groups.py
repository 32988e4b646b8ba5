"""Finite groups as explicit Cayley tables on dense ids 0..n-1.

These are the substrate for every group structure in the package: arrow
groups, base groups, isotropy groups and the alpha-fiber group of the
trivialization all live here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import InvalidOrder, MalformedMap, MalformedStructure, MalformedTable
from .report import DEFAULT_WITNESS_CAP, ValidationReport

# literal triple-loop associativity up to this order; Light's test above
_LITERAL_ASSOC_MAX = 128


def _as_table(table) -> np.ndarray:
    arr = np.ascontiguousarray(np.asarray(table, dtype=np.int32))
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise MalformedTable(f"Cayley table must be square, got shape {arr.shape}")
    return arr


@dataclass(eq=False)
class FiniteGroup:
    """A group given by its full Cayley table: table[x][y] = x + y."""

    order: int
    table: np.ndarray
    identity: int
    inverse: np.ndarray

    def __post_init__(self):
        self.table = _as_table(self.table)
        self.inverse = np.ascontiguousarray(np.asarray(self.inverse, dtype=np.int32))
        if self.table.shape[0] != self.order:
            raise MalformedTable(
                f"table is {self.table.shape[0]}x{self.table.shape[0]} "
                f"but order is {self.order}")
        if self.inverse.shape != (self.order,):
            raise MalformedTable("inverse table length must equal the group order")
        if not 0 <= self.identity < self.order:
            raise MalformedTable(f"identity id {self.identity} out of range")
        self.table.setflags(write=False)
        self.inverse.setflags(write=False)

    @classmethod
    def from_table(cls, table) -> "FiniteGroup":
        """Build a group from a bare table, locating identity and inverses."""
        arr = _as_table(table)
        n = arr.shape[0]
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise MalformedTable("table entries must be element ids 0..n-1")
        ids = np.arange(n, dtype=np.int32)
        identity = None
        for e in range(n):
            if np.array_equal(arr[e], ids) and np.array_equal(arr[:, e], ids):
                identity = e
                break
        if identity is None:
            raise MalformedTable("table has no two-sided identity")
        inverse = np.empty(n, dtype=np.int32)
        for x in range(n):
            hits = np.nonzero(arr[x] == identity)[0]
            if hits.size == 0 or arr[hits[0], x] != identity:
                raise MalformedTable(f"element {x} has no two-sided inverse")
            inverse[x] = hits[0]
        return cls(order=n, table=arr, identity=identity, inverse=inverse)

    def op(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def inv(self, x: int) -> int:
        return int(self.inverse[x])

    def elements(self) -> range:
        return range(self.order)

    def __eq__(self, other):
        return (isinstance(other, FiniteGroup)
                and self.order == other.order
                and self.identity == other.identity
                and np.array_equal(self.table, other.table)
                and np.array_equal(self.inverse, other.inverse))

    def __repr__(self):
        return f"FiniteGroup(order={self.order}, identity={self.identity})"


@dataclass(eq=False)
class GroupHom:
    """A candidate homomorphism: map[x] is the image of source element x."""

    source: FiniteGroup
    target: FiniteGroup
    map: np.ndarray

    def __post_init__(self):
        self.map = np.ascontiguousarray(np.asarray(self.map, dtype=np.int32))
        if self.map.shape != (self.source.order,):
            raise MalformedMap(
                f"map length {self.map.shape} != source order {self.source.order}")
        if self.map.size and (self.map.min() < 0 or self.map.max() >= self.target.order):
            raise MalformedMap("map entries must be target element ids")
        self.map.setflags(write=False)

    def __call__(self, x: int) -> int:
        return int(self.map[x])

    def __eq__(self, other):
        return (isinstance(other, GroupHom)
                and self.source == other.source
                and self.target == other.target
                and np.array_equal(self.map, other.map))


@dataclass
class HomReport(ValidationReport):
    injective: bool = False
    surjective: bool = False


@dataclass
class EmbeddedGroup:
    """A subgroup re-indexed densely; members[i] is the parent id of element i."""

    group: FiniteGroup
    members: np.ndarray = field(default=None)

    def to_parent(self, i: int) -> int:
        return int(self.members[i])

    def from_parent(self, parent_id: int) -> int:
        hits = np.nonzero(self.members == parent_id)[0]
        if hits.size == 0:
            raise MalformedStructure(f"id {parent_id} is not a subgroup member")
        return int(hits[0])


# --- constructors ---------------------------------------------------------

def make_cyclic(n: int) -> FiniteGroup:
    """Z_n: table[x][y] = (x+y) mod n, identity 0, inverse[x] = (n-x) mod n."""
    if n < 1:
        raise InvalidOrder(f"cyclic group order must be >= 1, got {n}")
    ids = np.arange(n, dtype=np.int32)
    table = (ids[:, None] + ids[None, :]) % n
    inverse = (-ids) % n
    return FiniteGroup(order=n, table=table.astype(np.int32),
                       identity=0, inverse=inverse.astype(np.int32))


def make_direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """A x B on ids (x, y) -> x*|B| + y with componentwise operation."""
    nb = b.order
    # table[(x1,y1),(x2,y2)] = (ta[x1,x2], tb[y1,y2])
    table = (a.table[:, None, :, None].astype(np.int64) * nb
             + b.table[None, :, None, :])
    n = a.order * nb
    table = table.reshape(n, n).astype(np.int32)
    inverse = (a.inverse[:, None].astype(np.int64) * nb
               + b.inverse[None, :]).reshape(n).astype(np.int32)
    identity = a.identity * nb + b.identity
    return FiniteGroup(order=n, table=table, identity=identity, inverse=inverse)


# --- validation -----------------------------------------------------------

def _magma_generators(table: np.ndarray, seed: int | None = None) -> list[int]:
    """Greedy generating set: smallest ids whose left-to-right products
    cover every element.

    Coverage is computed as closure under right multiplication by the
    generators, i.e. the set of products ((g1 g2) g3)...gk. That is exactly
    the coverage Light's test needs (its induction extends the test from g
    and h to gh), and it costs O(n * |gens|^2) instead of the O(n^2) of a
    full two-sided closure. ``seed`` marks an element known to behave
    neutrally (a verified identity) so it is not wasted as a generator.
    """
    n = table.shape[0]
    reached = np.zeros(n, dtype=bool)
    gens: list[int] = []
    if seed is not None:
        reached[seed] = True
    for x in range(n):
        if reached[x]:
            continue
        gens.append(x)
        reached[x] = True
        frontier = np.flatnonzero(reached)
        while frontier.size:
            before = reached.copy()
            for g in gens:
                reached[table[frontier, g]] = True
            frontier = np.flatnonzero(reached & ~before)
    return gens


def _assoc_violations(table: np.ndarray, cap: int, seed: int | None = None):
    """Exact associativity check.

    Small tables get the literal n^3 triple loop. Larger ones use Light's
    test: associativity over all triples is equivalent to the tests
    table[a, table[g,b]] == table[table[a,g], b] for g ranging over a set
    whose left-to-right products reach every element (induction on word
    length).
    """
    n = table.shape[0]
    out = []
    total = 0
    if n <= _LITERAL_ASSOC_MAX:
        left = table[table]              # left[a,b,c] = (ab)c
        right = table[:, table]          # right[a,b,c] = a(bc)
        bad = np.nonzero(left != right)
        total = bad[0].size
        for a, b, c in zip(*(idx[:cap] for idx in bad)):
            out.append((int(a), int(b), int(c)))
        return out, total
    wit = np.empty((cap, 3), dtype=np.int32)
    for g in _magma_generators(table, seed=seed):
        t, w = _kernels.light_check(table, g, wit, cap)
        total += t
        out.extend((int(a), int(b), int(c)) for a, b, c in wit[:w])
    return out[:cap], total


def validate_group(g: FiniteGroup, cap: int = DEFAULT_WITNESS_CAP) -> ValidationReport:
    """Check the group axioms exhaustively, reporting capped witnesses."""
    rep = ValidationReport(cap=cap)
    n = g.order
    t = g.table
    if t.size and (t.min() < 0 or t.max() >= n):
        raise MalformedTable("table entries out of range")
    if g.inverse.size and (g.inverse.min() < 0 or g.inverse.max() >= n):
        raise MalformedTable("inverse entries out of range")
    ids = np.arange(n, dtype=np.int32)

    # Latin square: each row and column is a permutation of 0..n-1 (a line
    # with n entries from 0..n-1 is a permutation iff no value repeats)
    if n:
        rwit = np.empty(cap, dtype=np.int32)
        cwit = np.empty(cap, dtype=np.int32)
        rbad, rw, cbad, cw = _kernels.latin_check(
            t, np.full(n, -1, dtype=np.int64), np.full(n, -1, dtype=np.int64),
            rwit, cwit, cap)
        rep.add_many("latin-square", [("row", int(i)) for i in rwit[:rw]],
                     total=rbad)
        rep.add_many("latin-square", [("column", int(i)) for i in cwit[:cw]],
                     total=cbad)

    e = g.identity
    bad = np.nonzero((t[e] != ids) | (t[:, e] != ids))[0]
    rep.add_many("identity", [(int(x),) for x in bad[:cap]], total=int(bad.size))
    identity_ok = bad.size == 0

    bad = np.nonzero((t[ids, g.inverse] != e) | (t[g.inverse, ids] != e))[0]
    rep.add_many("inverse", [(int(x),) for x in bad[:cap]], total=int(bad.size))

    wit, total = _assoc_violations(t, cap, seed=e if identity_ok else None)
    rep.add_many("associativity", wit, total=total)
    return rep


def check_hom(h: GroupHom, cap: int = DEFAULT_WITNESS_CAP) -> HomReport:
    """List every (x, y) with map[x+y] != map[x]+map[y]; also report whether
    the map is injective and surjective."""
    rep = HomReport(cap=cap)
    m = h.map
    wit = np.empty((cap, 2), dtype=np.int32)
    total, w = _kernels.hom_check(h.source.table, h.target.table, m, wit, cap)
    rep.add_many("hom", [(int(x), int(y)) for x, y in wit[:w]], total=total)
    image = np.unique(m)
    rep.injective = image.size == h.source.order
    rep.surjective = image.size == h.target.order
    return rep


def is_commutative(g: FiniteGroup) -> bool:
    return bool(np.array_equal(g.table, g.table.T))


def noncommuting_pair(g: FiniteGroup):
    """Smallest (x, y) with x+y != y+x, or None."""
    bad = np.nonzero(g.table != g.table.T)
    if bad[0].size == 0:
        return None
    flat = bad[0].astype(np.int64) * g.order + bad[1]
    i = int(np.argmin(flat))
    return int(bad[0][i]), int(bad[1][i])


def compose_homs(first: GroupHom, second: GroupHom) -> GroupHom:
    """x -> second(first(x)); targets must chain."""
    if first.target != second.source:
        raise MalformedMap("hom composition endpoints do not chain")
    return GroupHom(source=first.source, target=second.target,
                    map=second.map[first.map])


def subgroup_from_members(parent: FiniteGroup, members) -> EmbeddedGroup:
    """Induced group on a subset of parent ids, re-indexed densely.

    Raises MalformedStructure if the subset is not closed or misses the
    identity / an inverse.
    """
    mem = np.unique(np.asarray(members, dtype=np.int32))
    pos = -np.ones(parent.order, dtype=np.int32)
    pos[mem] = np.arange(mem.size, dtype=np.int32)
    sub = parent.table[np.ix_(mem, mem)]
    if np.any(pos[sub] < 0):
        bad = np.nonzero(pos[sub] < 0)
        x, y = int(mem[bad[0][0]]), int(mem[bad[1][0]])
        raise MalformedStructure(
            f"subset not closed: {x}+{y} = {parent.op(x, y)} is outside")
    if pos[parent.identity] < 0:
        raise MalformedStructure("subset does not contain the identity")
    if np.any(pos[parent.inverse[mem]] < 0):
        raise MalformedStructure("subset not closed under inversion")
    group = FiniteGroup(order=int(mem.size), table=pos[sub],
                        identity=int(pos[parent.identity]),
                        inverse=pos[parent.inverse[mem]])
    return EmbeddedGroup(group=group, members=mem)
