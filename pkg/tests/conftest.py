"""Shared fixtures and independent pure-Python oracles.

The oracles here deliberately avoid the library's vectorized/compiled
validation paths so the fast implementations are checked against slow,
obviously-correct loops on small instances.
"""

import itertools

import numpy as np
import pytest

from groupoids import (FiniteGroup, FiniteGroupoid, GroupGroupoid)


def s3_table():
    """Cayley table of the symmetric group on 3 letters (composition of
    permutations, p then q applied as q∘p indexing)."""
    perms = list(itertools.permutations(range(3)))
    return [[perms.index(tuple(p[q[i]] for i in range(3))) for q in perms]
            for p in perms]


@pytest.fixture(scope="session")
def S3():
    return FiniteGroup.from_table(s3_table())


# --- oracles ----------------------------------------------------------------

def oracle_group_ok(table) -> bool:
    """Literal quantifier check of the group axioms on a raw table."""
    t = [list(map(int, row)) for row in table]
    n = len(t)
    if any(len(row) != n for row in t):
        return False
    if any(not 0 <= v < n for row in t for v in row):
        return False
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if t[t[a][b]][c] != t[a][t[b][c]]:
                    return False
    es = [e for e in range(n)
          if all(t[e][x] == x and t[x][e] == x for x in range(n))]
    if not es:
        return False
    e = es[0]
    return all(any(t[x][y] == e and t[y][x] == e for y in range(n))
               for x in range(n))


def oracle_assoc_violations(table):
    t = np.asarray(table)
    out = set()
    n = t.shape[0]
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if t[t[a, b], c] != t[a, t[b, c]]:
                    out.add((a, b, c))
    return out


def oracle_groupoid_ok(g: FiniteGroupoid) -> bool:
    """Literal check of the groupoid axioms, dict-based."""
    mul = g.mul
    A, B = g.arrows, g.base
    if set(int(u) for u in g.alpha) != set(range(B)):
        return False
    if set(int(u) for u in g.beta) != set(range(B)):
        return False
    if len(set(int(x) for x in g.eps)) != B:
        return False
    for x in range(A):
        for y in range(A):
            defined = (x, y) in mul
            if defined != (g.beta[x] == g.alpha[y]):
                return False
    for x in range(A):
        if mul[(int(g.eps[g.alpha[x]]), x)] != x:
            return False
        if mul[(x, int(g.eps[g.beta[x]]))] != x:
            return False
        if mul[(int(g.inv[x]), x)] != int(g.eps[g.beta[x]]):
            return False
        if mul[(x, int(g.inv[x]))] != int(g.eps[g.alpha[x]]):
            return False
    for (x, y), p in mul.items():
        for z in range(A):
            if g.beta[y] == g.alpha[z]:
                if mul[(p, z)] != mul[(x, mul[(y, z)])]:
                    return False
    return True


def oracle_interchange_violations(c: GroupGroupoid):
    """Literal pairs-of-pairs interchange quantification (small only)."""
    mul = c.groupoid.mul
    plus = c.arrow_group.table
    out = []
    pairs = sorted(mul)
    for (x, y) in pairs:
        for (z, t) in pairs:
            lhs = plus[mul[(x, y)], mul[(z, t)]]
            key = (int(plus[x, z]), int(plus[y, t]))
            if key not in mul or mul[key] != lhs:
                out.append(((x, y), (z, t)))
    return out


def oracle_transitive(g: FiniteGroupoid) -> bool:
    seen = {(int(g.alpha[x]), int(g.beta[x])) for x in range(g.arrows)}
    return len(seen) == g.base * g.base


# --- mutation helpers --------------------------------------------------------

def _with(arr, i, v):
    out = np.array(arr)
    out[i] = v
    return out


def gg_single_entry_mutants(c: GroupGroupoid, limit=None):
    """Yield (description, mutant) for every single-entry mutation of each
    structure table (one entry bumped to the next id in its range)."""
    g = c.groupoid
    A, B = g.arrows, g.base
    count = 0

    def emit(desc, **kw):
        nonlocal count
        groupoid = FiniteGroupoid(
            arrows=A, base=B,
            alpha=kw.get("alpha", g.alpha), beta=kw.get("beta", g.beta),
            eps=kw.get("eps", g.eps), inv=kw.get("inv", g.inv),
            mul_x=g.mul_x, mul_y=g.mul_y, mul_z=kw.get("mul_z", g.mul_z))
        ag = kw.get("arrow_group", c.arrow_group)
        bg = kw.get("base_group", c.base_group)
        count += 1
        return desc, GroupGroupoid(groupoid=groupoid, arrow_group=ag,
                                   base_group=bg)

    for i in range(A):
        if B > 1:
            yield emit(f"alpha[{i}]", alpha=_with(g.alpha, i, (g.alpha[i] + 1) % B))
            yield emit(f"beta[{i}]", beta=_with(g.beta, i, (g.beta[i] + 1) % B))
        if A > 1:
            yield emit(f"inv[{i}]", inv=_with(g.inv, i, (g.inv[i] + 1) % A))
        if limit and count >= limit:
            return
    for u in range(B):
        if A > 1:
            yield emit(f"eps[{u}]", eps=_with(g.eps, u, (g.eps[u] + 1) % A))
    for j in range(g.mul_x.size):
        if A > 1:
            yield emit(f"mul[{j}]", mul_z=_with(g.mul_z, j, (g.mul_z[j] + 1) % A))
        if limit and count >= limit:
            return
    if A > 1:
        for x in range(A):
            for y in range(A):
                t = np.array(c.arrow_group.table)
                t[x, y] = (t[x, y] + 1) % A
                yield emit(f"arrow_table[{x},{y}]", arrow_group=FiniteGroup(
                    order=A, table=t, identity=c.arrow_group.identity,
                    inverse=c.arrow_group.inverse))
                if limit and count >= limit:
                    return
    if B > 1:
        for u in range(B):
            for v in range(B):
                t = np.array(c.base_group.table)
                t[u, v] = (t[u, v] + 1) % B
                yield emit(f"base_table[{u},{v}]", base_group=FiniteGroup(
                    order=B, table=t, identity=c.base_group.identity,
                    inverse=c.base_group.inverse))
                if limit and count >= limit:
                    return
