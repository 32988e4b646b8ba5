"""Hot loops for the exhaustive validators, JIT-compiled with numba.

Everything here is a plain counting/witness-collecting kernel over dense
int32 tables; all algebraic decisions live in the calling modules.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def assoc_check(M, px, py, pp, beta, fiber_start, fiber_arr, wit, cap):
    """Groupoid associativity (G1) over every composable triple.

    (px[i], py[i]) are the composable pairs and pp[i] their products;
    fiber_start/fiber_arr group arrow ids by alpha, so the inner loop
    ranges exactly over the z composable with py[i]. M is the dense
    multiplication table with -1 for undefined, which makes the check
    cover definedness transfer as well as equality of (xy)z and x(yz).
    Fills wit[:cap] with (x, y, z) witnesses.
    """
    total = 0
    w = 0
    for i in range(px.shape[0]):
        x = px[i]
        y = py[i]
        p = pp[i]
        Mp = M[p]
        Mx = M[x]
        My = M[y]
        v = beta[y]
        for j in range(fiber_start[v], fiber_start[v + 1]):
            z = fiber_arr[j]
            yz = My[z]
            left = Mp[z]
            right = -1
            if yz >= 0:
                right = Mx[yz]
            if left != right:
                total += 1
                if w < cap:
                    wit[w, 0] = x
                    wit[w, 1] = y
                    wit[w, 2] = z
                    w += 1
    return total, w


@njit(cache=True)
def light_check(T, g, wit, cap):
    """One round of Light's associativity test: a(gb) == (ag)b for all a, b."""
    n = T.shape[0]
    total = 0
    w = 0
    Tg = T[g]
    for a in range(n):
        Ta = T[a]
        Tag = T[Ta[g]]
        for b in range(n):
            if Tag[b] != Ta[Tg[b]]:
                total += 1
                if w < cap:
                    wit[w, 0] = a
                    wit[w, 1] = g
                    wit[w, 2] = b
                    w += 1
    return total, w


@njit(cache=True)
def latin_check(t, rstamp, cstamp, rwit, cwit, cap):
    """Bad rows/columns of a candidate Latin square.

    rstamp/cstamp must come in filled with -1; a line is bad when some
    value repeats in it, detected by stamping the line index onto each
    value seen. Returns (bad_rows, nrwit, bad_cols, ncwit) with the bad
    line ids in rwit/cwit[:cap].
    """
    n = t.shape[0]
    rbad = 0
    rw = 0
    for x in range(n):
        flagged = False
        for y in range(n):
            v = t[x, y]
            if rstamp[v] == x and not flagged:
                flagged = True
                rbad += 1
                if rw < cap:
                    rwit[rw] = x
                    rw += 1
            rstamp[v] = x
    cbad = 0
    cw = 0
    for y in range(n):
        flagged = False
        for x in range(n):
            v = t[x, y]
            if cstamp[v] == y and not flagged:
                flagged = True
                cbad += 1
                if cw < cap:
                    cwit[cw] = y
                    cw += 1
            cstamp[v] = y
    return rbad, rw, cbad, cw


@njit(cache=True)
def hom_check(tsrc, ttgt, m, wit, cap):
    """Count (x, y) with m[x+y] != m[x]+m[y]."""
    n = tsrc.shape[0]
    total = 0
    w = 0
    for x in range(n):
        row = tsrc[x]
        trow = ttgt[m[x]]
        for y in range(n):
            if m[row[y]] != trow[m[y]]:
                total += 1
                if w < cap:
                    wit[w, 0] = x
                    wit[w, 1] = y
                    w += 1
    return total, w


@njit(cache=True)
def interchange_literal(M, plus, px, py, pp, wit, cap):
    """(x.y)+(z.t) == (x+z).(y+t) over every pair of composable pairs.

    M dense with -1 for undefined, so a non-composable (x+z, y+t) shows up
    as a mismatch against the always-defined left side.
    """
    k = px.shape[0]
    total = 0
    w = 0
    for i in range(k):
        xi = px[i]
        yi = py[i]
        prow_x = plus[xi]
        prow_y = plus[yi]
        prow_p = plus[pp[i]]
        for j in range(k):
            left = prow_p[pp[j]]
            right = M[prow_x[px[j]], prow_y[py[j]]]
            if left != right:
                total += 1
                if w < cap:
                    wit[w, 0] = i
                    wit[w, 1] = j
                    w += 1
    return total, w
