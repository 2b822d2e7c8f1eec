"""Slow, independent reference implementations used only by the tests.

None of these share code with the package: Pell solutions come from a
linear search, class numbers from a union-find over all small forms, group
orders from enumerating matrices mod N, and hyperbolic conjugacy classes
from counting forms of discriminant t^2 - 4 trace by trace.
"""

from math import gcd, isqrt
from pathlib import Path

import numpy as np

DATA = Path(__file__).parent / "data"


def brute_pell(d, cap=200_000):
    """Smallest u >= 1 with d u^2 + 4 a square, by linear search (None past cap)."""
    for u in range(1, cap):
        t2 = d * u * u + 4
        t = isqrt(t2)
        if t * t == t2:
            return t, u
    return None


def brute_pell_minus(d, u_max):
    """Does t^2 - d u^2 = -4 have a solution with u <= u_max?"""
    for u in range(1, u_max + 1):
        t2 = d * u * u - 4
        if t2 >= 0:
            t = isqrt(t2)
            if t * t == t2:
                return True
    return False


def _small_forms(d, primitive_only=True):
    # every form with |a|, |c| <= d/4 + 1; each SL2(Z) class has members
    # there, and S, T-moves between them stay inside the box
    K = d // 4 + 1
    a = np.arange(-K, K + 1)
    A, C = np.meshgrid(a, a, indexing="ij")
    B2 = d + 4 * A * C
    mask = (A != 0) & (B2 >= 0)
    A, C, B2 = A[mask], C[mask], B2[mask]
    B = np.floor(np.sqrt(B2.astype(float))).astype(np.int64)
    B += (B + 1) ** 2 <= B2
    B -= B * B > B2
    sq = B * B == B2
    forms = set()
    for ai, bi, ci in zip(A[sq].tolist(), B[sq].tolist(), C[sq].tolist()):
        for bb in {bi, -bi}:
            if not primitive_only or gcd(gcd(ai, bb), ci) == 1:
                forms.add((ai, bb, ci))
    return sorted(forms)


def brute_class_number(d, wide=False, primitive_only=True):
    """Number of SL2(Z) classes of (by default primitive) forms of discriminant d.

    Forms are joined by S: (a, b, c) -> (c, -b, a) and by the translations
    T^k, which fix a and move b within its class mod 2|a|.  With ``wide``
    the twist (a, b, c) -> (-a, b, -c) is added, giving the wide class number.
    """
    forms = _small_forms(d, primitive_only)
    index = {f: i for i, f in enumerate(forms)}
    parent = list(range(len(forms)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    seen = {}
    for f in forms:
        a, b, c = f
        key = (a, b % (2 * abs(a)))
        if key in seen:
            union(index[f], seen[key])
        else:
            seen[key] = index[f]
        s = (c, -b, a)
        if s in index:
            union(index[f], index[s])
        if wide and (-a, b, -c) in index:
            union(index[f], index[(-a, b, -c)])
    return len({find(i) for i in range(len(forms))})


def psl2_elements(n):
    """All elements of PSL(2, Z/n), as frozensets {M, -M} of tuples."""
    out = set()
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    if (a * d - b * c) % n == 1 % n:
                        m = (a, b, c, d)
                        neg = tuple((-v) % n for v in m)
                        out.add(frozenset((m, neg)))
    return out


def brute_order(m, n):
    a, b, c, d = (v % n for v in m)
    cur = (a, b, c, d)
    ident = {(1 % n, 0, 0, 1 % n), ((-1) % n, 0, 0, (-1) % n)}
    for k in range(1, 10_000):
        if cur in ident:
            return k
        p, q, r, s = cur
        cur = ((p * a + q * c) % n, (p * b + q * d) % n, (r * a + s * c) % n, (r * b + s * d) % n)
    raise RuntimeError


def hyperbolic_classes_by_trace(t_max):
    """Primitive hyperbolic conjugacy classes of PSL(2, Z), counted by trace.

    The map (a, b; c, d) -> c x^2 + (d - a) x y - b y^2 is an SL2(Z)-equivariant
    bijection between matrices of trace t and forms of discriminant t^2 - 4,
    so union-find over all forms (primitive or not) counts the conjugacy
    classes of trace t.  Proper powers are then peeled off with
    tr(g^k) = V_k(tr g), V_{k+1} = t V_k - V_{k-1}.  No Pell equation and no
    reduction theory is involved.  Returns {trace: primitive class count}.
    """
    total = {t: brute_class_number(t * t - 4, primitive_only=False) for t in range(3, t_max + 1)}
    prim = {}
    for t in range(3, t_max + 1):
        powers = 0
        for t0, n0 in prim.items():
            v_prev, v = 2, t0
            while v < t:
                v_prev, v = v, t0 * v - v_prev
                if v == t:
                    powers += n0
        prim[t] = total[t] - powers
    return prim


def read_table():
    rows = []
    for line in (DATA / "modular_table.csv").read_text().splitlines():
        if line.startswith("#") or not line.strip():
            continue
        rows.append(line.split(","))
    return rows


def printed_tolerance(text):
    """Half a unit in the last printed digit."""
    if "." in text:
        return 0.5 * 10 ** -len(text.split(".")[1])
    return 0.5
