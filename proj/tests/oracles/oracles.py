"""Independent reference values for the C++ tests (pure Python, mpmath, scipy)."""
import itertools
import math

import mpmath
from scipy import stats


def gf_mul(a, b, poly, m):
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> m:
            a ^= poly
    return r


def dlog_table(poly, m, g):
    t, x = {}, 1
    for i in range(2 ** m - 1):
        t[x] = i
        x = gf_mul(x, g, poly, m)
    return t


def eps_row(state, m, b, dlog):
    # brick j -> one-hot block of 2^m bits; 0 -> position 0, g^i -> i (i = 0 written as 2^m - 1)
    row = 0
    for j in range(b):
        x = (state >> (m * j)) & ((1 << m) - 1)
        pos = 0 if x == 0 else (dlog[x] or (2 ** m - 1))
        row |= 1 << (j * 2 ** m + pos)
    return row


def gf2_rank(rows):
    rank, rows = 0, list(rows)
    while rows:
        pivot = rows.pop()
        if pivot == 0:
            continue
        rank += 1
        low = pivot & -pivot
        rows = [r ^ pivot if r & low else r for r in rows]
    return rank


def rank_counts(m, b, k, poly, g):
    dlog = dlog_table(poly, m, g)
    rows = [eps_row(v, m, b, dlog) for v in range(2 ** (m * b))]
    counts = {}
    for tup in itertools.product(rows, repeat=k):
        r = gf2_rank(tup)
        counts[r] = counts.get(r, 0) + 1
    return dict(sorted(counts.items()))


def mat_apply(M, v, poly, m):
    out = []
    for row in M:
        acc = 0
        for a, x in zip(row, v):
            acc ^= gf_mul(a, x, poly, m)
        out.append(acc)
    return out


def related_counts(M, poly, m):
    q = 2 ** m
    tot = cpl = 0
    for i, j, x, y in itertools.product(range(q), repeat=4):
        vs = [[i, x], [i, y], [j, x], [j, y]]
        ws = [v + mat_apply(M, v, poly, m) for v in vs]
        pairs = lambda a: (a[0] == a[1] and a[2] == a[3]) or (a[0] == a[2] and a[1] == a[3]) or (a[0] == a[3] and a[1] == a[2])
        t = all(pairs([w[c] for w in ws]) for c in range(4))
        c = pairs([tuple(w) for w in ws])
        tot += t
        cpl += c
    return tot, cpl


def orbit_dim(M, poly, m, b, t, g):
    dlog = dlog_table(poly, m, g)
    rows = []
    for v in range(2 ** (m * b)):
        vec = [(v >> (m * j)) & ((1 << m) - 1) for j in range(b)]
        row, shift = 0, 0
        for _ in range(t):
            s = sum(x << (m * j) for j, x in enumerate(vec))
            row |= eps_row(s, m, b, dlog) << shift
            shift += b * 2 ** m
            vec = mat_apply(M, vec, poly, m)
        rows.append(row)
    return gf2_rank(rows)


if __name__ == "__main__":
    mpmath.mp.dps = 60
    print("rank counts m=2 b=2 k=3:", rank_counts(2, 2, 3, 0x7, 2))
    print("rank counts m=2 b=2 k=4:", rank_counts(2, 2, 4, 0x7, 2))
    print("related good M:", related_counts([[1, 2], [2, 1]], 0x7, 2))
    print("related zero-minor M:", related_counts([[1, 1], [0, 1]], 0x7, 2))
    print("orbit dim m=2 b=2 t=2 M=[[1,1],[0,1]]:", orbit_dim([[1, 1], [0, 1]], 0x7, 2, 2, 2, 2))
    print("chi2 sf(2, 2):", stats.chi2.sf(2.0, 2))
    print("chi2 sf(7.5, 3):", stats.chi2.sf(7.5, 3))
    print("full-rank fraction 4x16:", math.prod(1 - 2.0 ** (i - 16) for i in range(4)))
    eps = mpmath.log(mpmath.e, 2) * mpmath.sqrt(2 * mpmath.log(2))
    print("epsilon:", eps)
    print("e^sqrt(32 ln 128):", mpmath.e ** mpmath.sqrt(32 * mpmath.log(128)))
    print("log2(8!):", mpmath.log(math.factorial(8), 2))
    print("2^128 (128 - log2 e) as log2:", mpmath.log(2 ** 128 * (128 - mpmath.log(mpmath.e, 2)), 2))
    print("AES 0x57*0x83:", hex(gf_mul(0x57, 0x83, 0x11B, 8)))
