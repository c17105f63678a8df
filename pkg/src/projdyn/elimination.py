"""Exact rank of sparse rational matrices.

Rows are ``{column: value}`` dicts.  ``bareiss_rank`` is fraction-free
elimination over the integers; every intermediate entry is a minor of the
input, so each division by the previous pivot is exact.  ``modular_rank``
is the same elimination over GF(p) and is only ever used as a lower bound.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def integer_rows(rows):
    """Clear denominators row by row and strip each row's content.

    Scaling a row by a nonzero constant does not change the rank.
    """
    out = []
    for row in rows:
        items = [(c, Fraction(v)) for c, v in row.items() if v != 0]
        if not items:
            out.append({})
            continue
        den = 1
        for _, v in items:
            den = lcm(den, v.denominator)
        ints = {c: int(v * den) for c, v in items}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        out.append({c: v // g for c, v in ints.items()})
    return out


def bareiss_rank(rows, ncols: int) -> int:
    """Rank of an integer matrix by sparse fraction-free (Bareiss) elimination.

    Columns are processed left to right; in each column the pivot is the
    remaining row whose entry has the smallest bit length.  Columns with no
    nonzero entry below the pivot rows are skipped.
    """
    active = [dict(r) for r in rows if r]
    prev = 1
    rank = 0
    for col in range(ncols):
        best = None
        best_bits = None
        for idx, row in enumerate(active):
            v = row.get(col)
            if v:
                bits = abs(v).bit_length()
                if best is None or bits < best_bits:
                    best, best_bits = idx, bits
        if best is None:
            continue
        pivot_row = active.pop(best)
        p = pivot_row[col]
        rest = []
        for row in active:
            a = row.get(col, 0)
            if a:
                new = {}
                for c, v in row.items():
                    if c != col:
                        new[c] = p * v
                for c, v in pivot_row.items():
                    if c != col:
                        new[c] = new.get(c, 0) - a * v
                row = {c: v // prev for c, v in new.items() if v}
            elif p != prev:
                row = {c: (v * p) // prev for c, v in row.items()}
            if row:
                rest.append(row)
        active = rest
        prev = p
        rank += 1
        if not active:
            break
    return rank


def modular_rank(rows, ncols: int, prime: int) -> int:
    """Rank over GF(prime) of an integer matrix (a lower bound for the rational rank)."""
    active = []
    for r in rows:
        row = {c: v % prime for c, v in r.items() if v % prime}
        if row:
            active.append(row)
    rank = 0
    for col in range(ncols):
        best = None
        for idx, row in enumerate(active):
            if col in row and (best is None or len(row) < len(active[best])):
                best = idx
        if best is None:
            continue
        pivot_row = active.pop(best)
        inv = pow(pivot_row[col], prime - 2, prime)
        pivot_row = {c: v * inv % prime for c, v in pivot_row.items()}
        rest = []
        for row in active:
            a = row.get(col)
            if a:
                for c, v in pivot_row.items():
                    nv = (row.get(c, 0) - a * v) % prime
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
            if row:
                rest.append(row)
        active = rest
        rank += 1
        if not active:
            break
    return rank
