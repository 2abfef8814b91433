"""Dense univariate polynomials over Q as coefficient lists (lowest degree first).

Only what bivariate elimination needs: gcd, exact division, resultants of
bivariate polynomials (fraction-free Bareiss on the Sylvester matrix) and
rational roots.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from sympy import divisors

UPoly = list  # list[Fraction], no trailing zeros; [] is zero


def trim(p: Sequence) -> UPoly:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def deg(p: UPoly) -> int:
    return len(p) - 1


def add(p: UPoly, q: UPoly) -> UPoly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def neg(p: UPoly) -> UPoly:
    return [-c for c in p]


def sub(p: UPoly, q: UPoly) -> UPoly:
    return add(p, neg(q))


def mul(p: UPoly, q: UPoly) -> UPoly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def divmod_(p: UPoly, q: UPoly) -> tuple[UPoly, UPoly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    lead = q[-1]
    while len(r) >= len(q) and r:
        k = len(r) - len(q)
        c = r[-1] / lead
        quot[k] = c
        for i, b in enumerate(q):
            r[i + k] -= c * b
        r = trim(r)
    return trim(quot), r


def exact_div(p: UPoly, q: UPoly) -> UPoly:
    quot, rem = divmod_(p, q)
    if rem:
        raise ArithmeticError("inexact polynomial division")
    return quot


def monic(p: UPoly) -> UPoly:
    return [c / p[-1] for c in p] if p else []


def gcd(p: UPoly, q: UPoly) -> UPoly:
    p, q = trim(p), trim(q)
    while q:
        p, q = q, divmod_(p, q)[1]
    return monic(p)


def derivative(p: UPoly) -> UPoly:
    return trim([i * c for i, c in enumerate(p)][1:])


def evaluate(p: UPoly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def squarefree(p: UPoly) -> UPoly:
    if deg(p) < 1:
        return monic(p)
    return monic(exact_div(p, gcd(p, derivative(p))))


def _integer_coeffs(p: UPoly) -> list[int]:
    den = math.lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    g = math.gcd(*ints)
    return [c // g for c in ints]


def rational_roots(p: UPoly) -> list[Fraction]:
    """Distinct rational roots of a nonzero polynomial, sorted."""
    p = trim(p)
    if not p:
        raise ValueError("the zero polynomial has every root")
    roots = []
    while len(p) > 1 and p[0] == 0:
        p = p[1:]
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
    if deg(p) >= 1:
        ints = _integer_coeffs(squarefree(p))
        n = len(ints) - 1
        lead, const = abs(ints[-1]), abs(ints[0])
        for num in divisors(const):
            for den in divisors(lead):
                if math.gcd(num, den) != 1:
                    continue
                for s in (num, -num):
                    # homogenized integer evaluation of the candidate s/den
                    if sum(a * s**i * den ** (n - i) for i, a in enumerate(ints)) == 0:
                        roots.append(Fraction(s, den))
    return sorted(set(roots))


def remove_roots(p: UPoly, roots: Sequence[Fraction]) -> UPoly:
    """Squarefree part of ``p`` with the given (simple) roots divided out."""
    q = squarefree(p)
    for r in roots:
        q = exact_div(q, [-r, Fraction(1)])
    return q


# -- bivariate elimination -------------------------------------------------

BiPoly = dict  # {(i, j): coeff} over Q for monomials x^i y^j


def coeffs_in(f: BiPoly, var: int) -> list[UPoly]:
    """Coefficients of ``f`` as a polynomial in variable ``var`` (0 or 1) over Q[other]."""
    other = 1 - var
    top = max((e[var] for e in f), default=-1)
    out: list[list[Fraction]] = [[] for _ in range(top + 1)]
    for e, c in f.items():
        row = out[e[var]]
        k = e[other]
        if len(row) <= k:
            row.extend([Fraction(0)] * (k + 1 - len(row)))
        row[k] += Fraction(c)
    return [trim(r) for r in out]


def _bareiss_det(M: list[list[UPoly]]) -> UPoly:
    n = len(M)
    M = [row[:] for row in M]
    sign = 1
    prev: UPoly = [Fraction(1)]
    for k in range(n - 1):
        if not M[k][k]:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return []
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = sub(mul(M[k][k], M[i][j]), mul(M[i][k], M[k][j]))
                M[i][j] = exact_div(num, prev)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return neg(det) if sign < 0 else det


def resultant(p: list[UPoly], q: list[UPoly]) -> UPoly:
    """Resultant of two polynomials in Y with coefficients in Q[X] (lists lowest first)."""
    m, n = len(p) - 1, len(q) - 1
    if m < 0 or n < 0:
        return []
    if m == 0 and n == 0:
        return [Fraction(1)]
    if m == 0:
        out = [Fraction(1)]
        for _ in range(n):
            out = mul(out, p[0])
        return out
    if n == 0:
        out = [Fraction(1)]
        for _ in range(m):
            out = mul(out, q[0])
        return out
    size = m + n
    rows = []
    for i in range(n):
        row = [[] for _ in range(size)]
        for j, c in enumerate(reversed(p)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [[] for _ in range(size)]
        for j, c in enumerate(reversed(q)):
            row[i + j] = c
        rows.append(row)
    return _bareiss_det(rows)
