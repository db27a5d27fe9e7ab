"""Alexander polynomial of a braid closure from the reduced Burau representation."""

from __future__ import annotations

import itertools

from ..braid import BraidWord, closure_structure


class Laurent(dict):
    """Integer Laurent polynomial in t, stored as exponent -> coefficient."""

    @classmethod
    def mono(cls, c, e=0):
        return cls({e: c}) if c else cls()

    def _clean(self):
        return Laurent({e: c for e, c in self.items() if c})

    def __add__(self, other):
        out = Laurent(self)
        for e, c in other.items():
            out[e] = out.get(e, 0) + c
        return out._clean()

    def __neg__(self):
        return Laurent({e: -c for e, c in self.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = Laurent()
        for e1, c1 in self.items():
            for e2, c2 in other.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return out._clean()

    def divide(self, den: "Laurent") -> "Laurent":
        """Exact division; raises ValueError if there is a remainder."""
        rem, quo = Laurent(self), Laurent()
        top = max(den)
        lead = den[top]
        floor = min(self, default=0) - min(den)
        while rem:
            e = max(rem)
            if e - top < floor:
                raise ValueError("inexact division")
            q, r = divmod(rem[e], lead)
            if r:
                raise ValueError("inexact division")
            term = Laurent.mono(q, e - top)
            quo = quo + term
            rem = rem - term * den
        return quo

    def at_one(self) -> int:
        return sum(self.values())

    def symmetrized(self) -> "Laurent":
        """Shift so the exponents are symmetric about 0 and fix the sign by p(1) = 1."""
        if not self:
            return Laurent()
        lo, hi = min(self), max(self)
        if (lo + hi) % 2:
            raise ValueError("cannot centre a polynomial of odd span")
        s = -(lo + hi) // 2
        out = Laurent({e + s: c for e, c in self.items()})
        if out.at_one() < 0:
            out = -out
        return out

    def coefficients(self) -> dict:
        return dict(sorted(self.items()))


def burau_matrix(n: int, i: int, sign: int) -> list:
    """Reduced Burau matrix of sigma_i^sign on n strands, size n - 1."""
    m = n - 1
    M = [[Laurent.mono(1 if r == c else 0) for c in range(m)] for r in range(m)]
    r = i - 1
    if sign > 0:
        M[r][r] = Laurent.mono(-1, 1)
        if r > 0:
            M[r][r - 1] = Laurent.mono(1, 1)
        if r < m - 1:
            M[r][r + 1] = Laurent.mono(1)
    else:
        M[r][r] = Laurent.mono(-1, -1)
        if r > 0:
            M[r][r - 1] = Laurent.mono(1)
        if r < m - 1:
            M[r][r + 1] = Laurent.mono(1, -1)
    return M


def _matmul(A, B):
    m = len(A)
    return [[sum((A[r][k] * B[k][c] for k in range(m)), Laurent()) for c in range(m)]
            for r in range(m)]


def _det(M) -> Laurent:
    m = len(M)
    total = Laurent()
    for perm in itertools.permutations(range(m)):
        inv = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        term = Laurent.mono(-1 if inv % 2 else 1)
        for r, c in enumerate(perm):
            term = term * M[r][c]
            if not term:
                break
        total = total + term
    return total


def alexander_from_burau(w: BraidWord) -> Laurent:
    """Symmetric Alexander polynomial of the closure of w (knots only)."""
    if closure_structure(w).component_count != 1:
        raise ValueError("the Burau oracle handles knots only")
    n = w.strands
    m = n - 1
    B = [[Laurent.mono(1 if r == c else 0) for c in range(m)] for r in range(m)]
    for i, s in w.letters:
        B = _matmul(B, burau_matrix(n, i, s))
    I_B = [[(Laurent.mono(1) if r == c else Laurent()) - B[r][c] for c in range(m)]
           for r in range(m)]
    det = _det(I_B) * Laurent({0: 1, 1: -1})
    return det.divide(Laurent({0: 1, n: -1})).symmetrized()
