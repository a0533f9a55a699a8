"""Even/odd exponent sets.

A finite Ω ⊂ ℤ₊ⁿ is even when every subset sum α₁m₁+⋯+α_N m_N (α_j ∈ {0,1})
has at least one even component; odd otherwise.  The fast path reduces mod 2:
Ω is odd iff the all-ones vector lies in the GF(2) span of Γ(Ω) — subset sums
over ℤ₂ are exactly the GF(2) span.  The equivalence is validated against the
explicit subset-sum oracle in the test suite.
"""

from __future__ import annotations

import itertools
from typing import Optional, Sequence

from .exact_numeric import gf2_contains, gf2_solve

SIGMA_CAP = 20


def parity_signature(q: Sequence[int]) -> tuple:
    """Γ(q): componentwise parity bits."""
    return tuple(int(c) % 2 for c in q)


def sigma_class(omega) -> list:
    """The multiset Σ(Ω) of all 2^|Ω| subset sums (oracle path)."""
    pts = sorted(omega)
    if len(pts) > SIGMA_CAP:
        raise ValueError(
            f"|omega| = {len(pts)} exceeds the enumeration cap "
            f"{SIGMA_CAP}; use the GF(2) fast path")
    n = len(pts[0]) if pts else 0
    sums = []
    for mask in itertools.product((0, 1), repeat=len(pts)):
        s = [0] * n
        for a, p in zip(mask, pts):
            if a:
                for i in range(n):
                    s[i] += p[i]
        sums.append(tuple(s))
    return sums


def is_even(omega) -> bool:
    pts = sorted(omega)
    if not pts:
        return True
    n = len(pts[0])
    gammas = [parity_signature(p) for p in pts]
    return not gf2_contains(gammas, (1,) * n)


def odd_witness(omega) -> Optional[list]:
    """A subset of Ω whose sum is componentwise odd, or None if Ω is even.

    Deterministic: solves the GF(2) system over the sorted point list, then
    returns the lexicographically smallest witness of minimal size among
    solutions of the form (particular ⊕ nullspace combination) when the
    enumeration is small, else the particular solution.
    """
    pts = sorted(omega)
    if not pts:
        return None
    n = len(pts[0])
    gammas = [parity_signature(p) for p in pts]
    idx = gf2_solve(gammas, (1,) * n)
    if idx is None:
        return None
    if len(pts) <= 16:
        best = None
        for mask in itertools.product((0, 1), repeat=len(pts)):
            if not any(mask):
                continue
            s = [0] * n
            for a, p in zip(mask, pts):
                if a:
                    for i in range(n):
                        s[i] += p[i]
            if all(c % 2 == 1 for c in s):
                cand = [pts[i] for i in range(len(pts)) if mask[i]]
                key = (len(cand), cand)
                if best is None or key < best[0]:
                    best = (key, cand)
        witness = best[1]
    else:
        witness = [pts[i] for i in idx]
    total = [sum(c) for c in zip(*witness)]
    assert all(c % 2 == 1 for c in total), "odd witness does not sum odd"
    return witness
