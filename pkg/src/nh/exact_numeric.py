"""Exact rational linear algebra.

Vectors are tuples of ``fractions.Fraction`` (plain ints are accepted
anywhere and promoted).  Everything here is pure and immutable: rank by
fraction-free elimination, strict-inequality feasibility by an exact
rational simplex with Bland's rule, and GF(2) span tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Rational = Fraction
RVector = Sequence  # a sequence of Rational/int of fixed length
RMatrix = Sequence  # a sequence of RVector of common length


# ---------------------------------------------------------------------------
# vector helpers
# ---------------------------------------------------------------------------

def vec(*coords) -> tuple:
    return tuple(Fraction(c) for c in coords)


def dot(a: RVector, b: RVector) -> Fraction:
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


def vsub(a: RVector, b: RVector) -> tuple:
    if len(a) != len(b):
        raise ValueError("dimension mismatch")
    return tuple(Fraction(x) - Fraction(y) for x, y in zip(a, b))


def vadd(a: RVector, b: RVector) -> tuple:
    if len(a) != len(b):
        raise ValueError("dimension mismatch")
    return tuple(Fraction(x) + Fraction(y) for x, y in zip(a, b))


def vscale(c, a: RVector) -> tuple:
    c = Fraction(c)
    return tuple(c * Fraction(x) for x in a)


def is_zero(a: RVector) -> bool:
    return all(x == 0 for x in a)


def unit(n: int, j: int) -> tuple:
    return tuple(Fraction(1) if i == j else Fraction(0) for i in range(n))


def _clear_denominators(v: RVector) -> tuple:
    """Integer vector on the same ray through the origin (sign preserved)."""
    fr = [Fraction(x) for x in v]
    if not fr:
        return ()
    lcm = 1
    for x in fr:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    return tuple(int(x * lcm) for x in fr)


def primitive(v: RVector) -> tuple:
    """Primitive integer vector with the same direction (orientation kept)."""
    iv = _clear_denominators(v)
    g = 0
    for x in iv:
        g = math.gcd(g, abs(x))
    if g == 0:
        return iv
    return tuple(x // g for x in iv)


def canonicalize(v: RVector) -> tuple:
    """Primitive integer vector with first nonzero coordinate positive.

    This is the dedup key for undirected normals; `primitive` keeps
    orientation for one-sided facet normals.
    """
    p = primitive(v)
    for x in p:
        if x != 0:
            if x < 0:
                return tuple(-y for y in p)
            break
    return p


# ---------------------------------------------------------------------------
# rank / nullspace
# ---------------------------------------------------------------------------

def rank(rows: RMatrix) -> int:
    """Row rank by fraction-free integer Gaussian elimination."""
    mat = [list(_clear_denominators(r)) for r in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    for r in mat:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
    rk = 0
    for col in range(ncols):
        piv = next((i for i in range(rk, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[rk], mat[piv] = mat[piv], mat[rk]
        p = mat[rk][col]
        for i in range(rk + 1, len(mat)):
            if mat[i][col] == 0:
                continue
            q = mat[i][col]
            row = [p * a - q * b for a, b in zip(mat[i], mat[rk])]
            g = 0
            for x in row:
                g = math.gcd(g, abs(x))
            if g > 1:
                row = [x // g for x in row]
            mat[i] = row
        rk += 1
        if rk == len(mat):
            break
    return rk


def rref(rows: RMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals; returns (mat, pivot_cols)."""
    mat = [[Fraction(x) for x in r] for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        p = mat[r][col]
        mat[r] = [x / p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                q = mat[i][col]
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def nullspace(rows: RMatrix, n: Optional[int] = None) -> list[tuple]:
    """Primitive integer basis of {x : A x = 0}.  `n` is the ambient
    dimension when `rows` is empty."""
    if not rows:
        if n is None:
            raise ValueError("ambient dimension required for empty matrix")
        return [primitive(unit(n, j)) for j in range(n)]
    ncols = len(rows[0])
    mat, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -mat[i][f]
        basis.append(primitive(x))
    return basis


def solve_linear(rows: RMatrix, rhs: Sequence) -> Optional[tuple]:
    """One exact solution of A x = b, or None if inconsistent."""
    if not rows:
        return ()
    ncols = len(rows[0])
    aug = [list(r) + [Fraction(b)] for r, b in zip(rows, rhs)]
    mat, pivots = rref(aug)
    for row in mat:
        if all(x == 0 for x in row[:-1]) and row[-1] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, pc in enumerate(pivots):
        if pc == ncols:  # pivot in the rhs column: inconsistent (caught above)
            return None
        x[pc] = mat[i][-1]
    return tuple(x)


# ---------------------------------------------------------------------------
# strict-inequality feasibility (exact simplex, Bland's rule)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StrictSystem:
    """a·x = b (equalities), a·x ≥ b (weak), a·x > b (strict) over ℝ^dim."""

    dim: int
    equalities: tuple = ()
    weak: tuple = ()
    strict: tuple = ()

    def __post_init__(self):
        for group in (self.equalities, self.weak, self.strict):
            for a, _b in group:
                if len(a) != self.dim:
                    raise ValueError("constraint dimension mismatch")

    def satisfied_by(self, x: RVector) -> bool:
        if len(x) != self.dim:
            return False
        return (
            all(dot(a, x) == Fraction(b) for a, b in self.equalities)
            and all(dot(a, x) >= Fraction(b) for a, b in self.weak)
            and all(dot(a, x) > Fraction(b) for a, b in self.strict)
        )


class _Unbounded(Exception):
    pass


def _simplex_max(A: list[list[Fraction]], b: list[Fraction],
                 c: list[Fraction]) -> tuple[bool, list[Fraction], Fraction]:
    """maximize c·z  s.t.  A z = b, z ≥ 0, exact two-phase simplex.

    Returns (feasible, z, value).  Raises _Unbounded if the phase-2
    objective is unbounded above (callers arrange boundedness).
    """
    m = len(A)
    n = len(A[0]) if m else len(c)
    # normalize rhs signs
    A = [row[:] for row in A]
    b = b[:]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]

    # tableau with artificial variables n..n+m-1
    T = [A[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)]
         + [b[i]] for i in range(m)]
    basis = list(range(n, n + m))
    total = n + m

    def pivot(row: int, col: int) -> None:
        p = T[row][col]
        T[row] = [x / p for x in T[row]]
        for i in range(m):
            if i != row and T[i][col] != 0:
                q = T[i][col]
                T[i] = [x - q * y for x, y in zip(T[i], T[row])]
        basis[row] = col

    def optimize(obj: list[Fraction], allowed: int) -> Fraction:
        # maximize obj·z over columns [0, allowed) via Bland's rule
        while True:
            # reduced costs: r_j = obj_j - y·A_j with y from the basis
            lam = [obj[basis[i]] for i in range(m)]
            entering = None
            for j in range(allowed):
                if j in basis:
                    continue
                rc = obj[j] - sum(lam[i] * T[i][j] for i in range(m))
                if rc > 0:
                    entering = j
                    break
            if entering is None:
                val = sum(lam[i] * T[i][-1] for i in range(m))
                return val
            # ratio test, Bland tie-break on basis variable index
            leave, best = None, None
            for i in range(m):
                if T[i][entering] > 0:
                    ratio = T[i][-1] / T[i][entering]
                    if best is None or ratio < best or (
                            ratio == best and basis[i] < basis[leave]):
                        best, leave = ratio, i
            if leave is None:
                raise _Unbounded
            pivot(leave, entering)

    # phase 1: maximize -(sum of artificials)
    obj1 = [Fraction(0)] * n + [Fraction(-1)] * m
    val1 = optimize(obj1, total)
    if val1 < 0:
        return False, [], Fraction(0)
    # drive remaining artificials out of the basis (they sit at level 0)
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is not None:
                pivot(i, col)
    # rows still basic in an artificial are redundant; freeze them by leaving
    # the artificial basic at zero and never letting artificials re-enter.
    obj2 = list(c) + [Fraction(0)] * m
    optimize(obj2, n)
    z = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            z[basis[i]] = T[i][-1]
    value = sum(ci * zi for ci, zi in zip(c, z))
    return True, z, value


def solve_strict(sys: StrictSystem) -> Optional[tuple]:
    """Witness x for the system, or None.

    Slack formulation: maximize t subject to a·x − t ≥ b per strict row and
    t ≤ 1; feasible with optimum t > 0 iff a strict witness exists.  The
    witness is re-checked exactly before being returned.
    """
    n = sys.dim
    has_strict = bool(sys.strict)
    if not (sys.equalities or sys.weak or sys.strict):
        return tuple(Fraction(0) for _ in range(n))

    # variables: u(n), v(n) with x = u − v, then [tp, tn] if strict rows
    # exist, then one surplus per weak row, per strict row, and one slack
    # for the cap t ≤ 1.
    nuv = 2 * n
    nt = 2 if has_strict else 0
    n_weak = len(sys.weak)
    n_strict = len(sys.strict)
    ncols = nuv + nt + n_weak + n_strict + (1 if has_strict else 0)

    A: list[list[Fraction]] = []
    b: list[Fraction] = []

    def row(coeff_x: RVector, t_coeff: Fraction, surplus_col: Optional[int],
            slack_col: Optional[int], rhs) -> None:
        r = [Fraction(0)] * ncols
        for j, a in enumerate(coeff_x):
            a = Fraction(a)
            r[j] = a
            r[n + j] = -a
        if has_strict and t_coeff:
            r[nuv] = t_coeff
            r[nuv + 1] = -t_coeff
        if surplus_col is not None:
            r[surplus_col] = Fraction(-1)
        if slack_col is not None:
            r[slack_col] = Fraction(1)
        A.append(r)
        b.append(Fraction(rhs))

    base = nuv + nt
    for a_, b_ in sys.equalities:
        row(a_, Fraction(0), None, None, b_)
    for i, (a_, b_) in enumerate(sys.weak):
        row(a_, Fraction(0), base + i, None, b_)
    for i, (a_, b_) in enumerate(sys.strict):
        row(a_, Fraction(-1), base + n_weak + i, None, b_)
    if has_strict:
        r = [Fraction(0)] * ncols
        r[nuv] = Fraction(1)
        r[nuv + 1] = Fraction(-1)
        r[-1] = Fraction(1)
        A.append(r)
        b.append(Fraction(1))

    c = [Fraction(0)] * ncols
    if has_strict:
        c[nuv] = Fraction(1)
        c[nuv + 1] = Fraction(-1)

    feasible, z, value = _simplex_max(A, b, c)
    if not feasible:
        return None
    if has_strict and value <= 0:
        return None
    x = tuple(z[j] - z[n + j] for j in range(n))
    assert sys.satisfied_by(x), "simplex witness failed exact re-check"
    return x


# ---------------------------------------------------------------------------
# GF(2)
# ---------------------------------------------------------------------------

def _to_mask(bits: Sequence[int]) -> int:
    m = 0
    for i, b in enumerate(bits):
        if int(b) % 2:
            m |= 1 << i
    return m


def gf2_contains(span_vectors: Iterable[Sequence[int]],
                 target: Sequence[int]) -> bool:
    """target ∈ span_{GF(2)}(span_vectors)?  Gaussian elimination on bitmasks."""
    span = list(span_vectors)
    n = len(target)
    for v in span:
        if len(v) != n:
            raise ValueError("GF(2) vector length mismatch")
    pivots: dict[int, int] = {}  # bit position -> reduced row mask
    for v in span:
        m = _to_mask(v)
        for p, row in pivots.items():
            if m >> p & 1:
                m ^= row
        if m:
            pivots[m.bit_length() - 1] = m
    t = _to_mask(target)
    for p, row in pivots.items():
        if t >> p & 1:
            t ^= row
    return t == 0


def gf2_solve(span_vectors: Sequence[Sequence[int]],
              target: Sequence[int]) -> Optional[list[int]]:
    """Indices I with ⊕_{i∈I} span_vectors[i] = target (mod 2), or None."""
    n = len(target)
    rows = []  # (mask, combo-mask over input indices)
    for i, v in enumerate(span_vectors):
        if len(v) != n:
            raise ValueError("GF(2) vector length mismatch")
        rows.append((_to_mask(v), 1 << i))
    pivots: dict[int, tuple[int, int]] = {}
    for m, tag in rows:
        for p, (rm, rt) in pivots.items():
            if m >> p & 1:
                m ^= rm
                tag ^= rt
        if m:
            pivots[m.bit_length() - 1] = (m, tag)
    t, tag = _to_mask(target), 0
    for p, (rm, rt) in pivots.items():
        if t >> p & 1:
            t ^= rm
            tag ^= rt
    if t != 0:
        return None
    return [i for i in range(len(span_vectors)) if tag >> i & 1]
