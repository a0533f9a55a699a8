"""Floating-point verification harness for the oscillatory multipliers.

Evaluates the multiplier integrals and their dyadic pieces in
log-coordinates with adaptive tensor Gauss–Legendre panels, after folding
the 2ⁿ sign orthants onto the positive box.  The folding groups sign
vectors by the induced monomial sign pattern, so the parity cancellation
(even exponent sets give an identically zero integrand) happens exactly,
before any quadrature error enters.

Probes: log-divergence along odd witnesses (in the rank-m lattice normal
form of the face span, where the free directions factor out as exact
logarithms), Van der Corput decay along cone rays, and dyadic-sum
plateaus for certified-bounded inputs.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .exact_numeric import rank

LOG_QUARTER = math.log(0.25)
LOG_TWO = math.log(2.0)
CELL_TOL = 1e-9
PRUNE_TOL = 1e-10
H_MASS = 2.0 * math.log(2.0)          # ∫|h| per axis


def max_cells() -> int:
    return int(os.environ.get("NH_MAX_CELLS", 2 ** 22))


# ---------------------------------------------------------------------------
# cutoff
# ---------------------------------------------------------------------------

class CutoffSpec:
    """psi: 1 on [0,1/2], 0 outside [0,2), glued with g(x)=exp(-1/x);
    eta(u) = psi(u) - psi(2u); h(u) = eta(u)/u (odd)."""

    @staticmethod
    def _g(x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        pos = x > 0
        out[pos] = np.exp(-1.0 / x[pos])
        return out

    @classmethod
    def psi(cls, u):
        a = np.abs(np.asarray(u, dtype=float))
        out = np.zeros_like(a)
        out[a <= 0.5] = 1.0
        mid = (a > 0.5) & (a < 2.0)
        gm = cls._g(2.0 - a[mid])
        out[mid] = gm / (gm + cls._g(a[mid] - 0.5))
        return out

    @classmethod
    def eta(cls, u):
        return cls.psi(u) - cls.psi(2.0 * np.asarray(u, dtype=float))

    @classmethod
    def h(cls, u):
        u = np.asarray(u, dtype=float)
        out = np.zeros_like(u)
        nz = u != 0
        out[nz] = cls.eta(u[nz]) / u[nz]
        return out

    @classmethod
    def partition_deviation(cls, samples, k_range=range(-30, 31)) -> float:
        """max |Σ_k eta(2^k u) − 1| over the samples (telescoping check)."""
        u = np.asarray(samples, dtype=float)
        total = np.zeros_like(u)
        for k in k_range:
            total += cls.eta((2.0 ** k) * u)
        return float(np.max(np.abs(total - 1.0)))


# ---------------------------------------------------------------------------
# quadrature plumbing
# ---------------------------------------------------------------------------

@dataclass
class QuadratureResult:
    value: complex
    abs_error_estimate: float
    panels: int
    converged: bool = True


_GAUSS_CACHE: dict = {}


def _leggauss(order: int):
    if order not in _GAUSS_CACHE:
        _GAUSS_CACHE[order] = np.polynomial.legendre.leggauss(order)
    return _GAUSS_CACHE[order]


def _tensor_rule(lo, hi, order: int):
    """Nodes (N, n) and weights (N,) for ∏[lo_i, hi_i]."""
    axes_x, axes_w = [], []
    for a, b in zip(lo, hi):
        x, w = _leggauss(order)
        axes_x.append(0.5 * (b - a) * x + 0.5 * (a + b))
        axes_w.append(0.5 * (b - a) * w)
    grids = np.meshgrid(*axes_x, indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=-1)
    wts = axes_w[0]
    for w in axes_w[1:]:
        wts = np.multiply.outer(wts, w)
    return pts, np.asarray(wts).ravel()


def adaptive_box(fun: Callable, lo, hi, tol_cell: float = CELL_TOL,
                 cell_cap: Optional[int] = None,
                 order: int = 32,
                 split_score: Optional[Callable] = None) -> QuadratureResult:
    """Adaptive tensor Gauss–Legendre on a box: each cell is accepted when
    the order-32 and order-16 values agree to tol_cell, else bisected along
    its widest axis (or the axis ranked highest by split_score(clo, chi),
    e.g. estimated oscillation count).  Hitting the cell cap flags the
    result instead of raising."""
    cell_cap = cell_cap if cell_cap is not None else max_cells()
    half = order // 2
    stack = [(tuple(map(float, lo)), tuple(map(float, hi)))]
    value = 0.0 + 0.0j
    err = 0.0
    panels = 0
    converged = True
    while stack:
        clo, chi = stack.pop()
        pts, wts = _tensor_rule(clo, chi, order)
        v_hi = complex(np.dot(wts, fun(pts)))
        pts2, wts2 = _tensor_rule(clo, chi, half)
        v_lo = complex(np.dot(wts2, fun(pts2)))
        delta = abs(v_hi - v_lo)
        panels += 1
        if delta <= tol_cell or panels + len(stack) >= cell_cap:
            if delta > tol_cell:
                converged = False
            value += v_hi
            err += delta
            continue
        if split_score is not None:
            scores = split_score(clo, chi)
            axis = max(range(len(clo)), key=lambda i: scores[i])
        else:
            axis = max(range(len(clo)), key=lambda i: chi[i] - clo[i])
        mid = 0.5 * (clo[axis] + chi[axis])
        stack.append((clo, tuple(mid if i == axis else c
                                 for i, c in enumerate(chi))))
        stack.append((tuple(mid if i == axis else c
                            for i, c in enumerate(clo)), chi))
    return QuadratureResult(value, err, panels, converged)


# ---------------------------------------------------------------------------
# sign folding
# ---------------------------------------------------------------------------

def sigma_groups(monomials: Sequence[tuple], n: int):
    """Fold Σ_{σ∈{±1}ⁿ}(−1)^{|σ|} onto the positive orthant: group σ by
    the induced sign pattern (σ^{m_k})_k and sum the orientation signs.
    Zero-weight groups (the parity cancellation) are dropped exactly."""
    groups: dict = {}
    for signs in itertools.product((1, -1), repeat=n):
        orient = 1
        for s in signs:
            orient *= s
        pat = tuple(
            -1 if sum(mk[j] for j in range(n) if signs[j] < 0) % 2 else 1
            for mk in monomials)
        groups[pat] = groups.get(pat, 0) + orient
    return [(w, np.array(pat, dtype=float))
            for pat, w in sorted(groups.items()) if w != 0]


# ---------------------------------------------------------------------------
# monomial data
# ---------------------------------------------------------------------------

@dataclass
class _Phase:
    """Phase Σ_k A_k s_k ∏_j exp(u_j e_{kj}) with folded sign groups."""

    exponents: np.ndarray          # (K, dim) float exponents in u-coords
    amplitudes: np.ndarray         # (K,) real amplitudes (c·ξ·2^{−J·m})
    groups: list                   # [(weight, (K,) sign vector)]

    def integrand(self, weight_fn: Optional[Callable] = None) -> Callable:
        expo = self.exponents
        amps = self.amplitudes

        def fun(pts: np.ndarray) -> np.ndarray:
            mono = np.exp(pts @ expo.T)          # (N, K)
            base = mono * amps                    # (N, K)
            out = np.zeros(pts.shape[0], dtype=complex)
            for w, sgn in self.groups:
                out += w * np.exp(1j * (base @ sgn))
            if weight_fn is not None:
                out *= weight_fn(pts)
            return out
        return fun

    def total_swing(self, u_max: float) -> float:
        """Upper bound on |phase| over the box (monotone envelope)."""
        return float(np.sum(np.abs(self.amplitudes)
                            * np.exp(np.sum(np.abs(self.exponents), axis=1)
                                     * u_max)))

    def split_scores(self, clo, chi):
        """Per-axis oscillation estimate on a cell: peak amplitude times
        exponent times width, so refinement tracks the fast directions."""
        clo = np.asarray(clo, dtype=float)
        chi = np.asarray(chi, dtype=float)
        ubound = np.where(self.exponents >= 0, chi, clo)   # (K, n)
        peak = np.exp(np.sum(self.exponents * ubound, axis=1)) \
            * np.abs(self.amplitudes)                      # (K,)
        widths = chi - clo
        return (np.abs(self.exponents) * peak[:, None]).sum(axis=0) \
            * widths + 1e-12 * widths


def _monomial_list(p, restrict: Optional[Sequence[set]] = None):
    """(nu, m, float coeff) triples, optionally restricted per component."""
    out = []
    for (nu, m), c in sorted(p.coefficients.items()):
        if restrict is not None and m not in restrict[nu]:
            continue
        out.append((nu, m, float(c)))
    if not out:
        raise ValueError("no monomials selected")
    return out


def _amplitudes(monos, xi, j=None):
    amps = []
    for nu, m, c in monos:
        a = c * float(xi[nu])
        if j is not None:
            ex = -float(np.dot(j, m))
            a *= 2.0 ** max(min(ex, 500.0), -500.0)
        amps.append(a)
    return np.array(amps, dtype=float)


# ---------------------------------------------------------------------------
# core integrals
# ---------------------------------------------------------------------------

def pv_integral(p, xi, a, b, tol_cell: float = CELL_TOL) -> QuadratureResult:
    """∫ over ∏{a_j<|t_j|<b_j} of e^{i⟨ξ,P(t)⟩} ∏dt_j/t_j via the sign
    split onto the positive box, in log coordinates u = log t."""
    n = p.spec.n
    a = [float(x) for x in a]
    b = [float(x) for x in b]
    if len(a) != n or len(b) != n or any(
            not (0.0 < x < y) for x, y in zip(a, b)):
        raise ValueError("need 0 < a < b componentwise")
    monos = _monomial_list(p)
    groups = sigma_groups([m for _, m, _ in monos], n)
    if not groups:
        return QuadratureResult(0.0 + 0.0j, 0.0, 0)
    phase = _Phase(np.array([m for _, m, _ in monos], dtype=float),
                   _amplitudes(monos, xi), groups)
    lo = [math.log(x) for x in a]
    hi = [math.log(x) for x in b]
    return adaptive_box(phase.integrand(), lo, hi, tol_cell)


class _ShellGrid:
    """Cached tensor rules on the dyadic shell [log 1/4, log 2]ⁿ with the
    ∏η(e^{u_ℓ}) weight absorbed (h(t)·t = η(t))."""

    def __init__(self, n: int):
        self.n = n
        self._rules: dict = {}

    def rule(self, order: int, level: int = 0):
        """Order-`order` tensor rule on a uniform 2^level-per-axis
        subdivision of the shell box, all subcells concatenated."""
        key = (order, level)
        if key not in self._rules:
            edges = np.linspace(LOG_QUARTER, LOG_TWO, 2 ** level + 1)
            pts_parts, wts_parts = [], []
            for corner in itertools.product(range(2 ** level),
                                            repeat=self.n):
                lo = [edges[c] for c in corner]
                hi = [edges[c + 1] for c in corner]
                pp, ww = _tensor_rule(lo, hi, order)
                pts_parts.append(pp)
                wts_parts.append(ww)
            pts = np.concatenate(pts_parts, axis=0)
            wts = np.concatenate(wts_parts, axis=0)
            eta_w = np.prod(CutoffSpec.eta(np.exp(pts)), axis=1)
            self._rules[key] = (pts, wts * eta_w)
        return self._rules[key]


_SHELL_GRIDS: dict = {}


def _shell_grid(n: int) -> _ShellGrid:
    if n not in _SHELL_GRIDS:
        _SHELL_GRIDS[n] = _ShellGrid(n)
    return _SHELL_GRIDS[n]


def _face_restriction(face_tuple, d: int):
    restrict = [set() for _ in range(d)]
    for nu, f in enumerate(face_tuple.faces):
        restrict[nu].update(f.lambda_points())
    return restrict


class PieceFamily:
    """Dyadic pieces I_J(P_F, ξ) over a fixed (polynomial, face tuple):
    nodes, η-weights, sign groups, and the J-independent monomial arrays
    t^m on each quadrature rule are computed once, so sweeping (J, ξ) only
    costs one complex exponential per rule."""

    def __init__(self, p, face_tuple):
        if len(face_tuple.faces) != p.d:
            raise ValueError(
                "face tuple arity does not match the polynomial")
        self.n = p.spec.n
        restrict = _face_restriction(face_tuple, p.d)
        self.trivial = all(not r for r in restrict)
        if self.trivial:
            return
        self.monos = _monomial_list(p, restrict)
        self.groups = sigma_groups([m for _, m, _ in self.monos], self.n)
        self.trivial = not self.groups
        if self.trivial:
            return
        self.expo = np.array([m for _, m, _ in self.monos], dtype=float)
        self.sgn = np.stack([s for _, s in self.groups], axis=1)  # (K, G)
        self.gw = np.array([w for w, _ in self.groups], dtype=float)
        self.swing_scale = np.exp(
            np.sum(np.abs(self.expo), axis=1) * LOG_TWO)
        self._rules: dict = {}

    def _rule(self, key):
        if key not in self._rules:
            order, level = key
            pts, wts = _shell_grid(self.n).rule(order, level)
            self._rules[key] = (wts, np.exp(pts @ self.expo.T))
        return self._rules[key]

    def _value(self, key, amps: np.ndarray) -> complex:
        wts, mono = self._rule(key)
        phases = (mono * amps) @ self.sgn           # (N, G)
        return complex(np.dot(wts, np.exp(1j * phases) @ self.gw))

    def evaluate(self, j, xi, tol_cell: float = CELL_TOL) -> QuadratureResult:
        if self.trivial:
            return QuadratureResult(0.0 + 0.0j, 0.0, 0)
        amps = _amplitudes(self.monos, xi, j)
        swing = float(np.dot(np.abs(amps), self.swing_scale))
        ladder = [(8, 0), (16, 0), (32, 0), (16, 1), (16, 2)]
        start = 2 if swing > 2.0 else (1 if swing > 1e-3 else 0)
        lo_key = (ladder[start][0] // 2, ladder[start][1])
        v_lo = self._value(lo_key, amps)
        panels = 1
        for key in ladder[start:]:
            v_hi = self._value(key, amps)
            delta = abs(v_hi - v_lo)
            if delta <= tol_cell:
                return QuadratureResult(v_hi, delta, panels)
            v_lo = v_hi
            panels += 1
        phase = _Phase(self.expo, amps, self.groups)

        def weighted(u):
            return np.prod(CutoffSpec.eta(np.exp(u)), axis=1)

        return adaptive_box(phase.integrand(weight_fn=weighted),
                            [LOG_QUARTER] * self.n, [LOG_TWO] * self.n,
                            tol_cell, order=32 if swing > 20.0 else 16)


def dyadic_piece(p, face_tuple, j, xi,
                 tol_cell: float = CELL_TOL) -> QuadratureResult:
    """I_J(P_F, ξ): only monomials m ∈ F_ν ∩ Λ_ν, scaled by 2^{−J·m},
    integrated against ∏h(t_ℓ)dt_ℓ over the shells |t_ℓ| ∈ [1/4, 2]."""
    return PieceFamily(p, face_tuple).evaluate(j, xi, tol_cell)


# ---------------------------------------------------------------------------
# divergence probe
# ---------------------------------------------------------------------------

def _row_hermite(rows: Sequence[Sequence[int]]):
    """Row-lattice basis in echelon form (integer row operations only);
    every input row is an exact integer combination of the basis."""
    mat = [list(map(int, r)) for r in rows]
    n = len(mat[0])
    basis: list = []
    row_idx = 0
    for col in range(n):
        pivots = [r for r in mat[row_idx:] if any(r[col:])]
        # gcd-reduce the current column below row_idx
        while True:
            live = [i for i in range(row_idx, len(mat)) if mat[i][col] != 0]
            if len(live) <= 1:
                break
            live.sort(key=lambda i: abs(mat[i][col]))
            a, b = live[0], live[1]
            q = mat[b][col] // mat[a][col]
            mat[b] = [x - q * y for x, y in zip(mat[b], mat[a])]
        live = [i for i in range(row_idx, len(mat)) if mat[i][col] != 0]
        if not live:
            continue
        i = live[0]
        mat[row_idx], mat[i] = mat[i], mat[row_idx]
        if mat[row_idx][col] < 0:
            mat[row_idx] = [-x for x in mat[row_idx]]
        row_idx += 1
    return [r for r in mat[:row_idx]]


def _lattice_coords(point, basis):
    """Integer coordinates of `point` in the echelon lattice basis."""
    rem = list(map(int, point))
    coords = [0] * len(basis)
    for i, b in enumerate(basis):
        lead = next(k for k, x in enumerate(b) if x != 0)
        if rem[lead] % b[lead] != 0:
            raise ValueError("point outside the face lattice")
        q = rem[lead] // b[lead]
        coords[i] = q
        rem = [x - q * y for x, y in zip(rem, b)]
    if any(rem):
        raise ValueError("point outside the face lattice")
    return coords


@dataclass
class ProbeResult:
    slope: float
    intercept: float
    r_squared: float
    rows: list = field(default_factory=list)   # (scale, value, bound/fit)
    inconclusive: bool = False


def divergence_probe(p, witness, s0, xi, shrink_sequence,
                     tol_cell: float = CELL_TOL) -> ProbeResult:
    """Growth of |I(P_F, ξ, a, b)| against the free-direction log volume
    ∏_{j>m} log(b_j/a_j), in the rank-m normal form of Sp(⋃F_ν): the first
    m coordinates carry the phase (exponents rewritten in a lattice basis
    of the span), the remaining free directions factor out exactly as
    logarithms.  A slope bounded away from 0 corroborates divergence; a
    slope statistically indistinguishable from 0 is reported inconclusive
    with the full data table.
    """
    n = p.spec.n
    restrict = _face_restriction(witness, p.d)
    monos = _monomial_list(p, restrict)
    points = sorted({m for _, m, _ in monos})
    basis = _row_hermite(points)
    m_rank = len(basis)
    assert m_rank == rank(points) <= n - 1, "witness span is not low rank"
    alpha = np.array([_lattice_coords(mk, basis) for _, mk, _ in monos],
                     dtype=float)
    groups = sigma_groups([mk for _, mk, _ in monos], n)
    amps = _amplitudes(monos, xi)

    rows = []
    for a, b in shrink_sequence:
        a = [float(x) for x in a]
        b = [float(x) for x in b]
        if any(not (0.0 < x < y) for x, y in zip(a, b)):
            raise ValueError("need 0 < a < b componentwise")
        free_log = 1.0
        for jdx in range(m_rank, n):
            free_log *= math.log(b[jdx] / a[jdx])
        if not groups:
            rows.append((free_log, 0.0, 0.0))
            continue
        phase = _Phase(alpha, amps, groups)
        lo = [math.log(a[i]) for i in range(m_rank)]
        hi = [math.log(b[i]) for i in range(m_rank)]
        core = adaptive_box(phase.integrand(), lo, hi, tol_cell)
        rows.append((free_log, abs(core.value) * free_log,
                     core.abs_error_estimate * free_log))

    xs = np.array([r[0] for r in rows])
    ys = np.array([r[1] for r in rows])
    slope, intercept = np.polyfit(xs, ys, 1)
    fit = slope * xs + intercept
    ss_res = float(np.sum((ys - fit) ** 2))
    ss_tot = float(np.sum((ys - np.mean(ys)) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    spread = float(np.std(ys)) + 1e-15
    inconclusive = abs(slope) * (xs.max() - xs.min()) < 10.0 * min(
        1e-6, spread) and abs(slope) < 1e-6
    rows = [(x, y, float(f)) for (x, y, _e), f in zip(rows, fit)]
    return ProbeResult(float(slope), float(intercept), r2, rows,
                       inconclusive)


# ---------------------------------------------------------------------------
# decay along cone rays
# ---------------------------------------------------------------------------

@dataclass
class DecayResult:
    delta: float
    constant: float
    rows: list        # (scale k, |I_J|, C·min_ν{|2^{−J·m_ν}ξ_ν|^{−δ}, 1})


def decay_check(p, face_tuple, ray, xi, m_choices=None,
                k_max: int = 12) -> DecayResult:
    """Van der Corput decay table along J = k·ray: |I_J| against the
    fitted envelope C·min_ν min{|2^{−J·m_ν}ξ_ν|^{−δ}, 1} with δ fitted by
    least squares on the decaying range (δ is existential in the source
    estimate, so it is measured, not assumed)."""
    if not p.lambda_tuple().disjoint and p.d > 1:
        raise ValueError("decay table requires disjoint exponent sets")
    if m_choices is None:
        m_choices = [f.lambda_points()[0] if f.lambda_points() else None
                     for f in face_tuple.faces]
    ray = np.array([float(x) for x in ray])
    family = PieceFamily(p, face_tuple)
    samples = []
    for k in range(k_max + 1):
        j = k * ray
        piece = family.evaluate(j, xi)
        args = [abs((2.0 ** max(min(-float(np.dot(j, m)), 500.0), -500.0))
                    * float(xi[nu]))
                for nu, m in enumerate(m_choices) if m is not None]
        arg = min(args) if args else 0.0
        samples.append((k, abs(piece.value), arg))

    fit_pts = [(math.log(arg), math.log(v))
               for _k, v, arg in samples if arg > 1.0 and v > 1e-13]
    if len(fit_pts) >= 2:
        xs = np.array([x for x, _ in fit_pts])
        ys = np.array([y for _, y in fit_pts])
        slope, _ = np.polyfit(xs, ys, 1)
        delta = max(-float(slope), 0.0)
    else:
        delta = 0.5  # nothing to fit: all pieces at or below noise
    consts = [v / min(arg ** (-delta), 1.0) if arg > 0 else v
              for _k, v, arg in samples if v > 1e-13]
    constant = max(consts) if consts else 1.0
    rows = [(k, v, constant * (min(arg ** (-delta), 1.0) if arg > 0
                               else 1.0))
            for k, v, arg in samples]
    return DecayResult(delta, constant, rows)


# ---------------------------------------------------------------------------
# dyadic sum probe
# ---------------------------------------------------------------------------

@dataclass
class SumProbeResult:
    partial_sums: list      # per ξ: dict radius → Σ_{|J|≤radius}|I_J|
    max_sum: float
    skipped_bound: float    # total prune bound mass that was skipped
    rows: list              # (radius, max-over-ξ partial sum, skipped)


def _prune_bound(monos, xi, j, n: int) -> float:
    """Rigorous |I_J| bound from ∫h = 0: for each axis ℓ, the phase may be
    frozen at a reference t_ℓ at the cost of its total variation, so
    |I_J| ≤ (∫|h|)ⁿ · min_ℓ Σ_{m_ℓ>0} |c ξ| 2^{−J·m} 2^{|m|₁}."""
    best = math.inf
    for axis in range(n):
        tot = 0.0
        for nu, m, c in monos:
            if m[axis] == 0:
                continue
            ex = -float(np.dot(j, m)) + sum(m)
            tot += abs(c * float(xi[nu])) * 2.0 ** max(min(ex, 500.0),
                                                       -500.0)
        best = min(best, tot)
    return (H_MASS ** n) * min(best, 1.0)


def _box_indices(spec, radius: int):
    """Lattice J with |J|_∞ ≤ radius inside Z(S), lexicographic order."""
    axes = []
    for jdx in range(spec.n):
        if jdx in spec.S:
            axes.append(range(0, radius + 1))
        else:
            axes.append(range(-radius, radius + 1))
    return itertools.product(*axes)


def multiplier_sum_probe(p, xi_samples, radius: int,
                         report_radii: Optional[Sequence[int]] = None,
                         threads: int = 1) -> SumProbeResult:
    """Σ_{|J|≤R, J∈Z(S)} |I_J(ξ)| per sampled ξ, reported at nested radii
    so plateaus are visible.  Pieces below the rigorous prune bound are
    skipped and their bound mass is accumulated, never silently dropped.
    Summation is pairwise in fixed lexicographic J order."""
    spec = p.spec
    n = spec.n
    improper = tuple(poly.improper_face()
                     for poly in p.lambda_tuple().polyhedra)
    from .engine import FaceTuple
    ft = FaceTuple(improper, 0, None)
    monos = _monomial_list(p)
    if report_radii is None:
        report_radii = sorted({radius, max(radius - 5, 0)})
    report_radii = sorted(set(int(r) for r in report_radii) | {radius})

    all_j = [j for j in _box_indices(spec, radius)]
    family = PieceFamily(p, ft)

    def sum_for_xi(xi):
        vals = []
        skipped = 0.0
        for j in all_j:
            bound = _prune_bound(monos, xi, j, n)
            if bound < PRUNE_TOL:
                skipped += bound
                vals.append((j, 0.0))
                continue
            piece = family.evaluate(j, xi)
            vals.append((j, abs(piece.value)))
        sums = {}
        for r in report_radii:
            arr = np.array([v for j, v in vals
                            if max(abs(c) for c in j) <= r], dtype=float)
            sums[r] = float(np.sum(arr)) if arr.size else 0.0
        return sums, skipped

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(sum_for_xi, xi_samples))
    else:
        results = [sum_for_xi(xi) for xi in xi_samples]

    partial = [s for s, _ in results]
    skipped_total = sum(k for _, k in results)
    max_sum = max((s[radius] for s in partial), default=0.0)
    rows = [(r, max((s[r] for s in partial), default=0.0), skipped_total)
            for r in report_radii]
    return SumProbeResult(partial, max_sum, skipped_total, rows)
