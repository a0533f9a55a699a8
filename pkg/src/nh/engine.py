"""Decision procedures on tuples of Newton polyhedra.

Enumerates d-tuples of faces satisfying the low-rank condition
rank(⋃F_ν) ≤ n−1 and the overlapping-cone condition ⋂(F_ν*)° ≠ ∅, applies
the evenness criterion to ⋃(F_ν ∩ Λ_ν), and emits re-checkable verdicts.
Also: the graph-case specialization (no overlap test), the GL(d)
elimination cascade with support-class closure, dyadic cone classification,
and the descending face / ascending cone chains.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence

from .exact_numeric import (
    StrictSystem,
    dot,
    is_zero,
    nullspace,
    primitive,
    rank,
    solve_strict,
    unit,
)
from .newton_poly import (
    DomainSpec,
    ExponentSet,
    Face,
    build_newton,
    closure_contains,
    cones_interior_intersection,
    face_by_cone_interior,
)
from .parity import is_even, odd_witness


# ---------------------------------------------------------------------------
# data
# ---------------------------------------------------------------------------

class LambdaTuple:
    """Λ = (Λ₁,…,Λ_d) over a common ambient spec, with built polyhedra."""

    def __init__(self, lambdas: Sequence[ExponentSet], spec: DomainSpec):
        if not lambdas:
            raise ValueError("need at least one exponent set")
        for lam in lambdas:
            if lam.ambient_dim != spec.n:
                raise ValueError("ambient dimension mismatch")
        self.lambdas = tuple(lambdas)
        self.spec = spec
        self._polyhedra: Optional[tuple] = None

    @property
    def d(self) -> int:
        return len(self.lambdas)

    @property
    def disjoint(self) -> bool:
        seen: set = set()
        for lam in self.lambdas:
            if seen & lam.points:
                return False
            seen |= lam.points
        return True

    @property
    def polyhedra(self) -> tuple:
        if self._polyhedra is None:
            self._polyhedra = tuple(
                build_newton(lam, self.spec) for lam in self.lambdas)
        return self._polyhedra


@dataclass(frozen=True)
class FaceTuple:
    faces: tuple
    union_rank: int
    overlap_witness: Optional[tuple] = None

    def union_lambda(self) -> list:
        pts: set = set()
        for f in self.faces:
            pts.update(f.lambda_points())
        return sorted(pts)


@dataclass
class Verdict:
    kind: str                              # "bounded" | "unbounded"
    tuples_examined: int = 0
    lo_tuples: int = 0
    face_tuple: Optional[FaceTuple] = None
    odd_subset: Optional[list] = None
    overlap_witness: Optional[tuple] = None
    union_rank: Optional[int] = None
    graph_axes: Optional[list] = None      # graph case: the subset A
    gl_matrix: Optional[tuple] = None      # general case: reaching matrix
    gl_classes: Optional[list] = None      # general case: support classes
    depth_cap_hit: bool = False

    @property
    def bounded(self) -> bool:
        return self.kind == "bounded"


class VectorPolynomial:
    """P(t) = (Σ_m c_m^ν t^m)_ν with exact nonzero rational coefficients."""

    def __init__(self, coefficients: dict, d: int, spec: DomainSpec):
        self.d = d
        self.spec = spec
        self.coefficients = {}
        for (nu, m), c in coefficients.items():
            c = Fraction(c)
            if c == 0:
                raise ValueError(f"zero coefficient at ({nu}, {m})")
            if not (0 <= nu < d):
                raise ValueError(f"component index {nu} out of range")
            m = tuple(int(x) for x in m)
            if len(m) != spec.n or any(x < 0 for x in m):
                raise ValueError(f"bad exponent {m}")
            self.coefficients[(nu, m)] = c

    def support(self, nu: int) -> frozenset:
        return frozenset(m for (j, m) in self.coefficients if j == nu)

    def supports(self) -> tuple:
        return tuple(self.support(nu) for nu in range(self.d))

    def row(self, nu: int) -> dict:
        return {m: c for (j, m), c in self.coefficients.items() if j == nu}

    def lambda_tuple(self) -> LambdaTuple:
        return LambdaTuple(
            [ExponentSet.of(self.support(nu), self.spec.n)
             for nu in range(self.d)], self.spec)


@dataclass(frozen=True)
class GLClass:
    matrix: tuple                 # d×d rows of Fractions, invertible
    poly: Optional[VectorPolynomial]   # None in generic mode
    supports: tuple               # tuple of frozensets of exponents


# ---------------------------------------------------------------------------
# low-rank / overlapping tuples
# ---------------------------------------------------------------------------

def _face_points(f: Face) -> list:
    if f.is_empty:
        return []
    return sorted(f.vertex_set) + sorted(f.ray_set)


def union_point_rank(faces: Sequence[Face]) -> int:
    pts: list = []
    for f in faces:
        pts.extend(_face_points(f))
    return rank(pts)


def enumerate_lo_tuples(lam: LambdaTuple) -> Iterator[FaceTuple]:
    """All d-tuples (F_ν), F_ν a face of N(Λ_ν,S) or empty, with
    rank(⋃F_ν) ≤ n−1 and a joint cone-interior witness attached.

    Enumeration order is deterministic (faces by descending dimension, then
    vertex/ray sets); a partial tuple is pruned only when its union already
    has full rank n — never on the overlap condition, which is not monotone.
    """
    n = lam.spec.n
    face_lists = [p.faces() for p in lam.polyhedra]

    def walk(level: int, chosen: list, pts: list) -> Iterator[FaceTuple]:
        if level == lam.d:
            r = rank(pts)
            if r <= n - 1:
                witness = cones_interior_intersection(chosen)
                if witness is not None:
                    yield FaceTuple(tuple(chosen), r, witness)
            return
        for f in face_lists[level]:
            new_pts = pts + _face_points(f)
            if rank(new_pts) >= n and level + 1 < lam.d:
                continue  # rank is monotone in the union: sound prune
            yield from walk(level + 1, chosen + [f], new_pts)

    yield from walk(0, [], [])


def _lo_scan(lam: LambdaTuple):
    """First odd low-rank overlapping tuple (deterministic), plus counters."""
    examined = lo = 0
    for ft in enumerate_lo_tuples(lam):
        lo += 1
        examined += 1
        u = ft.union_lambda()
        if not is_even(u):
            return ft, odd_witness(u), examined, lo
    return None, None, examined, lo


def decide_disjoint(lam: LambdaTuple) -> Verdict:
    """Main criterion for mutually disjoint Λ_ν (or d = 1): bounded iff
    ⋃(F_ν ∩ Λ_ν) is even for every low-rank overlapping face tuple."""
    if lam.d > 1 and not lam.disjoint:
        raise ValueError("exponent sets are not disjoint: use decide_general")
    ft, odd, examined, lo = _lo_scan(lam)
    if ft is not None:
        return Verdict(kind="unbounded", face_tuple=ft, odd_subset=odd,
                       overlap_witness=ft.overlap_witness,
                       union_rank=ft.union_rank,
                       tuples_examined=examined, lo_tuples=lo)
    return Verdict(kind="bounded", tuples_examined=examined, lo_tuples=lo)


# ---------------------------------------------------------------------------
# graph case
# ---------------------------------------------------------------------------

def decide_graph(lambda_last: ExponentSet, spec: DomainSpec) -> Verdict:
    """Λ = ({e₁},…,{e_n},Λ_{n+1}): unbounded iff some face F of
    N(Λ_{n+1},S) and A ⊆ {e₁,…,e_n} have rank(F ∪ A) ≤ n−1 with
    (F ∩ Λ_{n+1}) ∪ A odd.  No cone-overlap test."""
    n = spec.n
    p = build_newton(lambda_last, spec)
    units = [tuple(int(x) for x in unit(n, j)) for j in range(n)]
    examined = candidates = 0
    for f in p.faces():
        fpts = _face_points(f)
        flam = f.lambda_points()
        for size in range(n + 1):
            for axes in itertools.combinations(range(n), size):
                examined += 1
                a_vecs = [units[j] for j in axes]
                if rank(fpts + a_vecs) > n - 1:
                    continue
                candidates += 1
                u = sorted(set(flam) | set(a_vecs))
                if not is_even(u):
                    ft = FaceTuple((f,), rank(fpts + a_vecs), None)
                    return Verdict(
                        kind="unbounded", face_tuple=ft,
                        odd_subset=odd_witness(u),
                        union_rank=ft.union_rank,
                        graph_axes=[j for j in axes],
                        tuples_examined=examined, lo_tuples=candidates)
    return Verdict(kind="bounded", tuples_examined=examined,
                   lo_tuples=candidates)


def graph_vertex_criterion(lambda_last: ExponentSet,
                           spec: DomainSpec) -> bool:
    """Published double-Hilbert criterion (n = 2): bounded iff every vertex
    of N(Λ₃,S) has at least one even component.  Used for cross-validation."""
    p = build_newton(lambda_last, spec)
    return all(any(c % 2 == 0 for c in v) for v in p.vertices)


# ---------------------------------------------------------------------------
# GL(d) cascade and the general criterion
# ---------------------------------------------------------------------------

def _identity(d: int) -> tuple:
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(d))
                 for i in range(d))


def _matmul(a: tuple, b: tuple) -> tuple:
    d = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(d)) for j in range(d))
        for i in range(d))


def gl_cascade(p: VectorPolynomial,
               face_selector: Optional[Callable] = None) -> list:
    """U = A_d⋯A₂A₁ with A₁ = I; step k eliminates the monomial
    t^{m(A_k,k)} from components k+1,…,d via row operations with ratios
    −c^j_m/c^k_m.  Returns one GLClass per step (d entries)."""
    if face_selector is None:
        def face_selector(k, poly):
            return min(poly.support(k))
    d = p.d
    U = _identity(d)
    cur = p
    out = [GLClass(U, cur, cur.supports())]
    for k in range(d - 1):
        m = face_selector(k, cur)
        pivot = cur.coefficients.get((k, m))
        assert pivot is not None and pivot != 0, \
            "selected pivot monomial missing from component support"
        elem = [list(row) for row in _identity(d)]
        coef = dict(cur.coefficients)
        for j in range(k + 1, d):
            cj = cur.coefficients.get((j, m))
            if cj is None:
                continue
            ratio = -cj / pivot
            elem[j][k] = ratio
            for mm, c in cur.row(k).items():
                nc = coef.get((j, mm), Fraction(0)) + ratio * c
                if nc == 0:
                    coef.pop((j, mm), None)
                else:
                    coef[(j, mm)] = nc
        U = _matmul(tuple(tuple(r) for r in elem), U)
        cur = VectorPolynomial(coef, d, p.spec)
        out.append(GLClass(U, cur, cur.supports()))
    return out


def _det(mat: tuple) -> Fraction:
    d = len(mat)
    rows = [list(r) for r in mat]
    det = Fraction(1)
    for col in range(d):
        piv = next((i for i in range(col, d) if rows[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        for i in range(col + 1, d):
            f = rows[i][col] / rows[col][col]
            rows[i] = [a - f * b for a, b in zip(rows[i], rows[col])]
    return det


def enumerate_support_classes(p: VectorPolynomial, generic: bool = False,
                              depth_cap: Optional[int] = None):
    """Support patterns Λ(UP) reachable by downward single-pivot
    eliminations (breadth-first), deduplicated by support pattern.

    Returns (classes, cap_hit) where classes is a list of GLClass.
    """
    d = p.d
    if depth_cap is None:
        depth_cap = 2 ** d
    start_supports = p.supports()
    start = GLClass(_identity(d), None if generic else p, start_supports)
    classes: dict = {start_supports: start}
    queue = deque([(start, 0)])
    cap_hit = False
    while queue:
        cls, depth = queue.popleft()
        if depth >= depth_cap:
            cap_hit = True
            continue
        for k in range(d):
            for m in sorted(cls.supports[k]):
                for j in range(k + 1, d):
                    if m not in cls.supports[j]:
                        continue
                    elem = [list(row) for row in _identity(d)]
                    if generic:
                        new_supports = list(cls.supports)
                        new_supports[j] = frozenset(
                            (cls.supports[j] | cls.supports[k]) - {m})
                        new_supports = tuple(new_supports)
                        elem[j][k] = Fraction(-1)  # representative ratio
                        new_poly = None
                    else:
                        cur = cls.poly
                        ratio = -cur.coefficients[(j, m)] / \
                            cur.coefficients[(k, m)]
                        elem[j][k] = ratio
                        coef = dict(cur.coefficients)
                        for mm, c in cur.row(k).items():
                            nc = coef.get((j, mm), Fraction(0)) + ratio * c
                            if nc == 0:
                                coef.pop((j, mm), None)
                            else:
                                coef[(j, mm)] = nc
                        new_poly = VectorPolynomial(coef, d, p.spec)
                        new_supports = new_poly.supports()
                    if new_supports in classes:
                        continue
                    mat = _matmul(tuple(tuple(r) for r in elem), cls.matrix)
                    assert _det(mat) != 0, \
                        "elementary product lost invertibility"
                    nxt = GLClass(mat, new_poly, new_supports)
                    classes[new_supports] = nxt
                    queue.append((nxt, depth + 1))
    return list(classes.values()), cap_hit


def decide_general(p: VectorPolynomial, spec: Optional[DomainSpec] = None,
                   generic: bool = False,
                   depth_cap: Optional[int] = None) -> Verdict:
    """General (possibly non-disjoint) criterion: the evenness condition on
    low-rank overlapping tuples must hold for every reachable support class
    Λ(AP).  Components whose support becomes empty under elimination are
    dropped (they contribute the constant 0 to the phase)."""
    spec = spec or p.spec
    classes, cap_hit = enumerate_support_classes(p, generic=generic,
                                                 depth_cap=depth_cap)
    examined = lo = 0
    for cls in classes:
        live = [s for s in cls.supports if s]
        if not live:
            continue
        lam = LambdaTuple(
            [ExponentSet.of(s, spec.n) for s in live], spec)
        ft, odd, ex, lo_ = _lo_scan(lam)
        examined += ex
        lo += lo_
        if ft is not None:
            return Verdict(kind="unbounded", face_tuple=ft, odd_subset=odd,
                           overlap_witness=ft.overlap_witness,
                           union_rank=ft.union_rank,
                           gl_matrix=cls.matrix,
                           gl_classes=[c.supports for c in classes],
                           tuples_examined=examined, lo_tuples=lo,
                           depth_cap_hit=cap_hit)
    return Verdict(kind="bounded", tuples_examined=examined, lo_tuples=lo,
                   gl_classes=[c.supports for c in classes],
                   depth_cap_hit=cap_hit)


# ---------------------------------------------------------------------------
# dyadic classification and chains
# ---------------------------------------------------------------------------

def classify_dyadic(lam: LambdaTuple, j: Sequence[int]) -> list:
    """All face tuples whose closed cone intersection Cap(F*) contains j."""
    j = tuple(Fraction(x) for x in j)
    if len(j) != lam.spec.n:
        raise ValueError("dyadic index dimension mismatch")
    if not lam.spec.in_zs(j):
        raise ValueError(f"index {j} outside Z(S)")
    out = []
    for combo in itertools.product(*[p.faces() for p in lam.polyhedra]):
        if all(closure_contains(f, j) for f in combo):
            out.append(FaceTuple(tuple(combo), union_point_rank(combo), None))
    assert out, "cone covering of Z(S) failed"
    return out


def _cone_h_data(faces: Sequence[Face], n: int):
    from .newton_poly import _cone_h_rows
    eqs, ineqs = [], []
    for f in faces:
        for a, kind in _cone_h_rows(f):
            (eqs if kind == "eq" else ineqs).append(tuple(a))
    return eqs, ineqs


def cone_extreme_generators(eqs: list, ineqs: list, n: int):
    """Extreme rays + lineality basis of {x : Ex = 0, Ax ≥ 0} (exact
    double-description at desk scale: tight subsets of the right rank)."""
    lin = nullspace(eqs + ineqs, n=n)
    dim_l = len(lin)
    r_e = rank(eqs)
    s0 = n - dim_l - 1 - r_e
    if s0 < 0:
        return [], lin

    orth: list = []
    for l in lin:
        w = tuple(Fraction(x) for x in l)
        for o in orth:
            coef = dot(w, o) / dot(o, o)
            w = tuple(a - coef * b for a, b in zip(w, o))
        if not is_zero(w):
            orth.append(w)

    def reduce_mod_lin(w):
        w = tuple(Fraction(x) for x in w)
        for o in orth:
            coef = dot(w, o) / dot(o, o)
            w = tuple(a - coef * b for a, b in zip(w, o))
        return primitive(w)

    rays: list = []
    seen: set = set()
    for sub in itertools.combinations(range(len(ineqs)), s0):
        ns = nullspace(eqs + [ineqs[i] for i in sub], n=n)
        if len(ns) != dim_l + 1:
            continue
        w = next((v for v in ns if rank(lin + [v]) == dim_l + 1), None)
        if w is None:
            continue
        for cand in (w, tuple(-x for x in w)):
            if all(dot(a, cand) >= 0 for a in ineqs):
                key = reduce_mod_lin(cand)
                if not is_zero(key) and key not in seen:
                    seen.add(key)
                    rays.append(key)
                break
    return rays, lin


def cap_cone_generators(faces: Sequence[Face]):
    """Generators (extreme rays) and lineality of Cap(F*) = ⋂ F_ν*."""
    n = faces[0].parent.spec.n
    eqs, ineqs = _cone_h_data(faces, n)
    return cone_extreme_generators(eqs, ineqs, n)


def _conic_member(target, gens, lin, n) -> bool:
    """target ∈ CoSp(gens) ⊕ span(lin)?  (weak LP feasibility)"""
    nv = len(gens) + 2 * len(lin)
    if nv == 0:
        return is_zero(tuple(Fraction(x) for x in target))
    eqs = []
    for coord in range(n):
        a = [Fraction(g[coord]) for g in gens]
        for l in lin:
            a.extend([Fraction(l[coord]), -Fraction(l[coord])])
        eqs.append((tuple(a), Fraction(target[coord])))
    weak = tuple((tuple(unit(nv, j)), Fraction(0))
                 for j in range(len(gens)))
    return solve_strict(StrictSystem(dim=nv, equalities=tuple(eqs),
                                     weak=weak)) is not None


def build_face_chain(tuple_: FaceTuple,
                     cap_generators: Sequence[Sequence]) -> list:
    """Descending face chains F_ν(0) ⪰ F_ν(1) ⪰ … ⪰ F_ν(N) from the
    ordered generators p₁,…,p_N of Cap(F*): F_ν(s) is the face whose open
    dual cone contains p₁+⋯+p_s (the relative-interior point of the
    essential cone C_ν(s)); s = 0 gives the whole polyhedron.

    Returns a list of length N+1 of d-tuples of faces.
    """
    faces = tuple_.faces
    n = faces[0].parent.spec.n
    gens = [tuple(Fraction(x) for x in g) for g in cap_generators]
    for g in gens:
        if not all(closure_contains(f, g) for f in faces):
            raise ValueError(f"generator {g} is not in Cap(F*)")
    true_rays, lin = cap_cone_generators(faces)
    for r in true_rays:
        if not _conic_member(r, gens, lin, n):
            raise ValueError("given generators do not span Cap(F*)")

    chains = []
    acc = tuple(Fraction(0) for _ in range(n))
    chains.append(tuple(f.parent.improper_face() for f in faces))
    for s, g in enumerate(gens, start=1):
        acc = tuple(a + b for a, b in zip(acc, g))
        step = []
        for f in faces:
            if f.is_empty:
                # the dual of the empty face is all of Z(S); its faces are
                # not normal-fan cones, so the chain component stays empty
                # (descent, endpoint and the overlap property all hold)
                step.append(f)
            else:
                step.append(face_by_cone_interior(f.parent, acc))
        chains.append(tuple(step))
    return chains
