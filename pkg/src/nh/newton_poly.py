"""Generalized Newton polyhedra N(Ω,S) = Ch(Ω + ℝ₊^S).

Exact V- and H-representations, the full face lattice (including the
improper face and the empty face of dimension −1), dual cones with the
Πa/Πb split for lower-dimensional polyhedra, interior-membership tests
for cones, joint cone-interior intersections, essential faces, and the
F = N(Λ∩F, S₀) closure structure.

Hull algorithm is brute force at desk scale: candidate facet normals come
from (m−1)-subsets of {vertex differences ∪ rays} via exact nullspaces,
validated one-sided against all V-data.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .exact_numeric import (
    StrictSystem,
    dot,
    is_zero,
    nullspace,
    primitive,
    rank,
    solve_strict,
    unit,
    vsub,
)

IntVec = tuple  # tuple of ints


def _ivec(v) -> IntVec:
    return tuple(int(x) for x in v)


@dataclass(frozen=True)
class ExponentSet:
    points: frozenset
    ambient_dim: int

    @staticmethod
    def of(points: Iterable[Sequence[int]], n: int) -> "ExponentSet":
        pts = frozenset(_ivec(p) for p in points)
        for p in pts:
            if len(p) != n:
                raise ValueError("exponent dimension mismatch")
            if any(c < 0 for c in p):
                raise ValueError(f"negative exponent in {p}")
        return ExponentSet(pts, n)

    def sorted_points(self) -> list:
        return sorted(self.points)

    def __iter__(self):
        return iter(sorted(self.points))

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class DomainSpec:
    """Ambient dimension n and the set S of local (bounded) directions,
    0-based internally."""

    n: int
    S: frozenset

    @staticmethod
    def of(n: int, S: Iterable[int]) -> "DomainSpec":
        s = frozenset(int(j) for j in S)
        if not s <= set(range(n)):
            raise ValueError("S must be a subset of {0,..,n-1}")
        return DomainSpec(n, s)

    def rays(self) -> list:
        return [_ivec(unit(self.n, j)) for j in sorted(self.S)]

    def in_zs(self, x: Sequence) -> bool:
        """x ∈ Z(S): nonnegative in local directions, free otherwise."""
        return all(Fraction(x[j]) >= 0 for j in self.S)


@dataclass(frozen=True)
class Face:
    parent: "NewtonPolyhedron" = field(compare=False, repr=False)
    generator_idx: frozenset        # maximal set of tight facets_a indices
    vertex_set: frozenset
    ray_set: frozenset
    dim: int
    is_empty: bool = False
    is_improper: bool = False

    def __eq__(self, other):
        if not isinstance(other, Face):
            return NotImplemented
        return (self.is_empty, self.vertex_set, self.ray_set) == (
            other.is_empty, other.vertex_set, other.ray_set)

    def __hash__(self):
        return hash((self.is_empty, self.vertex_set, self.ray_set))

    def __le__(self, other: "Face") -> bool:
        """Face order: self ⪯ other (self is a face of other)."""
        if self.is_empty:
            return True
        if other.is_empty:
            return False
        return (self.vertex_set <= other.vertex_set
                and self.ray_set <= other.ray_set)

    def sort_key(self):
        return (-self.dim, sorted(self.vertex_set), sorted(self.ray_set))

    def lambda_points(self) -> list:
        """Points of the underlying exponent set lying on this face (F ∩ Ω)."""
        if self.is_empty:
            return []
        p = self.parent
        out = []
        for m in p.omega.sorted_points():
            if all(dot(p.facets_a[i][0], m) == p.facets_a[i][1]
                   for i in self.generator_idx):
                out.append(m)
        return out


@dataclass(frozen=True)
class Cone:
    """CoSp(generators) ⊕ lineality, generators canonical primitive ints."""

    generators: tuple
    lineality: tuple


@dataclass(frozen=True)
class NewtonPolyhedron:
    omega: ExponentSet
    spec: DomainSpec
    vertices: frozenset
    rays: frozenset
    facets_a: tuple     # ((normal, level), ...), oriented with P on the ≥ side
    basis_b: tuple      # ((normal, level), ...) spanning V⊥(P), pairwise ⊥
    dim: int

    # -- basic queries ----------------------------------------------------

    def contains(self, x: Sequence) -> bool:
        return (all(dot(q, x) >= r for q, r in self.facets_a)
                and all(dot(q, x) == s for q, s in self.basis_b))

    def faces(self) -> list:
        return enumerate_faces(self)

    def improper_face(self) -> Face:
        return next(f for f in self.faces() if f.is_improper)

    def empty_face(self) -> Face:
        return next(f for f in self.faces() if f.is_empty)

    def face_by_key(self, vertex_set, ray_set) -> Optional[Face]:
        key = (frozenset(_ivec(v) for v in vertex_set),
               frozenset(_ivec(r) for r in ray_set))
        for f in self.faces():
            if not f.is_empty and (f.vertex_set, f.ray_set) == key:
                return f
        return None


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _is_extreme(p, others, rays) -> bool:
    """p not a convex combination of `others` plus nonnegative ray moves."""
    nvars = len(others) + len(rays)
    n = len(p)
    eqs = []
    for coord in range(n):
        a = [Fraction(o[coord]) for o in others] + \
            [Fraction(r[coord]) for r in rays]
        eqs.append((tuple(a), Fraction(p[coord])))
    eqs.append((tuple([Fraction(1)] * len(others) + [Fraction(0)] * len(rays)),
                Fraction(1)))
    weak = tuple((tuple(unit(nvars, j)), Fraction(0)) for j in range(nvars))
    sys = StrictSystem(dim=nvars, equalities=tuple(eqs), weak=weak)
    return solve_strict(sys) is None


def build_newton(omega: ExponentSet, spec: DomainSpec) -> NewtonPolyhedron:
    if not omega.points:
        raise ValueError("empty exponent set")
    if omega.ambient_dim != spec.n:
        raise ValueError("dimension mismatch between omega and spec")
    n = spec.n
    rays = spec.rays()
    pts = omega.sorted_points()

    verts = [p for p in pts
             if _is_extreme(p, [q for q in pts if q != p], rays)]
    v0 = verts[0]
    directions = [vsub(v, v0) for v in verts[1:]] + [tuple(map(Fraction, r))
                                                    for r in rays]
    m = rank(directions)

    # Πb: orthogonal integer basis of V⊥(P)
    perp = nullspace(directions, n=n) if directions else \
        nullspace([], n=n)
    basis_b = []
    for w in perp:  # exact Gram-Schmidt, re-primitivized at each step
        w = tuple(map(Fraction, w))
        for u, _s in basis_b:
            coef = dot(w, u) / dot(u, u)
            w = tuple(a - coef * Fraction(b) for a, b in zip(w, u))
        if not is_zero(w):
            basis_b.append((primitive(w), None))
    basis_b = tuple((q, dot(q, v0)) for q, _ in basis_b)

    facets: dict = {}
    if m >= 1:
        # candidate edge directions: all pairwise vertex differences + rays
        # (a facet's tangent directions need not pass through verts[0])
        pair_dirs = [vsub(v, w)
                     for v, w in itertools.combinations(verts, 2)]
        dedup_dirs = []
        seen = set()
        for d in pair_dirs + directions:
            c = primitive(d)
            if c not in seen and not is_zero(c):
                seen.add(c)
                dedup_dirs.append(c)
        perp_rows = [q for q, _ in basis_b]
        for sub in itertools.combinations(dedup_dirs, m - 1):
            ns = nullspace(list(sub) + perp_rows, n=n)
            if len(ns) != 1:
                continue
            for q in (ns[0], tuple(-x for x in ns[0])):
                if any(dot(q, r) < 0 for r in rays):
                    continue
                levels = [dot(q, v) for v in verts]
                level = min(levels)
                tight_v = [v for v, lv in zip(verts, levels) if lv == level]
                tight_r = [r for r in rays if dot(q, r) == 0]
                fdirs = [vsub(v, tight_v[0]) for v in tight_v[1:]] + tight_r
                if rank(fdirs) == m - 1:
                    facets.setdefault(q, level)
    facets_a = tuple(sorted(facets.items()))

    p = NewtonPolyhedron(
        omega=omega, spec=spec,
        vertices=frozenset(verts), rays=frozenset(rays),
        facets_a=facets_a, basis_b=basis_b, dim=m)

    # V/H consistency: every point of Ω satisfies the H-data, every facet is
    # tight on its defining vertices.
    for x in pts:
        assert p.contains(x), "H-representation rejects an input point"
    return p


# ---------------------------------------------------------------------------
# face lattice
# ---------------------------------------------------------------------------

_FACE_CACHE: dict = {}


def enumerate_faces(p: NewtonPolyhedron) -> list:
    key = id(p)
    cached = _FACE_CACHE.get(key)
    if cached is not None and cached[0] is p:
        return cached[1]

    verts = sorted(p.vertices)
    rays = sorted(p.rays)
    k = len(p.facets_a)
    seen: dict = {}
    for size in range(k + 1):
        for idx in itertools.combinations(range(k), size):
            vs = [v for v in verts
                  if all(dot(p.facets_a[i][0], v) == p.facets_a[i][1]
                         for i in idx)]
            if not vs:
                continue
            rs = [r for r in rays
                  if all(dot(p.facets_a[i][0], r) == 0 for i in idx)]
            fkey = (frozenset(vs), frozenset(rs))
            if fkey in seen:
                continue
            gen = frozenset(
                i for i in range(k)
                if all(dot(p.facets_a[i][0], v) == p.facets_a[i][1]
                       for v in vs)
                and all(dot(p.facets_a[i][0], r) == 0 for r in rs))
            dims = rank([vsub(v, vs[0]) for v in vs[1:]] +
                        [tuple(map(Fraction, r)) for r in rs])
            seen[fkey] = Face(
                parent=p, generator_idx=gen,
                vertex_set=fkey[0], ray_set=fkey[1], dim=dims,
                is_improper=(fkey == (p.vertices, p.rays)))
    faces = sorted(seen.values(), key=Face.sort_key)
    faces.append(Face(parent=p, generator_idx=frozenset(range(k)),
                      vertex_set=frozenset(), ray_set=frozenset(),
                      dim=-1, is_empty=True))
    _FACE_CACHE[key] = (p, faces)
    return faces


def face_cone(f: Face) -> Cone:
    p = f.parent
    lineality = tuple(q for q, _ in p.basis_b)
    if f.is_empty:
        gens = tuple(q for q, _ in p.facets_a)
        return Cone(generators=gens, lineality=lineality)
    if f.is_improper:
        return Cone(generators=(), lineality=lineality)
    gens = tuple(p.facets_a[i][0] for i in sorted(f.generator_idx))
    return Cone(generators=gens, lineality=lineality)


# ---------------------------------------------------------------------------
# cone membership
# ---------------------------------------------------------------------------

def interior_contains(f: Face, x: Sequence) -> bool:
    """x ∈ (F*)°, the open dual cone of the face, in the full-space sense."""
    p = f.parent
    x = tuple(Fraction(c) for c in x)
    if len(x) != p.spec.n:
        raise ValueError("ambient dimension mismatch")
    if f.is_empty:
        return (not is_zero(x)) and p.spec.in_zs(x)
    vs = sorted(f.vertex_set)
    rho = dot(x, vs[0])
    if any(dot(x, v) != rho for v in vs[1:]):
        return False
    if any(dot(x, r) != 0 for r in f.ray_set):
        return False
    if f.is_improper:
        return not is_zero(x)
    if any(dot(x, w) <= rho for w in p.vertices - f.vertex_set):
        return False
    if any(dot(x, r) <= 0 for r in p.rays - f.ray_set):
        return False
    return True


def closure_contains(f: Face, x: Sequence) -> bool:
    """x ∈ F*, the closed dual cone (weak-inequality variant)."""
    p = f.parent
    x = tuple(Fraction(c) for c in x)
    if f.is_empty:
        return p.spec.in_zs(x)
    vs = sorted(f.vertex_set)
    rho = dot(x, vs[0])
    if any(dot(x, v) != rho for v in vs[1:]):
        return False
    if any(dot(x, r) != 0 for r in f.ray_set):
        return False
    if any(dot(x, w) < rho for w in p.vertices - f.vertex_set):
        return False
    if any(dot(x, r) < 0 for r in p.rays - f.ray_set):
        return False
    return True


def _interior_system(faces: Sequence[Face], n: int):
    """StrictSystem over (x, ρ_1..ρ_K) for x ∈ ⋂(F_ν*)°, plus whether any
    strict row exists.  ρ_ν is the supporting level of face ν."""
    proper = [f for f in faces if not f.is_empty]
    K = len(proper)
    dim = n + K
    eqs, weak, strict = [], [], []

    def ext(v, rho_idx=None, rho_coef=0):
        row = [Fraction(c) for c in v] + [Fraction(0)] * K
        if rho_idx is not None:
            row[n + rho_idx] = Fraction(rho_coef)
        return tuple(row)

    for f in faces:
        if f.is_empty:
            for j in sorted(f.parent.spec.S):
                weak.append((ext(unit(n, j)), Fraction(0)))
            continue
        k = proper.index(f)
        for v in sorted(f.vertex_set):
            eqs.append((ext(v, k, -1), Fraction(0)))       # x·v − ρ = 0
        for r in sorted(f.ray_set):
            eqs.append((ext(r), Fraction(0)))              # x·r = 0
        if not f.is_improper:
            for w in sorted(f.parent.vertices - f.vertex_set):
                strict.append((ext(w, k, -1), Fraction(0)))  # x·w − ρ > 0
            for r in sorted(f.parent.rays - f.ray_set):
                strict.append((ext(r), Fraction(0)))         # x·r > 0
    return dim, eqs, weak, strict


def cones_interior_intersection(faces: Sequence[Face]) -> Optional[tuple]:
    """Exact rational witness x ∈ ⋂(F_ν*)°, or None."""
    if not faces:
        raise ValueError("no faces given")
    n = faces[0].parent.spec.n
    if any(f.parent.spec.n != n for f in faces):
        raise ValueError("faces live in different ambient spaces")
    dim, eqs, weak, strict = _interior_system(faces, n)

    def attempt(extra_strict):
        sys = StrictSystem(dim=dim, equalities=tuple(eqs), weak=tuple(weak),
                           strict=tuple(strict) + tuple(extra_strict))
        sol = solve_strict(sys)
        return None if sol is None else tuple(sol[:n])

    if strict:
        x = attempt(())
    else:
        # only empty/improper faces: cone is a linear-ish set through 0, and
        # the interior excludes 0 — sweep signed coordinate directions.
        x = None
        for j in range(n):
            for sign in (1, -1):
                row = [Fraction(0)] * dim
                row[j] = Fraction(sign)
                x = attempt(((tuple(row), Fraction(0)),))
                if x is not None:
                    break
            if x is not None:
                break
    if x is None:
        return None
    assert all(interior_contains(f, x) for f in faces), \
        "interior witness failed exact re-check"
    return x


def cones_closed_intersection_ray(faces: Sequence[Face]) -> Optional[tuple]:
    """A nonzero point of ⋂ F_ν* (closed cones), if one exists."""
    n = faces[0].parent.spec.n
    eqs, weak = [], []
    for f in faces:
        for a, b in _cone_h_rows(f):
            (eqs if b == "eq" else weak).append((a, Fraction(0)))
    for j in range(n):
        for sign in (1, -1):
            srow = [Fraction(0)] * n
            srow[j] = Fraction(sign)
            sys = StrictSystem(dim=n, equalities=tuple(eqs),
                               weak=tuple(weak),
                               strict=((tuple(srow), Fraction(0)),))
            sol = solve_strict(sys)
            if sol is not None:
                return tuple(sol)
    return None


def _cone_h_rows(f: Face):
    """Homogeneous H-rows of the closed cone F* in x alone (ρ eliminated by
    substituting the level at a face vertex).  Yields (vector, 'eq'|'ge')."""
    p = f.parent
    n = p.spec.n
    if f.is_empty:
        for j in sorted(p.spec.S):
            yield tuple(unit(n, j)), "ge"
        return
    vs = sorted(f.vertex_set)
    v0 = vs[0]
    for v in vs[1:]:
        yield vsub(v, v0), "eq"
    for r in sorted(f.ray_set):
        yield tuple(map(Fraction, r)), "eq"
    for w in sorted(p.vertices - f.vertex_set):
        yield vsub(w, v0), "ge"
    for r in sorted(p.rays - f.ray_set):
        yield tuple(map(Fraction, r)), "ge"


# ---------------------------------------------------------------------------
# essential faces and closure structure
# ---------------------------------------------------------------------------

def essential_face(points: Sequence[Sequence], p: NewtonPolyhedron) -> Face:
    """F(B|P): the smallest face of P containing B, via the centroid."""
    if not points:
        raise ValueError("no points given")
    n = p.spec.n
    c = [Fraction(0)] * n
    for pt in points:
        for i in range(n):
            c[i] += Fraction(pt[i])
    c = tuple(x / len(points) for x in c)
    if not p.contains(c):
        raise ValueError(f"point {c} lies outside the polyhedron")
    tight = [i for i, (q, r) in enumerate(p.facets_a) if dot(q, c) == r]
    vs = frozenset(v for v in p.vertices
                   if all(dot(p.facets_a[i][0], v) == p.facets_a[i][1]
                          for i in tight))
    rs = frozenset(r for r in p.rays
                   if all(dot(p.facets_a[i][0], r) == 0 for i in tight))
    face = p.face_by_key(vs, rs)
    assert face is not None, "centroid's tight set does not match a face"
    return face


def face_by_cone_interior(p: NewtonPolyhedron, x: Sequence) -> Face:
    """The unique face F with x ∈ (F*)°; x = 0 maps to the improper face
    (its closed cone V⊥(P) is the only one containing a neighborhood of 0
    inside ⋂, matching the F(0)=P convention of the chain construction)."""
    x = tuple(Fraction(c) for c in x)
    if is_zero(x):
        return p.improper_face()
    for f in p.faces():
        if f.is_empty:
            continue
        if interior_contains(f, x):
            return f
    f = p.empty_face()
    assert interior_contains(f, x), "point not covered by any face cone"
    return f


def face_closure_structure(f: Face) -> frozenset:
    """S₀ ⊆ S with F = F + ℝ₊^{S₀} = N(Λ∩F, S₀); read off a canonical
    interior witness q of (F*)° as {j ∈ S : q_j = 0}."""
    if f.is_empty:
        raise ValueError("empty face has no closure structure")
    p = f.parent
    S = p.spec.S
    if f.is_improper:
        s0 = frozenset(S)
    else:
        q = cones_interior_intersection([f])
        assert q is not None, "nonempty proper face has empty cone interior"
        s0 = frozenset(j for j in S if q[j] == 0)
    assert f.ray_set == frozenset(_ivec(unit(p.spec.n, j)) for j in s0), \
        "face rays disagree with the S0 pattern of the interior witness"
    rebuilt = build_newton(
        ExponentSet.of(f.lambda_points(), p.spec.n),
        DomainSpec(p.spec.n, s0))
    assert rebuilt.vertices == f.vertex_set and \
        frozenset(rebuilt.rays) == f.ray_set, \
        "N(Λ∩F, S0) does not reproduce the face"
    return s0
