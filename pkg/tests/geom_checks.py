"""Shared randomized-instance generators and geometric invariant checkers.

Used by both the unit tests and the acceptance gate, so that the acceptance
runs exercise exactly the checks documented here.
"""

import itertools
import random
from fractions import Fraction

import numpy as np

from nh.engine import cone_extreme_generators
from nh.exact_numeric import dot, rank, vsub
from nh.newton_poly import (
    DomainSpec,
    ExponentSet,
    _cone_h_rows,
    build_newton,
    closure_contains,
    enumerate_faces,
    face_by_cone_interior,
    interior_contains,
)


def random_instance(rng: random.Random, n_max: int = 3, max_points: int = 6,
                    coord_max: int = 6):
    """A random (Ω, S) pair with n ≤ n_max and 1 ≤ |Ω| ≤ max_points."""
    n = rng.randint(1, n_max)
    npts = rng.randint(1, max_points)
    pts = {tuple(rng.randint(0, coord_max) for _ in range(n))
           for _ in range(npts)}
    S = [j for j in range(n) if rng.random() < 0.5]
    return ExponentSet.of(pts, n), DomainSpec.of(n, S)


# ---------------------------------------------------------------------------
# invariant checkers (raise AssertionError with context on failure)
# ---------------------------------------------------------------------------

def check_duality_order_reversal(p):
    """F ⪯ G  ⟺  G* ⊆ F*, over all ordered face pairs.

    Cone containment is decided exactly via the extreme generators and
    lineality basis of the smaller cone.
    """
    faces = enumerate_faces(p)
    n = p.spec.n
    gens = {}
    for f in faces:
        eqs, ineqs = [], []
        for a, kind in _cone_h_rows(f):
            (eqs if kind == "eq" else ineqs).append(tuple(a))
        rays, lin = cone_extreme_generators(eqs, ineqs, n)
        vecs = list(rays)
        for l in lin:
            vecs.append(tuple(Fraction(x) for x in l))
            vecs.append(tuple(-Fraction(x) for x in l))
        gens[f] = vecs

    for f in faces:
        for g in faces:
            contained = all(closure_contains(f, v) for v in gens[g])
            if f.is_empty or g.is_empty:
                # the empty face's dual is all of Z(S), which can coincide
                # with a maximal cone of the fan; only the forward
                # implication is a lattice fact there
                assert not (f <= g) or contained, (
                    "duality reversal (empty case) failed",
                    f.is_empty, g.is_empty)
            else:
                assert (f <= g) == contained, (
                    "duality order reversal failed",
                    sorted(f.vertex_set), sorted(g.vertex_set),
                    f <= g, contained)


def check_dim_formula(p):
    """dim(F) + dim(span F*) = n for every nonempty face."""
    n = p.spec.n
    for f in enumerate_faces(p):
        if f.is_empty:
            continue
        eqs = [tuple(a) for a, kind in _cone_h_rows(f) if kind == "eq"]
        dual_dim = n - rank(eqs)
        assert f.dim + dual_dim == n, (
            "dimension formula failed", sorted(f.vertex_set), f.dim, dual_dim)


def check_dominating(p, rng: random.Random, samples: int = 50):
    """Random J ∈ F* satisfy J·m ≤ J·w for m ∈ F∩Ω, w ∈ Ω."""
    n = p.spec.n
    omega = p.omega.sorted_points()
    for f in enumerate_faces(p):
        if f.is_empty:
            continue
        eqs, ineqs = [], []
        for a, kind in _cone_h_rows(f):
            (eqs if kind == "eq" else ineqs).append(tuple(a))
        rays, lin = cone_extreme_generators(eqs, ineqs, n)
        flam = f.lambda_points()
        for _ in range(samples):
            j = [Fraction(0)] * n
            for r in rays:
                c = rng.randint(0, 5)
                j = [a + c * b for a, b in zip(j, r)]
            for l in lin:
                c = rng.randint(-5, 5)
                j = [a + c * b for a, b in zip(j, l)]
            j = tuple(j)
            assert closure_contains(f, j)
            for m in flam:
                for w in omega:
                    assert dot(j, m) <= dot(j, w), (
                        "dominating property failed",
                        sorted(f.vertex_set), j, m, w)


def _face_masks(p, X: np.ndarray):
    """Boolean open-cone membership masks per nonempty face, vectorized.

    X is an (N, n) int64 array of lattice points; entries must be small
    enough that dot products stay within int64 (true for |x| ≤ 15 and
    exponents ≤ 6).
    """
    masks = []
    for f in enumerate_faces(p):
        if f.is_empty:
            continue
        verts = np.array(sorted(f.vertex_set), dtype=np.int64)
        xv = X @ verts.T
        mask = np.all(xv == xv[:, :1], axis=1)
        rho = xv[:, 0]
        rays = sorted(f.ray_set)
        if rays:
            mask &= np.all(X @ np.array(rays, np.int64).T == 0, axis=1)
        if f.is_improper:
            mask &= np.any(X != 0, axis=1)
        else:
            other_v = sorted(p.vertices - f.vertex_set)
            if other_v:
                mask &= np.all(
                    X @ np.array(other_v, np.int64).T > rho[:, None], axis=1)
            other_r = sorted(p.rays - f.ray_set)
            if other_r:
                mask &= np.all(X @ np.array(other_r, np.int64).T > 0, axis=1)
        masks.append(mask)
    return masks


def check_covering(p, radius: int = 15, spot_rng: random.Random = None):
    """Open dual cones of the nonempty faces tile Z(S) ∖ {0} together with
    the empty-face cone: on the lattice box [-radius, radius]^n ∩ Z(S),
    every nonzero point lies in at most one open cone, every open cone stays
    inside Z(S), and the vectorized masks agree with the exact
    face_by_cone_interior resolution on a random spot sample.
    """
    n = p.spec.n
    axes = [np.arange(0, radius + 1) if j in p.spec.S
            else np.arange(-radius, radius + 1) for j in range(n)]
    grids = np.meshgrid(*axes, indexing="ij")
    X = np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)
    masks = _face_masks(p, X)
    counts = sum(m.astype(np.int64) for m in masks)
    assert int(counts.max(initial=0)) <= 1, "open cones overlap"
    in_zs = np.ones(len(X), dtype=bool)
    for j in p.spec.S:
        in_zs &= X[:, j] >= 0
    assert bool(np.all(in_zs[counts >= 1])), "open cone escapes Z(S)"
    nonzero = np.any(X != 0, axis=1)
    # covering: every nonzero point of Z(S) is picked up either by a
    # nonempty face's open cone or by the empty face (whose open cone is
    # all of Z(S) ∖ {0}); cross-check resolution on a sample
    if spot_rng is not None:
        faces = [f for f in enumerate_faces(p) if not f.is_empty]
        idx = [i for i in range(len(X)) if in_zs[i]]
        for i in spot_rng.sample(idx, min(25, len(idx))):
            x = tuple(int(v) for v in X[i])
            f = face_by_cone_interior(p, x)
            if all(v == 0 for v in x):
                assert f.is_improper
            elif f.is_empty:
                assert counts[i] == 0
            else:
                k = faces.index(f)
                assert masks[k][i] and counts[i] == 1
    return int(counts.sum()), int((in_zs & nonzero).sum())


def check_vh_consistency(p, rng: random.Random):
    """V-representation and H-representation describe the same set:
    vertices/rays satisfy the facet system, random conic/convex combinations
    stay inside, facet-tight vertex sets have the right affine dimension,
    and stepping outside any facet leaves the polyhedron.
    """
    for v in p.vertices:
        assert p.contains(v)
        assert not any(c < 0 for c in v)
    for r in p.rays:
        assert all(dot(q, r) >= 0 for q, _ in p.facets_a)
        assert all(dot(q, r) == 0 for q, _ in p.basis_b)
    verts = sorted(p.vertices)
    rays = sorted(p.rays)
    for _ in range(20):
        weights = [Fraction(rng.randint(0, 4)) for _ in verts]
        if sum(weights) == 0:
            weights[0] = Fraction(1)
        total = sum(weights)
        x = [sum(w * Fraction(v[i]) for w, v in zip(weights, verts)) / total
             for i in range(p.spec.n)]
        for r in rays:
            c = rng.randint(0, 3)
            x = [a + c * b for a, b in zip(x, r)]
        assert p.contains(x), ("convex+conic combination escaped", x)
    for q, rho in p.facets_a:
        tight = [v for v in verts if dot(q, v) == rho]
        assert tight, "facet with no tight vertex"
        # stepping below the facet leaves P
        probe = tuple(Fraction(c) - Fraction(q[i], sum(x * x for x in q))
                      for i, c in enumerate(tight[0]))
        assert not p.contains(probe)
    # every Ω point is inside
    for m in p.omega:
        assert p.contains(m)
    # the polyhedron dimension matches the affine span of verts+rays
    span = [vsub(v, verts[0]) for v in verts[1:]] + \
        [tuple(map(Fraction, r)) for r in rays]
    assert p.dim == rank(span)


def run_all_checks(p, rng: random.Random, covering_radius: int = 15):
    check_duality_order_reversal(p)
    check_dim_formula(p)
    check_dominating(p, rng)
    check_covering(p, covering_radius, spot_rng=rng)
    check_vh_consistency(p, rng)
