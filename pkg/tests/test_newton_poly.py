"""Unit tests for Newton polyhedra: construction, faces, dual cones."""

import random
from fractions import Fraction

import pytest

from geom_checks import random_instance, run_all_checks
from nh.exact_numeric import dot
from nh.newton_poly import (
    DomainSpec,
    ExponentSet,
    build_newton,
    cones_closed_intersection_ray,
    cones_interior_intersection,
    enumerate_faces,
    essential_face,
    face_by_cone_interior,
    face_closure_structure,
    interior_contains,
)


def _poly(points, n, S):
    return build_newton(ExponentSet.of(points, n), DomainSpec.of(n, S))


def _normals(p):
    return sorted(q for q, _ in p.facets_a)


# ---------------------------------------------------------------------------
# worked three-dimensional pair (the running example throughout the suite)
# ---------------------------------------------------------------------------

LAM1 = [(0, 0, 2), (3, 3, 0)]
LAM2 = [(0, 0, 3), (3, 2, 1)]
FULL_S = [0, 1, 2]


def test_worked_example_facets():
    p1 = _poly(LAM1, 3, FULL_S)
    p2 = _poly(LAM2, 3, FULL_S)
    assert _normals(p1) == [(0, 0, 1), (0, 1, 0), (0, 2, 3),
                            (1, 0, 0), (2, 0, 3)]
    assert _normals(p2) == [(0, 0, 1), (0, 1, 0), (0, 1, 1),
                            (1, 0, 0), (2, 0, 3)]
    assert p1.vertices == frozenset({(3, 3, 0), (0, 0, 2)})
    assert p2.vertices == frozenset({(0, 0, 3), (3, 2, 1)})
    assert p1.dim == 3 and p2.dim == 3


def test_worked_example_face_counts():
    p1 = _poly(LAM1, 3, FULL_S)
    p2 = _poly(LAM2, 3, FULL_S)
    for p in (p1, p2):
        faces = enumerate_faces(p)
        assert len(faces) == 15
        by_dim = {d: sum(1 for f in faces if f.dim == d)
                  for d in (-1, 0, 1, 2, 3)}
        # 5 two-faces, 6 edges, 2 vertices, the improper face, the empty face
        assert by_dim == {-1: 1, 0: 2, 1: 6, 2: 5, 3: 1}


def test_worked_example_closed_ray():
    p1 = _poly(LAM1, 3, FULL_S)
    p2 = _poly(LAM2, 3, FULL_S)
    f1 = p1.face_by_key([(3, 3, 0)], [])
    f2 = p2.face_by_key([(0, 0, 3)], [])
    assert f1 is not None and f2 is not None
    # open cones do not meet, closed ones meet along the ray (2,0,3)
    assert cones_interior_intersection([f1, f2]) is None
    ray = cones_closed_intersection_ray([f1, f2])
    assert ray is not None
    t = Fraction(ray[0], 2)
    assert t > 0 and ray == (2 * t, 0, 3 * t)


# ---------------------------------------------------------------------------
# small fixed cases
# ---------------------------------------------------------------------------

def test_single_point_global():
    p = _poly([(1, 1)], 2, [])
    assert p.vertices == frozenset({(1, 1)})
    assert p.rays == frozenset()
    assert p.dim == 0
    faces = enumerate_faces(p)
    assert len(faces) == 2   # the point (improper) + empty
    imp = p.improper_face()
    assert imp.is_improper and imp.dim == 0
    # its cone interior is the punctured plane except nothing: x·(1,1)
    # constant holds trivially, x ≠ 0
    assert interior_contains(imp, (1, -1))
    assert not interior_contains(imp, (0, 0))


def test_quadrant_closure():
    p = _poly([(2, 1)], 2, [0, 1])
    assert p.vertices == frozenset({(2, 1)})
    assert p.rays == frozenset({(1, 0), (0, 1)})
    assert p.contains((3, 5)) and not p.contains((1, 1))
    vertex = p.face_by_key([(2, 1)], [])
    assert vertex is not None and vertex.dim == 0
    assert interior_contains(vertex, (1, 1))
    assert not interior_contains(vertex, (1, 0))
    assert face_closure_structure(vertex) == frozenset()
    edge = p.face_by_key([(2, 1)], [(1, 0)])
    assert edge is not None
    assert face_closure_structure(edge) == frozenset({0})


def test_mixed_local_global():
    # S = {1}: recession only in the second coordinate
    p = _poly([(1, 0), (0, 2)], 2, [1])
    assert p.rays == frozenset({(0, 1)})
    assert p.contains((Fraction(1, 2), 1))
    assert not p.contains((2, 0))


def test_lower_dimensional_polyhedron():
    p = _poly([(1, 1, 0), (3, 3, 0)], 3, [])
    assert p.dim == 1
    assert len(p.basis_b) == 2
    imp = p.improper_face()
    # V⊥ is 2-dimensional: a nonzero annihilator is interior
    assert interior_contains(imp, (1, -1, 0))
    assert interior_contains(imp, (0, 0, 1))
    assert not interior_contains(imp, (1, 1, 0))


def test_negative_exponent_rejected():
    with pytest.raises(ValueError):
        ExponentSet.of([(1, -1)], 2)
    with pytest.raises(ValueError):
        DomainSpec.of(2, [2])


# ---------------------------------------------------------------------------
# essential faces and cone resolution
# ---------------------------------------------------------------------------

def test_essential_face():
    p = _poly(LAM1, 3, FULL_S)
    f = essential_face([(3, 3, 0)], p)
    assert f.vertex_set == frozenset({(3, 3, 0)}) and f.dim == 0
    f = essential_face([(3, 3, 0), (0, 0, 2)], p)
    assert f.dim == 1
    assert f.lambda_points() == [(0, 0, 2), (3, 3, 0)]
    with pytest.raises(ValueError):
        essential_face([(0, 0, 0)], p)


def test_face_by_cone_interior_unique():
    p = _poly(LAM1, 3, FULL_S)
    rng = random.Random(5)
    for _ in range(40):
        x = tuple(rng.randint(0, 9) for _ in range(3))
        f = face_by_cone_interior(p, x)
        if all(c == 0 for c in x):
            assert f.is_improper
            continue
        others = [g for g in enumerate_faces(p)
                  if not g.is_empty and g != f]
        assert not any(interior_contains(g, x) for g in others)


# ---------------------------------------------------------------------------
# randomized invariants (small sample here; the acceptance gate runs 100)
# ---------------------------------------------------------------------------

def test_random_instances_invariants():
    rng = random.Random(99)
    for _ in range(8):
        omega, spec = random_instance(rng)
        p = build_newton(omega, spec)
        run_all_checks(p, rng, covering_radius=8)


def test_pairwise_facet_regression():
    # facets whose tangent directions miss the lexicographically first
    # vertex must still be found
    p = _poly([(6, 3), (3, 6), (5, 1), (4, 3)], 2, [0, 1])
    assert (2, 1) in {q for q, _ in p.facets_a}
    assert (5, 1) in p.vertices and (4, 3) in p.vertices
