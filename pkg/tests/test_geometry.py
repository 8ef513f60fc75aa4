from math import comb

import pytest
import sympy
from hypothesis import given, strategies as st

from polylin.catalog import CATALOG, DELTA1, PRISM, SQ, T1, T2, get
from polylin.errors import DimensionMismatch
from polylin.geometry import (
    AffineLatticeMap,
    LatticePolytope,
    dilate,
    faces,
    is_face,
    is_normalized,
    is_pyramid,
    minkowski_sum,
    newton_polytope,
    normalize_lattice,
    simplex,
)
from polylin.arith import LaurentPoly, QQ

NONNORMAL = LatticePolytope([(0, 1, 2), (0, 2, 0), (1, 0, 1), (2, 2, 1)])

pts2 = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=6)


def sympy_lattice_points(points):
    """Box scan against sympy's convex hull (a polygon, segment or point)."""
    hull = sympy.convex_hull(*[sympy.Point(p) for p in points])
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    out = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            q = sympy.Point(x, y)
            if isinstance(hull, sympy.Point2D):
                inside = hull == q
            elif isinstance(hull, sympy.Segment2D):
                inside = hull.contains(q)
            else:
                inside = hull.encloses_point(q) or any(s.contains(q) for s in hull.sides)
            if inside:
                out.append((x, y))
    return sorted(out)


@given(pts2)
def test_lattice_points_match_sympy_hull(points):
    P = LatticePolytope(points)
    assert list(P.lattice_points) == sympy_lattice_points(points)


@given(pts2)
def test_vertex_count_matches_sympy(points):
    P = LatticePolytope(points)
    hull = sympy.convex_hull(*[sympy.Point(p) for p in points])
    expected = len(hull.vertices) if isinstance(hull, sympy.Polygon) else (
        2 if isinstance(hull, sympy.Segment2D) else 1)
    assert len(P.vertices) == expected


def test_lattice_points_lex_order():
    assert T2.lattice_points == ((-1, -1), (0, 0), (0, 1), (1, 0))
    assert SQ.lattice_points == ((0, 0), (0, 1), (1, 0), (1, 1))


@pytest.mark.parametrize("name,dim,npts,nfacets", [
    ("Delta_0", 0, 1, 0), ("Delta_1", 1, 2, 2), ("Delta_2", 2, 3, 3), ("2Delta_1", 1, 3, 2),
    ("SQ", 2, 4, 4), ("T1", 2, 4, 3), ("T2", 2, 4, 3), ("2T2", 2, 10, 3),
    ("Delta_1x2Delta_1", 2, 6, 4),
])
def test_catalog_shapes(name, dim, npts, nfacets):
    P = CATALOG[name]
    assert (P.dim, P.n_points, len(P.facets)) == (dim, npts, nfacets)


def test_aliases():
    assert get("2D1") == CATALOG["2Delta_1"]
    assert get("prism") == PRISM


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("c", [1, 2, 3])
def test_simplex_ehrhart(n, c):
    assert simplex(n, c).n_points == comb(n + c, n)


@pytest.mark.parametrize("c", [1, 2, 3, 4])
def test_ehrhart_square_and_t2(c):
    assert dilate(SQ, c).n_points == (c + 1) ** 2
    # area 3/2, three boundary points: Pick's theorem
    assert dilate(T2, c).n_points == (3 * c * c + 3 * c + 2) // 2


def test_dilate_rejects_nonpositive():
    with pytest.raises(ValueError):
        dilate(SQ, 0)


def test_facet_orientation():
    for P in CATALOG.values():
        for F in P.facets:
            assert all(sum(a * b for a, b in zip(F.normal, x)) >= F.offset
                       for x in P.lattice_points)
            assert len(F.vertices) >= P.dim


def test_faces_of_square():
    fs = faces(SQ)
    assert [F.dim for F in fs].count(0) == 4
    assert [F.dim for F in fs].count(1) == 4
    assert fs[-1] == SQ
    assert all(is_face(SQ, F) for F in fs)
    diag = LatticePolytope([(0, 0), (1, 1)])
    assert not is_face(SQ, diag)


def test_minkowski_and_newton():
    assert minkowski_sum(DELTA1, DELTA1) == dilate(DELTA1, 2)
    f = LaurentPoly({(0, 0): 1, (1, 1): 2, (1, 0): 1}, 2, QQ)
    assert newton_polytope(f) == LatticePolytope([(0, 0), (1, 1), (1, 0)])
    with pytest.raises(DimensionMismatch):
        minkowski_sum(DELTA1, SQ)


def test_normalize_sublattice_polytope():
    # a segment of lattice length 1 that is not axis aligned
    P = LatticePolytope([(0, 0, 0), (1, 1, 2)])
    Pn, phi = normalize_lattice(P)
    assert Pn.ambient_dim == 1 and Pn.n_points == 2
    assert sorted(phi(x) for x in Pn.lattice_points) == list(P.lattice_points)


def test_nonnormal_fixture():
    assert is_normalized(NONNORMAL)
    assert NONNORMAL.n_points == 5
    assert dilate(NONNORMAL, 2).n_points == 18


def test_is_pyramid():
    apexes = {a for a, _ in is_pyramid(simplex(2))}
    assert apexes == set(simplex(2).vertices)
    assert is_pyramid(SQ) == []
    assert {a for a, _ in is_pyramid(T1)} == {(0, 1)}


def test_affine_map_compose_and_json():
    A = AffineLatticeMap(((0, 1), (1, 0)), (1, 0))
    B = AffineLatticeMap(((1, 0), (0, 2)), (0, 0))
    assert A.compose(B)((1, 1)) == A(B((1, 1)))
    assert AffineLatticeMap.from_json(A.to_json()) == A
    assert A.is_unimodular() and not B.is_unimodular()


def test_polytope_json_round_trip():
    for P in CATALOG.values():
        assert LatticePolytope.from_json(P.to_json()) == P


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        LatticePolytope([(0, 0), (1,)])
