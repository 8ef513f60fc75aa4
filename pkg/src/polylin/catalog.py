"""Named small polytopes used throughout the tests and the CLI."""

from .geometry import LatticePolytope, dilate, simplex


def _named(P, name):
    return P.with_name(name)


DELTA0 = _named(simplex(0, ambient_dim=1), "Delta_0")
DELTA1 = _named(simplex(1), "Delta_1")
DELTA2 = _named(simplex(2), "Delta_2")
TWO_DELTA1 = _named(simplex(1, 2), "2Delta_1")
THREE_DELTA1 = _named(simplex(1, 3), "3Delta_1")
TWO_DELTA2 = _named(simplex(2, 2), "2Delta_2")
SQ = LatticePolytope([(0, 0), (1, 0), (0, 1), (1, 1)], name="SQ")
# the two lattice triangles with four lattice points
T1 = LatticePolytope([(1, 0), (0, 1), (-1, 0)], name="T1")
T2 = LatticePolytope([(1, 0), (0, 1), (-1, -1)], name="T2")
TWO_T2 = _named(dilate(T2, 2), "2T2")
PRISM = LatticePolytope([(0, 0), (1, 0), (0, 2), (1, 2)], name="Delta_1x2Delta_1")

CATALOG = {
    P.name: P
    for P in (DELTA0, DELTA1, DELTA2, TWO_DELTA1, THREE_DELTA1, TWO_DELTA2, SQ, T1, T2, TWO_T2, PRISM)
}

# the polytopes the dimension-formula checks run over
CORE = (DELTA1, DELTA2, TWO_DELTA1, SQ, T1, T2)


def get(name: str) -> LatticePolytope:
    aliases = {"D0": "Delta_0", "D1": "Delta_1", "D2": "Delta_2", "2D1": "2Delta_1",
               "3D1": "3Delta_1", "2D2": "2Delta_2", "prism": "Delta_1x2Delta_1"}
    return CATALOG[aliases.get(name, name)]
