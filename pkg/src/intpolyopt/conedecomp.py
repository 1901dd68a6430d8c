"""Signed unimodular cone decompositions and short rational generating functions.

A polytope's lattice-point generating function is assembled from the tangent
cones at its vertices (Brion). Each tangent cone is triangulated, every
simplicial piece is decomposed into signed unimodular cones (Barvinok), and
the pieces are made half-open with respect to one generic direction so that
the signed indicator functions add up exactly, boundaries included.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, gcd

from . import _accel
from . import _linalg as la
from .exactnum import integer_kth_root_floor, iroot, series_exp, series_inv_one_minus_exp
from .geometry import Cone, Polytope, require_full_dimensional, tangent_cone, vertices
from .errors import EmptyPolytopeError, IntPolyOptError

__all__ = [
    "SimplicialCone",
    "ConeTerm",
    "RationalFunctionSum",
    "cone_index",
    "triangulate",
    "barvinok_decompose",
    "mark_half_open",
    "generating_function",
    "generic_direction",
    "specialize_count",
    "count_lattice_points",
    "vertex_cone_terms",
]


@dataclass(frozen=True)
class SimplicialCone:
    apex: tuple
    rays: tuple
    sign: int = 1
    open_facets: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(v) for v in r) for r in self.rays))
        object.__setattr__(self, "apex", tuple(Fraction(v) for v in self.apex))

    @property
    def dim(self) -> int:
        return len(self.apex)


@dataclass(frozen=True)
class ConeTerm:
    """``sign * z^u / prod_j (1 - z^{rays[j]})`` with a unimodular ray matrix."""

    sign: int
    u: tuple
    rays: tuple

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if abs(la.det_int(self.rays)) != 1:
            raise ValueError("cone term rays must be unimodular")


@dataclass(frozen=True)
class RationalFunctionSum:
    terms: tuple
    dim: int

    def __len__(self):
        return len(self.terms)

    def rays(self) -> set:
        return {v for t in self.terms for v in t.rays}


def cone_index(C: SimplicialCone) -> int:
    det = la.det_int(C.rays)
    if det == 0:
        raise ValueError("rays are linearly dependent")
    return abs(det)


# -- triangulation ------------------------------------------------------------


def _span_basis(vectors):
    basis = []
    for v in vectors:
        if la.rank(basis + [list(v)]) > len(basis):
            basis.append(list(v))
    return basis


def _facets(gens, k):
    """Facets of ``cone(gens)`` inside its ``k``-dimensional linear span."""
    basis = _span_basis(gens)
    found = []
    for subset in itertools.combinations(gens, k - 1):
        if la.rank(subset) != k - 1:
            continue
        # normal vector n = c @ basis orthogonal to the subset, inside the span
        M = [[la.dot(s, bvec) for bvec in basis] for s in subset]
        c = la.nullspace_vector(M, k) if k > 1 else (1,)
        if c is None:
            continue
        normal = [sum(ci * bvec[j] for ci, bvec in zip(c, basis)) for j in range(len(gens[0]))]
        vals = [la.dot(normal, g) for g in gens]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            facet = frozenset(g for g, v in zip(gens, vals) if v == 0)
            if facet not in found:
                found.append(facet)
    return found


def _pulling_triangulation(gens, k):
    if len(gens) == k:
        return [list(gens)]
    g0 = gens[0]
    out = []
    for facet in _facets(gens, k):
        if g0 in facet:
            continue
        ordered = [g for g in gens if g in facet]
        for simplex in _pulling_triangulation(ordered, k - 1):
            out.append([g0] + simplex)
    return out


def triangulate(C: Cone, y=None) -> list[SimplicialCone]:
    """Split a full-dimensional pointed cone into simplicial cones.

    The pieces meet along lower-dimensional faces. Pass a generic direction
    ``y`` to mark facets half-open so that the pieces partition the cone.
    """
    gens = [tuple(g) for g in C.generators]
    d = C.dim
    if la.rank(gens) < d:
        raise IntPolyOptError("cannot triangulate a lower-dimensional cone")
    pieces = [SimplicialCone(C.apex, tuple(s)) for s in _pulling_triangulation(gens, d)]
    if y is not None:
        pieces = [mark_half_open(p, y) for p in pieces]
    return pieces


# -- Barvinok decomposition ----------------------------------------------------


def _short_vector(rays):
    """Integer ``w = sum a_i r_i / det`` with ``|a_i| <= |det|^((d-1)/d)``, and ``a``.

    The box searched is the image of the cube ``|alpha_i| <= |det|^(-1/d)``, which
    holds a nonzero lattice vector by Minkowski's theorem.
    """
    d = len(rays)
    det = la.det_int(rays)
    D = abs(det)
    # alpha = (R^T)^{-1} w = adj(R^T) w / det(R)
    adj = la.adjugate_int(la.transpose(rays))
    threshold = iroot(D ** (d - 1), d)
    bounds = []
    for j in range(d):
        s = sum(abs(r[j]) for r in rays)
        # floor(s * D^(-1/d))
        bounds.append(integer_kth_root_floor(Fraction(s**d, D), d))
    w = _accel.short_vector(adj, bounds, threshold)
    if w is None:  # pragma: no cover - excluded by Minkowski's theorem
        raise IntPolyOptError("short vector search failed")
    g = 0
    for v in w:
        g = gcd(g, v)
    w = tuple(v // g for v in w)
    a = [la.dot(row, w) for row in adj]
    if det < 0:
        a = [-v for v in a]
    return w, a, D


def barvinok_decompose(C: SimplicialCone, y=None) -> list[SimplicialCone]:
    """Signed unimodular cones whose indicators sum to ``[C]`` off lower-dimensional sets.

    With a generic direction ``y`` the output is marked half-open and the
    identity holds pointwise.
    """
    cone_index(C)
    out = []
    stack = [C]
    while stack:
        K = stack.pop()
        if abs(la.det_int(K.rays)) == 1:
            out.append(SimplicialCone(K.apex, K.rays, K.sign))
            continue
        w, a, D = _short_vector(K.rays)
        # the ray x - t w must eventually leave K, i.e. -w not in K
        if all(v <= 0 for v in a):
            w = tuple(-v for v in w)
            a = [-v for v in a]
        children = []
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            rays = K.rays[:i] + (w,) + K.rays[i + 1 :]
            children.append(SimplicialCone(K.apex, rays, K.sign * (1 if ai > 0 else -1)))
        stack.extend(reversed(children))
    if y is not None:
        out = [mark_half_open(c, y) for c in out]
    return out


def _ray_coordinates(rays, x):
    """Coefficients of ``x`` in the basis ``rays``."""
    return la.solve(la.transpose(rays), x)


def mark_half_open(C: SimplicialCone, y) -> SimplicialCone:
    """Open the facets that ``y`` points away from.

    The result is ``{x : x + t y in C for all small t > 0}``; facet ``j`` (the
    one not containing ray ``j``) is open when ``y`` has a negative ``j``-th
    ray coordinate.
    """
    beta = _ray_coordinates(C.rays, y)
    if beta is None or any(b == 0 for b in beta):
        raise IntPolyOptError("direction is not generic for this cone")
    opened = frozenset(j for j, b in enumerate(beta) if b < 0)
    return SimplicialCone(C.apex, C.rays, C.sign, opened)


def _cone_term(C: SimplicialCone) -> ConeTerm:
    # lattice points are sum n_j r_j with n_j - mu_j >= 0 (> 0 on open facets)
    mu = _ray_coordinates(C.rays, C.apex)
    n = [floor(m) + 1 if j in C.open_facets else ceil(m) for j, m in enumerate(mu)]
    d = C.dim
    u = tuple(sum(n[j] * C.rays[j][i] for j in range(d)) for i in range(d))
    return ConeTerm(C.sign, u, C.rays)


def _generic_interior_direction(cone: Cone, pieces):
    """A direction inside ``cone`` that lies on no facet hyperplane of any piece."""
    d = cone.dim
    s = [sum(g[i] for g in cone.generators) for i in range(d)]
    ineq = cone.inequalities
    normals = []
    for p in pieces:
        adj = la.adjugate_int(la.transpose(p.rays))
        normals.extend(adj)
    for t in itertools.count(1):
        m = [t**i for i in range(d)]
        # scale the interior point so that the small tilt m keeps it interior
        K = 1
        for row in ineq:
            rs, rm = la.dot(row, s), la.dot(row, m)
            if rs >= 0:  # pragma: no cover - s is interior for a pointed cone
                raise IntPolyOptError("cone generators do not span an interior point")
            K = max(K, rm // (-rs) + 1)
        # <nv, K s + m> is linear in K, so each normal rules out at most one K
        # unless <nv, s> = 0, and then <nv, m> != 0 for all but finitely many t
        for extra in range(len(normals) + 1):
            y = [(K + extra) * a + b for a, b in zip(s, m)]
            if all(la.dot(row, y) < 0 for row in ineq) and all(la.dot(nv, y) != 0 for nv in normals):
                return tuple(y)


def vertex_cone_terms(P: Polytope, v) -> list[ConeTerm]:
    cone = tangent_cone(P, v)
    pieces = []
    for simplex in triangulate(cone):
        pieces.extend(barvinok_decompose(simplex))
    y = _generic_interior_direction(cone, pieces)
    return [_cone_term(mark_half_open(p, y)) for p in pieces]


def generating_function(P: Polytope) -> RationalFunctionSum:
    """Short signed sum of unimodular cone terms equal to ``sum_{a in P ∩ Z^d} z^a``."""
    if not vertices(P):
        return RationalFunctionSum((), P.dim)
    require_full_dimensional(P)
    terms = []
    for v in vertices(P):
        terms.extend(vertex_cone_terms(P, v))
    return RationalFunctionSum(tuple(terms), P.dim)


# -- specialization -----------------------------------------------------------


def generic_direction(rays, dim: int, start: int = 1) -> tuple:
    """First point ``(1, t, ..., t^(d-1))``, ``t >= start``, not orthogonal to any ray."""
    rays = list(rays)
    for t in itertools.count(start):
        lam = tuple(t**i for i in range(dim))
        if all(la.dot(lam, r) != 0 for r in rays):
            return lam


def specialize_count(G: RationalFunctionSum, direction=None) -> int:
    """Evaluate ``G`` at ``z = 1``: the number of lattice points it encodes."""
    if not G.terms:
        return 0
    d = G.dim
    lam = direction if direction is not None else generic_direction(G.rays(), d)
    total = Fraction(0)
    for term in G.terms:
        series = series_exp(la.dot(lam, term.u), d)
        for r in term.rays:
            c = la.dot(lam, r)
            series = series * series_inv_one_minus_exp(c, 1, d - 1)
        total += term.sign * series.coefficient(0)
    if total.denominator != 1:
        raise IntPolyOptError(f"non-integral lattice point count {total}: decomposition is inconsistent")
    if total < 0:
        raise IntPolyOptError(f"negative lattice point count {total}")
    return int(total)


def count_lattice_points(P: Polytope) -> int:
    try:
        return specialize_count(generating_function(P))
    except EmptyPolytopeError:
        return 0
