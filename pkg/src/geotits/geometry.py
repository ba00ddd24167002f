"""The three geometries and their exact-rational subspace/polytope types.

Working charts (normative for all incidence decisions):

* Euclidean ``E^n``: affine chart ``x0 = 1``; chart points in Q^n.
* Hyperbolic ``H^n``: Klein chart, the open unit ball in the chart
  ``x0 = 1`` (projective coordinates x_i/x0).
* Spherical ``S^n``: homogeneous cone coordinates, S^n = (Q^(n+1)\\{0})
  modulo positive scaling.

A geodesic subspace is carried by a linear subspace of Q^(n+1) in
canonical (RREF) form, so equality of subspaces is syntactic.
"""

from fractions import Fraction

from geotits import exact
from geotits.exact import F0, F1, dot, frac, primitive_int_row

EUCLIDEAN = "E"
HYPERBOLIC = "H"
SPHERICAL = "S"


class Geometry:
    """One of E^n, H^n, S^n."""

    __slots__ = ("kind", "n")

    def __init__(self, kind, n):
        if kind not in (EUCLIDEAN, HYPERBOLIC, SPHERICAL):
            raise ValueError(f"unknown geometry kind {kind!r}")
        if n < 0:
            raise ValueError("dimension must be >= 0")
        if kind in (EUCLIDEAN, HYPERBOLIC) and n < 1:
            raise ValueError(f"{kind}^{n}: Euclidean/hyperbolic need n >= 1")
        self.kind = kind
        self.n = n

    @property
    def ambient_dim(self):
        return self.n + 1

    @property
    def chart_dim(self):
        """Number of chart variables for feasibility systems."""
        return self.n if self.kind in (EUCLIDEAN, HYPERBOLIC) else self.n + 1

    def __eq__(self, other):
        return isinstance(other, Geometry) and (self.kind, self.n) == (other.kind, other.n)

    def __hash__(self):
        return hash((self.kind, self.n))

    def __repr__(self):
        return f"{self.kind}^{self.n}"


def minkowski_form(n):
    """Gram matrix of -x0^2 + x1^2 + ... + xn^2."""
    rows = []
    for i in range(n + 1):
        row = [F0] * (n + 1)
        row[i] = F1 if i else Fraction(-1)
        rows.append(tuple(row))
    return tuple(rows)


class LinearSubspace:
    """Linear subspace of Q^(ambient_dim) with canonical RREF basis."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim, vectors=()):
        self.ambient_dim = ambient_dim
        red, _ = exact.rref(vectors) if vectors else ((), ())
        for row in red:
            if len(row) != ambient_dim:
                raise ValueError("vector length mismatch")
        self.basis = red

    @property
    def dim(self):
        return len(self.basis)

    def contains_vector(self, v):
        if all(frac(x) == 0 for x in v):
            return True
        stacked = exact.rref(list(self.basis) + [tuple(map(frac, v))])[0]
        return len(stacked) == self.dim

    def contains(self, other):
        if other.dim > self.dim:
            return False
        return all(self.contains_vector(v) for v in other.basis)

    def intersect(self, other):
        """Intersection of the two subspaces."""
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient mismatch")
        pa = self.orthogonal_complement()
        pb = other.orthogonal_complement()
        return LinearSubspace(
            self.ambient_dim,
            exact.nullspace(list(pa.basis) + list(pb.basis), self.ambient_dim),
        )

    def add(self, other):
        return LinearSubspace(self.ambient_dim, list(self.basis) + list(other.basis))

    def orthogonal_complement(self):
        if not self.basis:
            return LinearSubspace(
                self.ambient_dim,
                [
                    tuple(F1 if i == j else F0 for i in range(self.ambient_dim))
                    for j in range(self.ambient_dim)
                ],
            )
        return LinearSubspace(self.ambient_dim, exact.nullspace(self.basis))

    def coordinates_of(self, v):
        """Coefficients of v in the canonical basis, or None."""
        if not self.basis:
            return None if any(frac(x) != 0 for x in v) else ()
        cols = list(zip(*self.basis))
        sol = exact.solve_affine(cols, [frac(x) for x in v])
        if sol is None:
            return None
        x0, hom = sol
        if hom:  # basis rows independent: cannot happen
            raise AssertionError("non-unique coordinates in a basis")
        return x0

    def sort_key(self):
        return (
            self.dim,
            tuple((x.numerator, x.denominator) for row in self.basis for x in row),
        )

    def __eq__(self, other):
        return (
            isinstance(other, LinearSubspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"LinearSubspace(dim={self.dim}/{self.ambient_dim})"


def subspace_from_vectors(ambient_dim, vectors):
    return LinearSubspace(ambient_dim, [tuple(map(frac, v)) for v in vectors])


def full_space(ambient_dim):
    return LinearSubspace(
        ambient_dim,
        [tuple(F1 if i == j else F0 for i in range(ambient_dim)) for j in range(ambient_dim)],
    )


def geo_nonempty(carrier, geometry):
    """Does the linear subspace meet the geometry?"""
    if carrier.ambient_dim != geometry.ambient_dim:
        raise ValueError("ambient mismatch")
    if geometry.kind == EUCLIDEAN:
        return any(row[0] != 0 for row in carrier.basis)
    if geometry.kind == HYPERBOLIC:
        sig = exact.signature_on_subspace(minkowski_form(geometry.n), carrier.basis)
        return sig[1] >= 1
    return carrier.dim >= 1


class GeoSubspace:
    """Nonempty geodesic subspace of a geometry."""

    __slots__ = ("geometry", "carrier")

    def __init__(self, geometry, carrier):
        if not geo_nonempty(carrier, geometry):
            raise ValueError("carrier does not meet the geometry")
        self.geometry = geometry
        self.carrier = carrier

    @property
    def geo_dim(self):
        return self.carrier.dim - 1

    def is_top(self):
        return self.carrier.dim == self.geometry.ambient_dim

    def contains(self, other):
        return self.carrier.contains(other.carrier)

    def sort_key(self):
        return self.carrier.sort_key()

    def __eq__(self, other):
        return (
            isinstance(other, GeoSubspace)
            and self.geometry == other.geometry
            and self.carrier == other.carrier
        )

    def __hash__(self):
        return hash((self.geometry, self.carrier))

    def __repr__(self):
        return f"GeoSubspace({self.geometry}, geo_dim={self.geo_dim})"


def top_subspace(geometry):
    return GeoSubspace(geometry, full_space(geometry.ambient_dim))


def chart_vector(geometry, point):
    """Ambient vector of a chart point."""
    if geometry.kind in (EUCLIDEAN, HYPERBOLIC):
        if len(point) != geometry.n:
            raise ValueError("chart point length mismatch")
        return (F1,) + tuple(map(frac, point))
    if len(point) != geometry.n + 1:
        raise ValueError("homogeneous point length mismatch")
    v = tuple(map(frac, point))
    if all(x == 0 for x in v):
        raise ValueError("zero vector is not a spherical point")
    return v


def point_subspace(geometry, point):
    """The 0-dimensional geodesic subspace through a chart point."""
    v = chart_vector(geometry, point)
    if geometry.kind == HYPERBOLIC and sum(x * x for x in point) >= 1:
        raise ValueError("hyperbolic chart point must lie strictly inside the unit ball")
    return GeoSubspace(geometry, subspace_from_vectors(geometry.ambient_dim, [v]))


def canonical_covector(functional):
    """Primitive integer covector with positive leading nonzero entry."""
    row = primitive_int_row(functional)
    if all(v == 0 for v in row):
        raise ValueError("zero functional")
    for v in row:
        if v != 0:
            if v < 0:
                row = tuple(-x for x in row)
            break
    return row


def hyperplane_subspace(geometry, functional):
    """Geodesic hyperplane ker(functional) meet X^n; None if it misses."""
    cov = canonical_covector(functional)
    ker = LinearSubspace(
        geometry.ambient_dim, exact.nullspace([tuple(map(frac, cov))], geometry.ambient_dim)
    )
    if not geo_nonempty(ker, geometry):
        return None
    return GeoSubspace(geometry, ker)


def functional_chart_row(geometry, functional):
    """Constraint row (vars..., const) of the functional in the chart."""
    f = tuple(map(frac, functional))
    if geometry.kind in (EUCLIDEAN, HYPERBOLIC):
        return f[1:] + (f[0],)
    return f + (F0,)


class HalfSpace:
    """functional . x >= 0 with a primitive integer functional."""

    __slots__ = ("functional",)

    def __init__(self, functional, sense=1):
        row = primitive_int_row(functional)
        if all(v == 0 for v in row):
            raise ValueError("zero functional in half-space")
        if sense not in (1, -1):
            raise ValueError("sense must be +1 (>=0) or -1 (<=0)")
        if sense < 0:
            row = tuple(-x for x in row)
        self.functional = row

    @property
    def hyperplane(self):
        return canonical_covector(self.functional)

    def chart_row(self, geometry):
        return functional_chart_row(geometry, self.functional)

    def __eq__(self, other):
        return isinstance(other, HalfSpace) and self.functional == other.functional

    def __hash__(self):
        return hash(self.functional)

    def __repr__(self):
        return f"HalfSpace({self.functional})"


class Face:
    """Face of a convex polytope: vertices, span, active constraints."""

    __slots__ = ("dim", "vertex_ids", "span", "active")

    def __init__(self, dim, vertex_ids, span, active):
        self.dim = dim
        self.vertex_ids = frozenset(vertex_ids)
        self.span = span
        self.active = frozenset(active)

    def __repr__(self):
        return f"Face(dim={self.dim}, verts={sorted(self.vertex_ids)})"


class Invalid:
    """polytope_from_halfspaces failure verdict."""

    EMPTY = "EMPTY"
    LOWER_DIMENSIONAL = "LOWER_DIMENSIONAL"
    UNBOUNDED = "UNBOUNDED"

    __slots__ = ("reason",)

    def __init__(self, reason):
        self.reason = reason

    def __repr__(self):
        return f"Invalid({self.reason})"


class ConvexPolytope:
    """Convex polytope with nonempty interior in X^n, bounded per geometry.

    Euclidean/hyperbolic vertices are exact chart points; spherical
    "vertices" are primitive extreme-ray vectors of the defining cone.
    Spherical polytopes whose cone is not pointed are weakly convex and
    carry no vertex/face data.
    """

    __slots__ = (
        "geometry",
        "halfspaces",
        "vertices",
        "faces",
        "interior_witness",
        "weakly_convex",
    )

    def __init__(self, geometry, halfspaces, vertices, faces, interior_witness, weakly_convex=False):
        self.geometry = geometry
        self.halfspaces = tuple(halfspaces)
        self.vertices = tuple(vertices) if vertices is not None else None
        self.faces = faces
        self.interior_witness = interior_witness
        self.weakly_convex = weakly_convex

    @property
    def dim(self):
        return self.geometry.n

    def facet_hyperplanes(self):
        """Canonical covectors of the facet spans (minimal description)."""
        if self.faces is None:
            return tuple(sorted({h.hyperplane for h in self.halfspaces}))
        out = set()
        for f in self.faces_of_dim(self.geometry.n - 1):
            for idx in f.active:
                out.add(self.halfspaces[idx].hyperplane)
        return tuple(sorted(out))

    def faces_of_dim(self, d):
        if self.faces is None:
            raise ValueError("weakly convex polytope has no face lattice")
        return [f for f in self.faces if f.dim == d]

    def contains_chart_point(self, point, strict=False):
        v = chart_vector(self.geometry, point)
        for h in self.halfspaces:
            val = dot(h.functional, v)
            if strict and not val > 0:
                return False
            if not strict and not val >= 0:
                return False
        return True

    def face_barycenter(self, face):
        """Exact interior chart point (E/H) or interior vector (S)."""
        if self.geometry.kind == SPHERICAL:
            total = [F0] * self.geometry.ambient_dim
            for vid in face.vertex_ids:
                for i, x in enumerate(self.vertices[vid]):
                    total[i] += frac(x)
            return tuple(total)
        k = len(face.vertex_ids)
        total = [F0] * self.geometry.n
        for vid in face.vertex_ids:
            for i, x in enumerate(self.vertices[vid]):
                total[i] += frac(x)
        return tuple(x / k for x in total)

    def __repr__(self):
        nv = len(self.vertices) if self.vertices is not None else "-"
        return f"ConvexPolytope({self.geometry}, facets<={len(self.halfspaces)}, verts={nv})"


class Polytope:
    """Finite union of convex polytopes with pairwise disjoint interiors."""

    __slots__ = ("geometry", "pieces")

    def __init__(self, geometry, pieces):
        pieces = tuple(pieces)
        if not pieces:
            raise ValueError("empty polytope")
        for a_i in range(len(pieces)):
            for b_i in range(a_i + 1, len(pieces)):
                if _interiors_overlap(pieces[a_i], pieces[b_i]):
                    raise ValueError("pieces have overlapping interiors")
        self.geometry = geometry
        self.pieces = pieces


def _interiors_overlap(p, q):
    g = p.geometry
    rows = [h.chart_row(g) for h in p.halfspaces] + [h.chart_row(g) for h in q.halfspaces]
    return exact.feasible(strict_rows=rows, nvars=g.chart_dim) is not None


def euclidean_unbounded(halfspaces, geometry):
    """Recession cone of the chart polyhedron is nonzero?"""
    nv = geometry.n
    linear = [h.chart_row(geometry)[:nv] + (F0,) for h in halfspaces]
    for i in range(nv):
        for s in (1, -1):
            eq = [F0] * (nv + 1)
            eq[i] = Fraction(s)
            eq[nv] = Fraction(-1)
            if exact.feasible((), linear, [tuple(eq)], nv) is not None:
                return True
    return False


def _vertex_candidates(halfspaces, geometry):
    """Exact chart vertices of the (assumed bounded) chart polyhedron."""
    from itertools import combinations

    nv = geometry.n
    rows = [h.chart_row(geometry) for h in halfspaces]
    hyps = {}
    for i, h in enumerate(halfspaces):
        hyps.setdefault(h.hyperplane, []).append(i)
    distinct = sorted(hyps)
    verts = []
    seen = set()
    for combo in combinations(range(len(distinct)), nv):
        sel = [rows[hyps[distinct[i]][0]] for i in combo]
        sol = exact.solve_unique([r[:nv] for r in sel], [-r[nv] for r in sel])
        if sol is None:
            continue
        if sol in seen:
            continue
        if all(dot(r[:nv], sol) + r[nv] >= 0 for r in rows):
            seen.add(sol)
            verts.append(sol)
    return sorted(verts)


def _extreme_rays(halfspaces, geometry):
    """Primitive extreme rays of a pointed full-dim cone in R^(n+1)."""
    from itertools import combinations

    amb = geometry.ambient_dim
    funcs = [tuple(map(frac, h.functional)) for h in halfspaces]
    rays = []
    seen = set()
    for combo in combinations(range(len(funcs)), amb - 1):
        ker = exact.nullspace([funcs[i] for i in combo], amb)
        if len(ker) != 1:
            continue
        ray = ker[0]
        for cand in (ray, tuple(-x for x in ray)):
            if all(dot(f, cand) >= 0 for f in funcs):
                prim = primitive_int_row(cand)
                if prim not in seen:
                    seen.add(prim)
                    rays.append(prim)
                break
    # keep only extreme rays: active set has rank amb-1
    out = []
    for ray in sorted(rays):
        active = [f for f in funcs if dot(f, ray) == 0]
        if exact.rank(active) == amb - 1:
            out.append(ray)
    return out


def _build_faces(geometry, halfspaces, vertices, top_span):
    """Faces from vertex incidence; spans satisfy Prop-style identities."""
    from itertools import combinations

    amb = geometry.ambient_dim
    spherical = geometry.kind == SPHERICAL

    def vert_vector(v):
        return v if spherical else (F1,) + tuple(map(frac, v))

    tight = []  # per vertex: set of halfspace indices active there
    for v in vertices:
        vx = vert_vector(v)
        tight.append(frozenset(i for i, h in enumerate(halfspaces) if dot(h.functional, vx) == 0))

    n = geometry.n
    facet_idx = range(len(halfspaces))
    found = {}
    for size in range(0, n + 1):
        for combo in combinations(facet_idx, size):
            vs = frozenset(
                vid for vid in range(len(vertices)) if all(i in tight[vid] for i in combo)
            )
            if not vs or vs in found:
                continue
            span = subspace_from_vectors(amb, [vert_vector(vertices[vid]) for vid in vs])
            dim = span.dim - 1
            active = frozenset.intersection(*[tight[vid] for vid in vs])
            found[vs] = Face(dim, vs, span, active)
    faces = sorted(found.values(), key=lambda f: (f.dim, tuple(sorted(f.vertex_ids))))
    faces.append(Face(n, frozenset(range(len(vertices))), top_span, frozenset()))
    return faces


def polytope_from_halfspaces(geometry, halfspaces):
    """Build a convex polytope; Invalid(reason) when the definition fails."""
    halfspaces = tuple(dict.fromkeys(halfspaces))  # drop exact duplicates
    g = geometry
    nv = g.chart_dim
    rows = [h.chart_row(g) for h in halfspaces]
    top = full_space(g.ambient_dim)

    if g.kind == SPHERICAL:
        if not halfspaces:
            return ConvexPolytope(g, (), None, None, None, weakly_convex=True)
        if exact.feasible(rows, (), (), nv) is None:
            if exact.feasible((), rows, (), nv) is None or _cone_is_zero(halfspaces, g):
                return Invalid(Invalid.EMPTY)
            return Invalid(Invalid.LOWER_DIMENSIONAL)
        witness = exact.feasible(rows, (), (), nv)
        pointed = exact.rank([h.functional for h in halfspaces]) == g.ambient_dim
        if not pointed:
            return ConvexPolytope(g, halfspaces, None, None, witness, weakly_convex=True)
        rays = _extreme_rays(halfspaces, g)
        faces = _build_faces(g, halfspaces, rays, top)
        return ConvexPolytope(g, halfspaces, rays, faces, witness)

    strict_witness = exact.feasible(rows, (), (), nv)
    if strict_witness is None:
        if exact.feasible((), rows, (), nv) is None:
            return Invalid(Invalid.EMPTY)
        return Invalid(Invalid.LOWER_DIMENSIONAL)
    if euclidean_unbounded(halfspaces, g):
        return Invalid(Invalid.UNBOUNDED)
    vertices = _vertex_candidates(halfspaces, g)
    if g.kind == HYPERBOLIC:
        for v in vertices:
            if sum((frac(x) * frac(x) for x in v), F0) >= 1:
                return Invalid(Invalid.UNBOUNDED)
    faces = _build_faces(g, halfspaces, vertices, top)
    return ConvexPolytope(g, halfspaces, vertices, faces, strict_witness)


def _cone_is_zero(halfspaces, geometry):
    nv = geometry.ambient_dim
    rows = [h.chart_row(geometry) for h in halfspaces]
    for i in range(nv):
        for s in (1, -1):
            eq = [F0] * (nv + 1)
            eq[i] = Fraction(s)
            eq[nv] = Fraction(-1)
            if exact.feasible((), rows, [tuple(eq)], nv) is not None:
                return False
    return True


def is_bounded(halfspaces, geometry):
    """Boundedness per geometry (spec: vertex-norm test in the Klein chart)."""
    if geometry.kind == SPHERICAL:
        return True
    if euclidean_unbounded(halfspaces, geometry):
        return False
    if geometry.kind == HYPERBOLIC:
        for v in _vertex_candidates(halfspaces, geometry):
            if sum((frac(x) * frac(x) for x in v), F0) >= 1:
                return False
    return True


def is_strongly_convex(polytope):
    """Spherical: defining cone is pointed (lives in an open hemisphere)."""
    if polytope.geometry.kind != SPHERICAL:
        raise ValueError("strong convexity is a spherical notion")
    if not polytope.halfspaces:
        return False
    return exact.rank([h.functional for h in polytope.halfspaces]) == polytope.geometry.ambient_dim


def join(geometry, u_carrier, p_halfspaces):
    """Join S(U) * P for P in S(U-perp), as an ambient polytope.

    P's half-space functionals must vanish on U; the join is then cut
    out by the very same functionals read ambiently.
    """
    if geometry.kind != SPHERICAL:
        raise ValueError("join is a spherical operation")
    for h in p_halfspaces:
        for b in u_carrier.basis:
            if dot(h.functional, b) != 0:
                raise ValueError("half-space does not vanish on the join factor U")
    result = polytope_from_halfspaces(geometry, p_halfspaces)
    if isinstance(result, Invalid):
        raise ValueError(f"join produced an invalid polytope: {result.reason}")
    return result


def span_points(points):
    """Smallest geodesic subspace containing the given 0-dim subspaces."""
    if not points:
        raise ValueError("span of no points")
    g = points[0].geometry
    vectors = []
    for p in points:
        if p.geometry != g:
            raise ValueError("mixed geometries in span")
        vectors.extend(p.carrier.basis)
    return GeoSubspace(g, subspace_from_vectors(g.ambient_dim, vectors))


def intersect_subspaces(a, b):
    """Intersection of geodesic subspaces; None when geodesically empty."""
    if a.geometry != b.geometry:
        raise ValueError("mixed geometries in intersection")
    carrier = a.carrier.intersect(b.carrier)
    if not geo_nonempty(carrier, a.geometry):
        return None
    return GeoSubspace(a.geometry, carrier)


def orthogonal_complement(subspace):
    return subspace.orthogonal_complement()
