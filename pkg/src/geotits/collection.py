"""Finite collections of geodesic subspaces and their derived collections.

A collection is canonically sorted, so set equality is syntactic.  The
generating hyperplanes are kept as canonical integer covectors alongside
the member subspaces (for S^0 the unique "hyperplane" is the zero
subspace, which is not a geodesic member but still counts as a
generator).
"""

from geotits import exact, geometry as geo

ADMISSIBLE = "ADMISSIBLE"
NOT_ADMISSIBLE = "NOT_ADMISSIBLE"
NOT_DECIDABLE_FINITE = "NOT_DECIDABLE_FINITE"

MODE_POINTS = "points"
MODE_HYPERPLANES = "hyperplanes"
MODE_BOTH = "both"
MODE_RAW = "raw"


class Collection:
    __slots__ = ("geometry", "members", "generation_mode", "hyperplane_covectors")

    def __init__(self, geometry, members, generation_mode, hyperplane_covectors=()):
        self.geometry = geometry
        self.members = tuple(sorted(set(members), key=lambda m: m.sort_key()))
        self.generation_mode = generation_mode
        self.hyperplane_covectors = tuple(sorted(hyperplane_covectors))

    @property
    def contains_top(self):
        return any(m.is_top() for m in self.members)

    def top(self):
        return geo.top_subspace(self.geometry)

    def proper_members(self):
        return tuple(m for m in self.members if not m.is_top())

    def grade(self, k):
        """Members of geometric dimension k."""
        return tuple(m for m in self.members if m.geo_dim == k)

    def points(self):
        return self.grade(0)

    def hyperplane_members(self):
        return self.grade(self.geometry.n - 1)

    def member_set(self):
        return set(self.members)

    def __eq__(self, other):
        return (
            isinstance(other, Collection)
            and self.geometry == other.geometry
            and self.members == other.members
        )

    def __hash__(self):
        return hash((self.geometry, self.members))

    def __repr__(self):
        return (
            f"Collection({self.geometry}, {len(self.members)} members, "
            f"mode={self.generation_mode})"
        )


def _intersection_closure(geometry, seeds):
    """Fixed point of pairwise nonempty geodesic intersection."""
    members = {m.carrier: m for m in seeds}
    frontier = list(members.values())
    while frontier:
        new = []
        current = list(members.values())
        for a in frontier:
            for b in current:
                if a.carrier == b.carrier:
                    continue
                c = geo.intersect_subspaces(a, b)
                if c is not None and c.carrier not in members:
                    members[c.carrier] = c
                    new.append(c)
        frontier = new
    return list(members.values())


def _span_closure(geometry, seeds):
    members = {m.carrier: m for m in seeds}
    frontier = list(members.values())
    while frontier:
        new = []
        current = list(members.values())
        for a in frontier:
            for b in current:
                if a.carrier == b.carrier:
                    continue
                c = geo.span_points([a, b])
                if c.carrier not in members:
                    members[c.carrier] = c
                    new.append(c)
        frontier = new
    return list(members.values())


def closure_by_hyperplanes(geometry, covectors):
    """All nonempty intersections of the hyperplanes, plus the top space."""
    covs = []
    seen = set()
    for c in covectors:
        cc = geo.canonical_covector(c)
        if cc in seen:
            raise ValueError(f"duplicate hyperplane {cc}")
        seen.add(cc)
        covs.append(cc)
    seeds = []
    for c in covs:
        h = geo.hyperplane_subspace(geometry, c)
        if h is None:
            if geometry.kind == geo.SPHERICAL and geometry.n == 0:
                continue  # the zero subspace: generator without geodesic carrier
            raise ValueError(f"hyperplane {c} does not meet the geometry")
        seeds.append(h)
    members = _intersection_closure(geometry, seeds)
    members.append(geo.top_subspace(geometry))
    return Collection(geometry, members, MODE_HYPERPLANES, covs)


def closure_by_points(geometry, points):
    """All spans of nonempty subsets of the points.

    Returns (collection, generating) where ``generating`` records whether
    the spans reach the whole geometry (X^n in the collection).
    """
    for p in points:
        if p.geo_dim != 0:
            raise ValueError("closure_by_points needs 0-dimensional subspaces")
    if not points:
        raise ValueError("no points given")
    members = _span_closure(geometry, points)
    generating = any(m.is_top() for m in members)
    covs = []
    for m in members:
        if m.geo_dim == geometry.n - 1:
            ker = exact.nullspace(m.carrier.basis)
            covs.append(geo.canonical_covector(ker[0]))
    return Collection(geometry, members, MODE_POINTS, covs), generating


class Variants:
    """The derived collections for one extra hyperplane U."""

    __slots__ = ("cup", "uplus", "cap", "u_member")

    def __init__(self, cup, uplus, cap, u_member):
        self.cup = cup
        self.uplus = uplus
        self.cap = cap
        self.u_member = u_member


def variants(collection, u_covector):
    """L-cup-U, L-uplus-U and L-cap-U for a single hyperplane U."""
    u = geo.canonical_covector(u_covector)
    base = list(collection.hyperplane_covectors)
    covs = base if u in base else base + [u]
    cup = closure_by_hyperplanes(collection.geometry, covs)
    u_member = geo.hyperplane_subspace(collection.geometry, u)
    uplus = tuple(m for m in cup.members if m != u_member)
    cap = tuple(m for m in cup.members if u_member.contains(m))
    return Variants(cup, uplus, cap, u_member)


def restrict(collection, polytope):
    """Sub-poset L|A of members meeting the convex polytope A."""
    g = collection.geometry
    rows = [h.chart_row(g) for h in polytope.halfspaces]
    nv = g.chart_dim
    kept = []
    for m in collection.members:
        if m.is_top():
            kept.append(m)
            continue
        # carrier constraint: chart vector lies in the carrier
        normal_rows = [
            geo.functional_chart_row(g, f) for f in m.carrier.orthogonal_complement().basis
        ]
        if g.kind == geo.SPHERICAL:
            hit = any(
                exact.feasible([d], rows, normal_rows, nv) is not None
                for d in _nonzero_directions(nv)
            )
        else:
            hit = exact.feasible((), rows, normal_rows, nv) is not None
        if hit:
            kept.append(m)
    return tuple(kept)


def _nonzero_directions(nv):
    for i in range(nv):
        for s in (1, -1):
            row = [0] * (nv + 1)
            row[i] = s
            yield tuple(row)


def dualize(collection):
    """Orthogonal-complement collection (spherical only)."""
    if collection.geometry.kind != geo.SPHERICAL:
        raise ValueError("dualize needs spherical geometry")
    g = collection.geometry
    members = [geo.top_subspace(g)]
    for m in collection.members:
        c = m.carrier.orthogonal_complement()
        if geo.geo_nonempty(c, g):
            members.append(geo.GeoSubspace(g, c))
    covs = []
    for m in members:
        if m.geo_dim == g.n - 1 and not m.is_top():
            ker = exact.nullspace(m.carrier.basis)
            covs.append(geo.canonical_covector(ker[0]))
    return Collection(g, members, MODE_RAW, covs)


def admissible(collection):
    g = collection.geometry
    if g.kind == geo.EUCLIDEAN:
        return ADMISSIBLE if collection.points() else NOT_ADMISSIBLE
    if g.kind == geo.SPHERICAL:
        covs = collection.hyperplane_covectors
        if covs and exact.rank(covs) == g.ambient_dim:
            return ADMISSIBLE
        return NOT_ADMISSIBLE
    return NOT_DECIDABLE_FINITE


def hyperplane_intersection_carrier(collection):
    """Carrier of the intersection of all generating hyperplanes."""
    g = collection.geometry
    covs = collection.hyperplane_covectors
    if not covs:
        return geo.full_space(g.ambient_dim)
    return geo.LinearSubspace(g.ambient_dim, exact.nullspace(covs, g.ambient_dim))


def generated_by_points(collection):
    pts = collection.points()
    if not pts:
        return False
    closed, generating = closure_by_points(collection.geometry, list(pts))
    return generating and closed.members == collection.members


def generated_by_hyperplanes(collection):
    hyps = collection.hyperplane_members()
    covs = []
    for m in hyps:
        ker = exact.nullspace(m.carrier.basis)
        covs.append(geo.canonical_covector(ker[0]))
    if not covs and not (collection.geometry.kind == geo.SPHERICAL and collection.geometry.n == 0):
        return collection.members == (geo.top_subspace(collection.geometry),)
    closed = closure_by_hyperplanes(collection.geometry, covs)
    return closed.members == collection.members


def generated_by_both(collection):
    return generated_by_points(collection) and generated_by_hyperplanes(collection)
