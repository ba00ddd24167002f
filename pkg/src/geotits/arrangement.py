"""Hyperplane-arrangement cells, region bases and polytope normal forms.

Cells are keyed by sign vectors over the collection's hyperplanes (in
canonical covector order).  Regions are represented by sign vectors plus
exact interior witnesses, so unbounded regions are first class.  On the
sphere the two antipodes of a 0-flat are distinct cells with opposite
sign vectors.
"""

from fractions import Fraction
from itertools import combinations

from geotits import exact, geometry as geo
from geotits.exact import F0, F1, dot, frac

MAX_DIM = 4
MAX_HYPERPLANES = 16

NOT_L_POLYTOPE = "NOT_L_POLYTOPE"
ZERO = "ZERO"
NO_LIFT = "NO_LIFT"


class Cell:
    __slots__ = ("sign_vector", "flat", "dim", "witness")

    def __init__(self, sign_vector, flat, dim, witness):
        self.sign_vector = sign_vector
        self.flat = flat
        self.dim = dim
        self.witness = witness

    def __repr__(self):
        return f"Cell({sign_key(self.sign_vector)}, dim={self.dim})"


def sign_key(sign_vector):
    return "".join("+" if s > 0 else "-" if s < 0 else "0" for s in sign_vector)


class FacePoset:
    """All cells of the arrangement, ordered by closure."""

    __slots__ = ("geometry", "covectors", "cells", "within")

    def __init__(self, geometry, covectors, cells, within=None):
        self.geometry = geometry
        self.covectors = covectors
        self.cells = cells  # dict sign_vector -> Cell
        self.within = within

    def by_dim(self, d):
        return [c for s, c in sorted(self.cells.items()) if c.dim == d]

    def census(self):
        out = {}
        for c in self.cells.values():
            out[c.dim] = out.get(c.dim, 0) + 1
        return dict(sorted(out.items()))

    @staticmethod
    def leq(a, b):
        """Closure order: cell a lies in the closure of cell b."""
        return all(x == 0 or x == y for x, y in zip(a, b))

    def regions(self):
        n = self.geometry.n
        return [c for s, c in sorted(self.cells.items()) if c.dim == n]


def _cell_rows(geometry, covectors, sign_vector, extra_nonstrict=()):
    """(strict, nonstrict, eq) chart rows realizing a sign vector."""
    strict, eqs = [], []
    for s, cov in zip(sign_vector, covectors):
        row = geo.functional_chart_row(geometry, cov)
        if s > 0:
            strict.append(row)
        elif s < 0:
            strict.append(tuple(-x for x in row))
        else:
            eqs.append(row)
    return strict, list(extra_nonstrict), eqs


def min_norm_point(nonstrict_rows, eq_rows, nvars):
    """(min ||x||^2, argmin) over the closed polyhedron, None if empty."""
    if exact.feasible((), nonstrict_rows, eq_rows, nvars) is None:
        return None
    ineq = [tuple(map(frac, r)) for r in nonstrict_rows]
    eqs = [tuple(map(frac, r)) for r in eq_rows]
    best = None
    for size in range(0, nvars + 1):
        for combo in combinations(range(len(ineq)), size):
            rows = eqs + [ineq[i] for i in combo]
            if rows:
                sol = exact.solve_affine(
                    [r[:nvars] for r in rows], [-r[nvars] for r in rows]
                )
                if sol is None:
                    continue
                x0, hom = sol
                if hom:
                    gram = [[dot(u, v) for v in hom] for u in hom]
                    rhs = [-dot(u, x0) for u in hom]
                    t = exact.solve_unique(gram, rhs)
                    x = list(x0)
                    for ti, h in zip(t, hom):
                        for j in range(nvars):
                            x[j] += ti * h[j]
                    x = tuple(x)
                else:
                    x = x0
            else:
                x = tuple([F0] * nvars)
            if not all(dot(r[:nvars], x) + r[nvars] >= 0 for r in ineq):
                continue
            if not all(dot(r[:nvars], x) + r[nvars] == 0 for r in eqs):
                continue
            val = dot(x, x)
            if best is None or val < best[0]:
                best = (val, x)
    return best


def _ball_interior_witness(strict, nonstrict, eqs, nv):
    """Witness of the system strictly inside the unit ball, or None."""
    w = exact.feasible(strict, nonstrict, eqs, nv)
    if w is None:
        return None
    if sum((x * x for x in w), F0) < 1:
        return w
    closed = list(strict) + list(nonstrict)
    got = min_norm_point(closed, eqs, nv)
    if got is None:  # pragma: no cover - strict feasible implies nonempty
        return None
    val, p = got
    if val >= 1:
        return None
    t = F1
    while True:
        cand = tuple(pi + t * (wi - pi) for pi, wi in zip(p, w))
        if sum((x * x for x in cand), F0) < 1:
            return cand
        t = t / 2


def _flat_of(geometry, covectors, sign_vector):
    zero_rows = [cov for s, cov in zip(sign_vector, covectors) if s == 0]
    if not zero_rows:
        return geo.full_space(geometry.ambient_dim)
    return geo.LinearSubspace(
        geometry.ambient_dim, exact.nullspace(zero_rows, geometry.ambient_dim)
    )


def _part_witness(geometry, covectors, sign_vector, within_rows):
    """Interior witness of the candidate cell, or None if empty."""
    g = geometry
    nv = g.chart_dim
    strict, nonstrict, eqs = _cell_rows(g, covectors, sign_vector, within_rows)
    if g.kind == geo.SPHERICAL:
        if not strict:
            flat = _flat_of(g, covectors, sign_vector)
            if flat.dim == 0:
                return None
            return flat.basis[0]
        return exact.feasible(strict, nonstrict, eqs, nv)
    if g.kind == geo.EUCLIDEAN or within_rows:
        # a bounded window A lies strictly inside the Klein ball already
        return exact.feasible(strict, nonstrict, eqs, nv)
    return _ball_interior_witness(strict, nonstrict, eqs, nv)


def _constant_on_cell_span(geometry, cov, flat):
    """Is the functional constant on the cell's chart span?"""
    if geometry.kind == geo.SPHERICAL:
        return all(dot(cov, b) == 0 for b in flat.basis)
    # RREF basis of a chart-meeting flat has exactly one row with x0 != 0;
    # the remaining rows span the direction space.
    return all(dot(cov, b) == 0 for b in flat.basis if b[0] == 0)


def build_arrangement(coll, within=None):
    """Incremental construction by hyperplane insertion.

    ``within``: optional convex window polytope A whose facet hyperplanes
    belong to the collection; the arrangement is then restricted to the
    cells meeting A (the A-local form).  Hyperbolic global arrangements
    use exact Klein-ball membership tests.
    """
    g = coll.geometry
    covectors = tuple(sorted(coll.hyperplane_covectors))
    if g.n > MAX_DIM:
        raise ValueError(f"dimension {g.n} exceeds the desk-scale guard {MAX_DIM}")
    if len(covectors) > MAX_HYPERPLANES:
        raise ValueError(
            f"{len(covectors)} hyperplanes exceed the desk-scale guard {MAX_HYPERPLANES}"
        )
    within_rows = []
    if within is not None:
        known = set(covectors)
        for h in within.halfspaces:
            if h.hyperplane not in known:
                raise ValueError("window polytope must be an L-polytope")
        within_rows = [h.chart_row(g) for h in within.halfspaces]

    nv = g.chart_dim
    if within is not None:
        base_witness = within.interior_witness
    elif g.kind == geo.SPHERICAL:
        base_witness = tuple([F1] + [F0] * (nv - 1))
    else:
        base_witness = tuple([F0] * nv)
    partial = {(): base_witness}

    for m, cov in enumerate(covectors):
        row = geo.functional_chart_row(g, cov)
        updated = {}
        for signs, witness in sorted(partial.items()):
            val = dot(row[:nv], witness) + row[nv]
            s0 = 1 if val > 0 else (-1 if val < 0 else 0)
            updated[signs + (s0,)] = witness
            flat = _flat_of(g, covectors[:m], signs)
            if _constant_on_cell_span(g, cov, flat):
                continue  # the hyperplane cannot split this cell
            for s in (-1, 0, 1):
                if s == s0:
                    continue
                cand = signs + (s,)
                w = _part_witness(g, covectors[: m + 1], cand, within_rows)
                if w is not None:
                    updated[cand] = w
        partial = updated

    cells = {}
    for signs, witness in sorted(partial.items()):
        flat = _flat_of(g, covectors, signs)
        cells[signs] = Cell(signs, flat, flat.dim - 1, witness)
    return FacePoset(g, covectors, cells, within=within)


def region_halfspaces(poset, sign_vector):
    halfspaces = []
    for s, cov in zip(sign_vector, poset.covectors):
        if s > 0:
            halfspaces.append(geo.HalfSpace(cov))
        elif s < 0:
            halfspaces.append(geo.HalfSpace(cov, sense=-1))
    if poset.within is not None:
        halfspaces.extend(poset.within.halfspaces)
    return tuple(dict.fromkeys(halfspaces))


def region_is_bounded(poset, cell):
    """Boundedness of a cell's closure (works in any cell dimension)."""
    g = poset.geometry
    if g.kind == geo.SPHERICAL:
        return True
    nv = g.chart_dim
    rows = [h.chart_row(g)[:nv] + (F0,) for h in region_halfspaces(poset, cell.sign_vector)]
    flat_eqs = [
        geo.functional_chart_row(g, cov)[:nv] + (F0,)
        for s, cov in zip(cell.sign_vector, poset.covectors)
        if s == 0
    ]
    for i in range(nv):
        for s in (1, -1):
            eq = [F0] * (nv + 1)
            eq[i] = Fraction(s)
            eq[nv] = Fraction(-1)
            if exact.feasible((), rows, flat_eqs + [tuple(eq)], nv) is not None:
                return False
    if g.kind == geo.HYPERBOLIC:
        hs = list(region_halfspaces(poset, cell.sign_vector))
        for s, cov in zip(cell.sign_vector, poset.covectors):
            if s == 0:  # flat equations as opposite half-space pairs
                hs.append(geo.HalfSpace(cov))
                hs.append(geo.HalfSpace(cov, sense=-1))
        for v in geo._vertex_candidates(tuple(hs), g):
            if sum((frac(x) * frac(x) for x in v), F0) >= 1:
                return False
    return True


def region_basis(poset, bounded_only=None):
    """Deterministically ordered basis of (bounded) top-dimensional cells."""
    g = poset.geometry
    if bounded_only is None:
        bounded_only = g.kind != geo.SPHERICAL and poset.within is None
    out = []
    for cell in poset.regions():
        if bounded_only and not region_is_bounded(poset, cell):
            continue
        out.append(cell.sign_vector)
    return tuple(sorted(out))


def region_polytope(poset, sign_vector):
    """The closed region as a ConvexPolytope."""
    p = geo.polytope_from_halfspaces(
        poset.geometry, region_halfspaces(poset, sign_vector)
    )
    if isinstance(p, geo.Invalid):
        raise AssertionError(
            f"region {sign_key(sign_vector)} not a valid polytope: {p.reason}"
        )
    return p


def cell_in_polytope(poset, cell, polytope):
    """Closed-polytope membership of the cell (tested at its witness)."""
    if poset.geometry.kind == geo.SPHERICAL:
        return all(dot(h.functional, cell.witness) >= 0 for h in polytope.halfspaces)
    return polytope.contains_chart_point(cell.witness)


def cells_in_polytope(poset, polytope, dims=None):
    out = []
    for signs, cell in sorted(poset.cells.items()):
        if dims is not None and cell.dim not in dims:
            continue
        if cell_in_polytope(poset, cell, polytope):
            out.append(signs)
    return out


def polytope_to_vector(polytope, basis, poset):
    """Indicator vector of an L-polytope over the region basis.

    Returns NOT_L_POLYTOPE when a facet hyperplane lies outside the
    collection or the polytope covers regions outside the basis.
    """
    pieces = polytope.pieces if isinstance(polytope, geo.Polytope) else (polytope,)
    vec = [0] * len(basis)
    index = {s: i for i, s in enumerate(basis)}
    known = set(poset.covectors)
    g = poset.geometry
    for piece in pieces:
        for hyp in piece.facet_hyperplanes():
            if hyp not in known:
                return NOT_L_POLYTOPE
        covered = cells_in_polytope(poset, piece, dims={g.n})
        for signs in covered:
            if signs in index:
                vec[index[signs]] += 1
            else:
                return NOT_L_POLYTOPE
    return tuple(vec)


def subdivide(polytope, cutter_covectors):
    """Closures of the top-dimensional parts of the polytope cut by the cutters."""
    g = polytope.geometry
    cutters = tuple(sorted(set(geo.canonical_covector(c) for c in cutter_covectors)))
    nv = g.chart_dim
    base_rows = [h.chart_row(g) for h in polytope.halfspaces]
    parts = [()]
    for m, cov in enumerate(cutters):
        row = geo.functional_chart_row(g, cov)
        new_parts = []
        for signs in parts:
            rows = list(base_rows)
            for s2, c2 in zip(signs, cutters):
                r2 = geo.functional_chart_row(g, c2)
                rows.append(r2 if s2 > 0 else tuple(-x for x in r2))
            for s in (1, -1):
                extra = row if s > 0 else tuple(-x for x in row)
                if exact.feasible(rows + [extra], (), (), nv) is not None:
                    new_parts.append(signs + (s,))
        parts = new_parts
    out = []
    for signs in sorted(parts):
        hs = list(polytope.halfspaces)
        for s, cov in zip(signs, cutters):
            hs.append(geo.HalfSpace(cov, sense=1 if s > 0 else -1))
        p = geo.polytope_from_halfspaces(g, hs)
        if isinstance(p, geo.Invalid):  # pragma: no cover - parts are full-dim
            raise AssertionError(f"subdivision part invalid: {p.reason}")
        out.append(p)
    return out


def facet_map(q, u_covector, poset_u=None, basis_u=None):
    """Signed facet of q along the hyperplane u.

    Returns ZERO when q has no facet along u; otherwise ``(side, facet)``
    with side +1 when q lies in {u >= 0}, -1 when in {u <= 0}.  ``facet``
    is the indicator tuple over ``basis_u`` (cells of the arrangement on
    u) when a basis is supplied, else None.
    """
    g = q.geometry
    u = geo.canonical_covector(u_covector)
    urow = geo.functional_chart_row(g, u)
    nv = g.chart_dim
    allrows = [h.chart_row(g) for h in q.halfspaces]
    plus = exact.feasible(allrows + [urow], (), (), nv) is not None
    minus = exact.feasible(allrows + [tuple(-x for x in urow)], (), (), nv) is not None
    if plus and minus:
        return ZERO  # u cuts the interior: no facet along u
    side = 1 if plus else -1
    qrows = [h.chart_row(g) for h in q.halfspaces if h.hyperplane != u]
    if exact.feasible(qrows, (), [urow], nv) is None:
        return ZERO  # contact has dimension < n-1
    if basis_u is None:
        return (side, None)
    vec = [0] * len(basis_u)
    for i, signs in enumerate(basis_u):
        if cell_in_polytope(poset_u, poset_u.cells[signs], q):
            vec[i] = 1
    return (side, tuple(vec))


def facet_wall(poset, facet_sign):
    """Index of the unique hyperplane carrying an (n-1)-cell."""
    cell = poset.cells[facet_sign]
    if cell.dim != poset.geometry.n - 1:
        raise ValueError("not an (n-1)-cell")
    walls = [i for i, s in enumerate(facet_sign) if s == 0]
    if len(walls) != 1:  # pragma: no cover - distinct covectors, distinct kernels
        raise AssertionError("an (n-1)-cell must lie on exactly one hyperplane")
    return walls[0]


def cofacet_lift(poset, facet_sign, side=1, bounded_required=True):
    """Region of the arrangement having the given (n-1)-cell as a facet.

    Tries the requested side of the cell's wall first; falls back to the
    other side when boundedness is required but fails there.  Returns
    (region_sign, actual_side) or NO_LIFT.
    """
    wall = facet_wall(poset, facet_sign)
    for s in (side, -side):
        cand = tuple((s if i == wall else x) for i, x in enumerate(facet_sign))
        if cand in poset.cells and poset.cells[cand].dim == poset.geometry.n:
            if not bounded_required or region_is_bounded(poset, poset.cells[cand]):
                return cand, s
    return NO_LIFT
