"""Chain-level models and integer homology.

All complexes carry named basis elements (tuples of indices into sorted
member/cell lists) and sparse integer boundaries; every constructor
asserts boundary-squared = 0 exactly.  Relative models (anchored-flag
complexes, quotient complexes) compute the reduced homology of the
spaces they model directly; plain order complexes are augmented so that
their homology is reduced as well.
"""

from geotits import geometry as geo
from geotits._kernel import (
    IntMatrix,
    kernel_basis,
    smith_normal_form,
    solve_int,
)
from geotits.arrangement import FacePoset


class ChainComplex:
    """Graded basis labels with integer boundary matrices d: C_d -> C_{d-1}."""

    __slots__ = ("degrees", "boundaries", "meta")

    def __init__(self, degrees, boundaries, meta=""):
        self.degrees = {d: tuple(labels) for d, labels in degrees.items() if labels}
        self.boundaries = boundaries
        self.meta = meta
        self._validate()

    def dim(self, d):
        return len(self.degrees.get(d, ()))

    def boundary(self, d):
        b = self.boundaries.get(d)
        if b is None:
            return IntMatrix(self.dim(d - 1), self.dim(d))
        return b

    def index(self, d):
        return {label: i for i, label in enumerate(self.degrees.get(d, ()))}

    def support(self):
        return sorted(self.degrees)

    def as_json(self):
        """JSON-ready export: basis labels plus sparse boundary triplets."""
        def enc(label):
            if isinstance(label, tuple):
                return [enc(x) for x in label]
            return label

        return {
            "degrees": {str(d): [enc(l) for l in labels] for d, labels in self.degrees.items()},
            "boundaries": {
                str(d): sorted([i, j, v] for (i, j), v in self.boundary(d).entries.items())
                for d in self.support()
            },
        }

    def _validate(self):
        for d in self.support():
            b = self.boundary(d)
            if b.rows != self.dim(d - 1) or b.cols != self.dim(d):
                raise AssertionError(f"boundary shape mismatch in degree {d}")
            if self.dim(d - 1):
                bb = self.boundary(d - 1).compose(b)
                if not bb.is_zero():
                    raise AssertionError(f"boundary squared nonzero at degree {d}")


class HomologySummary:
    """Per-degree betti rank and torsion invariant factors."""

    __slots__ = ("by_degree", "reduced", "meta")

    def __init__(self, by_degree, reduced, meta=""):
        self.by_degree = dict(sorted(by_degree.items()))
        self.reduced = reduced
        self.meta = meta

    def betti(self, d):
        return self.by_degree.get(d, (0, ()))[0]

    def torsion(self, d):
        return self.by_degree.get(d, (0, ()))[1]

    def nonzero_degrees(self):
        return [d for d, (b, t) in self.by_degree.items() if b or t]

    def as_dict(self):
        return {
            str(d): {"betti": b, "torsion": list(t)}
            for d, (b, t) in self.by_degree.items()
            if b or t
        }

    def __eq__(self, other):
        if not isinstance(other, HomologySummary):
            return NotImplemented
        mine = {d: v for d, v in self.by_degree.items() if v[0] or v[1]}
        theirs = {d: v for d, v in other.by_degree.items() if v[0] or v[1]}
        return mine == theirs

    def __repr__(self):
        parts = [
            f"H_{d}=Z^{b}" + ("+" + "+".join(f"Z/{t}" for t in tors) if tors else "")
            for d, (b, tors) in self.by_degree.items()
            if b or tors
        ]
        return "HomologySummary(" + (", ".join(parts) if parts else "0") + ")"


def homology(complex_):
    """Betti + torsion per degree via Smith normal form."""
    ranks = {}
    tors = {}
    for d in complex_.support():
        snf = smith_normal_form(complex_.boundary(d))
        ranks[d] = snf.rank
        tors[d] = snf.torsion
    out = {}
    for d in complex_.support():
        betti = complex_.dim(d) - ranks.get(d, 0) - ranks.get(d + 1, 0)
        torsion = tors.get(d + 1, ())
        out[d] = (betti, torsion)
    return HomologySummary(out, reduced=True, meta=complex_.meta)


def wedge_verdict(summary, n):
    """Homology-level wedge-of-n-spheres certificate.

    True iff the reduced homology is free and concentrated in degree n
    (any rank including zero) with no torsion anywhere.
    """
    for d, (b, t) in summary.by_degree.items():
        if t:
            return False
        if b and d != n:
            return False
    return True


class HomologyClasses:
    """Coordinates of cycles in H_degree = ker / im, over a fixed basis."""

    def __init__(self, complex_, degree):
        self.complex = complex_
        self.degree = degree
        bd = complex_.boundary(degree)
        self.kernel = kernel_basis(bd)  # columns
        k = len(self.kernel)
        self._kmat = IntMatrix.from_columns(complex_.dim(degree), self.kernel)
        self._ksnf = smith_normal_form(self._kmat, want_transforms=True)
        bnext = complex_.boundary(degree + 1)
        img_cols = []
        for j in range(bnext.cols):
            col = bnext.column(j)
            coords = solve_int(self._kmat, col, snf=self._ksnf)
            if coords is None:  # pragma: no cover - boundaries are cycles
                raise AssertionError("boundary not in kernel lattice")
            img_cols.append(coords)
        self._rel = IntMatrix.from_columns(k, img_cols)
        self._rsnf = smith_normal_form(self._rel, want_transforms=True)
        self.betti = k - self._rsnf.rank
        self.torsion = self._rsnf.torsion

    def coords(self, cycle):
        """(free coords, torsion coords) of a cycle's homology class."""
        a = solve_int(self._kmat, list(cycle), snf=self._ksnf)
        if a is None:
            raise ValueError("not a cycle (or not in the kernel lattice)")
        k = len(self.kernel)
        u = self._rsnf.u_rows
        w = [sum(u[i][j] * a[j] for j in range(k) if a[j]) for i in range(k)]
        r = self._rsnf.rank
        free = tuple(w[r:])
        torsion = tuple(
            w[i] % d for i, d in enumerate(self._rsnf.invariant_factors) if d > 1
        )
        return free, torsion


# ---------------------------------------------------------------------------
# Flag / order complexes


def _chains(n, leq):
    """All strictly increasing index chains of a finite strict order.

    ``leq(a, b)`` decides a < b strictly; the empty chain is included.
    """
    chains = [()]
    frontier = [(i,) for i in range(n)]
    chains.extend(frontier)
    while frontier:
        new = []
        for chain in frontier:
            last = chain[-1]
            for j in range(n):
                if j != last and leq(last, j):
                    new.append(chain + (j,))
        chains.extend(new)
        frontier = new
    return chains


def _simplicial_boundaries(degrees):
    """Alternating face deletion; faces absent from the basis map to 0."""
    boundaries = {}
    for d in sorted(degrees):
        lower_index = {lab: i for i, lab in enumerate(degrees.get(d - 1, ()))}
        entries = {}
        for j, lab in enumerate(degrees[d]):
            for i_face in range(len(lab)):
                face = lab[:i_face] + lab[i_face + 1 :]
                row = lower_index.get(face)
                if row is not None:
                    entries[(row, j)] = entries.get((row, j), 0) + (-1) ** i_face
        boundaries[d] = IntMatrix(
            len(degrees.get(d - 1, ())), len(degrees[d]), entries
        )
    return boundaries


def order_complex(members, include_top=True, augmented=True, meta=""):
    """Simplicial chains on flags of the member poset.

    With ``include_top`` false this is the Tits complex T (proper members
    only).  Augmented, so homology() reports reduced homology; the empty
    complex has H_(-1) = Z.
    """
    elems = sorted((m for m in members if include_top or not m.is_top()),
                   key=lambda m: m.sort_key())
    leq = lambda i, j: elems[j].contains(elems[i]) and elems[i] != elems[j]
    chains = _chains(len(elems), leq)
    degrees = {}
    for chain in chains:
        if not chain:
            continue
        degrees.setdefault(len(chain) - 1, []).append(chain)
    for d in degrees:
        degrees[d] = sorted(degrees[d])
    boundaries = _simplicial_boundaries(degrees)
    if augmented:
        degrees[-1] = [()]
        if 0 in degrees:
            boundaries[0] = IntMatrix(
                1, len(degrees[0]), {(0, j): 1 for j in range(len(degrees[0]))}
            )
        boundaries[-1] = IntMatrix(0, 1)
    return ChainComplex(degrees, boundaries, meta=meta)


def relative_st_complex(members, top, meta=""):
    """Relative chains of (CT, T): flags anchored at the given top.

    Degree p basis: flags U_0 < ... < U_{p-1} < top of proper members;
    the empty flag (the bare anchor) sits in degree 0.  Faces dropping
    the anchor die; H_p equals the reduced homology of the suspended
    Tits complex.
    """
    proper = sorted(
        (m for m in members if m != top), key=lambda m: m.sort_key()
    )
    for m in proper:
        if not top.contains(m):
            raise ValueError("member not contained in the top subspace")
    leq = lambda i, j: proper[j].contains(proper[i]) and proper[i] != proper[j]
    chains = _chains(len(proper), leq)
    degrees = {}
    for chain in chains:
        degrees.setdefault(len(chain), []).append(chain)
    for d in degrees:
        degrees[d] = sorted(degrees[d])
    # the anchor never appears in labels, so plain face deletion with
    # absent faces mapping to zero is exactly the relative boundary
    boundaries = _simplicial_boundaries(degrees)
    return ChainComplex(degrees, boundaries, meta=meta)


def tpl_complex(points, geometry, meta=""):
    """Relative chains of the full simplex on the points modulo the
    subcomplex of tuples spanning a proper subspace.

    Basis in degree d: strictly increasing (d+1)-tuples of point indices
    whose span is the whole geometry; boundary faces that become
    degenerate (span a proper subspace) die.
    """
    pts = sorted(points, key=lambda p: p.sort_key())
    amb = geometry.ambient_dim
    from itertools import combinations

    full = {}
    for size in range(1, len(pts) + 1):
        for combo in combinations(range(len(pts)), size):
            span = geo.span_points([pts[i] for i in combo])
            if span.carrier.dim == amb:
                full.setdefault(size - 1, []).append(combo)
    degrees = {d: sorted(v) for d, v in full.items()}
    boundaries = _simplicial_boundaries(degrees)
    return ChainComplex(degrees, boundaries, meta=meta), pts


def local_complex(coll, window, meta=""):
    """Relative ST model on the sub-poset of members meeting the window.

    The window must be a valid (bounded, full-dimensional) convex
    polytope whose facet hyperplanes belong to the collection.
    """
    from geotits import collection as coll_mod

    if not isinstance(window, geo.ConvexPolytope):
        raise ValueError("window must be a convex polytope (bounded)")
    known = {m.carrier for m in coll.members}
    for h in window.halfspaces:
        hs = geo.hyperplane_subspace(coll.geometry, h.hyperplane)
        if hs is None or hs.carrier not in known:
            raise ValueError("window facets must be hyperplanes of the collection")
    members = coll_mod.restrict(coll, window)
    return relative_st_complex(list(members), coll.top(), meta=meta or "local-st")


# ---------------------------------------------------------------------------
# Spherical triangulation and the polytopal-Tits models


class SphereTriangulation:
    """Barycentric flag model of an admissible spherical arrangement.

    Vertices are arrangement cells; m-simplices are strict closure
    chains of m+1 cells.  For every flat V of the collection, the chains
    whose top cell lies in V triangulate the subsphere S(V).
    """

    __slots__ = ("poset", "cell_order", "cell_index", "simplices", "complex")

    def __init__(self, poset, meta=""):
        self.poset = poset
        self.cell_order = tuple(sorted(poset.cells))
        self.cell_index = {s: i for i, s in enumerate(self.cell_order)}
        cells = [poset.cells[s] for s in self.cell_order]
        leq = lambda i, j: i != j and FacePoset.leq(
            self.cell_order[i], self.cell_order[j]
        )
        chains = _chains(len(cells), leq)
        degrees = {}
        for chain in chains:
            if not chain:
                continue
            degrees.setdefault(len(chain) - 1, []).append(chain)
        self.simplices = {d: tuple(sorted(v)) for d, v in degrees.items()}
        boundaries = _simplicial_boundaries(
            {d: list(v) for d, v in self.simplices.items()}
        )
        self.complex = ChainComplex(
            {d: list(v) for d, v in self.simplices.items()}, boundaries, meta=meta
        )

    def top_cell(self, label):
        return self.poset.cells[self.cell_order[label[-1]]]

    def label_in_carrier(self, label, carrier):
        """Is the simplex contained in S(carrier)?"""
        return carrier.contains(self.top_cell(label).flat)

    def labels_in_carrier(self, carrier, m):
        return [
            lab
            for lab in self.simplices.get(m, ())
            if self.label_in_carrier(lab, carrier)
        ]


def sphere_triangulation(coll, poset=None):
    """Triangulation of S^n subordinate to an admissible collection."""
    from geotits import collection as coll_mod
    from geotits.arrangement import build_arrangement

    if coll_mod.admissible(coll) != coll_mod.ADMISSIBLE:
        raise ValueError("NOT_ADMISSIBLE: sphere triangulation needs admissibility")
    if poset is None:
        poset = build_arrangement(coll)
    # admissibility makes every cell's closed cone pointed (strongly
    # convex), which is what turns closure chains into a triangulation
    from geotits import exact

    for sign, cell in poset.cells.items():
        closed = [cov for s_i, cov in zip(sign, poset.covectors) if s_i == 0]
        closed += [cov for s_i, cov in zip(sign, poset.covectors) if s_i != 0]
        if exact.rank(closed) != coll.geometry.ambient_dim:  # pragma: no cover
            raise AssertionError("arrangement cell is not strongly convex")
    return SphereTriangulation(poset, meta="sphere-triangulation")


def pt_bicomplex(coll, tri, meta=""):
    """Total complex of the poset-of-flats diagram of subsphere chains,
    relative to the sub-diagram below the top flat.

    Degree (k + m) basis: (flag of k proper members V_0 < ... < V_{k-1}
    anchored at the top, m-simplex of the S(V_0) triangulation); for the
    empty flag the simplex ranges over the whole sphere model.
    """
    proper = sorted((m for m in coll.members if not m.is_top()),
                    key=lambda m: m.sort_key())
    carrier = [m.carrier for m in proper]
    leq = lambda i, j: carrier[j].contains(carrier[i]) and carrier[i] != carrier[j]
    flags = _chains(len(proper), leq)
    degrees = {}
    for flag in flags:
        if flag:
            bottom = carrier[flag[0]]
            simplex_pool = {
                m: tri.labels_in_carrier(bottom, m) for m in tri.simplices
            }
        else:
            simplex_pool = {m: list(tri.simplices[m]) for m in tri.simplices}
        k = len(flag)
        for m, labs in simplex_pool.items():
            for sigma in labs:
                degrees.setdefault(k + m, []).append((flag, sigma))
    for d in degrees:
        degrees[d] = sorted(degrees[d])
    index = {d: {lab: i for i, lab in enumerate(v)} for d, v in degrees.items()}
    boundaries = {}
    for d in sorted(degrees):
        entries = {}
        lower = index.get(d - 1, {})
        for j, (flag, sigma) in enumerate(degrees[d]):
            k = len(flag)
            for drop in range(k):
                face = (flag[:drop] + flag[drop + 1 :], sigma)
                row = lower.get(face)
                if row is not None:
                    entries[(row, j)] = entries.get((row, j), 0) + (-1) ** drop
            sgn = (-1) ** k
            for i_face in range(len(sigma)):
                face_sigma = sigma[:i_face] + sigma[i_face + 1 :]
                if not face_sigma:
                    continue
                face = (flag, face_sigma)
                row = lower.get(face)
                if row is not None:
                    entries[(row, j)] = entries.get((row, j), 0) + sgn * (-1) ** i_face
        boundaries[d] = IntMatrix(len(degrees.get(d - 1, ())), len(degrees[d]), entries)
    return ChainComplex(degrees, boundaries, meta=meta or "pt-bicomplex")


def pt_collapse_complex(coll, tri, meta=""):
    """Strict-colimit model: chains of S^n relative to the proper-flat union.

    Basis: simplices of the sphere triangulation whose top cell is a
    full-dimensional region; faces falling into proper flats die.
    """
    n = coll.geometry.n
    degrees = {}
    for m, labs in tri.simplices.items():
        keep = [lab for lab in labs if tri.top_cell(lab).dim == n]
        if keep:
            degrees[m] = sorted(keep)
    boundaries = _simplicial_boundaries(degrees)
    return ChainComplex(degrees, boundaries, meta=meta or "pt-collapse")


def collapse_chain_map(bicomplex, collapse):
    """Chain map from the bicomplex to the collapse model.

    Sends (empty flag, sigma) to sigma when sigma survives in the
    collapse model, and every generator with a nonempty flag to zero.
    """
    maps = {}
    for d in bicomplex.support():
        tgt_index = collapse.index(d)
        entries = {}
        for j, (flag, sigma) in enumerate(bicomplex.degrees[d]):
            if flag:
                continue
            row = tgt_index.get(sigma)
            if row is not None:
                entries[(row, j)] = 1
        maps[d] = IntMatrix(collapse.dim(d), bicomplex.dim(d), entries)
    # verify chain map: d q = q d
    for d in bicomplex.support():
        if d - 1 not in maps:
            continue
        left = collapse.boundary(d).compose(maps[d])
        right = maps[d - 1].compose(bicomplex.boundary(d))
        if left != right:
            raise AssertionError("collapse is not a chain map")
    return maps
