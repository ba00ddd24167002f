"""Polytope and Lee-Szczarba groups, apartment classes, theorem checkers.

Sign conventions: the standard orientation of each chart orients X^n;
apartment signs come from barycenter determinants relative to the
canonical basis of each flat's carrier.  Only well-definedness and
iso-ness are ever asserted, never an absolute sign.
"""

from fractions import Fraction
from itertools import combinations, permutations

from geotits import arrangement as arr
from geotits import collection as coll_mod
from geotits import complexes as cx
from geotits import exact, geometry as geo
from geotits._kernel import (
    IntMatrix,
    kernel_basis,
    lattices_equal,
    smith_normal_form,
    solve_int,
)
from geotits.exact import F0, F1, dot, frac

NOT_APPLICABLE = "NOT_APPLICABLE"


# ---------------------------------------------------------------------------
# Finitely presented abelian groups


class GroupPresentation:
    """Generators plus a relation matrix (one relation per row)."""

    __slots__ = ("generators", "relations", "_snf")

    def __init__(self, generators, relations=None):
        self.generators = tuple(generators)
        g = len(self.generators)
        if relations is None:
            relations = IntMatrix(0, g)
        if relations.cols != g:
            raise ValueError("relation width mismatch")
        self.relations = relations
        self._snf = smith_normal_form(relations)

    @property
    def free_rank(self):
        return len(self.generators) - self._snf.rank

    @property
    def torsion(self):
        return self._snf.torsion

    def invariants(self):
        return (self.free_rank, self.torsion)

    def relation_lattice_matrix(self):
        """Relations as columns (lattice in Z^generators)."""
        return self.relations.transpose()

    def __repr__(self):
        t = "+".join(f"Z/{d}" for d in self.torsion)
        return f"GroupPresentation(Z^{self.free_rank}{'+' + t if t else ''})"


class GroupHom:
    """Matrix on generators with a well-definedness certificate."""

    __slots__ = ("domain", "codomain", "matrix", "well_defined")

    def __init__(self, domain, codomain, matrix):
        if matrix.rows != len(codomain.generators) or matrix.cols != len(domain.generators):
            raise ValueError("hom matrix shape mismatch")
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix
        self.well_defined = self._check_well_defined()

    def _check_well_defined(self):
        rel_cols = self.codomain.relation_lattice_matrix()
        rel_snf = smith_normal_form(rel_cols, want_transforms=True)
        rows = self.domain.relations
        for i in range(rows.rows):
            rel = [0] * rows.cols
            for (ri, j), v in rows.entries.items():
                if ri == i:
                    rel[j] = v
            image = self.matrix.mul_vec(rel)
            if any(image):
                if solve_int(rel_cols, image, snf=rel_snf) is None:
                    return False
        return True

    def is_surjective(self):
        g = len(self.codomain.generators)
        stacked = IntMatrix(g, self.matrix.cols + self.codomain.relations.rows)
        for (i, j), v in self.matrix.entries.items():
            stacked.entries[(i, j)] = v
        for (r, j), v in self.codomain.relations.entries.items():
            stacked.entries[(j, self.matrix.cols + r)] = v
        snf = smith_normal_form(stacked)
        return snf.rank == g and all(d == 1 for d in snf.invariant_factors)

    def kernel_lattice(self):
        """Basis (columns) of {x : M x lies in the codomain relations}."""
        gc = len(self.codomain.generators)
        gd = len(self.domain.generators)
        rel = self.codomain.relations
        block = IntMatrix(gc, gd + rel.rows)
        for (i, j), v in self.matrix.entries.items():
            block.entries[(i, j)] = v
        for (r, j), v in rel.entries.items():
            block.entries[(j, gd + r)] = -v
        cols = kernel_basis(block)
        return [col[:gd] for col in cols]

    def is_injective(self):
        pre = self.kernel_lattice()
        dom_cols = []
        rel = self.domain.relations
        for i in range(rel.rows):
            col = [0] * rel.cols
            for (ri, j), v in rel.entries.items():
                if ri == i:
                    col[j] = v
            dom_cols.append(col)
        return lattices_equal(pre, dom_cols, len(self.domain.generators))

    def is_isomorphism(self):
        return self.well_defined and self.is_surjective() and self.is_injective()


# ---------------------------------------------------------------------------
# Orientation helpers


def _direction_basis(carrier):
    """Direction rows of a chart-meeting flat (E/H): basis rows with x0 = 0."""
    return [b[1:] for b in carrier.basis if b[0] == 0]


def flat_orientation_chart(carrier, chart_points):
    """Orientation of d+1 chart points spanning an affine flat (E/H)."""
    dirs = _direction_basis(carrier)
    d = len(dirs)
    if len(chart_points) != d + 1:
        raise ValueError("point count does not match flat dimension")
    if d == 0:
        return 1
    base = chart_points[0]
    cols = [exact.vec_sub(p, base) for p in chart_points[1:]]
    coord_rows = []
    for v in cols:
        sol = exact.solve_affine(list(zip(*dirs)), list(v))
        if sol is None:
            return 0
        coord_rows.append(sol[0])
    return exact.det_sign(coord_rows)


def flat_orientation_vectors(carrier, vectors):
    """Orientation of dim-many vectors relative to the carrier basis (S)."""
    d = carrier.dim
    if len(vectors) != d:
        raise ValueError("vector count does not match carrier dimension")
    coord_rows = []
    for v in vectors:
        sol = carrier.coordinates_of(v)
        if sol is None:
            return 0
        coord_rows.append(sol)
    return exact.det_sign(coord_rows)


def tuple_orientation(geometry, members):
    """Global orientation sign of an (n+1)-tuple of 0-dim subspaces."""
    if geometry.kind == geo.SPHERICAL:
        reps = [m.carrier.basis[0] for m in members]
        return exact.orientation_sign_vectors(reps)
    pts = [_chart_point_of(m) for m in members]
    return exact.orientation_sign(pts)


def _chart_point_of(member):
    """Chart coordinates of a 0-dimensional E/H member."""
    b = member.carrier.basis[0]
    if b[0] == 0:
        raise ValueError("0-dim member does not meet the chart")
    return tuple(x / b[0] for x in b[1:])


# ---------------------------------------------------------------------------
# Apartment cycles


class ApartmentCycle:
    """Integer chain, verified to be a cycle in its target complex."""

    __slots__ = ("complex", "degree", "vector", "source")

    def __init__(self, complex_, degree, vector, source):
        self.complex = complex_
        self.degree = degree
        self.vector = tuple(vector)
        self.source = source
        bd = complex_.boundary(degree)
        if any(bd.mul_vec(list(vector))):
            raise AssertionError(f"apartment chain of {source} is not a cycle")


def _st_flag_index(st_complex, degree):
    return st_complex.index(degree)


def apartment_cycle_tuple(members_tuple, coll, st_complex, member_order,
                          use_orientation=True):
    """Apartment cycle of an (n+1)-tuple of points in the relative ST model.

    Sum over permutations of sign(sigma) times the flag of prefix spans,
    multiplied by the tuple's global orientation sign (making the class
    match the polytope apartment of the spanned simplex).  With
    ``use_orientation`` false the plain alternating chain is built, which
    also accepts degenerate tuples (their classes are boundaries).
    """
    g = coll.geometry
    n = g.n
    if len(members_tuple) != n + 1:
        raise ValueError("need an (n+1)-tuple")
    if use_orientation:
        global_sign = tuple_orientation(g, members_tuple)
        if global_sign == 0:
            raise ValueError("degenerate tuple")
    else:
        global_sign = 1
    pos = {m: i for i, m in enumerate(member_order)}
    idx = st_complex.index(n)
    vec = [0] * st_complex.dim(n)
    for sigma in permutations(range(n + 1)):
        sgn = _perm_sign(sigma)
        flats = []
        ok = True
        for k in range(n):
            span = geo.span_points([members_tuple[sigma[i]] for i in range(k + 1)])
            if span.carrier.dim != k + 1:
                ok = False  # repeated span: flag not strict
                break
            flats.append(span)
        if not ok:
            continue
        label = tuple(pos[f] for f in flats)
        if label not in idx:
            raise ValueError("span flag leaves the collection")
        vec[idx[label]] += global_sign * sgn
    return ApartmentCycle(st_complex, n, vec, ("tuple", tuple(members_tuple)))


def _perm_sign(sigma):
    sgn = 1
    for i in range(len(sigma)):
        for j in range(i + 1, len(sigma)):
            if sigma[i] > sigma[j]:
                sgn = -sgn
    return sgn


def apartment_cycle_polytope(polytope, coll, st_complex, member_order, top=None):
    """Apartment cycle of a convex polytope via complete face-span flags."""
    g = coll.geometry
    if g.kind == geo.SPHERICAL:
        raise ValueError("use the PT-spherical apartment for spherical polytopes")
    n = top.carrier.dim - 1 if top is not None else g.n
    pos = {m.carrier: i for i, m in enumerate(member_order)}
    idx = st_complex.index(n)
    vec = [0] * st_complex.dim(n)
    top_carrier = (
        top.carrier if top is not None else geo.full_space(g.ambient_dim)
    )
    bary_p = polytope.face_barycenter(polytope.faces_of_dim(n)[0])
    for flag in _face_flags(polytope, n):
        pts = [polytope.face_barycenter(f) for f in flag] + [bary_p]
        sign = flat_orientation_chart(top_carrier, pts)
        if sign == 0:  # pragma: no cover - flags are affinely independent
            raise AssertionError("degenerate barycenter flag")
        label = tuple(pos[f.span] for f in flag)
        if label not in idx:
            raise ValueError("face span leaves the collection")
        vec[idx[label]] += sign
    return ApartmentCycle(st_complex, n, vec, ("polytope", polytope))


def _face_flags(polytope, n):
    """Complete flags F_0 < ... < F_{n-1} of proper faces, dims 0..n-1."""
    levels = [polytope.faces_of_dim(d) for d in range(n)]
    flags = [()]
    for d in range(n):
        flags = [
            fl + (f,)
            for fl in flags
            for f in levels[d]
            if not fl or fl[-1].vertex_ids < f.vertex_ids
        ]
    return flags


# ---------------------------------------------------------------------------
# Spherical PT apartments (bicomplex cycles with face-flag corrections)


class _SphericalFaceChains:
    """Fundamental chains of the faces of a strongly convex polytope,
    in the ambient sphere triangulation, with incidence signs."""

    def __init__(self, polytope, tri):
        self.polytope = polytope
        self.tri = tri
        self.chains = {}  # face key -> dict simplex-label -> +-1
        self.eta = {}  # (face key, facet key) -> +-1
        n = polytope.geometry.n
        self._faces_by_dim = {d: polytope.faces_of_dim(d) for d in range(n + 1)}
        for d in range(n + 1):
            for f in self._faces_by_dim[d]:
                self.chains[self._key(f)] = self._fundamental_chain(f, d)
        for d in range(1, n + 1):
            for f in self._faces_by_dim[d]:
                self._extract_incidences(f, d)

    @staticmethod
    def _key(face):
        return face.vertex_ids

    def _face_simplices(self, face, d):
        out = []
        for lab in self.tri.simplices.get(d, ()):
            top = self.tri.top_cell(lab)
            if top.dim != d:
                continue
            if not face.span.contains(top.flat):
                continue
            w = self.tri.poset.cells[self.tri.cell_order[lab[-1]]].witness
            if all(dot(h.functional, w) >= 0 for h in self.polytope.halfspaces):
                out.append(lab)
        return out

    def _fundamental_chain(self, face, d):
        chain = {}
        for lab in self._face_simplices(face, d):
            vecs = [
                self.tri.poset.cells[self.tri.cell_order[c]].witness for c in lab
            ]
            sign = flat_orientation_vectors(face.span, vecs)
            if sign == 0:  # pragma: no cover - witnesses are independent
                raise AssertionError("degenerate flag simplex")
            chain[lab] = sign
        if not chain:
            raise AssertionError("face carries no simplices")
        return chain

    def _extract_incidences(self, face, d):
        cpx = self.tri.complex
        bd = cpx.boundary(d)
        idx = cpx.index(d)
        low = cpx.degrees.get(d - 1, ())
        vec = [0] * cpx.dim(d)
        for lab, s in self.chains[self._key(face)].items():
            vec[idx[lab]] = s
        img = bd.mul_vec(vec)
        remaining = {low[i]: v for i, v in enumerate(img) if v}
        for facet in self._faces_by_dim[d - 1]:
            if not facet.vertex_ids < face.vertex_ids:
                continue
            fchain = self.chains[self._key(facet)]
            signs = set()
            for lab, s in fchain.items():
                if lab not in remaining:
                    signs.add(0)
                else:
                    got = remaining[lab]
                    if got % s:
                        signs.add(0)
                    signs.add(got // s)
            if len(signs) != 1 or 0 in signs:
                raise AssertionError("facet chain is not a signed copy")
            eta = signs.pop()
            if eta not in (1, -1):
                raise AssertionError("incidence sign not a unit")
            self.eta[(self._key(face), self._key(facet))] = eta
            for lab in fchain:
                remaining.pop(lab, None)
        if remaining:
            raise AssertionError("boundary leaks outside the facet chains")


def apartment_cycle_pt_spherical(polytope, coll, tri, bicomplex):
    """Relative apartment cycle of a strongly convex polytope in the
    polytopal-Tits total complex.

    Column 0 is the signed sum of flag simplices contained in the
    polytope; lower columns add face-flag correction terms so that the
    total boundary vanishes exactly.
    """
    g = coll.geometry
    n = g.n
    if g.kind != geo.SPHERICAL:
        raise ValueError("spherical geometry required")
    if polytope.weakly_convex or not geo.is_strongly_convex(polytope):
        raise ValueError("polytope must be strongly convex")
    fc = _SphericalFaceChains(polytope, tri)
    member_pos = {}
    proper = sorted((m for m in coll.members if not m.is_top()),
                    key=lambda m: m.sort_key())
    for i, m in enumerate(proper):
        member_pos[m.carrier] = i
    idx = bicomplex.index(n)
    vec = [0] * bicomplex.dim(n)
    top_face = polytope.faces_of_dim(n)[0]

    def emit(flag_faces, base_face, outer_sign):
        flag_label = tuple(member_pos[f.span] for f in flag_faces)
        for lab, s in fc.chains[fc._key(base_face)].items():
            key = (flag_label, lab)
            if key not in idx:
                raise ValueError("face span leaves the collection")
            vec[idx[key]] += outer_sign * s

    emit((), top_face, 1)
    flags = [(top_face,)]
    for k in range(1, n + 1):
        new_flags = []
        for fl in flags:
            bottom = fl[0]
            for f in polytope.faces_of_dim(bottom.dim - 1):
                if f.vertex_ids < bottom.vertex_ids:
                    new_flags.append((f,) + fl)
        flags = new_flags
        s_k = -1 if (k * (k + 1) // 2) % 2 else 1
        for fl in flags:
            eta_prod = 1
            for i in range(k):
                eta_prod *= fc.eta[(fc._key(fl[i + 1]), fc._key(fl[i]))]
            emit(fl[:-1], fl[0], s_k * eta_prod)
    return ApartmentCycle(bicomplex, n, vec, ("polytope", polytope))


# ---------------------------------------------------------------------------
# ST models and apartment matrices


class STModel:
    """Relative ST complex together with its proper-member order."""

    __slots__ = ("top", "proper", "complex")

    def __init__(self, members, top, meta=""):
        self.top = top
        self.proper = tuple(
            sorted((m for m in members if m != top), key=lambda m: m.sort_key())
        )
        self.complex = cx.relative_st_complex(members, top, meta=meta)


def apartment_cycle_cell(poset, region_sign, st_model, top_carrier=None):
    """Apartment cycle of a closed region via flags of its boundary cells.

    Faces of the region are the arrangement cells below it in closure
    order; their flats are exactly the face spans.
    """
    g = poset.geometry
    if g.kind == geo.SPHERICAL:
        raise ValueError("cell apartments are for the E/H suspended model")
    region = poset.cells[region_sign]
    d = region.dim
    if top_carrier is None:
        top_carrier = geo.full_space(g.ambient_dim)
    pos = {m.carrier: i for i, m in enumerate(st_model.proper)}
    idx = st_model.complex.index(d)
    vec = [0] * st_model.complex.dim(d)
    below = [
        c
        for s, c in sorted(poset.cells.items())
        if arr.FacePoset.leq(s, region_sign) and s != region_sign
    ]
    by_dim = {}
    for c in below:
        by_dim.setdefault(c.dim, []).append(c)
    flags = [()]
    for k in range(d):
        flags = [
            fl + (c,)
            for fl in flags
            for c in by_dim.get(k, [])
            if not fl or arr.FacePoset.leq(fl[-1].sign_vector, c.sign_vector)
        ]
    if not flags:
        raise ValueError("region has no complete boundary flags (unbounded?)")
    for fl in flags:
        pts = [c.witness for c in fl] + [region.witness]
        sign = flat_orientation_chart(top_carrier, pts)
        if sign == 0:  # pragma: no cover
            raise AssertionError("degenerate witness flag")
        label = tuple(pos[c.flat] for c in fl)
        if label not in idx:
            raise ValueError("face span leaves the collection")
        vec[idx[label]] += sign
    return ApartmentCycle(st_model.complex, d, vec, ("region", region_sign))


class ApartmentMatrixResult:
    __slots__ = ("matrix", "classes", "generators", "betti", "torsion", "iso")

    def __init__(self, matrix, classes, generators, betti, torsion, iso):
        self.matrix = matrix
        self.classes = classes
        self.generators = generators
        self.betti = betti
        self.torsion = torsion
        self.iso = iso


def _matrix_from_cycles(target_complex, degree, cycles, generators):
    classes = cx.HomologyClasses(target_complex, degree)
    cols = []
    clean = True
    for cyc in cycles:
        free, tors = classes.coords(cyc.vector)
        if any(tors):
            clean = False  # class not in the free part: no isomorphism
        cols.append(list(free))
    matrix = IntMatrix.from_columns(classes.betti, cols)
    iso = (
        clean
        and not classes.torsion
        and matrix.rows == matrix.cols
        and _unimodular(matrix)
    )
    return ApartmentMatrixResult(
        matrix, classes, tuple(generators), classes.betti, classes.torsion, iso
    )


def _unimodular(matrix):
    if matrix.rows != matrix.cols:
        return False
    snf = smith_normal_form(matrix)
    return snf.rank == matrix.rows and all(d == 1 for d in snf.invariant_factors)


def pt_group(basis):
    """Free presentation of the polytope group on a region basis."""
    return GroupPresentation([arr.sign_key(s) for s in basis])


def ls_group(coll):
    """Lee-Szczarba presentation: nondegenerate increasing (n+1)-tuples
    modulo boundaries of nondegenerate (n+2)-tuples."""
    if not coll_mod.generated_by_points(coll):
        raise ValueError("NOT_GENERATED_BY_POINTS")
    g = coll.geometry
    n = g.n
    complex_, pts = cx.tpl_complex(list(coll.points()), g)
    gens = complex_.degrees.get(n, ())
    bd = complex_.boundary(n + 1)
    relations = bd.transpose()  # one relation per (n+2)-tuple
    pres = GroupPresentation(gens, relations)
    return pres, pts, complex_


def apartment_matrix(coll, flavor, poset=None, basis=None, st_model=None,
                     ls_data=None, tri=None, bicomplex=None, window=None):
    """Matrix of apartment classes in an SNF basis of H_n; iso flag included.

    Flavors: "ST-points", "ST-polytopes", "local", "PT-spherical".
    """
    g = coll.geometry
    n = g.n
    if flavor == "ST-points":
        if ls_data is None:
            ls_data = ls_group(coll)
        pres, pts, _ = ls_data
        if st_model is None:
            st_model = STModel(coll.members, coll.top())
        cycles = []
        for gen in pres.generators:
            members_tuple = tuple(pts[i] for i in gen)
            cyc = apartment_cycle_tuple(
                members_tuple, coll, st_model.complex, st_model.proper
            )
            # The Ls -> H map uses the plain alternating apartment (its
            # simplicial relations hold in that normalization); strip the
            # polytope-compatible global orientation factor.
            ori = tuple_orientation(g, members_tuple)
            cycles.append(
                ApartmentCycle(
                    st_model.complex, n, [ori * x for x in cyc.vector], cyc.source
                )
            )
        result = _matrix_from_cycles(st_model.complex, n, cycles, pres.generators)
        hom = GroupHom(pres, GroupPresentation(range(result.betti)), result.matrix)
        if not hom.well_defined:
            raise AssertionError("apartment map does not respect the simplicial relations")
        result.iso = not result.torsion and hom.is_isomorphism()
        return result
    if flavor in ("ST-polytopes", "local"):
        if poset is None or basis is None or st_model is None:
            raise ValueError("need poset, basis and st_model")
        cycles = [
            apartment_cycle_cell(poset, s, st_model) for s in basis
        ]
        return _matrix_from_cycles(st_model.complex, n, cycles, basis)
    if flavor == "PT-spherical":
        if poset is None or basis is None or tri is None or bicomplex is None:
            raise ValueError("need poset, basis, tri and bicomplex")
        cycles = []
        for s in basis:
            p = arr.region_polytope(poset, s)
            cycles.append(apartment_cycle_pt_spherical(p, coll, tri, bicomplex))
        return _matrix_from_cycles(bicomplex, n, cycles, basis)
    raise ValueError(f"unknown flavor {flavor!r}")


# ---------------------------------------------------------------------------
# Placing triangulation and the canonical map Pt -> Ls


def placing_triangulation(points):
    """Incremental placing triangulation of affine points (any ambient dim).

    Vertices are placed in lexicographic order; a new vertex cones over
    the whole triangulation when it leaves the affine span, else over
    the visible boundary facets.  Returns index tuples into the sorted
    point list, each of top dimension.
    """
    pts = sorted(tuple(map(frac, p)) for p in points)
    if len(set(pts)) != len(pts):
        raise ValueError("repeated vertices")
    simplices = [(0,)]
    span_pts = [0]
    for i in range(1, len(pts)):
        diffs = [exact.vec_sub(pts[j], pts[span_pts[0]]) for j in span_pts[1:]]
        new_diff = exact.vec_sub(pts[i], pts[span_pts[0]])
        in_span = exact.rank(diffs + [new_diff]) == exact.rank(diffs) if diffs else all(
            x == 0 for x in new_diff
        )
        if not in_span:
            simplices = [s + (i,) for s in simplices]
            span_pts.append(i)
            continue
        dim = len(span_pts) - 1
        counts = {}
        owner = {}
        for s in simplices:
            for drop in range(len(s)):
                f = s[:drop] + s[drop + 1 :]
                counts[f] = counts.get(f, 0) + 1
                owner[f] = s
        visible = []
        for f, cnt in counts.items():
            if cnt != 1:
                continue
            s = owner[f]
            w = next(v for v in s if v not in f)
            func = _facet_functional([pts[v] for v in f], pts[w])
            val = dot(func[:-1], pts[i]) + func[-1]
            if val < 0:
                visible.append(f)
        simplices = simplices + [f + (i,) for f in sorted(visible)]
    top = max(len(s) for s in simplices)
    return pts, sorted(s for s in simplices if len(s) == top)


def _facet_functional(facet_pts, inside_pt):
    """Affine functional vanishing on the facet, = 1 at the inside point."""
    m = len(inside_pt)
    rows = [tuple(p) + (F1,) for p in facet_pts] + [tuple(inside_pt) + (F1,)]
    rhs = [F0] * len(facet_pts) + [F1]
    sol = exact.solve_affine(rows, rhs)
    if sol is None:  # pragma: no cover - facet plus witness are independent
        raise AssertionError("degenerate facet functional")
    return sol[0]


def _spherical_projection_coords(rays):
    """Affine coordinates of cone rays on a cutting hyperplane {c.x = 1}."""
    nv = len(rays[0])
    rows = [tuple(map(frac, r)) + (Fraction(-1),) for r in rays]
    c = exact.feasible((), rows, (), nv)
    if c is None:
        raise ValueError("rays do not span a pointed cone")
    out = []
    for r in rays:
        t = dot(c, r)
        if not t > 0:  # pragma: no cover - guaranteed by feasibility
            raise AssertionError("cutting functional not positive on a ray")
        out.append(tuple(frac(x) / t for x in r))
    return out


def pt_to_ls_element(piece, coll, ls_data):
    """Image of a convex L-polytope under the canonical map to Ls.

    The polytope is placing-triangulated; each simplex contributes its
    increasing vertex tuple signed by chart orientation.
    """
    g = coll.geometry
    n = g.n
    pres, pts, _ = ls_data
    pair_index = {p.carrier: i for i, p in enumerate(pts)}
    gen_index = {gen: i for i, gen in enumerate(pres.generators)}
    out = [0] * len(pres.generators)
    if g.kind == geo.SPHERICAL:
        rays = [tuple(map(frac, v)) for v in piece.vertices]
        coords = _spherical_projection_coords(rays)
        coord_of = dict(zip(coords, rays))
        placed, simplices = placing_triangulation(coords)
        for s in simplices:
            actual = [coord_of[placed[i]] for i in s]
            members = [
                geo.GeoSubspace(g, geo.subspace_from_vectors(g.ambient_dim, [v]))
                for v in actual
            ]
            order = sorted(range(len(members)), key=lambda k: pair_index[members[k].carrier])
            tup = tuple(pair_index[members[k].carrier] for k in order)
            if len(set(tup)) != len(tup):
                raise AssertionError("repeated pair in simplex")
            sign = exact.orientation_sign_vectors([actual[k] for k in order])
            out[gen_index[tup]] += sign
    else:
        verts = [tuple(map(frac, v)) for v in piece.vertices]
        placed, simplices = placing_triangulation(verts)
        for s in simplices:
            members = [geo.point_subspace(g, placed[i]) for i in s]
            order = sorted(range(len(members)), key=lambda k: pair_index[members[k].carrier])
            tup = tuple(pair_index[members[k].carrier] for k in order)
            sign = exact.orientation_sign([placed[s[k]] for k in order])
            out[gen_index[tup]] += sign
    return tuple(out)


def pt_to_ls_hom(coll, poset, basis, ls_data=None):
    """The canonical map Pt -> Ls as a GroupHom on the region basis."""
    if not coll_mod.generated_by_both(coll):
        raise ValueError("collection must be generated by both points and hyperplanes")
    if ls_data is None:
        ls_data = ls_group(coll)
    pres = ls_data[0]
    cols = []
    for s in basis:
        piece = arr.region_polytope(poset, s)
        cols.append(list(pt_to_ls_element(piece, coll, ls_data)))
    matrix = IntMatrix.from_columns(len(pres.generators), cols)
    return GroupHom(pt_group(basis), pres, matrix), ls_data


def join_sublattice(coll, poset, basis, ls_data):
    """Generators of J: indicator vectors of joins {x,-x} * P.

    P runs over (n-1)-simplices with vertices in the point pairs, over
    all sign choices of representatives.
    """
    g = coll.geometry
    n = g.n
    pts = list(coll.points())
    reps = [p.carrier.basis[0] for p in pts]
    vectors = []
    seen = set()
    for xi in range(len(pts)):
        others = [k for k in range(len(pts)) if k != xi]
        for combo in combinations(others, n):
            base = [reps[k] for k in combo]
            if exact.rank([reps[xi]] + base) != n + 1:
                continue
            for signs in _sign_patterns(n):
                simplex_rays = [reps[xi]] + [
                    tuple(s * frac(x) for x in base[j]) for j, s in enumerate(signs)
                ]
                join_vec = _join_indicator(simplex_rays, poset, basis, g)
                if join_vec is not None and any(join_vec) and join_vec not in seen:
                    seen.add(join_vec)
                    vectors.append(list(join_vec))
    return vectors


def _sign_patterns(n):
    out = [()]
    for _ in range(n):
        out = [p + (s,) for p in out for s in (1, -1)]
    return out


def _join_indicator(simplex_rays, poset, basis, g):
    """Indicator of {x,-x} * simplex(base rays): the two opposite cones."""
    x = simplex_rays[0]
    base = simplex_rays[1:]
    total = [0] * len(basis)
    for x_sign in (1, -1):
        rays = [tuple(x_sign * frac(v) for v in x)] + list(base)
        hs = _cone_halfspaces(rays, g)
        if hs is None:
            return None
        piece = geo.polytope_from_halfspaces(g, hs)
        if isinstance(piece, geo.Invalid):
            return None
        vec = arr.polytope_to_vector(piece, basis, poset)
        if vec == arr.NOT_L_POLYTOPE:
            return None
        total = [a + b for a, b in zip(total, vec)]
    return tuple(total)


def _cone_halfspaces(rays, g):
    """Half-space description of the simplicial cone spanned by the rays."""
    amb = g.ambient_dim
    if exact.rank(rays) != amb:
        return None
    hs = []
    for drop in range(len(rays)):
        rest = [rays[k] for k in range(len(rays)) if k != drop]
        ker = exact.nullspace(rest, amb)
        if len(ker) != 1:
            return None
        f = ker[0]
        val = dot(f, rays[drop])
        if val < 0:
            f = tuple(-x for x in f)
        hs.append(geo.HalfSpace(f))
    return hs


# ---------------------------------------------------------------------------
# Theorem checkers


def verify_pt_ls(coll, poset=None, basis=None):
    """Certify the canonical map Pt -> Ls (iso for E/H; for S surjective
    with kernel equal to the join sublattice)."""
    if not coll_mod.generated_by_both(coll):
        raise ValueError("collection must be generated by both points and hyperplanes")
    g = coll.geometry
    if poset is None:
        poset = arr.build_arrangement(coll)
    if basis is None:
        basis = arr.region_basis(poset)
    hom, ls_data = pt_to_ls_hom(coll, poset, basis, None)
    report = {
        "claim": "canonical map Pt -> Ls",
        "geometry": f"{g.kind}^{g.n}",
        "pt_rank": len(basis),
        "ls_invariants": list(ls_data[0].invariants()[0:1]) + [list(ls_data[0].torsion)],
        "well_defined": hom.well_defined,
    }
    if g.kind in (geo.EUCLIDEAN, geo.HYPERBOLIC):
        iso = hom.is_isomorphism()
        report["isomorphism"] = iso
        report["verdict"] = "PASS" if iso and hom.well_defined else "FAIL"
        return report
    surj = hom.is_surjective()
    kernel = hom.kernel_lattice()
    joins = join_sublattice(coll, poset, basis, ls_data)
    kernel_eq = lattices_equal(kernel, joins, len(basis))
    kernel_rank = smith_normal_form(IntMatrix.from_columns(len(basis), kernel)).rank
    report.update(
        {
            "surjective": surj,
            "kernel_rank": kernel_rank,
            "join_generators": len(joins),
            "kernel_equals_join_lattice": kernel_eq,
            "verdict": "PASS" if surj and kernel_eq and hom.well_defined else "FAIL",
        }
    )
    return report


def _u_basis(cup_poset, u_index, window=None):
    """Basis of the (L cap U)-polytope group: (n-1)-cells on U."""
    g = cup_poset.geometry
    out = []
    for s, c in sorted(cup_poset.cells.items()):
        if c.dim != g.n - 1 or s[u_index] != 0:
            continue
        if g.kind != geo.SPHERICAL and window is None:
            if not arr.region_is_bounded(cup_poset, c):
                continue
        out.append(s)
    return tuple(out)


def exact_sequence_check(coll, u_covector, window=None, deep=True):
    """Verify 0 -> Pt(L) -> Pt(L cup U) -> Pt(L cap U on U) -> 0 at matrix
    level, plus rank additivity and the homology counterpart."""
    g = coll.geometry
    u = geo.canonical_covector(u_covector)
    if u in coll.hyperplane_covectors:
        raise ValueError("U already belongs to the collection (sequence fails)")
    if g.kind == geo.EUCLIDEAN and window is None:
        if coll_mod.admissible(coll) != coll_mod.ADMISSIBLE:
            return {"claim": "polytope-group exact sequence", "verdict": "HYPOTHESES_NOT_MET",
                    "reason": "Euclidean collection not admissible"}
    if g.kind == geo.HYPERBOLIC and window is None:
        return {"claim": "polytope-group exact sequence", "verdict": "HYPOTHESES_NOT_MET",
                "reason": "hyperbolic global form needs a window polytope A"}
    if geo.hyperplane_subspace(g, u) is None:
        raise ValueError("U does not meet the geometry")

    var = coll_mod.variants(coll, u)
    cup = var.cup
    poset = arr.build_arrangement(coll, within=window)
    cup_poset = arr.build_arrangement(cup, within=window)
    basis = arr.region_basis(poset)
    cup_basis = arr.region_basis(cup_poset)
    cup_covs = tuple(sorted(cup.hyperplane_covectors))
    u_index = cup_covs.index(u)
    base_positions = [cup_covs.index(c) for c in sorted(coll.hyperplane_covectors)]
    u_cells = _u_basis(cup_poset, u_index, window)

    # inclusion: a cup-region lies in the L-region with the restricted signs
    basis_index = {s: i for i, s in enumerate(basis)}
    inc_entries = {}
    for j, s in enumerate(cup_basis):
        restricted = tuple(s[p] for p in base_positions)
        i = basis_index.get(restricted)
        if i is not None:
            inc_entries[(j, i)] = 1
    inc = IntMatrix(len(cup_basis), len(basis), inc_entries)

    # facet map: flip the U-sign of a cup-region to zero
    u_cell_index = {s: i for i, s in enumerate(u_cells)}
    fac_entries = {}
    for j, s in enumerate(cup_basis):
        tau = tuple(0 if k == u_index else x for k, x in enumerate(s))
        i = u_cell_index.get(tau)
        if i is not None:
            fac_entries[(i, j)] = s[u_index]
    fac = IntMatrix(len(u_cells), len(cup_basis), fac_entries)

    inc_snf = smith_normal_form(inc)
    fac_snf = smith_normal_form(fac)
    injective = inc_snf.rank == len(basis) and all(d == 1 for d in inc_snf.invariant_factors)
    surjective = fac_snf.rank == len(u_cells) and all(d == 1 for d in fac_snf.invariant_factors)
    composite_zero = fac.compose(inc).is_zero()
    kernel_cols = kernel_basis(fac)
    image_cols = [inc.column(j) for j in range(inc.cols)]
    kernel_eq = lattices_equal(kernel_cols, image_cols, len(cup_basis))
    rank_additive = len(cup_basis) == len(basis) + len(u_cells)

    report = {
        "claim": "polytope-group exact sequence",
        "u": [str(x) for x in u],
        "ranks": {
            "pt_L": len(basis),
            "pt_L_cup_U": len(cup_basis),
            "pt_L_cap_U": len(u_cells),
        },
        "injective": injective,
        "facet_surjective": surjective,
        "composite_zero": composite_zero,
        "kernel_equals_image": kernel_eq,
        "rank_additive": rank_additive,
    }

    if deep and g.kind != geo.SPHERICAL:
        report["homology"] = _st_rank_additivity(coll, cup, var, window, u)
    if deep and g.kind != geo.SPHERICAL and u_cells:
        report["dashed_map_agrees"] = _dashed_map_check(
            coll, cup, var, cup_poset, u_index, u_cells, window
        )
    ok = injective and surjective and composite_zero and kernel_eq and rank_additive
    if "homology" in report:
        ok = ok and report["homology"]["additive"]
    if "dashed_map_agrees" in report:
        ok = ok and report["dashed_map_agrees"]
    report["verdict"] = "PASS" if ok else "FAIL"
    return report


def _members_within(members, window, g):
    if window is None:
        return list(members)
    return list(coll_mod.restrict(coll_mod.Collection(g, members, "raw"), window))


def _st_rank_additivity(coll, cup, var, window, u):
    """H_n(ST cup) rank = H_n(ST) + H_{n-1}(ST cap U) rank."""
    g = coll.geometry
    u_member = var.u_member
    if window is None:
        mem_l = list(coll.members)
        mem_cup = list(cup.members)
        cap_members = list(var.cap)
    else:
        mem_l = _members_within(coll.members, window, g)
        mem_cup = _members_within(cup.members, window, g)
        cap_set = set(var.cap)
        cap_members = [m for m in mem_cup if m in cap_set]
        if u_member not in cap_members:
            cap_members.append(u_member)
    h_l = cx.homology(cx.relative_st_complex(mem_l, coll.top()))
    h_cup = cx.homology(cx.relative_st_complex(mem_cup, coll.top()))
    h_cap = cx.homology(cx.relative_st_complex(cap_members, u_member))
    n = g.n
    additive = h_cup.betti(n) == h_l.betti(n) + h_cap.betti(n - 1)
    return {
        "st_L": h_l.betti(n),
        "st_cup": h_cup.betti(n),
        "st_cap": h_cap.betti(n - 1),
        "additive": additive,
    }


def _dashed_map_check(coll, cup, var, cup_poset, u_index, u_cells, window):
    """Boundary of a cofacet lift vs the apartment of the facet, as
    homology classes in the U-geometry (one global sign for all cells)."""
    g = coll.geometry
    n = g.n
    u_member = var.u_member
    if window is None:
        mem_cup = list(cup.members)
        cap_members = list(var.cap)
    else:
        mem_cup = _members_within(cup.members, window, g)
        cap_set = set(var.cap)
        cap_members = [m for m in mem_cup if m in cap_set]
        if u_member not in cap_members:
            cap_members.append(u_member)
    cup_st = STModel(mem_cup, coll.top())
    cap_st = STModel(cap_members, u_member)
    classes = cx.HomologyClasses(cap_st.complex, n - 1)
    cap_index = cap_st.complex.index(n - 1)
    proper_pos = {m: i for i, m in enumerate(cup_st.proper)}
    cap_pos = {m: i for i, m in enumerate(cap_st.proper)}

    epsilon = None
    for tau in u_cells:
        lift = arr.cofacet_lift(cup_poset, tau, side=1,
                                bounded_required=window is None)
        if lift == arr.NO_LIFT:
            return False
        q_sign, actual_side = lift
        apt_q = apartment_cycle_cell(cup_poset, q_sign, cup_st)
        # anchor-dropping boundary, projected to flags ending at U
        proj = [0] * cap_st.complex.dim(n - 1)
        labels = cup_st.complex.degrees.get(n, ())
        for pos_i, coeff in enumerate(apt_q.vector):
            if not coeff:
                continue
            label = labels[pos_i]
            members = [cup_st.proper[i] for i in label]
            if members[-1] != u_member:
                continue
            cap_label = tuple(cap_pos[m] for m in members[:-1])
            proj[cap_index[cap_label]] += coeff
        free_b, tors_b = classes.coords(proj)
        apt_tau = apartment_cycle_cell(cup_poset, tau, cap_st, top_carrier=u_member.carrier)
        free_t, tors_t = classes.coords(apt_tau.vector)
        if any(tors_b) or any(tors_t):
            return False
        lhs = tuple(actual_side * x for x in free_b)
        for eps in (1, -1) if epsilon is None else (epsilon,):
            if lhs == tuple(eps * x for x in free_t):
                epsilon = eps
                break
        else:
            return False
    return True


def duality_check(coll):
    """Order-reversing duality and the Lee-Szczarba description of
    H_n(ST) for admissible spherical collections."""
    g = coll.geometry
    if g.kind != geo.SPHERICAL:
        raise ValueError("duality is spherical")
    if coll_mod.admissible(coll) != coll_mod.ADMISSIBLE:
        return {"claim": "spherical duality", "verdict": "HYPOTHESES_NOT_MET",
                "reason": "collection not admissible"}
    dual = coll_mod.dualize(coll)
    # elementwise order-reversing bijection on proper members
    proper = [m for m in coll.members if not m.is_top()]
    dual_proper = [m for m in dual.members if not m.is_top()]
    images = {}
    for m in proper:
        c = m.carrier.orthogonal_complement()
        images[m] = geo.GeoSubspace(g, c)
    bijection = sorted(x.sort_key() for x in images.values()) == sorted(
        x.sort_key() for x in dual_proper
    ) and len(images) == len(dual_proper)
    reversing = all(
        (a.contains(b)) == (images[b].contains(images[a]))
        for a in proper
        for b in proper
    )
    if not coll_mod.generated_by_points(dual):
        return {"claim": "spherical duality", "verdict": "FAIL",
                "reason": "dual collection not generated by points"}
    st_l = cx.homology(cx.relative_st_complex(list(coll.members), coll.top()))
    st_d = cx.homology(cx.relative_st_complex(list(dual.members), dual.top()))
    n = g.n
    ranks_match = st_l.betti(n) == st_d.betti(n) and not st_l.torsion(n)
    apt = apartment_matrix(dual, "ST-points")
    ls_rank = ls_group(dual)[0].free_rank
    ok = bijection and reversing and ranks_match and apt.iso
    return {
        "claim": "spherical duality",
        "bijection": bijection,
        "order_reversing": reversing,
        "st_rank": st_l.betti(n),
        "dual_st_rank": st_d.betti(n),
        "ls_dual_rank": ls_rank,
        "apartment_iso": apt.iso,
        "verdict": "PASS" if ok else "FAIL",
    }


def suspension_check(coll):
    """Non-admissible spherical reduction: Pt via region bijection and the
    homology degree shift by dim(U)."""
    g = coll.geometry
    if g.kind != geo.SPHERICAL:
        raise ValueError("suspension reduction is spherical")
    if coll_mod.admissible(coll) == coll_mod.ADMISSIBLE:
        return {"claim": "suspension reduction", "verdict": NOT_APPLICABLE,
                "reason": "collection is admissible"}
    if not coll.hyperplane_covectors:
        raise ValueError("collection has no hyperplanes (out of scope)")
    u_carrier = coll_mod.hyperplane_intersection_carrier(coll)
    u_dim = u_carrier.dim
    perp = u_carrier.orthogonal_complement()
    m = perp.dim - 1
    small_g = geo.Geometry(geo.SPHERICAL, m)
    basis_rows = perp.basis
    reduced = []
    flips = {}
    for cov in sorted(coll.hyperplane_covectors):
        raw = tuple(dot(cov, b) for b in basis_rows)
        canon = geo.canonical_covector(raw)
        flip = 1
        raw_prim = exact.primitive_int_row(raw)
        if raw_prim != canon:
            flip = -1
        reduced.append(canon)
        flips[cov] = (canon, flip)
    small = coll_mod.closure_by_hyperplanes(small_g, reduced)
    if coll_mod.admissible(small) != coll_mod.ADMISSIBLE:
        raise AssertionError("reduced collection must be admissible")
    big_poset = arr.build_arrangement(coll)
    small_poset = arr.build_arrangement(small)
    big_regions = arr.region_basis(big_poset)
    small_regions = arr.region_basis(small_poset)
    # transport sign vectors through the covector correspondence
    big_covs = tuple(sorted(coll.hyperplane_covectors))
    small_covs = tuple(sorted(small.hyperplane_covectors))
    transported = set()
    for s in small_regions:
        sig = {}
        for cov in big_covs:
            canon, flip = flips[cov]
            sig[cov] = flip * s[small_covs.index(canon)]
        transported.add(tuple(sig[cov] for cov in big_covs))
    bijection = transported == set(big_regions)
    tri = cx.sphere_triangulation(small, small_poset)
    bic = cx.pt_bicomplex(small, tri)
    h_small = cx.homology(bic)
    predicted_degree = m + u_dim
    ok = (
        bijection
        and predicted_degree == g.n
        and h_small.betti(m) == len(big_regions)
        and not h_small.torsion(m)
        and h_small.nonzero_degrees() in ([m], [])
    )
    return {
        "claim": "suspension reduction",
        "u_dim": u_dim,
        "reduced_sphere_dim": m,
        "region_bijection": bijection,
        "pt_rank": len(big_regions),
        "reduced_pt_rank": len(small_regions),
        "reduced_homology_rank": h_small.betti(m),
        "predicted_degree": predicted_degree,
        "verdict": "PASS" if ok else "FAIL",
    }
