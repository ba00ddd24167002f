import pytest

from geotits import arrangement as arr
from geotits import collection as coll_mod
from geotits import complexes as cx
from geotits import geometry as geo
from geotits import groups as grp
from geotits._kernel import IntMatrix, solve_int
from conftest import E1, E2, H2, S2, TRIANGLE_COVS


def test_group_presentation_invariants():
    pres = grp.GroupPresentation(["a", "b"], IntMatrix(1, 2, {(0, 0): 2, (0, 1): 0}))
    assert pres.free_rank == 1 and pres.torsion == (2,)
    free = grp.GroupPresentation(["a", "b", "c"])
    assert free.free_rank == 3 and not free.torsion


def test_group_hom_certificates():
    # Z/2 -> Z/4 by x -> 2x: well-defined, injective, not surjective
    dom = grp.GroupPresentation(["x"], IntMatrix(1, 1, {(0, 0): 2}))
    cod = grp.GroupPresentation(["y"], IntMatrix(1, 1, {(0, 0): 4}))
    hom = grp.GroupHom(dom, cod, IntMatrix(1, 1, {(0, 0): 2}))
    assert hom.well_defined and hom.is_injective() and not hom.is_surjective()
    # x -> y is NOT well-defined from Z/2 to Z/4
    bad = grp.GroupHom(dom, cod, IntMatrix(1, 1, {(0, 0): 1}))
    assert not bad.well_defined
    # identity Z/4 -> Z/4 is an isomorphism
    iso = grp.GroupHom(cod, cod, IntMatrix(1, 1, {(0, 0): 1}))
    assert iso.is_isomorphism()


def test_pt_group_values(triangle, concurrent_e2, coord_s2):
    for coll, want in ((triangle, 1), (concurrent_e2, 0), (coord_s2, 8)):
        poset = arr.build_arrangement(coll)
        basis = arr.region_basis(poset)
        assert grp.pt_group(basis).free_rank == want


def test_ls_group_values():
    l = coll_mod.closure_by_hyperplanes(E1, [(0, 1), (-1, 1), (-3, 1)])
    cl, _ = coll_mod.closure_by_points(E1, list(l.points()))
    pres, _, _ = grp.ls_group(cl)
    assert pres.free_rank == 2 and not pres.torsion
    cl2, _ = coll_mod.closure_by_points(
        E2, [geo.point_subspace(E2, p) for p in ((0, 0), (1, 0), (0, 1))]
    )
    pres2, _, _ = grp.ls_group(cl2)
    assert pres2.free_rank == 1
    cl4, _ = coll_mod.closure_by_points(
        E2, [geo.point_subspace(E2, p) for p in ((0, 0), (1, 0), (0, 1), (2, 3))]
    )
    pres4, _, _ = grp.ls_group(cl4)
    assert pres4.free_rank == 3


def test_ls_group_needs_points():
    par = coll_mod.closure_by_hyperplanes(E2, [(0, 0, 1), (-1, 0, 1)])
    with pytest.raises(ValueError):
        grp.ls_group(par)


def test_apartment_tuple_e1_class():
    """The interval apartment maps to the difference of its endpoints."""
    l = coll_mod.closure_by_hyperplanes(E1, [(0, 1), (-1, 1)])
    st = grp.STModel(l.members, l.top())
    pts = sorted(l.points(), key=lambda p: p.sort_key())
    cyc = grp.apartment_cycle_tuple(tuple(pts), l, st.complex, st.proper)
    classes = cx.HomologyClasses(st.complex, 1)
    free, tors = classes.coords(cyc.vector)
    assert classes.betti == 1 and abs(free[0]) == 1 and not any(tors)


def test_apartment_simplicial_relation():
    """Alternating sum of the face apartments of a 4-tuple is a boundary."""
    pts_coords = ((0, 0), (1, 0), (0, 1), (2, 3))
    cl, _ = coll_mod.closure_by_points(E2, [geo.point_subspace(E2, p) for p in pts_coords])
    st = grp.STModel(cl.members, cl.top())
    pts = sorted(cl.points(), key=lambda p: p.sort_key())
    classes = cx.HomologyClasses(st.complex, 2)
    total = [0] * st.complex.dim(2)
    for i in range(4):
        face = tuple(pts[j] for j in range(4) if j != i)
        cyc = grp.apartment_cycle_tuple(face, cl, st.complex, st.proper, use_orientation=False)
        sgn = (-1) ** i
        total = [a + sgn * b for a, b in zip(total, cyc.vector)]
    free, tors = classes.coords(total)
    assert not any(free) and not any(tors)


def test_apartment_degenerate_vanishing():
    """Apartments of tuples inside a proper member are boundaries."""
    pts_coords = ((0, 0), (1, 0), (2, 0), (0, 1))  # first three collinear
    cl, generating = coll_mod.closure_by_points(
        E2, [geo.point_subspace(E2, p) for p in pts_coords]
    )
    assert generating
    st = grp.STModel(cl.members, cl.top())
    pts = sorted(cl.points(), key=lambda p: p.sort_key())
    collinear = tuple(p for p in pts if p.carrier.basis[0][2] == 0)
    assert len(collinear) == 3
    cyc = grp.apartment_cycle_tuple(collinear, cl, st.complex, st.proper, use_orientation=False)
    classes = cx.HomologyClasses(st.complex, 2)
    free, tors = classes.coords(cyc.vector)
    assert not any(free) and not any(tors)


def test_polytope_apartment_matches_tuple(triangle):
    """The polytope apartment of a simplex equals the (orientation-
    normalized) tuple apartment of its vertices."""
    poset = arr.build_arrangement(triangle)
    basis = arr.region_basis(poset)
    st = grp.STModel(triangle.members, triangle.top())
    p = arr.region_polytope(poset, basis[0])
    cyc_poly = grp.apartment_cycle_polytope(p, triangle, st.complex, st.proper)
    verts = tuple(sorted(triangle.points(), key=lambda m: m.sort_key()))
    cyc_tup = grp.apartment_cycle_tuple(verts, triangle, st.complex, st.proper)
    assert cyc_poly.vector == cyc_tup.vector


def test_cell_apartment_matches_polytope(triangle):
    poset = arr.build_arrangement(triangle)
    basis = arr.region_basis(poset)
    st = grp.STModel(triangle.members, triangle.top())
    p = arr.region_polytope(poset, basis[0])
    a = grp.apartment_cycle_polytope(p, triangle, st.complex, st.proper)
    b = grp.apartment_cycle_cell(poset, basis[0], st)
    assert a.vector == b.vector


def test_polytope_apartment_subdivision_additive(four_lines):
    """apt(P) = sum of apt(P_i) in homology when an L-line cuts P."""
    poset = arr.build_arrangement(four_lines)
    basis = arr.region_basis(poset)
    st = grp.STModel(four_lines.members, four_lines.top())
    classes = cx.HomologyClasses(st.complex, 2)
    # the big triangle is a convex L-polytope cut by the fourth line
    p = geo.polytope_from_halfspaces(E2, [geo.HalfSpace(c) for c in TRIANGLE_COVS])
    vec = arr.polytope_to_vector(p, basis, poset)
    covered = [basis[i] for i, c in enumerate(vec) if c]
    assert len(covered) == 2
    apt_p = grp.apartment_cycle_polytope(p, four_lines, st.complex, st.proper)
    f_p, _ = classes.coords(apt_p.vector)
    acc = None
    for sign in covered:
        f, _ = classes.coords(grp.apartment_cycle_cell(poset, sign, st).vector)
        acc = f if acc is None else tuple(a + b for a, b in zip(acc, f))
    assert f_p == acc


def test_spherical_apartment_additivity(coord_s2):
    """Octant subdivided by a fourth admissibility-compatible plane:
    apartment classes add in homology."""
    extra = (1, -1, 0)
    var = coll_mod.variants(coord_s2, extra)
    cup = var.cup
    poset = arr.build_arrangement(cup)
    tri = cx.sphere_triangulation(cup, poset)
    bic = cx.pt_bicomplex(cup, tri)
    classes = cx.HomologyClasses(bic, 2)
    octant = geo.polytope_from_halfspaces(
        geo.Geometry("S", 2), [geo.HalfSpace(c) for c in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    )
    pieces = arr.subdivide(octant, [extra])
    assert len(pieces) == 2
    apt_total = grp.apartment_cycle_pt_spherical(octant, cup, tri, bic)
    f_total, _ = classes.coords(apt_total.vector)
    acc = None
    for piece in pieces:
        cyc = grp.apartment_cycle_pt_spherical(piece, cup, tri, bic)
        f, _ = classes.coords(cyc.vector)
        acc = f if acc is None else tuple(a + b for a, b in zip(acc, f))
    assert f_total == acc


def test_apartment_matrices_iso_corpus(triangle, four_lines, coord_s2, coord_s1, h2_triangle):
    # Euclidean polytope flavor
    for coll in (triangle, four_lines):
        poset = arr.build_arrangement(coll)
        basis = arr.region_basis(poset)
        st = grp.STModel(coll.members, coll.top())
        assert grp.apartment_matrix(
            coll, "ST-polytopes", poset=poset, basis=basis, st_model=st
        ).iso
    # spherical flavor
    for coll in (coord_s1, coord_s2):
        poset = arr.build_arrangement(coll)
        tri = cx.sphere_triangulation(coll, poset)
        bic = cx.pt_bicomplex(coll, tri)
        assert grp.apartment_matrix(
            coll,
            "PT-spherical",
            poset=poset,
            basis=arr.region_basis(poset),
            tri=tri,
            bicomplex=bic,
        ).iso
    # hyperbolic both-generated
    poset = arr.build_arrangement(h2_triangle)
    st = grp.STModel(h2_triangle.members, h2_triangle.top())
    assert grp.apartment_matrix(
        h2_triangle,
        "ST-polytopes",
        poset=poset,
        basis=arr.region_basis(poset),
        st_model=st,
    ).iso


def test_pt_to_ls_triangle(triangle):
    rep = grp.verify_pt_ls(triangle)
    assert rep["verdict"] == "PASS" and rep["isomorphism"]


def test_pt_to_ls_h2(h2_triangle):
    rep = grp.verify_pt_ls(h2_triangle)
    assert rep["verdict"] == "PASS" and rep["isomorphism"]


def test_pt_to_ls_quadrilateral_subdivision_invariance():
    """Quadrilateral vs its two diagonal-cut triangles: equal Ls elements."""
    covs = [
        (0, 1, 0),
        (0, 0, 1),
        (1, -1, 0),
        (1, 0, -1),
        (0, 1, -1),
        (1, -1, -1),
    ]  # unit square, both diagonals
    coll = coll_mod.closure_by_hyperplanes(E2, covs)
    assert coll_mod.generated_by_both(coll)
    ls_data = grp.ls_group(coll)
    square = geo.polytope_from_halfspaces(
        E2, [geo.HalfSpace(c) for c in covs[:4]]
    )
    tri1 = geo.polytope_from_halfspaces(
        E2, [geo.HalfSpace(c) for c in covs[:4]] + [geo.HalfSpace((0, 1, -1))]
    )
    tri2 = geo.polytope_from_halfspaces(
        E2, [geo.HalfSpace(c) for c in covs[:4]] + [geo.HalfSpace((0, 1, -1), sense=-1)]
    )
    v_sq = grp.pt_to_ls_element(square, coll, ls_data)
    v_1 = grp.pt_to_ls_element(tri1, coll, ls_data)
    v_2 = grp.pt_to_ls_element(tri2, coll, ls_data)
    diff = [a - b - c for a, b, c in zip(v_sq, v_1, v_2)]
    rel = ls_data[0].relation_lattice_matrix()
    assert solve_int(rel, diff) is not None  # equal in Ls


def test_pt_to_ls_spherical_kernel(coord_s2):
    rep = grp.verify_pt_ls(coord_s2)
    assert rep["verdict"] == "PASS"
    assert rep["surjective"] and rep["kernel_rank"] == 7
    assert rep["kernel_equals_join_lattice"]


def test_antipodal_invariance(coord_s2):
    """Reflecting one vertex of a spherical simplex flips the sign of its
    Ls image: the sum lies in the relation lattice (the join relation)."""
    poset = arr.build_arrangement(coord_s2)
    basis = arr.region_basis(poset)
    ls_data = grp.ls_group(coord_s2)
    s2 = geo.Geometry("S", 2)
    simplex = geo.polytope_from_halfspaces(
        s2, [geo.HalfSpace(c) for c in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    )
    reflected = geo.polytope_from_halfspaces(
        s2, [geo.HalfSpace((1, 0, 0), sense=-1), geo.HalfSpace((0, 1, 0)), geo.HalfSpace((0, 0, 1))]
    )
    v1 = grp.pt_to_ls_element(simplex, coord_s2, ls_data)
    v2 = grp.pt_to_ls_element(reflected, coord_s2, ls_data)
    total = [a + b for a, b in zip(v1, v2)]
    rel = ls_data[0].relation_lattice_matrix()
    if any(total):
        assert solve_int(rel, total) is not None
    # i.e. [x0...] and [-x0...] represent opposite Ls classes


def test_exact_sequence_corpus(triangle, four_lines, coord_s2):
    cases = [
        (triangle, (2, -5, -1), None),
        (triangle, (5, -1, -1), None),
        (four_lines, (1, -3, 1), None),
        (coord_s2, (1, 2, 3), None),
    ]
    for coll, u, window in cases:
        rep = grp.exact_sequence_check(coll, u, window=window)
        assert rep["verdict"] == "PASS", rep
        assert rep["injective"] and rep["facet_surjective"]
        assert rep["kernel_equals_image"] and rep["rank_additive"]


def test_exact_sequence_u_in_l(triangle):
    with pytest.raises(ValueError):
        grp.exact_sequence_check(triangle, (0, 1, 0))


def test_exact_sequence_hyperbolic_window(h2_triangle):
    a = geo.polytope_from_halfspaces(
        H2, [geo.HalfSpace(c) for c in h2_triangle.hyperplane_covectors]
    )
    rep = grp.exact_sequence_check(h2_triangle, (3, 0, -8), window=a)
    assert rep["verdict"] == "PASS"
    rep2 = grp.exact_sequence_check(h2_triangle, (3, 0, -8))
    assert rep2["verdict"] == "HYPOTHESES_NOT_MET"


def test_exact_sequence_nonadmissible_euclidean():
    par = coll_mod.closure_by_hyperplanes(E2, [(0, 0, 1), (-1, 0, 1)])
    rep = grp.exact_sequence_check(par, (0, 1, 0))
    assert rep["verdict"] == "HYPOTHESES_NOT_MET"


def test_duality(coord_s2, coord_s1):
    rep = grp.duality_check(coord_s2)
    assert rep["verdict"] == "PASS"
    assert rep["st_rank"] == rep["ls_dual_rank"] == 1
    rep1 = grp.duality_check(coord_s1)
    assert rep1["verdict"] == "PASS"
    generic = coll_mod.closure_by_hyperplanes(S2, [(1, 0, 0), (0, 1, 0), (1, 2, 3)])
    rep2 = grp.duality_check(generic)
    assert rep2["verdict"] == "PASS"
    shared = coll_mod.closure_by_hyperplanes(S2, [(1, 0, 0), (0, 1, 0)])
    assert grp.duality_check(shared)["verdict"] == "HYPOTHESES_NOT_MET"


def test_suspension(coord_s2):
    for covs, want in (
        ([(1, 0, 0)], 2),
        ([(1, 0, 0), (0, 1, 0)], 4),
        ([(1, 0, 0), (0, 1, 0), (1, -1, 0)], 6),
    ):
        coll = coll_mod.closure_by_hyperplanes(S2, covs)
        rep = grp.suspension_check(coll)
        assert rep["verdict"] == "PASS", rep
        assert rep["pt_rank"] == want and rep["reduced_homology_rank"] == want
        assert rep["region_bijection"]
    assert grp.suspension_check(coord_s2)["verdict"] == "NOT_APPLICABLE"


def test_pt_to_ls_spherical_s1(coord_s1):
    """n=1 spherical comparison: Pt = Z^4 onto Ls = Z with the kernel
    generated by half-circle joins."""
    rep = grp.verify_pt_ls(coord_s1)
    assert rep["verdict"] == "PASS"
    assert rep["surjective"] and rep["kernel_rank"] == 3
    assert rep["kernel_equals_join_lattice"]
