import pytest

from cellqec import surface
from cellqec.surface import Cellulation, CellulationError


class TestValidation:
    def test_minimal_projective_plane(self):
        info = surface.validate(surface.rp2_minimal())
        assert info.euler_characteristic == 1
        assert not info.orientable
        assert info.connected
        assert info.surface_name == "projective plane"

    def test_hemi_icosahedron_counts(self):
        c = surface.hemi_icosahedron()
        assert (c.vertex_count, c.edge_count, c.face_count) == (6, 15, 10)
        info = surface.validate(c)
        assert info.surface_name == "projective plane"

    def test_cube_is_a_sphere(self):
        info = surface.validate(surface.cube_sphere())
        assert (info.euler_characteristic, info.orientable) == (2, True)
        assert info.surface_name == "sphere"

    def test_nine_edge_shor_cellulation(self):
        c = surface.fig4_shor()
        assert (c.vertex_count, c.edge_count, c.face_count) == (3, 9, 7)
        info = surface.validate(c)
        assert info.surface_name == "projective plane"

    def test_torus(self):
        info = surface.validate(surface.toric(3, 3))
        assert (info.euler_characteristic, info.orientable) == (0, True)
        assert info.surface_name == "torus"

    def test_square_torus(self):
        # one vertex, two loops, one face a b a- b-
        t = Cellulation(1, ((0, 0), (0, 0)),
                        (((0, 1), (1, 1), (0, -1), (1, -1)),))
        info = surface.validate(t)
        assert (info.euler_characteristic, info.orientable) == (0, True)
        assert info.surface_name == "torus"

    def test_single_cover_rejected(self):
        # an edge traversed only once cannot close a surface
        bad = Cellulation(2, ((0, 1),), (((0, 1),),))
        with pytest.raises(CellulationError):
            surface.validate(bad)

    def test_unclosed_walk_rejected(self):
        bad = Cellulation(3, ((0, 1), (1, 2), (2, 0)),
                          (((0, 1), (1, 1), (2, 1)),
                           ((0, -1), (2, -1), (1, -1))))
        surface.validate(bad)  # coherent double cover of a triangle: fine
        worse = Cellulation(3, ((0, 1), (1, 2), (2, 0)),
                            (((0, 1), (2, 1), (1, 1)),
                             ((0, -1), (2, -1), (1, -1))))
        with pytest.raises(CellulationError):
            surface.validate(worse)

    def test_isolated_vertex_rejected(self):
        bad = Cellulation(2, ((0, 0),), (((0, 1), (0, 1)),))
        with pytest.raises(CellulationError):
            surface.validate(bad)

    def test_pinched_complex_rejected(self):
        # two loops at one vertex, each its own handle pair: the star at
        # the vertex splits into two circles
        bad = Cellulation(1, ((0, 0), (0, 0)),
                          (((0, 1), (0, -1)), ((1, 1), (1, -1))))
        with pytest.raises(CellulationError):
            surface.validate(bad)


class TestClassify:
    @pytest.mark.parametrize("chi,orientable,name", [
        (2, True, "sphere"),
        (0, True, "torus"),
        (-2, True, "orientable genus 2"),
        (1, False, "projective plane"),
        (0, False, "Klein bottle"),
        (-1, False, "non-orientable genus 3"),
    ])
    def test_names(self, chi, orientable, name):
        assert surface.classify_surface(chi, orientable) == name


class TestJson:
    def test_round_trip(self):
        c = surface.fig4_shor()
        assert Cellulation.from_json(c.to_json()) == c

    def test_schema_fields(self):
        doc = surface.rp2_minimal().to_json_dict()
        assert doc == {"vertices": 1, "edges": [[0, 0]],
                       "faces": [[[0, 1], [0, 1]]]}


class TestDuality:
    @pytest.mark.parametrize("name", ["rp2_minimal", "fig1_hemi_icosahedron",
                                      "fig4_shor", "cube_sphere", "toric(3,3)"])
    def test_double_dual_is_identity(self, name):
        c = surface.catalog(name)
        assert surface.isomorphic(surface.dual(surface.dual(c)), c)

    def test_minimal_projective_plane_is_self_dual(self):
        c = surface.rp2_minimal()
        assert surface.isomorphic(surface.dual(c), c)

    def test_hemi_icosahedron_dual_counts(self):
        d = surface.dual(surface.hemi_icosahedron())
        assert (d.vertex_count, d.edge_count, d.face_count) == (10, 15, 6)
        assert surface.validate(d).surface_name == "projective plane"

    def test_dual_swaps_vertices_and_faces(self):
        c = surface.fig4_shor()
        d = surface.dual(c)
        assert (d.vertex_count, d.edge_count, d.face_count) == (7, 9, 3)
        info = surface.validate(d)
        assert info.surface_name == "projective plane"

    def test_dual_preserves_edge_labels(self):
        # dual edge i crosses primal edge i, so the dual's vertex-edge
        # incidence rows are the primal's face-edge rows (cells renamed)
        c = surface.toric(2, 3)
        d = surface.dual(c)
        fe, ve = surface.incidence_matrices(c)
        dfe, dve = surface.incidence_matrices(d)
        assert sorted(dve.row_bits) == sorted(fe.row_bits)
        assert sorted(dfe.row_bits) == sorted(ve.row_bits)


class TestCanonicalForm:
    def test_relabeling_invariance(self):
        c = surface.fig4_shor()
        perm = [2, 0, 1]
        edges = tuple((perm[a], perm[b]) for a, b in c.edges)
        relabeled = Cellulation(3, edges, c.faces)
        assert surface.isomorphic(c, relabeled)

    def test_distinct_catalog_entries(self):
        names = ["rp2_minimal", "fig1_hemi_icosahedron", "fig4_shor",
                 "cube_sphere", "toric(3,3)"]
        forms = {surface.canonical_form(surface.catalog(n)) for n in names}
        assert len(forms) == len(names)

    def test_form_is_start_independent(self):
        # rotating a face walk does not change the map
        c = surface.fig4_shor()
        walk = c.faces[-1]
        rotated = c.faces[:-1] + (walk[2:] + walk[:2],)
        assert surface.isomorphic(c, Cellulation(3, c.edges, rotated))


class TestIncidence:
    def test_boundary_of_boundary_vanishes(self):
        for name in ["rp2_minimal", "fig4_shor", "toric(3,3)", "cube_sphere"]:
            fe, ve = surface.incidence_matrices(surface.catalog(name))
            for row in fe.row_vectors():
                assert ve.mul_vector(row).is_zero()

    def test_doubly_traversed_edge_cancels(self):
        fe, _ = surface.incidence_matrices(surface.rp2_minimal())
        assert fe.to_lists() == [[0]]

    def test_loop_cancels_in_vertex_incidence(self):
        _, ve = surface.incidence_matrices(surface.rp2_minimal())
        assert ve.to_lists() == [[0]]


class TestCatalog:
    def test_toric_parsing(self):
        c = surface.catalog("toric(2,5)")
        assert (c.vertex_count, c.edge_count, c.face_count) == (10, 20, 10)

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            surface.catalog("dodecahedron")

    def test_closed_catalog_all_validate(self):
        for name in surface.closed_catalog_names():
            info = surface.validate(surface.catalog(name))
            assert info.connected
