import math
import random
from itertools import combinations

import numpy as np
import pytest

from hodgecover import (GeometryError, SimplexMetric, load_complex,
                        simplex_gram, simplex_volume)
from hodgecover.surfaces import tetrahedron_boundary, torus7, unit_geometry
from hodgecover.whitney import (ComplexGeometry, InnerProduct, NormSpec,
                                chain_dual_norm, cochain_norm,
                                norm_equivalence_constants,
                                whitney_mass_matrix, whitney_pointwise_norm)


# ---------------------------------------------------------------------------
# quadrature oracle: embed the simplex, expand Whitney forms in coordinate
# wedge components, integrate with a rule exact for quadratics


def embed(metric):
    G = simplex_gram(metric)
    return np.linalg.cholesky(G)  # rows: edge vectors from vertex 0


def degree2_rule(n):
    """(barycentric points, weight fractions) exact for quadratics."""
    if n == 2:
        pts = [(0.5, 0.5, 0.0), (0.5, 0.0, 0.5), (0.0, 0.5, 0.5)]
        return pts, [1 / 3] * 3
    if n == 3:
        a = (5 + 3 * math.sqrt(5)) / 20
        b = (5 - math.sqrt(5)) / 20
        pts = []
        for k in range(4):
            p = [b] * 4
            p[k] = a
            pts.append(tuple(p))
        return pts, [1 / 4] * 4
    raise NotImplementedError


def local_mass_oracle(metric, q):
    n = metric.n_vertices - 1
    E = embed(metric)  # n x n, row i-1 = vertex i - vertex 0
    grads = np.zeros((n + 1, n))
    inv = np.linalg.inv(E.T)  # P^{-1} with P columns the edge vectors
    for i in range(1, n + 1):
        grads[i] = inv[i - 1, :]
    grads[0] = -grads[1:].sum(axis=0)
    vol = abs(np.linalg.det(E)) / math.factorial(n)
    faces = list(combinations(range(n + 1), q + 1))
    axes = list(combinations(range(n), q))
    pts, wts = degree2_rule(n)

    def components(face, lam):
        out = np.zeros(len(axes))
        for k, vk in enumerate(face):
            rest = [v for v in face if v != vk]
            Gm = grads[rest]  # q x n
            for s, ax in enumerate(axes):
                sub = Gm[:, ax]
                d = np.linalg.det(sub) if q else 1.0
                out[s] += (-1) ** k * lam[vk] * d
        return math.factorial(q) * out

    m = len(faces)
    M = np.zeros((m, m))
    for lam, w in zip(pts, wts):
        vals = [components(f, lam) for f in faces]
        for a in range(m):
            for b in range(m):
                M[a, b] += w * vol * vals[a] @ vals[b]
    return M


def assemble_oracle(K, geometry, q):
    nq = K.n_cells(q)
    M = np.zeros((nq, nq))
    for top in K.cells[K.dim]:
        metric = geometry.top_metric(top)
        faces = list(combinations(range(len(top)), q + 1))
        Mloc = local_mass_oracle(metric, q)
        idx = [K.cell_index[q][tuple(top[i] for i in f)] for f in faces]
        for a, ga in enumerate(idx):
            for b, gb in enumerate(idx):
                M[ga, gb] += Mloc[a, b]
    return M


def random_triangle_metric(rng):
    while True:
        a, b = rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0)
        c = rng.uniform(abs(a - b) + 0.1, a + b - 0.1)
        try:
            m = SimplexMetric.from_dict(3, {(0, 1): a, (0, 2): b, (1, 2): c})
            simplex_gram(m)
            return m
        except GeometryError:
            continue


class TestMassMatrices:
    def test_vertex_mass_closed_form_triangle(self):
        K = load_complex([(0, 1, 2)])
        geo = ComplexGeometry.uniform(K, 1.0)
        area = math.sqrt(3) / 4
        expect = area / 12 * np.array([[2, 1, 1], [1, 2, 1], [1, 1, 2]])
        got = whitney_mass_matrix(K, geo, 0).matrix
        assert np.allclose(got, expect, atol=1e-14)

    def test_top_mass_is_inverse_volume(self):
        K = load_complex([(0, 1, 2)])
        geo = ComplexGeometry.uniform(K, 2.0)
        area = math.sqrt(3)
        assert np.allclose(whitney_mass_matrix(K, geo, 2).matrix,
                           [[1 / area]], atol=1e-12)

    def test_against_quadrature_oracle_triangles(self):
        rng = random.Random(0)
        for _ in range(10):
            m = random_triangle_metric(rng)
            K = load_complex([(0, 1, 2)])
            geo = ComplexGeometry(K, {(0, 1): m.length(0, 1),
                                      (0, 2): m.length(0, 2),
                                      (1, 2): m.length(1, 2)})
            for q in range(3):
                got = whitney_mass_matrix(K, geo, q).matrix
                expect = local_mass_oracle(m, q)
                assert np.allclose(got, expect, rtol=1e-10, atol=1e-12)

    def test_against_quadrature_oracle_tetrahedron(self):
        K = load_complex([(0, 1, 2, 3)])
        geo = ComplexGeometry.uniform(K, 1.0)
        m = geo.top_metric((0, 1, 2, 3))
        for q in range(4):
            got = whitney_mass_matrix(K, geo, q).matrix
            expect = local_mass_oracle(m, q)
            assert np.allclose(got, expect, rtol=1e-10, atol=1e-12)

    def test_assembled_surface_against_oracle(self):
        K = torus7()
        geo = unit_geometry(K)
        for q in range(3):
            got = whitney_mass_matrix(K, geo, q).matrix
            expect = assemble_oracle(K, geo, q)
            assert np.allclose(got, expect, rtol=1e-10, atol=1e-12)

    def test_spd_on_fixtures(self):
        for K in (tetrahedron_boundary(), torus7()):
            geo = unit_geometry(K)
            for q in range(K.dim + 1):
                M = whitney_mass_matrix(K, geo, q).matrix
                assert np.allclose(M, M.T)
                assert np.min(np.linalg.eigvalsh(M)) > 0


class TestInnerProduct:
    def test_rejects_asymmetric(self):
        with pytest.raises(GeometryError):
            InnerProduct(0, np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_rejects_indefinite(self):
        with pytest.raises(np.linalg.LinAlgError):
            InnerProduct(0, np.array([[1.0, 0.0], [0.0, -1.0]]))

    def test_solve(self):
        ip = InnerProduct(0, np.array([[2.0, 0.0], [0.0, 4.0]]))
        assert np.allclose(ip.solve(np.array([2.0, 4.0])), [1.0, 1.0])


class TestGeometry:
    def test_missing_edge_rejected(self):
        K = torus7()
        with pytest.raises(GeometryError):
            ComplexGeometry(K, {(1, 2): 1.0})

    def test_per_top_consistency(self):
        K = load_complex([(0, 1, 2), (0, 1, 3)])
        tables = {(0, 1, 2): {(0, 1): 1.0, (0, 2): 1.0, (1, 2): 1.0},
                  (0, 1, 3): {(0, 1): 1.0, (0, 3): 1.0, (1, 3): 1.0}}
        geo = ComplexGeometry.from_per_top_tables(K, tables)
        assert geo.edge_lengths[(0, 1)] == 1.0
        tables[(0, 1, 3)][(0, 1)] = 2.0
        with pytest.raises(GeometryError):
            ComplexGeometry.from_per_top_tables(K, tables)

    def test_total_volume(self):
        K = torus7()
        geo = unit_geometry(K)
        assert abs(geo.total_volume() - 14 * math.sqrt(3) / 4) < 1e-12


class TestNorms:
    def test_comb_norms(self):
        x = [3.0, -4.0, 0.0]
        assert cochain_norm(x, NormSpec("comb", 2)) == 5.0
        assert cochain_norm(x, NormSpec("comb", 1)) == 7.0
        assert cochain_norm(x, NormSpec("comb", math.inf)) == 4.0

    def test_comb_dual_norms(self):
        c = [3.0, -4.0, 0.0]
        assert chain_dual_norm(c, NormSpec("comb", math.inf, "chain")) == 7.0
        assert chain_dual_norm(c, NormSpec("comb", 1, "chain")) == 4.0
        assert chain_dual_norm(c, NormSpec("comb", 2, "chain")) == 5.0

    def test_whitney_norm_and_dual_pairing_bound(self):
        K = torus7()
        geo = unit_geometry(K)
        ip = whitney_mass_matrix(K, geo, 1)
        rng = np.random.default_rng(0)
        spec = NormSpec("whitney", 2)
        dspec = NormSpec("whitney", 2, "chain")
        for _ in range(10):
            x = rng.standard_normal(K.n_cells(1))
            c = rng.standard_normal(K.n_cells(1))
            nx = cochain_norm(x, spec, ip)
            nc = chain_dual_norm(c, dspec, ip)
            assert abs(c @ x) <= nx * nc + 1e-9
        # dual norm attains the pairing bound at c = M x
        x = rng.standard_normal(K.n_cells(1))
        c = ip.matrix @ x
        assert abs(abs(c @ x)
                   - cochain_norm(x, spec, ip) * chain_dual_norm(c, dspec, ip)
                   ) < 1e-9

    def test_norm_spec_validation(self):
        with pytest.raises(ValueError):
            NormSpec("fancy", 2)
        with pytest.raises(ValueError):
            NormSpec("comb", 3)
        with pytest.raises(ValueError):
            cochain_norm([1.0], NormSpec("whitney", 2))

    def test_equivalence_constants_sandwich(self):
        K = torus7()
        geo = unit_geometry(K)
        lo, hi = norm_equivalence_constants(K, geo, 1)
        assert 0 < lo < hi
        ip = whitney_mass_matrix(K, geo, 1)
        rng = np.random.default_rng(1)
        for _ in range(20):
            x = rng.standard_normal(K.n_cells(1))
            w = cochain_norm(x, NormSpec("whitney", 2), ip)
            e = cochain_norm(x, NormSpec("comb", 2))
            assert lo * e - 1e-9 <= w <= hi * e + 1e-9


class TestPointwiseNorm:
    def test_vertex_indicator_sup_is_one(self):
        K = load_complex([(0, 1, 2)])
        geo = ComplexGeometry.uniform(K, 1.0)
        x = np.array([1.0, 0.0, 0.0])
        # lambda_0 attains 1 at the corner, which is a grid point
        assert abs(whitney_pointwise_norm(K, geo, 0, x) - 1.0) < 1e-12

    def test_sup_dominates_mean(self):
        K = torus7()
        geo = unit_geometry(K)
        ip = whitney_mass_matrix(K, geo, 1)
        rng = np.random.default_rng(2)
        x = rng.standard_normal(K.n_cells(1))
        sup = whitney_pointwise_norm(K, geo, 1, x)
        l2 = cochain_norm(x, NormSpec("whitney", 2), ip)
        assert sup > 0
        assert sup ** 2 * geo.total_volume() >= l2 ** 2 - 1e-9
