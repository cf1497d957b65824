import math

import pytest

from hodgecover import (BoundError, InnerProduct, catalogue_ids,
                        check_dichotomy, evaluate_bound, get_entry,
                        lambda1_split, least_norm_filling,
                        verify_filling_chain)
from hodgecover.fillings import EdgeCycle
from hodgecover.hypgeom import ball_volume
from hodgecover.surfaces import torus7, unit_geometry
from hodgecover.whitney import whitney_mass_matrix

from helpers import moser_oracle

# one complete synthetic parameter set per catalogue entry
SYNTHETIC = {
    "upper_b0": dict(lam=1.0, C=1.0, V=1.0, D=1.0,
                     sup_sarea_over_length=1.0, vol=1.0),
    "upper_b0_body": dict(lam=1.0, C=1.0, vol_boundary=1.0, sup_sarea=1.0,
                          vol=1.0),
    "upper_b1": dict(lam=1.0, E=0.5, C=1.0, V=1.0, D=1.0, vol=1.0,
                     delta=0.1, sup_sarea=1.0),
    "upper_general": dict(lam=1.0, C=1.0, V=1.0, vol=1.0, f_norm=1.0,
                          h_norm=1.0, sup_sarea=1.0, b1=2),
    "harmonic_subtraction": dict(lhs=1.0, df_sup=1.0, sarea=1.0, b1=1),
    "lower_whitney": dict(lhs=1.0, W=1.0, vol=10.0, diam=2.0,
                          lambda1_whitney=1.0),
    "dichotomy": dict(lambda1_whitney=1.0, lambda1_comb=1.0, G=1.0, C=1.0,
                      vol=1.0),
    "tree_area": dict(lhs=59.0, vol_boundary_base=10.0, vol=6.0,
                      vol_base=1.0),
    "tree_diam": dict(lhs=14.0, diam_base_domain=3.0, diam_tree=4),
    "comb_ball_diam": dict(lhs=1.0, dist=1.0, r0=1.0, k0=1.0),
    "tree_diam_M": dict(lhs=1.0, diam_base_domain=1.0, k0=1.0, r0=1.0,
                        diam=1.0),
    "dirichlet_diam": dict(lhs=3.9, diam=2.0),
    "dirichlet_boundary": dict(lhs=1.0, E_n=1.0, n=2, diam=1.0),
    "surface_injectivity": dict(lhs=1.0, mu1=1.0, inj=0.3),
    "surface_triangulation_count": dict(lhs=1.0, vol_surface=1.0, mu=1.0,
                                        curvature=1.0),
    "intersection_bound": dict(lhs=1.0, triangle_count=10.0, length=1.0,
                               mu=1.0),
    "free_part_length": dict(lhs=1.0, A=1.0, D=1.0, b1=2),
    "regulator_independent": dict(lhs=1.0, D=1.0, vol=1.0, delta=0.1,
                                  sup_sarea=1.0),
    "exp_gap": dict(lambda1=1.0, H=1.0, vol=1.0),
    "high_dim_scl": dict(lhs=1.0, K=1.0, vol=2.0, C=1.0, diam=3.0),
    "retraction": dict(lhs=1.0, K=1.0, d=2, vol_target=1.0, diam_target=1.0,
                       lambda1_target=1.0),
    "lambda0_lower": dict(lhs=1.0, n=3, inj=1.0, lam_probe=0.1, diam=2.0,
                          vol=10.0),
}


class TestCatalogue:
    def test_every_entry_evaluates(self):
        ids = catalogue_ids()
        assert set(ids) == set(SYNTHETIC)
        assert ids == sorted(ids)
        for bid in ids:
            rep = evaluate_bound(bid, SYNTHETIC[bid])
            assert rep.id == bid
            assert math.isfinite(rep.rhs)
            assert rep.verdict in ("holds", "fails", "marginal",
                                   "not-applicable")
            assert set(rep.values) == set(SYNTHETIC[bid])

    def test_all_synthetic_params_give_holds(self):
        for bid, params in SYNTHETIC.items():
            rep = evaluate_bound(bid, params)
            assert rep.verdict == "holds", (bid, rep.lhs, rep.rhs)

    def test_sources_recorded(self):
        rep = evaluate_bound("dirichlet_diam", SYNTHETIC["dirichlet_diam"])
        assert rep.values["diam"]["source"] == "computed"
        rep = evaluate_bound("exp_gap", SYNTHETIC["exp_gap"])
        assert rep.values["H"]["source"] == "user"

    def test_missing_lhs_not_applicable(self):
        params = dict(SYNTHETIC["dirichlet_diam"])
        params["lhs"] = None
        rep = evaluate_bound("dirichlet_diam", params)
        assert rep.verdict == "not-applicable"
        assert any("right side" in n for n in rep.notes)


class TestHandValues:
    def test_dirichlet_diam(self):
        rep = evaluate_bound("dirichlet_diam", dict(lhs=3.9, diam=2.0))
        assert rep.rhs == 4.0 and rep.verdict == "holds"
        rep = evaluate_bound("dirichlet_diam", dict(lhs=4.5, diam=2.0))
        assert rep.verdict == "fails"

    def test_tree_area(self):
        rep = evaluate_bound("tree_area", dict(
            lhs=59.0, vol_boundary_base=10.0, vol=6.0, vol_base=1.0))
        assert rep.rhs == 60.0 and rep.verdict == "holds"

    def test_tree_diam(self):
        rep = evaluate_bound("tree_diam", dict(
            lhs=14.0, diam_base_domain=3.0, diam_tree=4))
        assert rep.rhs == 15.0 and rep.verdict == "holds"

    def test_marginal_at_near_equality(self):
        rep = evaluate_bound("tree_diam", dict(
            lhs=15.0 * (1 + 1e-12), diam_base_domain=3.0, diam_tree=4))
        assert rep.verdict == "marginal"
        rep = evaluate_bound("tree_area", dict(
            lhs=60.0, vol_boundary_base=10.0, vol=6.0, vol_base=1.0))
        assert rep.verdict == "marginal"

    def test_lambda0_lower_against_oracle(self):
        rep = evaluate_bound("lambda0_lower", SYNTHETIC["lambda0_lower"])
        expect = moser_oracle(3, 1, 0.5, 0.1) ** -2 / 40.0
        assert rep.rhs == pytest.approx(expect, rel=1e-9)
        assert rep.verdict == "holds"

    def test_surface_triangulation_count_closed_form(self):
        rep = evaluate_bound("surface_triangulation_count",
                             SYNTHETIC["surface_triangulation_count"])
        small = ball_volume(2, 0.2, 1.0)
        assert rep.rhs == pytest.approx(
            1.0 / small * ball_volume(2, 1.0, 1.0) / small, rel=1e-12)


class TestErrors:
    def test_unknown_id(self):
        with pytest.raises(BoundError):
            evaluate_bound("no_such_bound", {})
        with pytest.raises(BoundError):
            get_entry("no_such_bound")

    def test_missing_parameter(self):
        with pytest.raises(BoundError, match="missing parameter"):
            evaluate_bound("dirichlet_diam", {"lhs": 1.0})

    def test_unexpected_parameter(self):
        params = dict(SYNTHETIC["dirichlet_diam"], bogus=1.0)
        with pytest.raises(BoundError):
            evaluate_bound("dirichlet_diam", params)


class TestDichotomy:
    def test_generous_constants_hold(self):
        K = torus7()
        geo = unit_geometry(K)
        rep = check_dichotomy(K, geo, {"G": 1.0, "C": 1.0})
        assert rep.verdict == "holds"
        assert any("alternative" in n for n in rep.notes)

    def test_adversarial_constants_fail(self):
        K = torus7()
        geo = unit_geometry(K)
        rep = check_dichotomy(K, geo, {"G": 1e-9, "C": 1.0})
        assert rep.verdict == "fails"

    def test_direct_entry_matches_check(self):
        K = torus7()
        geo = unit_geometry(K)
        rep1 = check_dichotomy(K, geo, {"G": 1.0, "C": 1.0})
        params = {k: v["value"] for k, v in rep1.values.items()}
        rep2 = evaluate_bound("dichotomy", params)
        assert rep1.verdict == rep2.verdict
        assert rep1.lhs == rep2.lhs and rep1.rhs == rep2.rhs


class TestFillingChain:
    def setup_method(self):
        self.K = torus7()
        self.products = {q: InnerProduct.identity(q, self.K.n_cells(q))
                         for q in range(3)}
        self.split = lambda1_split(self.K, 1, self.products)
        bd = self.K.boundary_matrix(2).to_pylists()
        self.f = EdgeCycle(self.K, tuple(row[0] for row in bd))

    def test_comb_certificate_holds(self):
        cert = least_norm_filling(self.f, "comb")
        rep = verify_filling_chain(cert, self.split)
        assert rep.verdict == "holds"
        assert rep.lhs <= rep.rhs * (1 + 1e-9)

    def test_perturbed_certificate_fails(self):
        cert = least_norm_filling(self.f, "comb")
        cert.chi_bound = cert.chi_bound + 4
        rep = verify_filling_chain(cert, self.split)
        assert rep.verdict == "fails"
        assert any("1-norm" in n for n in rep.notes)

    def test_zero_cycle_not_applicable(self):
        zero = EdgeCycle(self.K, (0,) * self.K.n_cells(1))
        cert = least_norm_filling(zero, "comb")
        rep = verify_filling_chain(cert, self.split)
        assert rep.verdict == "not-applicable"

    def test_wrong_degree_rejected(self):
        cert = least_norm_filling(self.f, "comb")
        split0 = lambda1_split(self.K, 0, self.products)
        with pytest.raises(BoundError):
            verify_filling_chain(cert, split0)

    def test_whitney_certificate_needs_dual_norm(self):
        geo = unit_geometry(self.K)
        ip = whitney_mass_matrix(self.K, geo, 2)
        cert = least_norm_filling(self.f, "whitney", ip)
        with pytest.raises(BoundError):
            verify_filling_chain(cert, self.split)
