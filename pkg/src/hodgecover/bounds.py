"""Catalogue of the explicit inequalities tying spectral gaps, covering
geometry, and filling complexity together, plus an evaluator.

Each entry substitutes named parameters into a closed-form right-hand side.
Constants that no computation here can produce (leading constants of
asymptotic statements) are user parameters with explicit provenance; the
evaluator never invents them.  Verdicts near equality are flagged marginal
instead of being decided by rounding noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .fillings import FillingCertificate
from .hypgeom import ball_volume, moser_constant
from .spectra import SpectralSplit, lambda1_split
from .whitney import InnerProduct, whitney_mass_matrix


class BoundError(ValueError):
    pass


MARGINAL_REL_GAP = 1e-9


@dataclass(frozen=True)
class BoundEntry:
    id: str
    description: str
    params: tuple[tuple[str, str], ...]  # (name, source in {user, computed})
    direction: str                       # "le": lhs <= rhs, "ge": lhs >= rhs
    lhs: object                          # params -> float | None
    rhs: object                          # params -> float

    def param_names(self):
        return [n for n, _src in self.params]


@dataclass
class BoundReport:
    id: str
    values: dict
    lhs: float | None
    rhs: float
    direction: str
    verdict: str                         # holds | fails | marginal | not-applicable
    notes: list[str] = field(default_factory=list)


def _verdict(lhs, rhs, direction):
    if lhs is None:
        return "not-applicable"
    scale = max(abs(lhs), abs(rhs), 1e-300)
    if abs(lhs - rhs) < MARGINAL_REL_GAP * scale:
        return "marginal"
    ok = lhs <= rhs if direction == "le" else lhs >= rhs
    return "holds" if ok else "fails"


def _opt(p, name):
    v = p.get(name)
    return None if v is None else float(v)


def _inv_sqrt_lambda(p):
    lam = _opt(p, "lam")
    return None if lam is None else 1.0 / math.sqrt(lam)


_CATALOGUE: dict[str, BoundEntry] = {}


def _entry(id, description, params, direction, lhs, rhs):
    _CATALOGUE[id] = BoundEntry(id, description, tuple(params), direction,
                                lhs, rhs)


_entry(
    "upper_b0",
    "spectral gap upper bound from a rationally null geodesic family",
    [("lam", "computed"), ("C", "user"), ("V", "computed"), ("D", "user"),
     ("sup_sarea_over_length", "user"), ("vol", "computed")],
    "le",
    _inv_sqrt_lambda,
    lambda p: p["C"] ** 2 * (2 * math.pi * p["V"]
                             + p["D"] * p["sup_sarea_over_length"])
    + p["C"] / 2 * math.sqrt(p["vol"]))

_entry(
    "upper_b0_body",
    "gap upper bound from a fundamental domain boundary",
    [("lam", "computed"), ("C", "user"), ("vol_boundary", "computed"),
     ("sup_sarea", "user"), ("vol", "computed")],
    "le",
    _inv_sqrt_lambda,
    lambda p: p["C"] ** 2 * (3 * math.pi * p["vol_boundary"] + p["sup_sarea"])
    + p["C"] / 2 * math.sqrt(p["vol"]))

_entry(
    "upper_b1",
    "gap upper bound with harmonic correction and volume regulator term",
    [("lam", "computed"), ("E", "user"), ("C", "user"), ("V", "computed"),
     ("D", "user"), ("vol", "computed"), ("delta", "user"),
     ("sup_sarea", "user")],
    "le",
    lambda p: None if _opt(p, "lam") is None
    else (1.0 - p["E"]) / math.sqrt(p["lam"]),
    lambda p: p["C"] ** 2 * (3 * math.pi * p["V"]
                             + 2 * math.sqrt(2) * p["D"] ** 2
                             * p["vol"] ** (p["delta"] + 0.5) * p["sup_sarea"]
                             + 5 * math.pi)
    + p["C"] / 2 * math.sqrt(p["vol"]))

_entry(
    "upper_general",
    "gap upper bound with damped cycle term, any first betti number",
    [("lam", "computed"), ("C", "user"), ("V", "computed"), ("vol", "computed"),
     ("f_norm", "computed"), ("h_norm", "computed"), ("sup_sarea", "user"),
     ("b1", "computed")],
    "le",
    _inv_sqrt_lambda,
    lambda p: 3 * math.pi * p["C"] ** 2 * p["V"]
    + p["C"] / 2 * math.sqrt(p["vol"])
    + p["C"] ** 2
    * (p["f_norm"] / math.sqrt(p["f_norm"] ** 2 + p["h_norm"] ** 2))
    * (p["sup_sarea"] + (5 * p["b1"] + 2) * math.pi))

_entry(
    "harmonic_subtraction",
    "period bound after subtracting the harmonic part of a primitive",
    [("lhs", "user"), ("df_sup", "computed"), ("sarea", "user"),
     ("b1", "computed")],
    "le",
    lambda p: _opt(p, "lhs"),
    lambda p: p["df_sup"] * (p["sarea"] + 5 * p["b1"] * math.pi))

_entry(
    "lower_whitney",
    "filling complexity controlled by the coexact Whitney gap",
    [("lhs", "user"), ("W", "user"), ("vol", "computed"),
     ("diam", "computed"), ("lambda1_whitney", "computed")],
    "le",
    lambda p: _opt(p, "lhs"),
    lambda p: p["W"] * p["vol"] * p["diam"] ** 2 / p["lambda1_whitney"])

_entry(
    "dichotomy",
    "either the Whitney gap is large or it controls the combinatorial gap",
    [("lambda1_whitney", "computed"), ("lambda1_comb", "computed"),
     ("G", "user"), ("C", "user"), ("vol", "computed")],
    "ge",
    lambda p: _opt(p, "lambda1_whitney"),
    lambda p: 1.0 / (4 * p["G"] ** 2 * p["C"] ** 2 * p["vol"]))

_entry(
    "tree_area",
    "boundary volume of a tree-type domain vs the base domain",
    [("lhs", "computed"), ("vol_boundary_base", "user"),
     ("vol", "computed"), ("vol_base", "user")],
    "le",
    lambda p: _opt(p, "lhs"),
    lambda p: p["vol_boundary_base"] * p["vol"] / p["vol_base"])

_entry(
    "tree_diam",
    "diameter of a tree-type domain vs the tree diameter",
    [("lhs", "computed"), ("diam_base_domain", "user"),
     ("diam_tree", "computed")],
    "le",
    lambda p: _opt(p, "lhs"),
    lambda p: p["diam_base_domain"] * (p["diam_tree"] + 1))

_entry(
    "comb_ball_diam",
    "dual-graph distance vs metric distance through ball covers",
    [("lhs", "computed"), ("dist", "user"), ("r0", "user"), ("k0", "user")],
    "le",
    lambda p: _opt(p, "lhs"),
    lambda p: p["dist"] / p["r0"] * 2 * p["k0"] + 2 * p["k0"])

_entry(
    "tree_diam_M",
    "tree-type domain diameter vs the ambient diameter",
    [("lhs", "computed"), ("diam_base_domain", "user"), ("k0", "user"),
     ("r0", "user"), ("diam", "computed")],
    "le",
    lambda p: _opt(p, "lhs"),
    lambda p: p["diam_base_domain"]
    * (4 * p["k0"] / p["r0"] * p["diam"] + 4 * p["k0"] + 1))

_entry(
    "dirichlet_diam",
    "diameter of a distance fundamental domain",
    [("lhs", "computed"), ("diam", "computed")],
    "le",
    lambda p: _opt(p, "lhs"),
    lambda p: 2 * p["diam"])

_entry(
    "dirichlet_boundary",
    "boundary volume of a distance fundamental domain",
    [("lhs", "computed"), ("E_n", "user"), ("n", "user"),
     ("diam", "computed")],
    "le",
    lambda p: _opt(p, "lhs"),
    lambda p: p["E_n"] * math.exp((2 * p["n"] - 3) * 4 * p["diam"]))

_entry(
    "surface_injectivity",
    "injectivity radius of an immersed bounding surface",
    [("lhs", "computed"), ("mu1", "user"), ("inj", "user")],
    "ge",
    lambda p: _opt(p, "lhs"),
    lambda p: min(1.0 / (2 * p["mu1"]), p["inj"]))

_entry(
    "surface_triangulation_count",
    "triangle count of a controlled surface triangulation via ball packing",
    [("lhs", "computed"), ("vol_surface", "user"), ("mu", "user"),
     ("curvature", "user")],
    "le",
    lambda p: _opt(p, "lhs"),
    lambda p: p["vol_surface"] / ball_volume(2, p["mu"] / 5, 1.0)
    * ball_volume(2, p["mu"], p["curvature"]) / ball_volume(2, p["mu"] / 5, 1.0))

_entry(
    "intersection_bound",
    "intersections of a geodesic with a controlled triangulation",
    [("lhs", "computed"), ("triangle_count", "user"), ("length", "computed"),
     ("mu", "user")],
    "le",
    lambda p: _opt(p, "lhs"),
    lambda p: p["triangle_count"] * p["length"] / (6 * p["mu"] / 5))

_entry(
    "free_part_length",
    "length of a homologically adjusted loop via lattice reduction",
    [("lhs", "computed"), ("A", "user"), ("D", "user"), ("b1", "computed")],
    "le",
    lambda p: _opt(p, "lhs"),
    lambda p: (p["A"] * p["D"] * math.sqrt(p["b1"])) ** p["b1"]
    * p["D"] * p["b1"])

_entry(
    "regulator_independent",
    "regulator-free form of the harmonic correction term",
    [("lhs", "user"), ("D", "user"), ("vol", "computed"), ("delta", "user"),
     ("sup_sarea", "user")],
    "le",
    lambda p: _opt(p, "lhs"),
    lambda p: 2 * math.sqrt(2) * p["D"] ** 2
    * p["vol"] ** (p["delta"] + 0.5) * p["sup_sarea"])

_entry(
    "exp_gap",
    "at most exponentially small coexact gap in the covolume",
    [("lambda1", "computed"), ("H", "user"), ("vol", "computed")],
    "le",
    lambda p: None if _opt(p, "lambda1") is None else 1.0 / p["lambda1"],
    lambda p: math.exp(p["H"] * p["vol"]))

_entry(
    "high_dim_scl",
    "normalized filling complexity vs volume and diameter",
    [("lhs", "computed"), ("K", "user"), ("vol", "computed"), ("C", "user"),
     ("diam", "computed")],
    "le",
    lambda p: _opt(p, "lhs"),
    lambda p: p["K"] * p["vol"] ** (1 + p["C"] / 2) * p["diam"])

_entry(
    "retraction",
    "filling complexity pulled back through a degree-d retraction",
    [("lhs", "computed"), ("K", "user"), ("d", "user"), ("vol_target", "user"),
     ("diam_target", "user"), ("lambda1_target", "user")],
    "le",
    lambda p: _opt(p, "lhs"),
    lambda p: p["K"] * p["d"] ** 2 * p["vol_target"] * p["diam_target"]
    * math.sqrt(1.0 / p["lambda1_target"]))

_entry(
    "lambda0_lower",
    "function-level gap lower bound from the sup-norm iteration constant",
    [("lhs", "computed"), ("n", "user"), ("inj", "computed"),
     ("lam_probe", "user"), ("diam", "computed"), ("vol", "computed")],
    "ge",
    lambda p: _opt(p, "lhs"),
    lambda p: moser_constant(int(p["n"]), 1, p["inj"] / 2,
                             p["lam_probe"]).value ** -2
    / (p["diam"] ** 2 * p["vol"]))


def catalogue_ids() -> list[str]:
    return sorted(_CATALOGUE)


def get_entry(id: str) -> BoundEntry:
    if id not in _CATALOGUE:
        raise BoundError(f"unknown bound id {id!r}")
    return _CATALOGUE[id]


def evaluate_bound(id: str, params: dict) -> BoundReport:
    """Substitute params into the catalogue entry and compare both sides."""
    entry = get_entry(id)
    sources = dict(entry.params)
    values = {}
    for name, value in params.items():
        if name not in sources:
            raise BoundError(f"bound {id} has no parameter {name!r}")
        values[name] = {"value": value, "source": sources[name]}
    try:
        rhs = float(entry.rhs(params))
        lhs = entry.lhs(params)
    except KeyError as exc:
        raise BoundError(f"bound {id} missing parameter {exc.args[0]!r}")
    lhs = None if lhs is None else float(lhs)
    verdict = _verdict(lhs, rhs, entry.direction)
    notes = []
    if id == "dichotomy":
        return _dichotomy_report(params, values)
    if lhs is None:
        notes.append("left side not supplied; right side reported only")
    return BoundReport(id, values, lhs, rhs, entry.direction, verdict, notes)


def _dichotomy_report(params: dict, values: dict) -> BoundReport:
    lam_w = float(params["lambda1_whitney"])
    lam_c = float(params["lambda1_comb"])
    G, C, vol = (float(params[k]) for k in ("G", "C", "vol"))
    alt1_rhs = 1.0 / (4 * G ** 2 * C ** 2 * vol)
    alt2_rhs = 4 * G ** 2 * vol * lam_w
    v1 = _verdict(lam_w, alt1_rhs, "ge")
    v2 = _verdict(lam_c, alt2_rhs, "le")
    notes = [f"alternative 1 (gap not small): {v1}",
             f"alternative 2 (gap controls combinatorial gap): {v2}",
             "constants G, C are user-supplied empirical values"]
    if "marginal" in (v1, v2) and "holds" not in (v1, v2):
        verdict = "marginal"
    elif "holds" in (v1, v2):
        verdict = "holds"
    else:
        verdict = "fails"
    return BoundReport("dichotomy", values, lam_w, alt1_rhs, "ge",
                       verdict, notes)


def check_dichotomy(K, geometry, constants: dict) -> BoundReport:
    """Run the degree-1 spectra in both inner products and test whether
    either alternative of the gap dichotomy holds with the given constants."""
    n_by_deg = {q: K.n_cells(q) for q in range(K.dim + 1)}
    comb = {q: InnerProduct.identity(q, n_by_deg[q]) for q in n_by_deg}
    whit = {q: whitney_mass_matrix(K, geometry, q) for q in n_by_deg}
    split_c = lambda1_split(K, 1, comb)
    split_w = lambda1_split(K, 1, whit)
    if split_w.lambda1_dstar is None or split_c.lambda1_dstar is None:
        raise BoundError("no positive coexact eigenvalue in degree 1")
    params = {
        "lambda1_whitney": split_w.lambda1_dstar,
        "lambda1_comb": split_c.lambda1_dstar,
        "G": float(constants["G"]),
        "C": float(constants["C"]),
        "vol": geometry.total_volume(),
    }
    values = {k: {"value": v,
                  "source": "user" if k in ("G", "C") else "computed"}
              for k, v in params.items()}
    return _dichotomy_report(params, values)


def verify_filling_chain(cert: FillingCertificate,
                         split: SpectralSplit) -> BoundReport:
    """Check a filling certificate against the variational gap inequality:
    |g|^2 <= (1+delta)/lambda1_dstar * |f|^2_dual, and the consistency of the
    Euler characteristic bound with the cleared-denominator 1-norm."""
    if split.degree != 1:
        raise BoundError("filling verification needs the degree-1 split")
    f = cert.f
    if f.is_zero():
        return BoundReport("filling_chain", {}, None, 0.0, "le",
                           "not-applicable", ["zero cycle"])
    if split.lambda1_dstar is None:
        raise BoundError("no positive coexact eigenvalue")
    if cert.inner == "comb":
        norm_f_dual = math.sqrt(sum(c * c for c in f.coefficients))
        norm_g = math.sqrt(float(sum(c * c for c in cert.g)))
    else:
        norm_f_dual = None
        norm_g = cert.norm_g
    if norm_f_dual is None:
        raise BoundError("whitney-side verification needs the dual norm; "
                         "supply a comb certificate or extend the report")
    lhs = norm_g ** 2
    rhs = (1.0 + cert.delta) / split.lambda1_dstar * norm_f_dual ** 2
    notes = []
    one_norm = sum(abs(c) * cert.m for c in cert.g)
    if 4 * one_norm != cert.chi_bound:
        return BoundReport("filling_chain", {}, lhs, rhs, "le", "fails",
                           ["chi bound inconsistent with the 1-norm"])
    verdict = _verdict(lhs, rhs, "le")
    if verdict == "marginal":
        verdict = "holds"
        notes.append("equality within tolerance (extremal cycle)")
    values = {"norm_g": {"value": norm_g, "source": "computed"},
              "norm_f_dual": {"value": norm_f_dual, "source": "computed"},
              "lambda1_dstar": {"value": split.lambda1_dstar,
                                "source": "computed"},
              "delta": {"value": cert.delta, "source": "computed"}}
    return BoundReport("filling_chain", values, lhs, rhs, "le", verdict, notes)
