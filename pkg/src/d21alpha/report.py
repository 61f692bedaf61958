"""Check runners shared by the CLI and the acceptance suite.

Every runner returns a plain dict ``{"name", "pass", "failures", ...}`` whose
values are JSON-ready (scalars are rendered with ``Scalar.to_str``).
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from . import algebra, models, pairing
from . import segal_bargmann as sb
from .models import Character, ExcludedParameterError, Quotient, UnsupportedQuotientError
from .scalars import A, Scalar
from .superpoly import SuperPolynomial

SCHEMA_VERSION = 1


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    alpha: Scalar = A
    lam: str = "alpha"
    degree: int = 3
    max_degree: int = 4
    max_k: int = 8
    seed: int = 0
    sigma: tuple = None
    extra: dict = field(default_factory=dict)

    def character(self):
        if self.lam == "zero-mode":
            return Character.zero_mode()
        try:
            return Character.for_lambda(self.lam, self.alpha)
        except ExcludedParameterError as exc:
            raise UsageError(str(exc)) from exc

    def quotient_character(self):
        """The character, rejecting combinations that have no quotient."""
        chi = self.character()
        try:
            Quotient(chi)
        except (UnsupportedQuotientError, ExcludedParameterError) as exc:
            raise UsageError(str(exc)) from exc
        return chi

    def parameters(self):
        out = {"alpha": self.alpha.to_str(), "lambda": self.lam}
        out.update(self.extra)
        return out


def parse_alpha(text):
    if text in ("symbolic", "a"):
        return A
    try:
        return Scalar(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--alpha must be 'symbolic' or a rational p/q, got {text!r}") from exc


def jsonable(x):
    if isinstance(x, Scalar):
        return x.to_str()
    if isinstance(x, SuperPolynomial):
        return x.to_str()
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    return str(x)


def _result(name, failures, **info):
    out = {"name": name, "pass": not failures, "failures": jsonable(failures)}
    out.update({k: jsonable(v) for k, v in info.items()})
    return out


# ---------------------------------------------------------------------------
# runners


def run_jacobi(cfg):
    if cfg.sigma is not None:
        table = algebra.build_gamma(*[Scalar(Fraction(s)) for s in cfg.sigma])
        label = "gamma(" + ",".join(str(s) for s in cfg.sigma) + ")"
    else:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", algebra.DegenerateParameterWarning)
            table = algebra.build_d21a(cfg.alpha)
        label = "D(2,1;alpha)"
    count, bad = algebra.check_super_jacobi(table)
    return [_result("super-jacobi", bad,
                    algebra=label, triples=count),
            _result("super-antisymmetry", algebra.check_super_antisymmetry(table))]


def run_jordan(cfg):
    return [_result("jordan-identity", algebra.check_jordan_identity(cfg.alpha)),
            _result("g-plus-product", algebra.check_g_plus_jordan(cfg.alpha))]


def run_tkk(cfg):
    mode = "at_minus_one" if cfg.alpha == -1 else "generic"
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", algebra.DegenerateParameterWarning)
        r = algebra.check_tkk_isomorphism(cfg.alpha, mode)
    fails = [list(f[:2]) for f in r["failures"]]
    if r["rank"] != 17:
        fails.append(["rank", r["rank"]])
    if not (r["parity_ok"] and r["grading_ok"]):
        fails.append(["parity-or-grading"])
    out = [_result("tkk-isomorphism", fails, pairs=r["pairs"], mode=mode)]
    if mode == "at_minus_one":
        unit = algebra.check_tkk_isomorphism(cfg.alpha, mode, unit_d_scaling=True)
        out[0]["unit_scaling_failures"] = len(unit["failures"])
    return out


def run_rep(cfg):
    chi = cfg.character()
    out = []
    for model in ("pi", "rho"):
        pairs, bad = models.check_representation(chi, model)
        out.append(_result(f"representation-{model}", bad, pairs=pairs))
    out.append(_result("bessel-supercommute", models.check_bessel_supercommute(chi)))
    if chi.branch in ("alpha", "one"):
        chi = cfg.quotient_character()
        out.append(_result("ideal-invariance", models.check_I_invariance(chi, cfg.max_degree),
                           max_degree=cfg.max_degree))
    return out


def run_skew(cfg):
    chi = cfg.quotient_character()
    return [_result("skew-supersymmetry", pairing.check_skew_supersymmetry(chi, cfg.max_degree),
                    max_degree=cfg.max_degree),
            _result("superhermitian", pairing.check_superhermitian(chi, cfg.max_degree))]


def run_gram(cfg, with_det=False):
    chi = cfg.quotient_character()
    k = cfg.degree
    g = pairing.gram(chi, k)
    info = {"degree": k, "matrix": g}
    fails = []
    try:
        expected = pairing.expected_gram(chi, k)
    except ExcludedParameterError:
        expected = None
    if expected is not None and g != expected:
        fails.append(["closed-form mismatch"])
    if with_det:
        d = pairing.gram_determinant(chi, k)
        info["determinant"] = d
        info["degenerate"] = not d
    return [_result("gram", fails, **info)]


def run_kernel(cfg):
    chi = cfg.quotient_character()
    return [_result("reproducing-kernel", pairing.check_reproducing(chi, cfg.max_degree),
                    max_degree=cfg.max_degree),
            _result("kernel-series", pairing.check_kernel_series(chi, cfg.max_degree))]


def run_gk(cfg):
    chi = cfg.quotient_character()
    dims = models.gk_growth(chi, cfg.max_k)
    expected = [1 + 4 * k for k in range(cfg.max_k + 1)]
    bad = [[k, d, e] for k, (d, e) in enumerate(zip(dims, expected)) if d != e]
    return [_result("gk-growth", bad, dimensions=dims)]


def run_decompose(cfg):
    chi = cfg.quotient_character()
    k = cfg.degree
    f = models.decompose_fock_level(chi, k)
    out = []
    if chi.mode == "at_minus_one":
        bad = [n for n in ("R_invariant", "k0_indecomposable", "odd_derivation_hits_R") if not f.get(n)]
        out.append(_result("fock-indecomposable", bad, k=k, k0_commutant_dimension=f["k0_commutant_dimension"]))
        return out
    bad = [n for n in ("H_invariant", "R_invariant", "H_plus_R_is_everything") if not f[n]]
    bad += [["table", n] for n in f.get("table_mismatches", [])]
    out.append(_result("fock-decomposition", bad, k=k, k_burnside_dimension=f["k_burnside_dimension"]))
    w = sb.decompose_w_level(chi, k)
    out.append(_result("w-decomposition", [n for n, v in w.items() if n != "k" and not v], k=k))
    return out


def run_sb(cfg, poly, direction):
    chi = cfg.quotient_character()
    if direction == "inverse":
        sb._check_generic(chi)
        w = sb.sb_inverse(chi, poly)
        return [_result("sb", [], direction=direction, output=w.to_json())]
    f = sb.sb_forward(chi, sb.WElement(sb.branch_tag(chi), poly))
    back = sb.sb_inverse(chi, f)
    fails = [] if back.poly == Quotient(chi).reduce(poly) else ["round trip"]
    return [_result("sb", fails, direction=direction, output=f.to_json(),
                    tag=sb.branch_tag(chi).to_json())]


def run_recurrences(cfg):
    return [_result("recurrences", sb.check_recurrences(cfg.max_k, cfg.alpha), max_k=cfg.max_k),
            _result("summation-lemma", sb.lemsum_check(4, 4, 12, cfg.alpha))]


def run_transform(cfg):
    """Cayley checks, closed forms, round trip, intertwining and form preservation."""
    chi = cfg.quotient_character()
    n = cfg.max_degree
    cay = sb.check_cayley(chi)
    out = [_result("cayley", [[k, v] for k, v in cay.items() if v]),
           _result("rho-plus-minus", [k for k, v in sb.check_rho_plus_minus(chi).items() if not v]),
           _result("closed-forms", sb.check_closed_forms(chi, n) + sb.check_monomial_powers(chi, n)),
           _result("round-trip", sb.check_round_trip(chi, n)),
           _result("intertwining", sb.check_intertwining(chi, n)),
           _result("form-preservation", [] if sb.check_form_preservation(chi, n) else ["congruence"])]
    return out


def run_random_intertwining(cfg, samples=10):
    """Seeded sweep: random F combinations of degree <= 3 under random basis elements."""
    chi = cfg.quotient_character()
    rng = random.Random(cfg.seed)
    q = Quotient(chi)
    pi_ops, rho_ops = models.schrodinger_table(chi), models.fock_table(chi)
    names = chi.tkk().names
    monos = q.full_basis(3)
    choices = [Scalar(c) for c in (-2, -1, 0, 1, 3)]
    bad = []
    for _ in range(samples):
        p = SuperPolynomial({m: rng.choice(choices) for m in monos})
        name = rng.choice(names)
        lhs = sb.sb_forward(chi, sb.act_on_w(chi, pi_ops[name], sb.sb_inverse(chi, p)))
        if lhs != q.reduce(rho_ops[name].apply(p)):
            bad.append([name, p.to_str()])
    return [_result("random-intertwining", bad, seed=cfg.seed, samples=samples)]


def run_all(cfg):
    """Every module's checks at moderate sizes."""
    results = []
    results += run_jacobi(RunConfig(alpha=cfg.alpha))
    results += run_jordan(cfg)
    results += run_tkk(cfg)
    for lam in ("alpha", "one"):
        sub = RunConfig(alpha=cfg.alpha, lam=lam, max_degree=min(cfg.max_degree, 4),
                        degree=cfg.degree, max_k=cfg.max_k, seed=cfg.seed)
        batch = (run_rep(sub) + run_skew(sub) + run_kernel(sub) + run_decompose(sub)
                 + run_transform(sub) + run_random_intertwining(sub))
        for r in batch:
            r["lambda"] = lam
            results.append(r)
    results += run_rep(RunConfig(alpha=cfg.alpha, lam="zero-mode"))
    results += run_recurrences(RunConfig(alpha=cfg.alpha, max_k=cfg.max_k))
    return results


def envelope(command, cfg, results):
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "parameters": cfg.parameters(),
        "seed": cfg.seed,
        "pass": all(r["pass"] for r in results),
        "checks": results,
    }
