"""The acceptance suite: every release-gating property with its pinned
tolerance, runnable as a library (``run_all``) or through the CLI
(``bergtoep verify-all``).

Each criterion is a self-contained function returning a CriterionResult;
seeds are fixed constants so every numeric witness is reproducible.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .commutant import (
    analytic_test,
    extract_symbol,
    lemma4_check,
    prop4_operator,
    theorem2_equivalence,
    theorem2_residual,
)
from .multiindex import enumerate_multiindices, unit
from .psets import (
    Complement,
    Finite,
    Full,
    ProductWithFull,
    Translate,
    Union,
    divergence_probe,
    property_p,
    replay,
)
from .quadrature import QuadratureRule, RadialProfile, mc_ball_integral
from .specialfn import SpaceParams, d_coeff, d_coeff_axis, log_norm_constant, _log_d
from .symbols import MonomialCombo, SeparatelyRadialSymbol, monomial, omega, z_power
from .toeplitz import assemble, basis_symbol, commutator, operator_norm

__all__ = ["CriterionResult", "ALL_CRITERIA", "run_all"]


@dataclass
class CriterionResult:
    name: str
    passed: bool
    seconds: float
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.name} ({self.seconds:.2f}s)"


def _timed(fn):
    def wrapper() -> CriterionResult:
        t0 = time.perf_counter()
        name, passed, details = fn()
        return CriterionResult(
            name=name, passed=passed, seconds=time.perf_counter() - t0, details=details
        )

    wrapper.__name__ = fn.__name__
    return wrapper


@_timed
def criterion_1_cocycle():
    """d(m,k) d(m+k,l) = d(m,k+l) d(k,l), relative residual <= 1e-12."""
    worst = 0.0
    count = 0
    for n in (1, 2, 3):
        base = enumerate_multiindices(n, 4)
        for alpha in (-0.5, 0.0, 0.5, 1.0):
            for m, k, l in itertools.product(base, repeat=3):
                mk = tuple(a + b for a, b in zip(m, k))
                kl = tuple(a + b for a, b in zip(k, l))
                delta = (
                    _log_d(n, alpha, m, k)
                    + _log_d(n, alpha, mk, l)
                    - _log_d(n, alpha, m, kl)
                    - _log_d(n, alpha, k, l)
                )
                res = abs(math.expm1(delta))
                if res > worst:
                    worst = res
                count += 1
    passed = worst <= 1e-12
    return "1 cocycle identity of d(m,k)", passed, {"max_rel_residual": worst, "triples": count}


@_timed
def criterion_2_axis_closed_form():
    """d(m, delta_n) matches sqrt((n+a+1)/(n+|m|+a+1)) to 1e-13 relative."""
    worst = 0.0
    for n in (2, 3):
        for alpha in (0.0, 0.7):
            p = SpaceParams(n, alpha)
            dn = unit(n, n - 1)
            for head in enumerate_multiindices(n - 1, 20):
                m = head + (0,)
                general = d_coeff(p, m, dn)
                closed = d_coeff_axis(p, m)
                worst = max(worst, abs(general - closed) / closed)
    passed = worst <= 1e-13
    return "2 axis-shift coefficient closed form", passed, {"max_rel_dev": worst}


def _omega_integrand(p: SpaceParams, g: SeparatelyRadialSymbol, m):
    nm2 = math.exp(2.0 * log_norm_constant(p, m))

    def fn(z):
        out = g.evaluate(z) * nm2
        for j, mj in enumerate(m):
            if mj:
                out = out * np.abs(z[:, j]) ** (2 * mj)
        return out

    return fn


# (params, symbol, m, pinned closed-form value or None)
def _omega_cases():
    h_one = RadialProfile.constant(1.0)
    h_t2 = RadialProfile.even_poly([0.0, 1.0])
    h_1mt2 = RadialProfile.even_poly([1.0, -1.0])
    h_mix = RadialProfile.even_poly([0.5, 0.0, 0.25])
    h_pow = RadialProfile.power(1.0)
    return [
        (SpaceParams(2, 0.0), SeparatelyRadialSymbol(2, (1.0, 0.0), h_one), (0, 0), 1.0 / 3.0),
        (SpaceParams(1, 0.0), SeparatelyRadialSymbol(1, (0.0,), h_t2), (0,), 0.5),
        (SpaceParams(1, 0.0), SeparatelyRadialSymbol(1, (0.0,), h_t2), (3,), 0.8),
        (SpaceParams(2, 0.5), SeparatelyRadialSymbol(2, (0.0, 0.0), h_1mt2), (1, 1), None),
        (SpaceParams(2, -0.3), SeparatelyRadialSymbol(2, (2.0, 1.0), RadialProfile.constant(2.0)), (1, 0), None),
        (SpaceParams(3, 0.0), SeparatelyRadialSymbol(3, (1.0, 0.0, 0.0), h_one), (0, 1, 2), None),
        (SpaceParams(1, 1.0), SeparatelyRadialSymbol(1, (0.0,), h_mix), (2,), None),
        (SpaceParams(2, 0.0), SeparatelyRadialSymbol(2, (0.0, 0.0), h_pow), (1, 0), None),
        (SpaceParams(3, 0.5), SeparatelyRadialSymbol(3, (0.0, 0.0, 0.0), RadialProfile.even_poly([1.0, 1.0])), (1, 1, 0), None),
        (SpaceParams(2, 0.0), SeparatelyRadialSymbol(2, (0.0, 1.5), h_t2), (2, 0), None),
    ]


@_timed
def criterion_3_omega_consistency():
    """Closed-form omega vs Gauss-Jacobi (<= 1e-10 rel, even-poly h) and
    vs the seeded Monte-Carlo oracle (within 4 standard errors)."""
    worst_gj = 0.0
    worst_sigma = 0.0
    pin_ok = True
    for i, (p, g, m, pinned) in enumerate(_omega_cases()):
        closed = omega(p, g, m)
        if pinned is not None:
            pin_ok &= abs(closed - pinned) <= 1e-12
        if g.h.kind in ("constant", "even_poly"):
            rule = QuadratureRule.gauss_jacobi(p.alpha, 64)
            quad = omega(p, g, m, method="quadrature", rule=rule)
            worst_gj = max(worst_gj, abs(closed - quad) / abs(closed))
        est = mc_ball_integral(p, _omega_integrand(p, g, m), samples=200_000, seed=9000 + i)
        sigma = abs(est.value - closed) / est.stderr if est.stderr > 0 else math.inf
        worst_sigma = max(worst_sigma, sigma)
    passed = pin_ok and worst_gj <= 1e-10 and worst_sigma <= 4.0
    return (
        "3 omega eigenvalue consistency (closed / quadrature / Monte-Carlo)",
        passed,
        {"max_gj_rel_dev": worst_gj, "max_mc_sigmas": worst_sigma, "pinned_ok": pin_ok},
    )


@_timed
def criterion_4_commutation_positive():
    """f = z1 conj(z2) commutes with radial g = |z|^2: commutator entries
    <= 1e-12 on the valid block at D = 10, in under 5 s."""
    t0 = time.perf_counter()
    p = SpaceParams(2, 0.0)
    f = monomial(2, (1, 0), (0, 1))
    g = SeparatelyRadialSymbol.radial(2, RadialProfile.even_poly([0.0, 1.0]))
    C = commutator(assemble(p, f, 10), assemble(p, g, 10))
    worst = C.max_valid_entry()
    elapsed = time.perf_counter() - t0
    passed = worst <= 1e-12 and elapsed < 5.0
    return (
        "4 commutation of z1*conj(z2) with a radial symbol",
        passed,
        {"max_valid_entry": worst, "seconds_inner": elapsed},
    )


def _theorem2_corpus(n_cases: int, seed: int):
    """(f, g) pairs spanning both outcomes of the commutation dichotomy."""
    rng = np.random.default_rng(seed)
    h_choices = [RadialProfile.even_poly([0.0, 1.0]), RadialProfile.even_poly([1.0, -1.0])]
    s_choices = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (2.0, 0.0), (0.0, 0.5)]
    diag_indices = [(1, 0), (0, 1), (1, 1), (2, 0)]
    cases = []
    for i in range(n_cases):
        h = h_choices[rng.integers(len(h_choices))]
        s = s_choices[rng.integers(len(s_choices))]
        g = SeparatelyRadialSymbol(2, s, h)
        c1 = complex(rng.uniform(0.5, 1.5), rng.uniform(-0.5, 0.5))
        c2 = complex(rng.uniform(0.5, 1.5), rng.uniform(-0.5, 0.5))
        if i % 2 == 0:
            a1 = diag_indices[rng.integers(len(diag_indices))]
            f = monomial(2, a1, a1, c1)
            if s == (0.0, 0.0):
                f = f + monomial(2, (1, 0), (0, 1), c2)  # circular, allowed for radial g
            else:
                a2 = diag_indices[rng.integers(len(diag_indices))]
                f = f + monomial(2, a2, a2, c2)
            expected = True
        else:
            kind = rng.integers(3)
            if kind == 0 or s == (0.0, 0.0):
                f = z_power(2, (1, 0), c1)  # breaks circularity
            elif kind == 1:
                f = monomial(2, (1, 0), (0, 1), c1)  # breaks the weighted axis
            else:
                f = z_power(2, (2, 1), c1) + monomial(2, (1, 1), (1, 1), c2)
            expected = False
        cases.append((f, g, expected))
    return cases


@_timed
def criterion_5_theorem2_dichotomy():
    """The commutation dichotomy for g = |z1|^2 (1 - |z|^2) plus agreement
    of numeric and symbolic verdicts on a 30-case seeded corpus."""
    p = SpaceParams(2, 0.0)
    g = SeparatelyRadialSymbol(2, (1.0, 0.0), RadialProfile.even_poly([1.0, -1.0]))
    diag = theorem2_residual(p, monomial(2, (1, 0), (1, 0)), g, 8)
    cross = theorem2_residual(p, monomial(2, (1, 0), (0, 1)), g, 8)
    witness_ok = (
        cross.residual > 1e-4
        and cross.witness_l == (1, -1)
        and cross.witness_m == (0, 1)
        and abs(abs(cross.witness_entry) - 0.25) <= 1e-12
    )
    corpus_ok = True
    disagreements = []
    for f, gg, expected in _theorem2_corpus(30, seed=505):
        eq = theorem2_equivalence(p, f, gg, D=6, tol=1e-8)
        if not eq.agree or eq.predicate_pass != expected:
            corpus_ok = False
            disagreements.append((f.terms, gg.s, eq.residual))
    passed = diag.residual <= 1e-12 and witness_ok and corpus_ok
    return (
        "5 commutation dichotomy for separately-radial symbols",
        passed,
        {
            "diagonal_residual": diag.residual,
            "cross_residual": cross.residual,
            "witness": {
                "l": cross.witness_l,
                "m": cross.witness_m,
                "entry_abs": abs(cross.witness_entry),
            },
            "corpus_ok": corpus_ok,
            "disagreements": disagreements,
        },
    )


@_timed
def criterion_6_counterexample_operator():
    """All three claims about the compact counterexample at n=2, alpha=0."""
    p = SpaceParams(2, 0.0)
    decay = [d_coeff(p, (j, 0), (0, 1)) for j in range(41)]
    monotone = all(a > b for a, b in zip(decay, decay[1:]))
    target = math.sqrt(3.0 / 43.0)
    decay_ok = monotone and abs(decay[40] - target) <= 1e-12
    S = prop4_operator(p, 8)
    C1 = commutator(S, assemble(p, basis_symbol(p, (1, 0)), 8))
    C2 = commutator(S, assemble(p, basis_symbol(p, (0, 1)), 8))
    commute_res = C1.max_valid_entry()
    witness = abs(C2.entry((0, 0), (0, 2)))
    witness_ok = abs(witness - math.sqrt(1.5)) <= 1e-12
    passed = decay_ok and commute_res <= 1e-12 and witness_ok
    return (
        "6 counterexample operator: decay, commuting shifts, failing shift",
        passed,
        {
            "decay_monotone": monotone,
            "decay_at_40": decay[40],
            "commute_residual": commute_res,
            "witness_entry": witness,
        },
    )


def _random_analytic_poly(rng, n: int, deg: int) -> MonomialCombo:
    terms = []
    for a in enumerate_multiindices(n, deg):
        c = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        terms.append((a, (0,) * n, c))
    return MonomialCombo.from_terms(n, terms)


@_timed
def criterion_7_analytic_roundtrip():
    """20 seeded analytic polynomials pass the matrix test and round-trip
    their coefficients; a 1e-3 perturbation flips the verdict at 1e-6."""
    p = SpaceParams(2, 0.0)
    rng = np.random.default_rng(707)
    worst_coeff = 0.0
    all_pass = True
    first_op = None
    for _ in range(20):
        f = _random_analytic_poly(rng, 2, 3)
        S = assemble(p, f, 8)
        if first_op is None:
            first_op = S
        report = analytic_test(S, 1e-10)
        all_pass &= report.verdict
        recovered = {a: c for a, b, c in extract_symbol(S, 1e-10).terms}
        original = {a: c for a, b, c in f.terms}
        for a in set(original) | set(recovered):
            worst_coeff = max(worst_coeff, abs(original.get(a, 0) - recovered.get(a, 0)))
    clean = analytic_test(first_op, 1e-6).verdict
    perturbed = first_op.with_added_entry((1, 0), (0, 1), 1e-3)
    flipped = not analytic_test(perturbed, 1e-6).verdict
    passed = all_pass and worst_coeff <= 1e-10 and clean and flipped
    return (
        "7 analytic-matrix test round trip and perturbation sensitivity",
        passed,
        {"max_coeff_dev": worst_coeff, "all_pass": all_pass, "perturbation_flips": flipped},
    )


@_timed
def criterion_8_shift_invariance():
    """The shift-invariance relation: <= 1e-12 for analytic-polynomial
    operators, > 0.1 for the counterexample with the failing shift."""
    p = SpaceParams(2, 0.0)
    rng = np.random.default_rng(808)
    worst = 0.0
    for _ in range(5):
        S = assemble(p, _random_analytic_poly(rng, 2, 3), 8)
        for l in ((1, 0), (0, 1), (1, 1)):
            worst = max(worst, lemma4_check(S, l).max_residual)
    bad = lemma4_check(prop4_operator(p, 8), (0, 1)).max_residual
    passed = worst <= 1e-12 and bad > 0.1
    return (
        "8 shift-invariance relation for matrix entries",
        passed,
        {"max_analytic_residual": worst, "counterexample_residual": bad},
    )


@_timed
def criterion_9_norm_trend():
    """||T_z P_D|| on the disk: nondecreasing in D, <= 1, sqrt(41/42) at D=40."""
    p = SpaceParams(1, 0.0)
    f = z_power(1, (1,))
    norms = [operator_norm(assemble(p, f, D)) for D in (5, 10, 20, 40)]
    nondecreasing = all(a <= b + 1e-15 for a, b in zip(norms, norms[1:]))
    bounded = all(v <= 1.0 + 1e-12 for v in norms)
    target = math.sqrt(41.0 / 42.0)
    final_ok = norms[-1] >= 0.95 and abs(norms[-1] - target) <= 1e-12
    passed = nondecreasing and bounded and final_ok
    return "9 prefix-norm trend for the coordinate shift", passed, {"norms": norms}


def _random_set_expr(rng, n: int, depth: int):
    if depth == 0 or rng.random() < 0.3:
        if rng.random() < 0.75:
            count = int(rng.integers(0, 5))
            members = {tuple(int(rng.integers(1, 7)) for _ in range(n)) for _ in range(count)}
            return Finite.of(n, members)
        return Full(n)
    kinds = ["union", "translate", "complement"] + (["product"] if n >= 2 else [])
    kind = kinds[rng.integers(len(kinds))]
    if kind == "union":
        return Union(_random_set_expr(rng, n, depth - 1), _random_set_expr(rng, n, depth - 1))
    if kind == "translate":
        offset = tuple(int(rng.integers(-2, 3)) for _ in range(n))
        return Translate(_random_set_expr(rng, n, depth - 1), offset)
    if kind == "product":
        axis = int(rng.integers(n))
        return ProductWithFull(_random_set_expr(rng, n - 1, depth - 1), axis)
    return Complement(_random_set_expr(rng, n, depth - 1))


@_timed
def criterion_10_property_p_engine():
    """1000 seeded random set expressions: yes-traces replay, the closure
    rules hold, the full grid is never sparse."""
    rng = np.random.default_rng(1010)
    yes_by_dim: dict[int, list] = {1: [], 2: [], 3: []}
    replay_ok = True
    statuses = {"yes": 0, "no": 0, "unknown": 0}
    for i in range(1000):
        n = 1 + i % 3
        e = _random_set_expr(rng, n, depth=4)
        v = property_p(e)
        statuses[v.status] += 1
        if v.status == "yes":
            if replay(e, v.trace) != "yes":
                replay_ok = False
            yes_by_dim[n].append(e)
    rules_ok = True
    for n, exprs in yes_by_dim.items():
        for a, b in zip(exprs[:20], exprs[1:21]):
            rules_ok &= property_p(Union(a, b)).status == "yes"
        for a in exprs[:20]:
            rules_ok &= property_p(Translate(a, (1,) * n)).status == "yes"
            rules_ok &= property_p(Complement(a)).status == "no"
            rules_ok &= property_p(ProductWithFull(a, 0)).status == "yes"
    full_ok = all(property_p(Full(n)).status == "no" for n in (1, 2, 3))
    probe = divergence_probe(Full(2), 0, (1,), 30)
    probe_ok = probe > 3.0
    passed = replay_ok and rules_ok and full_ok and probe_ok
    return (
        "10 sparseness rule engine: traces, closure rules, full grid",
        passed,
        {"statuses": statuses, "replay_ok": replay_ok, "rules_ok": rules_ok,
         "full_grid_probe": probe},
    )


ALL_CRITERIA = [
    criterion_1_cocycle,
    criterion_2_axis_closed_form,
    criterion_3_omega_consistency,
    criterion_4_commutation_positive,
    criterion_5_theorem2_dichotomy,
    criterion_6_counterexample_operator,
    criterion_7_analytic_roundtrip,
    criterion_8_shift_invariance,
    criterion_9_norm_trend,
    criterion_10_property_p_engine,
]


def run_all(printer=None) -> list[CriterionResult]:
    results = []
    for fn in ALL_CRITERIA:
        result = fn()
        results.append(result)
        if printer is not None:
            printer(result.line())
    return results
