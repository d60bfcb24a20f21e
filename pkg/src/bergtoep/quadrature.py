"""Integral oracles on the unit ball.

Two independent routes to every moment used downstream:

* ``radial_integral`` evaluates int_0^1 r^(w+S-1) h(r^(1/2)) (1-r)^alpha dr,
  the 1-D factor every separately-radial moment reduces to.  For profiles
  with a closed power-sum form this is a Beta-function sum; tabulated
  profiles go through a Gauss-Jacobi rule whose weight absorbs the
  (1-r)^alpha endpoint singularity.

* ``mc_ball_integral`` is a seeded Monte-Carlo integrator sampling the
  weighted measure nu_alpha directly (polar factorization), used as a
  provenance oracle for the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import betaincinv

from .multiindex import MultiIndex, total_degree
from .specialfn import (
    SpaceParams,
    log_gamma,
    log_multi_factorial,
)

__all__ = [
    "RadialProfile",
    "QuadratureRule",
    "radial_integral",
    "log_beta",
    "ball_monomial_integral",
    "sample_ball",
    "MCEstimate",
    "mc_ball_integral",
]


def log_beta(a: float, b: float) -> float:
    """ln B(a,b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a+b)."""
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b)


@dataclass(frozen=True)
class RadialProfile:
    """A bounded profile h on [0,1), the radial factor of a symbol.

    kind is one of:
      constant   h(t) = value
      power      h(t) = t^exponent, exponent >= 0
      even_poly  h(t) = sum_k coeffs[k] t^(2k)
      power_sum  h(t) = sum_i c_i t^(e_i)   (internal; arises from folding
                 modulus powers into h in dimension one)
      table      piecewise-linear interpolation of (abscissae, values)
                 samples on [0,1); fidelity to the intended h is the
                 caller's responsibility and quadrature against it is
                 only as good as the table

    `bound` is the stated sup-norm on [0,1), carried as metadata.
    """

    kind: str
    value: complex = 0.0
    exponent: float = 0.0
    coeffs: tuple[complex, ...] = ()
    terms: tuple[tuple[complex, float], ...] = ()
    abscissae: tuple[float, ...] = ()
    values: tuple[complex, ...] = ()
    bound: float = 0.0

    @classmethod
    def constant(cls, c: complex) -> "RadialProfile":
        return cls(kind="constant", value=complex(c), bound=abs(c))

    @classmethod
    def power(cls, exponent: float) -> "RadialProfile":
        if exponent < 0:
            raise ValueError(f"power profile needs exponent >= 0, got {exponent}")
        return cls(kind="power", exponent=float(exponent), bound=1.0)

    @classmethod
    def even_poly(cls, coeffs) -> "RadialProfile":
        cs = tuple(complex(c) for c in coeffs)
        return cls(kind="even_poly", coeffs=cs, bound=float(sum(abs(c) for c in cs)))

    @classmethod
    def power_sum(cls, terms) -> "RadialProfile":
        ts = tuple((complex(c), float(e)) for c, e in terms)
        if any(e < 0 for _, e in ts):
            raise ValueError("power_sum exponents must be >= 0")
        return cls(kind="power_sum", terms=ts, bound=float(sum(abs(c) for c, _ in ts)))

    @classmethod
    def table(cls, abscissae, values) -> "RadialProfile":
        ts = tuple(float(t) for t in abscissae)
        vs = tuple(complex(v) for v in values)
        if len(ts) != len(vs) or len(ts) < 2:
            raise ValueError("table profile needs >= 2 (abscissa, value) pairs")
        if any(not (0.0 <= t < 1.0) for t in ts):
            raise ValueError("table abscissae must lie in [0, 1)")
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("table abscissae must be strictly increasing")
        return cls(kind="table", abscissae=ts, values=vs, bound=float(max(abs(v) for v in vs)))

    @property
    def is_closed_form(self) -> bool:
        return self.kind in ("constant", "power", "even_poly", "power_sum")

    def power_terms(self) -> tuple[tuple[complex, float], ...]:
        """h(r^(1/2)) as sum_i c_i r^(e_i); only for closed-form kinds."""
        if self.kind == "constant":
            return ((self.value, 0.0),)
        if self.kind == "power":
            return ((1.0 + 0.0j, self.exponent / 2.0),)
        if self.kind == "even_poly":
            return tuple((c, float(k)) for k, c in enumerate(self.coeffs) if c != 0)
        if self.kind == "power_sum":
            return tuple((c, e / 2.0) for c, e in self.terms)
        raise ValueError(f"profile kind {self.kind!r} has no closed power form")

    def scaled_by_power(self, extra_exponent: float) -> "RadialProfile":
        """The profile t -> t^extra_exponent * h(t); used by the n=1 fold."""
        if extra_exponent == 0:
            return self
        if self.kind == "table":
            scaled = tuple(
                v * (t**extra_exponent) for t, v in zip(self.abscissae, self.values)
            )
            return RadialProfile.table(self.abscissae, scaled)
        return RadialProfile.power_sum(
            [(c, 2.0 * e + extra_exponent) for c, e in self.power_terms()]
        )

    def __call__(self, t):
        t = np.asarray(t)
        if self.kind == "constant":
            return np.broadcast_to(np.asarray(self.value), t.shape).copy()
        if self.kind == "power":
            return t.astype(complex) ** self.exponent
        if self.kind == "even_poly":
            out = np.zeros(t.shape, dtype=complex)
            for k, c in enumerate(self.coeffs):
                out += c * t ** (2 * k)
            return out
        if self.kind == "power_sum":
            out = np.zeros(t.shape, dtype=complex)
            for c, e in self.terms:
                out += c * t.astype(complex) ** e
            return out
        xs = np.asarray(self.abscissae)
        re = np.interp(t, xs, np.real(self.values))
        im = np.interp(t, xs, np.imag(self.values))
        return re + 1j * im


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Jacobi rule for int_0^1 f(r) (1-r)^alpha dr.

    Built by the Golub-Welsch eigenvalue method from the three-term
    recurrence of Jacobi (alpha, 0) polynomials on [-1,1], then mapped
    affinely to [0,1].  The endpoint factor (1-r)^alpha lives in the
    weights, so integrands never sample the singularity for alpha < 0.
    """

    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    alpha: float = 0.0

    @classmethod
    def gauss_jacobi(cls, alpha: float, npoints: int) -> "QuadratureRule":
        if not alpha > -1.0:
            raise ValueError(f"Jacobi weight needs alpha > -1, got {alpha}")
        if npoints < 1:
            raise ValueError("need at least one node")
        a = float(alpha)
        diag = np.empty(npoints)
        diag[0] = -a / (a + 2.0)
        if npoints > 1:
            k = np.arange(1, npoints, dtype=float)
            diag[1:] = -(a * a) / ((2 * k + a) * (2 * k + a + 2.0))
        off = np.empty(max(npoints - 1, 0))
        if npoints > 1:
            off[0] = math.sqrt(4.0 * (1.0 + a) / ((2.0 + a) ** 2 * (3.0 + a)))
        if npoints > 2:
            k = np.arange(2, npoints, dtype=float)
            off[1:] = np.sqrt(
                4.0 * k**2 * (k + a) ** 2
                / ((2 * k + a) ** 2 * (2 * k + a + 1.0) * (2 * k + a - 1.0))
            )
        x, v = eigh_tridiagonal(diag, off)
        mu0 = 2.0 ** (a + 1.0) / (a + 1.0)  # total mass of (1-x)^a on [-1,1]
        w = mu0 * v[0, :] ** 2
        nodes = 0.5 * (1.0 + x)
        weights = w * 2.0 ** (-a - 1.0)
        return cls(nodes=nodes, weights=weights, alpha=a)

    def integrate(self, fn) -> complex:
        return complex(np.sum(np.asarray(fn(self.nodes), dtype=complex) * self.weights))


def radial_integral(
    w: float,
    alpha: float,
    sigma_s: float,
    h: RadialProfile,
    *,
    rule: QuadratureRule | None = None,
    nodes: int = 64,
) -> complex:
    """int_0^1 r^(w + sigma_s - 1) h(r^(1/2)) (1-r)^alpha dr.

    Closed Beta-function sum whenever h has a power form; otherwise a
    Gauss-Jacobi rule is applied to the smooth factor.  Requires
    w + sigma_s >= 1 (the convergent range used by the eigenvalue
    transform H).
    """
    if not alpha > -1.0:
        raise ValueError(f"alpha must be > -1, got {alpha}")
    if sigma_s < 0:
        raise ValueError(f"sigma_s must be >= 0, got {sigma_s}")
    if w + sigma_s < 1.0:
        raise ValueError(f"need w + sigma_s >= 1, got {w + sigma_s}")
    if h.is_closed_form:
        total = 0.0 + 0.0j
        for c, e in h.power_terms():
            total += c * math.exp(log_beta(w + sigma_s + e, alpha + 1.0))
        return total
    if rule is None:
        rule = QuadratureRule.gauss_jacobi(alpha, nodes)
    exponent = w + sigma_s - 1.0
    return rule.integrate(lambda r: r**exponent * h(np.sqrt(r)))


def ball_monomial_integral(p: SpaceParams, q: MultiIndex) -> float:
    """int_{B_n} |z^q|^2 dnu_alpha = q! Gamma(n+a+1) / Gamma(n+|q|+a+1).

    This is 1/N_q^2, the squared norm of the monomial z^q.
    """
    if len(q) != p.n:
        raise ValueError(f"index {q} has wrong dimension for n={p.n}")
    na1 = p.n + p.alpha + 1.0
    return math.exp(log_multi_factorial(q) + log_gamma(na1) - log_gamma(na1 + total_degree(q)))


def sample_ball(p: SpaceParams, size: int, rng: np.random.Generator) -> np.ndarray:
    """Draw `size` points of B_n distributed as the probability measure
    nu_alpha, via the polar factorization: |z| from the inverse CDF of
    r^(2n-1)(1-r^2)^alpha (an incomplete-Beta inverse in r^2), direction
    uniform on the unit sphere of C^n.
    """
    u = rng.random(size)
    r = np.sqrt(betaincinv(p.n, p.alpha + 1.0, u))
    w = rng.normal(size=(size, 2 * p.n))
    w = w / np.linalg.norm(w, axis=1, keepdims=True)
    zeta = w[:, : p.n] + 1j * w[:, p.n :]
    return r[:, None] * zeta


@dataclass(frozen=True)
class MCEstimate:
    value: complex
    stderr: float
    samples: int

    def within(self, target: complex, n_sigma: float) -> bool:
        return abs(self.value - target) <= n_sigma * self.stderr


def mc_ball_integral(
    p: SpaceParams, integrand, samples: int, seed: int
) -> MCEstimate:
    """Unbiased Monte-Carlo estimate of int integrand dnu_alpha.

    `integrand` maps an (N, n) complex array of ball points to N complex
    values.  Deterministic per seed; the reported standard error is the
    usual sample estimate (combined over real and imaginary parts).
    """
    if samples < 1000:
        raise ValueError(f"need at least 1000 samples, got {samples}")
    rng = np.random.default_rng(seed)
    z = sample_ball(p, samples, rng)
    vals = np.asarray(integrand(z), dtype=complex)
    if vals.shape != (samples,):
        raise ValueError(f"integrand returned shape {vals.shape}, expected ({samples},)")
    mean = complex(np.mean(vals))
    var = float(np.var(vals.real, ddof=1) + np.var(vals.imag, ddof=1))
    return MCEstimate(value=mean, stderr=math.sqrt(var / samples), samples=samples)
