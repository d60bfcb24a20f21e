"""Symbol algebra for the two representable symbol classes.

* ``MonomialCombo``: finite combinations f(z) = sum c z^a conj(z)^b with
  exact complex coefficients.  The algebra (sums, products, conjugation,
  torus averaging, invariance predicates) is exact; floats only enter
  once operator entries are computed.

* ``SeparatelyRadialSymbol``: g(z) = |z_1|^(2 s_1) ... |z_n|^(2 s_n) h(|z|)
  with real exponents s_j >= 0 and a bounded radial profile h.  These
  generate diagonal Toeplitz operators; ``omega`` evaluates the diagonal
  eigenvalue at a multi-index through the Gamma-ratio transform

      omega(g, m) = (1/Gamma(a+1)) prod_j [Gamma(m_j+s_j+1)/Gamma(m_j+1)]
                    * H(n + |m|),
      H(w) = [Gamma(w+a+1)/Gamma(w+S)] int_0^1 r^(w+S-1) h(r^(1/2)) (1-r)^a dr

  with S = sum s_j.  For closed-form profiles the integral is a Beta sum
  and omega is exact to roundoff; otherwise Gauss-Jacobi quadrature is
  used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .multiindex import MultiIndex, total_degree
from .quadrature import QuadratureRule, RadialProfile, radial_integral
from .specialfn import SpaceParams, log_gamma

__all__ = [
    "MonomialCombo",
    "monomial",
    "z_power",
    "zbar_power",
    "constant_symbol",
    "torus_average",
    "InvarianceFlags",
    "invariance_flags",
    "SeparatelyRadialSymbol",
    "omega",
    "OmegaTable",
    "omega_table",
]

Term = tuple[MultiIndex, MultiIndex, complex]


def _canonical_terms(n: int, terms) -> tuple[Term, ...]:
    merged: dict[tuple[MultiIndex, MultiIndex], complex] = {}
    for a, b, c in terms:
        a, b = tuple(int(x) for x in a), tuple(int(x) for x in b)
        if len(a) != n or len(b) != n:
            raise ValueError(f"term exponents {a}, {b} do not match dimension {n}")
        if any(x < 0 for x in a) or any(x < 0 for x in b):
            raise ValueError(f"term exponents must be >= 0, got {a}, {b}")
        merged[(a, b)] = merged.get((a, b), 0.0 + 0.0j) + complex(c)
    # exact-zero drop only: the algebra is exact, so a zero here is structural
    kept = {k: v for k, v in merged.items() if v != 0}
    return tuple((a, b, kept[(a, b)]) for a, b in sorted(kept))


@dataclass(frozen=True)
class MonomialCombo:
    """f(z) = sum over terms (a, b, c) of c * z^a * conj(z)^b, canonical form:
    terms sorted, no duplicate (a, b), no zero coefficients.
    """

    n: int
    terms: tuple[Term, ...]

    @classmethod
    def from_terms(cls, n: int, terms) -> "MonomialCombo":
        if n < 1:
            raise ValueError("dimension must be >= 1")
        return cls(n=n, terms=_canonical_terms(n, terms))

    @classmethod
    def zero(cls, n: int) -> "MonomialCombo":
        return cls.from_terms(n, [])

    @property
    def degree_raise(self) -> int:
        """max |a| over terms: how far T_f can push total degree up."""
        return max((total_degree(a) for a, _, _ in self.terms), default=0)

    @property
    def degree_lower(self) -> int:
        """max |b| over terms: how far T_f can pull total degree down."""
        return max((total_degree(b) for _, b, _ in self.terms), default=0)

    def __add__(self, other: "MonomialCombo") -> "MonomialCombo":
        if self.n != other.n:
            raise ValueError("cannot add symbols of different dimension")
        return MonomialCombo.from_terms(self.n, self.terms + other.terms)

    def __sub__(self, other: "MonomialCombo") -> "MonomialCombo":
        return self + (-1) * other

    def __rmul__(self, scalar: complex) -> "MonomialCombo":
        return MonomialCombo.from_terms(
            self.n, [(a, b, scalar * c) for a, b, c in self.terms]
        )

    def __mul__(self, other: "MonomialCombo") -> "MonomialCombo":
        if self.n != other.n:
            raise ValueError("cannot multiply symbols of different dimension")
        prods = []
        for a1, b1, c1 in self.terms:
            for a2, b2, c2 in other.terms:
                a = tuple(x + y for x, y in zip(a1, a2))
                b = tuple(x + y for x, y in zip(b1, b2))
                prods.append((a, b, c1 * c2))
        return MonomialCombo.from_terms(self.n, prods)

    def conjugate(self) -> "MonomialCombo":
        return MonomialCombo.from_terms(
            self.n, [(b, a, c.conjugate()) for a, b, c in self.terms]
        )

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        """Pointwise values at an (N, n) complex array of ball points."""
        z = np.asarray(z, dtype=complex)
        if z.ndim == 1:
            z = z[None, :]
        out = np.zeros(z.shape[0], dtype=complex)
        zc = np.conj(z)
        for a, b, c in self.terms:
            term = np.full(z.shape[0], c, dtype=complex)
            for j in range(self.n):
                if a[j]:
                    term *= z[:, j] ** a[j]
                if b[j]:
                    term *= zc[:, j] ** b[j]
            out += term
        return out


def monomial(n: int, a, b, c: complex = 1.0) -> MonomialCombo:
    return MonomialCombo.from_terms(n, [(tuple(a), tuple(b), c)])


def z_power(n: int, a, c: complex = 1.0) -> MonomialCombo:
    """The analytic monomial c * z^a."""
    return monomial(n, a, (0,) * n, c)


def zbar_power(n: int, b, c: complex = 1.0) -> MonomialCombo:
    return monomial(n, (0,) * n, b, c)


def constant_symbol(n: int, c: complex = 1.0) -> MonomialCombo:
    return monomial(n, (0,) * n, (0,) * n, c)


def torus_average(f: MonomialCombo, gamma) -> MonomialCombo:
    """Average of f over the one-parameter torus action
    z -> (e^(i gamma_1 t) z_1, ..., e^(i gamma_n t) z_n).

    On a monomial z^a conj(z)^b the full-turn average of
    e^(i gamma.(a-b) t) kills the term unless gamma.(a-b) = 0, so the
    transform is the exact symbolic rule: drop every term with
    gamma.(a-b) != 0 and keep the rest unchanged.
    """
    gamma = tuple(int(g) for g in gamma)
    if len(gamma) != f.n:
        raise ValueError(f"torus weight {gamma} does not match dimension {f.n}")
    kept = [
        (a, b, c)
        for a, b, c in f.terms
        if sum(g * (x - y) for g, x, y in zip(gamma, a, b)) == 0
    ]
    return MonomialCombo.from_terms(f.n, kept)


@dataclass(frozen=True)
class InvarianceFlags:
    """Decidable invariances of a polynomial symbol.

    circular:      f(e^(i theta) z) = f(z), i.e. every term has |a| = |b|.
    axis_modulus:  per axis j, f depends on z_j only through |z_j|,
                   i.e. every term has a_j = b_j.
    """

    circular: bool
    axis_modulus: tuple[bool, ...]


def invariance_flags(f: MonomialCombo) -> InvarianceFlags:
    circular = all(total_degree(a) == total_degree(b) for a, b, _ in f.terms)
    axis = tuple(
        all(a[j] == b[j] for a, b, _ in f.terms) for j in range(f.n)
    )
    return InvarianceFlags(circular=circular, axis_modulus=axis)


@dataclass(frozen=True)
class SeparatelyRadialSymbol:
    """g(z) = |z_1|^(2 s_1) ... |z_n|^(2 s_n) h(|z|).

    In dimension one the modulus power is folded into the profile
    (s is normalized to (0,)), so the classifier condition s_j l_j = 0
    keeps its meaning.
    """

    n: int
    s: tuple[float, ...]
    h: RadialProfile

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        s = tuple(float(x) for x in self.s)
        if len(s) != self.n:
            raise ValueError(f"exponents {s} do not match dimension {self.n}")
        if any(x < 0 for x in s):
            raise ValueError(f"exponents must be >= 0, got {s}")
        h = self.h
        if self.n == 1 and s[0] != 0.0:
            h = h.scaled_by_power(2.0 * s[0])
            s = (0.0,)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "h", h)

    @classmethod
    def radial(cls, n: int, h: RadialProfile) -> "SeparatelyRadialSymbol":
        return cls(n=n, s=(0.0,) * n, h=h)

    @property
    def sigma_s(self) -> float:
        return float(sum(self.s))

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        if z.ndim == 1:
            z = z[None, :]
        out = self.h(np.linalg.norm(z, axis=1)).astype(complex)
        for j, sj in enumerate(self.s):
            if sj:
                out *= np.abs(z[:, j]) ** (2.0 * sj)
        return out


def _h_transform(
    p: SpaceParams,
    g: SeparatelyRadialSymbol,
    w: float,
    method: str,
    rule: QuadratureRule | None,
    nodes: int,
) -> complex:
    """H(w) = Gamma(w+a+1)/Gamma(w+S) * radial integral at w."""
    if method == "closed" and not g.h.is_closed_form:
        raise ValueError("closed-form evaluation requires a closed-form profile")
    use_closed = g.h.is_closed_form and method != "quadrature"
    if use_closed:
        integral = radial_integral(w, p.alpha, g.sigma_s, g.h)
    else:
        if rule is None:
            rule = QuadratureRule.gauss_jacobi(p.alpha, nodes)
        exponent = w + g.sigma_s - 1.0
        integral = rule.integrate(lambda r: r**exponent * g.h(np.sqrt(r)))
    return integral * math.exp(log_gamma(w + p.alpha + 1.0) - log_gamma(w + g.sigma_s))


def omega(
    p: SpaceParams,
    g: SeparatelyRadialSymbol,
    m: MultiIndex,
    *,
    method: str = "auto",
    rule: QuadratureRule | None = None,
    nodes: int = 64,
) -> complex:
    """Diagonal eigenvalue <T_g e_m, e_m> of the (diagonal) Toeplitz
    operator with separately-radial symbol g.

    method: "auto" (closed form when the profile allows, else quadrature),
    "closed", or "quadrature".
    """
    if len(m) != p.n:
        raise ValueError(f"index {m} has wrong dimension for n={p.n}")
    if g.n != p.n:
        raise ValueError(f"symbol dimension {g.n} does not match n={p.n}")
    if method not in ("auto", "closed", "quadrature"):
        raise ValueError(f"unknown method {method!r}")
    h_val = _h_transform(p, g, float(p.n + total_degree(m)), method, rule, nodes)
    prefactor = 1.0
    for j in range(p.n):
        sj = g.s[j]
        if sj:
            prefactor *= math.exp(log_gamma(m[j] + sj + 1.0) - log_gamma(m[j] + 1.0))
    return prefactor * math.exp(-log_gamma(p.alpha + 1.0)) * h_val


@dataclass(frozen=True)
class OmegaTable:
    """Diagonal eigenvalues omega(g, m) for every |m| <= D."""

    params: SpaceParams
    symbol: SeparatelyRadialSymbol
    D: int
    entries: dict[MultiIndex, complex]

    def __getitem__(self, m: MultiIndex) -> complex:
        return self.entries[tuple(m)]

    def __contains__(self, m) -> bool:
        return tuple(m) in self.entries


def omega_table(
    p: SpaceParams,
    g: SeparatelyRadialSymbol,
    D: int,
    *,
    method: str = "auto",
    nodes: int = 64,
) -> OmegaTable:
    from .multiindex import enumerate_multiindices

    if D < 0:
        raise ValueError("degree cap must be >= 0")
    rule = None
    if not g.h.is_closed_form or method == "quadrature":
        rule = QuadratureRule.gauss_jacobi(p.alpha, nodes)
    entries = {
        m: omega(p, g, m, method=method, rule=rule, nodes=nodes)
        for m in enumerate_multiindices(p.n, D)
    }
    return OmegaTable(params=p, symbol=g, D=D, entries=entries)
