"""Finite-prefix Toeplitz operators with exact entries.

A ``PrefixOperator`` is the matrix of an operator against the monomial
basis e_m, restricted to total degree <= D.  For symbols that are finite
monomial combinations the action on a single basis vector is a *finite*
sum computed in closed form,

    <T_f e_m, e_k> = sum over terms (a,b,c) with k = m+a-b of
                     c * N_m * N_k * int |z^(m+a)|^2 dnu_alpha,

so every stored entry is exact to roundoff; truncation never mixes into
the numbers, it only bounds which rows fit in the stored square block.
The ``valid_cols`` mask records the columns whose image stays inside the
block, which is the contract commutators and norms are stated against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .multiindex import (
    BasisIndexer,
    MultiIndex,
    dominates,
    total_degree,
)
from .quadrature import ball_monomial_integral
from .specialfn import (
    SpaceParams,
    log_gamma,
    log_multi_factorial,
    log_norm_constant,
    norm_constant,
)
from .symbols import MonomialCombo, SeparatelyRadialSymbol, omega_table, z_power

__all__ = [
    "PrefixOperator",
    "toeplitz_entry",
    "apply_toeplitz",
    "basis_symbol",
    "assemble",
    "identity_operator",
    "commutator",
    "commutator_entry_residual",
    "berezin",
    "berezin_tail_bound",
    "symbol_sup_bound",
    "operator_norm",
]

def _fsum_complex(vals) -> complex:
    # order-independent summation so entries (and their adjoints) are
    # bitwise reproducible regardless of term enumeration order
    return complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals))


def _log_ball_integral(p: SpaceParams, q: MultiIndex) -> float:
    na1 = p.n + p.alpha + 1.0
    return log_multi_factorial(q) + log_gamma(na1) - log_gamma(na1 + total_degree(q))


def apply_toeplitz(
    p: SpaceParams, f: MonomialCombo, m: MultiIndex
) -> list[tuple[MultiIndex, complex]]:
    """Exact image T_f e_m = sum (k, coeff) over the finitely many output
    indices k = m + a - b that stay in the cone."""
    if f.n != p.n or len(m) != p.n:
        raise ValueError("dimension mismatch between params, symbol, and index")
    log_nm = log_norm_constant(p, m)
    contributions: dict[MultiIndex, list[complex]] = {}
    for a, b, c in f.terms:
        k = tuple(mi + ai - bi for mi, ai, bi in zip(m, a, b))
        if any(x < 0 for x in k):
            continue
        q = tuple(mi + ai for mi, ai in zip(m, a))
        factor = math.exp(log_nm + log_norm_constant(p, k) + _log_ball_integral(p, q))
        contributions.setdefault(k, []).append(c * factor)
    out = []
    for k in sorted(contributions, key=lambda t: (sum(t), tuple(-x for x in t))):
        v = _fsum_complex(contributions[k])
        if v != 0:
            out.append((k, v))
    return out


def toeplitz_entry(
    p: SpaceParams, f: MonomialCombo, m: MultiIndex, k: MultiIndex
) -> complex:
    """<T_f e_m, e_k> in closed form (no quadrature)."""
    if f.n != p.n or len(m) != p.n or len(k) != p.n:
        raise ValueError("dimension mismatch between params, symbol, and indices")
    k = tuple(k)
    vals = []
    log_nm = log_norm_constant(p, m)
    log_nk = log_norm_constant(p, k)
    for a, b, c in f.terms:
        if tuple(mi + ai - bi for mi, ai, bi in zip(m, a, b)) != k:
            continue
        q = tuple(mi + ai for mi, ai in zip(m, a))
        vals.append(c * math.exp(log_nm + log_nk + _log_ball_integral(p, q)))
    return _fsum_complex(vals) if vals else 0.0 + 0.0j


def basis_symbol(p: SpaceParams, l: MultiIndex) -> MonomialCombo:
    """The normalized basis monomial e_l = N_l z^l as a polynomial symbol."""
    return z_power(p.n, tuple(l), norm_constant(p, l))


@dataclass(frozen=True)
class PrefixOperator:
    """Operator matrix on the degree <= D block (row = output index).

    degree_raise bounds how far the operator can push total degree up;
    valid_cols marks the columns m with |m| + degree_raise <= D, whose
    entire image fits in the block.  entries_exact means every stored
    entry equals the true inner product (true for symbol-assembled
    operators; a commutator is only trustworthy on its valid columns).
    """

    params: SpaceParams
    D: int
    indexer: BasisIndexer = field(repr=False)
    matrix: np.ndarray = field(repr=False)
    degree_raise: int
    valid_cols: np.ndarray = field(repr=False)
    symbol: object | None = None
    entries_exact: bool = True

    @property
    def size(self) -> int:
        return self.indexer.count

    def entry(self, m: MultiIndex, k: MultiIndex) -> complex:
        """<S e_m, e_k> read off the stored block."""
        return complex(self.matrix[self.indexer.position(k), self.indexer.position(m)])

    def valid_positions(self) -> np.ndarray:
        return np.nonzero(self.valid_cols)[0]

    def trusted_positions(self) -> np.ndarray:
        """Columns whose stored entries are exact inner products."""
        if self.entries_exact:
            return np.arange(self.size)
        return self.valid_positions()

    def with_added_entry(self, m: MultiIndex, k: MultiIndex, delta: complex) -> "PrefixOperator":
        """A perturbed copy: the returned matrix *is* the new operator, so
        it no longer carries a generating symbol."""
        mat = self.matrix.copy()
        mat[self.indexer.position(k), self.indexer.position(m)] += delta
        return replace(self, matrix=mat, symbol=None)

    def max_valid_entry(self) -> float:
        """max |entry| over the valid columns (0 if none are valid)."""
        cols = self.valid_positions()
        if cols.size == 0:
            return 0.0
        return float(np.max(np.abs(self.matrix[:, cols])))


def _valid_mask(indexer: BasisIndexer, D: int, raise_: int) -> np.ndarray:
    return np.array([total_degree(m) + raise_ <= D for m in indexer.order], dtype=bool)


def assemble(p: SpaceParams, f, D: int) -> PrefixOperator:
    """Matrix of T_f on the degree <= D block.

    f may be a MonomialCombo (entries from the closed form above) or a
    SeparatelyRadialSymbol (diagonal matrix of omega eigenvalues).
    """
    indexer = BasisIndexer.build(p.n, D)
    if isinstance(f, SeparatelyRadialSymbol):
        table = omega_table(p, f, D)
        mat = np.zeros((indexer.count, indexer.count), dtype=complex)
        for i, m in enumerate(indexer.order):
            mat[i, i] = table[m]
        return PrefixOperator(
            params=p, D=D, indexer=indexer, matrix=mat,
            degree_raise=0, valid_cols=_valid_mask(indexer, D, 0), symbol=f,
        )
    if not isinstance(f, MonomialCombo):
        raise TypeError(f"cannot assemble symbol of type {type(f).__name__}")
    raise_ = f.degree_raise
    if D < raise_:
        raise ValueError(f"degree cap {D} is below the symbol's degree raise {raise_}")
    mat = np.zeros((indexer.count, indexer.count), dtype=complex)
    for j, m in enumerate(indexer.order):
        for k, v in apply_toeplitz(p, f, m):
            if k in indexer:
                mat[indexer.position(k), j] = v
    return PrefixOperator(
        params=p, D=D, indexer=indexer, matrix=mat,
        degree_raise=raise_, valid_cols=_valid_mask(indexer, D, raise_), symbol=f,
    )


def identity_operator(p: SpaceParams, D: int) -> PrefixOperator:
    indexer = BasisIndexer.build(p.n, D)
    return PrefixOperator(
        params=p, D=D, indexer=indexer,
        matrix=np.eye(indexer.count, dtype=complex),
        degree_raise=0, valid_cols=_valid_mask(indexer, D, 0),
    )


def commutator(A: PrefixOperator, B: PrefixOperator) -> PrefixOperator:
    """AB - BA, exact on columns m with |m| + raise(A) + raise(B) <= D.

    On those columns every intermediate index stays inside the block, so
    the dense product loses nothing; outside them the result is marked
    untrusted rather than silently wrong.
    """
    if A.params != B.params or A.D != B.D:
        raise ValueError("commutator needs operators on the same space and degree cap")
    mat = A.matrix @ B.matrix - B.matrix @ A.matrix
    raise_ = A.degree_raise + B.degree_raise
    valid = _valid_mask(A.indexer, A.D, raise_) & A.valid_cols & B.valid_cols
    return PrefixOperator(
        params=A.params, D=A.D, indexer=A.indexer, matrix=mat,
        degree_raise=raise_, valid_cols=valid, entries_exact=False,
    )


def commutator_entry_residual(
    p: SpaceParams, S: PrefixOperator, l: MultiIndex, m: MultiIndex, k: MultiIndex
) -> float:
    """Residual of the ladder identity

        <[S, T_{e_l}] e_m, e_{k+l}> =
            d(l,m) <S e_{m+l}, e_{k+l}> - d(l,k) <S e_m, e_k>

    with the left side from an actual commutator matrix and the right
    side composed from entries of S.
    """
    from .specialfn import d_coeff

    l, m, k = tuple(l), tuple(m), tuple(k)
    ml = tuple(a + b for a, b in zip(m, l))
    kl = tuple(a + b for a, b in zip(k, l))
    idx = S.indexer
    for t in (m, k, ml, kl):
        if t not in idx:
            raise ValueError(f"index {t} is outside the degree <= {S.D} block")
    if total_degree(m) + S.degree_raise + total_degree(l) > S.D:
        raise ValueError(f"column {m} is not valid for the commutator with shift {l}")
    K = commutator(S, assemble(p, basis_symbol(p, l), S.D))
    lhs = K.entry(m, kl)
    rhs = d_coeff(p, l, m) * S.entry(ml, kl) - d_coeff(p, l, k) * S.entry(m, k)
    return abs(lhs - rhs)


def symbol_sup_bound(f: MonomialCombo) -> float:
    """sum |c| over terms: a sup-norm bound for f on the closed ball."""
    return float(sum(abs(c) for _, _, c in f.terms))


def _kernel_tail_norm(p: SpaceParams, z: np.ndarray, cap: int) -> float:
    """||k_z - k_z^cap||, the norm of the dropped reproducing-kernel tail.

    Exact via K(z,z) = (1-|z|^2)^(-(n+a+1)) minus the explicit partial sum
    sum_{d<=cap} [Gamma(n+a+1+d) / (Gamma(n+a+1) d!)] |z|^(2d).
    """
    t2 = float(np.sum(np.abs(z) ** 2))
    na1 = p.n + p.alpha + 1.0
    partial = math.fsum(
        math.exp(log_gamma(na1 + d) - log_gamma(na1) - log_gamma(d + 1.0) + d * math.log(t2))
        if t2 > 0 else (1.0 if d == 0 else 0.0)
        for d in range(cap + 1)
    )
    tail_sq = 1.0 - (1.0 - t2) ** na1 * partial
    return math.sqrt(max(tail_sq, 0.0))


def berezin_tail_bound(p: SpaceParams, f: MonomialCombo, z, cap: int) -> float:
    """Truncation-error bound for ``berezin`` at cap: 2 ||f||_inf ||k_z - k_z^cap||."""
    z = np.asarray(z, dtype=complex).reshape(-1)
    return 2.0 * symbol_sup_bound(f) * _kernel_tail_norm(p, z, cap)


def berezin(p: SpaceParams, f: MonomialCombo, z, cap: int = 40) -> complex:
    """Berezin transform <f k_z, k_z> at a point z of the open ball.

    The normalized reproducing kernel k_z is expanded in the basis up to
    total degree `cap` and paired with the exact operator action, so the
    only error is the dropped kernel tail; ``berezin_tail_bound`` gives a
    computable bound (geometric in |z|).  Analytic polynomial symbols are
    reproduced: berezin(f, z) = f(z) up to that bound.
    """
    z = np.asarray(z, dtype=complex).reshape(-1)
    if z.shape != (p.n,):
        raise ValueError(f"point has dimension {z.shape[0]}, expected {p.n}")
    if float(np.sum(np.abs(z) ** 2)) >= 1.0:
        raise ValueError("Berezin transform is defined on the open ball only")
    if f.n != p.n:
        raise ValueError("symbol dimension does not match the space")
    indexer = BasisIndexer.build(p.n, cap)

    basis_vals: dict[MultiIndex, complex] = {}

    def e_val(m: MultiIndex) -> complex:
        v = basis_vals.get(m)
        if v is None:
            zm = 1.0 + 0.0j
            for zz, mm in zip(z, m):
                if mm:
                    zm *= zz**mm
            v = math.exp(log_norm_constant(p, m)) * zm
            basis_vals[m] = v
        return v

    total = []
    for m in indexer.order:
        em = e_val(m)
        if em == 0:
            continue
        for k, v in apply_toeplitz(p, f, m):
            total.append(np.conj(em) * v * e_val(k))
    t2 = float(np.sum(np.abs(z) ** 2))
    return (1.0 - t2) ** (p.n + p.alpha + 1.0) * _fsum_complex(total)


def operator_norm(A: PrefixOperator) -> float:
    """Largest singular value of the operator's exact finite-prefix action.

    For a symbol-backed operator this is ||T_f P_D||: the images of all
    columns |m| <= D are reassembled with rows up to D + degree_raise so
    nothing leaks out of the matrix, and the norm is nondecreasing in D
    with limit ||T_f||.  For matrix-only operators it is the largest
    singular value over the valid columns.
    """
    if isinstance(A.symbol, MonomialCombo):
        p, f = A.params, A.symbol
        rows = BasisIndexer.build(p.n, A.D + A.degree_raise)
        mat = np.zeros((rows.count, A.indexer.count), dtype=complex)
        for j, m in enumerate(A.indexer.order):
            for k, v in apply_toeplitz(p, f, m):
                mat[rows.position(k), j] = v
        return float(np.linalg.svd(mat, compute_uv=False)[0]) if mat.size else 0.0
    cols = A.trusted_positions()
    if cols.size == 0:
        return 0.0
    sub = A.matrix[:, cols]
    return float(np.linalg.svd(sub, compute_uv=False)[0])
