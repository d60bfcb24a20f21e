import math

import numpy as np
import pytest

from bergtoep.multiindex import enumerate_multiindices
from bergtoep.quadrature import RadialProfile
from bergtoep.specialfn import SpaceParams, d_coeff
from bergtoep.symbols import (
    MonomialCombo,
    SeparatelyRadialSymbol,
    constant_symbol,
    monomial,
    omega_table,
    z_power,
    zbar_power,
)
from bergtoep.toeplitz import (
    apply_toeplitz,
    assemble,
    basis_symbol,
    berezin,
    berezin_tail_bound,
    commutator,
    commutator_entry_residual,
    identity_operator,
    operator_norm,
    toeplitz_entry,
)

P1 = SpaceParams(1, 0.0)
P2 = SpaceParams(2, 0.0)


def test_entry_examples():
    assert toeplitz_entry(P1, z_power(1, (1,)), (0,), (1,)) == pytest.approx(
        1 / math.sqrt(2), rel=1e-13
    )
    f_abs = monomial(1, (1,), (1,))
    assert toeplitz_entry(P1, f_abs, (1,), (1,)) == pytest.approx(2 / 3, rel=1e-13)
    f_cross = monomial(2, (1, 0), (0, 1))
    assert toeplitz_entry(P2, f_cross, (0, 1), (1, 0)) == pytest.approx(0.25, rel=1e-13)
    assert toeplitz_entry(P2, f_cross, (0, 1), (0, 1)) == 0


def test_apply_basis_symbol_is_weighted_shift():
    for l in [(1, 0), (1, 1), (0, 2)]:
        e_l = basis_symbol(P2, l)
        for m in enumerate_multiindices(2, 4):
            pairs = apply_toeplitz(P2, e_l, m)
            assert len(pairs) == 1
            k, v = pairs[0]
            assert k == tuple(a + b for a, b in zip(m, l))
            assert v == pytest.approx(d_coeff(P2, l, m), rel=1e-13)


def test_apply_out_of_cone_and_two_sided():
    assert apply_toeplitz(P2, zbar_power(2, (1, 0)), (0, 0)) == []
    pairs = apply_toeplitz(P1, z_power(1, (1,)) + zbar_power(1, (1,)), (1,))
    assert [k for k, _ in pairs] == [(0,), (2,)]
    vals = dict(pairs)
    assert vals[(0,)] == pytest.approx(1 / math.sqrt(2), rel=1e-13)
    assert vals[(2,)] == pytest.approx(math.sqrt(2 / 3), rel=1e-13)


def test_assemble_examples():
    Z = assemble(P2, MonomialCombo.zero(2), 3)
    assert not Z.matrix.any()
    S = assemble(P1, z_power(1, (1,)), 2)
    expected = np.zeros((3, 3), dtype=complex)
    expected[1, 0] = 1 / math.sqrt(2)
    expected[2, 1] = math.sqrt(2 / 3)
    assert np.allclose(S.matrix, expected, atol=1e-14)
    D1 = assemble(P2, monomial(2, (1, 0), (1, 0)), 1)
    assert np.allclose(np.diag(D1.matrix), [1 / 3, 0.5, 0.25], atol=1e-14)
    assert np.count_nonzero(D1.matrix - np.diag(np.diag(D1.matrix))) == 0


def test_assemble_rejects_small_cap():
    with pytest.raises(ValueError):
        assemble(P2, z_power(2, (2, 1)), 2)


def test_assemble_separately_radial_diagonal():
    g = SeparatelyRadialSymbol(2, (1.0, 0.0), RadialProfile.constant(1.0))
    S = assemble(P2, g, 3)
    table = omega_table(P2, g, 3)
    for i, m in enumerate(S.indexer.order):
        assert S.matrix[i, i] == table[m]
    assert np.count_nonzero(S.matrix - np.diag(np.diag(S.matrix))) == 0


def test_adjoint_symmetry_is_exact():
    rng = np.random.default_rng(5)
    terms = []
    for a in enumerate_multiindices(2, 2):
        for b in enumerate_multiindices(2, 2):
            if rng.random() < 0.4:
                terms.append((a, b, complex(rng.uniform(-1, 1), rng.uniform(-1, 1))))
    f = MonomialCombo.from_terms(2, terms)
    A = assemble(P2, f, 5)
    B = assemble(P2, f.conjugate(), 5)
    assert np.array_equal(B.matrix, A.matrix.conj().T)


def test_commutator_self_and_diagonals_vanish():
    f = z_power(2, (1, 0)) + monomial(2, (0, 1), (1, 0), 0.5j)
    A = assemble(P2, f, 6)
    C = commutator(A, A)
    assert not C.matrix[:, C.valid_cols].any()
    g1 = assemble(P2, monomial(2, (1, 0), (1, 0)), 6)
    g2 = assemble(P2, monomial(2, (0, 2), (0, 2)), 6)
    assert not commutator(g1, g2).matrix.any()


def test_commutator_cross_with_radial_vanishes():
    f = monomial(2, (1, 0), (0, 1))
    g = SeparatelyRadialSymbol.radial(2, RadialProfile.even_poly([0.0, 1.0]))
    C = commutator(assemble(P2, f, 6), assemble(P2, g, 6))
    assert C.max_valid_entry() <= 1e-12


def test_commutator_prop4_witness():
    from bergtoep.commutant import prop4_operator

    S = prop4_operator(P2, 6)
    B = assemble(P2, basis_symbol(P2, (0, 1)), 6)
    C = commutator(S, B)
    assert abs(C.entry((0, 0), (0, 2))) == pytest.approx(math.sqrt(1.5), abs=1e-12)
    # valid-block bookkeeping: raise 1 + 1 against cap 6
    assert all(sum(m) <= 4 for m in (C.indexer.order[i] for i in C.valid_positions()))


def test_commutator_requires_matching_blocks():
    A = assemble(P2, z_power(2, (1, 0)), 4)
    B = assemble(P2, z_power(2, (1, 0)), 5)
    with pytest.raises(ValueError):
        commutator(A, B)


def test_commutator_entry_identity():
    I = identity_operator(P2, 6)
    assert commutator_entry_residual(P2, I, (1, 0), (1, 1), (1, 1)) == 0.0
    S1 = assemble(P2, z_power(2, (1, 0)), 6)
    assert commutator_entry_residual(P2, S1, (1, 0), (0, 0), (0, 0)) <= 1e-12
    from bergtoep.commutant import prop4_operator

    S = prop4_operator(P2, 6)
    assert commutator_entry_residual(P2, S, (0, 1), (0, 0), (0, 0)) <= 1e-12
    with pytest.raises(ValueError):
        commutator_entry_residual(P2, S1, (1, 0), (6, 0), (0, 0))


def test_perturbed_copy():
    S = assemble(P2, z_power(2, (1, 0)), 4)
    T = S.with_added_entry((1, 0), (0, 1), 1e-3)
    assert T.entry((1, 0), (0, 1)) == pytest.approx(1e-3)
    assert T.symbol is None
    assert S.entry((1, 0), (0, 1)) == 0


def test_berezin_reproduces_analytic_values():
    f = z_power(1, (1,))
    assert berezin(P1, f, [0.5]) == pytest.approx(0.5, abs=1e-8)
    one = constant_symbol(1, 1.0)
    assert berezin(P1, one, [0.37]) == pytest.approx(1.0, abs=1e-10)
    f_abs = monomial(1, (1,), (1,))
    assert berezin(P1, f_abs, [0.0]) == pytest.approx(0.5, abs=1e-14)


@pytest.mark.parametrize("z", [[0.1 + 0.2j], [0.45j], [-0.6]])
def test_berezin_within_documented_tail_bound(z):
    f = z_power(1, (2,), 0.75) + z_power(1, (1,), 1.0j) + constant_symbol(1, 0.5)
    cap = 40
    got = berezin(P1, f, z, cap=cap)
    truth = f.evaluate(np.array([z]))[0]
    assert abs(got - truth) <= berezin_tail_bound(P1, f, z, cap) + 1e-12


def test_berezin_two_dim_cross_term():
    f = monomial(2, (1, 0), (0, 1))
    z = np.array([0.3, 0.2 + 0.1j])
    got = berezin(P2, f, z, cap=30)
    # the Berezin transform of z1 conj(z2) is a multiple of the symbol value;
    # at these radii it must at least be close to f at small |z| scale
    assert abs(got) <= 0.5
    assert berezin(P2, constant_symbol(2, 1.0), z, cap=30) == pytest.approx(1.0, abs=1e-9)


def test_berezin_rejects_outside_ball():
    with pytest.raises(ValueError):
        berezin(P1, z_power(1, (1,)), [1.0])


def test_operator_norm_trivial_cases():
    assert operator_norm(assemble(P2, MonomialCombo.zero(2), 3)) == 0.0
    assert operator_norm(identity_operator(P2, 3)) == 1.0


def test_operator_norm_shift_exact_value():
    S = assemble(P1, z_power(1, (1,)), 40)
    assert operator_norm(S) == pytest.approx(math.sqrt(41 / 42), abs=1e-12)


@pytest.mark.parametrize(
    "f,sup",
    [
        (z_power(1, (1,)), 1.0),
        (z_power(1, (2,)), 1.0),
        (monomial(2, (1, 0), (0, 1)), 0.5),
    ],
)
def test_operator_norm_monotone_and_bounded(f, sup):
    p = SpaceParams(f.n, 0.0)
    norms = [operator_norm(assemble(p, f, D)) for D in (4, 8, 16)]
    assert all(a <= b + 1e-13 for a, b in zip(norms, norms[1:]))
    assert all(v <= sup + 1e-12 for v in norms)


def test_entry_dimension_checks():
    with pytest.raises(ValueError):
        toeplitz_entry(P2, z_power(1, (1,)), (0, 0), (1, 0))
    with pytest.raises(ValueError):
        apply_toeplitz(P2, z_power(2, (1, 0)), (0,))
