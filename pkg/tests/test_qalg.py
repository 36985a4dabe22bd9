import random
from fractions import Fraction

import pytest

from skewfield.numfield import FieldMorphism, NumberField, automorphism_group
from skewfield.qalg import (
    AlgebraAutomorphism, QuaternionAlgebra, StructureAlgebra, ZeroNormError,
    anisotropy, center_of_algebra, centralizer_in_algebra, inner_automorphism,
    inner_order, matrix_embedding_norm, norm_form, quat_arith, quat_from_q_vector,
    reduced_norm, scalar_extension)

Q = NumberField([0, 1], label='Q')
Q_SQRT2 = NumberField([-2, 0, 1], label='Q(sqrt2)')
Q_SQRT3 = NumberField([-3, 0, 1], label='Q(sqrt3)')
Q_I = NumberField([1, 0, 1], label='Q(i)')
Q_SQRTM2 = NumberField([2, 0, 1], label='Q(sqrt-2)')

HAM_Q = QuaternionAlgebra(Q, -1, -1, label='(-1,-1/Q)')
SPLIT_Q = QuaternionAlgebra(Q, 1, 1, label='(1,1/Q)')
HAM_SQRT2 = QuaternionAlgebra(Q_SQRT2, -1, -1, label='(-1,-1/Q(sqrt2))')


def embed_q(field):
    return FieldMorphism(Q, field, field.zero())


def rnd_elem(rng, alg, lo=-4, hi=4):
    return alg.element([alg.base.element([rng.randint(lo, hi)
                                          for _ in range(alg.base.degree)])
                        for _ in range(4)])


# ---------------------------------------------------------------------------
# basic arithmetic
# ---------------------------------------------------------------------------

def test_defining_relations():
    i, j, k = HAM_Q.i(), HAM_Q.j(), HAM_Q.k()
    assert i * j == k
    assert j * i == -k
    assert i * i == HAM_Q.scalar(-1)
    assert j * j == HAM_Q.scalar(-1)
    assert k * k == HAM_Q.scalar(-1)
    assert quat_arith(i, j, 'mul') == k


def test_inverse_of_one_plus_i():
    x = HAM_Q.one() + HAM_Q.i()
    inv = quat_arith(x, None, 'inv')
    assert inv == HAM_Q.element([Fraction(1, 2), Fraction(-1, 2)])
    assert x * inv == HAM_Q.one()


def test_zero_norm_inverse_raises():
    x = SPLIT_Q.one() + SPLIT_Q.i()  # Nrd = 1 - 1 = 0
    assert x.reduced_norm().is_zero()
    with pytest.raises(ZeroNormError):
        x.inverse()


def test_norm_formula_and_identity():
    assert reduced_norm(HAM_Q.one()) == Q.one()
    x = HAM_Q.element([1, 2, 3, 4])
    assert reduced_norm(x) == Q.scalar(1 + 4 + 9 + 16)


def test_norm_against_matrix_embedding():
    rng = random.Random(42)
    for alg in (HAM_Q, SPLIT_Q, HAM_SQRT2, QuaternionAlgebra(Q, 2, 3)):
        for _ in range(60):
            x = rnd_elem(rng, alg)
            assert matrix_embedding_norm(x) == x.reduced_norm()


def test_norm_multiplicative_on_500_pairs():
    rng = random.Random(2024)
    for _ in range(500):
        alg = rng.choice((HAM_Q, HAM_SQRT2, SPLIT_Q))
        x, y = rnd_elem(rng, alg), rnd_elem(rng, alg)
        assert (x * y).reduced_norm() == x.reduced_norm() * y.reduced_norm()


def test_conjugation_identities():
    rng = random.Random(5)
    for _ in range(80):
        x = rnd_elem(rng, HAM_SQRT2)
        assert x.conj().reduced_norm() == x.reduced_norm()
        assert x * x.conj() == HAM_SQRT2.scalar(x.reduced_norm())


# ---------------------------------------------------------------------------
# norm form and anisotropy
# ---------------------------------------------------------------------------

def test_norm_form_coefficients():
    f = norm_form(HAM_Q, Q)
    assert [c.coords[0] for c in f.coefficients] == [1, 1, 1, 1]
    f2 = norm_form(QuaternionAlgebra(Q, 2, 3), Q_SQRT2, embed_q(Q_SQRT2))
    assert [c.coords[0] for c in f2.coefficients] == [1, -2, -3, 6]
    assert all(c.coords[1] == 0 for c in f2.coefficients)


def test_anisotropy_over_gaussian_field_isotropic():
    f = norm_form(HAM_Q, Q_I, embed_q(Q_I))
    verdict = anisotropy(f, 3)
    assert verdict.kind == 'isotropic'
    assert f.evaluate(verdict.witness).is_zero()
    assert any(not w.is_zero() for w in verdict.witness)


def test_anisotropy_over_sqrt2_certified():
    f = norm_form(HAM_Q, Q_SQRT2, embed_q(Q_SQRT2))
    verdict = anisotropy(f, 3)
    assert verdict.kind == 'anisotropic'
    assert verdict.place is not None


def test_anisotropy_over_sqrt_minus2_isotropic():
    f = norm_form(HAM_Q, Q_SQRTM2, embed_q(Q_SQRTM2))
    verdict = anisotropy(f, 3)
    assert verdict.kind == 'isotropic'


def test_rational_form_with_level_unknown_search():
    # <1,1,1,1> over Q is definite at the one real place
    verdict = anisotropy(norm_form(HAM_Q, Q), 3)
    assert verdict.kind == 'anisotropic'


# ---------------------------------------------------------------------------
# scalar extension and zero divisors
# ---------------------------------------------------------------------------

def test_scalar_extension_division_flag():
    ext = scalar_extension(HAM_Q, Q_SQRT2, embed_q(Q_SQRT2))
    assert ext.division_certified is True
    assert ext.a == Q_SQRT2.scalar(-1)

    ext2 = scalar_extension(HAM_Q, Q_I, embed_q(Q_I))
    assert ext2.division_certified is False


def test_scalar_extension_identity_returns_same_algebra():
    assert scalar_extension(HAM_Q, Q, Q.identity_morphism()) == HAM_Q


def test_isotropy_witness_gives_zero_divisor():
    # every isotropy witness must exhibit an explicit zero divisor
    for fld in (Q_I, Q_SQRTM2):
        emb = embed_q(fld)
        ext = scalar_extension(HAM_Q, fld, emb)
        verdict = anisotropy(norm_form(HAM_Q, fld, emb), 3)
        assert verdict.kind == 'isotropic'
        z = ext.element(list(verdict.witness))
        assert not z.is_zero()
        assert z.reduced_norm().is_zero()
        assert (z * z.conj()).is_zero()  # genuine zero divisor pair
        with pytest.raises(ZeroNormError):
            z.inverse()


def test_anisotropy_verdict_constructor_guards():
    from skewfield.qalg import AnisotropyVerdict
    f = norm_form(HAM_Q, Q_I, embed_q(Q_I))
    zero4 = [Q_I.zero()] * 4
    with pytest.raises(ValueError):
        AnisotropyVerdict('isotropic', f, witness=zero4)
    with pytest.raises(ValueError):
        AnisotropyVerdict('isotropic', f,
                          witness=[Q_I.one(), Q_I.one(), Q_I.zero(),
                                   Q_I.zero()])  # evaluates to 2, not 0
    # no real place can certify a form over the gaussian field
    f2 = norm_form(HAM_Q, Q_SQRT2, embed_q(Q_SQRT2))
    place = Q_SQRT2.real_places()[0]
    indefinite = norm_form(QuaternionAlgebra(Q, 2, -3), Q_SQRT2,
                           embed_q(Q_SQRT2))
    with pytest.raises(ValueError):
        AnisotropyVerdict('anisotropic', indefinite, place=place)
    assert AnisotropyVerdict('anisotropic', f2, place=place).kind == \
        'anisotropic'


# ---------------------------------------------------------------------------
# automorphisms
# ---------------------------------------------------------------------------

def test_inner_automorphism_by_i():
    sigma = inner_automorphism(HAM_Q.i())
    assert sigma(HAM_Q.i()) == HAM_Q.i()
    assert sigma(HAM_Q.j()) == -HAM_Q.j()
    assert sigma(HAM_Q.k()) == -HAM_Q.k()
    assert sigma.order() == 2
    assert inner_order(sigma) == 1


def test_inner_automorphism_identity():
    assert inner_automorphism(HAM_Q.one()).is_identity()


def test_inner_automorphism_one_plus_i_order_4():
    sigma = inner_automorphism(HAM_Q.one() + HAM_Q.i())
    assert sigma.order() == 4
    # (1+i)^2 = 2i is i up to a central factor, so the squares agree as maps
    assert sigma.compose(sigma) == inner_automorphism(HAM_Q.i())


def test_inner_automorphism_scaling_invariance():
    y = HAM_Q.element([1, 2, 0, 1])
    assert inner_automorphism(y) == inner_automorphism(y * 3)


def test_tensor_twist_inner_order():
    conj = next(g for g in automorphism_group(Q_SQRT2) if not g.is_identity())
    sigma = AlgebraAutomorphism(HAM_SQRT2, HAM_SQRT2.i(), HAM_SQRT2.j(), conj)
    assert sigma.order() == 2
    assert inner_order(sigma) == 2


def test_automorphism_respects_norm():
    rng = random.Random(11)
    conj = next(g for g in automorphism_group(Q_SQRT2) if not g.is_identity())
    sigma = AlgebraAutomorphism(HAM_SQRT2, HAM_SQRT2.i(), HAM_SQRT2.j(), conj)
    tau = inner_automorphism(HAM_SQRT2.element([1, 1, 0, 0]))
    for auto in (sigma, tau, sigma.compose(tau)):
        for _ in range(40):
            x = rnd_elem(rng, HAM_SQRT2)
            assert auto(x).reduced_norm() == auto.center_action(x.reduced_norm())


def test_automorphism_powers_and_inverse():
    conj = next(g for g in automorphism_group(Q_SQRT2) if not g.is_identity())
    sigma = AlgebraAutomorphism(HAM_SQRT2, HAM_SQRT2.i(), HAM_SQRT2.j(), conj)
    tau = inner_automorphism(HAM_SQRT2.i()).compose(sigma)
    assert tau.power(0).is_identity()
    assert tau.power(3) == tau.compose(tau).compose(tau)
    assert tau.power(-1).compose(tau).is_identity()


def test_q_vector_round_trip():
    rng = random.Random(3)
    for _ in range(20):
        x = rnd_elem(rng, HAM_SQRT2)
        assert quat_from_q_vector(HAM_SQRT2, x.q_vector()) == x


# ---------------------------------------------------------------------------
# structure algebras, centers, centralizers
# ---------------------------------------------------------------------------

def test_center_of_hamilton_quaternions():
    basis = center_of_algebra(HAM_Q.structure_algebra())
    assert len(basis) == 1
    assert basis[0][0] == Q.one()
    assert all(c.is_zero() for c in basis[0][1:])


def test_center_of_split_algebra_is_scalars():
    # (1,1/Q) is the 2x2 matrix algebra; its center is the scalars
    basis = center_of_algebra(SPLIT_Q.structure_algebra())
    assert len(basis) == 1


def test_center_of_commutative_toy_algebra():
    # Q[x]/(x^2): e0 = 1, e1 = x with x^2 = 0
    toy = StructureAlgebra(Q, ['1', 'x'],
                           [[[1, 0], [0, 1]], [[0, 1], [0, 0]]])
    basis = center_of_algebra(toy)
    assert len(basis) == 2


def test_centralizer_of_i():
    alg = HAM_Q.structure_algebra()
    i_vec = alg.basis_vector(1)
    cent = centralizer_in_algebra(alg, [i_vec])
    # centralizer of i in the quaternions is Q(i): span{1, i}
    assert len(cent) == 2
