import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qjcm.algebra import (
    MAX_TERMS,
    Deformation,
    DeformationSpec,
    convergence_radius,
    coupling_product,
    deformed_exp,
    deformed_number,
    deformed_number_real,
    f_value,
    log_deformed_factorial,
)
from qjcm.errors import DomainError, NonConvergence

Q_KINDS = (DeformationSpec.arik_coon, DeformationSpec.penson_solomon, DeformationSpec.quesne)
q_values = st.floats(0.5, 1.0, exclude_max=True) | st.floats(1.0, 1.5, exclude_min=True)
ps_q = st.floats(0.5, 1.0)


def direct_bracket(spec, n):
    """Independent evaluation of {n} from finite sums and powers."""
    q = spec.q
    if spec.kind is Deformation.STANDARD:
        return float(n)
    if spec.kind is Deformation.ARIK_COON:
        return sum(q ** j for j in range(n))
    if spec.kind is Deformation.PENSON_SOLOMON:
        return n * q ** (-2 * (n - 1))
    if spec.kind is Deformation.QUESNE:
        return sum(q ** -(j + 1) for j in range(n))
    if spec.kind is Deformation.KERR:
        return n * (1 + spec.k * (n - 1))
    raise NotImplementedError


# worked examples

def test_f_examples():
    assert f_value(DeformationSpec.standard(), 5) == 1.0
    assert f_value(DeformationSpec.arik_coon(0.5), 3) == pytest.approx(math.sqrt(1.75 / 3), rel=1e-14)
    assert f_value(DeformationSpec.penson_solomon(0.9), 2) == pytest.approx(1 / 0.9, rel=1e-14)
    assert f_value(DeformationSpec.quesne(0.7), 0) == 1.0


def test_bracket_examples():
    assert deformed_number(DeformationSpec.standard(), 7) == 7
    assert deformed_number(DeformationSpec.arik_coon(0.5), 3) == pytest.approx(1.75, rel=1e-15)
    assert deformed_number(DeformationSpec.quesne(0.9), 2) == pytest.approx(
        (0.9 ** -2 - 1) / 0.1, rel=1e-14)
    assert deformed_number(DeformationSpec.quesne(0.9), 2) == pytest.approx(2.345679012345679, rel=1e-14)
    for make in Q_KINDS:
        assert deformed_number(make(0.8), 0) == 0.0


def test_real_extension_examples():
    assert deformed_number_real(DeformationSpec.standard(), 2.5) == 2.5
    x = 7.0963
    assert deformed_number_real(DeformationSpec.arik_coon(0.9), x) == pytest.approx(
        (1 - 0.9 ** x) / 0.1, rel=1e-14)
    spec = DeformationSpec.quesne(1.1)
    assert deformed_number_real(spec, 4.0) == pytest.approx(deformed_number(spec, 4), rel=1e-14)


@pytest.mark.parametrize("spec", [
    DeformationSpec.standard(), DeformationSpec.arik_coon(0.7), DeformationSpec.arik_coon(1.3),
    DeformationSpec.penson_solomon(0.85), DeformationSpec.quesne(0.9), DeformationSpec.quesne(1.2),
    DeformationSpec.kerr(0.3),
])
def test_brackets_match_direct_sums(spec):
    n = np.arange(0, 41)
    got = deformed_number(spec, n)
    want = np.array([direct_bracket(spec, int(k)) for k in n])
    np.testing.assert_allclose(got, want, rtol=1e-13, atol=0)
    np.testing.assert_allclose(deformed_number_real(spec, n.astype(float)), want, rtol=1e-14)


def test_log_factorial_examples():
    for spec in (DeformationSpec.standard(), DeformationSpec.arik_coon(0.5), DeformationSpec.penson_solomon(0.3)):
        assert log_deformed_factorial(spec, 0) == 0.0
    assert log_deformed_factorial(DeformationSpec.standard(), 5) == pytest.approx(math.log(120), rel=1e-15)
    assert log_deformed_factorial(DeformationSpec.arik_coon(0.5), 3) == pytest.approx(math.log(2.625), rel=1e-15)


def test_log_factorial_survives_penson_solomon_growth():
    spec = DeformationSpec.penson_solomon(0.5)
    n = 200
    want = sum(math.log(k) - 2 * (k - 1) * math.log(0.5) for k in range(1, n + 1))
    assert log_deformed_factorial(spec, n) == pytest.approx(want, rel=1e-13)


# invariants

@pytest.mark.parametrize("spec", [
    DeformationSpec.standard(), DeformationSpec.arik_coon(0.6), DeformationSpec.penson_solomon(0.9),
    DeformationSpec.quesne(1.1), DeformationSpec.kerr(0.5), DeformationSpec.general(0.7, 0.9, 0.3, 0.2),
])
def test_commutator_identity(spec):
    n = np.arange(0, 30)
    lhs = deformed_number(spec, n + 1) - deformed_number(spec, n)
    f1, f0 = f_value(spec, n + 1), f_value(spec, n)
    rhs = (n + 1) * f1 ** 2 - n * f0 ** 2
    np.testing.assert_allclose(lhs, rhs, rtol=0, atol=1e-12 * max(1.0, np.max(np.abs(lhs))))


@given(q=q_values)
def test_arik_coon_relation(q):
    spec = DeformationSpec.arik_coon(q)
    n = np.arange(0, 21)
    lhs = deformed_number(spec, n + 1) - q * deformed_number(spec, n)
    scale = np.maximum(1.0, deformed_number(spec, n + 1))
    assert np.all(np.abs(lhs - 1.0) <= 1e-12 * scale)


@given(q=ps_q)
def test_penson_solomon_relation(q):
    spec = DeformationSpec.penson_solomon(q)
    n = np.arange(0, 21)
    lhs = deformed_number(spec, n + 1) - q ** -2 * deformed_number(spec, n)
    scale = np.maximum(q ** (-2.0 * n), deformed_number(spec, n + 1))
    assert np.all(np.abs(lhs - q ** (-2.0 * n)) <= 1e-12 * scale)


@given(q=q_values)
def test_quesne_relation(q):
    spec = DeformationSpec.quesne(q)
    n = np.arange(0, 21)
    lhs = deformed_number(spec, n + 1) - deformed_number(spec, n) / q
    scale = np.maximum(1.0, deformed_number(spec, n + 1))
    assert np.all(np.abs(lhs - 1.0 / q) <= 1e-12 * scale)


@given(k=st.floats(0.01, 3.0))
def test_kerr_su11_closure(k):
    """Matrix elements of [A, A+] = 2 A0, [A0, A+] = k A+, [A0, A] = -k A with A0 = 1/2 + k N."""
    size = 22
    spec = DeformationSpec.kerr(k)
    a = np.diag(np.sqrt(deformed_number(spec, np.arange(1, size))), 1)
    ad = a.T
    a0 = np.diag(0.5 + k * np.arange(size))
    inner = slice(0, size - 1)  # last state has its A+ partner outside the basis
    comm = a @ ad - ad @ a
    np.testing.assert_allclose(comm[inner, inner], 2 * a0[inner, inner], atol=1e-12 * (1 + k * size))
    np.testing.assert_allclose((a0 @ ad - ad @ a0), k * ad, atol=1e-12 * size)
    np.testing.assert_allclose((a0 @ a - a @ a0), -k * a, atol=1e-12 * size)


@pytest.mark.parametrize("make", Q_KINDS)
@pytest.mark.parametrize("sign", [-1, 1])
def test_q_to_one_limit(make, sign):
    q = 1 + sign * 1e-9
    if make == DeformationSpec.penson_solomon and q > 1:
        q = 1.0
    f = f_value(make(q), np.arange(1, 51))
    assert np.max(np.abs(f - 1)) < 1e-7


@pytest.mark.parametrize("sign", [-1, 1])
def test_first_order_kerr_form_arik_coon(sign):
    # signed deviation: q = 1 + d gives f^2 = 1 + (d/2)(n - 1) + O(d^2)
    d = sign * 1e-4
    n = np.arange(1, 21)
    f = f_value(DeformationSpec.arik_coon(1 + d), n)
    assert np.max(np.abs(f - np.sqrt(1 + 0.5 * d * (n - 1)))) < 50 * d ** 2 * 20


@pytest.mark.parametrize("sign", [-1, 1])
def test_first_order_kerr_form_quesne(sign):
    # Quesne at q is (1/q) times Arik-Coon at 1/q: Kerr-like up to a constant factor
    d = sign * 1e-4
    q = 1 + d
    n = np.arange(1, 21)
    f2 = f_value(DeformationSpec.quesne(q), n) ** 2
    assert np.max(np.abs(f2 - (1 - 0.5 * d * (n - 1)) / q)) < 50 * d ** 2 * 20


def test_first_order_kerr_form_penson_solomon():
    eps = 1e-4
    n = np.arange(1, 21)
    f = f_value(DeformationSpec.penson_solomon(1 - eps), n)
    assert np.max(np.abs(f - np.sqrt(1 + 2 * eps * (n - 1)))) < 50 * eps ** 2 * 20 ** 2


@given(q=st.floats(0.3, 3.0), n=st.integers(1, 40))
def test_general_specializations(q, n):
    ac = DeformationSpec.general(p=q, q=q, lam=0, mu=0)
    qs = DeformationSpec.general(p=q, q=q, lam=0.5, mu=1)
    assert deformed_number(ac, n) == pytest.approx(deformed_number(DeformationSpec.arik_coon(q), n), rel=1e-12)
    assert deformed_number(qs, n) == pytest.approx(deformed_number(DeformationSpec.quesne(q), n), rel=1e-12)
    if q <= 1:
        ps = DeformationSpec.general(p=1.0, q=q, lam=1, mu=0)
        assert deformed_number(ps, n) == pytest.approx(
            deformed_number(DeformationSpec.penson_solomon(q), n), rel=1e-12)


def test_general_p_limit_is_continuous():
    near = DeformationSpec.general(p=1 + 1e-12, q=0.9, lam=1, mu=0)
    at = DeformationSpec.general(p=1.0, q=0.9, lam=1, mu=0)
    n = np.arange(1, 30)
    np.testing.assert_allclose(deformed_number(near, n), deformed_number(at, n), rtol=1e-9)


def test_spec_validation():
    with pytest.raises(ValueError):
        DeformationSpec.penson_solomon(1.2)
    with pytest.raises(ValueError):
        DeformationSpec.arik_coon(0.0)
    with pytest.raises(ValueError):
        DeformationSpec.kerr(0.0)
    with pytest.raises(ValueError):
        DeformationSpec.general(p=-1, q=0.9, lam=0, mu=0)
    with pytest.raises(ValueError):
        DeformationSpec.general(p=1, q=0.9, lam=-1, mu=0)


def test_coupling_product():
    spec = DeformationSpec.arik_coon(0.5)
    assert coupling_product(spec, 1, 2) == pytest.approx(1.5 * 1.75, rel=1e-15)
    assert coupling_product(DeformationSpec.standard(), 9, 2) == 110.0
    x = 2.3
    assert coupling_product(spec, x, 2, continuous=True) == pytest.approx(
        deformed_number_real(spec, x + 1) * deformed_number_real(spec, x + 2), rel=1e-15)
    with pytest.raises(ValueError):
        coupling_product(spec, 1.5, 2)


# deformed exponential

def test_deformed_exp_standard_is_e():
    value, n_max = deformed_exp(DeformationSpec.standard(), 1.0, 1e-15)
    assert value == pytest.approx(math.e, rel=1e-15)
    assert n_max > 10


def test_deformed_exp_matches_direct_sum():
    spec = DeformationSpec.arik_coon(0.9)
    value, n_max = deformed_exp(spec, 5.0, 1e-15)
    terms, term = [], 1.0
    for n in range(3000):
        if n:
            term *= 5.0 / direct_bracket(spec, n)
        terms.append(term)
    assert value == pytest.approx(math.fsum(terms), rel=1e-13)
    assert 5.0 ** n_max / math.exp(log_deformed_factorial(spec, n_max)) <= 1e-15 * value


def test_deformed_exp_last_term_below_tolerance():
    spec = DeformationSpec.quesne(1.05)
    tol = 1e-12
    value, n_max = deformed_exp(spec, 18.0, tol)
    last = math.exp(n_max * math.log(18.0) - log_deformed_factorial(spec, n_max))
    assert last <= tol * value


def test_deformed_exp_domain():
    with pytest.raises(DomainError):
        deformed_exp(DeformationSpec.arik_coon(0.5), 3.0, 1e-12)
    with pytest.raises(DomainError):
        deformed_exp(DeformationSpec.quesne(1.5), 2.0, 1e-12)
    assert convergence_radius(DeformationSpec.arik_coon(0.5)) == pytest.approx(2.0)
    assert convergence_radius(DeformationSpec.quesne(1.25)) == pytest.approx(4.0)
    assert math.isinf(convergence_radius(DeformationSpec.penson_solomon(0.5)))
    assert math.isinf(convergence_radius(DeformationSpec.standard()))


def test_deformed_exp_hard_cap():
    # just inside the domain the series needs far more than the cap
    spec = DeformationSpec.arik_coon(0.99)
    with pytest.raises(NonConvergence):
        deformed_exp(spec, 99.999, 1e-15)
    assert MAX_TERMS == 4096
