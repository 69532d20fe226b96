import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moduncert import (
    AlgebraElement,
    DimensionMismatch,
    DomainError,
    identity,
    involution,
    is_positive,
    log_positive,
    norm,
    order_geq,
    zero,
)
from moduncert.algebra import add, from_json, mul, to_json


def elem(*vals):
    return AlgebraElement(np.array(vals, dtype=complex))


def random_elem(rng, d):
    return AlgebraElement(rng.standard_normal(d) + 1j * rng.standard_normal(d))


def test_mul_pointwise():
    a = elem(1 + 1j, 2)
    b = elem(1 - 1j, 3)
    assert np.allclose(mul(a, b).values, [2, 6])


def test_involution_conjugates():
    assert np.array_equal(involution(elem(1j, 1)).values, [-1j, 1])


def test_identity_law():
    rng = np.random.default_rng(0)
    for _ in range(20):
        a = random_elem(rng, 5)
        assert np.array_equal(mul(a, identity(5)).values, a.values)


def test_norm_is_max_modulus():
    assert norm(elem(3 + 4j, 1)) == pytest.approx(5.0)
    assert norm(identity(4)) == 1.0
    assert norm(zero(3)) == 0.0


def test_cstar_identity():
    rng = np.random.default_rng(1)
    for _ in range(1000):
        a = random_elem(rng, int(rng.integers(1, 9)))
        lhs = norm(mul(involution(a), a))
        assert abs(lhs - norm(a) ** 2) <= 1e-12 * norm(a) ** 2


def test_is_positive():
    assert is_positive(elem(1, 0.5), 1e-12)
    assert not is_positive(elem(1, -0.5), 1e-12)
    assert not is_positive(elem(1, 1e-6j + 1), 1e-12)
    # tolerance admits small negative and small imaginary parts
    assert is_positive(elem(-1e-10, 1), 1e-9)


def test_order_geq_reflexive():
    rng = np.random.default_rng(2)
    for _ in range(50):
        a = AlgebraElement(rng.random(4).astype(complex))
        assert order_geq(a, a, 0.0)


def test_positive_cone_closed_under_add_mul():
    rng = np.random.default_rng(3)
    for _ in range(200):
        a = AlgebraElement(rng.random(6).astype(complex))
        b = AlgebraElement(rng.random(6).astype(complex))
        assert is_positive(add(a, b), 1e-12)
        assert is_positive(mul(a, b), 1e-12)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        add(identity(2), identity(3))
    with pytest.raises(DimensionMismatch):
        order_geq(identity(2), identity(3), 0.0)


def test_log_positive_values():
    out = log_positive(elem(1.0, np.e), 1e-300)
    assert np.allclose(out.values, [0.0, 1.0])
    assert np.all(out.values.imag == 0.0)
    assert np.allclose(log_positive(identity(4)).values, 0.0)


def test_log_positive_rejects_below_floor():
    with pytest.raises(DomainError, match="point 1"):
        log_positive(elem(1.0, 0.0), 1e-300)
    with pytest.raises(DomainError):
        log_positive(elem(1.0, -2.0), 1e-300)


def test_log_dominated_by_log_of_norm():
    rng = np.random.default_rng(4)
    for _ in range(200):
        a = AlgebraElement((rng.random(5) + 1e-6).astype(complex))
        s = norm(a)
        bound = AlgebraElement(np.full(5, np.log(s), dtype=complex))
        assert order_geq(bound, log_positive(a), 1e-12)


def test_log_monotone_pointwise():
    rng = np.random.default_rng(5)
    for _ in range(200):
        a = AlgebraElement((rng.random(5) + 1e-10).astype(complex))
        b = add(a, AlgebraElement(rng.random(5).astype(complex)))
        assert order_geq(b, a, 0.0)
        assert order_geq(log_positive(b), log_positive(a), 1e-12)


def test_log_additive_on_positives():
    rng = np.random.default_rng(6)
    for _ in range(200):
        a = AlgebraElement((rng.random(5) + 0.1).astype(complex))
        b = AlgebraElement((rng.random(5) + 0.1).astype(complex))
        lhs = log_positive(mul(a, b)).values
        rhs = (log_positive(a) + log_positive(b)).values
        assert np.max(np.abs(lhs - rhs)) <= 1e-12


finite = st.floats(allow_nan=False, allow_infinity=False, min_value=-1e6, max_value=1e6)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(finite, finite), min_size=1, max_size=8),
       st.lists(st.tuples(finite, finite), min_size=1, max_size=8))
def test_mul_commutative_and_involution_antimultiplicative(xs, ys):
    d = min(len(xs), len(ys))
    a = AlgebraElement(np.array([complex(r, i) for r, i in xs[:d]]))
    b = AlgebraElement(np.array([complex(r, i) for r, i in ys[:d]]))
    # equality up to rounding: fused multiply-add makes complex products
    # sensitive to operand order in the last ulp
    scale = max(1.0, float(np.max(np.abs(a.values)) * np.max(np.abs(b.values))))
    assert np.max(np.abs(mul(a, b).values - mul(b, a).values)) <= 1e-15 * scale
    lhs = involution(mul(a, b)).values
    rhs = mul(involution(b), involution(a)).values
    assert np.max(np.abs(lhs - rhs)) <= 1e-15 * scale


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(finite, finite), min_size=1, max_size=8))
def test_json_round_trip(xs):
    a = AlgebraElement(np.array([complex(r, i) for r, i in xs]))
    back = from_json(to_json(a))
    assert np.array_equal(back.values, a.values)


def test_from_json_diagnostics():
    with pytest.raises(ValueError, match="entry 1"):
        from_json([[1.0, 0.0], [1.0]])
    with pytest.raises(ValueError, match="pairs"):
        from_json({"not": "a list"})


def test_immutability():
    a = identity(3)
    with pytest.raises(ValueError):
        a.values[0] = 7.0
