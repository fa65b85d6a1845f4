import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import oracles
from mcdm_aism.errors import DegenerateError
from mcdm_aism.model import CriterionSpec, NormalizedMatrix
from mcdm_aism.weights import entropy_weights

# -(0.2 ln 0.2 + 0.3 ln 0.3 + 0.5 ln 0.5) / ln 3, evaluated to 30 digits with mpmath
GOLDEN_E1 = 0.937230563216129533278141895314


def nm(values):
    values = np.asarray(values, dtype=float)
    n, m = values.shape
    return NormalizedMatrix([f"A{i}" for i in range(n)], [CriterionSpec(f"C{j}") for j in range(m)], values)


def test_golden_three_by_two():
    rep = entropy_weights(nm([[0.2, 1 / 3], [0.3, 1 / 3], [0.5, 1 / 3]]))
    assert rep.entropy[0] == pytest.approx(GOLDEN_E1, abs=1e-15)
    assert rep.entropy[1] == 1.0
    np.testing.assert_allclose(rep.weights.weights, [1.0, 0.0], atol=1e-15)
    assert rep.variation[0] == 1.0 - rep.entropy[0]


def test_constant_column_gets_zero_weight():
    rep = entropy_weights(nm([[0.4, 0.1], [0.4, 0.7], [0.4, 0.3]]))
    assert rep.entropy[0] == 1.0
    assert rep.variation[0] == 0.0
    assert rep.weights.weights[0] == 0.0


def test_permuted_column_gets_equal_weight():
    rep = entropy_weights(nm([[0.1, 0.6, 0.3], [0.3, 0.1, 0.3], [0.6, 0.3, 0.5]]))
    assert rep.weights.weights[0] == pytest.approx(rep.weights.weights[1], abs=1e-12)


def test_all_zero_column_and_uniform_fallback():
    rep = entropy_weights(nm([[0.0, 0.5], [0.0, 0.5]]))
    assert rep.entropy[0] == 1.0
    np.testing.assert_allclose(rep.weights.weights, [0.5, 0.5])


def test_zero_entries_use_continuous_extension():
    rep = entropy_weights(nm([[0.0, 0.2], [1.0, 0.3]]))
    assert rep.entropy[0] == 0.0
    assert np.all(np.isfinite(rep.rho))


def test_single_alternative_is_degenerate():
    with pytest.raises(DegenerateError):
        entropy_weights(nm([[0.3, 0.4]]))


def test_rho_columns_sum_to_one():
    rng = np.random.default_rng(5)
    rep = entropy_weights(nm(rng.uniform(0.01, 1, size=(6, 4))))
    np.testing.assert_allclose(rep.rho.sum(axis=0), 1.0, atol=1e-12)


def test_more_concentrated_column_weighs_more():
    # same column sum; the second spreads mass toward row 0
    base = [0.25, 0.25, 0.25, 0.25]
    spread = [0.55, 0.15, 0.15, 0.15]
    rep = entropy_weights(nm(np.column_stack([base, spread, [0.4, 0.3, 0.2, 0.1]])))
    ref = oracles.entropy_weights([[b, s, 0.0] for b, s in zip(base, spread)])
    assert rep.variation[1] > rep.variation[0]
    assert ref[1] > ref[0]


def test_report_formats():
    rep = entropy_weights(nm([[0.2, 0.5], [0.8, 0.5]]))
    csv_text = rep.to_csv()
    assert csv_text.splitlines()[0] == "criterion,entropy,variation,weight_percent"
    assert csv_text.splitlines()[1].endswith(",100.000")
    assert "weight %" in rep.to_text()


matrices = arrays(np.float64, st.tuples(st.integers(2, 8), st.integers(1, 6)),
                  elements=st.floats(0.0, 1.0, allow_nan=False))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_weights_sum_to_one_and_match_oracle(values):
    rep = entropy_weights(nm(values))
    assert rep.weights.weights.sum() == pytest.approx(1.0, abs=1e-9)
    assert np.all((rep.entropy >= 0) & (rep.entropy <= 1))
    np.testing.assert_allclose(rep.weights.weights, oracles.entropy_weights(values.tolist()), atol=1e-9)


@settings(max_examples=50, deadline=None)
@given(matrices, st.randoms(use_true_random=False))
def test_row_permutation_invariant(values, rnd):
    perm = list(range(values.shape[0]))
    rnd.shuffle(perm)
    a = entropy_weights(nm(values)).weights.weights
    b = entropy_weights(nm(values[perm])).weights.weights
    np.testing.assert_allclose(a, b, atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(matrices)
def test_duplicate_column_gets_equal_weight(values):
    rep = entropy_weights(nm(np.column_stack([values, values[:, 0]])))
    w = rep.weights.weights
    assert math.isclose(w[0], w[-1], abs_tol=1e-12)
