"""Model families, grid coding, dataset IO."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qens.model import (
    Dataset,
    ModelFamily,
    ParameterGrid,
    accuracy,
    correct_counts,
    decode_all,
    decode_theta,
    encode_theta,
    grid_accuracies,
    grid_correct_counts,
    mlp_two_hidden,
    negate_params,
    perceptron,
    predict,
    predict_many,
    threshold1d,
)


# --- family validation ---------------------------------------------------

def test_parameter_counts():
    assert threshold1d().parameter_count == 2
    assert perceptron(3).parameter_count == 4
    assert mlp_two_hidden(2, 2, 2).parameter_count == 2 * 2 + 2 * 2 + 2


def test_threshold_requires_univariate():
    with pytest.raises(ValueError):
        ModelFamily("threshold1d", 2)


def test_point_symmetry_flags():
    assert perceptron(2).is_point_symmetric
    assert mlp_two_hidden(1).is_point_symmetric
    assert not threshold1d().is_point_symmetric


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        ModelFamily("tree", 1)


# --- predictions ----------------------------------------------------------

def test_threshold_prediction_values():
    fam = threshold1d()
    thetas = np.array([[1.0, 0.5], [-1.0, 0.5]])
    xs = np.array([[0.0], [1.0]])
    out = predict_many(fam, thetas, xs)
    assert out.tolist() == [[-1, 1], [1, -1]]


def test_perceptron_prediction_matches_manual():
    fam = perceptron(2)
    rng = np.random.default_rng(0)
    thetas = rng.normal(size=(5, 3))
    xs = rng.normal(size=(7, 2))
    out = predict_many(fam, thetas, xs)
    margins = thetas[:, :2] @ xs.T + thetas[:, 2:3]
    assert np.array_equal(out, np.where(margins >= 0, 1, -1))


def test_mlp_prediction_matches_manual():
    fam = mlp_two_hidden(2, 2, 2)
    rng = np.random.default_rng(1)
    theta = rng.normal(size=(10,))
    x = rng.normal(size=(2,))
    w1 = theta[0:4].reshape(2, 2)
    w2 = theta[4:8].reshape(2, 2)
    w3 = theta[8:10]
    h1 = np.tanh(w1 @ x)
    h2 = np.tanh(w2 @ h1)
    margin = float(w3 @ h2)
    assert predict(fam, theta, x) == (1 if margin >= 0 else -1)


def test_sign_zero_margin_is_plus_one():
    fam = perceptron(1)
    assert predict(fam, np.array([1.0, 0.0]), np.array([0.0])) == 1
    # negative zero margin counts as zero
    assert predict(fam, np.array([-0.0, 0.0]), np.array([5.0])) == 1


def test_point_symmetry_of_predictions():
    rng = np.random.default_rng(2)
    for fam in (perceptron(3), mlp_two_hidden(2, 2, 2)):
        thetas = rng.normal(size=(40, fam.parameter_count))
        xs = rng.normal(size=(25, fam.input_dim))
        a = predict_many(fam, thetas, xs)
        b = predict_many(fam, negate_params(thetas), xs)
        assert np.array_equal(a, -b)


def test_threshold_not_point_symmetric():
    fam = threshold1d()
    theta = np.array([1.0, 0.5])
    x = np.array([0.0])
    # between the two mirrored thresholds both signs flip, so the
    # negated parameters reproduce the same output instead of the opposite
    assert predict(fam, theta, x) == predict(fam, negate_params(theta), x) == -1


# --- grid coding ----------------------------------------------------------

def test_decode_three_bit_interval():
    grid = ParameterGrid(((-1.0, 1.0),), 3)
    assert decode_theta(0, grid)[0] == -1.0
    assert decode_theta(2, grid)[0] == -0.42857142857142855
    assert decode_theta(7, grid)[0] == 1.0


def test_decode_endpoints_exact():
    grid = ParameterGrid(((-2.5, 7.25),), 4)
    assert decode_theta(0, grid)[0] == -2.5
    assert decode_theta(15, grid)[0] == 7.25


def test_decode_negation_exact_on_symmetric_interval():
    grid = ParameterGrid(((-1.0, 1.0),), 5)
    vals = decode_all(grid).ravel()
    assert np.array_equal(vals, -vals[::-1])


def test_decode_msb_first_parameter_packing():
    grid = ParameterGrid(((-1.0, 1.0), (0.0, 3.0)), 2)
    # index = p0_bits * 4 + p1_bits
    assert np.array_equal(decode_theta(0b0110, grid), np.array([-1.0 / 3.0, 2.0]))


def test_decode_all_matches_decode_theta():
    grid = ParameterGrid(((-1.0, 2.0), (0.5, 1.5)), 3)
    table = decode_all(grid)
    for i in range(grid.size):
        assert np.array_equal(table[i], decode_theta(i, grid))


@given(st.integers(1, 5), st.integers(1, 3), st.data())
@settings(max_examples=60)
def test_encode_decode_bijection(bits, params, data):
    grid = ParameterGrid(tuple((-1.5, 2.0) for _ in range(params)), bits)
    index = data.draw(st.integers(0, grid.size - 1))
    assert encode_theta(decode_theta(index, grid), grid) == index


def test_encode_rounds_to_nearest_tick():
    grid = ParameterGrid(((-1.0, 1.0),), 2)
    # ticks at -1, -1/3, 1/3, 1
    assert encode_theta(np.array([-0.9]), grid) == 0
    assert encode_theta(np.array([0.2]), grid) == 2


def test_grid_validation():
    with pytest.raises(ValueError):
        ParameterGrid(((1.0, -1.0),), 2)
    with pytest.raises(ValueError):
        ParameterGrid(((-1.0, 1.0),), 0)
    with pytest.raises(ValueError):
        ParameterGrid(((-np.inf, 1.0),), 2)


def test_grid_symmetry_flag():
    assert ParameterGrid(((-1.0, 1.0), (-2.0, 2.0)), 2).is_symmetric
    assert not ParameterGrid(((-1.0, 1.0), (0.0, 2.0)), 2).is_symmetric


def test_index_complement_negates_on_symmetric_grid():
    grid = ParameterGrid(((-1.0, 1.0), (-3.0, 3.0)), 3)
    table = decode_all(grid)
    assert np.array_equal(table, -table[::-1])


# --- dataset --------------------------------------------------------------

def test_dataset_validation():
    with pytest.raises(ValueError):
        Dataset(np.array([[0.0]]), np.array([2]))
    with pytest.raises(ValueError):
        Dataset(np.array([[np.nan]]), np.array([1]))
    with pytest.raises(ValueError):
        Dataset(np.zeros((0, 1)), np.zeros((0,), dtype=int))


def test_dataset_arrays_write_protected():
    ds = Dataset(np.array([[1.0]]), np.array([1]))
    with pytest.raises(ValueError):
        ds.x[0, 0] = 2.0


def test_dataset_csv_round_trip(tmp_path):
    rng = np.random.default_rng(3)
    ds = Dataset(rng.normal(size=(9, 2)), rng.choice([-1, 1], size=9))
    p1 = tmp_path / "a.csv"
    p2 = tmp_path / "b.csv"
    ds.to_csv(p1)
    back = Dataset.read_csv(p1)
    back.to_csv(p2)
    assert p1.read_bytes() == p2.read_bytes()
    assert np.array_equal(ds.x, back.x) and np.array_equal(ds.y, back.y)


def test_dataset_csv_header_and_exact_values(tmp_path):
    ds = Dataset(np.array([[0.1, -2.0], [3.5, 4.25]]), np.array([-1, 1]))
    p = tmp_path / "d.csv"
    ds.to_csv(p)
    lines = p.read_text().splitlines()
    assert lines[0] == "x1,x2,y"
    assert lines[1] == "0.1,-2.0,-1"
    assert lines[2] == "3.5,4.25,1"


def test_read_csv_rejects_bad_label(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("x1,y\n0.5,0\n")
    with pytest.raises(ValueError):
        Dataset.read_csv(p)


def test_read_csv_rejects_bad_header(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("a,b\n0.5,1\n")
    with pytest.raises(ValueError):
        Dataset.read_csv(p)


def test_read_csv_rejects_ragged_row(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("x1,x2,y\n0.5,1\n")
    with pytest.raises(ValueError):
        Dataset.read_csv(p)


# --- scoring --------------------------------------------------------------

def test_correct_counts_and_accuracy(region_dataset):
    fam = perceptron(1)
    grid = ParameterGrid(((-1.0, 1.0), (-1.0, 1.0)), 1)
    counts = grid_correct_counts(fam, grid, region_dataset)
    assert counts.tolist() == [25, 8, 42, 25]
    acc = grid_accuracies(fam, grid, region_dataset)
    assert np.allclose(acc, [0.5, 0.16, 0.84, 0.5], atol=0)
    theta = decode_theta(2, grid)
    assert accuracy(fam, theta, region_dataset) == 0.84


def test_count_complement_under_negation():
    rng = np.random.default_rng(4)
    fam = perceptron(2)
    thetas = rng.normal(size=(30, 3))
    ds = Dataset(rng.normal(size=(11, 2)), rng.choice([-1, 1], size=11))
    c = correct_counts(fam, thetas, ds)
    c_neg = correct_counts(fam, negate_params(thetas), ds)
    assert np.array_equal(c + c_neg, np.full(30, 11))


def test_grid_family_mismatch_rejected(region_dataset):
    fam = perceptron(2)
    grid = ParameterGrid(((-1.0, 1.0), (-1.0, 1.0)), 1)
    with pytest.raises(ValueError):
        grid_accuracies(fam, grid, region_dataset)


def test_dataset_dimension_mismatch_rejected(region_dataset):
    fam = perceptron(2)
    thetas = np.zeros((1, 3))
    with pytest.raises(ValueError):
        correct_counts(fam, thetas, region_dataset)
