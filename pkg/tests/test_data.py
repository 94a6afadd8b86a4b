import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from lpsvm.core import LabeledDataset, slack
from lpsvm.data import FoldSplit, ToySpec, gen_toy, kfold, load_csv, save_csv, standardize
from lpsvm.solver import TrainConfig, train


# ---------------------------------------------------------------- gen_toy

def test_gen_toy_is_deterministic():
    a = gen_toy(ToySpec(seed=42))
    b = gen_toy(ToySpec(seed=42))
    assert np.array_equal(a.X, b.X)
    assert np.array_equal(a.y, b.y)


def test_gen_toy_counts_and_labels():
    ds = gen_toy(ToySpec(seed=1, n_per_class=50))
    assert ds.n == 100 and ds.k == 2
    assert int(np.sum(ds.y == 1.0)) == 50
    assert int(np.sum(ds.y == -1.0)) == 50


def test_gen_toy_seed_changes_data():
    assert not np.array_equal(gen_toy(ToySpec(seed=1)).X, gen_toy(ToySpec(seed=2)).X)


def test_gen_toy_wide_separation_trains_to_zero_slack():
    # means 10 standard deviations apart: separable, so p=1 training reaches
    # zero slack on every point
    spec = ToySpec(seed=5, mean_pos=(10.0, 10.0), mean_neg=(0.0, 0.0), cov_scale=1.0)
    ds = gen_toy(spec)
    cfg = TrainConfig(C=10.0, p=1.0, s=100.0, eta=1e-3, max_iter=8000, tol_grad=1e-8)
    model, _ = train(ds, cfg)
    report = slack(model, ds)
    assert report.n_sv == 0
    assert float(report.xi.max()) == 0.0


def test_toy_spec_validation():
    with pytest.raises(ValueError):
        ToySpec(seed=0, n_per_class=0)
    with pytest.raises(ValueError):
        ToySpec(seed=0, cov_scale=0.0)


# -------------------------------------------------------------------- csv

def test_load_csv_two_rows(tmp_path):
    path = tmp_path / "d.csv"
    path.write_text("+1,0.5,1.25\n-1,2.0,0.0\n")
    ds = load_csv(path)
    assert ds.n == 2 and ds.k == 2
    assert ds.X.tolist() == [[0.5, 1.25], [2.0, 0.0]]
    assert ds.y.tolist() == [1.0, -1.0]


def test_load_csv_bad_label_names_line(tmp_path):
    path = tmp_path / "d.csv"
    path.write_text("+1,0.5\n-1,2.0\n2,1.0\n")
    with pytest.raises(ValueError, match="line 3"):
        load_csv(path)


def test_load_csv_skips_comments_and_blanks(tmp_path):
    path = tmp_path / "d.csv"
    path.write_text("# a comment\n\n+1,1.0\n# another\n-1,2.0\n")
    ds = load_csv(path)
    assert ds.n == 2


def test_load_csv_header_flag(tmp_path):
    path = tmp_path / "d.csv"
    path.write_text("label,x0\n+1,1.0\n-1,2.0\n")
    assert load_csv(path, has_header=True).n == 2
    with pytest.raises(ValueError, match="line 1"):
        load_csv(path)


def test_load_csv_ragged_row_names_line(tmp_path):
    path = tmp_path / "d.csv"
    path.write_text("+1,1.0,2.0\n-1,2.0\n")
    with pytest.raises(ValueError, match="line 2"):
        load_csv(path)


def test_load_csv_nonfinite_and_malformed(tmp_path):
    path = tmp_path / "d.csv"
    path.write_text("+1,inf\n")
    with pytest.raises(ValueError, match="line 1"):
        load_csv(path)
    path.write_text("+1,abc\n")
    with pytest.raises(ValueError, match="line 1"):
        load_csv(path)


def test_load_csv_empty_file(tmp_path):
    path = tmp_path / "d.csv"
    path.write_text("# only a comment\n")
    with pytest.raises(ValueError, match="no data"):
        load_csv(path)


def test_load_csv_missing_file():
    with pytest.raises(OSError):
        load_csv("/nonexistent/nowhere.csv")


@given(st.integers(1, 8).flatmap(lambda n: st.integers(1, 4).flatmap(
    lambda k: st.tuples(
        arrays(np.float64, (n, k),
               elements=st.floats(-1e12, 1e12, allow_nan=False, allow_infinity=False)),
        arrays(np.float64, (n,), elements=st.sampled_from([-1.0, 1.0])),
    ))))
def test_csv_round_trip_is_exact(tmp_path_factory, data):
    ds = LabeledDataset(*data)
    path = tmp_path_factory.mktemp("rt") / "d.csv"
    save_csv(ds, path)
    back = load_csv(path)
    assert np.array_equal(back.X, ds.X)
    assert np.array_equal(back.y, ds.y)


def test_save_csv_header_round_trip(tmp_path):
    ds = gen_toy(ToySpec(seed=3, n_per_class=4))
    path = tmp_path / "d.csv"
    save_csv(ds, path, header=True)
    back = load_csv(path, has_header=True)
    assert np.array_equal(back.X, ds.X)
    assert np.array_equal(back.y, ds.y)


# ------------------------------------------------------------------ kfold

def test_kfold_exact_division():
    ds = LabeledDataset(np.arange(20.0).reshape(10, 2),
                        [1.0, -1.0] * 5)
    split = kfold(ds, k=5, seed=0)
    for fold in range(5):
        test_idx = split.test_indices(fold)
        assert test_idx.size == 2
        assert set(ds.y[test_idx]) == {-1.0, 1.0}


def test_kfold_is_a_partition():
    ds = gen_toy(ToySpec(seed=4, n_per_class=13))
    split = kfold(ds, k=4, seed=1)
    seen = np.concatenate([split.test_indices(f) for f in range(4)])
    assert sorted(seen.tolist()) == list(range(ds.n))
    for fold in range(4):
        train_idx = set(split.train_indices(fold).tolist())
        test_idx = set(split.test_indices(fold).tolist())
        assert not train_idx & test_idx
        assert len(train_idx | test_idx) == ds.n


@given(st.integers(2, 6), st.integers(0, 2**32 - 1), st.integers(6, 30), st.integers(6, 30))
def test_kfold_stratified_balance(k, seed, n_pos, n_neg):
    X = np.arange(float(n_pos + n_neg)).reshape(-1, 1)
    y = np.array([1.0] * n_pos + [-1.0] * n_neg)
    ds = LabeledDataset(X, y)
    split = kfold(ds, k=k, seed=seed)
    for label in (1.0, -1.0):
        sizes = [int(np.sum((split.assignments == f) & (ds.y == label)))
                 for f in range(k)]
        assert max(sizes) - min(sizes) <= 1
        assert sum(sizes) == int(np.sum(ds.y == label))


def test_kfold_deterministic_per_seed():
    ds = gen_toy(ToySpec(seed=6, n_per_class=10))
    a = kfold(ds, k=3, seed=9)
    b = kfold(ds, k=3, seed=9)
    c = kfold(ds, k=3, seed=10)
    assert np.array_equal(a.assignments, b.assignments)
    assert not np.array_equal(a.assignments, c.assignments)


def test_kfold_rejects_small_classes_and_k():
    ds = LabeledDataset([[1.0], [2.0], [3.0]], [1.0, 1.0, -1.0])
    with pytest.raises(ValueError, match="class -1"):
        kfold(ds, k=2, seed=0)
    with pytest.raises(ValueError, match="k must be"):
        kfold(ds, k=1, seed=0)


# ------------------------------------------------------------ standardize

def test_standardize_fit_statistics():
    ds = gen_toy(ToySpec(seed=7, n_per_class=25))
    (out,) = standardize(ds)
    assert np.allclose(out.X.mean(axis=0), 0.0, atol=1e-12)
    assert np.allclose(out.X.std(axis=0), 1.0, atol=1e-12)


def test_standardize_applies_train_stats_to_test():
    train_ds = LabeledDataset([[0.0], [2.0]], [1.0, -1.0])  # mean 1, std 1
    test_ds = LabeledDataset([[3.0]], [1.0])
    _, out = standardize(train_ds, test_ds)
    assert out.X.tolist() == [[2.0]]


def test_standardize_constant_feature():
    ds = LabeledDataset([[5.0, 1.0], [5.0, 3.0]], [1.0, -1.0])
    (out,) = standardize(ds)
    assert out.X[:, 0].tolist() == [0.0, 0.0]
