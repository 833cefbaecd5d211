import math
import random

import pytest

import cvbench


def test_default_seeds():
    assert cvbench.default_seeds(3) == [11111, 22222, 33333]


def test_assign_folds_balanced_and_deterministic():
    a = cvbench.assign_folds(17, 5, 11111)
    b = cvbench.assign_folds(17, 5, 11111)
    assert a == b
    counts = [a.count(f) for f in range(1, 6)]
    assert max(counts) - min(counts) <= 1
    assert sum(counts) == 17


def test_auc_and_enhancement():
    y = [1, 1, 0, 0]
    assert cvbench.auc(y, [0.9, 0.8, 0.2, 0.1]) == 1.0
    assert cvbench.auc([1, 0], [0.5, 0.5]) == 0.5
    yy = [1.0] * 50 + [0.0] * 450
    scores = [1.0 - i * 1e-4 for i in range(500)]
    assert cvbench.initial_enhancement(yy, scores, 50) == pytest.approx(10.0)


def test_binary_measures_dict():
    b = cvbench.binary_measures([1, 1, 0, 0], [0.9, 0.4, 0.6, 0.1])
    assert set(b) == {"error_rate", "sensitivity", "specificity", "ppv", "f1"}
    assert b["error_rate"] == pytest.approx(0.5)


def test_curves():
    y = [1.0, 0.0, 1.0, 0.0]
    acc = cvbench.accumulation(y, [0.9, 0.1, 0.8, 0.2], 4)
    assert acc == [1.0, 2.0, 2.0, 2.0]
    assert cvbench.ideal_curve(y, 4) == [1.0, 2.0, 2.0, 2.0]
    assert cvbench.random_curve(y, 2) == [0.5, 1.0]
    assert cvbench.default_max_select(3311) == 300


def test_distributions():
    assert cvbench.f_cdf(1.0, 5, 5) == pytest.approx(0.5, abs=1e-10)
    assert cvbench.t_cdf(0.0, 10) == 0.5
    x = 2.0 / math.sqrt(2.0)
    expected = cvbench.t_cdf(x, 34) - cvbench.t_cdf(-x, 34)
    assert cvbench.studentized_range_cdf(2.0, 2, 34) == pytest.approx(expected, abs=1e-6)


def test_anova_and_tukey():
    rows = [
        (1, "S", "a", 1.0),
        (1, "S", "b", 3.0),
        (2, "S", "a", 2.0),
        (2, "S", "b", 5.0),
    ]
    a = cvbench.anova_blocked(rows, "auc")
    assert a["split"]["ss"] == pytest.approx(2.25)
    assert a["combo"]["ss"] == pytest.approx(6.25)
    assert a["error"]["ss"] == pytest.approx(0.25)

    rng = random.Random(7)
    rows = [
        (s, "S", m, rng.random())
        for s in (1, 2, 3)
        for m in ("a", "b", "c")
    ]
    pairs = cvbench.tukey_kramer(rows, "auc")
    assert len(pairs) == 3
    for p in pairs:
        assert 0.0 <= p["p_adj"] <= 1.0


def test_errors_surface_as_cvbench_error():
    with pytest.raises(cvbench.CvbenchError):
        cvbench.auc([1, 1], [0.5, 0.6])  # no negatives
    with pytest.raises(cvbench.CvbenchError):
        cvbench.f_cdf(-1.0, 2, 3)


def test_fit_predict_and_defaults():
    defaults = cvbench.make_model_defaults(100, 16, True, 10)
    assert defaults["KNN"]["k"] == 10.0
    assert defaults["NNet"] == {"size": 2.0, "decay": 0.0}

    rng = random.Random(3)
    train_x = [[rng.uniform(-1, 1) for _ in range(4)] for _ in range(40)]
    train_y = [1.0 if i < 15 else 0.0 for i in range(40)]
    for r in range(15):
        train_x[r][0] += 1.5
    test_x = [[1.5, 0.0, 0.0, 0.0], [-1.0, 0.0, 0.0, 0.0]]
    preds = cvbench.fit_predict("KNN", {"k": 5.0}, train_x, train_y, test_x, True, 1)
    assert len(preds) == 2
    assert preds[0] > preds[1]
    assert all(0.0 <= p <= 1.0 for p in preds)


def test_run_model_train(tmp_path):
    rng = random.Random(11)
    data = tmp_path / "data.csv"
    with data.open("w") as f:
        f.write("id,response," + ",".join(f"x{i}" for i in range(5)) + "\n")
        for r in range(40):
            y = 1 if r < 12 else 0
            vals = [rng.uniform(-1, 1) + (1.4 * y if i % 2 == 0 else 0.0) for i in range(5)]
            f.write(f"r{r},{y}," + ",".join(f"{v:.6f}" for v in vals) + "\n")
    n_entries = cvbench.run_model_train(
        str(data),
        "response",
        "id",
        [("SetA", 5)],
        ["KNN", "Tree"],
        4,
        2,
        str(tmp_path / "run"),
        1,
    )
    assert n_entries == 2 * 1 * 2  # splits x sets x methods
    assert (tmp_path / "run" / "predictions.csv").exists()
    assert (tmp_path / "run" / "manifest.json").exists()
