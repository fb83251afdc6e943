import math

import pytest

import fuzzyclf as fc


def test_defuzzifiers():
    t = fc.FuzzyNumber.triangular(1, 2, 4)
    assert fc.defuzzify(t, "mom") == 2
    assert fc.defuzzify(t, "cog") == pytest.approx(7 / 3)
    assert fc.defuzzify(fc.FuzzyNumber.trapezoidal(0, 1, 3, 4), "alc") == pytest.approx(2)
    assert fc.defuzzify(fc.Interval(2, 6), "m2") == 4
    assert t.membership(3) == pytest.approx(0.5)
    with pytest.raises(fc.DomainError):
        fc.FuzzyNumber.triangular(3, 2, 1)
    with pytest.raises(fc.Error):
        fc.defuzzify(fc.Interval(0, 1), "val")


def test_svm_pipeline(tmp_path):
    ds = fc.generate_synthetic(n=300, num_features=5, num_classes=3, seed=4, center_spread=8)
    train, val, test = fc.split(ds, seed=1)
    assert len(train) + len(val) + len(test) == 300
    model = fc.train_svm(train, defuzz="val", kernel="rbf", C=10)
    report = fc.evaluate(model, test)
    assert report["accuracy"] >= 0.9
    assert len(model.scores(test.features(0))) == 3
    path = tmp_path / "model.kv"
    fc.save_model(model, str(path))
    back = fc.load_model(str(path))
    assert fc.predict(back, test)[0] == fc.predict(model, test)[0]


def test_mlp_and_intervals(tmp_path):
    raw = fc.generate_synthetic_intervals(n=200, num_features=4, num_classes=2, seed=2, center_spread=6)
    assert raw.schema == ["interval"] * 4
    ds = fc.convert_intervals(raw, 0.5)
    iv = raw.features(0)[0]
    assert ds.features(0)[0].params[1] == iv.midpoint
    model = fc.train_mlp(ds, hidden1=8, hidden2=8, epochs=20, seed=3)
    assert len(model.loss_trace) == 20
    probs = model.probabilities(ds.features(0))
    assert sum(probs) == pytest.approx(1.0)
    csv = tmp_path / "d.csv"
    fc.write_csv(ds, str(csv))
    assert fc.read_csv(str(csv)) == ds


def test_oversampling_and_metrics():
    ds = fc.generate_synthetic(n=40, num_features=3, num_classes=2, seed=1)
    grown = fc.smote_oversample(ds, 30, 5, 7)
    assert grown.class_counts() == [30, 30]
    assert fc.accuracy([0, 1, 2], [0, 1, 1]) == pytest.approx(2 / 3)
    assert fc.balanced_accuracy([0, 0, 0, 0], [0, 0, 1, 1], 2) == 0.5
    assert fc.macro_auc([[0.5, 0.5]] * 4, [0, 0, 1, 1], 2) == 0.5
    stat, p = fc.wilcoxon_rank_sum([1, 2], [3, 4])
    assert stat == 3 and abs(p - 1 / 3) <= 0.15


def test_rademacher():
    pts = [[float(i == j) for j in range(9)] for i in range(9)]
    r = fc.rademacher(pts, kernel="linear", lambda_=2.0, draws=10)
    assert r["estimate"] == pytest.approx(2 / 3)
    assert r["estimate"] <= r["bound"] + 3 * r["std_error"]
    assert fc.lemma1_bound(2, 3, 5, 100) == pytest.approx(3)
    assert fc.theorem3_gap_bound(1, 1, 1, 1, 1, math.exp(-1), 2) == pytest.approx(3)
