import math

import pytest

import extremalk as ek


def test_max_stable_values():
    assert ek.max_stable_cdf("frechet", 1.0, 1.0) == pytest.approx(math.exp(-1))
    assert ek.max_stable_cdf("gumbel", 0.0, 0.0) == pytest.approx(math.exp(-1))
    assert ek.max_stable_quantile("frechet", 2.0, 0.5) == pytest.approx(
        1.20112240878644979, rel=1e-12
    )
    a, b = ek.stability_norming("frechet", 2.0, 4)
    assert (a, b) == (pytest.approx(2.0), 0.0)


def test_catalog_and_base():
    names = {row["name"] for row in ek.catalog()}
    assert len(names) >= 10
    assert {"pareto", "uniform", "normal", "exponential"} <= names
    expo = ek.make_base("exponential")
    assert expo.cdf(expo.quantile(0.3)) == pytest.approx(0.3, rel=1e-12)
    assert expo.mda == ("gumbel", 0.0)


def test_transforms():
    expo = ek.make_base("exponential")
    x = expo.quantile(0.5)
    assert ek.transform_cdf("fk", 2, expo, x) == pytest.approx(
        0.846573590279972655, rel=1e-12
    )
    assert ek.tail_equivalence_constant("uk", 2) == pytest.approx(1 / 6)
    ratio = ek.empirical_tail_ratio("fk", 2, expo, 1 - 1e-6)
    assert ratio == pytest.approx(0.5, rel=1e-2)
    tau = ek.TauSpec([(1.0, 0.5), (2.0, 0.5)])
    assert ek.tail_equivalence_constant("bk", 2, tau=tau) == pytest.approx(1.25)


def test_limit_laws_and_norming():
    assert ek.limit_law_cdf("lk", "gumbel", 0.0, 1, 0.0) == pytest.approx(0.5)
    pareto = ek.make_base("pareto")
    a, b = ek.base_norming(pareto, 100)
    assert (a, b) == (pytest.approx(100.0), 0.0)
    a, b = ek.transform_norming("fk", 2, pareto, 200, mode="closed-form")
    assert a == pytest.approx(10.0)


def test_ks_and_study():
    assert ek.ks_distance([0.25, 0.75], lambda x: x) == pytest.approx(0.25)
    expo = ek.make_base("exponential")
    rows = ek.convergence_study(
        expo, "geometric", m=1, k=1, r=1, n_grid=[1000], replicates=5000, seed=42
    )
    assert rows[0]["ks"] < 0.05
    again = ek.convergence_study(
        expo, "geometric", m=1, k=1, r=1, n_grid=[1000], replicates=5000, seed=42,
        workers=3,
    )
    assert rows[0]["ks"] == again[0]["ks"]


def test_ordering_report():
    expo = ek.make_base("exponential")
    rows = ek.ordering_report(expo, 3, 2, grid=300)
    assert len(rows) == 7
    assert all(row["pass"] for row in rows)


def test_errors_raise():
    with pytest.raises(ValueError):
        ek.make_base("nosuch")
    with pytest.raises(Exception):
        ek.max_stable_quantile("gumbel", 0.0, 1.5)
