import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bilintransfer import (
    RAISED_COSINE,
    BandLimitedFunction,
    Constant,
    Exponents,
    FiniteSequence,
    GridSymbol,
    SignLine,
)
from bilintransfer import harness
from bilintransfer.harness import (
    Report,
    TrialConfig,
    bht_op,
    cutoff_lattice_sum,
    draw_pair,
    estimate_norm,
    hilbert_op,
    pointwise_op,
    transference_consistency,
    uniformity_sweep,
    verify_cutoff_growth,
    verify_decomposition,
    verify_kernel,
    verify_restriction_extension,
    verify_transfer_relation,
    weak_endpoint_probe,
)
from bilintransfer.quadrature import QuadratureSpec
from conftest import sequences


def test_trial_config_validation():
    with pytest.raises(ValueError):
        TrialConfig(trials=0)
    with pytest.raises(ValueError):
        TrialConfig(exponents=((2, 2, 2),))
    cfg = TrialConfig(exponents=((2, 2, 2, 2, 1, 1), (4, 4, 4, 4, 2, 2), (2, 2, 2, 2, 2, 2)))
    assert cfg.homogeneity() == [math.inf, math.inf, 2.0]
    assert cfg.law is harness.Law.GAUSSIAN


def test_draws_depend_only_on_seed_and_trial():
    a = TrialConfig(seed=5, trials=3)
    b = TrialConfig(seed=5, trials=50)
    for t in range(3):
        ka, a1, b1 = draw_pair(a, t)
        kb, a2, b2 = draw_pair(b, t)
        assert ka == kb and a1 == a2 and b1 == b2


@pytest.mark.parametrize("law", ["gaussian", "rademacher", "sparse"])
def test_laws(law):
    cfg = TrialConfig(seed=1, trials=1, support_radius=10, law=law, sparsity=3)
    s = harness.draw_sequence(np.random.default_rng(0), cfg)
    assert len(s) == 21
    if law == "sparse":
        assert np.count_nonzero(s.values) == 3
    if law == "rademacher":
        assert set(s.values.real) <= {-1.0, 1.0}


def test_decomposition_campaign_and_reproducibility(monkeypatch):
    cfg = TrialConfig(seed=42, trials=10, support_radius=6)
    r1 = verify_decomposition(cfg, [-1, 2, 3])
    r2 = verify_decomposition(cfg, [-1, 2, 3])
    assert r1.passed
    assert r1.to_json(with_metadata=False) == r2.to_json(with_metadata=False)
    monkeypatch.setenv(harness.THREADS_ENV, "4")
    r3 = verify_decomposition(cfg, [-1, 2, 3])
    assert r3.to_json(with_metadata=False) == r1.to_json(with_metadata=False)


def test_decomposition_sparse_and_bad_alpha():
    cfg = TrialConfig(seed=3, trials=20, support_radius=8, law="sparse", sparsity=3)
    rep = verify_decomposition(cfg, [3])
    assert rep.summary["max_residual"]["3"] <= 1e-9
    with pytest.raises(ValueError):
        verify_decomposition(cfg, [1])


def test_report_serialization():
    cfg = TrialConfig(seed=1, trials=3, support_radius=2)
    rep = verify_decomposition(cfg, [2])
    obj = json.loads(rep.to_json())
    assert {"campaign", "config", "records", "summary", "version", "metadata"} <= set(obj)
    assert "timestamp" in obj["metadata"]
    assert "metadata" not in json.loads(rep.to_json(with_metadata=False))
    rows = rep.to_csv().strip().split("\n")
    assert len(rows) == 1 + len(rep.records)
    inf = Report("x", {"v": math.inf}, [], {}, None)
    assert json.loads(inf.to_json())["config"]["v"] == "inf"


def test_kernel_campaign():
    rep = verify_kernel([0.5, -2.0], radius=4)
    assert rep.passed
    assert all(r["c00"] == 0 for r in rep.records)


def test_transfer_relation_product_case():
    f = BandLimitedFunction(FiniteSequence.delta(0), RAISED_COSINE)
    rep = verify_transfer_relation(f, f, Constant(1), 4, [0.0], window=8, seq_radius=64,
                                   spec=QuadratureSpec(tol=1e-7), tol=1e-6)
    assert rep.passed
    f_far = harness._sample_tail(f, 4, 256)
    assert f_far < rep.records[0]["tail_a"] < 1e-2


def test_transfer_relation_zero_and_precondition():
    f = BandLimitedFunction(FiniteSequence.delta(0), RAISED_COSINE)
    z = BandLimitedFunction(FiniteSequence.zeros(), RAISED_COSINE)
    rep = verify_transfer_relation(f, z, SignLine(2), 8, [0.25], window=4, seq_radius=32)
    assert rep.summary["max_discrepancy"] == 0
    with pytest.raises(ValueError):
        verify_transfer_relation(f, f, SignLine(2), 3, [0.0])
    with pytest.raises(ValueError):
        verify_transfer_relation(f, f, SignLine(2), 8, [0.75])


def test_restriction_extension():
    with pytest.raises(ValueError):
        verify_restriction_extension(TrialConfig(trials=1), 0.5, Exponents(2, 2))
    single = TrialConfig(seed=0, trials=1, support_radius=0, structured=False)
    rep = verify_restriction_extension(single, 0.3, Exponents(1.5, 3))
    rho = [r["rho"] for r in rep.records]
    assert all(math.isfinite(x) for x in rho)
    assert max(rho) / min(rho) <= 3
    rep = verify_restriction_extension(TrialConfig(seed=2, trials=20, support_radius=6), 0.4,
                                       Exponents(2, 2))
    assert rep.passed and rep.summary["across_trials"] <= 10


def test_pointwise_product_norm():
    cfg = TrialConfig(seed=4, trials=30, support_radius=6)
    rep = estimate_norm(pointwise_op, cfg)
    assert all(r["ratio"] <= 1 + 1e-12 for r in rep.records if "ratio" in r)
    d = FiniteSequence.delta(2)
    assert harness._ratio(pointwise_op, d, d, (2, 2, 2, 2, 1, 1)) == 1


def test_hilbert_norm_estimate():
    cfg = TrialConfig(seed=1, trials=40, support_radius=16, exponents=((2, 2, 2, 2, 2, 2),))
    rep = estimate_norm(hilbert_op(), cfg, fixed_b=FiniteSequence.delta(0))
    assert 0.9 <= rep.summary["estimate"] <= 1.05


def test_bht_norm_estimate_is_recorded():
    cfg = TrialConfig(seed=1, trials=20, support_radius=8)
    rep = estimate_norm(bht_op(2), cfg)
    assert math.isfinite(rep.summary["estimate"])
    assert rep.summary["label"] == "empirical lower bound"


def test_norm_estimate_monotone_in_trials():
    prev = 0.0
    for n in (5, 10, 20, 40):
        rep = estimate_norm(bht_op(-1), TrialConfig(seed=8, trials=n, support_radius=6), refine_steps=0)
        assert rep.summary["max_ratio"] >= prev
        prev = rep.summary["max_ratio"]


@settings(max_examples=30)
@given(sequences(min_len=1, max_len=8), sequences(min_len=1, max_len=8), st.sampled_from([0.5, 2.0, 4.0]))
def test_ratio_scaling_is_exact(a, b, lam):
    op = bht_op(2)
    e = (2.0, 2.0, 2.0, 2.0, 1.0, 1.0)
    r1 = harness._ratio(op, a, b, e)
    r2 = harness._ratio(op, a * lam, b, e)
    assert r1 == r2


def test_all_zero_draws_error():
    cfg = TrialConfig(seed=1, trials=2, support_radius=0, law="sparse", sparsity=0, structured=False)
    with pytest.raises(ValueError):
        estimate_norm(pointwise_op, cfg)


def test_uniformity_sign_and_constant():
    cfg = TrialConfig(seed=2, trials=6, support_radius=3)
    sign = uniformity_sweep(SignLine(2.0), 0.0, [0.25, 1, 4, 16], cfg)
    assert sign.passed and sign.summary["max_over_min"] <= 1 + 1e-6
    const = uniformity_sweep(Constant(1), 0.5, [1, 4], cfg)
    est = [r["estimate"] for r in const.records]
    assert est[1] / est[0] == pytest.approx(2, rel=1e-12)
    assert const.passed
    with pytest.raises(ValueError):
        uniformity_sweep(Constant(1), 0, [], cfg)


def test_uniformity_grid_records_only():
    cfg = TrialConfig(seed=2, trials=4, support_radius=2)
    g = GridSymbol(np.random.default_rng(1).standard_normal((5, 5)))
    rep = uniformity_sweep(g, 0.0, [0.5, 1.0], cfg)
    assert rep.passed is None and len(rep.records) == 2


def test_weak_endpoint_preconditions_and_run():
    cfg = TrialConfig(seed=3, trials=30, support_radius=8)
    with pytest.raises(ValueError):
        weak_endpoint_probe(2, 1.5, 1.5, cfg)
    with pytest.raises(ValueError):
        weak_endpoint_probe(2, 1.0, 2.0, cfg)
    rep = weak_endpoint_probe(2, 4 / 3, 4 / 3, cfg)
    run = [r["running_max"] for r in rep.records if "running_max" in r]
    assert run == sorted(run)
    assert math.isfinite(rep.summary["growth_slope"])


def test_cutoff_sums():
    assert cutoff_lattice_sum(1, 2.0) > 0
    rep = verify_cutoff_growth()
    assert rep.passed
    for r in rep.records:
        assert r["exponent"] <= 1 / r["p0"] + 0.1
    with pytest.raises(ValueError):
        cutoff_lattice_sum(1, 1.0)


def test_transference_consistency_is_logged():
    cfg = TrialConfig(seed=1, trials=3, support_radius=2)
    rep = transference_consistency(2, cfg, h=0.5, reach=8)
    assert rep.passed is None
    assert math.isfinite(rep.summary["consistency_ratio"])
