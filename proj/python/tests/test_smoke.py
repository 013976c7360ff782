import math

import pytest

import seqrac


def test_ideal_pair_on_tradeoff():
    w = seqrac.ideal_witness_pair(0.7)
    assert w.w_ab == pytest.approx((2 + math.sqrt(2) * 0.7) / 4, abs=1e-12)
    assert seqrac.optimal_tradeoff(w.w_ab) == pytest.approx(w.w_ac, abs=1e-12)


def test_certify_table_row():
    interval = seqrac.certify_sharpness(seqrac.WitnessPair(0.799, 0.765, 0.002, 0.002))
    assert interval.eta_min == pytest.approx(0.8457, abs=1e-4)
    assert interval.eta_max == pytest.approx(0.8666, abs=1e-4)
    assert interval.consistent


def test_run_certify_dict():
    report = seqrac.run_certify(0.853, 0.688, 0.002, 0.003)
    assert report["consistent"] is False
    assert report["warnings"]
    assert report["incompatibility"]["assumptions"] == ["unbiased_bob", "eta0_eq_eta1"]


def test_incompatibility():
    assert seqrac.degree_of_incompatibility((1, 0, 0), (0, 0, 1)) == pytest.approx(2 * math.sqrt(2) - 2)
    w = seqrac.ideal_witness_pair(1.0)
    r = seqrac.bound_b2(w, seqrac.certify_sharpness(w))
    assert r.d_charlie == pytest.approx(0.828427, abs=1e-6)


def test_distribution_and_sampling():
    p = seqrac.exact_distribution(0.8, 0.98)
    assert len(p) == 64
    assert sum(p) == pytest.approx(16.0)
    counts = seqrac.sample_counts(0.8, 5000, 3, 0.98)
    assert counts == seqrac.sample_counts(0.8, 5000, 3, 0.98)
    w = seqrac.witnesses_from_counts(counts)
    exact = seqrac.witnesses_from_distribution(p)
    assert abs(w.w_ab - exact.w_ab) < 5 * w.sigma_ab
    csv = seqrac.counts_csv(counts, 5000).splitlines()
    assert csv[:2] == ["# events_per_setting=5000", "x0,x1,y,z,b,c,count"]
    assert len(csv) == 66


def test_sweep_rows():
    rows = seqrac.run_sweep()
    assert len(rows) == 12
    assert rows[0]["w_ab"] == pytest.approx(0.853553391)
    assert rows[-1]["d_bob"] == 0


def test_tomography_and_projective():
    assert seqrac.worst_case_fidelity(1.0, 0.0).f_min == 1.0
    r = seqrac.worst_case_fidelity(0.99, 0.01, restarts=8)
    assert 0.2 <= r.eta_error <= 0.35
    assert len(r.lab_bloch) == 4
    assert seqrac.projective_bound(0.5) == pytest.approx(seqrac.optimal_tradeoff(0.5), abs=1e-6)


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        seqrac.certify_sharpness(seqrac.WitnessPair(1.5, 0.7))
    with pytest.raises(ValueError):
        seqrac.optimal_tradeoff(0.9)
