from __future__ import annotations

import csv
import io
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oriented_ramsey import experiments as E
from oriented_ramsey.graphs import cycle_orientation, directed_path, girth, transitive_tournament

P2 = directed_path(2)


class TestSampling:
    def test_endpoints(self):
        assert E.sample_gnp(8, 0.0, 1).m == 0
        assert E.sample_gnp(8, 1.0, 1).m == 28

    def test_deterministic(self):
        assert E.sample_gnp(20, 0.3, 5) == E.sample_gnp(20, 0.3, 5)
        assert E.sample_gnp(20, 0.3, 5) != E.sample_gnp(20, 0.3, 6)

    def test_streams_are_independent_of_order(self):
        a = [E.sample_gnp(10, 0.5, E.trial_rng(3, 0, t)) for t in range(5)]
        b = [E.sample_gnp(10, 0.5, E.trial_rng(3, 0, t)) for t in reversed(range(5))]
        assert a == b[::-1]

    def test_edge_count_mean(self):
        # C(10, 2) * 0.3 = 13.5 edges on average; 4000 samples give SE ~ 0.05
        counts = [E.sample_gnp(10, 0.3, E.trial_rng(11, 0, t)).m for t in range(4000)]
        mean = sum(counts) / len(counts)
        se = math.sqrt(45 * 0.3 * 0.7 / len(counts))
        assert abs(mean - 13.5) < 4 * se

    def test_bad_p(self):
        with pytest.raises(ValueError):
            E.sample_gnp(5, 1.5, 0)


class TestWilson:
    def test_extremes(self):
        lo, hi = E.wilson_interval(0, 20)
        assert lo == pytest.approx(0, abs=1e-12) and 0 < hi < 0.2
        lo, hi = E.wilson_interval(20, 20)
        assert hi == pytest.approx(1) and 0.8 < lo < 1
        assert E.wilson_interval(0, 0) == (0.0, 1.0)

    @given(st.integers(1, 500), st.data())
    def test_contains_estimate_and_matches_formula(self, n, data):
        k = data.draw(st.integers(0, n))
        lo, hi = E.wilson_interval(k, n)
        assert lo <= k / n <= hi
        z = 1.959963984540054
        phat = k / n
        centre = (phat + z * z / (2 * n)) / (1 + z * z / n)
        half = z / (1 + z * z / n) * math.sqrt(phat * (1 - phat) / n + z * z / (4 * n * n))
        assert lo == pytest.approx(max(0.0, centre - half), abs=1e-9)
        assert hi == pytest.approx(min(1.0, centre + half), abs=1e-9)


class TestArrowEstimates:
    def cfg(self, **kw):
        base = dict(pattern=P2, pattern_id="P2", n_values=[10], trials=40, seed=7,
                    c_values=[0.5, 4.0])
        base.update(kw)
        return E.ExperimentConfig(**base)

    def test_cells_use_exact_m2(self):
        cells = self.cfg().cells()
        assert cells == [(10, 0.05, 0.5), (10, 0.4, 4.0)]
        tt = self.cfg(pattern=transitive_tournament(3), c_values=[1.0]).cells()
        assert tt[0][1] == pytest.approx(10 ** -0.5)

    def test_config_errors(self):
        with pytest.raises(ValueError):
            self.cfg(p_values=[0.1])
        with pytest.raises(ValueError):
            self.cfg(trials=0)

    def test_endpoints(self):
        res = E.estimate_arrow_probability(self.cfg(c_values=None, p_values=[0.0, 1.0]))
        assert [r.successes for r in res] == [0, 40]
        assert res[0].estimate == 0 and res[1].estimate == 1

    def test_deterministic_and_csv(self):
        a = E.estimate_arrow_probability(self.cfg())
        b = E.estimate_arrow_probability(self.cfg())
        assert E.write_csv(a) == E.write_csv(b)
        rows = list(csv.DictReader(io.StringIO(E.write_csv(a))))
        assert tuple(rows[0]) == E.CSV_COLUMNS
        assert int(rows[1]["successes"]) >= int(rows[0]["successes"])

    def test_parallel_matches_serial(self):
        a = E.estimate_arrow_probability(self.cfg(trials=12))
        b = E.estimate_arrow_probability(self.cfg(trials=12, threads=2))
        assert [r.successes for r in a] == [r.successes for r in b]

    def test_budget_is_a_third_outcome(self):
        cfg = self.cfg(pattern=transitive_tournament(3), c_values=None, p_values=[1.0],
                       n_values=[7], trials=5, node_budget=1)
        (r,) = E.estimate_arrow_probability(cfg)
        assert r.exceeded == 5 and r.decided == 0 and not r.usable

    def test_summary_and_crossing(self):
        res = E.estimate_arrow_probability(self.cfg())
        s = E.summary(res)
        # no timings, so reruns serialise identically
        assert len(s["cells"]) == 2 and "mean_time" not in s["cells"][0]
        assert E.crossing_constant(res, level=0.0) == 0.5
        assert E.crossing_constant(res, level=1.1) is None


class TestGirth:
    def test_extremes(self):
        assert E.girth_probability(8, 0.0, 5, 10, 1).estimate == 1.0
        assert E.girth_probability(8, 1.0, 4, 10, 1).estimate == 0.0

    def test_consistent_with_lower_bound(self):
        est = E.girth_probability(20, 0.05, 5, 400, 3)
        assert est.consistent
        assert est.fkg_bound < 1

    def test_reports_log_bound_only_with_dp(self):
        assert E.girth_probability(10, 0.1, 4, 5, 1).log_girth_bound is None
        assert E.girth_probability(10, 0.1, 4, 5, 1, d_p=2.0).log_girth_bound == -4 * 8 * 10


class TestJoint:
    def test_paired_counts(self):
        est = E.joint_positive_probability(10, 0.5, 4, P2, 30, 2)
        assert est.joint_hits <= min(est.girth_hits, est.arrow_hits)
        # on a single sample the empirical frequencies obey the union bound exactly
        assert est.exceeded == 0 and est.joint >= est.bonferroni - 1e-12
        for g in est.certificates:
            assert girth(g) >= 4
        assert est.certificates_verified

    def test_sweep_seeds_cells_separately(self):
        c5 = cycle_orientation(5, "10100")
        out = E.joint_sweep(c5, 5, [(8, 0.2), (8, 0.2)], 5, 0)
        assert len(out) == 2 and all(o.joint_hits == 0 for o in out)


class TestFKG:
    def test_positive_correlation(self):
        rep = E.fkg_check(12, 0.2, ("connected", "copy:K3"), 300, 4)
        assert rep.holds
        assert 0 <= rep.joint <= min(rep.marginals)

    def test_library(self):
        from oriented_ramsey.graphs import complete_graph, path_graph

        assert E.property_library("mindeg:2")(complete_graph(3))
        assert not E.property_library("mindeg:2")(path_graph(3))
        assert E.property_library("copy:Pk:2")(path_graph(3))
        with pytest.raises(ValueError):
            E.property_library("planar")

    def test_json(self):
        rep = E.fkg_check(6, 0.5, ("connected", "mindeg:1"), 10, 1)
        assert '"holds"' in E.to_json(rep)


def test_rng_is_philox():
    assert isinstance(E.trial_rng(1).bit_generator, np.random.Philox)
