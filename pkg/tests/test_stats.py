import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats as sps
from scipy.special import betainc

from app.errors import DegenerateGroup, NumericalFailure, ZeroVarianceWarning
from app.stats import (
    IDENTITY,
    SIGNED_LOG1P,
    MetricSamples,
    Transform,
    apply_transform,
    block_separation,
    isolated_categories,
    range_cdf,
    separated_pairs,
    studentized_range_cdf,
    studentized_range_sf,
    summarize,
    tukey_pairwise,
)

LABELS = ["a", "b", "c", "d", "e", "f"]


def samples_from(arrays, name="m"):
    return MetricSamples(name, {label: np.asarray(v, dtype=float) for label, v in zip(LABELS, arrays)})


# ============================================================
# Transforms and summaries
# ============================================================

class TestTransforms:
    def test_signed_log1p_fixed_point(self):
        assert apply_transform([0.0], SIGNED_LOG1P).tolist() == [0.0]

    def test_signed_log1p_is_odd(self):
        out = apply_transform([math.e - 1, -(math.e - 1)], SIGNED_LOG1P)
        assert out == pytest.approx([1.0, -1.0])

    def test_identity(self):
        assert apply_transform([3.2, -1], IDENTITY).tolist() == [3.2, -1.0]

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            Transform("log")


class TestSummarize:
    def test_constant_groups(self):
        summaries, ctx = summarize(samples_from([[1, 1], [3, 3]]))
        assert [s.mean for s in summaries] == [1, 3]
        assert [s.variance for s in summaries] == [0, 0]
        assert (ctx.mse, ctx.df) == (0, 2)

    def test_equal_spread(self):
        summaries, ctx = summarize(samples_from([[0, 2], [0, 2]]))
        assert [s.mean for s in summaries] == [1, 1]
        assert [s.variance for s in summaries] == [2, 2]
        assert (ctx.mse, ctx.df) == (2, 2)

    def test_single_group_rejected(self):
        with pytest.raises(DegenerateGroup):
            MetricSamples("m", {"a": np.array([1.0, 2.0])})

    def test_group_of_one_rejected(self):
        with pytest.raises(DegenerateGroup):
            samples_from([[1.0, 2.0], [3.0]])

    def test_non_finite_rejected(self):
        with pytest.raises(DegenerateGroup):
            samples_from([[1.0, 2.0], [3.0, float("nan")]])

    def test_from_pairs_keeps_order(self):
        s = MetricSamples.from_pairs("m", [("y", 1), ("x", 2), ("y", 3), ("x", 4), ("z", 9)], ["x", "y"])
        assert s.labels == ["x", "y"]
        assert s.groups["x"].tolist() == [2, 4]


# ============================================================
# Studentized range distribution
# ============================================================

class TestStudentizedRange:
    def test_zero(self):
        for k, df in [(2, 1), (6, 100), (10, 5)]:
            assert studentized_range_cdf(0.0, k, df) == 0.0

    def test_infinite_q(self):
        assert studentized_range_cdf(math.inf, 4, 20) == 1.0

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            studentized_range_cdf(1.0, 1, 10)
        with pytest.raises(ValueError):
            studentized_range_cdf(1.0, 3, 0)
        with pytest.raises(ValueError):
            studentized_range_cdf(-1.0, 3, 10)

    def test_range_of_two_normals(self):
        w = np.array([0.5, 1.0, 2.5])
        assert range_cdf(w, 2) == pytest.approx(2 * sps.norm.cdf(w / math.sqrt(2)) - 1, abs=1e-14)

    def test_range_cdf_general_k(self):
        # k=3 from the same integral by scipy quadrature
        from scipy.integrate import quad

        w = 1.7
        expected = 3 * quad(
            lambda z: sps.norm.pdf(z) * (sps.norm.cdf(z) - sps.norm.cdf(z - w)) ** 2, -np.inf, np.inf, epsabs=1e-12, limit=200
        )[0]
        assert range_cdf(w, 3)[0] == pytest.approx(expected, abs=1e-8)

    @pytest.mark.parametrize("q", [0.5, 1.5, 2.8, 4.0, 7.0])
    @pytest.mark.parametrize("df", [2, 10, 60])
    def test_two_groups_match_student_t(self, q, df):
        expected = 2 * sps.t.sf(q / math.sqrt(2), df)
        assert studentized_range_sf(q, 2, df) == pytest.approx(expected, abs=1e-6)

    @pytest.mark.parametrize(
        "q,k,df",
        [(3.5, 6, 100), (2.0, 3, 5), (4.2, 4, 20), (1.0, 6, 30), (5.0, 10, 50), (3.0, 6, 11517)],
    )
    def test_matches_scipy(self, q, k, df):
        assert studentized_range_cdf(q, k, df) == pytest.approx(sps.studentized_range.cdf(q, k, df), abs=1e-5)

    def test_nondecreasing_in_q(self):
        qs = np.linspace(0.1, 10.0, 25)
        values = [studentized_range_cdf(q, 5, 12) for q in qs]
        assert all(a <= b + 1e-12 for a, b in zip(values, values[1:]))
        assert values[-1] > 0.999

    def test_nondecreasing_in_df(self):
        values = [studentized_range_cdf(3.5, 6, df) for df in (5, 10, 30, 100, 1000)]
        assert all(a <= b + 1e-12 for a, b in zip(values, values[1:]))

    def test_infinite_df_is_the_range_distribution(self):
        assert studentized_range_cdf(3.0, 4, math.inf) == pytest.approx(range_cdf(3.0, 4)[0])

    def test_panel_budget(self):
        with pytest.raises(NumericalFailure):
            studentized_range_cdf(3.5, 6, 10, tol=1e-300, panel_budget=1)

    @pytest.mark.slow
    @pytest.mark.parametrize("df", [5, 30, 100, 2000])
    @pytest.mark.parametrize("k", [2, 3, 6])
    def test_monte_carlo(self, k, df):
        rng = np.random.default_rng(20240611 + 10 * k + df)
        n = 1_000_000
        z = rng.standard_normal((n, k))
        ratios = (z.max(axis=1) - z.min(axis=1)) / np.sqrt(rng.chisquare(df, n) / df)
        for q in (0.5, 1.0, 2.0, 3.0, 4.0, 5.0):
            empirical = np.mean(ratios <= q)
            assert studentized_range_cdf(q, k, df) == pytest.approx(empirical, abs=3e-3)


# ============================================================
# Tukey-Kramer matrices
# ============================================================

class TestTukeyPairwise:
    def test_identical_constants(self):
        m = tukey_pairwise(samples_from([[2.0, 2.0, 2.0]] * 4))
        assert m.p == [[1.0] * 4 for _ in range(4)]
        assert m.warnings == []

    def test_zero_variance_unequal_means(self):
        with pytest.warns(ZeroVarianceWarning):
            m = tukey_pairwise(samples_from([[1, 1], [3, 3], [1, 1]]))
        assert m.value("a", "b") == 0.0
        assert m.value("a", "c") == 1.0
        assert len(m.warnings) == 2

    @settings(max_examples=200, deadline=None, derandomize=True)
    @given(
        st.lists(st.integers(min_value=2, max_value=40), min_size=2, max_size=6),
        st.integers(min_value=0, max_value=2**32 - 1),
    )
    def test_structure(self, sizes, seed):
        rng = np.random.default_rng(seed)
        arrays = [rng.normal(rng.uniform(-1, 1), rng.uniform(0.5, 2), n) for n in sizes]
        m = tukey_pairwise(samples_from(arrays))
        p = np.array(m.p)
        assert m.labels == LABELS[:len(sizes)]
        assert np.all(np.diag(p) == 1)
        assert np.array_equal(p, p.T)
        assert np.all((p >= 0) & (p <= 1))

        order = rng.permutation(len(sizes))
        shuffled = {LABELS[i]: np.asarray(arrays[i]) for i in order}
        again = tukey_pairwise(MetricSamples("m", shuffled)).reordered(m.labels)
        assert np.array(again.p) == pytest.approx(p, abs=1e-10)

    def test_records_transform(self):
        m = tukey_pairwise(samples_from([[1, 2, 3], [2, 3, 4]]), SIGNED_LOG1P)
        assert m.transform == "signed_log1p"

    def test_group_order_permutes_the_matrix(self):
        rng = np.random.default_rng(2)
        arrays = [rng.normal(i * 0.2, 1, 25) for i in range(5)]
        forward = tukey_pairwise(samples_from(arrays))
        backward = tukey_pairwise(MetricSamples("m", dict(reversed(list(samples_from(arrays).groups.items())))))
        assert np.array(backward.reordered(forward.labels).p) == pytest.approx(np.array(forward.p), abs=1e-10)

    def test_shift_and_scale_invariance(self):
        rng = np.random.default_rng(3)
        arrays = [rng.normal(i * 0.3, 1, 20) for i in range(4)]
        base = np.array(tukey_pairwise(samples_from(arrays)).p)
        moved = np.array(tukey_pairwise(samples_from([3.5 * a - 7 for a in arrays])).p)
        assert moved == pytest.approx(base, abs=1e-6)

    def test_larger_gap_smaller_p(self):
        rng = np.random.default_rng(4)
        base = [rng.normal(0, 1, 15) for _ in range(3)]
        ps = []
        for gap in (0.2, 0.5, 1.0, 2.0):
            m = tukey_pairwise(samples_from([base[0], base[1], base[2] + gap]))
            ps.append(m.value("a", "c"))
        assert all(a >= b for a, b in zip(ps, ps[1:]))

    @settings(max_examples=100, deadline=None, derandomize=True)
    @given(
        st.integers(min_value=5, max_value=500),
        st.integers(min_value=5, max_value=500),
        st.integers(min_value=0, max_value=2**32 - 1),
        st.floats(min_value=-1.0, max_value=1.0),
    )
    def test_two_groups_match_pooled_t_test(self, n1, n2, seed, gap):
        rng = np.random.default_rng(seed)
        a = rng.normal(0, 1, n1)
        b = rng.normal(gap, 1, n2)
        df = n1 + n2 - 2
        pooled = ((n1 - 1) * a.var(ddof=1) + (n2 - 1) * b.var(ddof=1)) / df
        t = (a.mean() - b.mean()) / math.sqrt(pooled * (1 / n1 + 1 / n2))
        expected = betainc(df / 2, 0.5, df / (df + t * t))
        assert tukey_pairwise(samples_from([a, b])).value("a", "b") == pytest.approx(expected, abs=1e-6)

    def test_planted_group(self):
        rng = np.random.default_rng(2024)
        arrays = [rng.normal(4.5, 1.0, 200) for _ in range(5)] + [rng.normal(6.0, 1.0, 200)]
        m = tukey_pairwise(samples_from(arrays))
        assert all(m.value("f", other) < 0.001 for other in LABELS[:5])
        within = [m.value(x, y) for i, x in enumerate(LABELS[:5]) for y in LABELS[i + 1:5]]
        assert sum(p > 0.01 for p in within) >= 9
        assert isolated_categories(m, 0.01) == ["f"]

    @pytest.mark.slow
    def test_family_wise_error_rate(self):
        rng = np.random.default_rng(99)
        rejections = 0
        sims = 2000
        with warnings.catch_warnings():
            warnings.simplefilter("error", ZeroVarianceWarning)
            for _ in range(sims):
                m = tukey_pairwise(samples_from([rng.normal(0, 1, 50) for _ in range(6)]))
                rejections += bool(separated_pairs(m, 0.05))
        assert 0.035 <= rejections / sims <= 0.065


# ============================================================
# Significance structure
# ============================================================

class TestBlocks:
    @pytest.fixture
    def two_blocks(self):
        base = np.linspace(-1.0, 1.0, 50)
        arrays = [base + 4.5] * 4 + [base + 5.5] * 2
        return tukey_pairwise(samples_from(arrays))

    def test_block_found(self, two_blocks):
        assert block_separation(two_blocks, ["e", "f"], 0.05)
        assert not block_separation(two_blocks, ["d", "e", "f"], 0.05)

    def test_block_must_be_proper_subset(self, two_blocks):
        assert not block_separation(two_blocks, [], 0.05)
        assert not block_separation(two_blocks, LABELS, 0.05)

    def test_separated_pairs_are_the_cross_pairs(self, two_blocks):
        expected = {(x, y) for x in "abcd" for y in "ef"}
        assert separated_pairs(two_blocks, 0.05) == expected
        assert isolated_categories(two_blocks, 0.05) == []
