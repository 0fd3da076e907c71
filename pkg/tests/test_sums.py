"""Tests for cyclic vectors, interval sums, cyclic sums and transforms.

Independent oracle used throughout: direct per-term summation with
math.fsum over explicit Python loops, never the vectorized library path.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclic_bounds import (
    CyclicVector,
    DomainError,
    ShapeError,
    WindowError,
    baston_sum,
    block_diagnostics,
    diananda_sum,
    interval_sum,
    lower_bound_theorem2,
    replicate,
    vector_from_json,
    vector_from_lines,
    vector_to_json,
    vector_to_lines,
    zero_insert,
)


def oracle_interval(xs, i, k):
    n = len(xs)
    return math.fsum(xs[(i - 1 + d) % n] for d in range(k))


def oracle_diananda(xs, k):
    n = len(xs)
    return math.fsum(xs[i] / oracle_interval(xs, i + 2, k) for i in range(n))


def oracle_baston(xs, k):
    n = len(xs)
    return math.fsum(xs[i] / oracle_interval(xs, i + 1, k) for i in range(n))


class TestCyclicVector:
    def test_cyclic_indexing_wraps(self):
        v = CyclicVector([1.0, 2.0, 3.0, 4.0])
        assert v.entry(1) == 1.0
        assert v.entry(5) == 1.0
        assert v.entry(0) == 4.0
        assert v.entry(-3) == 1.0
        assert v.entry(4 + 2) == v.entry(2)

    def test_rejects_negative_entry_with_position(self):
        with pytest.raises(DomainError, match="entry 3"):
            CyclicVector([1.0, 2.0, -0.5])

    def test_rejects_non_finite(self):
        with pytest.raises(DomainError):
            CyclicVector([1.0, math.nan])
        with pytest.raises(DomainError):
            CyclicVector([1.0, math.inf])

    def test_rejects_empty(self):
        with pytest.raises(ShapeError):
            CyclicVector([])

    def test_entries_are_immutable(self):
        v = CyclicVector([1.0, 2.0])
        with pytest.raises(ValueError):
            v.entries[0] = 9.0

    def test_window_positivity_check_is_k_dependent(self):
        v = CyclicVector([1.0, 0.0, 1.0, 0.0])
        v.require_window_positivity(2)  # every pair of neighbors has positive sum
        with pytest.raises(DomainError, match=r"t\[2,1\]"):
            v.require_window_positivity(1)


class TestIntervalSum:
    def test_direct_two_term(self):
        assert interval_sum([1, 2, 3, 4], 3, 2) == 7.0

    def test_wraparound(self):
        assert interval_sum([1, 2, 3, 4], 4, 2) == 5.0

    def test_full_cycle(self):
        assert interval_sum([1, 1, 1, 1, 1], 1, 5) == 5.0

    def test_any_integer_start(self):
        xs = [2.0, 3.0, 5.0, 7.0]
        for i in (-7, 0, 1, 9, 40):
            assert interval_sum(xs, i, 3) == pytest.approx(
                oracle_interval(xs, i, 3), rel=1e-15
            )

    def test_invalid_window(self):
        with pytest.raises(WindowError):
            interval_sum([1, 2, 3], 1, 0)
        with pytest.raises(WindowError):
            interval_sum([1, 2, 3], 1, 4)


class TestDiananda:
    def test_uniform_gives_n_over_k(self):
        for n, k in [(5, 2), (12, 3), (9, 9), (7, 1)]:
            assert diananda_sum([3.5] * n, k) == pytest.approx(n / k, rel=1e-14)

    def test_hand_value_1_2_3_k2(self):
        # 1/5 + 2/4 + 3/3, frozen from the direct-summation oracle
        assert oracle_diananda([1, 2, 3], 2) == pytest.approx(1.7, abs=1e-15)
        assert diananda_sum([1, 2, 3], 2) == pytest.approx(1.7, rel=1e-14)

    def test_k1_value_and_floor(self):
        val = diananda_sum([1, 2, 3], 1)
        assert val == pytest.approx(oracle_diananda([1, 2, 3], 1), rel=1e-14)
        assert val == pytest.approx(1 / 2 + 2 / 3 + 3.0, rel=1e-14)
        assert val >= 3.0

    def test_matches_oracle_on_random_vectors(self):
        rng = np.random.default_rng(11)
        for _ in range(60):
            n = int(rng.integers(2, 30))
            k = int(rng.integers(1, n + 1))
            xs = np.exp(rng.uniform(-4, 4, n)).tolist()
            assert diananda_sum(xs, k) == pytest.approx(
                oracle_diananda(xs, k), rel=1e-12
            )

    def test_zero_window_reports_index(self):
        # windows of length 2 after entry 2 are (0, 0): t[3,2] = 0
        with pytest.raises(DomainError, match=r"t\[3,2\]"):
            diananda_sum([1.0, 1.0, 0.0, 0.0, 1.0], 2)

    def test_zero_entries_allowed_when_windows_positive(self):
        xs = [1.0, 0.0, 3.0]
        assert diananda_sum(xs, 2) == pytest.approx(oracle_diananda(xs, 2), rel=1e-14)

    @given(
        st.lists(st.floats(0.01, 100.0), min_size=2, max_size=12),
        st.floats(0.001, 1000.0),
    )
    @settings(max_examples=120, deadline=None)
    def test_scale_invariance(self, xs, c):
        k = max(1, len(xs) // 2)
        base = diananda_sum(xs, k)
        scaled = diananda_sum([c * v for v in xs], k)
        assert abs(scaled - base) <= 1e-10 * base

    @given(st.lists(st.floats(0.01, 100.0), min_size=2, max_size=12), st.integers(0, 20))
    @settings(max_examples=120, deadline=None)
    def test_shift_invariance(self, xs, shift):
        k = max(1, len(xs) - 1)
        rotated = xs[shift % len(xs):] + xs[: shift % len(xs)]
        assert diananda_sum(rotated, k) == pytest.approx(
            diananda_sum(xs, k), rel=1e-12
        )

    def test_floor_on_random_positive_vectors(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            n = int(rng.integers(1, 40))
            k = int(rng.integers(1, n + 1))
            xs = np.exp(rng.uniform(-5, 5, n))
            val = (k / n) * diananda_sum(xs, k)
            assert val >= lower_bound_theorem2(k) - 1e-9


class TestBaston:
    def test_uniform(self):
        assert baston_sum([1, 1, 1], 2) == pytest.approx(1.5, rel=1e-15)

    def test_hand_value_1_10_100(self):
        expected = oracle_baston([1, 10, 100], 2)
        assert expected == pytest.approx(1 / 11 + 10 / 110 + 100 / 101, abs=1e-15)
        assert baston_sum([1, 10, 100], 2) == pytest.approx(expected, rel=1e-14)

    def test_terms_lie_in_unit_interval(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            n = int(rng.integers(2, 20))
            k = int(rng.integers(2, n + 1))
            xs = np.exp(rng.uniform(-4, 4, n))
            val = baston_sum(xs, k)
            assert 0.0 <= val <= n

    def test_geometric_sequences_approach_one(self):
        # with n >= k >= 2 the infimum is 1; steep geometric growth approaches it
        prev = math.inf
        for log_ratio in (1.0, 2.0, 4.0, 8.0):
            xs = np.exp(np.arange(6) * log_ratio)
            val = baston_sum(xs, 3)
            assert val > 1.0
            assert val < prev
            prev = val
        assert prev < 1.001


class TestTransforms:
    def test_replicate_concatenates(self):
        v = replicate([1.0, 2.0], 3)
        assert np.array_equal(v.entries, [1, 2, 1, 2, 1, 2])

    def test_replicate_doubles_hand_value(self):
        assert diananda_sum(replicate([1, 2, 3], 2), 2) == pytest.approx(3.4, rel=1e-13)

    def test_replicate_single_entry(self):
        v = replicate([5.0], 4)
        assert np.array_equal(v.entries, [5, 5, 5, 5])
        assert diananda_sum(v, 1) == pytest.approx(4.0, rel=1e-15)

    def test_replicate_preserves_normalized_sum(self):
        rng = np.random.default_rng(17)
        for _ in range(40):
            n = int(rng.integers(2, 15))
            k = int(rng.integers(1, n + 1))
            copies = int(rng.integers(1, 6))
            xs = np.exp(rng.uniform(-3, 3, n))
            rep = replicate(xs, copies)
            lhs = diananda_sum(rep, k) / len(rep)
            rhs = diananda_sum(xs, k) / n
            assert abs(lhs - rhs) <= 1e-12 * rhs

    def test_replicate_rejects_bad_count(self):
        with pytest.raises(ValueError):
            replicate([1.0], 0)

    def test_zero_insert_hand_case_k1(self):
        v = zero_insert([1.0, 2.0], 1)
        assert np.array_equal(v.entries, [1, 0, 2, 0])
        assert diananda_sum(v, 2) == pytest.approx(2.5, rel=1e-15)
        assert diananda_sum([1.0, 2.0], 1) == pytest.approx(2.5, rel=1e-15)

    def test_zero_insert_uniform(self):
        v = zero_insert([1.0] * 4, 2)
        assert np.array_equal(v.entries, [1, 1, 0, 1, 1, 0])
        assert diananda_sum(v, 3) == pytest.approx(2.0, rel=1e-15)

    def test_zero_insert_hand_case_k2(self):
        v = zero_insert([1.0, 2.0, 3.0, 4.0], 2)
        assert np.array_equal(v.entries, [1, 2, 0, 3, 4, 0])
        lhs = oracle_diananda([1, 2, 0, 3, 4, 0], 3)
        rhs = oracle_diananda([1, 2, 3, 4], 2)
        assert lhs == pytest.approx(rhs, rel=1e-15)
        assert diananda_sum(v, 3) == pytest.approx(diananda_sum([1, 2, 3, 4], 2), rel=1e-13)

    def test_zero_insert_identity_random(self):
        rng = np.random.default_rng(23)
        for _ in range(40):
            k = int(rng.integers(1, 7))
            nu = int(rng.integers(1, 9))
            xs = np.exp(rng.uniform(-3, 3, k * nu))
            out = zero_insert(xs, k)
            assert len(out) == (k + 1) * nu
            out.require_window_positivity(k + 1)
            lhs = diananda_sum(out, k + 1)
            rhs = diananda_sum(xs, k)
            assert abs(lhs - rhs) <= 1e-12 * rhs

    def test_zero_insert_shape_error(self):
        with pytest.raises(ShapeError):
            zero_insert([1.0, 2.0, 3.0], 2)


class TestBlockDiagnostics:
    def test_uniform_blocks(self):
        diag = block_diagnostics([1.0] * 4, 2)
        assert diag.nu == 2
        assert np.allclose(diag.ratios, [1.0, 1.0])
        assert np.allclose(diag.partials, [1.0, 1.0])
        # per-block floor k(2^{1/k} - 1) ~ 0.82843 sits below each partial
        floor = lower_bound_theorem2(2)
        assert floor == pytest.approx(0.8284271247461901, rel=1e-15)
        assert np.all(diag.partials >= floor - 1e-12)

    def test_hand_ratios(self):
        diag = block_diagnostics([1.0, 1.0, 2.0, 2.0], 2)
        assert diag.ratios[0] == pytest.approx(0.5, rel=1e-15)
        assert diag.ratios[1] == pytest.approx(2.0, rel=1e-15)
        assert np.prod(diag.ratios) == pytest.approx(1.0, rel=1e-15)

    def test_partials_sum_to_cyclic_sum(self):
        rng = np.random.default_rng(31)
        for _ in range(50):
            k = int(rng.integers(1, 9))
            nu = int(rng.integers(1, 17))
            xs = np.exp(rng.uniform(-3, 3, k * nu))
            diag = block_diagnostics(xs, k)
            assert abs(np.prod(diag.ratios) - 1.0) <= 1e-12
            total = float(np.sum(diag.partials))
            ref = diananda_sum(xs, k)
            assert abs(total - ref) <= 1e-12 * ref
            for r, s in zip(diag.ratios, diag.partials):
                bound = k * ((1.0 + r) ** (1.0 / k) - 1.0)
                assert s >= bound - 1e-12

    def test_rejects_zero_entry(self):
        with pytest.raises(DomainError, match="entry 2"):
            block_diagnostics([1.0, 0.0, 1.0, 1.0], 2)

    def test_rejects_indivisible_length(self):
        with pytest.raises(ShapeError):
            block_diagnostics([1.0, 2.0, 3.0], 2)


class TestSerialization:
    def test_json_round_trip(self):
        xs = [1.0, 0.125, 3.0e-7, 12345.678]
        text = vector_to_json(xs)
        back = vector_from_json(text)
        assert np.array_equal(back.entries, xs)

    def test_json_17_digits(self):
        text = vector_to_json([1.0 / 3.0])
        assert "0.33333333333333331" in text

    def test_lines_round_trip(self):
        xs = np.exp(np.random.default_rng(0).uniform(-5, 5, 20))
        text = vector_to_lines(xs)
        assert text.endswith("\n")
        assert len(text.splitlines()) == 20
        back = vector_from_lines(text)
        assert np.array_equal(back.entries, xs)
