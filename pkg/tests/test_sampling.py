import math

import numpy as np
import pytest

from noisybell import chsh_closed_form, sample_experiment


def test_same_seed_reproduces_every_count():
    first = sample_experiment(2, 0.3, 5000, seed=42)
    second = sample_experiment(2, 0.3, 5000, seed=42)
    assert np.array_equal(first.conditioned_counts, second.conditioned_counts)
    assert np.array_equal(first.branch_counts, second.branch_counts)
    assert first.s_empirical == second.s_empirical
    assert first.s_stderr == second.s_stderr


def test_different_seeds_differ():
    first = sample_experiment(2, 0.3, 5000, seed=1)
    second = sample_experiment(2, 0.3, 5000, seed=2)
    assert not np.array_equal(first.conditioned_counts, second.conditioned_counts)


def test_qubit_runs_always_pass_first_stage():
    sample = sample_experiment(2, 0.5, 2000, seed=7)
    assert sample.branch_counts[0, 0] == 2000
    assert sample.branch_counts.sum() == 2000


def test_zero_noise_estimates_tsirelson():
    sample = sample_experiment(2, 0.0, 200_000, seed=123)
    assert not sample.insufficient_data
    assert abs(sample.s_analytic - 2.0 * math.sqrt(2.0)) < 1e-12
    assert abs(sample.s_empirical - sample.s_analytic) <= 5.0 * sample.s_stderr
    assert sample.s_stderr < 0.02


def test_white_noise_estimates_zero():
    sample = sample_experiment(4, 1.0, 100_000, seed=99)
    assert abs(sample.s_analytic) < 1e-12
    assert abs(sample.s_empirical) <= 5.0 * sample.s_stderr


def test_partially_noisy_case_tracks_closed_form():
    sample = sample_experiment(4, 0.4, 300_000, seed=5)
    assert abs(sample.s_analytic - chsh_closed_form(4, 0.4)) < 1e-12
    assert abs(sample.s_empirical - sample.s_analytic) <= 5.0 * sample.s_stderr


def test_single_run_is_insufficient():
    sample = sample_experiment(2, 0.0, 1, seed=3)
    assert sample.insufficient_data
    assert sample.s_empirical is None
    assert sample.s_stderr is None
    assert sample.empirical_table is None
    assert sample.conditioned_counts.sum() == 1


def test_empirical_table_is_normalized():
    sample = sample_experiment(2, 0.2, 20_000, seed=11)
    table = sample.empirical_table
    assert table.normalization_defect() < 1e-12
    assert table.min_entry() >= 0.0


def test_rejects_non_positive_count():
    with pytest.raises(ValueError):
        sample_experiment(2, 0.0, 0, seed=1)
