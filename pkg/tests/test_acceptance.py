"""Exhaustive sweeps over small groups; run with --runslow."""

import pytest

from ybsimple.core.constructions import probe_all, sweep_newsol

pytestmark = pytest.mark.slow


def test_sweep_up_to_order_six():
    stats = sweep_newsol(6)
    assert stats.instances > 0
    assert stats.simple > 0
    assert stats.violations == []


def test_probe_up_to_order_nine():
    # at most 256 families per (A, t); relabelled families share one simplicity check
    reports = probe_all(9, max_families=256)
    assert reports
    assert sum(len(r.necessary_violations) for r in reports) == 0
    # every group of order 2..9 appears at least once
    assert {r.group.order for r in reports} == set(range(2, 10))
