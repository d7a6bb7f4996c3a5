import numpy as np
import pytest

from distqc.pauli import depolarizing_noise
from distqc.purify import PumpSchedule
from distqc.telegate import GateKind, closed_form_aggregates
from distqc.threshold import (
    DOUBLE_SCHEDULE_PRESETS,
    SINGLE_SCHEDULE_PRESETS,
    QTuple,
    ThresholdConditions,
    check_ft,
    contour_infidelity,
    pipeline_passes,
    pumped_infidelity,
    q_values,
    q_values_generic,
    raussendorf_gate_table,
    raussendorf_q_values,
    syndrome_round_aggregates,
    threshold_curve,
    threshold_pg,
)

SCHED_122 = PumpSchedule.double(1, 2, 2)
SCHED_3414 = PumpSchedule.double(3, 4, 14)


# --- q values ----------------------------------------------------------------

def test_q_values_leading_order_coefficients():
    p = 1.5e-3
    f_bar = [1 - 8 * p / 15, 4 * p / 15, 2 * p / 15, 2 * p / 15]
    q = q_values(f_bar, p, p)
    assert q.qa == pytest.approx(71 * p / 15)
    assert q.qb == pytest.approx(82 * p / 15)
    assert q.qc == pytest.approx(74 * p / 15)
    assert q.qab == pytest.approx(23 * p / 15)
    assert q.qab == q.qac == q.qbb


def test_q_values_zero():
    q = q_values([1, 0, 0, 0], 0.0, 0.0)
    assert (q.qa, q.qb, q.qc, q.qab, q.qac, q.qbb) == (0, 0, 0, 0, 0, 0)


def test_q_values_direct_substitution():
    q = q_values([1 - 3e-3, 1e-3, 1e-3, 1e-3], 0.0, 0.0)
    assert q.qa == pytest.approx(8e-3)
    assert q.qb == pytest.approx(4e-3)
    assert q.qc == pytest.approx(4e-3)
    assert q.qab == 0.0


def test_q_values_equals_generic_route():
    rng = np.random.default_rng(31)
    for _ in range(20):
        pg, pM = rng.uniform(0, 0.02, 2)
        tail = rng.uniform(0, 0.01, 3)
        f_bar = np.array([1 - tail.sum(), *tail])
        per_gate = [
            closed_form_aggregates(GateKind.I if l in (1, 5) else (GateKind.III if l in (3, 7) else GateKind.II), f_bar, pg, pM)
            for l in range(1, 9)
        ]
        q_direct = q_values(f_bar, pg, pM)
        q_generic = q_values_generic(per_gate, p_P=0.0, p_M=pM)
        for name in ("qa", "qb", "qc", "qab", "qac", "qbb"):
            assert getattr(q_direct, name) == pytest.approx(getattr(q_generic, name), abs=1e-15)


def test_q_values_from_full_gate_tables():
    f_bar = np.array([0.996, 0.002, 0.001, 0.001])
    noise = depolarizing_noise(1.2e-3, 0.8e-3)
    per_gate = syndrome_round_aggregates(f_bar, noise)
    q = q_values_generic(per_gate, p_P=0.0, p_M=noise.p_M)
    q_direct = q_values(f_bar, noise.p_g, noise.p_M)
    for name in ("qa", "qb", "qc", "qab", "qac", "qbb"):
        assert getattr(q, name) == pytest.approx(getattr(q_direct, name), rel=1e-12)


def test_q_values_generic_zero():
    zero = closed_form_aggregates(GateKind.I, [1, 0, 0, 0], 0.0, 0.0)
    q = q_values_generic([zero] * 8, 0.0, 0.0)
    assert (q.qa, q.qb, q.qc, q.qab, q.qac, q.qbb) == (0, 0, 0, 0, 0, 0)


def test_q_values_generic_needs_eight_gates():
    zero = closed_form_aggregates(GateKind.I, [1, 0, 0, 0], 0.0, 0.0)
    with pytest.raises(ValueError):
        q_values_generic([zero] * 7, 0.0, 0.0)


# --- baseline regression -------------------------------------------------------

def test_baseline_coefficients_exact():
    # evaluating at p_g = 15 turns every p_g/15 cell into 1, so the linear
    # coefficients come out as exact floats
    q = raussendorf_q_values(15.0)
    assert (q.qa, q.qb, q.qc) == (46.0, 44.0, 44.0)
    assert (q.qab, q.qac, q.qbb) == (8.0, 8.0, 8.0)


def test_baseline_threshold_point():
    q = raussendorf_q_values(0.0075)
    assert abs(q.qa - 0.023) <= 1e-15 * 0.023
    assert abs(q.qab - 0.0040) <= 1e-15 * 0.0040


def test_baseline_gate_tables():
    even = raussendorf_gate_table(2, 0.015)
    assert np.count_nonzero(even) == 15
    np.testing.assert_allclose(even[even > 0], 0.001)
    odd = raussendorf_gate_table(1, 0.015)
    assert odd[0, 3] == pytest.approx(0.006)
    assert odd[3, 1] == pytest.approx(0.006)
    assert odd[3, 2] == pytest.approx(0.006)
    assert odd.sum() == pytest.approx(0.030)
    with pytest.raises(ValueError):
        raussendorf_gate_table(9, 0.01)


# --- fault-tolerance check ------------------------------------------------------

def test_check_ft_zero_passes():
    assert check_ft(QTuple(0, 0, 0, 0, 0, 0), ThresholdConditions())


def test_check_ft_boundary_is_exclusive():
    assert not check_ft(raussendorf_q_values(0.0075), ThresholdConditions())
    assert check_ft(raussendorf_q_values(0.0074), ThresholdConditions())


def test_check_ft_monotone():
    rng = np.random.default_rng(41)
    cond = ThresholdConditions()
    for _ in range(50):
        q = QTuple(*rng.uniform(0, 0.03, 6))
        if check_ft(q, cond):
            smaller = QTuple(*(0.5 * np.array([q.qa, q.qb, q.qc, q.qab, q.qac, q.qbb])))
            assert check_ft(smaller, cond)


def test_check_ft_margin_semantics():
    cond = ThresholdConditions(margin=1 / 3)
    # the operating-point test bounds the independent rate by margin * qa_max
    assert check_ft(QTuple(0.007, 0.1, 0.1, 0.0015, 0.0015, 0.0015), cond)
    assert not check_ft(QTuple(0.008, 0.0, 0.0, 0.0015, 0.0015, 0.0015), cond)
    # and the correlated rate by margin * qcor_budget
    assert not check_ft(QTuple(0.007, 0.0, 0.0, 0.014, 0.0, 0.0), cond)
    with pytest.raises(ValueError):
        ThresholdConditions(margin=0.0)


# --- thresholds -------------------------------------------------------------------

def test_threshold_equal_rule():
    th = threshold_pg(1.0, SCHED_122, "equal")
    assert 0.00255 <= th <= 0.00265


def test_threshold_four_fifteenths_rule():
    th = threshold_pg(1.0, SCHED_122, "four_fifteenths")
    assert 0.00495 <= th <= 0.00505


def test_threshold_noisy_channel():
    assert threshold_pg(0.7, SCHED_3414, "equal") >= 0.001


def test_threshold_zero_when_nothing_passes():
    assert threshold_pg(0.72, SCHED_122, "equal") == 0.0


def test_threshold_brackets_the_crossing():
    tol = 1e-4
    cond = ThresholdConditions()
    for F, sched in ((1.0, SCHED_122), (0.9, SCHED_122)):
        th = threshold_pg(F, sched, "equal", cond, rel_tol=tol)
        assert pipeline_passes(F, th * (1 - 2 * tol), sched, "equal", cond)
        assert not pipeline_passes(F, th * (1 + 2 * tol), sched, "equal", cond)


def test_threshold_rejects_unknown_rule():
    with pytest.raises(ValueError):
        threshold_pg(1.0, SCHED_122, "half")


def test_operating_points():
    assert pipeline_passes(0.7, 1e-3, SCHED_3414, "equal", ThresholdConditions())
    assert pipeline_passes(0.9, 1e-3, SCHED_122, "equal", ThresholdConditions(margin=1 / 3))


# --- curves -----------------------------------------------------------------------

def test_threshold_curve_single_point():
    [(F, th)] = threshold_curve(SCHED_122, [1.0])
    assert F == 1.0
    assert th == pytest.approx(0.0026, abs=1e-4)


def test_threshold_curve_empty_grid():
    assert threshold_curve(SCHED_122, []) == []


def test_threshold_curve_monotone_in_fidelity():
    curve = threshold_curve(SCHED_3414, [0.7, 0.8, 0.9, 1.0], rel_tol=1e-3)
    values = [th for _, th in curve]
    assert all(a <= b * (1 + 5e-3) for a, b in zip(values, values[1:]))


def test_threshold_curve_points_bracket_their_crossings():
    tol = 1e-4
    cond = ThresholdConditions()
    for F, th in threshold_curve(SCHED_3414, [0.75, 0.9], rel_tol=tol):
        assert pipeline_passes(F, th * (1 - 2 * tol), SCHED_3414, "equal", cond)
        assert not pipeline_passes(F, th * (1 + 2 * tol), SCHED_3414, "equal", cond)


def test_schedule_presets():
    assert tuple(s.counts for s in SINGLE_SCHEDULE_PRESETS) == (
        (2, 4), (3, 4), (3, 7), (5, 6), (5, 8), (5, 10), (5, 11), (5, 13))
    assert tuple(s.counts for s in DOUBLE_SCHEDULE_PRESETS) == (
        (2, 5, 5), (2, 4, 8), (3, 3, 9), (3, 3, 11), (3, 3, 13), (3, 4, 14))


def test_contour_level_one_is_empty():
    curves = contour_infidelity([SCHED_122], 1.0, [0.9, 0.95])
    assert curves == [[]]


def test_contour_level_validation():
    with pytest.raises(ValueError):
        contour_infidelity([SCHED_122], 0.0, [0.9])


def test_noiseless_infidelity_crosses_level_for_double_presets():
    # with perfect local operations every double-selection preset crosses
    # the 1e-3 infidelity level somewhere along the fidelity axis
    for schedule in DOUBLE_SCHEDULE_PRESETS:
        values = [pumped_infidelity(F, 0.0, schedule) for F in (0.55, 0.75, 0.95)]
        assert values[-1] < 1e-3
        assert values[0] > 1e-3


def test_contour_points_sit_on_the_level():
    [[point]] = contour_infidelity([SCHED_122], 1e-3, [0.95])
    F, p = point
    assert pumped_infidelity(F, p, SCHED_122) == pytest.approx(1e-3, rel=1e-3)
