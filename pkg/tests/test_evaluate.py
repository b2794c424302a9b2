import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradualdrift.detector import DriftReport
from gradualdrift.evaluate import (
    AGGREGATE_HEADER,
    EvalResult,
    aggregate_csv,
    delay,
    detections_from_report,
    evaluate_report,
    match,
    overlap,
)
from gradualdrift.loggen import GroundTruth


def test_two_regions_two_detections():
    r = match([(10, 20), (35, 45)], [(4, 7), (17, 23)])
    assert (r.tp, r.fp, r.fn) == (1, 1, 1)
    assert r.f_score == pytest.approx(0.5)
    (m,) = r.per_match
    assert m.real == (10, 20) and m.detected == (17, 23)
    assert m.delay == 7 and m.overlap == pytest.approx(0.30)


def test_perfect_detection():
    real = [(10, 20), (35, 45)]
    r = match(real, real)
    assert (r.tp, r.fp, r.fn, r.f_score) == (2, 0, 0, 1.0)


def test_nothing_detected():
    r = match([(1, 2), (5, 9), (12, 14)], [])
    assert (r.tp, r.fp, r.fn, r.f_score) == (0, 0, 3, 0.0)
    assert r.mean_delay is None and r.mean_overlap is None


def test_second_hit_on_same_region_is_false_positive():
    r = match([(10, 20)], [(11, 12), (15, 18)])
    assert (r.tp, r.fp, r.fn) == (1, 1, 0)


def test_detection_spanning_two_regions_takes_the_earliest():
    r = match([(10, 20), (25, 30)], [(15, 27)])
    assert r.per_match[0].real == (10, 20) and r.fn == 1


def test_points_are_one_trace_wide():
    r = match([(10, 20)], [19, 20])
    assert (r.tp, r.fp) == (1, 1)


def test_zero_width_real_region():
    r = match([(500, 500)], [500])
    assert r.tp == 1 and r.per_match[0].overlap == 1.0
    assert overlap((500, 500), (501, 502)) == 0.0


@pytest.mark.parametrize("real, det, expected", [
    ((10, 20), (17, 23), 7),
    ((10, 20), (10, 11), 0),
    ((100, 120), (95, 130), 5),
])
def test_delay(real, det, expected):
    assert delay(real, det) == expected


@pytest.mark.parametrize("real, det, expected", [
    ((10, 20), (17, 23), 0.3),
    ((10, 20), (5, 25), 1.0),
    ((10, 20), (30, 40), 0.0),
])
def test_overlap(real, det, expected):
    assert overlap(real, det) == pytest.approx(expected)


def test_report_conversion():
    report = DriftReport(sudden=[5, 90], gradual=[(10, 20)])
    assert detections_from_report(report) == [(5, 6), (10, 20), (90, 91)]
    assert detections_from_report(json.loads(report.to_json())) == [(5, 6), (10, 20), (90, 91)]
    res = evaluate_report(report, GroundTruth(100, ((12, 30),)))
    assert (res.tp, res.fp, res.fn) == (1, 2, 0)


def test_json_and_csv():
    r = match([(10, 20), (35, 45)], [(4, 7), (17, 23)])
    data = json.loads(r.to_json())
    assert data["tp"] == 1 and data["f_score"] == pytest.approx(0.5)
    assert data["per_match"] == [{"real": [10, 20], "detected": [17, 23], "delay": 7,
                                  "overlap": 0.3}]
    text = aggregate_csv([("x", "re", "linear:0.01", r), ("y", "sw", "linear:0.01", match([(1, 2)], []))])
    lines = text.splitlines()
    assert lines[0] == ",".join(AGGREGATE_HEADER)
    assert lines[1] == "x,re,linear:0.01,0.500000,7.000000,0.300000"
    assert lines[2] == "y,sw,linear:0.01,0.000000,,"


def _regions(draw_pairs):
    out, pos = [], 0
    for gap, width in draw_pairs:
        start = pos + gap + 1
        out.append((start, start + width))
        pos = start + width
    return out


region_lists = st.lists(st.tuples(st.integers(0, 30), st.integers(0, 30)), max_size=8).map(_regions)


@settings(max_examples=200, deadline=None)
@given(region_lists, region_lists)
def test_counting_invariants(real, detected):
    r = match(real, detected)
    assert r.tp + r.fn == len(real)
    assert r.tp + r.fp == len(detected)
    assert 0 <= r.f_score <= 1
    for m in r.per_match:
        assert m.delay >= 0 and 0 <= m.overlap <= 1
    assert match(real, detected) == r
    assert match(real, list(reversed(detected))) == r


@settings(max_examples=200, deadline=None)
@given(region_lists, region_lists)
def test_extra_correct_detection_never_lowers_f(real, detected):
    base = match(real, detected)
    unmatched = [r for r in real if r not in {m.real for m in base.per_match}]
    if not unmatched:
        return
    target = unmatched[0]
    # a detection that hits only the target region
    extra = (target[0], target[0] + 1)
    if any(d[0] <= extra[0] < max(d[1], d[0] + 1) for d in detected):
        return
    better = match(real, detected + [extra])
    if better.fp == base.fp:
        assert better.f_score >= base.f_score


def test_f_score_formula():
    r = EvalResult(3, 1, 2)
    p, rec = 3 / 4, 3 / 5
    assert r.precision_eval == p and r.recall == rec
    assert r.f_score == pytest.approx(2 * p * rec / (p + rec))
