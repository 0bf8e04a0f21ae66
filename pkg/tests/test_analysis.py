"""Pipeline records, JSON artifacts, and artifact verification."""

import copy
import json

import numpy as np
import pytest

from conftest import random_linkage
from linkmorse import Linkage, analyze_linkage, index_summary, verify_enumeration
from linkmorse.analysis import (
    dump_json,
    enumeration_dict,
    load_enumeration,
    record_dict,
)

PENTA = Linkage([1, 1, 1, 1, 1])


@pytest.fixture(scope="module")
def pentagon_analyses():
    return analyze_linkage(PENTA)


def test_pentagon_summary_line(pentagon_analyses):
    assert index_summary(pentagon_analyses) == \
        "14 configurations: index 0 x2, index 1 x10, index 2 x2"


def test_aligned_configurations_use_oracle_fallback(pentagon_analyses):
    fallback = [a for a in pentagon_analyses if a.index_source == "oracle"]
    assert len(fallback) == 10
    assert all(a.index == 1 for a in fallback)
    assert all(a.morse_error is not None for a in fallback)
    formula = [a for a in pentagon_analyses if a.index_source == "formula"]
    assert sorted(a.index for a in formula) == [0, 0, 2, 2]
    assert all(a.agree for a in formula)


def test_record_schema(pentagon_analyses):
    rec = record_dict(pentagon_analyses[0])
    assert set(rec) == {"eps", "k", "r", "center", "points", "area", "flags"}
    assert set(rec["flags"]) == {"central", "near_flip", "delta_zero"}
    assert len(rec["points"]) == 5
    assert all(v in (-1, 1) for v in rec["eps"])


def test_artifact_round_trip_is_lossless(pentagon_analyses):
    envelope = enumeration_dict(PENTA, pentagon_analyses, seed=7)
    text = dump_json(envelope)
    linkage, records = load_enumeration(text)
    assert np.array_equal(linkage.lengths, PENTA.lengths)
    assert len(records) == 14
    # floats survive the decimal round trip bit for bit
    assert records == envelope["configurations"]
    assert json.loads(text)["seed"] == 7


def test_artifact_output_is_deterministic():
    first = dump_json(enumeration_dict(PENTA, analyze_linkage(PENTA), seed=1))
    second = dump_json(enumeration_dict(PENTA, analyze_linkage(PENTA), seed=1))
    assert first == second


def test_verify_accepts_clean_artifact(pentagon_analyses):
    envelope = enumeration_dict(PENTA, pentagon_analyses)
    linkage, records = load_enumeration(dump_json(envelope))
    rows, summary, ok = verify_enumeration(linkage, records)
    assert ok
    assert summary == "14/14 agree (0 flagged)"


def test_verify_catches_tampered_radius(pentagon_analyses):
    envelope = enumeration_dict(PENTA, pentagon_analyses)
    tampered = copy.deepcopy(envelope)
    tampered["configurations"][3]["r"] *= 1.0 + 1e-3
    linkage, records = load_enumeration(dump_json(tampered))
    rows, _, ok = verify_enumeration(linkage, records)
    assert not ok
    assert sum(1 for r in rows if not r.agree) == 1


def test_verify_catches_tampered_points(pentagon_analyses):
    envelope = enumeration_dict(PENTA, pentagon_analyses)
    tampered = copy.deepcopy(envelope)
    tampered["configurations"][0]["points"][2][0] += 1e-3
    linkage, records = load_enumeration(dump_json(tampered))
    _, _, ok = verify_enumeration(linkage, records)
    assert not ok


def test_exactly_one_convex_configuration_per_linkage():
    rng = np.random.default_rng(23)
    for n in (4, 5, 6):
        linkage = random_linkage(rng, n)
        analyses = analyze_linkage(linkage)
        convex = [a for a in analyses if a.convex]
        assert len(convex) == 1
        areas = [a.area for a in analyses]
        assert convex[0].area == pytest.approx(max(areas), abs=1e-12)
