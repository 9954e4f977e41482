import numpy as np
import pytest

from symracks.enumeration import (
    InvalidN,
    census_csv,
    census_legendrian,
    census_rows,
    census_symmetric,
    enumerate_racks,
    enumerate_racks_direct,
    enumerate_racks_naive,
    sn_class_sizes,
    sn_class_sizes_explicit,
)
from symracks.racks import Rack, SizeCap, canonical_form, classify_rack
from symracks.reference import CLASS_SIZES, LEGENDRIAN_CENSUS, SYMMETRIC_CENSUS


def keys(racks):
    return {canonical_form(R)[0].tobytes() for R in racks}


def test_enumeration_examples():
    assert len(enumerate_racks(1)) == 1
    assert len(enumerate_racks(3, "rack")) == 6
    assert len(enumerate_racks(5, "rack")) == 74


@pytest.mark.parametrize("kind,counts", [
    ("rack", [1, 2, 6, 19, 74, 353]),
    ("quandle", [1, 1, 3, 7, 22, 73]),
    ("kei", [1, 1, 3, 5, 13, 41]),
])
def test_known_sequences(kind, counts):
    assert [len(enumerate_racks(n, kind)) for n in range(1, 7)] == counts


def test_order_caps():
    with pytest.raises(SizeCap):
        enumerate_racks(7)
    with pytest.raises(SizeCap):
        enumerate_racks(9, opt_in=True)
    with pytest.raises(InvalidN):
        enumerate_racks(0)
    with pytest.raises(ValueError):
        enumerate_racks(3, "groupoid")


@pytest.mark.parametrize("n", range(1, 6))
def test_representatives_pairwise_non_isomorphic(n):
    for kind in ("rack", "quandle", "kei"):
        racks = enumerate_racks(n, kind)
        assert len(keys(racks)) == len(racks)
        for R in racks:
            flags = classify_rack(R)
            if kind != "rack":
                assert flags.is_quandle
            if kind == "kei":
                assert flags.is_kei


@pytest.mark.parametrize("n", range(1, 5))
def test_naive_oracle(n):
    tables = enumerate_racks_naive(n)
    reps = keys(enumerate_racks(n))
    seen = {canonical_form(Rack(n, np.array(t)))[0].tobytes() for t in tables}
    assert seen == reps


@pytest.mark.parametrize("n", range(1, 6))
def test_direct_search_agrees(n):
    for kind in ("rack", "quandle", "kei"):
        assert keys(enumerate_racks_direct(n, kind)) == keys(enumerate_racks(n, kind))


def test_workers_and_cache_do_not_change_output(tmp_path):
    base = enumerate_racks(5, "quandle")
    assert enumerate_racks(5, "quandle", workers=2) == base
    first = enumerate_racks(5, "quandle", cache_dir=str(tmp_path))
    assert list(tmp_path.iterdir())
    again = enumerate_racks(5, "quandle", cache_dir=str(tmp_path))
    assert first == again == base


def test_progress_callback():
    messages = []
    enumerate_racks(4, "quandle", progress=messages.append)
    assert messages


def test_symmetric_census_examples():
    assert census_symmetric(5, "rack") == 154
    assert census_symmetric(6, "quandle") == 187
    assert census_symmetric(4, "kei") == 13
    assert census_symmetric(2, "rack") == 4


def test_legendrian_census_examples():
    assert census_legendrian(6, "rack") == 353
    assert census_legendrian(5, "quandle") == 54
    assert census_legendrian(6, "kei") == 180 == census_symmetric(6, "kei")


@pytest.mark.parametrize("n", range(0, 6))
def test_censuses_against_reference(n):
    racks = enumerate_racks(n) if n else None
    for kind in SYMMETRIC_CENSUS:
        assert census_symmetric(n, kind, racks=racks) == SYMMETRIC_CENSUS[kind][n]
    for kind in LEGENDRIAN_CENSUS:
        assert census_legendrian(n, kind, racks=racks) == LEGENDRIAN_CENSUS[kind][n]
    if n:
        assert census_legendrian(n, "rack", racks=racks) == len(racks)
    assert census_legendrian(n, "kei", racks=racks) == census_symmetric(n, "kei", racks=racks)


def test_census_rows_and_csv():
    rows = census_rows(3)
    assert rows[0] == {"order": 0, "kind": "rack", "count": 1}
    text = census_csv(rows)
    assert text.splitlines()[0] == "order,kind,count"
    assert "3,rack,9" in text


@pytest.mark.parametrize("n", range(5, 10))
def test_class_sizes_reference(n):
    assert sn_class_sizes(n) == CLASS_SIZES[n]


def test_class_size_examples():
    assert sn_class_sizes(5) == [20, 30]
    assert sn_class_sizes(6) == [40, 90, 120]
    assert sn_class_sizes(8) == [112, 420, 1120, 1260, 1344, 1680, 2520, 3360, 4032, 5040]
    assert sn_class_sizes(9)[-2:] == [30240, 45360]


@pytest.mark.parametrize("n", [5, 6, 7])
def test_class_sizes_two_ways(n):
    assert sn_class_sizes(n) == sn_class_sizes_explicit(n)


@pytest.mark.parametrize("bad", [4, 10, 2.5, True])
def test_class_sizes_rejects(bad):
    with pytest.raises(InvalidN):
        sn_class_sizes(bad)
