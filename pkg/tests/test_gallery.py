import pytest

from rbsystems.gallery import ENTRIES, run_gallery, truncated_partitions


@pytest.mark.parametrize("name", [n for n in ENTRIES if n != "jackson"])
def test_entry_passes(name):
    rep = ENTRIES[name]()
    assert rep.passed, str(rep.first_failure())


def test_partitions_cover_all_splits():
    parts = truncated_partitions(6)
    assert len(parts) == sum(n + 1 for n in range(1, 7))
    assert (4, 1, 3) in parts and (1, 0, 1) in parts


def test_unknown_entry():
    with pytest.raises(KeyError):
        run_gallery(["nope"])


def test_dual_numbers_flags():
    rep = ENTRIES["dual-numbers"]()
    left = rep.sub("u = 1 x z").sub("left-connected, not right-connected")
    assert left.passed and left.details["left_connected"] and not left.details["right_connected"]
