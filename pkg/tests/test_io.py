import pytest
from hypothesis import given, settings, strategies as st

from qmatch.families import Family
from qmatch.geometry import space
from qmatch.io import dumps_family, loads_family, read_family, write_family

CATS = [space(4, 2).catalog(2), space(4, 3).catalog(2), space(5, 2).catalog(2)]


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(CATS), st.data())
def test_round_trip(cat, data):
    mask = data.draw(st.integers(0, cat.full_mask))
    Y = Family(cat, mask)
    assert loads_family(dumps_family(Y, "some\ncomment")) == Y


def test_file_round_trip(tmp_path):
    Y = Family.from_ids(CATS[0], [0, 5, 34])
    p = tmp_path / "y.fam"
    write_family(p, Y)
    assert read_family(p) == Y
    assert p.read_text() == "4 2 2\n400000021\n"


def test_bad_files():
    with pytest.raises(ValueError):
        loads_family("4 2 2\n")
    with pytest.raises(ValueError):
        loads_family("4 2 2\nzz\n")
    with pytest.raises(ValueError):
        loads_family("4 2 2\n" + "f" * 20 + "\n")
    with pytest.raises(ValueError):
        loads_family("4 2 2\n1\n", catalog=CATS[1])
