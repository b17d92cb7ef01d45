import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pivotnet.errors import (
    DuplicateActorIdError,
    InputError,
    MissingFileError,
    NegativeCellError,
    NonNumericCellError,
    RaggedRowError,
)
from pivotnet.ingest import (
    ParticipationMatrix,
    format_number,
    load_csv,
    loads_csv,
    row_sums,
    save_csv,
)


def test_single_row_parse():
    m = loads_csv("actor,e1,e2,e3\na1,11,0,11\n")
    assert m.n_actors == 1
    assert m.n_events == 3
    assert m.values.tolist() == [[11.0, 0.0, 11.0]]
    assert m.actor_ids == ("a1",)
    assert m.event_ids == ("e1", "e2", "e3")


def test_fixture_row_sums(scenario_a_matrix):
    assert row_sums(scenario_a_matrix).tolist() == [75, 10, 14, 26, 1, 2, 7, 0, 0, 0]


def test_row_sums_plain():
    m = ParticipationMatrix(("a", "b"), ("x", "y"), [[1, 2], [3, 4]])
    assert row_sums(m).tolist() == [3, 7]


def test_row_sums_all_zero():
    m = ParticipationMatrix(("a", "b"), ("x", "y", "z"), np.zeros((2, 3)))
    assert row_sums(m).tolist() == [0, 0]


def test_negative_cell_rejected():
    with pytest.raises(NegativeCellError, match="e2"):
        loads_csv("actor,e1,e2\na1,3,-2\n")


def test_ragged_row_names_the_row():
    with pytest.raises(RaggedRowError, match="row 3"):
        loads_csv("actor,e1,e2\na1,1,2\na2,1\n")


def test_empty_cell_is_an_error_not_zero():
    with pytest.raises(NonNumericCellError, match="a1"):
        loads_csv("actor,e1,e2\na1,1,\n")


def test_non_numeric_cell():
    with pytest.raises(NonNumericCellError, match="'x'"):
        loads_csv("actor,e1\na1,x\n")


def test_duplicate_actor_id():
    with pytest.raises(DuplicateActorIdError, match="'a1'"):
        loads_csv("actor,e1\na1,1\na1,2\n")


def test_missing_file(tmp_path):
    with pytest.raises(MissingFileError):
        load_csv(tmp_path / "nope.csv")
    assert issubclass(MissingFileError, FileNotFoundError)


def test_crlf_and_scientific_notation():
    m = loads_csv("actor,e1,e2\r\na1,1e1,2.5e-1\r\n")
    assert m.values.tolist() == [[10.0, 0.25]]


def test_header_required():
    with pytest.raises(InputError):
        loads_csv("")


def test_matrix_is_frozen(scenario_a_matrix):
    with pytest.raises(ValueError):
        scenario_a_matrix.values[0, 0] = 99.0


def test_round_trip_is_textually_exact(tmp_path, scenario_a_csv):
    m = load_csv(scenario_a_csv)
    out = tmp_path / "copy.csv"
    save_csv(m, out)
    assert out.read_text() == scenario_a_csv.read_text()


def test_round_trip_preserves_values(tmp_path):
    m = loads_csv("actor,e1,e2\na1,0.5,3\na2,1e3,0\n")
    out = tmp_path / "m.csv"
    save_csv(m, out)
    again = load_csv(out)
    assert np.array_equal(again.values, m.values)


def test_format_number():
    assert format_number(11.0) == "11"
    assert format_number(0.5) == "0.5"
    assert format_number(0.0) == "0"


@given(st.data())
def test_row_sums_invariant_under_column_permutation(data):
    r = data.draw(st.integers(1, 6))
    k = data.draw(st.integers(1, 6))
    cells = data.draw(st.lists(
        st.lists(st.floats(0, 100, allow_nan=False), min_size=k, max_size=k),
        min_size=r, max_size=r))
    perm = data.draw(st.permutations(range(k)))
    ids = tuple(f"a{i}" for i in range(r))
    events = tuple(f"e{j}" for j in range(k))
    m = ParticipationMatrix(ids, events, cells)
    shuffled = ParticipationMatrix(
        ids, tuple(events[j] for j in perm), [[row[j] for j in perm] for row in cells])
    assert np.allclose(row_sums(m), row_sums(shuffled))
