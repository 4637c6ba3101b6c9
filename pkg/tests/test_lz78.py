from hypothesis import given, strategies as st

from trustinfer import lz78


def test_worked_example():
    # a|b|ab|aba|b  ->  slots (0,a) (0,b) (1,b) (3,a) and a padded tail under b
    stream = [0, 1, 0, 1, 0, 1, 0, 1]
    assert lz78.parse(stream, 2)[:4] == [(0, 0), (0, 1), (1, 1), (3, 0)]
    assert lz78.decode(lz78.encode(stream, 2), 2, len(stream)) == stream


def test_empty_and_unary():
    assert lz78.encode([], 4) == ""
    assert lz78.code_length([], 4) == lz78.HEADER_BITS == 0
    # one-symbol alphabet: the count alone determines the stream
    assert lz78.code_length([0] * 50, 1) == 0


@given(st.integers(1, 6).flatmap(
    lambda a: st.tuples(st.just(a), st.lists(st.integers(0, a - 1), max_size=300))))
def test_round_trip(case):
    alphabet_size, stream = case
    bits = lz78.encode(stream, alphabet_size)
    assert set(bits) <= {"0", "1"}
    assert len(bits) == lz78.code_length(stream, alphabet_size)
    assert lz78.decode(bits, alphabet_size, len(stream)) == stream
