import pytest

from bwtk.errors import InputError
from bwtk.text import Sequence, load_input, map_alphabet, oracle_guard


def test_map_alphabet_infers_ascending_byte_order():
    seqs = map_alphabet([("s", b"cabba")])
    s = seqs[0]
    assert s.sigma == 3
    assert s.symbols == [3, 1, 2, 2, 1]
    assert s.alphabet.decode(s.symbols) == b"cabba"


def test_map_alphabet_shares_one_alphabet_across_records():
    s1, s2 = map_alphabet([("x", b"ac"), ("y", b"bb")])
    assert s1.sigma == s2.sigma == 3
    assert s1.symbols == [1, 3]
    assert s2.symbols == [2, 2]


def test_map_alphabet_explicit_order_controls_symbols():
    # explicit alphabets assign symbols by position, not by byte value
    s = map_alphabet([("s", b"ab")], alphabet=b"ba")[0]
    assert s.symbols == [2, 1]
    assert s.sigma == 2


def test_map_alphabet_rejects_bytes_outside_explicit_alphabet():
    with pytest.raises(InputError):
        map_alphabet([("s", b"abc")], alphabet=b"ab")


def test_map_alphabet_rejects_duplicate_explicit_bytes():
    with pytest.raises(InputError):
        map_alphabet([("s", b"ab")], alphabet=b"aba")


def test_map_alphabet_rejects_unprintable_without_explicit():
    with pytest.raises(InputError):
        map_alphabet([("s", bytes([1, 2]))])
    seqs = map_alphabet([("s", bytes([1, 2]))], alphabet=bytes([1, 2]))
    assert seqs[0].symbols == [1, 2]


def test_sequence_validation():
    with pytest.raises(InputError):
        Sequence([], 2)
    with pytest.raises(InputError):
        Sequence([0], 2)
    with pytest.raises(InputError):
        Sequence([3], 2)
    with pytest.raises(InputError):
        Sequence([1], 0)
    assert len(Sequence([1, 2], 2)) == 2


def test_load_input_raw_strips_whitespace(tmp_path):
    p = tmp_path / "in.txt"
    p.write_bytes(b"ab ba\ncc\t\n")
    records = load_input(str(p))
    assert records == [("", b"abbacc")]


def test_load_input_fasta_autodetected(tmp_path):
    p = tmp_path / "in.fa"
    p.write_bytes(b">first rec\nAC\nGT\n>second\nTT\n")
    records = load_input(str(p))
    assert records == [("first rec", b"ACGT"), ("second", b"TT")]


def test_load_input_forced_raw_keeps_angle_bracket(tmp_path):
    p = tmp_path / "in.txt"
    p.write_bytes(b">abc")
    assert load_input(str(p), fmt="raw") == [("", b">abc")]


def test_load_input_errors(tmp_path):
    p = tmp_path / "bad.fa"
    p.write_bytes(b"data\n>late header\nAC\n")
    with pytest.raises(InputError):
        load_input(str(p), fmt="fasta")
    p.write_bytes(b">empty\n")
    with pytest.raises(InputError):
        load_input(str(p))
    p.write_bytes(b"   \n")
    with pytest.raises(InputError):
        load_input(str(p))
    with pytest.raises(InputError):
        load_input(str(tmp_path / "missing.txt"))
    p.write_bytes(b"ok")
    with pytest.raises(InputError):
        load_input(str(p), fmt="tsv")


def test_oracle_guard_env_override(monkeypatch):
    monkeypatch.delenv("BWTK_GUARD", raising=False)
    assert oracle_guard() == 4096
    monkeypatch.setenv("BWTK_GUARD", "128")
    assert oracle_guard() == 128
    monkeypatch.setenv("BWTK_GUARD", "zero")
    with pytest.raises(InputError):
        oracle_guard()
    monkeypatch.setenv("BWTK_GUARD", "0")
    with pytest.raises(InputError):
        oracle_guard()
