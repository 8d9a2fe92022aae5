import json

import pytest

from bwtk.cli import run
from bwtk.suffix import BwtIndex


@pytest.fixture()
def files(tmp_path):
    paths = {}
    for name, payload in (("a", b"aab"), ("b", b"abb"), ("x", b"abab")):
        p = tmp_path / f"{name}.txt"
        p.write_bytes(payload)
        paths[name] = str(p)
    return paths


def call(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_kmer_kernel_line_is_byte_exact(capsys, files):
    code, out, err = call(capsys, "kernel", "--kind", "kmer", "-k", "1",
                          files["a"], files["b"])
    assert code == 0
    assert out == "kmer\t1\t0.800000000000\n"
    assert err == ""


def test_substring_complexity_line(capsys, files):
    code, out, _ = call(capsys, "complexity", "--kind", "substring", files["x"])
    assert code == 0
    assert out == "substring\t7\n"


def test_zero_denominator_exits_2(capsys, files):
    code, out, err = call(capsys, "kernel", "--kind", "kmer", "-k", "9",
                          files["a"], files["b"])
    assert code == 2
    assert out == ""
    assert "zero denominator" in err
    assert len(err.strip().splitlines()) == 1


def test_usage_errors_exit_1(capsys, files):
    code, _, err = call(capsys, "kernel", "--kind", "nope", "-k", "1",
                        files["a"], files["b"])
    assert code == 1
    code, _, _ = call(capsys, "complexity", "--kind", "kmer", files["x"])
    assert code == 1
    code, _, _ = call(capsys, "nonsense")
    assert code == 1
    code, _, _ = call(capsys, "complexity", "--kind", "substring",
                      files["x"] + ".missing")
    assert code == 1


def test_computation_error_on_bad_range_is_usage(capsys, files):
    # malformed parameter ranges are input errors, not computation errors
    code, _, err = call(capsys, "profile", "--k1", "3", "--k2", "1",
                        "--f1", "1", "--f2", "2", files["x"])
    assert code == 1
    assert "error" in err


def test_json_matches_tsv_numerics(capsys, files):
    _, tsv, _ = call(capsys, "kernel", "--kind", "kmer,markov", "-k", "2",
                     files["a"], files["b"])
    _, raw, _ = call(capsys, "kernel", "--kind", "kmer,markov", "-k", "2",
                     "--output", "json", files["a"], files["b"])
    doc = json.loads(raw)
    tsv_lines = tsv.splitlines()
    assert len(doc["records"]) == len(tsv_lines) == 2
    for rec, line in zip(doc["records"], tsv_lines):
        cols = line.split("\t")
        assert rec["measure"] == cols[0]
        assert rec["params"] == cols[1:-1]
        # the numeric literal appears verbatim inside the JSON text
        assert f'"value":{cols[-1]}' in raw


def test_precision_flag(capsys, files):
    _, out, _ = call(capsys, "kernel", "--kind", "kmer", "-k", "1",
                     "--precision", "3", files["a"], files["b"])
    assert out == "kmer\t1\t0.800\n"
    code, _, _ = call(capsys, "kernel", "--kind", "kmer", "-k", "1",
                      "--precision", "99", files["a"], files["b"])
    assert code == 1


def test_jobs_output_is_input_ordered(capsys, files):
    kinds = "maw-cosine,kmer,substring,maw-jaccard,markov"
    _, serial, _ = call(capsys, "kernel", "--kind", kinds, "-k", "1",
                        files["a"], files["b"])
    _, parallel, _ = call(capsys, "kernel", "--kind", kinds, "-k", "1",
                          "--jobs", "4", files["a"], files["b"])
    assert parallel == serial
    assert [line.split("\t")[0] for line in serial.splitlines()] == kinds.split(",")


def test_kmer_sweep_emits_defined_rows(capsys, files):
    _, out, _ = call(capsys, "kernel", "--kind", "kmer", "-k", "1", "--k2", "5",
                     files["a"], files["b"])
    ks = [line.split("\t")[1] for line in out.splitlines()]
    assert ks == ["1", "2", "3"]


def test_profile_rows(capsys, files):
    _, out, _ = call(capsys, "profile", "--k1", "1", "--k2", "2",
                     "--f1", "1", "--f2", "2", files["x"])
    assert out.splitlines() == [
        "profile\t1\t1\t0",
        "profile\t1\t2\t2",
        "profile\t2\t1\t1",
        "profile\t2\t2\t1",
    ]


def test_maw_listing_decodes_words(capsys, files):
    _, out, _ = call(capsys, "maw", "--kind", "list", files["x"])
    assert out.splitlines() == ["maw\taa", "maw\tbb", "maw\tbaba"]
    _, out, _ = call(capsys, "maw", files["x"])
    assert out == "maw-count\t3\n"


def test_entropy_and_kl_and_calibrate(capsys, files):
    _, out, _ = call(capsys, "entropy", "--k2", "1", files["a"])
    lines = out.splitlines()
    assert lines[0].startswith("entropy\t0\t0.918295834054")
    code, out, _ = call(capsys, "kl", "--k2", "3", files["x"])
    assert code == 0 and len(out.splitlines()) == 2
    _, out, _ = call(capsys, "calibrate", "--kind", "kmin", "--kcap", "3", files["x"])
    assert out == "kmin\t1\n"


def test_fasta_pair_and_union_alphabet(capsys, tmp_path):
    fa = tmp_path / "pair1.fa"
    fa.write_bytes(b">s1\naab\n")
    fb = tmp_path / "pair2.fa"
    fb.write_bytes(b">s2\nabb\n")
    code, out, _ = call(capsys, "kernel", "--kind", "kmer", "-k", "1",
                        str(fa), str(fb))
    assert code == 0
    assert out == "kmer\t1\t0.800000000000\n"
    # a byte unique to one side still lands in both alphabets
    fb.write_bytes(b">s2\nacc\n")
    code, out, _ = call(capsys, "kernel", "--kind", "kmer", "-k", "1",
                        str(fa), str(fb))
    assert code == 0


def test_multi_record_fasta_rejected(capsys, tmp_path):
    fa = tmp_path / "multi.fa"
    fa.write_bytes(b">r1\naa\n>r2\nbb\n")
    code, _, err = call(capsys, "complexity", "--kind", "substring", str(fa))
    assert code == 1
    assert "exactly one sequence" in err


def test_index_build_dump_roundtrip(capsys, tmp_path, files):
    out_path = tmp_path / "x.bwtk"
    code, out, _ = call(capsys, "index", "build", files["x"], "-o", str(out_path))
    assert code == 0
    assert out == "index\t5\t2\n"
    ix = BwtIndex.load(str(out_path))
    assert ix.text == [1, 2, 1, 2]
    code, out, _ = call(capsys, "index", "dump", str(out_path))
    assert code == 0
    assert out == "index\t5\t2\n"
    code, _, _ = call(capsys, "index", "build", files["x"])
    assert code == 1


def test_oracle_subcommand(capsys, files, monkeypatch):
    code, out, _ = call(capsys, "oracle", "--measure", "substring-complexity",
                        files["x"])
    assert code == 0
    assert out == "substring\t7\n"
    code, out, _ = call(capsys, "oracle", "--measure", "maw-count", files["x"])
    assert out == "maw-count\t3\n"
    # the guard envvar caps brute-force input size: computation error, exit 2
    monkeypatch.setenv("BWTK_GUARD", "2")
    code, _, err = call(capsys, "oracle", "--measure", "substring-complexity",
                        files["x"])
    assert code == 2
    assert "guard" in err.lower() or "exceeds" in err.lower()


def test_output_is_deterministic(capsys, files):
    args = ("kernel", "--kind", "kmer,substring,weighted,markov", "-k", "2",
            "--weights", "exponential", "--epsilon", "0.7", files["a"], files["b"])
    _, first, _ = call(capsys, *args)
    _, second, _ = call(capsys, *args)
    assert first == second


def test_explicit_alphabet_controls_sigma(capsys, files):
    # abab over an explicit 4-letter alphabet has absent letters c,d
    code, out, _ = call(capsys, "complexity", "--kind", "kmer", "-k", "1",
                        "--alphabet", "abcd", files["x"])
    assert code == 0
    assert out == "kmer\t1\t2\n"
    code, out, _ = call(capsys, "maw", "--alphabet", "ab", files["x"])
    assert out == "maw-count\t3\n"