"""Command-line front end.

Every subcommand prints one TSV record per measure/parameter combination,
columns measure, params..., value. Floats are fixed-point at --precision
digits; --output json wraps the same field strings into a JSON document so
both encodings carry byte-identical numerics. Exit codes: 0 success, 1
usage or input error, 2 computation error (such as a zero denominator).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from . import kernels, oracle
from .errors import ComputationError, InputError
from .params import WeightSpec, ZScoreParams
from .suffix import BwtIndex, build_bwt
from .text import Sequence, load_input, map_alphabet

_KERNEL_KINDS = (
    "kmer",
    "substring",
    "weighted",
    "d2s",
    "d2star",
    "markov",
    "maw-jaccard",
    "maw-cosine",
)


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage problems; the contract wants 1
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        raise SystemExit(self._usage_exit(message))

    def _usage_exit(self, message: str) -> int:
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        return 1


class _Record:
    __slots__ = ("measure", "params", "value")

    def __init__(self, measure: str, params: list[str], value: str) -> None:
        self.measure = measure
        self.params = params
        self.value = value


def _fmt_float(v: float, precision: int) -> str:
    return f"{v:.{precision}f}"


def _emit(records: list[_Record], output: str) -> None:
    out = sys.stdout
    if output == "tsv":
        for rec in records:
            out.write("\t".join([rec.measure, *rec.params, rec.value]) + "\n")
        return
    # values are spliced in verbatim so JSON numerics match TSV exactly
    parts = []
    for rec in records:
        params = ",".join(json.dumps(p) for p in rec.params)
        parts.append(
            f'{{"measure":{json.dumps(rec.measure)},"params":[{params}],'
            f'"value":{rec.value}}}'
        )
    out.write('{"records":[' + ",".join(parts) + "]}\n")


def _load_single(path: str, fmt: str, alphabet: bytes | None) -> Sequence:
    records = load_input(path, fmt)
    if len(records) != 1:
        raise InputError(f"{path}: expected exactly one sequence, found {len(records)}")
    return map_alphabet(records, alphabet)[0]


def _load_pair(
    path1: str, path2: str, fmt: str, alphabet: bytes | None
) -> tuple[Sequence, Sequence]:
    r1 = load_input(path1, fmt)
    r2 = load_input(path2, fmt)
    if len(r1) != 1:
        raise InputError(f"{path1}: expected exactly one sequence, found {len(r1)}")
    if len(r2) != 1:
        raise InputError(f"{path2}: expected exactly one sequence, found {len(r2)}")
    # one shared alphabet across both inputs keeps symbol spaces aligned
    seqs = map_alphabet(r1 + r2, alphabet)
    return seqs[0], seqs[1]


def _alphabet_bytes(arg: str | None) -> bytes | None:
    if arg is None:
        return None
    try:
        return arg.encode("ascii")
    except UnicodeEncodeError:
        raise InputError("--alphabet must be ASCII") from None


def _parse_probs(arg: str | None, sigma: int) -> tuple[float, ...]:
    if arg is None:
        return tuple(1.0 / sigma for _ in range(sigma))
    try:
        probs = tuple(float(tok) for tok in arg.split(","))
    except ValueError:
        raise InputError(f"cannot parse probabilities {arg!r}") from None
    return probs


def _parse_scores(arg: str | None) -> tuple[float, ...] | None:
    if arg is None:
        return None
    try:
        return tuple(float(tok) for tok in arg.split(","))
    except ValueError:
        raise InputError(f"cannot parse scores {arg!r}") from None


def _decode_word(word: tuple[int, ...], s: Sequence) -> str:
    if s.alphabet is None:
        return ",".join(str(c) for c in word)
    return s.alphabet.decode(list(word)).decode("ascii", "replace")


def _build_parser() -> _Parser:
    top = _Parser(prog="bwtk", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(
        dest="command",
        required=True,
        metavar="{complexity,kernel,profile,entropy,maw,kl,calibrate,index}",
    )

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("auto", "fasta", "raw"), default="auto")
    common.add_argument("--alphabet", help="explicit alphabet, symbol order fixed")
    common.add_argument("--output", choices=("tsv", "json"), default="tsv")
    common.add_argument("--precision", type=int, default=12)

    p = sub.add_parser("complexity", parents=[common], help="distinct factor counts")
    p.add_argument("--kind", choices=("kmer", "substring"), required=True)
    p.add_argument("-k", type=int, help="factor length (kind kmer)")
    p.add_argument("input")

    p = sub.add_parser("kernel", parents=[common], help="pairwise similarity")
    p.add_argument(
        "--kind",
        required=True,
        help="comma list over {" + ",".join(_KERNEL_KINDS) + "}",
    )
    p.add_argument("-k", type=int, help="k-mer length (kmer, d2s, d2star)")
    p.add_argument("--k2", type=int, help="upper k for a kmer kernel sweep")
    p.add_argument("--weights", choices=("uniform", "exponential", "band", "charscore"),
                   default="uniform")
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--kmin", type=int, default=1)
    p.add_argument("--kmax", type=int, default=1)
    p.add_argument("--scores", help="comma floats, one per alphabet symbol")
    p.add_argument("--q", help="comma probabilities, one per symbol (d2s, d2star)")
    p.add_argument("--g", choices=("unit", "exact"), default="unit")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("input1")
    p.add_argument("input2")

    p = sub.add_parser("profile", parents=[common], help="k-mer frequency profile")
    p.add_argument("--k1", type=int, required=True)
    p.add_argument("--k2", type=int, required=True)
    p.add_argument("--f1", type=int, required=True)
    p.add_argument("--f2", type=int, required=True)
    p.add_argument("input")

    p = sub.add_parser("entropy", parents=[common], help="empirical entropies")
    p.add_argument("--k1", type=int, default=0)
    p.add_argument("--k2", type=int, required=True)
    p.add_argument("input")

    p = sub.add_parser("maw", parents=[common], help="minimal absent words")
    p.add_argument("--kind", choices=("count", "list"), default="count")
    p.add_argument("input")

    p = sub.add_parser("kl", parents=[common], help="k-mer KL divergences")
    p.add_argument("--k1", type=int, default=2)
    p.add_argument("--k2", type=int, required=True)
    p.add_argument("input")

    p = sub.add_parser("calibrate", parents=[common], help="k range calibration")
    p.add_argument("--kind", choices=("kmin", "kmax"), required=True)
    p.add_argument("--tau", type=float, default=0.25)
    p.add_argument("--kcap", type=int, default=16)
    p.add_argument("input")

    p = sub.add_parser("index", parents=[common], help="build or inspect an index")
    p.add_argument("action", choices=("build", "dump"))
    p.add_argument("input")
    p.add_argument("-o", "--out", help="output path (build)")

    # undocumented: brute-force reference values for small inputs
    p = sub.add_parser("oracle", parents=[common])
    p.add_argument(
        "--measure",
        choices=("kmer-complexity", "substring-complexity", "maw-count", "entropy", "kl"),
        required=True,
    )
    p.add_argument("-k", type=int, default=2)
    p.add_argument("input")

    return top


def _run_complexity(args) -> list[_Record]:
    s = _load_single(args.input, args.format, _alphabet_bytes(args.alphabet))
    ix = build_bwt(s)
    if args.kind == "kmer":
        if args.k is None:
            raise InputError("complexity --kind kmer requires -k")
        return [_Record("kmer", [str(args.k)], str(kernels.kmer_complexity(ix, args.k)))]
    return [_Record("substring", [], str(kernels.substring_complexity(ix)))]


def _kernel_task(kind: str, args, i1: BwtIndex, i2: BwtIndex, prec: int) -> list[_Record]:
    if kind == "kmer":
        if args.k is None:
            raise InputError("kernel --kind kmer requires -k")
        if args.k2 is not None:
            values = kernels.kmer_kernel_range(i1, i2, args.k, args.k2)
            return [
                _Record("kmer", [str(k)], _fmt_float(values[k], prec))
                for k in sorted(values)
            ]
        v = kernels.kmer_kernel(i1, i2, args.k)
        return [_Record("kmer", [str(args.k)], _fmt_float(v, prec))]
    if kind == "substring":
        return [_Record("substring", [], _fmt_float(kernels.substring_kernel(i1, i2), prec))]
    if kind == "weighted":
        spec = WeightSpec(
            kind=args.weights,
            epsilon=args.epsilon,
            kmin=args.kmin,
            kmax=args.kmax,
            scores=_parse_scores(args.scores),
        )
        v = kernels.weighted_substring_kernel(i1, i2, spec)
        return [_Record("weighted", [args.weights], _fmt_float(v, prec))]
    if kind in ("d2s", "d2star"):
        if args.k is None:
            raise InputError(f"kernel --kind {kind} requires -k")
        q = _parse_probs(args.q, i1.sigma)
        fn = kernels.d2s_distance if kind == "d2s" else kernels.d2star_distance
        return [_Record(kind, [str(args.k)], _fmt_float(fn(i1, i2, args.k, q), prec))]
    if kind == "markov":
        v = kernels.markov_kernel(i1, i2, ZScoreParams(g_mode=args.g))
        return [_Record("markov", [args.g], _fmt_float(v, prec))]
    if kind == "maw-jaccard":
        return [_Record("maw-jaccard", [], _fmt_float(kernels.maw_jaccard(i1, i2), prec))]
    if kind == "maw-cosine":
        return [_Record("maw-cosine", [], _fmt_float(kernels.maw_cosine(i1, i2), prec))]
    raise InputError(f"unknown kernel kind {kind!r}")


def _run_kernel(args) -> list[_Record]:
    kinds = [tok.strip() for tok in args.kind.split(",") if tok.strip()]
    if not kinds:
        raise InputError("no kernel kind given")
    for kind in kinds:
        if kind not in _KERNEL_KINDS:
            raise InputError(f"unknown kernel kind {kind!r}")
    s1, s2 = _load_pair(
        args.input1, args.input2, args.format, _alphabet_bytes(args.alphabet)
    )
    i1, i2 = build_bwt(s1), build_bwt(s2)
    prec = args.precision
    if args.jobs > 1 and len(kinds) > 1:
        # results are collected in task order, so output stays input-ordered
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            chunks = list(
                pool.map(lambda kind: _kernel_task(kind, args, i1, i2, prec), kinds)
            )
    else:
        chunks = [_kernel_task(kind, args, i1, i2, prec) for kind in kinds]
    return [rec for chunk in chunks for rec in chunk]


def _run_profile(args) -> list[_Record]:
    s = _load_single(args.input, args.format, _alphabet_bytes(args.alphabet))
    prof = kernels.kmer_profile(build_bwt(s), args.k1, args.k2, args.f1, args.f2)
    return [
        _Record("profile", [str(k), str(f)], str(prof.cell(k, f)))
        for k in range(args.k1, args.k2 + 1)
        for f in range(args.f1, args.f2 + 1)
    ]


def _run_entropy(args) -> list[_Record]:
    s = _load_single(args.input, args.format, _alphabet_bytes(args.alphabet))
    values = kernels.entropy_range(build_bwt(s), args.k1, args.k2)
    return [
        _Record("entropy", [str(args.k1 + i)], _fmt_float(v, args.precision))
        for i, v in enumerate(values)
    ]


def _run_maw(args) -> list[_Record]:
    s = _load_single(args.input, args.format, _alphabet_bytes(args.alphabet))
    ix = build_bwt(s)
    if args.kind == "count":
        return [_Record("maw-count", [], str(kernels.maw_count(ix)))]
    return [
        _Record("maw", [], _decode_word(w, s)) for w in kernels.maw_words(ix)
    ]


def _run_kl(args) -> list[_Record]:
    s = _load_single(args.input, args.format, _alphabet_bytes(args.alphabet))
    values = kernels.kl_divergence_range(build_bwt(s), args.k1, args.k2)
    return [
        _Record("kl", [str(args.k1 + i)], _fmt_float(v, args.precision))
        for i, v in enumerate(values)
    ]


def _run_calibrate(args) -> list[_Record]:
    s = _load_single(args.input, args.format, _alphabet_bytes(args.alphabet))
    ix = build_bwt(s)
    if args.kind == "kmin":
        return [_Record("kmin", [], str(kernels.calibrate_kmin(ix, args.kcap)))]
    return [_Record("kmax", [], str(kernels.calibrate_kmax(ix, args.tau, args.kcap)))]


def _run_index(args) -> list[_Record]:
    if args.action == "build":
        if args.out is None:
            raise InputError("index build requires -o OUT")
        s = _load_single(args.input, args.format, _alphabet_bytes(args.alphabet))
        ix = build_bwt(s)
        ix.dump(args.out)
        return [_Record("index", [str(ix.n)], str(ix.sigma))]
    ix = BwtIndex.load(args.input)
    return [_Record("index", [str(ix.n)], str(ix.sigma))]


def _run_oracle(args) -> list[_Record]:
    s = _load_single(args.input, args.format, _alphabet_bytes(args.alphabet))
    prec = args.precision
    if args.measure == "kmer-complexity":
        return [_Record("kmer", [str(args.k)], str(oracle.oracle_kmer_complexity(s, args.k)))]
    if args.measure == "substring-complexity":
        return [_Record("substring", [], str(oracle.oracle_substring_complexity(s)))]
    if args.measure == "maw-count":
        return [_Record("maw-count", [], str(oracle.oracle_maw_count(s)))]
    if args.measure == "entropy":
        return [_Record("entropy", [str(args.k)], _fmt_float(oracle.oracle_entropy(s, args.k), prec))]
    return [_Record("kl", [str(args.k)], _fmt_float(oracle.oracle_kl(s, args.k), prec))]


_RUNNERS = {
    "complexity": _run_complexity,
    "kernel": _run_kernel,
    "profile": _run_profile,
    "entropy": _run_entropy,
    "maw": _run_maw,
    "kl": _run_kl,
    "calibrate": _run_calibrate,
    "index": _run_index,
    "oracle": _run_oracle,
}


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.precision < 0 or args.precision > 17:
        print("bwtk: error: --precision must be in [0..17]", file=sys.stderr)
        return 1
    try:
        records = _RUNNERS[args.command](args)
    except InputError as exc:
        print(f"bwtk: error: {exc}", file=sys.stderr)
        return 1
    except ComputationError as exc:
        print(f"bwtk: error: {exc}", file=sys.stderr)
        return 2
    _emit(records, args.output)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
