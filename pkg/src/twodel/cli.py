"""Command-line front end.

Output is line-oriented ``key=value`` text. Exit codes: 0 ok, 1 decode
failure, 2 usage error, 3 internal invariant violation. Errors go to stderr
as a single ``error=... reason=...`` line; values containing spaces are
shell-quoted.
"""

import argparse
import random
import shlex
import sys
import time
from pathlib import Path

from .codec import decode_codeword, encode_message, layout, redundancy_report
from .core import as_bits, delete
from .errors import DecodeFailure, InvariantViolation
from .oracle import DELETIONS, check_grid
from .regular import RegularCodebook
from .sketch import VARIANTS, CodeParams, bundle

EXIT_OK, EXIT_DECODE, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _bits_arg(value: str) -> str:
    """A literal bitstring (whitespace ignored), or a path to a file holding one."""
    text = "".join(value.split())
    if not text or not set(text) <= {"0", "1"}:
        try:
            text = "".join(Path(value).read_text().split())
        except OSError as exc:
            raise UsageError(f"not a bitstring or readable file: {value[:40]!r}") from exc
    try:
        return as_bits(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _int_arg(value: str) -> int:
    try:
        return int(value, 0)
    except ValueError as exc:
        raise UsageError(f"not an integer: {value!r}") from exc


def _emit(out, **fields):
    # values with spaces are shell-quoted, so shlex.split reads a line back
    out.write(" ".join(f"{k}={shlex.quote(str(v))}" for k, v in fields.items()) + "\n")


def cmd_sketch(args, out):
    x = _bits_arg(args.input)
    b = bundle(x, args.variant, CodeParams(len(x)))
    _emit(out, variant=b.variant, n=b.n, bits=b.bit_length)
    for r in b.residues:
        _emit(out, residue=r.name, value=r.value, modulus=r.modulus)
    for blk in b.blocks:
        _emit(out, block=blk.division, length=blk.block_length, f2r=blk.f2r, f3r=blk.f3r)
    _emit(out, serialized=b.to_bytes().hex())
    if args.output:
        Path(args.output).write_bytes(b.to_bytes())


def cmd_encode(args, out):
    p = CodeParams(args.n)
    msg = _int_arg(args.message)
    size = RegularCodebook.for_params(p).size
    if not 0 <= msg < size:
        raise UsageError(f"message must lie in [0, {size})")
    out.write(encode_message(msg, p).bits + "\n")


def cmd_decode(args, out):
    msg = decode_codeword(_bits_arg(args.received), CodeParams(args.n))
    _emit(out, message=msg, hex=hex(msg))


def cmd_corrupt(args, out):
    x = _bits_arg(args.input)
    if args.deletions > len(x):
        raise UsageError("more deletions than bits")
    rng = random.Random(args.seed)
    positions = sorted(rng.sample(range(1, len(x) + 1), args.deletions))
    out.write(delete(x, positions) + "\n")
    _emit(out, positions=",".join(map(str, positions)))


def _grid_job(job):
    variant, n, shard, shards = job
    return check_grid(variant, n, shard, shards)


def cmd_verify(args, out):
    variants = args.variant or list(VARIANTS)
    jobs = []
    for v in variants:
        for n in range(max(args.min_n, DELETIONS[v]), args.max_n + 1):
            jobs.extend((v, n, s, args.jobs) for s in range(args.jobs))
    if args.jobs > 1:
        from multiprocessing import Pool
        with Pool(args.jobs) as pool:
            reports = pool.map(_grid_job, jobs)
    else:
        reports = [_grid_job(j) for j in jobs]
    merged = {}
    for r in reports:
        key = (r.variant, r.n)
        m = merged.setdefault(key, [0, 0, 0])
        m[0] += r.cases
        m[1] += r.failures
        m[2] = max(m[2], r.max_list)
    ok = True
    for (v, n), (cases, failures, max_list) in sorted(merged.items(), key=lambda kv: (variants.index(kv[0][0]), kv[0][1])):
        ok &= failures == 0
        _emit(out, variant=v, n=n, cases=cases, failures=failures, max_list=max_list,
              status="PASS" if failures == 0 else "FAIL")
    _emit(out, result="PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_DECODE


def cmd_report(args, out):
    try:
        ns = [int(v) for v in args.n_list.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --n-list: {args.n_list!r}") from exc
    if any(n < 4 for n in ns):
        raise UsageError("every n must be at least 4")
    for row in redundancy_report(ns):
        _emit(out, n=row.n, s1=row.s1, s2=row.s2, redundancy=row.redundancy, ratio=f"{row.ratio:.4f}")


def cmd_bench(args, out):
    p = CodeParams(args.n)
    size = RegularCodebook.for_params(p).size
    rng = random.Random(args.seed)
    enc_t, dec_t = [], []
    for _ in range(args.trials):
        msg = rng.randrange(size)
        t0 = time.perf_counter()
        word = encode_message(msg, p).bits
        t1 = time.perf_counter()
        received = delete(word, rng.sample(range(1, len(word) + 1), args.deletions))
        t2 = time.perf_counter()
        if decode_codeword(received, p) != msg:
            raise InvariantViolation("bench round trip returned a different message")
        t3 = time.perf_counter()
        enc_t.append(t1 - t0)
        dec_t.append(t3 - t2)
    ms = lambda v: f"{1000 * v:.3f}"
    _emit(out, n=args.n, N=layout(args.n).total, trials=args.trials,
          encode_ms_mean=ms(sum(enc_t) / len(enc_t)), encode_ms_max=ms(max(enc_t)),
          decode_ms_mean=ms(sum(dec_t) / len(dec_t)), decode_ms_max=ms(max(dec_t)))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twodel", description="Two-deletion codes and sketches.")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sketch", help="print the sketch bundle of a bitstring")
    s.add_argument("--variant", choices=VARIANTS, default="unique2")
    s.add_argument("--input", required=True, help="bitstring or file")
    s.add_argument("--output", help="also write the binary bundle here")
    s.set_defaults(func=cmd_sketch)

    s = sub.add_parser("encode", help="encode a message")
    s.add_argument("--n", type=int, required=True, help="payload length")
    s.add_argument("--message", required=True, help="decimal or 0x-prefixed hex")
    s.set_defaults(func=cmd_encode)

    s = sub.add_parser("decode", help="decode a received word")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--received", required=True, help="bitstring or file")
    s.set_defaults(func=cmd_decode)

    s = sub.add_parser("corrupt", help="apply seeded random deletions")
    s.add_argument("--deletions", type=int, choices=(1, 2), required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--input", default="-", help="bitstring or file ('-' reads stdin)")
    s.set_defaults(func=cmd_corrupt)

    s = sub.add_parser("verify", help="exhaustive comparison with the brute-force oracle")
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--min-n", type=int, default=4)
    s.add_argument("--variant", choices=VARIANTS, action="append")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("report", help="redundancy table")
    s.add_argument("--n-list", required=True, help="comma-separated payload lengths")
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("bench", help="encode/decode timing")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--deletions", type=int, choices=(0, 1, 2), default=2)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_bench)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "input", None) == "-":
        args.input = sys.stdin.read()
    for name in ("n", "max_n", "trials", "jobs"):
        if getattr(args, name, 1) is not None and getattr(args, name, 1) < 1:
            _emit(err, error="usage", reason=f"--{name.replace('_', '-')} must be positive")
            return EXIT_USAGE
    try:
        code = args.func(args, out)
    except UsageError as exc:
        _emit(err, error="usage", reason=str(exc))
        return EXIT_USAGE
    except DecodeFailure as exc:
        _emit(err, error="decode-failure", reason=exc.reason, detail=exc.detail)
        return EXIT_DECODE
    except InvariantViolation as exc:
        _emit(err, error="invariant-violation", reason=str(exc))
        return EXIT_INVARIANT
    return code or EXIT_OK


def main():
    sys.exit(run())
