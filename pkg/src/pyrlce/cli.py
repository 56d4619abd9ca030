"""Command-line front end.

Exit codes: 0 ok, 2 usage or parameters, 3 I/O, 4 malformed file,
5 decryption failure.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile

import numpy as np

from . import analysis
from .errors import DecryptError, FormatError, InvalidParameters, UnknownLevel
from .gf import field_new
from .grs import grs_new
from .rng import make_rng
from .scheme import RlceParams, decrypt, encrypt, keygen, public_key_size_bits, recommended_params
from .wire import dump_ciphertext, load_ciphertext, load_private_key, load_public_key

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_FORMAT, EXIT_CRYPTO = 0, 2, 3, 4, 5
LENGTH_PREFIX = 2


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# -- message packing -----------------------------------------------------------


def message_capacity(params: RlceParams) -> int:
    """Largest message in bytes that fits one block after the length prefix."""
    return min(params.m * params.k // 8 - LENGTH_PREFIX, 0xFFFF)


def pack_message(params: RlceParams, data: bytes) -> np.ndarray:
    """Big-endian bitstream, ``m`` bits per symbol, zero padded to ``k`` symbols."""
    if len(data) > message_capacity(params):
        raise CliError(EXIT_USAGE, f"message of {len(data)} bytes exceeds capacity {message_capacity(params)}")
    m, k = params.m, params.k
    payload = len(data).to_bytes(LENGTH_PREFIX, "big") + data
    bits = np.zeros(m * k, dtype=np.uint8)
    raw = np.unpackbits(np.frombuffer(payload, dtype=np.uint8))
    bits[: raw.size] = raw
    weights = 1 << np.arange(m - 1, -1, -1)
    return (bits.reshape(k, m).astype(np.int64) @ weights).astype(field_new(m).dtype)


def unpack_message(params: RlceParams, symbols: np.ndarray) -> bytes:
    m = params.m
    shifts = np.arange(m - 1, -1, -1)
    bits = ((np.asarray(symbols, dtype=np.int64)[:, None] >> shifts) & 1).astype(np.uint8).ravel()
    raw = np.packbits(bits[: (bits.size // 8) * 8]).tobytes()
    length = int.from_bytes(raw[:LENGTH_PREFIX], "big")
    if length > len(raw) - LENGTH_PREFIX:
        raise CliError(EXIT_FORMAT, "decrypted block carries an invalid length prefix")
    return raw[LENGTH_PREFIX : LENGTH_PREFIX + length]


# -- file helpers --------------------------------------------------------------


def _read(path: str) -> bytes:
    try:
        if path == "-":
            return sys.stdin.buffer.read()
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, data: bytes) -> None:
    """Atomic write: the target never holds partial content."""
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".rlce-")
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {path}: {exc.strerror}") from None


def _load_public(path: str):
    try:
        return load_public_key(_read(path))
    except FormatError as exc:
        raise CliError(EXIT_FORMAT, f"{path}: {exc}") from None


# -- parameter selection ---------------------------------------------------------

_EXPLICIT = ("n", "k", "t", "r", "m")


def _params_from_args(args) -> RlceParams:
    given = [name for name in _EXPLICIT if getattr(args, name) is not None]
    if args.level is not None:
        if given:
            raise CliError(EXIT_USAGE, "--level cannot be combined with explicit parameters")
        try:
            return recommended_params(args.level)
        except UnknownLevel as exc:
            raise CliError(EXIT_USAGE, str(exc.args[0])) from None
    missing = [name for name in _EXPLICIT if getattr(args, name) is None and name != "r"]
    if missing:
        raise CliError(EXIT_USAGE, "either --level or all of --n --k --t --m are required")
    return RlceParams(n=args.n, k=args.k, t=args.t, r=args.r or 1, m=args.m)


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--level", type=int, help="security level of a recommended parameter set")
    for name in _EXPLICIT:
        p.add_argument(f"--{name}", type=int)


# -- subcommands -------------------------------------------------------------------


def cmd_keygen(args) -> int:
    params = _params_from_args(args)
    try:
        params.validate()
    except InvalidParameters as exc:
        raise CliError(EXIT_USAGE, str(exc)) from None
    pk, sk = keygen(params, make_rng(args.seed), systematic=args.systematic)
    pub_bytes, priv_bytes = pk.to_bytes(), sk.to_bytes()
    _write(args.pub, pub_bytes)
    _write(args.priv, priv_bytes)
    print(f"n={params.n} k={params.k} t={params.t} r={params.r} m={params.m}")
    print(f"public key: {len(pub_bytes)} bytes, private key: {len(priv_bytes)} bytes")
    return EXIT_OK


def cmd_encrypt(args) -> int:
    pk = _load_public(args.pub)
    data = args.message.encode() if args.message is not None else _read(args.input)
    symbols = pack_message(pk.params, data)
    y = encrypt(pk, symbols, make_rng(args.seed))
    _write(args.out, dump_ciphertext(pk.params, y))
    return EXIT_OK


def cmd_decrypt(args) -> int:
    pk = _load_public(args.pub)
    try:
        sk = load_private_key(_read(args.priv), pk)
        params, y = load_ciphertext(_read(args.input))
    except FormatError as exc:
        raise CliError(EXIT_FORMAT, str(exc)) from None
    if params != sk.params:
        raise CliError(EXIT_FORMAT, "ciphertext parameters do not match the key")
    try:
        symbols = decrypt(sk, y)
    except DecryptError:
        raise CliError(EXIT_CRYPTO, "decryption failed") from None
    _write(args.out, unpack_message(params, symbols))
    return EXIT_OK


def cmd_params(args) -> int:
    params = _params_from_args(args)
    try:
        params.validate()
        status = "valid"
    except InvalidParameters as exc:
        status = f"invalid ({exc})"
    est = analysis.rlce_isd_workfactor(params)
    print(f"n={params.n} k={params.k} t={params.t} r={params.r} m={params.m}")
    print(f"public key (systematic): {public_key_size_bits(params, True) // 8} bytes")
    print(f"public key (full): {public_key_size_bits(params, False) // 8} bytes")
    print(f"lee-brickell log2 cost: {est.log2_cost:.2f} (p={est.p})")
    print(f"status: {status}")
    return EXIT_OK


def _csv_out(args, text: str) -> None:
    if args.out:
        _write(args.out, text.encode())
    else:
        sys.stdout.write(text)


def _analyze_isd(args) -> int:
    if None in (args.n, args.k, args.t, args.q):
        raise CliError(EXIT_USAGE, "isd needs --n --k --t --q")
    try:
        est = analysis.isd_workfactor(args.n, args.k, args.t, args.q, args.algorithm)
    except InvalidParameters as exc:
        raise CliError(EXIT_USAGE, str(exc)) from None
    _csv_out(
        args,
        "n,k,t,q,algorithm,p,log2_iterations,log2_cost\n"
        f"{est.n},{est.k},{est.t},{est.q},{est.algorithm},{est.p},"
        f"{est.log2_iterations:.4f},{est.log2_cost:.4f}\n",
    )
    return EXIT_OK


def _analyze_square(args) -> int:
    if args.key:
        pk = _load_public(args.key)
        ctx, g = pk.ctx, pk.G
    elif None not in (args.n, args.k, args.m):
        ctx = field_new(args.m)
        try:
            g = grs_new(args.n, args.k, ctx, make_rng(args.seed)).generator
        except InvalidParameters as exc:
            raise CliError(EXIT_USAGE, str(exc)) from None
    else:
        raise CliError(EXIT_USAGE, "square needs --key PATH or a GRS code via --n --k --m")
    rep = analysis.square_code_dimension(ctx, g)
    _csv_out(
        args,
        "k,N,square_dim,bound,classification\n"
        f"{rep.k},{rep.N},{rep.square_dim},{rep.bound},{rep.classification}\n",
    )
    return EXIT_OK


def _analyze_distinguish(args) -> int:
    if args.paper_scale:
        params = RlceParams(n=560, k=380, t=90, r=1, m=10)
    else:
        params = RlceParams(
            n=args.n or 60, k=args.k or 40, t=args.t or 10, r=args.r or 1, m=args.m or 8
        )
    try:
        params.validate()
        results = analysis.distinguisher_experiment(
            params, args.trials, make_rng(args.seed), control=args.control, allow_large=args.paper_scale
        )
    except InvalidParameters as exc:
        raise CliError(EXIT_USAGE, str(exc)) from None
    _csv_out(args, analysis.write_csv(results))
    print(f"random-like fraction: {analysis.random_like_fraction(results):.4f}", file=sys.stderr)
    return EXIT_OK


def _analyze_equiv(args) -> int:
    k, n = args.k or 3, args.n or 4
    r = args.r if args.r is not None else k - 1
    ctx = field_new(args.m or 8)
    rng = make_rng(args.seed)
    lines = ["trial,n,k,r,result"]
    for trial in range(args.trials):
        try:
            code = grs_new(n, k, ctx, rng)
            target = analysis.construct_target(ctx, k, n, r + 1, rng)
            c_blocks, a_blocks = analysis.construct_equivalent(ctx, target, code, r, rng)
            ok = np.array_equal(analysis.assemble_extended(ctx, code.generator, c_blocks, a_blocks), target)
            result = "verified" if ok else "mismatch"
        except analysis.Infeasible:
            result = "infeasible"
        except InvalidParameters as exc:
            raise CliError(EXIT_USAGE, str(exc)) from None
        lines.append(f"{trial},{n},{k},{r},{result}")
    _csv_out(args, "\n".join(lines) + "\n")
    return EXIT_OK


_ANALYZERS = {
    "isd": _analyze_isd,
    "square": _analyze_square,
    "distinguish": _analyze_distinguish,
    "equiv": _analyze_equiv,
}


def cmd_analyze(args) -> int:
    return _ANALYZERS[args.mode](args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rlce", description="RLCE public-key encryption toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate a key pair")
    _add_param_flags(p)
    p.add_argument("--pub", required=True, help="public key output path")
    p.add_argument("--priv", required=True, help="private key output path")
    p.add_argument("--seed", type=int)
    p.add_argument("--systematic", action="store_true", help="store the public key as [I | G']")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt one message block")
    p.add_argument("--pub", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--in", dest="input", help="message file ('-' for stdin)")
    src.add_argument("--message", help="message given as text")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a ciphertext file")
    p.add_argument("--priv", required=True)
    p.add_argument("--pub", required=True, help="matching public key (needed for the weight check)")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("params", help="show sizes and attack cost of a parameter set")
    _add_param_flags(p)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("analyze", help="distinguisher, equivalence and ISD experiments")
    p.add_argument("mode", choices=sorted(_ANALYZERS))
    for name in _EXPLICIT + ("q",):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--algorithm", choices=(analysis.PRANGE, analysis.LEE_BRICKELL), default=analysis.LEE_BRICKELL)
    p.add_argument("--key", help="public key file to analyze (square mode)")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int)
    p.add_argument("--control", action="store_true", help="use plain GRS generators (distinguish mode)")
    p.add_argument("--paper-scale", action="store_true", help="n=560, k=380 over GF(2^10); minutes per key")
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.set_defaults(func=cmd_analyze)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"rlce: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
