"""Command-line front end.

Exit codes: 0 success (verify: accept), 1 verify reject, 2 usage error,
3 malformed input file, 4 algorithm failure (no decode, search exhausted,
attack did not recover).
"""

from __future__ import annotations

import argparse
import secrets
import random
import sys
from pathlib import Path

from . import attacks, cipher, keyfile, keygen, lever, sigver
from .errors import BadLength, KeyFileError, Malformed, ReesseError, TooSmall

EXIT_OK = 0
EXIT_REJECT = 1
EXIT_USAGE = 2
EXIT_BADFILE = 3
EXIT_FAILURE = 4


def _rng(seed) -> random.Random:
    if seed is None:
        seed = secrets.randbits(64)
        print(f"seed={seed}", file=sys.stderr)
    return random.Random(seed)


def _write(path, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _read_bits(source: str, n: int) -> tuple[int, ...]:
    if set(source) <= {"0", "1"} and source:
        if len(source) != n:
            raise KeyFileError(f"bit string has length {len(source)}, key needs {n}")
        return tuple(int(b) for b in source)
    path = Path(source)
    if not path.exists():
        raise KeyFileError(f"{source!r} is neither a {n}-bit string nor an existing file")
    data = path.read_bytes()
    if len(data) * 8 < n:
        raise KeyFileError(f"file {source!r} holds fewer than {n} bits")
    return tuple((data[i // 8] >> (7 - i % 8)) & 1 for i in range(n))


def cmd_keygen(args) -> int:
    rng = _rng(args.seed)
    params = keygen.generate_params(args.n, args.profile, rng, pool_max=args.pool)
    pub, priv = keygen.generate_keypair(params, rng)
    Path(args.out_pub).write_text(
        keyfile.emit_public(pub, params, params.profile, params.pool_max)
    )
    Path(args.out_priv).write_text(keyfile.emit_private(priv, params))
    print(f"wrote {args.out_pub} and {args.out_priv} (log2 M = {params.M.bit_length()})",
          file=sys.stderr)
    return EXIT_OK


def cmd_encrypt(args) -> int:
    pub = keyfile.parse_public(Path(args.pub).read_text())
    bits = _read_bits(args.infile, pub.n)
    ct = cipher.encrypt(pub.key, pub.M, bits)
    _write(args.out, keyfile.emit_ciphertext(ct))
    return EXIT_OK


def cmd_decrypt(args) -> int:
    priv = keyfile.parse_private(Path(args.priv).read_text())
    ct = keyfile.parse_ciphertext(Path(args.infile).read_text())
    bits = cipher.decrypt(priv.key, priv, ct)
    print("".join(str(b) for b in bits))
    return EXIT_OK


def cmd_sign(args) -> int:
    priv = keyfile.parse_private(Path(args.priv).read_text())
    message = Path(args.msg).read_bytes()
    sig = sigver.sign(priv.key, priv, message, _rng(args.seed))
    _write(args.out, keyfile.emit_signature(sig))
    return EXIT_OK


def cmd_verify(args) -> int:
    pub = keyfile.parse_public(Path(args.pub).read_text())
    message = Path(args.msg).read_bytes()
    sig = keyfile.parse_signature(Path(args.sig).read_text())
    if sigver.verify(pub.key, pub, message, sig):
        print("accept")
        return EXIT_OK
    print("reject")
    return EXIT_REJECT


def cmd_omega(args) -> int:
    om = lever.omega_simple(args.n) if args.kind == "simple" else lever.omega_sumfree(args.n)
    for e in om.elements:
        print(e)
    return EXIT_OK


def cmd_attack_cf_constant(args) -> int:
    pub = keyfile.parse_public(Path(args.pub).read_text())
    recovery = attacks.cf_attack_constant_lever(pub.key.C, pub.M, args.pool)
    for seq, w_power in recovery.candidates:
        print(",".join(str(a) for a in seq) + "\t" + str(w_power))
    return EXIT_OK


def cmd_attack_cf_probe(args) -> int:
    pub = keyfile.parse_public(Path(args.pub).read_text())
    xs = [int(v) for v in args.x.split(",") if v]
    ys = [int(v) for v in args.y.split(",") if v]
    result = attacks.cf_probe(pub.key.C, pub.M, xs, ys, args.pool)
    for L, ay, bound in result.candidates:
        print(f"{L}\t{ay}\t{bound}")
    return EXIT_OK


def cmd_attack_probe_stats(args) -> int:
    stats = attacks.probe_statistics(args.n, args.trials, args.m, args.h, _rng(args.seed))
    rows = stats.rows()
    header = "lever_sums\tbound\tprobes\tprobes_with_candidates\tcandidates"
    text = "\n".join([header] + [
        f"{label}\t{bound}\t{cases}\t{hits}\t{total}"
        for label, bound, cases, hits, total in rows
    ]) + "\n"
    _write(args.out, text)
    if args.plot:
        _render_probe_plot(stats, rows, args.plot)
    return EXIT_OK


def _render_probe_plot(stats, rows, path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    labels = [f"{label}\n{bound}" for label, bound, _, _, _ in rows]
    freqs = [hits / cases if cases else 0.0 for _, _, cases, hits, _ in rows]
    fig, ax = plt.subplots(figsize=(1.2 + 1.1 * len(rows), 3.6))
    ax.bar(range(len(rows)), freqs, color="steelblue")
    ax.set_xticks(range(len(rows)), labels, fontsize=8)
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("probes with candidates / probes")
    ax.set_title(f"convergent-candidate frequency (n={stats.n}, m={stats.m}, h={stats.h}, "
                 f"trials={stats.trials})")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def cmd_density(args) -> int:
    d = attacks.assp_density(args.n, args.logm)
    hundredths = (d.numerator * 100) // d.denominator  # truncate, not round
    print(f"{hundredths // 100}.{hundredths % 100:02d}")
    return EXIT_OK


def cmd_tlp_image(args) -> int:
    print(" ".join(str(v) for v in sorted(attacks.tlp_image(args.p))))
    return EXIT_OK


def cmd_tlp_solve(args) -> int:
    print(" ".join(str(v) for v in sorted(attacks.tlp_brute(args.y, args.p))))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reesse1plus",
        description="REESSE1+ keypairs, encryption, signatures, and the "
                    "continued-fraction cryptanalysis workbench.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate a keypair")
    p.add_argument("--n", type=int, required=True, help="even block length")
    p.add_argument("--profile", choices=("strict", "desk"), default="desk")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--pool", type=int, default=1201, help="largest allowed sequence element")
    p.add_argument("--out-pub", required=True)
    p.add_argument("--out-priv", required=True)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt an n-bit block")
    p.add_argument("--pub", required=True)
    p.add_argument("--in", dest="infile", required=True,
                   help="bit string like 0101... or a file whose first n bits are taken")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a ciphertext file")
    p.add_argument("--priv", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("sign", help="sign a message file")
    p.add_argument("--priv", required=True)
    p.add_argument("--msg", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sign)

    p = sub.add_parser("verify", help="verify a signature (exit 0 accept, 1 reject)")
    p.add_argument("--pub", required=True)
    p.add_argument("--msg", required=True)
    p.add_argument("--sig", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("omega", help="emit a lever codomain, one element per line")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=("simple", "sumfree"), default="simple")
    p.set_defaults(func=cmd_omega)

    p = sub.add_parser("attack", help="cryptanalysis workbench")
    asub = p.add_subparsers(dest="attack_command", required=True)

    a = asub.add_parser("cf-constant", help="constant-lever continued-fraction recovery")
    a.add_argument("--pub", required=True)
    a.add_argument("--pool", type=int, default=1201)
    a.set_defaults(func=cmd_attack_cf_constant)

    a = asub.add_parser("cf-probe", help="convergent probe over chosen index sets")
    a.add_argument("--pub", required=True)
    a.add_argument("--x", required=True, help="comma-separated 1-based indices")
    a.add_argument("--y", required=True, help="comma-separated 1-based indices")
    a.add_argument("--pool", type=int, default=1201)
    a.set_defaults(func=cmd_attack_cf_probe)

    a = asub.add_parser("probe-stats", help="Monte-Carlo candidate frequencies (TSV report)")
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--trials", type=int, required=True)
    a.add_argument("--m", type=int, required=True)
    a.add_argument("--h", type=int, required=True)
    a.add_argument("--seed", type=int, default=None)
    a.add_argument("--out", default=None, help="TSV output path (default stdout)")
    a.add_argument("--plot", default=None, help="also render a PNG bar chart here")
    a.set_defaults(func=cmd_attack_probe_stats)

    p = sub.add_parser("density", help="compact-sequence density n^2 / log M")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--logm", type=int, required=True)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("tlp", help="x**x brute-force tools")
    tsub = p.add_subparsers(dest="tlp_command", required=True)
    t = tsub.add_parser("image", help="image of x -> x**x mod p")
    t.add_argument("--p", type=int, required=True)
    t.set_defaults(func=cmd_tlp_image)
    t = tsub.add_parser("solve", help="all solutions of x**x = y mod p")
    t.add_argument("--y", type=int, required=True)
    t.add_argument("--p", type=int, required=True)
    t.set_defaults(func=cmd_tlp_solve)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (KeyFileError, Malformed) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BADFILE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BADFILE
    except (BadLength, TooSmall, ValueError) as exc:
        # bad argument values, not algorithm failures
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ReesseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


def main() -> None:
    sys.exit(run())
