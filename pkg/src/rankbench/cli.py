"""Command-line workbench: reproducible, file-based workflows over the
scheme, the distinguisher, and the key-recovery attacks.

All artifacts are JSON with hex-encoded field elements (packed
coefficient vectors), so identical seeded invocations produce
byte-identical files.  Exit codes: 0 success, 1 operational failure
(decoding or attack failure), 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from ._rng import Rng
from .attack import attack3, cc2_recover, verify_alternate, RecoveredKey
from .fields import make_field
from .gabidulin import GabidulinCode
from .linalg import Matrix, right_kernel
from .loidreau import Ciphertext, DecodingFailure, PublicKey, SecretKey, decrypt, encrypt, keygen
from .qspaces import distinguish, expected_profile, intersection_dim_profile
from . import identities as identity_suite
from . import selftest as selftest_suite

PUB_FORMAT = "loidreau-pub/v1"
SEC_FORMAT = "loidreau-sec/v1"


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write(path: str, obj):
    with open(path, "w") as fh:
        fh.write(_dump(obj))


def _read(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _vec_hex(spec, vec) -> list[str]:
    return [spec.to_hex(v) for v in vec]


def _vec_parse(spec, lst) -> list[int]:
    return [spec.from_hex(s) for s in lst]


def _pub_to_dict(pk: PublicKey) -> dict:
    sp = pk.spec
    q, m, n, k, lam = pk.params
    return {
        "format": PUB_FORMAT,
        "q": q, "m": m, "n": n, "k": k, "lambda": lam, "t": pk.t,
        "modulus": list(sp.modulus),
        "g_pub": [_vec_hex(sp, row) for row in pk.g_pub.rows],
    }


def _pub_from_dict(d: dict) -> PublicKey:
    if d.get("format") not in (PUB_FORMAT, SEC_FORMAT):
        raise ValueError(f"not a public key file (format {d.get('format')!r})")
    sp = make_field(d["q"], d["m"], d["modulus"])
    rows = [_vec_parse(sp, r) for r in d["g_pub"]]
    g_pub = Matrix(sp, rows, d["n"])
    return PublicKey(sp, g_pub, d["t"], (d["q"], d["m"], d["n"], d["k"], d["lambda"]))


def _sec_to_dict(pk: PublicKey, sk: SecretKey) -> dict:
    sp = pk.spec
    d = _pub_to_dict(pk)
    d["format"] = SEC_FORMAT
    d["a"] = _vec_hex(sp, sk.code.a)
    d["gammas"] = _vec_hex(sp, sk.gammas)
    d["P"] = [_vec_hex(sp, row) for row in sk.p_mat.rows]
    d["p_parts"] = [[list(row) for row in part] for part in sk.p_parts]
    return d


def _sec_from_dict(d: dict) -> tuple[PublicKey, SecretKey]:
    if d.get("format") != SEC_FORMAT:
        raise ValueError(f"not a secret key file (format {d.get('format')!r})")
    pk = _pub_from_dict(d)
    sp = pk.spec
    a = tuple(_vec_parse(sp, d["a"]))
    gammas = tuple(_vec_parse(sp, d["gammas"]))
    p_mat = Matrix(sp, [_vec_parse(sp, row) for row in d["P"]], d["n"])
    p_parts = tuple(tuple(tuple(x for x in row) for row in part) for part in d["p_parts"])
    code = GabidulinCode(sp, a, d["k"])
    sk = SecretKey(code, gammas, p_mat, p_parts, d["t"])
    return pk, sk


def _recovered_to_dict(key: RecoveredKey) -> dict:
    sp = key.spec
    return {
        "gammas": _vec_hex(sp, key.gammas),
        "g_vecs": [_vec_hex(sp, v) for v in key.g_vecs],
        "verified": key.verified,
    }


def _recovered_from_dict(d: dict, pk: PublicKey) -> RecoveredKey:
    sp = pk.spec
    gammas = tuple(_vec_parse(sp, d["gammas"]))
    g_vecs = tuple(tuple(_vec_parse(sp, v)) for v in d["g_vecs"])
    return RecoveredKey(len(gammas) + 1, gammas, g_vecs, bool(d.get("verified")), sp)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_keygen(args) -> int:
    pk, sk = keygen(args.q, args.m, args.n, args.k, getattr(args, "lambda"), args.seed)
    if pk.t == 0:
        print("note: error budget t = 0 at these parameters "
              "(n-k < 2*lambda); ciphertexts carry no error", file=sys.stderr)
    _write(args.pub, _pub_to_dict(pk))
    _write(args.sec, _sec_to_dict(pk, sk))
    out = {"pub": args.pub, "sec": args.sec, "t": pk.t}
    sys.stdout.write(_dump(out) if args.json else
                     f"wrote {args.pub} and {args.sec} (t={pk.t})\n")
    return 0


def cmd_encrypt(args) -> int:
    pk = _pub_from_dict(_read(args.pub))
    msg = _vec_parse(pk.spec, args.msg.split(","))
    ct = encrypt(pk, msg, args.seed)
    _write(args.out, {"c": _vec_hex(pk.spec, ct.c)})
    sys.stdout.write(_dump({"out": args.out}) if args.json else f"wrote {args.out}\n")
    return 0


def cmd_decrypt(args) -> int:
    pk, sk = _sec_from_dict(_read(args.sec))
    ct = Ciphertext(tuple(_vec_parse(pk.spec, _read(args.ct)["c"])))
    try:
        msg = decrypt(sk, ct)
    except DecodingFailure as exc:
        print(f"decryption failed: {exc}", file=sys.stderr)
        return 1
    hexmsg = _vec_hex(pk.spec, msg)
    sys.stdout.write(_dump({"msg": hexmsg}) if args.json else
                     "msg: " + ",".join(hexmsg) + "\n")
    return 0


def cmd_distinguish(args) -> int:
    pk = _pub_from_dict(_read(args.pub))
    lam = getattr(args, "lambda")
    rep = distinguish(pk.g_pub, lam)
    baseline = []
    if args.baseline_trials:
        if args.seed is None:
            print("--baseline-trials requires --seed", file=sys.stderr)
            return 2
        sp = pk.spec
        rng = Rng(args.seed)
        n, k = pk.n, pk.k
        for _ in range(args.baseline_trials):
            while True:
                M = Matrix(sp, [[rng.below(sp.order) for _ in range(n)]
                                for _ in range(k)], n)
                if M.rank() == k:
                    break
            baseline.append(distinguish(M, lam).observed_dim)
    out = rep.to_dict()
    if baseline:
        out["baseline_dims"] = baseline
        out["baseline_at_or_below_bound"] = sum(1 for d in baseline if d <= rep.bound)
    if args.profile:
        C = right_kernel(pk.g_pub)
        r = C.dim - 1
        out["profile"] = intersection_dim_profile(C, r)
        out["profile_expected"] = expected_profile(C.dim, r)
    if args.fig:
        from .reports import render_distinguisher_figure, render_profile_figure
        render_distinguisher_figure(args.fig, out, baseline)
        if args.profile:
            ppath = args.fig.rsplit(".", 1)[0] + "_profile.png"
            render_profile_figure(ppath, out["profile"], out["profile_expected"])
            out["profile_figure"] = ppath
        out["figure"] = args.fig
    sys.stdout.write(_dump(out) if args.json else _format_table(out))
    return 0


def _format_table(d: dict) -> str:
    lines = []
    for key in sorted(d):
        lines.append(f"{key:28} {d[key]}")
    return "\n".join(lines) + "\n"


def cmd_attack(args) -> int:
    pk = _pub_from_dict(_read(args.pub))
    lam = getattr(args, "lambda")
    t0 = time.time()
    if lam == 2:
        key, rep = cc2_recover(pk.g_pub)
    else:
        progress = None
        if args.verbose:
            def progress(done, total):
                print(f"  root search: {done}/{total} x-values", file=sys.stderr)
        key, rep = attack3(pk.g_pub, workers=args.workers, progress=progress)
    elapsed = time.time() - t0
    if args.verbose:
        for name, ms in rep.phases:
            print(f"  phase {name}: {ms} ms", file=sys.stderr)
    if key is None:
        print(f"attack failed after {elapsed:.1f}s: {'; '.join(rep.notes)}",
              file=sys.stderr)
        return 1
    _write(args.out, _recovered_to_dict(key))
    out = rep.to_dict()
    out["out"] = args.out
    sys.stdout.write(_dump(out) if args.json else
                     f"recovered key written to {args.out} "
                     f"(roots tried: {rep.roots_tried})\n")
    return 0


def cmd_verify(args) -> int:
    pk = _pub_from_dict(_read(args.pub))
    key = _recovered_from_dict(_read(args.recovered), pk)
    c_dual = right_kernel(pk.g_pub)
    ok = verify_alternate(key, c_dual)
    sys.stdout.write(_dump({"verified": ok}) if args.json
                     else f"verified: {ok}\n")
    return 0 if ok else 1


def cmd_identities(args) -> int:
    results = identity_suite.run(args.q)
    ok = True
    for name, passed, detail in results:
        ok &= passed
        sys.stdout.write(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}\n")
    return 0 if ok else 1


def cmd_selftest(args) -> int:
    results = selftest_suite.run()
    ok = True
    for name, passed, detail in results:
        ok &= passed
        sys.stdout.write(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}\n")
    return 0 if ok else 1


def cmd_bench(args) -> int:
    from . import bench as bench_suite
    rows = bench_suite.run(args.suite)
    with open(args.csv, "w") as fh:
        fh.write("suite,params,phase,millis\n")
        for suite, params, phase, millis in rows:
            fh.write(f"{suite},{params},{phase},{millis}\n")
    if args.fig:
        from .reports import render_bench_figure
        render_bench_figure(args.fig, rows)
    sys.stdout.write(f"wrote {args.csv}" + (f" and {args.fig}" if args.fig else "") + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="rankbench",
        description="Rank-metric encryption workbench: scheme, distinguisher, attacks")
    ap.add_argument("--json", action="store_true", help="machine-readable stdout")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lambda", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--pub", required=True)
    p.add_argument("--sec", required=True)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt a message")
    p.add_argument("--pub", required=True)
    p.add_argument("--msg", required=True,
                   help="comma-separated hex field elements, length k")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt with the secret key")
    p.add_argument("--sec", required=True)
    p.add_argument("--ct", required=True)
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("distinguish", help="dimension distinguisher on a public key")
    p.add_argument("--pub", required=True)
    p.add_argument("--lambda", type=int, required=True)
    p.add_argument("--baseline-trials", type=int, default=0)
    p.add_argument("--seed", type=int, default=None,
                   help="seed for the random-code baseline")
    p.add_argument("--profile", action="store_true",
                   help="include the iterated intersection profile")
    p.add_argument("--fig", default=None, help="render a PNG figure here")
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("attack", help="key recovery from a public key")
    p.add_argument("--pub", required=True)
    p.add_argument("--lambda", type=int, choices=(2, 3), required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("verify", help="check a recovered key against a public key")
    p.add_argument("--pub", required=True)
    p.add_argument("--recovered", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("identities", help="polynomial identity suite")
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("selftest", help="full property suite at desk scale")
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("bench", help="timing suites")
    p.add_argument("--suite", required=True,
                   choices=("distinguish", "attack2", "identities", "all"))
    p.add_argument("--csv", required=True)
    p.add_argument("--fig", default=None)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, DecodingFailure, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
