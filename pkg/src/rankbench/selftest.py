"""Built-in property suite at desk-scale parameters; used by the CLI
selftest subcommand.  Returns (name, passed, detail) rows."""

from __future__ import annotations

from ._rng import Rng
from .attack import cc2_recover, decrypt_with_recovered
from .fields import make_field
from .linalg import Matrix, Subspace, right_kernel, subspace_intersect, subspace_sum
from .loidreau import decrypt, encrypt, keygen, sample_rank_error
from .gabidulin import decode, encode
from .qspaces import distinguish, expected_profile, intersection_dim_profile
from . import identities


def run() -> list[tuple[str, bool, str]]:
    out = []
    rng = Rng(20260809)

    sp = make_field(2, 12)
    ok = all(sp.mul(a, sp.inv(a)) == 1 for a in range(1, 200))
    ok &= all(sp.frob(sp.frob(a, -1), 1) == a for a in range(1, 100))
    out.append(("field arithmetic F_{2^12}", ok, "inverses and Frobenius"))

    ok = True
    for _ in range(20):
        U = Subspace.from_rows(sp, [[rng.below(sp.order) for _ in range(8)]
                                    for _ in range(2)], 8)
        V = Subspace.from_rows(sp, [[rng.below(sp.order) for _ in range(8)]
                                    for _ in range(2)], 8)
        S = subspace_sum(U, V)
        X = subspace_intersect(U, V)
        ok &= S.dim + X.dim == U.dim + V.dim
    out.append(("modular law", ok, "20 random subspace pairs"))

    pk, sk = keygen(2, 12, 12, 8, 2, seed=11)
    ok = True
    for i in range(10):
        msg = [rng.below(sp.order) for _ in range(8)]
        ok &= decrypt(sk, encrypt(pk, msg, seed=100 + i)) == msg
    out.append(("encrypt/decrypt roundtrip (lambda=2)", ok, "10 messages, t=1"))

    code = sk.code
    ok = True
    for i in range(20):
        msg = [rng.below(sp.order) for _ in range(8)]
        e = sample_rank_error(sp, 12, 2, seed=300 + i)
        y = [sp.add(a, b) for a, b in zip(encode(code, msg), e)]
        got = decode(code, y, 2)
        ok &= got is not None and got[0] == msg
    out.append(("decoder at full radius", ok, "20 rank-2 errors"))

    ok = distinguish(pk.g_pub, 2).is_distinguishable
    cnt = 0
    for s in range(5):
        while True:
            M = Matrix(sp, [[rng.below(sp.order) for _ in range(12)]
                            for _ in range(8)], 12)
            if M.rank() == 8:
                break
        if distinguish(M, 2).observed_dim > 10:
            cnt += 1
    out.append(("distinguisher separation (lambda=2)", ok and cnt >= 4,
                f"{cnt}/5 random codes above the bound"))

    pk3, _ = keygen(2, 16, 16, 12, 3, seed=5)
    rep3 = distinguish(pk3.g_pub, 3)
    out.append(("distinguisher (lambda=3, 16/12)", rep3.is_distinguishable,
                f"dim {rep3.observed_dim} <= {rep3.bound}"))

    pkp, _ = keygen(2, 13, 13, 10, 3, seed=6)
    C = right_kernel(pkp.g_pub)
    prof = intersection_dim_profile(C, 2)
    out.append(("intersection profile 13/10", prof == expected_profile(3, 2),
                f"{prof}"))

    key, rep = cc2_recover(pk.g_pub)
    ok = rep.success and key.verified
    if ok:
        msg = [rng.below(sp.order) for _ in range(8)]
        ct = encrypt(pk, msg, seed=999)
        ok &= decrypt_with_recovered(key, pk, ct) == msg
    out.append(("lambda=2 key recovery + decrypt", ok,
                f"roots tried: {rep.roots_tried}"))

    for name, passed, detail in identities.run(2):
        out.append((f"identity[q=2] {name}", passed, detail))
    return out
