import pytest

from rankbench.fields import make_field
from rankbench.gabidulin import moore_generator
from rankbench.linalg import fq_rank, right_kernel
from rankbench.loidreau import (Ciphertext, DecodingFailure, decrypt, encrypt,
                                keygen, sample_rank_error)


@pytest.mark.parametrize("params,t", [
    ((2, 12, 12, 8, 2), 1),
    ((2, 13, 13, 10, 3), 0),
    ((2, 22, 22, 16, 3), 1),
])
def test_error_budget_formula(params, t):
    q, m, n, k, lam = params
    pk, _ = keygen(q, m, n, k, lam, seed=1)
    assert pk.t == t == (n - k) // (2 * lam)


def test_keygen_invariants(key_12_8):
    pk, sk = key_12_8
    sp = pk.spec
    n = pk.n
    # P^T = P_0 + gamma_1 P_1 reconstructs bit-exactly
    PT = sk.p_mat.transpose()
    for r in range(n):
        for c in range(n):
            acc = sk.p_parts[0][r][c]
            for g, part in zip(sk.gammas, sk.p_parts[1:]):
                v = part[r][c]
                if v:
                    acc = sp.add(acc, sp.mul(g, v))
            assert PT.rows[r][c] == acc
    assert pk.g_pub.rank() == pk.k
    assert right_kernel(pk.g_pub).dim == n - pk.k
    # secret basis independence and evaluation-vector rank
    assert fq_rank(sp, [1] + list(sk.gammas)) == 2
    assert fq_rank(sp, list(sk.code.a)) == n
    # g_pub * P = G
    assert pk.g_pub.mul(sk.p_mat).rows == moore_generator(sk.code).rows


def test_keygen_validation():
    with pytest.raises(ValueError):
        keygen(2, 10, 12, 8, 2, seed=0)   # n > m
    with pytest.raises(ValueError):
        keygen(2, 12, 12, 12, 2, seed=0)  # k = n
    with pytest.raises(ValueError):
        keygen(2, 12, 12, 8, 1, seed=0)   # lambda < 2


def test_keygen_deterministic():
    a = keygen(2, 12, 12, 8, 2, seed=42)
    b = keygen(2, 12, 12, 8, 2, seed=42)
    assert a[0].g_pub.rows == b[0].g_pub.rows
    assert a[1].gammas == b[1].gammas
    assert a[1].p_parts == b[1].p_parts
    c = keygen(2, 12, 12, 8, 2, seed=43)
    assert c[0].g_pub.rows != a[0].g_pub.rows


@pytest.mark.parametrize("t", [0, 1, 3])
def test_sample_rank_error_exact_rank(t):
    sp = make_field(2, 13)
    e = sample_rank_error(sp, 13, t, seed=9)
    assert len(e) == 13
    assert fq_rank(sp, e) == t
    if t == 0:
        assert all(v == 0 for v in e)


def test_sample_rank_error_validation():
    sp = make_field(2, 13)
    with pytest.raises(ValueError):
        sample_rank_error(sp, 13, 14, seed=0)


def test_encrypt_zero_budget_is_exact():
    pk, sk = keygen(2, 13, 13, 10, 3, seed=3)
    sp = pk.spec
    msg = [5] * pk.k
    ct = encrypt(pk, msg, seed=1)
    rows = pk.g_pub.transpose().mul_vec(msg)
    assert list(ct.c) == rows           # t = 0: c = m G_p exactly
    assert decrypt(sk, ct) == msg


def test_encrypt_decrypt_roundtrip(key_12_8, rng):
    pk, sk = key_12_8
    sp = pk.spec
    for i in range(25):
        msg = [rng.below(sp.order) for _ in range(pk.k)]
        ct = encrypt(pk, msg, seed=1000 + i)
        assert decrypt(sk, ct) == msg


def test_roundtrip_odd_characteristic():
    pk, sk = keygen(3, 10, 10, 6, 2, seed=4)
    assert pk.t == 1
    for i in range(5):
        msg = [(7 * i + j) % pk.spec.order for j in range(pk.k)]
        ct = encrypt(pk, msg, seed=100 + i)
        assert decrypt(sk, ct) == msg


def test_roundtrip_at_full_decoder_budget(key_22_16):
    # t*lambda = 3 = (n-k)/2: the legitimate path uses the whole radius
    pk, sk = key_22_16
    sp = pk.spec
    for i in range(3):
        msg = [(i * 5 + j * 3 + 1) % sp.order for j in range(pk.k)]
        ct = encrypt(pk, msg, seed=60 + i)
        assert decrypt(sk, ct) == msg


def test_error_times_scrambler_rank_bound(key_12_8):
    pk, sk = key_12_8
    sp = pk.spec
    for i in range(10):
        e = sample_rank_error(sp, pk.n, pk.t, seed=i)
        eP = sk.p_mat.transpose().mul_vec(e)
        assert fq_rank(sp, eP) <= pk.t * pk.lam


def test_decrypt_rejects_garbage(key_12_8, rng):
    # uniform ciphertexts land in a decoding sphere only a few percent
    # of the time; most must be rejected cleanly
    pk, sk = key_12_8
    sp = pk.spec
    rejected = 0
    for _ in range(5):
        bad = Ciphertext(tuple(rng.below(sp.order) for _ in range(pk.n)))
        try:
            decrypt(sk, bad)
        except DecodingFailure:
            rejected += 1
    assert rejected >= 3


def test_encrypt_length_check(key_12_8):
    pk, _ = key_12_8
    with pytest.raises(ValueError):
        encrypt(pk, [0] * (pk.k + 1), seed=0)
