"""The cryptosystem under attack: key generation with a lambda-dimensional
secret coefficient subspace, encryption with rank-t errors, and the
legitimate decryption path.

Key generation draws the scrambler P as P^T = P_0 + g_1 P_1 + ... with
random F_q matrices P_i and secret elements g_i, retrying until P is
invertible, so the decomposition used by the distinguisher analysis is
available by construction.  The error budget is t = (n-k) // (2*lambda);
parameter sets with t = 0 are allowed (the attack's success criterion
for those is span equality rather than error correction).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ._rng import Rng
from .fields import FieldSpec, make_field
from .gabidulin import GabidulinCode, decode, moore_generator
from .linalg import Matrix, fq_rank, solve, vec_add

_MAX_RETRIES = 1000


@dataclass(frozen=True)
class PublicKey:
    spec: FieldSpec
    g_pub: Matrix
    t: int
    params: tuple[int, int, int, int, int]  # (q, m, n, k, lambda)

    @property
    def n(self) -> int:
        return self.params[2]

    @property
    def k(self) -> int:
        return self.params[3]

    @property
    def lam(self) -> int:
        return self.params[4]


@dataclass(frozen=True)
class SecretKey:
    code: GabidulinCode
    gammas: tuple[int, ...]          # (g_1, ..., g_{lambda-1}); g_0 = 1 implied
    p_mat: Matrix                    # P itself, over F_{q^m}
    p_parts: tuple                   # (P_0, ..., P_{lambda-1}) as F_q int grids
    t: int

    @property
    def lam(self) -> int:
        return len(self.gammas) + 1


@dataclass(frozen=True)
class Ciphertext:
    c: tuple[int, ...]


def keygen(q: int, m: int, n: int, k: int, lam: int, seed: int,
           modulus=None) -> tuple[PublicKey, SecretKey]:
    """Deterministic key generation from a seed."""
    if not 1 <= k < n <= m:
        raise ValueError("need 1 <= k < n <= m")
    if not 2 <= lam <= m:
        raise ValueError("need 2 <= lambda <= m")
    spec = make_field(q, m, modulus)
    rng = Rng(seed)

    a = _sample_full_rank_vector(spec, n, rng)
    gammas = _sample_gammas(spec, lam, rng)

    for _ in range(_MAX_RETRIES):
        parts = tuple(tuple(tuple(rng.below(q) for _ in range(n)) for _ in range(n))
                      for _ in range(lam))
        pt_rows = []
        for r in range(n):
            row = []
            for c in range(n):
                acc = parts[0][r][c]
                for i, g in enumerate(gammas):
                    v = parts[i + 1][r][c]
                    if v:
                        acc = spec.add(acc, spec.mul(g, v))
                row.append(acc)
            pt_rows.append(row)
        p_mat = Matrix(spec, pt_rows, n).transpose()   # P with P^T = sum g_i P_i
        p_inv = p_mat.inverse()
        if p_inv is not None:
            break
    else:
        raise ArithmeticError("could not sample an invertible scrambler")

    code = GabidulinCode(spec, tuple(a), k)
    g_pub = moore_generator(code).mul(p_inv)
    t = (n - k) // (2 * lam)
    pk = PublicKey(spec, g_pub, t, (q, m, n, k, lam))
    sk = SecretKey(code, tuple(gammas), p_mat, parts, t)
    return pk, sk


def _sample_full_rank_vector(spec: FieldSpec, n: int, rng: Rng) -> list[int]:
    for _ in range(_MAX_RETRIES):
        a = [rng.below(spec.order) for _ in range(n)]
        if fq_rank(spec, a) == n:
            return a
    raise ArithmeticError("could not sample a full-rank evaluation vector")


def _sample_gammas(spec: FieldSpec, lam: int, rng: Rng) -> list[int]:
    for _ in range(_MAX_RETRIES):
        gs = [rng.below(spec.order) for _ in range(lam - 1)]
        if any(g < spec.q for g in gs):
            continue  # must avoid F_q
        if fq_rank(spec, [1] + gs) == lam:
            return gs
    raise ArithmeticError("could not sample an independent secret basis")


def sample_rank_error(spec: FieldSpec, n: int, t: int, seed: int) -> list[int]:
    """Error vector with F_q-rank exactly t: (t independent elements)
    times (full-rank t x n matrix over F_q)."""
    if not 0 <= t <= min(n, spec.m):
        raise ValueError("error rank t out of range")
    if t == 0:
        return [0] * n
    rng = Rng(seed)
    for _ in range(_MAX_RETRIES):
        eps = [rng.below(spec.order) for _ in range(t)]
        if fq_rank(spec, eps) == t:
            break
    else:
        raise ArithmeticError("could not sample an independent error support")
    base_spec = make_field(spec.q, 1)
    for _ in range(_MAX_RETRIES):
        grid = [[rng.below(spec.q) for _ in range(n)] for _ in range(t)]
        if Matrix(base_spec, grid, n).rank() == t:
            break
    else:
        raise ArithmeticError("could not sample a full-rank support matrix")
    e = [0] * n
    for s in range(t):
        row = grid[s]
        for j in range(n):
            c = row[j]
            if c:
                e[j] = spec.add(e[j], eps[s] if c == 1 else spec.mul(eps[s], c))
    return e


def encrypt(pk: PublicKey, msg, seed: int) -> Ciphertext:
    if len(msg) != pk.k:
        raise ValueError(f"message must have length k={pk.k}")
    sp = pk.spec
    c = [0] * pk.n
    for i, mi in enumerate(msg):
        if mi:
            row = pk.g_pub.rows[i]
            c = [sp.add(x, sp.mul(mi, y)) for x, y in zip(c, row)]
    e = sample_rank_error(sp, pk.n, pk.t, seed)
    return Ciphertext(tuple(vec_add(sp, c, e)))


class DecodingFailure(Exception):
    """The received word is not within the unique-decoding radius."""


def decrypt(sk: SecretKey, ct: Ciphertext) -> list[int]:
    """c P = m G + e P, where e P has rank at most t*lambda; decode."""
    code = sk.code
    sp = code.spec
    c = list(ct.c)
    if len(c) != code.n:
        raise ValueError("ciphertext length mismatch")
    y = sk.p_mat.transpose().mul_vec(c)   # row vector times P
    t_max = sk.t * sk.lam
    if t_max == 0:
        msg = solve(moore_generator(code).transpose(), y)
        if msg is None:
            raise DecodingFailure("ciphertext is not a codeword and t = 0")
        return msg
    got = decode(code, y, t_max)
    if got is None:
        raise DecodingFailure("rank error exceeds the decoder radius")
    return got[0]
