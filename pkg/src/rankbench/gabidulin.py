"""Gabidulin codes: Moore-matrix construction, encoding, and rank-error
decoding by linearized-polynomial reconstruction.

A codeword is the evaluation of a linearized message polynomial
f(x) = sum m_u x^(q^u), deg_q f <= k-1, on the n coordinates of the
evaluation vector a (whose coordinates must be F_q-independent).  The
decoder solves the interpolation system V(y_i) = N(a_i) with
deg_q V <= t and deg_q N <= k-1+t, then recovers f as the left quotient
of N by V in the composition ring; any rank-t error with
t <= (n-k)/2 is corrected.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import FieldSpec
from .linalg import Matrix, Subspace, fq_rank, right_kernel, solve, vec_frob, vec_sub


@dataclass(frozen=True)
class GabidulinCode:
    spec: FieldSpec
    a: tuple[int, ...]
    k: int

    def __post_init__(self):
        n = len(self.a)
        if not 1 <= self.k <= n <= self.spec.m:
            raise ValueError("need 1 <= k <= n <= m")
        if fq_rank(self.spec, list(self.a)) != n:
            raise ValueError("evaluation vector coordinates must be F_q-independent")

    @property
    def n(self) -> int:
        return len(self.a)


def moore_matrix(spec: FieldSpec, a, nrows: int) -> Matrix:
    """Rows a^[0], a^[1], ..., a^[nrows-1] (componentwise q-powers)."""
    rows = []
    cur = list(a)
    for _ in range(nrows):
        rows.append(list(cur))
        cur = [spec.frob(x, 1) for x in cur]
    return Matrix(spec, rows, len(list(a)))


def moore_generator(code: GabidulinCode) -> Matrix:
    return moore_matrix(code.spec, code.a, code.k)


def encode(code: GabidulinCode, msg) -> list[int]:
    if len(msg) != code.k:
        raise ValueError(f"message must have length k={code.k}")
    sp = code.spec
    out = [0] * code.n
    apow = list(code.a)
    for u in range(code.k):
        c = msg[u]
        if c:
            for j in range(code.n):
                out[j] = sp.add(out[j], sp.mul(c, apow[j]))
        if u + 1 < code.k:
            apow = [sp.frob(x, 1) for x in apow]
    return out


def _compose_coeff(sp: FieldSpec, v: list[int], f: dict[int, int], ell: int) -> int:
    """Coefficient of X^[ell] in the composition V o f."""
    acc = 0
    for u, vu in enumerate(v):
        if vu:
            fv = f.get(ell - u)
            if fv:
                acc = sp.add(acc, sp.mul(vu, sp.frob(fv, u)))
    return acc


def decode(code: GabidulinCode, y, t_max: int):
    """Unique decoding up to rank t_max <= (n-k)/2 errors.

    Returns (msg, error) with y = encode(msg) + error, or None when no
    codeword lies within rank t_max of y.
    """
    sp = code.spec
    n, k = code.n, code.k
    if len(y) != n:
        raise ValueError("received word length mismatch")
    if not 0 <= t_max <= (n - k) // 2:
        raise ValueError("t_max must satisfy 0 <= t_max <= (n-k)/2")

    # interpolation system: V(y_i) = N(a_i), unknowns (v_0..v_t, n_0..n_{k-1+t})
    rows = []
    for i in range(n):
        row = []
        yi = y[i]
        for u in range(t_max + 1):
            row.append(yi)
            yi = sp.frob(yi, 1)
        ai = code.a[i]
        for u in range(k + t_max):
            row.append(sp.neg(ai))
            ai = sp.frob(ai, 1)
        rows.append(row)
    ker = right_kernel(Matrix(sp, rows, 2 * t_max + k + 1))
    if ker.dim == 0:
        return None
    sol = ker.basis.rows[0]
    V = sol[:t_max + 1]
    N = sol[t_max + 1:]
    if all(v == 0 for v in V):
        return None

    # left division N = V o f + R in the composition ring
    dV = max(u for u, v in enumerate(V) if v)
    inv_lead = sp.inv(V[dV])
    R = {u: c for u, c in enumerate(N) if c}
    f: dict[int, int] = {}
    while R:
        dR = max(R)
        if dR < dV:
            return None  # nonzero remainder: error rank exceeded t_max
        fu = sp.frob(sp.mul(R[dR], inv_lead), -dV)
        pos = dR - dV
        f[pos] = fu
        for u, vu in enumerate(V):
            if vu:
                ell = u + pos
                s = sp.sub(R.get(ell, 0), sp.mul(vu, sp.frob(fu, u)))
                if s:
                    R[ell] = s
                else:
                    R.pop(ell, None)
    if any(u >= k for u in f):
        return None
    msg = [f.get(u, 0) for u in range(k)]
    err = vec_sub(sp, list(y), encode(code, msg))
    if fq_rank(sp, err) > t_max:
        return None
    return msg, err


def dual_space(code: GabidulinCode) -> Subspace:
    """The (n-k)-dimensional dual of the code, as a canonical subspace."""
    return right_kernel(moore_generator(code))


def dual_eval_vector(spec: FieldSpec, a, s: int) -> list[int]:
    """Evaluation vector b with G_s(a)^perp = G_{n-s}(b).

    b is the kernel of the n-1 Moore rows a^[d], d = -(n-s-1) .. s-1;
    the kernel is one-dimensional because the coordinates of a are
    F_q-independent.
    """
    a = list(a)
    n = len(a)
    if not 0 < s < n:
        raise ValueError("need 0 < s < n")
    rows = [vec_frob(spec, a, d) for d in range(-(n - s - 1), s)]
    ker = right_kernel(Matrix(spec, rows, n))
    if ker.dim != 1:
        raise ArithmeticError("dual evaluation vector is not unique")
    b = ker.basis.rows[0]
    if fq_rank(spec, b) != n:
        raise ArithmeticError("dual evaluation vector is rank deficient")
    return b
