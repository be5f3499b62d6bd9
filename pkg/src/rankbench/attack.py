"""Key-recovery engines: the two-dimensional attack on the scrambled
Gabidulin public code and its three-dimensional extension.

Both attacks run the same playbook on the dual public code C:

  1. Intersect the iterated chain of consecutive Frobenius sumspaces
     down to the small "end" space, power it back by q^-r, and harvest
     the anchor line <g_0 + gamma_1 g_1 (+ gamma_2 g_2)> plus the
     triple (or pair) space B = <g_0, g_1(, g_2)> through explicit
     subspace intersections.
  2. Extraction lines E_i = (B^[i] cap C)^[-i] carry the Frobenius
     twists gamma^[-i] of the secret coefficients.  Decomposing the
     anchor across three (two) such lines twice yields a scalar ratio
     alpha, turning the unknown secret pair into a root of an explicit
     polynomial.
  3. Every candidate root is completed to a full tuple by linear
     algebra and accepted only if it regenerates C exactly, so
     extraneous roots cost time but never soundness.

The iterated chain is used instead of a single pairwise sumspace
intersection: inside the distinguisher regime the chain loses exactly
lambda dimensions per step, while the pairwise intersection can be
inflated by the ambient-dimension cap at desk-scale parameters.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .fields import FieldElement, FieldSpec
from .gabidulin import GabidulinCode, decode, dual_eval_vector
from .linalg import (Matrix, Subspace, fq_rank, right_kernel, solve,
                     subspace_intersect, subspace_sum, vec_add, vec_frob,
                     vec_scale, vec_sub)
from .loidreau import Ciphertext, DecodingFailure, PublicKey
from .polyring import (SparseBiPoly, build_F, divide_out_f0,
                       p_gamma_univariate, reduced_polynomial,
                       roots_bivariate_independent, roots_univariate)
from .qspaces import sumspace


class ChainStepError(RuntimeError):
    """An extraction-chain intersection had an unexpected dimension."""

    def __init__(self, step: str, expected, got):
        super().__init__(f"extraction step {step!r}: expected dim {expected}, got {got}")
        self.step = step
        self.expected = expected
        self.got = got


@dataclass
class ExtractionState:
    c_dual: Subspace
    r: int                                # n - k - 1
    x1: list[int]                         # anchor-aligned end vector
    x2: list[int]                         # isolated second end vector
    x3: list[int]                         # completion of the end space
    b_basis: Subspace                     # B = <g_0, g_1, g_2> (or <g, h>)
    ext_subspaces: list[Subspace]         # E_i for i = 0..r, each 1-dim
    ext_gens: list[list[int]]             # normalized generator of each E_i
    anchor: list[int]                     # generator of E_0

    @property
    def spec(self) -> FieldSpec:
        return self.c_dual.spec


@dataclass
class RecoveredKey:
    lam: int
    gammas: tuple[int, ...]               # (gamma_1'[, gamma_2'])
    g_vecs: tuple[tuple[int, ...], ...]   # (g_0', g_1'[, g_2'])
    verified: bool
    spec: FieldSpec


@dataclass
class AttackReport:
    success: bool = False
    params: dict = field(default_factory=dict)
    roots_tried: int = 0
    phases: list = field(default_factory=list)   # (name, millis)
    notes: list = field(default_factory=list)

    def phase(self, name: str, t0: float):
        self.phases.append((name, round(1000.0 * (time.perf_counter() - t0), 3)))

    def to_dict(self) -> dict:
        return {
            "success": self.success,
            "params": self.params,
            "roots_tried": self.roots_tried,
            "notes": self.notes,
        }


# ---------------------------------------------------------------------------
# Extraction chains
# ---------------------------------------------------------------------------

def _iterated_end_space(C: Subspace, r: int, width: int) -> Subspace:
    """cap_{j=0}^{r} (C^[j] + ... + C^[j+width-1])."""
    acc = sumspace(C, 0, width)
    for j in range(1, r + 1):
        acc = subspace_intersect(acc, sumspace(C, j, width))
        if acc.dim == width:
            break  # cannot shrink below the forced end space
    return acc


def _single_generator(S: Subspace, step: str) -> list[int]:
    if S.dim != 1:
        raise ChainStepError(step, 1, S.dim)
    return list(S.basis.rows[0])


def extraction_chain_3(c_dual: Subspace) -> ExtractionState:
    """Harvest anchor, triple space B, and all extraction lines for a
    three-dimensional secret subspace.  Aborts with the failing step on
    non-generic or out-of-regime input."""
    C = c_dual
    sp = C.spec
    n = C.ambient
    nk = C.dim
    r = nk - 1
    if r < 4:
        raise ChainStepError("codimension", "n-k >= 5", nk)
    if 3 * nk + 3 >= n:
        raise ChainStepError("regime", f"3(n-k)+3 < n (n={n})", 3 * nk + 3)

    W = _iterated_end_space(C, r, 3)
    if W.dim != 3:
        raise ChainStepError("sumspace chain", 3, W.dim)
    B1 = W.frob(-r)

    A0 = subspace_intersect(C, B1)
    x1 = _single_generator(A0, "anchor")

    X2 = subspace_intersect(B1, C.frob(2 - r))
    x2 = _single_generator(X2, "second end vector")

    B2 = subspace_sum(subspace_sum(B1, A0.frob(1)), X2.frob(-1))
    if B2.dim != 5:
        raise ChainStepError("B2", 5, B2.dim)

    # C^[-1] + C^[1] + <x2^[-1]> holds the full first-power block of B2 but
    # meets its zeroth- and second-power lines only trivially
    W2 = subspace_sum(subspace_sum(C.frob(-1), C.frob(1)), X2.frob(-1))
    G1 = subspace_intersect(B2, W2)
    if G1.dim != 3:
        raise ChainStepError("first-power block", 3, G1.dim)
    B = G1.frob(-1)

    ext = []
    gens = []
    for i in range(r + 1):
        Ei = subspace_intersect(B.frob(i), C).frob(-i)
        gens.append(_single_generator(Ei, f"extraction line {i}"))
        ext.append(Ei)

    # x3: completion of B1 independent from x1, x2
    x3 = None
    for row in B1.basis.rows:
        if Matrix(sp, [x1, x2, row], n).rank() == 3:
            x3 = list(row)
            break
    if x3 is None:
        raise ChainStepError("end-space completion", 3, 2)

    return ExtractionState(C, r, x1, x2, x3, B, ext, gens, gens[0])


def extraction_chain_2(c_dual: Subspace) -> ExtractionState:
    """Two-dimensional analogue: B = <g, h>, lines E_i = <g + gamma^[-i] h>."""
    C = c_dual
    sp = C.spec
    n = C.ambient
    nk = C.dim
    r = nk - 1
    if r < 3:
        raise ChainStepError("codimension", "n-k >= 4", nk)
    if 2 * nk + 2 >= n:
        raise ChainStepError("regime", f"2(n-k)+2 < n (n={n})", 2 * nk + 2)

    W = _iterated_end_space(C, r, 2)
    if W.dim != 2:
        raise ChainStepError("sumspace chain", 2, W.dim)
    B1 = W.frob(-r)

    A0 = subspace_intersect(C, B1)
    x1 = _single_generator(A0, "anchor")

    B2 = subspace_sum(B1, A0.frob(1))
    if B2.dim != 3:
        raise ChainStepError("B2", 3, B2.dim)

    G1 = subspace_intersect(B2, subspace_sum(C.frob(-1), C.frob(1)))
    if G1.dim != 2:
        raise ChainStepError("first-power block", 2, G1.dim)
    B = G1.frob(-1)

    ext = []
    gens = []
    for i in range(r + 1):
        Ei = subspace_intersect(B.frob(i), C).frob(-i)
        gens.append(_single_generator(Ei, f"extraction line {i}"))
        ext.append(Ei)

    x2 = None
    for row in B1.basis.rows:
        if Matrix(sp, [x1, row], n).rank() == 2:
            x2 = list(row)
            break
    if x2 is None:
        raise ChainStepError("end-space completion", 2, 1)

    return ExtractionState(C, r, x1, x2, [], B, ext, gens, gens[0])


# ---------------------------------------------------------------------------
# Anchor decomposition and the alpha ratio
# ---------------------------------------------------------------------------

def _decompose_anchor(state: ExtractionState, indices: tuple[int, ...]):
    """Unique coefficients writing the anchor as a combination of the
    extraction lines named by indices (the direct-sum property)."""
    sp = state.spec
    gens = [state.ext_gens[i] for i in indices]
    if Matrix(sp, gens, state.c_dual.ambient).rank() != len(indices):
        raise ChainStepError(f"direct sum {indices}", len(indices), "dependent")
    cols = Matrix(sp, [[g[pos] for g in gens]
                       for pos in range(state.c_dual.ambient)], len(indices))
    coeffs = solve(cols, state.anchor)
    if coeffs is None or any(c == 0 for c in coeffs):
        raise ChainStepError(f"decomposition {indices}", "nonzero coefficients", coeffs)
    return coeffs


def compute_alpha(state: ExtractionState,
                  idx1: tuple[int, int, int] = (1, 2, 3),
                  idx2: tuple[int, int, int] = (1, 4, 5)) -> FieldElement:
    """Scalar ratio between the two leading anchor components.

    Both decompositions share the extraction line of the leading index,
    so their first coefficients differ by the scalar alpha; the value is
    returned raised to q^s, s = max index, which is the normalization
    the combined polynomial takes.
    """
    _check_triples(idx1, idx2, state.r)
    lam1 = _decompose_anchor(state, idx1)
    lam2 = _decompose_anchor(state, idx2)
    sp = state.spec
    raw = sp.div(lam1[0], lam2[0])
    s = max(*idx1, *idx2)
    return FieldElement(sp, sp.frob(raw, s))


def _check_triples(idx1, idx2, r):
    for idx in (idx1, idx2):
        i, j, k = idx
        if not 1 <= i < j < k <= r:
            raise ValueError(f"indices {idx} must be distinct, ascending, within 1..{r}")
    if idx1[0] != idx2[0]:
        raise ValueError("index triples must share the leading index")
    if idx1 == idx2:
        raise ValueError("index triples must differ")


def eqf_triples(idx1, idx2):
    """Map decomposition triples to the exponent triples of the combined
    polynomial: raising the ratio equation to q^s turns Frobenius power
    -u into exponent s-u."""
    i, j, k = idx1
    _, j2, k2 = idx2
    s = max(k, k2)
    return (s, s - j, s - k), (s - i, s - j2, s - k2)


def uvw_decompose(i: int, j: int, k: int,
                  gamma1: FieldElement, gamma2: FieldElement):
    """Closed-form coefficients (k1, k2, k3) expressing the anchor
    vector through the extraction lines of indices (i, j, k)."""
    sp = gamma1.spec
    if gamma2.spec is not sp:
        raise ValueError("gamma components from different specs")
    if len({i, j, k}) != 3:
        raise ValueError("indices must be distinct")
    if fq_rank(sp, [1, gamma1.val, gamma2.val]) != 3:
        raise ValueError("secret pair must be independent of 1")
    g1, g2 = gamma1.val, gamma2.val

    def wedge(a, b):
        return sp.sub(sp.mul(sp.frob(g1, a), sp.frob(g2, b)),
                      sp.mul(sp.frob(g1, b), sp.frob(g2, a)))

    delta = sp.add(sp.add(wedge(-i, -j), wedge(-k, -i)), wedge(-j, -k))
    if delta == 0:
        raise ZeroDivisionError("degenerate index/gamma combination (Delta = 0)")
    dinv = sp.inv(delta)
    k1 = sp.mul(dinv, sp.add(sp.add(wedge(0, -j), wedge(-k, 0)), wedge(-j, -k)))
    k2 = sp.mul(dinv, sp.add(sp.add(wedge(0, -k), wedge(-i, 0)), wedge(-k, -i)))
    k3 = sp.mul(dinv, sp.add(sp.add(wedge(0, -i), wedge(-j, 0)), wedge(-i, -j)))
    return (FieldElement(sp, k1), FieldElement(sp, k2), FieldElement(sp, k3))


# ---------------------------------------------------------------------------
# Tuple completion and verification
# ---------------------------------------------------------------------------

def recover_tuple_3(state: ExtractionState, root) -> RecoveredKey | None:
    """Complete a candidate root pair to a full tuple, or None when the
    root is degenerate (zero coefficients or a singular system)."""
    sp = state.spec
    g1 = root[0].val if isinstance(root[0], FieldElement) else int(root[0])
    g2 = root[1].val if isinstance(root[1], FieldElement) else int(root[1])
    if fq_rank(sp, [1, g1, g2]) != 3:
        return None
    try:
        k1, k2, _ = uvw_decompose(1, 2, 3, FieldElement(sp, g1), FieldElement(sp, g2))
    except ZeroDivisionError:
        return None
    if k1.val == 0 or k2.val == 0:
        return None
    lam = _decompose_anchor(state, (1, 2, 3))
    u123 = vec_scale(sp, lam[0], state.ext_gens[1])
    v123 = vec_scale(sp, lam[1], state.ext_gens[2])

    w1 = vec_scale(sp, sp.inv(k1.val), u123)   # g0' + gamma1'^[-1] g1' + ...
    w2 = vec_scale(sp, sp.inv(k2.val), v123)   # g0' + gamma1'^[-2] g1' + ...

    rows = [[1, sp.frob(g1, -i), sp.frob(g2, -i)] for i in range(3)]
    M = Matrix(sp, rows, 3)
    Minv = M.inverse()
    if Minv is None:
        return None
    stacked = [state.anchor, w1, w2]
    gvecs = []
    for out_row in Minv.rows:
        acc = [0] * state.c_dual.ambient
        for c, src in zip(out_row, stacked):
            if c:
                acc = vec_add(sp, acc, vec_scale(sp, c, src))
        gvecs.append(tuple(acc))
    return RecoveredKey(3, (g1, g2), tuple(gvecs), False, sp)


def recover_tuple_2(state: ExtractionState, root) -> RecoveredKey | None:
    sp = state.spec
    g = root.val if isinstance(root, FieldElement) else int(root)
    if fq_rank(sp, [1, g]) != 2:
        return None
    gm1 = sp.frob(g, -1)
    gm2 = sp.frob(g, -2)
    d1 = sp.sub(gm2, gm1)
    d2 = sp.sub(gm2, g)
    d3 = sp.sub(g, gm1)
    if d1 == 0 or d2 == 0 or d3 == 0:
        return None
    lam = _decompose_anchor(state, (1, 2))
    u12 = vec_scale(sp, lam[0], state.ext_gens[1])
    # u12 = [(g^[-2] - g)/(g^[-2] - g^[-1])] (g' + g^[-1] h') for the new tuple
    w = vec_scale(sp, sp.div(d1, d2), u12)
    hp = vec_scale(sp, sp.inv(d3), vec_sub(sp, state.anchor, w))
    gp = vec_sub(sp, state.anchor, vec_scale(sp, g, hp))
    return RecoveredKey(2, (g,), (tuple(gp), tuple(hp)), False, sp)


def alternate_dual_span(key: RecoveredKey, nk: int, ambient: int) -> Subspace:
    """Span of g_0'^[i] + gamma_1' g_1'^[i] (+ gamma_2' g_2'^[i]), i < nk."""
    sp = key.spec
    coeffs = [1] + list(key.gammas)
    cur = [list(v) for v in key.g_vecs]
    rows = []
    for _ in range(nk):
        acc = [0] * ambient
        for c, gv in zip(coeffs, cur):
            acc = vec_add(sp, acc, vec_scale(sp, c, gv))
        rows.append(acc)
        cur = [vec_frob(sp, gv, 1) for gv in cur]
    return Subspace.from_rows(sp, rows, ambient)


def verify_alternate(key: RecoveredKey, c_dual: Subspace) -> bool:
    """Span equality between the rebuilt dual code and the true one."""
    return alternate_dual_span(key, c_dual.dim, c_dual.ambient) == c_dual


# ---------------------------------------------------------------------------
# Decryption with a recovered key
# ---------------------------------------------------------------------------

def decrypt_with_recovered(key: RecoveredKey, pk: PublicKey, ct: Ciphertext) -> list[int]:
    """Decrypt using only the public key and a verified alternate tuple.

    An F_q-basis a'' of the span of all recovered-vector coordinates
    acts as the evaluation vector (that span always has dimension n for
    a verified tuple); expressing every g_j' as a''*Q_j with Q_j over
    F_q rebuilds a scrambler T = sum gamma_j' Q_j, and T*c then lies
    at rank-t*lambda distance from the Gabidulin code dual to the span
    of a''^[i], which the standard decoder handles.
    """
    if not key.verified:
        raise ValueError("refusing to decrypt with an unverified key")
    sp = key.spec
    n, k = pk.n, pk.k
    c = list(ct.c)
    if pk.t == 0:
        msg = solve(pk.g_pub.transpose(), c)
        if msg is None:
            raise DecodingFailure("ciphertext is not a codeword and t = 0")
        return msg

    a2 = _coordinate_span_basis(sp, key.g_vecs, n)
    if a2 is None:
        raise DecodingFailure("recovered coordinates span less than n dimensions")

    qmats = [_fq_factor(sp, a2, gv) for gv in key.g_vecs]
    if any(qm is None for qm in qmats):
        raise DecodingFailure("recovered vectors do not share an F_q factor")

    coeffs = [1] + list(key.gammas)
    t_rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = 0
            for cf, qm in zip(coeffs, qmats):
                v = qm[i][j]
                if v:
                    acc = sp.add(acc, v if cf == 1 else sp.mul(cf, v))
            row.append(acc)
        t_rows.append(row)
    T = Matrix(sp, t_rows, n)

    cprime = T.mul_vec(c)
    b = dual_eval_vector(sp, a2, n - k)
    code = GabidulinCode(sp, tuple(b), k)
    got = decode(code, cprime, pk.t * pk.lam)
    if got is None:
        raise DecodingFailure("recovered-key decoding failed")
    _, err = got
    clean = vec_sub(sp, cprime, err)
    # clean = m * (G_p T^T); solve the k-unknown linear system
    M2 = pk.g_pub.mul(T.transpose())
    msg = solve(M2.transpose(), clean)
    if msg is None:
        raise DecodingFailure("message extraction system inconsistent")
    return msg


def _coordinate_span_basis(sp: FieldSpec, g_vecs, n: int):
    """Deterministic F_q-basis of the span of all coordinates of the
    recovered vectors, as a length-n evaluation vector; None if the span
    is smaller than n (impossible for a genuinely verified tuple)."""
    base = sp.base
    reduced: list[list[int]] = []   # rows in echelon form
    pivots: list[int] = []
    basis_vals: list[int] = []
    for gv in g_vecs:
        for x in gv:
            if len(basis_vals) == n:
                return basis_vals
            if x == 0:
                continue
            row = list(sp.digits(x))
            for prow, pcol in zip(reduced, pivots):
                cval = row[pcol]
                if cval:
                    row = [base.sub(a, base.mul(cval, b)) for a, b in zip(row, prow)]
            pcol = next((i for i, v in enumerate(row) if v), None)
            if pcol is None:
                continue
            li = base.inv(row[pcol])
            if li != 1:
                row = [base.mul(li, v) for v in row]
            reduced.append(row)
            pivots.append(pcol)
            basis_vals.append(x)
    return basis_vals if len(basis_vals) == n else None


def _fq_factor(sp: FieldSpec, a2: list[int], target) -> list[list[int]] | None:
    """Q over F_q with target = a2 * Q, solved column by column."""
    from .fields import make_field
    base = make_field(sp.q, 1)
    n = len(a2)
    m = sp.m
    rows = [[sp.digits(x)[d] for x in a2] for d in range(m)]
    A = Matrix(base, rows, n)
    cols = []
    for j in range(n):
        rhs = list(sp.digits(target[j]))
        x = solve(A, rhs)
        if x is None:
            return None
        cols.append(x)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# Full pipelines
# ---------------------------------------------------------------------------

def cc2_recover(g_pub: Matrix) -> tuple[RecoveredKey | None, AttackReport]:
    """End-to-end key recovery for a two-dimensional secret subspace."""
    report = AttackReport()
    sp = g_pub.spec
    n = g_pub.ncols
    report.params = {"q": sp.q, "m": sp.m, "n": n, "k": g_pub.nrows, "lambda": 2}
    t0 = time.perf_counter()
    C = right_kernel(g_pub)
    report.phase("dual", t0)
    t0 = time.perf_counter()
    try:
        state = extraction_chain_2(C)
    except ChainStepError as exc:
        report.notes.append(str(exc))
        report.phase("chain", t0)
        return None, report
    report.phase("chain", t0)

    t0 = time.perf_counter()
    try:
        lam12 = _decompose_anchor(state, (1, 2))
        lam13 = _decompose_anchor(state, (1, 3))
    except ChainStepError as exc:
        report.notes.append(str(exc))
        return None, report
    alpha = FieldElement(sp, sp.div(lam12[0], lam13[0]))
    try:
        pg = p_gamma_univariate(alpha, sp)
    except ValueError as exc:
        report.notes.append(f"key polynomial: {exc}")
        return None, report
    roots = roots_univariate(pg, sp)
    report.phase("key polynomial", t0)

    t0 = time.perf_counter()
    for root in roots:
        if root.val < sp.q:
            continue
        report.roots_tried += 1
        key = recover_tuple_2(state, root)
        if key is None:
            continue
        if verify_alternate(key, C):
            key.verified = True
            report.success = True
            report.phase("root search", t0)
            return key, report
    report.phase("root search", t0)
    report.notes.append("no verifying root: input is not a usable public key")
    return None, report


# worker globals for the forked root-search pool
_POOL_POLY: SparseBiPoly | None = None
_POOL_SPEC: FieldSpec | None = None
_POOL_FILTER: SparseBiPoly | None = None


def _pool_chunk(bounds):
    lo, hi = bounds
    from .polyring import bivariate_roots_at_x, evaluate_raw
    from .linalg import fq_rank as _fqr
    out = []
    sp = _POOL_SPEC
    for xv in range(lo, hi):
        if _fqr(sp, [1, xv]) < 2:
            continue
        ys = bivariate_roots_at_x(_POOL_POLY, sp, xv)
        for yv in ys:
            if _POOL_FILTER is None or evaluate_raw(_POOL_FILTER, xv, yv) == 0:
                out.append((xv, yv))
    return out


def attack3(g_pub: Matrix, workers: int = 1, x_values=None,
            progress=None) -> tuple[RecoveredKey | None, AttackReport]:
    """End-to-end key recovery for a three-dimensional secret subspace.

    Needs dual codimension n-k >= 5 (>= 6 for the preferred index pair
    (1,2,3)/(1,4,5); with n-k = 5 the fallback pair (1,2,3)/(1,2,4) is
    used and noted in the report).  Root candidates are processed in
    deterministic x-order regardless of the worker count.
    """
    report = AttackReport()
    sp = g_pub.spec
    n = g_pub.ncols
    report.params = {"q": sp.q, "m": sp.m, "n": n, "k": g_pub.nrows,
                     "lambda": 3, "workers": workers}
    t0 = time.perf_counter()
    C = right_kernel(g_pub)
    report.phase("dual", t0)
    r = C.dim - 1

    t0 = time.perf_counter()
    try:
        state = extraction_chain_3(C)
    except ChainStepError as exc:
        report.notes.append(str(exc))
        report.phase("chain", t0)
        return None, report
    report.phase("chain", t0)

    if r >= 5:
        idx1, idx2 = (1, 2, 3), (1, 4, 5)
        fidx1, fidx2 = (1, 2, 4), (1, 3, 5)
    else:
        idx1, idx2 = (1, 2, 3), (1, 2, 4)
        fidx1, fidx2 = (1, 2, 4), (1, 3, 4)
        report.notes.append("codimension 5: falling back to index pair (1,2,3)/(1,2,4)")

    t0 = time.perf_counter()
    try:
        alpha = compute_alpha(state, idx1, idx2)
    except ChainStepError as exc:
        report.notes.append(str(exc))
        return None, report
    e1, e2 = eqf_triples(idx1, idx2)
    F = build_F(e1, e2, alpha)
    if (e1, e2) == ((5, 3, 2), (4, 1, 0)):
        try:
            Pr = reduced_polynomial(F, sp)
        except ValueError as exc:
            report.notes.append(str(exc))
            return None, report
        q = sp.q
        if Pr.total_degree() != q ** 5 - q ** 2:
            report.notes.append(f"unexpected reduced degree {Pr.total_degree()}")
    else:
        Pr, mult = divide_out_f0(F, sp)
        report.notes.append(f"generic reduction removed f0^{mult}")

    # the reduced polynomial carries extraneous root components beyond the
    # secret orbit; a second, independent index relation prunes them cheaply
    # before the per-candidate verification
    filt = None
    try:
        alpha2 = compute_alpha(state, fidx1, fidx2)
        filt, _ = divide_out_f0(build_F(*eqf_triples(fidx1, fidx2), alpha2), sp)
        if filt.is_zero():
            filt = None
    except (ChainStepError, ValueError):
        report.notes.append("second index relation unavailable; verifying all roots")
    report.phase("polynomial", t0)

    t0 = time.perf_counter()
    for x, y in _root_stream(Pr, sp, x_values, workers, progress, filt):
        report.roots_tried += 1
        key = recover_tuple_3(state, (x, y))
        if key is None:
            continue
        if verify_alternate(key, C):
            key.verified = True
            report.success = True
            report.phase("root search", t0)
            return key, report
    report.phase("root search", t0)
    report.notes.append("root stream exhausted without a verifying key")
    return None, report


def _root_stream(Pr: SparseBiPoly, sp: FieldSpec, x_values, workers: int,
                 progress=None, filt: SparseBiPoly | None = None):
    from .polyring import evaluate_raw

    def _filtered(pairs):
        for x, y in pairs:
            if filt is None or evaluate_raw(filt, x.val, y.val) == 0:
                yield (x, y)

    if x_values is not None or workers <= 1:
        yield from _filtered(roots_bivariate_independent(Pr, sp, x_values))
        return
    import multiprocessing as mp
    try:
        ctx = mp.get_context("fork")
    except ValueError:
        yield from _filtered(roots_bivariate_independent(Pr, sp))
        return
    global _POOL_POLY, _POOL_SPEC, _POOL_FILTER
    _POOL_POLY, _POOL_SPEC, _POOL_FILTER = Pr, sp, filt
    sp._ensure_tables()  # inherited by forked workers
    chunk = 4096
    bounds = [(lo, min(lo + chunk, sp.order))
              for lo in range(sp.q, sp.order, chunk)]
    done = 0
    with ctx.Pool(workers) as pool:
        for pairs in pool.imap(_pool_chunk, bounds):
            done += 1
            if progress is not None:
                progress(min(sp.q + done * chunk, sp.order), sp.order)
            for xv, yv in pairs:
                yield (FieldElement(sp, xv), FieldElement(sp, yv))
