"""Sparse bivariate polynomial algebra with q-power exponents.

Polynomials are maps from exponent pairs (e_X, e_Y) to nonzero packed
coefficients of one field spec.  Exponents are arbitrary-precision ints
(they reach q^5 + q^4 and beyond), so nothing here ever overflows.  The
building blocks are the six-term antisymmetric forms

    f^(ijk)(X,Y) = (X^[i] Y^[j] - X^[j] Y^[i]) + (X^[k] Y^[i] - X^[i] Y^[k])
                 + (X^[j] Y^[k] - X^[k] Y^[j]),      X^[i] := X^(q^i),

the product-of-linear-factors block f0, the combined polynomial F(X,Y)
whose roots include the secret pair, and its reduction by a power of f0.
Exact division runs by leading-term elimination in graded-lex order;
root search fixes X and extracts the F_{q^m}-roots of the univariate
specialization through a gcd with the field polynomial Y^(q^m) - Y.
"""

from __future__ import annotations

from .fields import FieldElement, FieldSpec, SpecMismatchError
from .linalg import fq_rank


class SparseBiPoly:
    __slots__ = ("spec", "terms")

    def __init__(self, spec: FieldSpec, terms: dict[tuple[int, int], int]):
        self.spec = spec
        self.terms = {e: c for e, c in terms.items() if c}

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, spec: FieldSpec) -> "SparseBiPoly":
        return cls(spec, {})

    @classmethod
    def constant(cls, spec: FieldSpec, c: int) -> "SparseBiPoly":
        return cls(spec, {(0, 0): c} if c else {})

    @classmethod
    def monomial(cls, spec: FieldSpec, ex: int, ey: int, c: int = 1) -> "SparseBiPoly":
        return cls(spec, {(ex, ey): c} if c else {})

    # -- inspection ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((ex + ey for ex, ey in self.terms), default=0)

    def x_degree(self) -> int:
        return max((ex for ex, _ in self.terms), default=0)

    def y_degree(self) -> int:
        return max((ey for _, ey in self.terms), default=0)

    def __eq__(self, other):
        return (isinstance(other, SparseBiPoly) and other.spec is self.spec
                and other.terms == self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"SparseBiPoly({len(self.terms)} terms, deg {self.total_degree()})"

    def dump(self) -> list[tuple[int, int, str]]:
        """Debug serialization: sorted (e_X, e_Y, coeff-hex) triples."""
        return [(ex, ey, self.spec.to_hex(c))
                for (ex, ey), c in sorted(self.terms.items())]

    # -- ring operations ------------------------------------------------------

    def _check(self, other: "SparseBiPoly"):
        if other.spec is not self.spec:
            raise SpecMismatchError("polynomials over different specs")

    def add(self, other: "SparseBiPoly") -> "SparseBiPoly":
        self._check(other)
        sp = self.spec
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = sp.add(out.get(e, 0), c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return SparseBiPoly(sp, out)

    def neg(self) -> "SparseBiPoly":
        sp = self.spec
        return SparseBiPoly(sp, {e: sp.neg(c) for e, c in self.terms.items()})

    def sub(self, other: "SparseBiPoly") -> "SparseBiPoly":
        return self.add(other.neg())

    def scale(self, c: int) -> "SparseBiPoly":
        sp = self.spec
        if c == 0:
            return SparseBiPoly.zero(sp)
        return SparseBiPoly(sp, {e: sp.mul(c, v) for e, v in self.terms.items()})

    def mul(self, other: "SparseBiPoly") -> "SparseBiPoly":
        self._check(other)
        sp = self.spec
        out: dict[tuple[int, int], int] = {}
        for (ax, ay), ac in self.terms.items():
            for (bx, by), bc in other.terms.items():
                e = (ax + bx, ay + by)
                s = sp.add(out.get(e, 0), sp.mul(ac, bc))
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return SparseBiPoly(sp, out)

    def pow(self, e: int) -> "SparseBiPoly":
        if e < 0:
            raise ValueError("negative polynomial power")
        result = SparseBiPoly.constant(self.spec, 1)
        base = self
        while e:
            if e & 1:
                result = result.mul(base)
            base = base.mul(base)
            e >>= 1
        return result


def _glex_key(e: tuple[int, int]) -> tuple[int, int]:
    return (e[0] + e[1], e[0])


def exact_div(f: SparseBiPoly, g: SparseBiPoly):
    """Quotient h with f = g*h when g divides f exactly, else None.

    Leading-term elimination under graded-lex order; exactness makes the
    leading monomial of the remainder strictly decrease, so a failed
    monomial division proves non-divisibility.
    """
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    sp = f.spec
    lg = max(g.terms, key=_glex_key)
    lgc_inv = sp.inv(g.terms[lg])
    rem = dict(f.terms)
    quot: dict[tuple[int, int], int] = {}
    while rem:
        lr = max(rem, key=_glex_key)
        dx, dy = lr[0] - lg[0], lr[1] - lg[1]
        if dx < 0 or dy < 0:
            return None
        c = sp.mul(rem[lr], lgc_inv)
        quot[(dx, dy)] = c
        for (gx, gy), gc in g.terms.items():
            e = (gx + dx, gy + dy)
            s = sp.sub(rem.get(e, 0), sp.mul(c, gc))
            if s:
                rem[e] = s
            else:
                rem.pop(e, None)
    return SparseBiPoly(sp, quot)


# ---------------------------------------------------------------------------
# The antisymmetric building blocks
# ---------------------------------------------------------------------------

def f_ijk(i: int, j: int, k: int, spec: FieldSpec) -> SparseBiPoly:
    """The six-term form with exponent triple q^i > q^j > q^k."""
    if not i > j > k >= 0:
        raise ValueError("indices must satisfy i > j > k >= 0")
    q = spec.q
    one = 1
    neg1 = spec.neg(1)
    a, b, c = q ** i, q ** j, q ** k
    terms = {
        (a, b): one, (b, a): neg1,
        (c, a): one, (a, c): neg1,
        (b, c): one, (c, b): neg1,
    }
    return SparseBiPoly(spec, terms)


def f0(spec: FieldSpec) -> SparseBiPoly:
    """Product of all distinct F_q-linear factors, in expanded form:
    (Y^(q^2) - Y^q)(X^q - X) - (X^(q^2) - X^q)(Y^q - Y)."""
    q = spec.q
    X = lambda e: SparseBiPoly.monomial(spec, e, 0)
    Y = lambda e: SparseBiPoly.monomial(spec, 0, e)
    left = (Y(q * q).sub(Y(q))).mul(X(q).sub(X(1)))
    right = (X(q * q).sub(X(q))).mul(Y(q).sub(Y(1)))
    return left.sub(right)


def q_scale(p: SparseBiPoly, i: int) -> SparseBiPoly:
    """p^(q^i) for p with coefficients in F_q: multiply every exponent
    by q^i (coefficients are fixed by Frobenius)."""
    if i < 0:
        raise ValueError("q_scale exponent must be nonnegative")
    sp = p.spec
    for c in p.terms.values():
        if sp.frob(c, 1) != c:
            raise ValueError("q_scale requires coefficients in F_q")
    s = sp.q ** i
    return SparseBiPoly(sp, {(ex * s, ey * s): c for (ex, ey), c in p.terms.items()})


def build_F(idx1: tuple[int, int, int], idx2: tuple[int, int, int],
            alpha: FieldElement) -> SparseBiPoly:
    """F(X,Y) = f^(i1 j1 k1) f^(i2 j2 k2) - alpha f^(i1 j2 k2) f^(i2 j1 k1).

    For the default triples (5,3,2), (4,1,0) this is the key bivariate
    polynomial whose roots contain the secret subspace pair.
    """
    i1, j1, k1 = idx1
    i2, j2, k2 = idx2
    if idx1 == idx2:
        raise ValueError("index triples must be distinct")
    if not (i1 > j1 > k1 >= 0 and i2 > j2 > k2 >= 0):
        raise ValueError("index triples must be strictly decreasing")
    if i1 < i2:
        raise ValueError("first triple must carry the larger leading index")
    if alpha.val == 0:
        raise ValueError("alpha must be nonzero")
    sp = alpha.spec
    main = f_ijk(i1, j1, k1, sp).mul(f_ijk(i2, j2, k2, sp))
    cross = f_ijk(i1, j2, k2, sp).mul(f_ijk(i2, j1, k1, sp))
    return main.sub(cross.scale(alpha.val))


def reduced_polynomial(F: SparseBiPoly, spec: FieldSpec) -> SparseBiPoly:
    """Divide F exactly by f0^(q^2+1); failure signals a malformed F."""
    q = spec.q
    block = f0(spec).pow(q * q + 1)
    quot = exact_div(F, block)
    if quot is None:
        raise ValueError("F is not divisible by f0^(q^2+1); invalid alpha or indices")
    return quot


def divide_out_f0(F: SparseBiPoly, spec: FieldSpec) -> tuple[SparseBiPoly, int]:
    """Divide by f0 as many times as possible; returns (quotient, count)."""
    base = f0(spec)
    count = 0
    cur = F
    while True:
        nxt = exact_div(cur, base)
        if nxt is None:
            return cur, count
        cur = nxt
        count += 1


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def evaluate(p: SparseBiPoly, x, y) -> FieldElement:
    """Exact evaluation at field elements (or packed ints) x, y."""
    sp = p.spec
    xv = x.val if isinstance(x, FieldElement) else int(x)
    yv = y.val if isinstance(y, FieldElement) else int(y)
    return FieldElement(sp, evaluate_raw(p, xv, yv))


def evaluate_raw(p: SparseBiPoly, xv: int, yv: int) -> int:
    sp = p.spec
    xpow: dict[int, int] = {}
    ypow: dict[int, int] = {}
    acc = 0
    for (ex, ey), c in p.terms.items():
        px = xpow.get(ex)
        if px is None:
            px = xpow[ex] = sp.pow_int(xv, ex)
        py = ypow.get(ey)
        if py is None:
            py = ypow[ey] = sp.pow_int(yv, ey)
        acc = sp.add(acc, sp.mul(c, sp.mul(px, py)))
    return acc


def specialize_x(p: SparseBiPoly, xv: int) -> list[int]:
    """Dense coefficient list of p(x, Y) in ascending Y-degree."""
    sp = p.spec
    xpow: dict[int, int] = {}
    coeffs: dict[int, int] = {}
    for (ex, ey), c in p.terms.items():
        px = xpow.get(ex)
        if px is None:
            px = xpow[ex] = sp.pow_int(xv, ex)
        v = sp.mul(c, px)
        if v:
            s = sp.add(coeffs.get(ey, 0), v)
            if s:
                coeffs[ey] = s
            else:
                coeffs.pop(ey, None)
    if not coeffs:
        return [0]
    out = [0] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return out


# ---------------------------------------------------------------------------
# Univariate machinery over F_{q^m} (dense ascending coefficient lists)
# ---------------------------------------------------------------------------

def _utrim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _udeg(a: list[int]) -> int:
    return len(a) - 1


def _uis_zero(a: list[int]) -> bool:
    return len(a) == 1 and a[0] == 0


def _umul(sp: FieldSpec, a: list[int], b: list[int]) -> list[int]:
    if _uis_zero(a) or _uis_zero(b):
        return [0]
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = sp.add(out[i + j], sp.mul(x, y))
    return _utrim(out)


def _urem(sp: FieldSpec, a: list[int], f: list[int]) -> list[int]:
    a = list(a)
    df = _udeg(f)
    if df == 0:
        return [0]
    inv_lead = sp.inv(f[-1])
    for d in range(len(a) - 1, df - 1, -1):
        c = a[d]
        if c:
            c = sp.mul(c, inv_lead)
            a[d] = 0
            for j in range(df):
                if f[j]:
                    a[d - df + j] = sp.sub(a[d - df + j], sp.mul(c, f[j]))
    return _utrim(a[:df])


def _ugcd(sp: FieldSpec, a: list[int], b: list[int]) -> list[int]:
    a, b = _utrim(list(a)), _utrim(list(b))
    while not _uis_zero(b):
        a, b = b, _urem(sp, a, b)
    if not _uis_zero(a) and a[-1] != 1:
        li = sp.inv(a[-1])
        a = [sp.mul(li, c) for c in a]
    return a


def _u_qpow_mod(sp: FieldSpec, a: list[int], f: list[int]) -> list[int]:
    """a(Y)^q mod f; q is a power of the characteristic, so the map is
    coefficient-wise Frobenius plus exponent scaling."""
    q = sp.q
    out = [0] * ((len(a) - 1) * q + 1)
    for i, c in enumerate(a):
        if c:
            out[i * q] = sp.frob(c, 1)
    return _urem(sp, out, f)


def _u_powmod(sp: FieldSpec, a: list[int], e: int, f: list[int]) -> list[int]:
    result = [1]
    base = _urem(sp, list(a), f)
    while e:
        if e & 1:
            result = _urem(sp, _umul(sp, result, base), f)
        base = _urem(sp, _umul(sp, base, base), f)
        e >>= 1
    return result


def _u_distinct_root_part(sp: FieldSpec, f: list[int]) -> list[int]:
    """gcd(f, Y^(q^m) - Y): the product of (Y - r) over distinct roots r
    of f in F_{q^m}."""
    f = _utrim(list(f))
    if _udeg(f) == 0:
        return [1]
    r = [0, 1]
    r = _urem(sp, r, f)
    for _ in range(sp.m):
        r = _u_qpow_mod(sp, r, f)
    # r = Y^(q^m) mod f; subtract Y
    diff = list(r) + [0] * max(0, 2 - len(r))
    diff[1] = sp.sub(diff[1], 1)
    return _ugcd(sp, f, _utrim(diff))


def _u_split_roots(sp: FieldSpec, g: list[int]) -> list[int]:
    """All roots of a monic squarefree product of linear factors."""
    g = _utrim(list(g))
    d = _udeg(g)
    if d == 0:
        return []
    if d == 1:
        # g = c0 + c1 Y, monic c1 = 1
        return [sp.neg(g[0])]
    if sp.p == 2:
        # trace splitting: gcd(g, Tr(c*Y)) over basis multipliers c
        for j in range(sp.m):
            c = sp.pack([0] * j + [1])
            t = _urem(sp, [0, c], g)
            acc = list(t)
            for _ in range(sp.m - 1):
                t = _urem(sp, _umul(sp, t, t), g)
                acc = _utrim([sp.add(a, b) for a, b in
                              zip(acc + [0] * max(0, len(t) - len(acc)),
                                  t + [0] * max(0, len(acc) - len(t)))])
            h = _ugcd(sp, g, acc)
            dh = _udeg(h)
            if 0 < dh < d:
                other = _u_exact_quot(sp, g, h)
                return _u_split_roots(sp, h) + _u_split_roots(sp, other)
        raise ArithmeticError("trace splitting failed on a squarefree input")
    # odd characteristic: quadratic-residue splitting with shifts
    half = (sp.order - 1) // 2
    for cval in range(sp.order):
        h = _u_powmod(sp, [cval, 1], half, g)
        h = list(h) + [0] * max(0, 1 - len(h))
        h[0] = sp.sub(h[0], 1)
        h = _utrim(h)
        d0 = _ugcd(sp, g, h)
        dd = _udeg(d0)
        if 0 < dd < d:
            other = _u_exact_quot(sp, g, d0)
            return _u_split_roots(sp, d0) + _u_split_roots(sp, other)
    raise ArithmeticError("residue splitting failed on a squarefree input")


def _u_exact_quot(sp: FieldSpec, a: list[int], b: list[int]) -> list[int]:
    """a / b for exact monic division."""
    a = list(a)
    db = _udeg(b)
    inv_lead = sp.inv(b[-1])
    quot = [0] * (len(a) - db)
    for d in range(len(a) - 1, db - 1, -1):
        c = a[d]
        if c:
            c = sp.mul(c, inv_lead)
            quot[d - db] = c
            for j in range(db + 1):
                if b[j]:
                    a[d - db + j] = sp.sub(a[d - db + j], sp.mul(c, b[j]))
    return _utrim(quot)


def uroots(sp: FieldSpec, coeffs: list[int]) -> list[int]:
    """All F_{q^m} roots of the dense univariate polynomial, ascending."""
    f = _utrim(list(coeffs))
    if _uis_zero(f):
        raise ValueError("root set of the zero polynomial is the whole field")
    g = _u_distinct_root_part(sp, f)
    return sorted(_u_split_roots(sp, g))


def _poly_to_dense_univariate(p: SparseBiPoly) -> list[int]:
    if any(ey for _, ey in p.terms):
        if any(ex for ex, _ in p.terms):
            raise ValueError("polynomial is not univariate")
        items = [(ey, c) for (_, ey), c in p.terms.items()]
    else:
        items = [(ex, c) for (ex, _), c in p.terms.items()]
    if not items:
        return [0]
    out = [0] * (max(e for e, _ in items) + 1)
    for e, c in items:
        out[e] = c
    return out


def roots_univariate(p: SparseBiPoly, spec: FieldSpec) -> list[FieldElement]:
    """All roots in F_{q^m}: exhaustive scan for small fields, gcd with
    the field polynomial plus splitting above."""
    dense = _poly_to_dense_univariate(p)
    if spec.order <= 1 << 16:
        out = []
        for v in range(spec.order):
            acc = 0
            for c in reversed(dense):
                acc = sp_horner(spec, acc, v, c)
            if acc == 0:
                out.append(v)
        return [FieldElement(spec, v) for v in out]
    return [FieldElement(spec, v) for v in uroots(spec, dense)]


def sp_horner(sp: FieldSpec, acc: int, x: int, c: int) -> int:
    return sp.add(sp.mul(acc, x), c)


# ---------------------------------------------------------------------------
# The univariate key polynomial of the two-dimensional attack
# ---------------------------------------------------------------------------

def p_gamma_univariate(alpha: FieldElement, spec: FieldSpec) -> SparseBiPoly:
    """P(X) = [(X^[3]-X^[1])(X^[2]-X) - alpha^(q^3) (X^[3]-X)(X^[2]-X^[1])]
    divided exactly by (X^q - X)^(q+1); degree q^3 - q."""
    if alpha.val == 0:
        raise ValueError("alpha must be nonzero")
    sp = spec
    if alpha.spec is not sp:
        raise SpecMismatchError("alpha spec mismatch")
    q = sp.q
    X = lambda e: SparseBiPoly.monomial(sp, e, 0)
    fone = (X(q ** 3).sub(X(q))).mul(X(q ** 2).sub(X(1)))
    ftwo = (X(q ** 3).sub(X(1))).mul(X(q ** 2).sub(X(q)))
    qg = fone.sub(ftwo.scale(sp.frob(alpha.val, 3)))
    divisor = (X(q).sub(X(1))).pow(q + 1)
    red = exact_div(qg, divisor)
    if red is None:
        raise ValueError("alpha does not yield a reducible key polynomial")
    return red


def gamma_divisor_matches_gcd(spec: FieldSpec) -> bool:
    """Cross-check that the divisor used above equals gcd(f1, f2)."""
    q = spec.q
    X = lambda e: SparseBiPoly.monomial(spec, e, 0)
    fone = (X(q ** 3).sub(X(q))).mul(X(q ** 2).sub(X(1)))
    ftwo = (X(q ** 3).sub(X(1))).mul(X(q ** 2).sub(X(q)))
    g = _ugcd(spec, _poly_to_dense_univariate(fone), _poly_to_dense_univariate(ftwo))
    divisor = (X(q).sub(X(1))).pow(q + 1)
    return g == _poly_to_dense_univariate(divisor)


# ---------------------------------------------------------------------------
# Bivariate root stream
# ---------------------------------------------------------------------------

def roots_bivariate_independent(p: SparseBiPoly, spec: FieldSpec,
                                x_values=None):
    """Yield pairs (x, y) with p(x, y) = 0 and {1, x, y} F_q-independent.

    X ranges over F_{q^m} \\ F_q in ascending packed order (or over the
    supplied x_values); for each x the univariate specialization p(x, Y)
    is solved exactly.  Every yielded pair is re-verified by evaluation,
    and the enumeration order is deterministic.
    """
    if x_values is None:
        x_values = range(spec.q, spec.order)
    for xv in x_values:
        xv = xv.val if isinstance(xv, FieldElement) else int(xv)
        if fq_rank(spec, [1, xv]) < 2:
            continue
        for yv in bivariate_roots_at_x(p, spec, xv):
            yield (FieldElement(spec, xv), FieldElement(spec, yv))


def bivariate_roots_at_x(p: SparseBiPoly, spec: FieldSpec, xv: int) -> list[int]:
    """Sorted y with p(x, y) = 0 and {1, x, y} independent; [] if p(x, .) = 0."""
    dense = specialize_x(p, xv)
    if _uis_zero(_utrim(list(dense))):
        return []
    out = []
    for yv in uroots(spec, dense):
        if fq_rank(spec, [1, xv, yv]) != 3:
            continue
        if evaluate_raw(p, xv, yv) != 0:
            continue
        out.append(yv)
    return out
