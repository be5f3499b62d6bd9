"""Exact arithmetic in F_q and the extension field F_{q^m}.

Elements are represented as plain ints: the coefficient vector
(c_0, ..., c_{m-1}) over F_q in the polynomial basis 1, z, ..., z^{m-1}
is packed as sum(c_i * q**i).  Zero and one are therefore always the
ints 0 and 1, and elements of F_q embedded in the extension keep their
value below q.  A FieldSpec interprets the ints; the FieldElement
wrapper adds operator syntax on top, but every core routine works on
raw ints so that hot loops (root searches, row reduction) never touch
per-element objects.

The base order q may be a prime or a small prime power (4, 8, 9 are
enough for desk scale); base-field arithmetic for prime powers runs on
precomputed q-by-q tables.  For q = 2 the packed int is the usual bit
vector and multiplication uses carry-less shifts, upgraded lazily to
discrete-log tables once the field is small enough to tabulate.
"""

from __future__ import annotations

from itertools import combinations, product

_TABLE_LIMIT_CHAR2 = 1 << 22
_TABLE_LIMIT_GENERIC = 1 << 16

_SMALL_PRIME_POWERS = {4: (2, 2), 8: (2, 3), 9: (3, 2)}


class SpecMismatchError(ValueError):
    """Arithmetic attempted between elements of different field specs."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Base field F_q (prime, or tabulated small prime power)
# ---------------------------------------------------------------------------

class _BaseField:
    """Arithmetic for the coefficient field F_q on ints 0..q-1."""

    def __init__(self, q: int):
        self.q = q
        if _is_prime(q):
            self.p, self.e = q, 1
            self._mul_table = None
        elif q in _SMALL_PRIME_POWERS:
            self.p, self.e = _SMALL_PRIME_POWERS[q]
            self._build_tables()
        else:
            raise ValueError(f"unsupported base field order q={q}")

    def _build_tables(self):
        # F_{p^e} on base-p digit vectors, reduced by the first irreducible
        # found in (weight, value) order; q <= 9 so brute force is instant.
        p, e = self.p, self.e
        modulus = None
        for packed in range(p ** e, 2 * p ** e):
            digs = _int_digits(packed, p, e + 1)
            if digs[0] == 0:
                continue
            if _poly_has_no_root_modp(digs, p) and (e <= 3 or _polymod_irreducible(digs, p)):
                modulus = digs
                break
        assert modulus is not None
        self._modulus = modulus

        def mul(a, b):
            da = _int_digits(a, p, e)
            db = _int_digits(b, p, e)
            prod = [0] * (2 * e - 1)
            for i, x in enumerate(da):
                if x:
                    for j, y in enumerate(db):
                        prod[i + j] = (prod[i + j] + x * y) % p
            for d in range(len(prod) - 1, e - 1, -1):
                c = prod[d]
                if c:
                    prod[d] = 0
                    for j in range(e):
                        prod[d - e + j] = (prod[d - e + j] - c * modulus[j]) % p
            return _pack_digits(prod[:e], p)

        q = self.q
        self._mul_table = [[mul(a, b) for b in range(q)] for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            row = self._mul_table[a]
            inv[a] = row.index(1)
        self._inv_table = inv

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.q
        p = self.p
        da = _int_digits(a, p, self.e)
        db = _int_digits(b, p, self.e)
        return _pack_digits([(x + y) % p for x, y in zip(da, db)], p)

    def sub(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a - b) % self.q
        p = self.p
        da = _int_digits(a, p, self.e)
        db = _int_digits(b, p, self.e)
        return _pack_digits([(x - y) % p for x, y in zip(da, db)], p)

    def neg(self, a: int) -> int:
        return self.sub(0, a)

    def mul(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[a][b]
        return (a * b) % self.q

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        if self._mul_table is not None:
            return self._inv_table[a]
        return pow(a, self.q - 2, self.q)


def _int_digits(v: int, base: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        v, r = divmod(v, base)
        out.append(r)
    return out


def _pack_digits(digs, base: int) -> int:
    v = 0
    for d in reversed(digs):
        v = v * base + d
    return v


def _poly_has_no_root_modp(digs, p):
    for x in range(p):
        acc = 0
        for c in reversed(digs):
            acc = (acc * x + c) % p
        if acc == 0:
            return False
    return True


def _polymod_irreducible(digs, p):
    # Rabin test over F_p for the tiny degrees used by base-field setup.
    class _P:
        pass

    deg = len(digs) - 1
    f = list(digs)

    def pmulmod(a, b):
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for d in range(len(prod) - 1, deg - 1, -1):
            c = prod[d]
            if c:
                prod[d] = 0
                for j in range(deg):
                    prod[d - deg + j] = (prod[d - deg + j] - c * f[j]) % p
        prod = prod[:deg]
        while len(prod) > 1 and prod[-1] == 0:
            prod.pop()
        return prod

    def ppowq(a, e):
        result = [1]
        base_ = a
        while e:
            if e & 1:
                result = pmulmod(result, base_)
            base_ = pmulmod(base_, base_)
            e >>= 1
        return result

    x = [0, 1]
    r = x
    for _ in range(deg):
        r = ppowq(r, p)
    if r != x:
        return False
    return True


# ---------------------------------------------------------------------------
# Polynomial helpers over F_q (digit-list coefficients, used for moduli)
# ---------------------------------------------------------------------------

def _fq_poly_trim(a):
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a if a else [0]


def _fq_poly_sub(base: _BaseField, a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _fq_poly_trim([base.sub(x, y) for x, y in zip(a, b)])


def _fq_poly_mul(base: _BaseField, a, b):
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = base.add(prod[i + j], base.mul(x, y))
    return _fq_poly_trim(prod)


def _fq_poly_rem(base: _BaseField, a, f):
    # f monic
    a = list(a)
    df = len(f) - 1
    for d in range(len(a) - 1, df - 1, -1):
        c = a[d]
        if c:
            a[d] = 0
            for j in range(df):
                a[d - df + j] = base.sub(a[d - df + j], base.mul(c, f[j]))
    return _fq_poly_trim(a[:df])


def _fq_poly_gcd(base: _BaseField, a, b):
    a, b = list(a), list(b)
    while not (len(b) == 1 and b[0] == 0):
        # make b monic before reducing
        lead = b[-1]
        if lead != 1:
            li = base.inv(lead)
            b = [base.mul(c, li) for c in b]
        a, b = b, _fq_poly_rem(base, a, b)
    return a


def _fq_poly_powmod_q(base: _BaseField, a, q, f):
    """a(X)^q mod f, by square and multiply on the exponent q."""
    result = [1]
    cur = list(a)
    e = q
    while e:
        if e & 1:
            result = _fq_poly_rem(base, _fq_poly_mul(base, result, cur), f)
        cur = _fq_poly_rem(base, _fq_poly_mul(base, cur, cur), f)
        e >>= 1
    return result


def _modulus_is_irreducible(base: _BaseField, modulus) -> bool:
    """Rabin irreducibility test for a monic degree-m polynomial over F_q."""
    m = len(modulus) - 1
    if m == 1:
        return True
    if modulus[0] == 0:
        return False
    x = [0, 1]
    r = x
    for _ in range(m):
        r = _fq_poly_powmod_q(base, r, base.q, modulus)
    if _fq_poly_sub(base, r, x) != [0]:
        return False
    for ell in _prime_factors(m):
        r = x
        for _ in range(m // ell):
            r = _fq_poly_powmod_q(base, r, base.q, modulus)
        diff = _fq_poly_sub(base, r, x)
        if diff == [0]:
            return False
        g = _fq_poly_gcd(base, diff, modulus)
        if len(g) != 1:
            return False
    return True


def _generate_modulus(base: _BaseField, m: int):
    """Deterministic irreducible of degree m: lowest weight first, then
    lowest packed coefficient value."""
    q = base.q
    if m == 1:
        return (0, 1)
    for weight in range(2, m + 2):
        # positions of the nonzero non-leading coefficients; constant term
        # must be nonzero or z divides the candidate
        for positions in combinations(range(m), weight - 1):
            if 0 not in positions:
                continue
            for values in product(range(1, q), repeat=weight - 1):
                digs = [0] * (m + 1)
                digs[m] = 1
                for pos, val in zip(positions, values):
                    digs[pos] = val
                if _modulus_is_irreducible(base, digs):
                    return tuple(digs)
    raise ValueError(f"no irreducible of degree {m} over F_{q}")  # unreachable


# ---------------------------------------------------------------------------
# FieldSpec
# ---------------------------------------------------------------------------

class FieldSpec:
    """Immutable description of F_{q^m}: base order q, degree m, modulus.

    All methods are pure; the lazily built lookup tables are written once
    and only read afterwards, so a spec can be shared freely across
    workers.
    """

    def __init__(self, q: int, m: int, modulus: tuple[int, ...]):
        self.q = q
        self.m = m
        self.base = _BaseField(q)
        self.p = self.base.p
        self.order = q ** m
        self.modulus = tuple(modulus)
        if len(self.modulus) != m + 1 or self.modulus[m] != 1:
            raise ValueError("modulus must be monic of degree m")
        if not _modulus_is_irreducible(self.base, list(self.modulus)):
            raise ValueError(f"modulus {list(modulus)} is reducible over F_{q}")
        self._exp = None          # discrete log tables, built lazily
        self._log = None
        self._frob1 = None        # images of the basis under x -> x^q
        self._frob_exp = None     # q^i mod (order-1) cache for table path
        if q == 2:
            self._modbits = _pack_digits(self.modulus, 2)

    def __repr__(self):
        return f"FieldSpec(q={self.q}, m={self.m})"

    # -- packing ----------------------------------------------------------

    def digits(self, v: int) -> tuple[int, ...]:
        return tuple(_int_digits(v, self.q, self.m))

    def pack(self, digs) -> int:
        return _pack_digits(list(digs) + [0] * (self.m - len(digs)), self.q)

    def element_from_base(self, c: int) -> int:
        """Embed a base-field coefficient (0 <= c < q) as a constant."""
        if not 0 <= c < self.q:
            raise ValueError("base coefficient out of range")
        return c

    # -- additive layer ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.q == 2:
            return a ^ b
        base = self.base
        da = _int_digits(a, self.q, self.m)
        db = _int_digits(b, self.q, self.m)
        return _pack_digits([base.add(x, y) for x, y in zip(da, db)], self.q)

    def sub(self, a: int, b: int) -> int:
        if self.q == 2:
            return a ^ b
        base = self.base
        da = _int_digits(a, self.q, self.m)
        db = _int_digits(b, self.q, self.m)
        return _pack_digits([base.sub(x, y) for x, y in zip(da, db)], self.q)

    def neg(self, a: int) -> int:
        if self.q == 2:
            return a
        return self.sub(0, a)

    # -- multiplicative layer ----------------------------------------------

    def _ensure_tables(self) -> bool:
        if self._exp is not None:
            return True
        limit = _TABLE_LIMIT_CHAR2 if self.q == 2 else _TABLE_LIMIT_GENERIC
        if self.order > limit or self.m == 1:
            return False
        n = self.order - 1
        factors = _prime_factors(n)
        gen = None
        for cand in range(2, self.order):
            if all(self._pow_raw(cand, n // ell) != 1 for ell in factors):
                gen = cand
                break
        assert gen is not None
        exp = [0] * (2 * n)
        log = [0] * self.order
        acc = 1
        if self.q == 2 and gen == 2:
            # multiplying by z is a shift plus conditional reduction
            mb = self._modbits & ~(1 << self.m)
            top = 1 << self.m
            for i in range(n):
                exp[i] = acc
                log[acc] = i
                acc <<= 1
                if acc & top:
                    acc = (acc ^ mb) & (top - 1)
        else:
            for i in range(n):
                exp[i] = acc
                log[acc] = i
                acc = self._mul_raw(acc, gen)
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        self._frob_exp = [pow(self.q, i, n) for i in range(self.m)]
        self._exp = exp
        self._log = log
        return True

    def _mul_raw(self, a: int, b: int) -> int:
        """Table-free product, used for bootstrapping and big fields."""
        if a == 0 or b == 0:
            return 0
        if self.q == 2:
            acc = 0
            x = a
            while b:
                if b & 1:
                    acc ^= x
                x <<= 1
                b >>= 1
            mb = self._modbits
            top = mb.bit_length()
            for shift in range(acc.bit_length() - top, -1, -1):
                if acc >> (shift + top - 1) & 1:
                    acc ^= mb << shift
            return acc
        base = self.base
        q, m = self.q, self.m
        da = _int_digits(a, q, m)
        db = _int_digits(b, q, m)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    if y:
                        prod[i + j] = base.add(prod[i + j], base.mul(x, y))
        mod = self.modulus
        for d in range(len(prod) - 1, m - 1, -1):
            c = prod[d]
            if c:
                prod[d] = 0
                for j in range(m):
                    prod[d - m + j] = base.sub(prod[d - m + j], base.mul(c, mod[j]))
        return _pack_digits(prod[:m], q)

    def _pow_raw(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            e >>= 1
        return r

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None or self._ensure_tables():
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self._exp is not None or self._ensure_tables():
            return self._exp[self.order - 1 - self._log[a]]
        return self._inv_euclid(a)

    def _inv_euclid(self, a: int) -> int:
        base = self.base
        q = self.q
        r0 = list(self.modulus)
        r1 = _fq_poly_trim(list(_int_digits(a, q, self.m)))
        s0, s1 = [0], [1]
        while not (len(r1) == 1 and r1[0] == 0):
            lead = r1[-1]
            if lead != 1:
                li = base.inv(lead)
                r1 = [base.mul(c, li) for c in r1]
                s1 = [base.mul(c, li) for c in s1]
            # r0 = qpoly*r1 + rem; update s accordingly
            quot = [0] * max(1, len(r0) - len(r1) + 1)
            rem = list(r0)
            for d in range(len(rem) - 1, len(r1) - 2, -1):
                c = rem[d]
                if c:
                    quot[d - len(r1) + 1] = c
                    for j, y in enumerate(r1):
                        rem[d - len(r1) + 1 + j] = base.sub(rem[d - len(r1) + 1 + j], base.mul(c, y))
            rem = _fq_poly_trim(rem)
            qs1 = _fq_poly_mul(base, quot, s1)
            news = [base.sub(x, y) for x, y in
                    zip(s0 + [0] * max(0, len(qs1) - len(s0)),
                        qs1 + [0] * max(0, len(s0) - len(qs1)))]
            r0, r1 = r1, rem
            s0, s1 = s1, _fq_poly_trim(news)
        # r0 is now the gcd, a unit since the modulus is irreducible
        c = base.inv(r0[0])
        s0 = [base.mul(x, c) for x in s0]
        return self.pack(s0)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow_int(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow_int(self.inv(a), -e)
        if a == 0:
            return 0 if e else 1
        if self._exp is not None or self._ensure_tables():
            n = self.order - 1
            return self._exp[(self._log[a] * e) % n]
        return self._pow_raw(a, e)

    # -- Frobenius ----------------------------------------------------------

    def frob(self, a: int, i: int) -> int:
        """a^(q^i) with i taken modulo m (negative i wraps around)."""
        i %= self.m
        if i == 0 or a == 0 or a == 1:
            return a
        if self._exp is not None or self._ensure_tables():
            n = self.order - 1
            return self._exp[(self._log[a] * self._frob_exp[i]) % n]
        if self._frob1 is None:
            zq = self._pow_raw(self.q if self.m > 1 else 1, self.q)
            images = [1]
            for _ in range(self.m - 1):
                images.append(self._mul_raw(images[-1], zq))
            self._frob1 = images
        out = a
        for _ in range(i):
            digs = _int_digits(out, self.q, self.m)
            acc = 0
            for c, img in zip(digs, self._frob1):
                if c:
                    acc = self.add(acc, self._mul_raw(c, img))
            out = acc
        return out

    # -- encoding ------------------------------------------------------------

    def to_hex(self, a: int) -> str:
        return f"0x{a:x}"

    def from_hex(self, s: str) -> int:
        v = int(s, 16)
        if not 0 <= v < self.order:
            raise ValueError(f"encoded element {s} out of range for {self!r}")
        return v

    def el(self, v) -> "FieldElement":
        if isinstance(v, FieldElement):
            if v.spec is not self:
                raise SpecMismatchError("element belongs to a different field")
            return v
        return FieldElement(self, int(v))


class FieldElement:
    """Operator-friendly wrapper around a packed int element."""

    __slots__ = ("spec", "val")

    def __init__(self, spec: FieldSpec, val: int):
        if not 0 <= val < spec.order:
            raise ValueError("packed value out of range")
        self.spec = spec
        self.val = val

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec is not self.spec:
                raise SpecMismatchError("operands from different field specs")
            return other.val
        if isinstance(other, int):
            if 0 <= other < self.spec.q:
                return other
            raise ValueError("int operand must be a base-field coefficient")
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        return FieldElement(self.spec, self.spec.add(self.val, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return FieldElement(self.spec, self.spec.sub(self.val, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        return FieldElement(self.spec, self.spec.sub(v, self.val))

    def __mul__(self, other):
        v = self._coerce(other)
        return FieldElement(self.spec, self.spec.mul(self.val, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        return FieldElement(self.spec, self.spec.div(self.val, v))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.val))

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.pow_int(self.val, e))

    def frob(self, i: int) -> "FieldElement":
        return FieldElement(self.spec, self.spec.frob(self.val, i))

    def inv(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.val))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec is other.spec and self.val == other.val
        if isinstance(other, int):
            return self.val == other
        return NotImplemented

    def __hash__(self):
        return hash((id(self.spec), self.val))

    def __bool__(self):
        return self.val != 0

    def __repr__(self):
        return f"<{self.spec.q}^{self.spec.m}:{self.spec.to_hex(self.val)}>"

    def to_hex(self) -> str:
        return self.spec.to_hex(self.val)


# ---------------------------------------------------------------------------
# Public constructors and spec-mandated operation surface
# ---------------------------------------------------------------------------

_spec_cache: dict[tuple, FieldSpec] = {}


def make_field(q: int, m: int, modulus=None) -> FieldSpec:
    """Build (or fetch from cache) the field F_{q^m}.

    If no modulus is given, a deterministic irreducible of degree m is
    generated: lowest weight first, ties broken by packed coefficient
    value, so identical inputs always yield the identical field.
    """
    if m < 1:
        raise ValueError("extension degree m must be positive")
    if q < 2:
        raise ValueError("base order q must be at least 2")
    base = _BaseField(q)  # validates q
    if modulus is None:
        modulus = _generate_modulus(base, m)
    else:
        modulus = tuple(int(c) for c in modulus)
        if any(not 0 <= c < q for c in modulus):
            raise ValueError("modulus coefficients must lie in 0..q-1")
    key = (q, m, modulus)
    spec = _spec_cache.get(key)
    if spec is None:
        spec = FieldSpec(q, m, modulus)
        _spec_cache[key] = spec
    return spec


def field_arith(op: str, x: FieldElement, y=None) -> FieldElement:
    """Dispatch one arithmetic op by name; mirrors the library contract."""
    spec = x.spec
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inv()
    if op == "pow":
        if not isinstance(y, int):
            raise TypeError("pow exponent must be an int")
        return FieldElement(spec, spec.pow_int(x.val, y))
    raise ValueError(f"unknown field op {op!r}")


def frobenius(x: FieldElement, i: int) -> FieldElement:
    """x^(q^i); i may be negative, it is reduced modulo m."""
    return x.frob(i)
