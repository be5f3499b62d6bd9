import pytest

from rankbench.fields import make_field
from rankbench.linalg import fq_rank
from rankbench.polyring import (SparseBiPoly, _ugcd, build_F, divide_out_f0,
                                evaluate, evaluate_raw, exact_div, f0, f_ijk,
                                gamma_divisor_matches_gcd, p_gamma_univariate,
                                q_scale, reduced_polynomial,
                                roots_bivariate_independent, roots_univariate,
                                specialize_x, uroots)


def _wedge_terms(sp, pairs):
    """Build sum of (X^[a] Y^[b] - X^[b] Y^[a]) blocks from (a, b) pairs."""
    q = sp.q
    acc = SparseBiPoly.zero(sp)
    for a, b in pairs:
        blk = SparseBiPoly(sp, {(q ** a, q ** b): 1, (q ** b, q ** a): sp.neg(1)})
        acc = acc.add(blk)
    return acc


@pytest.mark.parametrize("q", [2, 3])
def test_f_532_matches_printed_first_bracket(q):
    # (X^[5]Y^[3] - X^[3]Y^[5]) + (X^[3]Y^[2] - X^[2]Y^[3]) + (X^[2]Y^[5] - X^[5]Y^[2])
    sp = make_field(q, 1)
    assert f_ijk(5, 3, 2, sp) == _wedge_terms(sp, [(5, 3), (3, 2), (2, 5)])


def test_f_ijk_index_validation():
    sp = make_field(2, 1)
    with pytest.raises(ValueError):
        f_ijk(3, 3, 1, sp)
    with pytest.raises(ValueError):
        f_ijk(1, 2, 0, sp)


def test_f_ijk_antisymmetry_and_base_collapse(rng):
    sp = make_field(2, 8)
    f = f_ijk(5, 3, 2, sp)
    for _ in range(20):
        x = rng.below(sp.order)
        assert evaluate_raw(f, x, x) == 0
        y = rng.below(sp.order)
        assert evaluate_raw(f, rng.below(2), y) == 0   # x in F_q collapses


@pytest.mark.parametrize("q", [2, 3])
def test_f0_closed_form_equals_linear_product(q):
    sp = make_field(q, 1)
    X = SparseBiPoly.monomial(sp, 1, 0)
    prod = SparseBiPoly.constant(sp, 1)
    for a in range(q):
        prod = prod.mul(X.add(SparseBiPoly.constant(sp, a)))
    for b in range(q):
        for c in range(q):
            prod = prod.mul(SparseBiPoly(sp, {(1, 0): b, (0, 1): 1, (0, 0): c}))
    assert prod == f0(sp)
    assert f0(sp).x_degree() == q * q and f0(sp).y_degree() == q * q


def test_f0_vanishes_exactly_on_dependent_pairs_exhaustive():
    sp = make_field(2, 8)
    p = f0(sp)
    for x in range(256):
        for y in range(256):
            dependent = fq_rank(sp, [1, x, y]) < 3
            assert (evaluate_raw(p, x, y) == 0) == dependent


@pytest.mark.parametrize("q", [2, 3])
def test_lemma_f4_and_divisibilities(q):
    sp = make_field(q, 1)
    # f^(432) = -f0^(q^2), term for term
    assert f_ijk(4, 3, 2, sp) == q_scale(f0(sp), 2).neg()
    # f0 divides f^(410) and f^(510)
    assert exact_div(f_ijk(4, 1, 0, sp), f0(sp)) is not None
    assert exact_div(f_ijk(5, 1, 0, sp), f0(sp)) is not None
    # f0^(q^2) divides f^(532)
    assert exact_div(f_ijk(5, 3, 2, sp), q_scale(f0(sp), 2)) is not None
    # both products divisible by f0^(q^2+1)
    block = f0(sp).pow(q * q + 1)
    assert exact_div(f_ijk(5, 3, 2, sp).mul(f_ijk(4, 1, 0, sp)), block) is not None
    assert exact_div(f_ijk(5, 1, 0, sp).mul(f_ijk(4, 3, 2, sp)), block) is not None


def test_q_scale_trivials_and_guard(rng):
    sp = make_field(2, 6)
    p = f0(sp)
    assert q_scale(p, 0) == p
    xy = SparseBiPoly(sp, {(1, 0): 1, (0, 1): 1})
    assert q_scale(xy, 1) == SparseBiPoly(sp, {(2, 0): 1, (0, 2): 1})
    for _ in range(20):
        x, y = rng.below(sp.order), rng.below(sp.order)
        assert evaluate_raw(q_scale(p, 1), x, y) == sp.frob(evaluate_raw(p, x, y), 1)
    bad = SparseBiPoly(sp, {(1, 0): 5})  # coefficient outside F_2
    with pytest.raises(ValueError):
        q_scale(bad, 1)


def test_ring_ops_and_exact_div(rng):
    sp = make_field(2, 6)

    def rand_poly(nterms):
        t = {}
        for _ in range(nterms):
            t[(rng.below(30), rng.below(30))] = 1 + rng.below(sp.order - 1)
        return SparseBiPoly(sp, t)

    one = SparseBiPoly.constant(sp, 1)
    zero = SparseBiPoly.zero(sp)
    for _ in range(20):
        f, g = rand_poly(5), rand_poly(4)
        assert f.mul(one) == f
        assert f.mul(zero).is_zero()
        if not g.is_zero():
            assert exact_div(f.mul(g), g) == f
    assert exact_div(SparseBiPoly(sp, {(1, 1): 1, (0, 0): 1}),
                     SparseBiPoly.monomial(sp, 1, 0)) is None
    # pow consistency: f0^(q^2+1) = q_scale(f0,2) * f0 for q=2
    f = f0(sp)
    assert f.pow(2 ** 2 + 1) == q_scale(f, 2).mul(f)


@pytest.mark.parametrize("q", [2, 3])
def test_build_F_reproduces_combined_equation(q):
    ext = make_field(q, 3)
    alpha = ext.el(ext.q)
    F = build_F((5, 3, 2), (4, 1, 0), alpha)
    f1 = _wedge_terms(ext, [(5, 3), (3, 2), (2, 5)])
    f2 = _wedge_terms(ext, [(4, 1), (1, 0), (0, 4)])
    # the third bracket's printed degenerate group is the (5,1,0) form
    f3 = _wedge_terms(ext, [(5, 1), (1, 0), (0, 5)])
    f4 = _wedge_terms(ext, [(4, 3), (3, 2), (2, 4)])
    assert F == f1.mul(f2).sub(f3.mul(f4).scale(alpha.val))
    assert F.total_degree() == q ** 5 + q ** 4 + q ** 3 + q


def test_build_F_validation():
    ext = make_field(2, 3)
    alpha = ext.el(2)
    with pytest.raises(ValueError):
        build_F((5, 3, 2), (5, 3, 2), alpha)
    with pytest.raises(ValueError):
        build_F((3, 2, 1), (5, 3, 2), alpha)   # first triple must lead
    with pytest.raises(ValueError):
        build_F((5, 3, 2), (4, 1, 0), ext.el(0))


@pytest.mark.parametrize("q", [2, 3])
def test_reduced_polynomial_degree(q):
    ext = make_field(q, 3)
    for aval in (ext.q, ext.q + 1):
        Pr = reduced_polynomial(build_F((5, 3, 2), (4, 1, 0), ext.el(aval)), ext)
        assert Pr.total_degree() == q ** 5 - q ** 2


def test_divide_out_f0_counts_multiplicity():
    sp = make_field(2, 3)
    p = f0(sp).pow(3).mul(SparseBiPoly(sp, {(1, 1): 1, (0, 0): 1}))
    quot, mult = divide_out_f0(p, sp)
    assert mult == 3
    assert quot == SparseBiPoly(sp, {(1, 1): 1, (0, 0): 1})


@pytest.mark.parametrize("q", [2, 3])
def test_p_gamma_degree_and_gcd(q):
    ext = make_field(q, 3)
    pg = p_gamma_univariate(ext.el(ext.q), ext)
    assert pg.total_degree() == q ** 3 - q
    assert gamma_divisor_matches_gcd(make_field(q, 1))


def test_roots_univariate_small_and_large():
    for sp in (make_field(2, 12), make_field(2, 19)):
        q = sp.q
        pq = SparseBiPoly(sp, {(q, 0): 1, (1, 0): sp.neg(1)})   # X^q - X
        assert sorted(r.val for r in roots_univariate(pq, sp)) == list(range(q))
        c = 777 % sp.order
        pc = SparseBiPoly(sp, {(1, 0): 1, (0, 0): sp.neg(c)})
        assert [r.val for r in roots_univariate(pc, sp)] == [c]


def test_uroots_planted_large_field(rng):
    sp = make_field(2, 19)
    roots = sorted({rng.below(sp.order) for _ in range(4)})
    dense = [1]
    for r in roots:
        nxt = [0] * (len(dense) + 1)
        for i, c in enumerate(dense):
            nxt[i + 1] = sp.add(nxt[i + 1], c)
            nxt[i] = sp.sub(nxt[i], sp.mul(c, r))
        dense = nxt
    assert uroots(sp, dense) == roots


def test_odd_characteristic_roots():
    sp = make_field(3, 11)   # 177147 > 2^16: exercises the splitting path
    vals = [5, 77, 30000]
    dense = [1]
    for r in vals:
        nxt = [0] * (len(dense) + 1)
        for i, c in enumerate(dense):
            nxt[i + 1] = sp.add(nxt[i + 1], c)
            nxt[i] = sp.sub(nxt[i], sp.mul(c, r))
        dense = nxt
    assert uroots(sp, dense) == sorted(vals)


def test_bivariate_stream_contract():
    sp = make_field(2, 8)
    # roots satisfy y = x + c for a fixed independent offset c
    c = 37
    p = SparseBiPoly(sp, {(0, 1): 1, (1, 0): 1, (0, 0): c})
    got = []
    stream = roots_bivariate_independent(p, sp)
    for x, y in stream:
        got.append((x.val, y.val))
        if len(got) == 10:
            break
    assert got == sorted(got)
    for xv, yv in got:
        assert evaluate_raw(p, xv, yv) == 0
        assert fq_rank(sp, [1, xv, yv]) == 3
    # explicit x_values drive the stream deterministically
    only = list(roots_bivariate_independent(p, sp, x_values=[4]))
    assert [(x.val, y.val) for x, y in only] == [(4, 4 ^ 37)]


def test_specialize_x_consistency(rng):
    sp = make_field(2, 8)
    p = f_ijk(4, 2, 1, sp)
    for _ in range(10):
        xv = rng.below(sp.order)
        dense = specialize_x(p, xv)
        yv = rng.below(sp.order)
        acc = 0
        for coeff in reversed(dense):
            acc = sp.add(sp.mul(acc, yv), coeff)
        assert acc == evaluate_raw(p, xv, yv)


def test_evaluate_homomorphism(rng):
    sp = make_field(2, 8)
    a = f_ijk(3, 2, 1, sp)
    b = f0(sp)
    for _ in range(10):
        x, y = rng.below(sp.order), rng.below(sp.order)
        ea, eb = evaluate_raw(a, x, y), evaluate_raw(b, x, y)
        assert evaluate_raw(a.add(b), x, y) == sp.add(ea, eb)
        assert evaluate_raw(a.mul(b), x, y) == sp.mul(ea, eb)
    cpoly = SparseBiPoly.constant(sp, 9)
    assert evaluate(cpoly, sp.el(5), sp.el(6)).val == 9


def test_dump_serialization():
    sp = make_field(2, 3)
    p = SparseBiPoly(sp, {(2, 1): 3, (0, 0): 1})
    assert p.dump() == [(0, 0, "0x1"), (2, 1, "0x3")]


def _conjecture_quotients(ext):
    q = ext.q
    block = f0(ext).pow(q * q + 1)
    q1 = exact_div(f_ijk(5, 3, 2, ext).mul(f_ijk(4, 1, 0, ext)), block)
    q2 = exact_div(f_ijk(5, 1, 0, ext).mul(f_ijk(4, 3, 2, ext)), block)
    assert q1 is not None and q2 is not None
    return q1, q2


def _x_content_trivial(ext, p):
    slices = {}
    for (ex, ey), c in p.terms.items():
        slices.setdefault(ey, {})[ex] = c
    g = None
    for d in slices.values():
        dense = [0] * (max(d) + 1)
        for e, c in d.items():
            dense[e] = c
        g = dense if g is None else _ugcd(ext, g, dense)
        if len(g) == 1:
            return True
    return len(g) == 1


@pytest.mark.parametrize("q,m", [(2, 6), (3, 5)])
def test_gcd_conjecture_quotients_are_coprime(q, m):
    """Computational proof that f0^(q^2+1) is the full gcd of the two
    products: a common factor with positive Y-degree would make every
    specialized gcd nontrivial, and the X-contents are trivial."""
    ext = make_field(q, m)
    q1, q2 = _conjecture_quotients(ext)
    found = None
    for x0 in range(q, min(ext.order, q + 64)):
        g = _ugcd(ext, specialize_x(q1, x0), specialize_x(q2, x0))
        if len(g) == 1 and g[0] == 1:
            found = x0
            break
    assert found is not None
    assert _x_content_trivial(ext, q1) and _x_content_trivial(ext, q2)


@pytest.mark.slow
def test_quotients_meet_in_isolated_points_over_f256():
    """The common zero set over F_{2^8} is the finite set of curve
    intersections (one projective-group orbit, 168 points), far below
    the size a shared curve component would produce."""
    sp = make_field(2, 8)
    q1, q2 = _conjecture_quotients(sp)
    shared = 0
    for x in range(2, 256):
        for y in range(2, 256):
            if evaluate_raw(q1, x, y) == 0 and evaluate_raw(q2, x, y) == 0:
                if fq_rank(sp, [1, x, y]) == 3:
                    shared += 1
    assert shared == 168
