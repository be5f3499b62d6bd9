"""Machine verification of the structural polynomial identities behind
the three-dimensional attack, over a chosen base order q.

Each check returns (name, passed, detail); the divisibility checks run
over the base field F_q itself (all coefficients are +-1 there), and the
degree checks instantiate a small extension to hold a nontrivial alpha.
"""

from __future__ import annotations

from .fields import make_field
from .polyring import (build_F, exact_div, f0, f_ijk,
                       gamma_divisor_matches_gcd, p_gamma_univariate, q_scale,
                       reduced_polynomial)


def run(q: int) -> list[tuple[str, bool, str]]:
    sp = make_field(q, 1)
    out = []

    lhs = f_ijk(4, 3, 2, sp)
    rhs = q_scale(f0(sp), 2).neg()
    out.append(("f^(432) = -f0^(q^2)", lhs == rhs, "term-exact comparison"))

    for (i, j, k) in ((4, 1, 0), (5, 1, 0)):
        got = exact_div(f_ijk(i, j, k, sp), f0(sp))
        out.append((f"f0 | f^({i}{j}{k})", got is not None, "exact division"))

    got = exact_div(f_ijk(5, 3, 2, sp), q_scale(f0(sp), 2))
    out.append(("f0^(q^2) | f^(532)", got is not None, "exact division"))

    block = f0(sp).pow(q * q + 1)
    p12 = f_ijk(5, 3, 2, sp).mul(f_ijk(4, 1, 0, sp))
    p34 = f_ijk(5, 1, 0, sp).mul(f_ijk(4, 3, 2, sp))
    out.append(("f0^(q^2+1) | f^(532) f^(410)", exact_div(p12, block) is not None,
                "exact division"))
    out.append(("f0^(q^2+1) | f^(510) f^(432)", exact_div(p34, block) is not None,
                "exact division"))

    ext = make_field(q, 3)
    alpha = ext.el(ext.q)  # the polynomial generator: nonzero, outside F_q
    F = build_F((5, 3, 2), (4, 1, 0), alpha)
    want_f = q ** 5 + q ** 4 + q ** 3 + q
    out.append((f"deg F = q^5+q^4+q^3+q = {want_f}", F.total_degree() == want_f,
                f"got {F.total_degree()}"))
    Pr = reduced_polynomial(F, ext)
    want_p = q ** 5 - q ** 2
    out.append((f"deg P_r = q^5-q^2 = {want_p}", Pr.total_degree() == want_p,
                f"got {Pr.total_degree()}"))

    pg = p_gamma_univariate(alpha, ext)
    want_g = q ** 3 - q
    out.append((f"deg P_gamma = q^3-q = {want_g}", pg.total_degree() == want_g,
                f"got {pg.total_degree()}"))
    out.append(("(X^q-X)^(q+1) = gcd(f1, f2)", gamma_divisor_matches_gcd(sp),
                "univariate gcd cross-check"))
    return out
