"""Frobenius sumspaces of the dual public code and the dimension
distinguisher.

A scrambled Gabidulin public matrix betrays itself through the dual
code: summing lambda+1 consecutive Frobenius images of C_pub-perp gives
dimension at most lambda*(n-k) + lambda, while the same sum for a random
code fills min(n, (lambda+1)(n-k)).  The verdict is only usable when the
bound separates those two numbers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Matrix, Subspace, right_kernel, subspace_intersect


@dataclass(frozen=True)
class DistinguishReport:
    observed_dim: int
    bound: int                  # lambda*(n-k) + lambda
    random_expected: int        # min(n, (lambda+1)*(n-k))
    is_distinguishable: bool    # observed_dim <= bound < n
    lam: int
    n: int
    dual_dim: int
    reason: str | None = None

    def to_dict(self) -> dict:
        return {
            "observed_dim": self.observed_dim,
            "bound": self.bound,
            "random_expected": self.random_expected,
            "is_distinguishable": self.is_distinguishable,
            "lambda": self.lam,
            "n": self.n,
            "dual_dim": self.dual_dim,
            "reason": self.reason,
        }


def code_frobenius(C: Subspace, i: int) -> Subspace:
    """Subspace spanned by componentwise q^i-th powers of a basis."""
    return C.frob(i)


def sumspace(C: Subspace, j: int, i: int) -> Subspace:
    """S_j^i = C^[j] + C^[j+1] + ... + C^[j+i-1]."""
    if i < 1:
        raise ValueError("sumspace needs at least one summand")
    rows = []
    for ell in range(j, j + i):
        rows.extend(C.frob(ell).basis.rows)
    return Subspace.from_rows(C.spec, rows, C.ambient)


def distinguish(g_pub: Matrix, lam: int) -> DistinguishReport:
    """Dimension test on the dual of g_pub with secret dimension lam."""
    if lam < 2:
        raise ValueError("lambda must be at least 2")
    C = right_kernel(g_pub)
    n = g_pub.ncols
    dual_dim = C.dim
    bound = lam * dual_dim + lam
    random_expected = min(n, (lam + 1) * dual_dim)
    observed = sumspace(C, 0, lam + 1).dim
    reason = None
    if bound >= n:
        reason = f"bound {bound} >= n {n}: regime requires lambda*(n-k)+lambda < n"
        usable = False
    else:
        usable = True
    return DistinguishReport(
        observed_dim=observed,
        bound=bound,
        random_expected=random_expected,
        is_distinguishable=usable and observed <= bound,
        lam=lam,
        n=n,
        dual_dim=dual_dim,
        reason=reason,
    )


def intersection_dim_profile(C: Subspace, r: int) -> list[int]:
    """Dimensions of the iterated 3-fold sumspace intersections
    S_0^3 cap S_1^3 cap ... cap S_shift^3, for shift = 1..r.

    For a generic 3-dimensional secret subspace inside the distinguisher
    regime the profile equals 3(n-k) - 3*shift exactly, dropping by 3
    per step and ending at 3.  The chain is intersected cumulatively:
    the plain pairwise intersection S_0^3 cap S_shift^3 agrees with the
    formula only while the two sumspaces together stay below the ambient
    dimension, which desk-scale parameters quickly violate, while the
    cumulative chain keeps its working set small and tracks the formula
    throughout the regime.  Callers compare against expected_profile and
    flag deviations rather than aborting, since rare non-generic keys
    can violate equality.
    """
    acc = sumspace(C, 0, 3)
    out = []
    for shift in range(1, r + 1):
        acc = subspace_intersect(acc, sumspace(C, shift, 3))
        out.append(acc.dim)
    return out


def expected_profile(dual_dim: int, r: int) -> list[int]:
    return [3 * dual_dim - 3 * shift for shift in range(1, r + 1)]
