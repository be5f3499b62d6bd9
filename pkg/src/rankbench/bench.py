"""Timing suites for the bench subcommand; rows are
(suite, params, phase, millis)."""

from __future__ import annotations

import time

from ._rng import Rng
from .attack import cc2_recover
from .fields import make_field
from .linalg import Matrix
from .loidreau import keygen
from .qspaces import distinguish
from . import identities


def _ms(t0: float) -> float:
    return round(1000.0 * (time.perf_counter() - t0), 3)


def _bench_distinguish() -> list:
    rows = []
    for (q, m, n, k, lam) in ((2, 12, 12, 8, 2), (2, 16, 16, 12, 3), (2, 13, 13, 11, 4)):
        params = f"q{q} n{n} k{k} l{lam}"
        t0 = time.perf_counter()
        pk, _ = keygen(q, m, n, k, lam, seed=1)
        rows.append(("distinguish", params, "keygen", _ms(t0)))
        t0 = time.perf_counter()
        distinguish(pk.g_pub, lam)
        rows.append(("distinguish", params, "loidreau-key", _ms(t0)))
        sp = make_field(q, m)
        rng = Rng(99)
        while True:
            M = Matrix(sp, [[rng.below(sp.order) for _ in range(n)] for _ in range(k)], n)
            if M.rank() == k:
                break
        t0 = time.perf_counter()
        distinguish(M, lam)
        rows.append(("distinguish", params, "random-code", _ms(t0)))
    return rows


def _bench_attack2() -> list:
    rows = []
    params = "q2 n12 k8 l2"
    t0 = time.perf_counter()
    pk, _ = keygen(2, 12, 12, 8, 2, seed=2)
    rows.append(("attack2", params, "keygen", _ms(t0)))
    t0 = time.perf_counter()
    key, rep = cc2_recover(pk.g_pub)
    rows.append(("attack2", params, "total", _ms(t0)))
    for name, ms in rep.phases:
        rows.append(("attack2", params, name, ms))
    return rows


def _bench_identities() -> list:
    rows = []
    for q in (2, 3):
        t0 = time.perf_counter()
        identities.run(q)
        rows.append(("identities", f"q{q}", "suite", _ms(t0)))
    return rows


def run(suite: str) -> list:
    table = {
        "distinguish": _bench_distinguish,
        "attack2": _bench_attack2,
        "identities": _bench_identities,
    }
    if suite == "all":
        rows = []
        for fn in table.values():
            rows.extend(fn())
        return rows
    return table[suite]()
