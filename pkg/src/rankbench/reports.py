"""Figure rendering for distinguisher and benchmark reports.

matplotlib is imported lazily with the Agg backend so that library use
never touches a display; every renderer writes a PNG next to the
delimited/JSON output it illustrates.
"""

from __future__ import annotations


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def render_distinguisher_figure(path: str, report: dict, baseline: list[int] | None):
    """Histogram of baseline sumspace dimensions with the observed key
    dimension and the structural bound marked."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    if baseline:
        lo = min(baseline + [report["observed_dim"], report["bound"]]) - 1
        hi = max(baseline + [report["observed_dim"]]) + 1
        bins = [b - 0.5 for b in range(lo, hi + 2)]
        ax.hist(baseline, bins=bins, color="#9ecae1", edgecolor="black",
                label=f"random codes (n={len(baseline)})")
    ax.axvline(report["observed_dim"], color="#d62728", lw=2,
               label=f"this key: dim {report['observed_dim']}")
    ax.axvline(report["bound"] + 0.25, color="#2ca02c", lw=2, ls="--",
               label=f"structural bound {report['bound']}")
    ax.set_xlabel("dim of the (lambda+1)-fold Frobenius sumspace")
    ax.set_ylabel("count")
    ax.set_title(f"Distinguisher at lambda={report['lambda']}, n={report['n']}")
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_profile_figure(path: str, observed: list[int], expected: list[int]):
    """Staircase of intersection dimensions against the expected line."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    shifts = list(range(1, len(observed) + 1))
    ax.step(shifts, observed, where="mid", lw=2, label="observed")
    ax.plot(shifts, expected, "o--", color="#2ca02c", label="3(n-k) - 3*shift")
    ax.set_xlabel("sumspace shift")
    ax.set_ylabel("intersection dimension")
    ax.set_xticks(shifts)
    ax.set_title("Iterated sumspace intersection profile")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_bench_figure(path: str, rows: list[tuple[str, str, str, float]]):
    """Horizontal bars of phase timings, one bar per (suite, phase)."""
    plt = _pyplot()
    labels = [f"{suite}:{phase}\n{params}" for suite, params, phase, _ in rows]
    values = [millis for *_, millis in rows]
    fig, ax = plt.subplots(figsize=(7.2, 0.42 * len(rows) + 1.2))
    ax.barh(range(len(rows)), values, color="#9ecae1", edgecolor="black")
    ax.set_yticks(range(len(rows)))
    ax.set_yticklabels(labels, fontsize=7)
    ax.invert_yaxis()
    ax.set_xlabel("milliseconds")
    ax.set_title("rankbench timings")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
