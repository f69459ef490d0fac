"""Figure rendering for degree tables and scanner reports.

Presentation layer only; all decisions are made before anything reaches
matplotlib.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

STATUS_COLORS = {
    "member": "#2a9d2a",
    "realized": "#2a9d2a",
    "non_member": "#c43b3b",
    "non_realizable": "#c43b3b",
    "unknown": "#8a8a8a",
    "bug": "#ff7f0e",
    "refutation": "#9467bd",
}


def render_degree_strip(rows, title: str, path: str) -> str:
    """Draw a number-line strip of (degree, status) rows and save it.

    Returns the path written.
    """
    ks = [k for k, _ in rows]
    lo, hi = (min(ks), max(ks)) if ks else (0, 0)
    width = max(6.0, 0.28 * (hi - lo + 1))
    fig, ax = plt.subplots(figsize=(width, 2.0))
    seen = {}
    for k, status in rows:
        color = STATUS_COLORS.get(status, "#1f77b4")
        label = status if status not in seen else None
        seen[status] = True
        ax.scatter([k], [0], c=color, marker="s", s=120, label=label)
    ax.axhline(0, color="0.85", zorder=0)
    ax.set_yticks([])
    ax.set_xlabel("degree k")
    ax.set_title(title)
    ax.set_xlim(lo - 1, hi + 1)
    if seen:
        ax.legend(loc="upper center", bbox_to_anchor=(0.5, -0.35), ncol=len(seen), frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_conjecture_report(report, path: str) -> str:
    """Strip chart of a scanner report: realized, excluded and anomalous
    degrees in distinct colors."""
    rows = []
    for k in report.realized:
        rows.append((k, "realized"))
    for k in report.non_realizable:
        rows.append((k, "non_realizable"))
    for k in report.bugs:
        rows.append((k, "bug"))
    for k in report.refutations:
        rows.append((k, "refutation"))
    rows.sort()
    title = f"self-maps of a {report.copies}-fold CP^2 sum, degrees 0..{report.k_max}"
    return render_degree_strip(rows, title, path)
