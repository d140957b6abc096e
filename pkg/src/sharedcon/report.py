"""Rendering of an analysis output directory.

``render_report`` turns the tables written by the pipeline into PNG
figures and a human-readable ``summary.txt``, written alongside the
delimited output.  The ``paper-stats`` template additionally compares the
computed statistics against the reference values reported for the
original 66-dyad corpus; those numbers are not reproducible from
synthetic desk-scale data and serve as targets when a user supplies the
converted real corpus.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

#: name -> (reference value, path into summary.json)
PAPER_STATS: dict[str, tuple[float, tuple[str, ...]]] = {
    "dyad_fraction_all_fribbles": (0.92, ("real", "analysis1", "dyad_fraction_all_fribbles")),
    "mean_dialogue_coverage": (0.34, ("real", "analysis1", "mean_dialogue_coverage")),
    "first_round_coverage": (0.27, ("real", "analysis1", "mean_round_coverage", "1")),
    "last_round_coverage": (0.37, ("real", "analysis1", "mean_round_coverage", "6")),
    "coverage_trend_rho": (0.36, ("real", "analysis1", "coverage_trend", "rho")),
    "pseudo_dialogue_coverage": (0.14, ("pseudo", "analysis1", "mean_dialogue_coverage")),
    "first_round_mean_types": (4.25, ("real", "analysis1", "first_round_mean_types")),
    "last_round_mean_types": (1.86, ("real", "analysis1", "last_round_mean_types")),
    "first_vs_last_types_t": (16.45, ("real", "analysis1", "first_vs_last_types", "t")),
    "mean_self_similarity": (0.27, ("real", "analysis2", "mean_self_similarity")),
    "overlap_rate_pre": (0.413, ("real", "analysis2", "overlap_rate_pre", "mean")),
    "overlap_rate_post": (0.615, ("real", "analysis2", "overlap_rate_post", "mean")),
    "frequency_effect_rho": (0.45, ("real", "analysis2", "frequency_effect", "rho")),
    "recency_effect_rho": (0.2, ("real", "analysis2", "recency_effect", "rho")),
    "mean_s_pre": (0.06, ("real", "analysis3", "mean_s_pre")),
    "mean_s_post": (0.43, ("real", "analysis3", "mean_s_post")),
    "pseudo_mean_s_post": (0.07, ("pseudo", "analysis3", "mean_s_post")),
    "pseudo_mean_delta": (0.0, ("pseudo", "analysis3", "mean_delta")),
    "types_vs_s_post_rho": (-0.13, ("real", "analysis3", "types_vs_s_post", "rho")),
    "dominant_frequency_vs_s_post_rho": (0.28, ("real", "analysis3", "dominant_frequency_vs_s_post", "rho")),
    "dominant_recency_vs_s_post_rho": (0.17, ("real", "analysis3", "dominant_recency_vs_s_post", "rho")),
}

TEMPLATES = ("paper-stats",)


def _read_csv(path: Path) -> list[dict[str, str]]:
    with open(path, newline="", encoding="utf-8") as handle:
        return list(csv.DictReader(handle))


def _plot_round_coverage(out: Path) -> Path | None:
    real = out / "round_coverage.csv"
    if not real.exists():
        return None
    fig, ax = plt.subplots(figsize=(6, 4))
    for suffix, label, style in (("", "real pairs", "o-"), ("_pseudo", "pseudo-pairs", "s--")):
        path = out / f"round_coverage{suffix}.csv"
        if not path.exists():
            continue
        rows = _read_csv(path)
        ax.plot(
            [int(r["round"]) for r in rows],
            [float(r["mean_coverage"]) for r in rows],
            style,
            label=label,
        )
    ax.set_xlabel("round")
    ax.set_ylabel("fraction of utterances with shared constructions")
    ax.set_ylim(bottom=0)
    ax.legend()
    fig.tight_layout()
    target = out / "round_coverage.png"
    fig.savefig(target)
    plt.close(fig)
    return target


def _plot_name_similarity(out: Path) -> Path | None:
    path = out / "name_similarity_by_round.csv"
    if not path.exists():
        return None
    rows = _read_csv(path)
    fig, ax = plt.subplots(figsize=(6, 4))
    for phase, style in (("pre", "s--"), ("post", "o-")):
        points = [(int(r["round"]), float(r["mean_similarity"])) for r in rows if r["phase"] == phase]
        if points:
            ax.plot([p[0] for p in points], [p[1] for p in points], style, label=f"{phase}-interaction names")
    ax.set_xlabel("round of construction use")
    ax.set_ylabel("mean name/type cosine similarity")
    ax.set_ylim(bottom=0)
    ax.legend()
    fig.tight_layout()
    target = out / "name_similarity_by_round.png"
    fig.savefig(target)
    plt.close(fig)
    return target


def _plot_typecount_convergence(out: Path) -> Path | None:
    path = out / "typecount_vs_spost.csv"
    if not path.exists():
        return None
    rows = _read_csv(path)
    if not rows:
        return None
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.scatter(
        [float(r["n_types"]) for r in rows],
        [float(r["s_post"]) for r in rows],
        s=12,
        alpha=0.4,
    )
    ax.set_xlabel("number of shared construction types")
    ax.set_ylabel("post-interaction name similarity")
    fig.tight_layout()
    target = out / "typecount_vs_spost.png"
    fig.savefig(target)
    plt.close(fig)
    return target


def _summarize(summary: dict, indent: int = 0) -> list[str]:
    lines = []
    pad = "  " * indent
    for key in sorted(summary):
        value = summary[key]
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_summarize(value, indent + 1))
        elif isinstance(value, float):
            lines.append(f"{pad}{key}: {value:.4f}")
        else:
            lines.append(f"{pad}{key}: {value}")
    return lines


def _dig(summary: dict, path: tuple[str, ...]):
    node = summary
    for key in path:
        if not isinstance(node, dict) or key not in node:
            return None
        node = node[key]
    return node


def render_paper_stats(out: Path, summary: dict) -> Path:
    """Write the computed-vs-reference comparison table."""
    rows = []
    for name in sorted(PAPER_STATS):
        reference, path = PAPER_STATS[name]
        computed = _dig(summary, path)
        rows.append(
            (
                name,
                reference,
                "" if computed is None else f"{computed:.4f}" if isinstance(computed, float) else computed,
            )
        )
    target = out / "paper_stats.csv"
    with open(target, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(("statistic", "reference", "computed"))
        writer.writerows(rows)
    return target


def render_report(out: str | Path, *, template: str | None = None) -> list[Path]:
    """Render figures and the text summary for an analysis directory."""
    out = Path(out)
    summary_path = out / "summary.json"
    if not summary_path.exists():
        raise FileNotFoundError(f"{summary_path} not found; run the analyze step first")
    summary = json.loads(summary_path.read_text(encoding="utf-8"))

    written = []
    for plot in (_plot_round_coverage, _plot_name_similarity, _plot_typecount_convergence):
        target = plot(out)
        if target is not None:
            written.append(target)

    lines = ["analysis summary", "================", ""]
    lines.extend(_summarize(summary))
    if written:
        lines.append("")
        lines.append("figures: " + ", ".join(p.name for p in written))
    text_path = out / "summary.txt"
    text_path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    written.append(text_path)

    if template is not None:
        if template not in TEMPLATES:
            raise ValueError(f"unknown report template {template!r}; available: {TEMPLATES}")
        written.append(render_paper_stats(out, summary))
    return written
