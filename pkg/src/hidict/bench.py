"""Benchmark runners: comparison-count experiments, CSV tables, SVG plots.

Search cost is measured exactly but cheaply: queries are sampled once per
configuration, histogrammed, and each distinct queried key is searched a
single time (searches are deterministic and read-only, so this equals
replaying the full query sequence).  All randomness is derived from the
master seed, so identical inputs give byte-identical outputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from .core import derive_seed
from .pairing import PairedDict
from .structures import AVLTree, CTreap, LTreap, ZipZipTree
from .thresholding import ThresholdedDict
from .workloads import WorkloadSpec, assigned_frequencies, sample_queries

CSV_HEADER = "test,structure,n,alpha,delta,gamma,seed,queries,avg_comparisons,max_comparisons,nodes"

STRUCTURE_NAMES = (
    "avl",
    "zipzip",
    "biased-zipzip",
    "threshold-zipzip",
    "paired-zipzip",
    "l-treap",
    "c-treap",
)

DEFAULT_N_LIST = (250, 500, 1000, 2000)


@dataclass
class BenchRow:
    test: str
    structure: str
    n: int
    alpha: float
    delta: float
    gamma: float
    seed: int
    queries: int
    avg_comparisons: float
    max_comparisons: int
    nodes: int


class _Uniform:
    """Adapter dropping the frequency estimate for non-learned trees."""

    def __init__(self, tree):
        self._tree = tree

    def insert(self, key, f):
        self._tree.insert(key, 1.0)

    def search(self, key):
        return self._tree.search(key)

    def node_count(self):
        return self._tree.node_count()


def make_structure(name: str, seed: int, n: int, gamma: float = 1.0):
    if name == "avl":
        return _Uniform(AVLTree(seed))
    if name == "zipzip":
        return _Uniform(ZipZipTree(seed))
    if name == "biased-zipzip":
        return ZipZipTree(seed)
    if name == "threshold-zipzip":
        return ThresholdedDict(seed, capacity=n)
    if name == "paired-zipzip":
        return PairedDict(seed, gamma=gamma, capacity=n)
    if name == "l-treap":
        return LTreap(seed)
    if name == "c-treap":
        return CTreap(seed)
    raise ValueError("unknown structure %r" % (name,))


def _run_one(test: str, structure_name: str, spec: WorkloadSpec, trial: int,
             master_seed: int, gamma: float) -> BenchRow:
    struct_seed = derive_seed(master_seed, structure_name, spec.n, spec.alpha,
                              spec.delta, trial)
    query_seed = derive_seed(master_seed, "queries", test, spec.n, spec.alpha,
                             spec.delta, trial)
    assigned = assigned_frequencies(spec)
    s = make_structure(structure_name, struct_seed, spec.n, gamma)
    for key in range(1, spec.n + 1):
        s.insert(key, float(assigned[key - 1]))
    base = spec.base_frequencies()
    qs = sample_queries(base, spec.queries, query_seed & 0x7FFFFFFF)
    counts = np.bincount(qs, minlength=spec.n + 1)
    total = 0.0
    max_c = 0
    for key in np.nonzero(counts)[0]:
        res = s.search(int(key))
        total += int(counts[key]) * res.comparisons
        if res.comparisons > max_c:
            max_c = res.comparisons
    return BenchRow(
        test=test,
        structure=structure_name,
        n=spec.n,
        alpha=spec.alpha,
        delta=spec.delta,
        gamma=gamma,
        seed=struct_seed,
        queries=spec.queries,
        avg_comparisons=total / spec.queries,
        max_comparisons=max_c,
        nodes=s.node_count(),
    )


def _sweep(test: str, structures: Sequence[str], specs: Sequence[WorkloadSpec],
           trials: int, master_seed: int, gamma: float) -> List[BenchRow]:
    rows = []
    for spec in specs:
        for name in structures:
            for trial in range(trials):
                rows.append(_run_one(test, name, spec, trial, master_seed, gamma))
    rows.sort(key=lambda r: (r.test, r.structure, r.n, r.alpha, r.delta, r.seed))
    return rows


def run_zipf_param(structures: Sequence[str], alphas: Sequence[float],
                   n: int = 2000, queries: int = 100_000, trials: int = 10,
                   master_seed: int = 0, gamma: float = 1.0) -> List[BenchRow]:
    """Vary alpha under perfect estimates (delta = 0) at fixed n."""
    specs = [WorkloadSpec("zipfian", n, a, 0.0, queries) for a in alphas]
    return _sweep("zipf-param", structures, specs, trials, master_seed, gamma)


def run_noisy_zipf(structures: Sequence[str], n_values: Sequence[int] = DEFAULT_N_LIST,
                   alpha: float = 2.0, delta: float = 0.9, queries: int = 100_000,
                   trials: int = 10, master_seed: int = 0,
                   gamma: float = 1.0) -> List[BenchRow]:
    specs = [WorkloadSpec("zipfian", n, alpha, delta, queries) for n in n_values]
    return _sweep("noisy-zipf", structures, specs, trials, master_seed, gamma)


def run_inverse_power(structures: Sequence[str], n_values: Sequence[int] = DEFAULT_N_LIST,
                      alpha: float = 1.01, delta: float = 0.9, queries: int = 100_000,
                      trials: int = 10, master_seed: int = 0,
                      gamma: float = 1.0) -> List[BenchRow]:
    specs = [WorkloadSpec("inverse_power", n, alpha, delta, queries) for n in n_values]
    return _sweep("inverse-power", structures, specs, trials, master_seed, gamma)


def run_size(structures: Sequence[str], n_values: Sequence[int] = DEFAULT_N_LIST,
             alpha: float = 2.0, master_seed: int = 0,
             gamma: float = 1.0) -> List[BenchRow]:
    """Node-count measurement under Zipfian weights; no queries."""
    rows = []
    for n in n_values:
        spec = WorkloadSpec("zipfian", n, alpha, 0.0, 0)
        assigned = assigned_frequencies(spec)
        for name in structures:
            seed = derive_seed(master_seed, name, n, alpha, 0.0, 0)
            s = make_structure(name, seed, n, gamma)
            for key in range(1, n + 1):
                s.insert(key, float(assigned[key - 1]))
            rows.append(BenchRow("size", name, n, alpha, 0.0, gamma, seed, 0,
                                 0.0, 0, s.node_count()))
    rows.sort(key=lambda r: (r.test, r.structure, r.n, r.alpha, r.delta, r.seed))
    return rows


def mean_avg_comparisons(rows: Sequence[BenchRow], structure: str, n: int = None,
                         alpha: float = None) -> float:
    """Average of avg_comparisons over trials for one configuration."""
    vals = [r.avg_comparisons for r in rows
            if r.structure == structure
            and (n is None or r.n == n)
            and (alpha is None or r.alpha == alpha)]
    if not vals:
        raise ValueError("no rows for %r n=%r alpha=%r" % (structure, n, alpha))
    return sum(vals) / len(vals)


def emit_csv(rows: Sequence[BenchRow], path: str):
    if not rows:
        raise ValueError("no rows to emit")
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            "%s,%s,%d,%.4f,%.4f,%.4f,%d,%d,%.4f,%d,%d"
            % (r.test, r.structure, r.n, r.alpha, r.delta, r.gamma, r.seed,
               r.queries, r.avg_comparisons, r.max_comparisons, r.nodes)
        )
    try:
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError("cannot write CSV to %s: %s" % (path, exc)) from exc


def _series(rows: Sequence[BenchRow]):
    """Group rows into per-structure (x, mean y) series.

    x is alpha when the sweep varied alpha, otherwise n; y is
    avg_comparisons for query tests and nodes for the size test.
    """
    alphas = sorted({r.alpha for r in rows})
    ns = sorted({r.n for r in rows})
    use_alpha = len(alphas) > len(ns)
    sizes = all(r.test == "size" for r in rows)
    series = {}
    for r in rows:
        x = r.alpha if use_alpha else r.n
        y = r.nodes if sizes else r.avg_comparisons
        series.setdefault(r.structure, {}).setdefault(x, []).append(y)
    out = {}
    for name, pts in series.items():
        out[name] = [(x, sum(v) / len(v)) for x, v in sorted(pts.items())]
    xlabel = "alpha" if use_alpha else "n"
    ylabel = "nodes" if sizes else "avg comparisons"
    return out, xlabel, ylabel


_PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
            "#9467bd", "#8c564b", "#e377c2")


def emit_svg(rows: Sequence[BenchRow], path: str, chart: str = "bar"):
    """Static grouped-bar or line chart of the aggregated rows."""
    if not rows:
        raise ValueError("no rows to emit")
    if chart not in ("bar", "line"):
        raise ValueError("chart must be 'bar' or 'line'")
    series, xlabel, ylabel = _series(rows)
    names = sorted(series)
    xs = sorted({x for pts in series.values() for x, _ in pts})
    ymax = max(y for pts in series.values() for _, y in pts) or 1.0
    width, height = 720, 420
    ml, mr, mt, mb = 60, 160, 20, 50
    plot_w, plot_h = width - ml - mr, height - mt - mb

    def px(i):
        return ml + plot_w * (i + 0.5) / len(xs)

    def py(y):
        return mt + plot_h * (1.0 - y / (ymax * 1.05))

    svg = ['<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d">'
           % (width, height)]
    svg.append('<rect width="%d" height="%d" fill="white"/>' % (width, height))
    svg.append('<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="black"/>'
               % (ml, mt + plot_h, ml + plot_w, mt + plot_h))
    svg.append('<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="black"/>'
               % (ml, mt, ml, mt + plot_h))
    for i, x in enumerate(xs):
        svg.append('<text x="%.1f" y="%d" font-size="11" text-anchor="middle">%g</text>'
                   % (px(i), mt + plot_h + 16, x))
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        y = ymax * frac
        svg.append('<text x="%d" y="%.1f" font-size="11" text-anchor="end">%.1f</text>'
                   % (ml - 6, py(y) + 4, y))
    svg.append('<text x="%d" y="%d" font-size="12" text-anchor="middle">%s</text>'
               % (ml + plot_w // 2, height - 12, xlabel))
    svg.append('<text x="14" y="%d" font-size="12" transform="rotate(-90 14 %d)" '
               'text-anchor="middle">%s</text>' % (mt + plot_h // 2, mt + plot_h // 2, ylabel))
    for si, name in enumerate(names):
        color = _PALETTE[si % len(_PALETTE)]
        pts = dict(series[name])
        if chart == "line":
            coords = " ".join("%.1f,%.1f" % (px(i), py(pts[x]))
                              for i, x in enumerate(xs) if x in pts)
            svg.append('<polyline points="%s" fill="none" stroke="%s" stroke-width="2"/>'
                       % (coords, color))
            for i, x in enumerate(xs):
                if x in pts:
                    svg.append('<circle cx="%.1f" cy="%.1f" r="3" fill="%s"/>'
                               % (px(i), py(pts[x]), color))
        else:
            group_w = plot_w / len(xs) * 0.8
            bar_w = group_w / len(names)
            for i, x in enumerate(xs):
                if x not in pts:
                    continue
                bx = px(i) - group_w / 2 + si * bar_w
                by = py(pts[x])
                svg.append('<rect class="bar" x="%.1f" y="%.1f" width="%.1f" '
                           'height="%.1f" fill="%s"/>'
                           % (bx, by, bar_w * 0.9, mt + plot_h - by, color))
        svg.append('<rect x="%d" y="%d" width="10" height="10" fill="%s"/>'
                   % (width - mr + 10, mt + 16 * si, color))
        svg.append('<text x="%d" y="%d" font-size="11">%s</text>'
                   % (width - mr + 24, mt + 16 * si + 9, name))
    svg.append("</svg>")
    try:
        with open(path, "w") as fh:
            fh.write("\n".join(svg) + "\n")
    except OSError as exc:
        raise OSError("cannot write SVG to %s: %s" % (path, exc)) from exc
