"""Grouped means with standard errors, plus Welch mean-difference checks."""

from __future__ import annotations

import math
from collections import defaultdict
from collections.abc import Sequence
from dataclasses import dataclass
from itertools import combinations


@dataclass(frozen=True)
class SummaryRow:
    keys: tuple[tuple[str, str], ...]   # (column, value) pairs identifying the condition
    metric: str
    mean: float
    sem: float
    n: int


@dataclass(frozen=True)
class ComparisonRow:
    keys: tuple[tuple[str, str], ...]
    metric: str
    agent_a: str
    agent_b: str
    mean_diff: float
    welch_t: float
    dof: float


def mean_sem(values: Sequence[float]) -> tuple[float, float, int]:
    """Sample mean and standard error; SEM is 0 by convention when n == 1."""
    n = len(values)
    if n == 0:
        raise ValueError("cannot summarize an empty group")
    m = sum(values) / n
    if n == 1:
        return m, 0.0, 1
    var = sum((v - m) ** 2 for v in values) / (n - 1)
    return m, math.sqrt(var / n), n


def welch(a: Sequence[float], b: Sequence[float]) -> tuple[float, float, float]:
    """Welch's two-sample statistic: (mean difference, t, degrees of freedom)."""
    if len(a) < 2 or len(b) < 2:
        raise ValueError("Welch's test needs at least two samples per group")
    ma, sa, na = mean_sem(a)
    mb, sb, nb = mean_sem(b)
    diff = ma - mb
    pooled = sa * sa + sb * sb
    if pooled == 0.0:
        return diff, math.inf if diff != 0.0 else 0.0, float(na + nb - 2)
    t = diff / math.sqrt(pooled)
    dof = pooled ** 2 / (sa ** 4 / (na - 1) + sb ** 4 / (nb - 1))
    return diff, t, dof


def summarize(rows: list[dict[str, str]], group_cols: Sequence[str],
              metric_cols: Sequence[str]) -> list[SummaryRow]:
    """Per-condition mean/SEM/n for each metric column; blank cells are skipped."""
    grouped: dict[tuple, dict[str, list[float]]] = defaultdict(lambda: defaultdict(list))
    for row in rows:
        key = tuple((c, row[c]) for c in group_cols)
        for metric in metric_cols:
            cell = row.get(metric, "")
            if cell != "":
                grouped[key][metric].append(float(cell))
    out = []
    for key in sorted(grouped):
        for metric in metric_cols:
            values = grouped[key][metric]
            if not values:
                continue
            m, sem, n = mean_sem(values)
            out.append(SummaryRow(keys=key, metric=metric, mean=m, sem=sem, n=n))
    return out


def compare_agents(rows: list[dict[str, str]], agent_col: str,
                   group_cols: Sequence[str],
                   metric_cols: Sequence[str]) -> list[ComparisonRow]:
    """Welch statistic for every agent pair within each condition cell."""
    grouped: dict[tuple, dict[str, dict[str, list[float]]]] = defaultdict(
        lambda: defaultdict(lambda: defaultdict(list)))
    agents_seen: list[str] = []
    for row in rows:
        key = tuple((c, row[c]) for c in group_cols)
        agent = row[agent_col]
        if agent not in agents_seen:
            agents_seen.append(agent)
        for metric in metric_cols:
            cell = row.get(metric, "")
            if cell != "":
                grouped[key][agent][metric].append(float(cell))
    out = []
    for key in sorted(grouped):
        for agent_a, agent_b in combinations(agents_seen, 2):
            for metric in metric_cols:
                a = grouped[key].get(agent_a, {}).get(metric, [])
                b = grouped[key].get(agent_b, {}).get(metric, [])
                if len(a) < 2 or len(b) < 2:
                    continue
                diff, t, dof = welch(a, b)
                out.append(ComparisonRow(keys=key, metric=metric, agent_a=agent_a,
                                         agent_b=agent_b, mean_diff=diff,
                                         welch_t=t, dof=dof))
    return out
