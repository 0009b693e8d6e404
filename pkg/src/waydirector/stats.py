"""Statistics for the wayfinding study: questionnaire scoring, descriptives,
Cronbach's alpha, Wilcoxon signed-rank (exact and normal approximation),
Pearson correlations with Student-t significance, and a priori power analysis
for a paired design with an ARE correction.

The Student-t tail probability is computed here via the continued-fraction
regularized incomplete beta (target |error| < 1e-10) so table checks do not
depend on an external distribution routine.
"""

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np
from scipy import stats as scipy_stats

if TYPE_CHECKING:
    from .dialogue import SessionRecord


class DegenerateDataError(ValueError):
    """Input carries no usable variation for the requested statistic."""


class IncompleteRecordsError(ValueError):
    def __init__(self, participant_ids: list[str]):
        super().__init__(f"incomplete session records: {', '.join(participant_ids)}")
        self.participant_ids = participant_ids


# --- questionnaire scoring -------------------------------------------------


@dataclass(frozen=True)
class ScaleDefinition:
    name: str
    item_count: int
    likert_max: int = 5
    reverse_items: frozenset[int] = frozenset()  # 1-based indices

    def __post_init__(self):
        bad = [i for i in self.reverse_items if not 1 <= i <= self.item_count]
        if bad:
            raise ValueError(f"reverse items out of range for {self.name}: {bad}")


NARS_SCALE = ScaleDefinition("nars", item_count=14)
PTT_SCALE = ScaleDefinition("ptt", item_count=6)
ANIMACY_SCALE = ScaleDefinition("animacy", item_count=6)
INTELLIGENCE_SCALE = ScaleDefinition("intelligence", item_count=5)


def score_scale(responses: Sequence[int], definition: ScaleDefinition) -> float:
    """Mean over items after mapping reverse-coded items x -> (max+1) - x."""
    if len(responses) != definition.item_count:
        raise ValueError(
            f"{definition.name} expects {definition.item_count} items, "
            f"got {len(responses)}"
        )
    total = 0.0
    for index, value in enumerate(responses, start=1):
        if not 1 <= value <= definition.likert_max:
            raise ValueError(
                f"{definition.name} item {index} out of bounds: {value}"
            )
        if index in definition.reverse_items:
            value = (definition.likert_max + 1) - value
        total += value
    return total / definition.item_count


# --- descriptives ----------------------------------------------------------


@dataclass(frozen=True)
class Descriptives:
    median: float
    mean: float
    sd: float
    minimum: float
    maximum: float


def descriptives(values: Sequence[float]) -> Descriptives:
    """Median (midpoint convention), mean, sample sd (n-1), min, max."""
    if len(values) == 0:
        raise DegenerateDataError("descriptives need at least one value")
    if len(values) < 2:
        raise DegenerateDataError("sample sd is undefined for a single value")
    arr = np.asarray(values, dtype=float)
    return Descriptives(
        median=float(np.median(arr)),
        mean=float(arr.mean()),
        sd=float(arr.std(ddof=1)),
        minimum=float(arr.min()),
        maximum=float(arr.max()),
    )


def cronbach_alpha(items: Sequence[Sequence[float]]) -> float:
    """alpha = k/(k-1) * (1 - sum of item variances / total-score variance).

    `items` is a participants x items matrix; variances are sample (n-1)
    variances.
    """
    matrix = np.asarray(items, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] < 2 or matrix.shape[1] < 2:
        raise DegenerateDataError("alpha needs at least 2 participants and 2 items")
    k = matrix.shape[1]
    item_variances = matrix.var(axis=0, ddof=1)
    total_variance = matrix.sum(axis=1).var(ddof=1)
    if total_variance == 0:
        raise DegenerateDataError("total-score variance is zero")
    return float(k / (k - 1) * (1.0 - item_variances.sum() / total_variance))


# --- Student t via continued-fraction incomplete beta -----------------------

_CF_EPS = 3e-16
_CF_FPMIN = 1e-300
_CF_MAX_ITER = 300


def _beta_continued_fraction(a: float, b: float, x: float) -> float:
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_FPMIN:
        d = _CF_FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_FPMIN:
            d = _CF_FPMIN
        c = 1.0 + aa / c
        if abs(c) < _CF_FPMIN:
            c = _CF_FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_FPMIN:
            d = _CF_FPMIN
        c = 1.0 + aa / c
        if abs(c) < _CF_FPMIN:
            c = _CF_FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise ArithmeticError(f"incomplete beta did not converge for a={a} b={b} x={x}")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_continued_fraction(a, b, x) / a
    return 1.0 - front * _beta_continued_fraction(b, a, 1.0 - x) / b


def student_t_two_tailed(t_stat: float, df: float) -> float:
    """P(|T| >= |t|) for Student t with df degrees of freedom."""
    if df <= 0:
        raise ValueError("df must be positive")
    if math.isinf(t_stat):
        return 0.0
    return regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t_stat * t_stat))


# --- Wilcoxon signed-rank ----------------------------------------------------


@dataclass(frozen=True)
class WilcoxonResult:
    n_total: int
    n_effective: int
    w_plus: float
    w_minus: float
    z: float
    p_approx: float
    p_exact: float | None
    method: str  # exact | normal_approx
    continuity_correction: bool


def _midranks(values: Sequence[float]) -> list[float]:
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        rank = (i + j + 2) / 2.0  # average of 1-based positions i+1 .. j+1
        for k in range(i, j + 1):
            ranks[order[k]] = rank
        i = j + 1
    return ranks


def _signed_rank_distribution(scaled_ranks: list[int]) -> list[int]:
    """Counts of sum(eps_i * r_i) over all sign assignments, ranks scaled x2."""
    total = sum(scaled_ranks)
    counts = [0] * (total + 1)
    counts[0] = 1
    for rank in scaled_ranks:
        for t in range(total, rank - 1, -1):
            if counts[t - rank]:
                counts[t] += counts[t - rank]
    return counts


def wilcoxon_signed_rank(
    pairs: Sequence[tuple[float, float]],
    continuity_correction: bool = True,
    exact_limit: int = 20,
) -> WilcoxonResult:
    """Paired signed-rank test; zero differences dropped, ties mid-ranked.

    The exact two-tailed p enumerates the 2^n sign assignments over the
    realized rank multiset when the effective n is small enough; the normal
    approximation is tie-corrected and optionally continuity-corrected.
    """
    diffs = [a - b for a, b in pairs]
    nonzero = [d for d in diffs if d != 0.0]
    n_total, n_eff = len(diffs), len(nonzero)
    if n_eff == 0:
        raise DegenerateDataError("all paired differences are zero")

    abs_diffs = [abs(d) for d in nonzero]
    ranks = _midranks(abs_diffs)
    w_plus = sum(r for d, r in zip(nonzero, ranks) if d > 0)
    w_minus = sum(r for d, r in zip(nonzero, ranks) if d < 0)

    mu = n_eff * (n_eff + 1) / 4.0
    tie_groups: dict[float, int] = {}
    for d in abs_diffs:
        tie_groups[d] = tie_groups.get(d, 0) + 1
    tie_term = sum(t ** 3 - t for t in tie_groups.values()) / 48.0
    sigma2 = n_eff * (n_eff + 1) * (2 * n_eff + 1) / 24.0 - tie_term
    sigma = math.sqrt(sigma2) if sigma2 > 0 else 0.0

    delta = w_plus - mu
    if sigma == 0.0 or delta == 0.0:
        z = 0.0
    else:
        adjust = 0.5 * math.copysign(1.0, delta) if continuity_correction else 0.0
        z = (delta - adjust) / sigma
    p_approx = min(1.0, math.erfc(abs(z) / math.sqrt(2.0)))

    p_exact = None
    method = "normal_approx"
    if n_eff <= exact_limit:
        scaled = [int(round(2 * r)) for r in ranks]
        counts = _signed_rank_distribution(scaled)
        lo = int(round(2 * min(w_plus, w_minus)))
        hi = int(round(2 * max(w_plus, w_minus)))
        total = float(2 ** n_eff)
        p_exact = (sum(counts[: lo + 1]) + sum(counts[hi:])) / total
        p_exact = min(1.0, p_exact)
        method = "exact"

    return WilcoxonResult(
        n_total=n_total, n_effective=n_eff,
        w_plus=w_plus, w_minus=w_minus,
        z=z, p_approx=p_approx, p_exact=p_exact,
        method=method, continuity_correction=continuity_correction,
    )


# --- Pearson correlation -----------------------------------------------------


@dataclass(frozen=True)
class PearsonResult:
    r: float
    t_stat: float
    df: int
    p_two_tailed: float


def pearson_r(xs: Sequence[float], ys: Sequence[float]) -> PearsonResult:
    """Product-moment correlation with two-tailed Student-t significance."""
    if len(xs) != len(ys):
        raise ValueError("input vectors differ in length")
    n = len(xs)
    if n < 3:
        raise ValueError("pearson_r needs n >= 3")
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    dx, dy = x - x.mean(), y - y.mean()
    ssx, ssy = float(dx @ dx), float(dy @ dy)
    if ssx == 0.0 or ssy == 0.0:
        raise DegenerateDataError("zero variance input")
    r = float(dx @ dy) / math.sqrt(ssx * ssy)
    r = max(-1.0, min(1.0, r))
    df = n - 2
    if abs(r) == 1.0:
        t_stat = math.copysign(math.inf, r)
        p = 0.0
    else:
        t_stat = r * math.sqrt(df / (1.0 - r * r))
        p = student_t_two_tailed(t_stat, df)
    return PearsonResult(r=r, t_stat=t_stat, df=df, p_two_tailed=p)


def p_from_r(r: float, n: int) -> float:
    """Two-tailed p for a correlation of r at sample size n (df = n-2).

    Exposed separately so published correlation tables can be checked
    without raw data.
    """
    if abs(r) > 1.0:
        raise ValueError(f"|r| must be <= 1, got {r}")
    if n < 3:
        raise ValueError("p_from_r needs n >= 3")
    if abs(r) == 1.0:
        return 0.0
    df = n - 2
    t_stat = r * math.sqrt(df / (1.0 - r * r))
    return student_t_two_tailed(t_stat, df)


# --- a priori power analysis -------------------------------------------------

ARE_FACTORS = {
    "normal_parent": 3.0 / math.pi,
    "min_are": 0.864,
    "laplace": 1.5,
    "none": 1.0,
}

_POWER_SEARCH_CAP = 10 ** 6


@dataclass(frozen=True)
class PowerResult:
    effect_size_dz: float
    alpha: float
    target_power: float
    tails: int
    are_method: str
    required_n: int
    actual_power: float


def paired_t_power(n: float, dz: float, alpha: float = 0.05, tails: int = 2) -> float:
    """Power of the paired t test at (possibly fractional) sample size n.

    Noncentral t with df = n-1 and ncp = dz * sqrt(n); the critical value
    comes from the central t at alpha/tails.
    """
    if n <= 1:
        return 0.0
    df = n - 1.0
    ncp = dz * math.sqrt(n)
    t_crit = float(scipy_stats.t.ppf(1.0 - alpha / tails, df))
    power = float(scipy_stats.nct.sf(t_crit, df, ncp))
    if tails == 2:
        power += float(scipy_stats.nct.cdf(-t_crit, df, ncp))
    return power


def power_analysis(
    dz: float,
    alpha: float = 0.05,
    target_power: float = 0.80,
    tails: int = 2,
    are_method: str = "normal_parent",
) -> PowerResult:
    """A priori sample size for the paired design with an ARE correction.

    Finds the minimal paired-t N reaching the target power, then inflates it
    by 1/ARE for the nonparametric test; the reported achieved power is
    evaluated at the effective sample size required_n * ARE.
    """
    if dz <= 0:
        raise ValueError("effect size must be positive")
    if not 0 < alpha < 1 or not 0 < target_power < 1:
        raise ValueError("alpha and target power must be in (0, 1)")
    if tails not in (1, 2):
        raise ValueError("tails must be 1 or 2")
    if are_method not in ARE_FACTORS:
        raise ValueError(f"unknown ARE method {are_method!r}")
    are = ARE_FACTORS[are_method]

    n_t = 2
    while paired_t_power(n_t, dz, alpha, tails) < target_power:
        n_t += 1
        if n_t > _POWER_SEARCH_CAP:
            raise ValueError(f"target power unreachable within N <= {_POWER_SEARCH_CAP}")
    required_n = math.ceil(n_t / are)
    actual_power = paired_t_power(required_n * are, dz, alpha, tails)
    return PowerResult(
        effect_size_dz=dz, alpha=alpha, target_power=target_power,
        tails=tails, are_method=are_method,
        required_n=required_n, actual_power=actual_power,
    )


# --- full study analysis -----------------------------------------------------

ALPHA_VALIDITY_THRESHOLD = 0.7

_GODSPEED_ROWS = {
    "Skeletal Godspeed Animacy Score": ("skeletal", "animacy"),
    "Skeletal Godspeed Intelligence Score": ("skeletal", "intelligence"),
    "Landmark Godspeed Animacy Score": ("landmark", "animacy"),
    "Landmark Godspeed Intelligence Score": ("landmark", "intelligence"),
}


@dataclass(frozen=True)
class MeasureRow:
    name: str
    stats: Descriptives
    alpha: float | None = None


@dataclass(frozen=True)
class ComparisonRow:
    name: str
    result: WilcoxonResult | None
    excluded_reason: str | None = None


@dataclass(frozen=True)
class CorrelationRow:
    a: str
    b: str
    result: PearsonResult | None
    excluded_reason: str | None = None

    @property
    def significant(self) -> bool:
        return self.result is not None and self.result.p_two_tailed < 0.05


@dataclass(frozen=True)
class StatsReport:
    n: int
    measures: tuple[MeasureRow, ...]
    comparisons: tuple[ComparisonRow, ...]
    correlations: tuple[CorrelationRow, ...]
    excluded_scales: tuple[str, ...]

    def to_dict(self) -> dict:
        def clean(value):
            if isinstance(value, float) and not math.isfinite(value):
                return None
            return value

        return {
            "n": self.n,
            "measures": [
                {
                    "name": row.name,
                    "median": row.stats.median,
                    "mean": row.stats.mean,
                    "sd": row.stats.sd,
                    "min": row.stats.minimum,
                    "max": row.stats.maximum,
                    "alpha": row.alpha,
                }
                for row in self.measures
            ],
            "comparisons": [
                {
                    "name": row.name,
                    "excluded_reason": row.excluded_reason,
                    "result": None if row.result is None else {
                        "n_total": row.result.n_total,
                        "n_effective": row.result.n_effective,
                        "w_plus": row.result.w_plus,
                        "w_minus": row.result.w_minus,
                        "z": row.result.z,
                        "p_approx": row.result.p_approx,
                        "p_exact": row.result.p_exact,
                        "method": row.result.method,
                        "continuity_correction": row.result.continuity_correction,
                    },
                }
                for row in self.comparisons
            ],
            "correlations": [
                {
                    "a": row.a,
                    "b": row.b,
                    "excluded_reason": row.excluded_reason,
                    "result": None if row.result is None else {
                        "r": row.result.r,
                        "t": clean(row.result.t_stat),
                        "df": row.result.df,
                        "p": row.result.p_two_tailed,
                    },
                    "significant": row.significant,
                }
                for row in self.correlations
            ],
            "excluded_scales": list(self.excluded_scales),
        }


def analyze_sessions(records: Iterable["SessionRecord"]) -> StatsReport:
    """Descriptives, reliabilities, cross-condition tests, and correlations.

    Sub-scales whose Cronbach's alpha falls below 0.7 are excluded from the
    comparisons and correlations that depend on them.
    """
    records = list(records)
    incomplete = [r.participant_id for r in records if not r.complete]
    if incomplete:
        raise IncompleteRecordsError(incomplete)
    if len(records) < 2:
        raise DegenerateDataError("analysis needs at least 2 complete records")

    n = len(records)
    nars = [score_scale(r.nars, NARS_SCALE) for r in records]
    ptt = [score_scale(r.ptt, PTT_SCALE) for r in records]
    scores: dict[tuple[str, str], list[float]] = {}
    item_matrices: dict[tuple[str, str], list[list[int]]] = {}
    success: dict[str, list[float]] = {}
    for style in ("skeletal", "landmark"):
        for scale_name, scale in (("animacy", ANIMACY_SCALE),
                                  ("intelligence", INTELLIGENCE_SCALE)):
            items = [r.conditions[style][scale_name] for r in records]
            item_matrices[(style, scale_name)] = items
            scores[(style, scale_name)] = [score_scale(row, scale) for row in items]
        success[style] = [float(sum(r.conditions[style]["task_success"])) for r in records]

    alphas: dict[tuple[str, str], float | None] = {}
    for key, matrix in item_matrices.items():
        try:
            alphas[key] = cronbach_alpha(matrix)
        except DegenerateDataError:
            alphas[key] = None

    def alpha_ok(key: tuple[str, str]) -> bool:
        return alphas[key] is not None and alphas[key] >= ALPHA_VALIDITY_THRESHOLD

    measures = [
        MeasureRow("NARS Score", descriptives(nars)),
        MeasureRow("PTT Score", descriptives(ptt)),
    ]
    excluded: list[str] = []
    for name, key in _GODSPEED_ROWS.items():
        measures.append(MeasureRow(name, descriptives(scores[key]), alpha=alphas[key]))
        if not alpha_ok(key):
            excluded.append(name)
    measures.append(MeasureRow("Skeletal Success Rate", descriptives(success["skeletal"])))
    measures.append(MeasureRow("Landmark Success Rate", descriptives(success["landmark"])))

    def compare(name: str, a: list[float], b: list[float], gate_keys) -> ComparisonRow:
        for key in gate_keys:
            if not alpha_ok(key):
                return ComparisonRow(name, None,
                                     excluded_reason=f"alpha below {ALPHA_VALIDITY_THRESHOLD}")
        try:
            return ComparisonRow(name, wilcoxon_signed_rank(list(zip(a, b))))
        except DegenerateDataError as exc:
            return ComparisonRow(name, None, excluded_reason=f"degenerate: {exc}")

    comparisons = [
        compare("Intelligence (skeletal vs landmark)",
                scores[("skeletal", "intelligence")], scores[("landmark", "intelligence")],
                [("skeletal", "intelligence"), ("landmark", "intelligence")]),
        compare("Animacy (skeletal vs landmark)",
                scores[("skeletal", "animacy")], scores[("landmark", "animacy")],
                [("skeletal", "animacy"), ("landmark", "animacy")]),
        compare("Task success (skeletal vs landmark)",
                success["skeletal"], success["landmark"], []),
    ]

    def correlate(a_name, a_vals, b_name, b_vals, gate_keys) -> CorrelationRow:
        for key in gate_keys:
            if not alpha_ok(key):
                return CorrelationRow(a_name, b_name, None,
                                      excluded_reason=f"alpha below {ALPHA_VALIDITY_THRESHOLD}")
        try:
            return CorrelationRow(a_name, b_name, pearson_r(a_vals, b_vals))
        except (DegenerateDataError, ValueError) as exc:
            return CorrelationRow(a_name, b_name, None, excluded_reason=f"degenerate: {exc}")

    skl_int = scores[("skeletal", "intelligence")]
    lnd_int = scores[("landmark", "intelligence")]
    correlations = [
        correlate("NARS Score", nars, "PTT Score", ptt, []),
        correlate("NARS Score", nars, "Skl. Intelligence Score", skl_int,
                  [("skeletal", "intelligence")]),
        correlate("PTT Score", ptt, "Skl. Intelligence Score", skl_int,
                  [("skeletal", "intelligence")]),
        correlate("NARS Score", nars, "Lnd. Intelligence Score", lnd_int,
                  [("landmark", "intelligence")]),
        correlate("PTT Score", ptt, "Lnd. Intelligence Score", lnd_int,
                  [("landmark", "intelligence")]),
    ]

    return StatsReport(
        n=n,
        measures=tuple(measures),
        comparisons=tuple(comparisons),
        correlations=tuple(correlations),
        excluded_scales=tuple(excluded),
    )


def render_markdown(report: StatsReport) -> str:
    """Markdown tables shaped like the study's descriptive and correlation tables."""
    lines = [
        f"# Study analysis (N={report.n})",
        "",
        "## Descriptive statistics",
        "",
        "| Measure | Median | Mean | Std. Deviation | Minimum | Maximum | Cronbach's a |",
        "|---|---|---|---|---|---|---|",
    ]
    for row in report.measures:
        alpha = f"{row.alpha:.2f}" if row.alpha is not None else "-"
        lines.append(
            f"| {row.name} | {row.stats.median:.3f} | {row.stats.mean:.3f} "
            f"| {row.stats.sd:.3f} | {row.stats.minimum:.3f} | {row.stats.maximum:.3f} "
            f"| {alpha} |"
        )
    lines += ["", "## Condition comparisons (Wilcoxon signed-rank)", "",
              "| Comparison | n | z | p (approx) | p (exact) | Note |", "|---|---|---|---|---|---|"]
    for row in report.comparisons:
        if row.result is None:
            lines.append(f"| {row.name} | - | - | - | - | {row.excluded_reason} |")
        else:
            res = row.result
            p_exact = f"{res.p_exact:.4f}" if res.p_exact is not None else "-"
            lines.append(
                f"| {row.name} | {res.n_total} | {res.z:.2f} | {res.p_approx:.4f} "
                f"| {p_exact} | {res.method} |"
            )
    lines += ["", "## Correlations (Pearson's r)", "",
              "| | | Pearson's r | p | |", "|---|---|---|---|---|"]
    for row in report.correlations:
        if row.result is None:
            lines.append(f"| {row.a} | {row.b} | - | - | {row.excluded_reason} |")
        else:
            mark = "*" if row.significant else ""
            lines.append(
                f"| {row.a} | {row.b} | {row.result.r:.3f} "
                f"| {row.result.p_two_tailed:.3f} | {mark} |"
            )
    if report.excluded_scales:
        lines += ["", "Excluded sub-scales (alpha < "
                  f"{ALPHA_VALIDITY_THRESHOLD}): " + ", ".join(report.excluded_scales)]
    return "\n".join(lines) + "\n"
