"""Tukey pairwise comparisons across truth categories.

The studentized range CDF is integrated numerically:

    P(Q <= q) = integral_0^inf f_s(s) * W(q*s) ds

where s = chi_df / sqrt(df) and W(w) = P(range of k standard normals <= w)
= k * integral phi(z) * (Phi(z) - Phi(z - w))**(k-1) dz.
The outer integral uses adaptive Gauss-Legendre panels; the inner one a fixed
composite Gauss-Legendre rule over the normal CDF.
"""

import logging
import math
import warnings
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Sequence, Set, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import gammaln, ndtr

from app.config import QUADRATURE_PANEL_BUDGET, QUADRATURE_TOLERANCE
from app.errors import DegenerateGroup, NumericalFailure, ZeroVarianceWarning
from app.models.headline_models import PairwiseMatrix

logger = logging.getLogger(__name__)

# ============================================================
# Transforms
# ============================================================

def _identity(x: np.ndarray) -> np.ndarray:
    return x.copy()


def _signed_log1p(x: np.ndarray) -> np.ndarray:
    return np.sign(x) * np.log1p(np.abs(x))


TRANSFORMS = {
    "identity": _identity,
    "signed_log1p": _signed_log1p,
}


@dataclass(frozen=True)
class Transform:
    kind: str = "identity"

    def __post_init__(self):
        if self.kind not in TRANSFORMS:
            raise ValueError(f"unknown transform {self.kind!r}; expected one of {sorted(TRANSFORMS)}")

    def __call__(self, values: Iterable[float]) -> np.ndarray:
        return TRANSFORMS[self.kind](np.asarray(values, dtype=float))


IDENTITY = Transform("identity")
SIGNED_LOG1P = Transform("signed_log1p")


def apply_transform(values: Sequence[float], t: Transform) -> np.ndarray:
    return t(values)


# ============================================================
# Samples and summaries
# ============================================================

@dataclass(frozen=True)
class MetricSamples:
    metric_name: str
    groups: Mapping[str, np.ndarray]

    def __post_init__(self):
        if len(self.groups) < 2:
            raise DegenerateGroup(f"{self.metric_name}: need at least 2 groups, got {len(self.groups)}")
        frozen = {}
        for label, values in self.groups.items():
            arr = np.array(values, dtype=float)
            if arr.ndim != 1 or arr.size < 2:
                raise DegenerateGroup(f"{self.metric_name}: group {label!r} has {arr.size} values, need 2")
            if not np.all(np.isfinite(arr)):
                raise DegenerateGroup(f"{self.metric_name}: group {label!r} has non-finite values")
            arr.setflags(write=False)
            frozen[label] = arr
        object.__setattr__(self, "groups", frozen)

    @property
    def labels(self) -> List[str]:
        return list(self.groups)

    @classmethod
    def from_pairs(cls, metric_name: str, pairs: Iterable[Tuple[str, float]], order: Sequence[str]) -> "MetricSamples":
        """Group (label, value) pairs; groups appear in `order`, unknown labels are ignored."""
        buckets: Dict[str, List[float]] = {label: [] for label in order}
        for label, value in pairs:
            if label in buckets:
                buckets[label].append(value)
        return cls(metric_name, {label: np.asarray(v, dtype=float) for label, v in buckets.items()})

    def transformed(self, t: Transform) -> "MetricSamples":
        return MetricSamples(self.metric_name, {label: t(v) for label, v in self.groups.items()})


@dataclass(frozen=True)
class GroupSummary:
    label: str
    n: int
    mean: float
    variance: float


@dataclass(frozen=True)
class AnovaContext:
    mse: float
    df: int


def _summary(label: str, values: np.ndarray) -> GroupSummary:
    if values.size < 2:
        raise DegenerateGroup(f"group {label!r} has {values.size} values, need 2")
    if np.all(values == values[0]):
        # exact for constant groups, so identical constants compare equal
        return GroupSummary(label, int(values.size), float(values[0]), 0.0)
    return GroupSummary(label, int(values.size), float(np.mean(values)), float(np.var(values, ddof=1)))


def summarize(samples: MetricSamples) -> Tuple[List[GroupSummary], AnovaContext]:
    summaries = [_summary(label, v) for label, v in samples.groups.items()]
    df = sum(s.n for s in summaries) - len(summaries)
    if df < 1:
        raise DegenerateGroup(f"{samples.metric_name}: no error degrees of freedom")
    mse = sum((s.n - 1) * s.variance for s in summaries) / df
    return summaries, AnovaContext(mse=float(mse), df=int(df))


# ============================================================
# Studentized range distribution
# ============================================================

_SQRT2 = math.sqrt(2.0)

_ORDER = 16
_GL_X, _GL_W = leggauss(_ORDER)

# inner rule: phi(z) is below 1e-16 outside [-8.5, 8.5]
_Z_MAX = 8.5
_Z_PANELS = 17


def _composite_rule(a: float, b: float, panels: int) -> Tuple[np.ndarray, np.ndarray]:
    edges = np.linspace(a, b, panels + 1)
    half = np.diff(edges) / 2.0
    mid = (edges[:-1] + edges[1:]) / 2.0
    nodes = (mid[:, None] + half[:, None] * _GL_X[None, :]).ravel()
    weights = (half[:, None] * _GL_W[None, :]).ravel()
    return nodes, weights


_Z, _ZW = _composite_rule(-_Z_MAX, _Z_MAX, _Z_PANELS)
_PHI_Z = ndtr(_Z)
_PDF_ZW = np.exp(-0.5 * _Z * _Z) / math.sqrt(2.0 * math.pi) * _ZW


def range_cdf(w, k: int) -> np.ndarray:
    """P(max - min of k iid N(0, 1) <= w), elementwise over `w`."""
    w = np.atleast_1d(np.asarray(w, dtype=float))
    if k == 2:
        out = 2.0 * ndtr(w / _SQRT2) - 1.0
    else:
        diff = _PHI_Z[None, :] - ndtr(_Z[None, :] - w[:, None])
        np.clip(diff, 0.0, 1.0, out=diff)
        out = k * (diff ** (k - 1)) @ _PDF_ZW
    out = np.where(w <= 0.0, 0.0, out)
    return np.clip(out, 0.0, 1.0)


def _chi_support(df: float) -> Tuple[float, float]:
    # log-density falls by more than ~50 outside this interval
    reach = math.sqrt(100.0 / df)
    return max(0.0, 1.0 - reach), 1.0 + reach


def _chi_log_norm(df: float) -> float:
    half = df / 2.0
    return math.log(2.0) + half * math.log(half) - float(gammaln(half))


def _panel_integral(a: float, b: float, qs: np.ndarray, k: int, df: float, log_norm: float) -> np.ndarray:
    half = (b - a) / 2.0
    s = (a + b) / 2.0 + half * _GL_X
    log_f = log_norm + (df - 1.0) * np.log(s) - 0.5 * df * s * s
    weights = np.exp(log_f) * _GL_W * half
    W = range_cdf(np.outer(qs, s).ravel(), k).reshape(len(qs), len(s))
    return W @ weights


def _cdf_many(qs: np.ndarray, k: int, df: float, tol: float, panel_budget: int) -> np.ndarray:
    if math.isinf(df):
        return range_cdf(qs, k)

    lo, hi = _chi_support(df)
    log_norm = _chi_log_norm(df)
    width = hi - lo

    edges = np.linspace(lo, hi, 9)
    stack = [(a, b, _panel_integral(a, b, qs, k, df, log_norm)) for a, b in zip(edges[:-1], edges[1:])]
    total = np.zeros_like(qs)
    used = len(stack)

    while stack:
        a, b, coarse = stack.pop()
        m = (a + b) / 2.0
        left = _panel_integral(a, m, qs, k, df, log_norm)
        right = _panel_integral(m, b, qs, k, df, log_norm)
        fine = left + right
        if np.max(np.abs(fine - coarse)) <= tol * (b - a) / width:
            total += fine
            continue
        used += 2
        if used > panel_budget:
            raise NumericalFailure(
                f"studentized range quadrature did not converge within {panel_budget} panels "
                f"(k={k}, df={df})"
            )
        stack.append((a, m, left))
        stack.append((m, b, right))

    return np.clip(total, 0.0, 1.0)


def _check_range_args(k: int, df: float) -> None:
    if int(k) != k or k < 2:
        raise ValueError(f"k must be an integer >= 2, got {k}")
    if not df >= 1:
        raise ValueError(f"df must be >= 1, got {df}")


def studentized_range_cdf(
    q: float,
    k: int,
    df: float,
    *,
    tol: float = QUADRATURE_TOLERANCE,
    panel_budget: int = QUADRATURE_PANEL_BUDGET,
) -> float:
    _check_range_args(k, df)
    if not q >= 0:
        raise ValueError(f"q must be >= 0, got {q}")
    if q == 0:
        return 0.0
    if math.isinf(q):
        return 1.0
    return float(_cdf_many(np.array([float(q)]), int(k), float(df), tol, panel_budget)[0])


def studentized_range_sf(q: float, k: int, df: float, **kwargs) -> float:
    return max(0.0, 1.0 - studentized_range_cdf(q, k, df, **kwargs))


# ============================================================
# Tukey-Kramer
# ============================================================

def pairwise_q(summaries: Sequence[GroupSummary], ctx: AnovaContext) -> Dict[Tuple[int, int], float]:
    """q for every pair i < j; inf when mse is zero and the means differ, 0 when they match."""
    out = {}
    for i, j in combinations(range(len(summaries)), 2):
        a, b = summaries[i], summaries[j]
        diff = abs(a.mean - b.mean)
        if ctx.mse == 0.0:
            out[(i, j)] = 0.0 if diff == 0.0 else math.inf
            continue
        se = math.sqrt(ctx.mse / 2.0 * (1.0 / a.n + 1.0 / b.n))
        out[(i, j)] = diff / se
    return out


def tukey_pairwise(
    samples: MetricSamples,
    t: Transform = IDENTITY,
    *,
    tol: float = QUADRATURE_TOLERANCE,
    panel_budget: int = QUADRATURE_PANEL_BUDGET,
) -> PairwiseMatrix:
    data = samples.transformed(t)
    summaries, ctx = summarize(data)
    k = len(summaries)
    qs = pairwise_q(summaries, ctx)

    p = np.eye(k)
    notes: List[str] = []

    finite = {pair: q for pair, q in qs.items() if 0.0 < q < math.inf}
    if finite:
        pairs = list(finite)
        cdf = _cdf_many(np.array([finite[pair] for pair in pairs]), k, float(ctx.df), tol, panel_budget)
        for (i, j), c in zip(pairs, cdf):
            p[i, j] = p[j, i] = min(1.0, max(0.0, 1.0 - float(c)))

    for (i, j), q in qs.items():
        if q == 0.0:
            p[i, j] = p[j, i] = 1.0
        elif q == math.inf:
            p[i, j] = p[j, i] = 0.0
            notes.append(
                f"{samples.metric_name}: zero pooled variance with unequal means "
                f"for {summaries[i].label} vs {summaries[j].label}; p set to 0"
            )

    for note in notes:
        logger.warning(note)
        warnings.warn(note, ZeroVarianceWarning, stacklevel=2)

    return PairwiseMatrix(
        metric_name=samples.metric_name,
        labels=[s.label for s in summaries],
        p=p.tolist(),
        transform=t.kind,
        warnings=notes,
    )


# ============================================================
# Significance structure
# ============================================================

def separated_pairs(matrix: PairwiseMatrix, alpha: float) -> Set[Tuple[str, str]]:
    labels = matrix.labels
    return {
        (labels[i], labels[j])
        for i, j in combinations(range(len(labels)), 2)
        if matrix.p[i][j] < alpha
    }


def isolated_categories(matrix: PairwiseMatrix, alpha: float) -> List[str]:
    """Categories that differ from every other category at level `alpha`."""
    labels = matrix.labels
    return [
        labels[i]
        for i in range(len(labels))
        if all(matrix.p[i][j] < alpha for j in range(len(labels)) if j != i)
    ]


def block_separation(matrix: PairwiseMatrix, block: Iterable[str], alpha: float) -> bool:
    """True when `block` splits the categories in two: every cross pair significant, no pair inside either side."""
    inside = set(block)
    labels = matrix.labels
    if not inside or not inside < set(labels):
        return False
    for i, j in combinations(range(len(labels)), 2):
        crossing = (labels[i] in inside) != (labels[j] in inside)
        significant = matrix.p[i][j] < alpha
        if crossing != significant:
            return False
    return True
