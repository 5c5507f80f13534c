"""Regime classification and size predictions for i(H^k(n, p)), plus the
probability-bound calculators for the random-subgraph transference bounds.

Finite-n reading of the asymptotic conditions: with margin m,
``p <= (1/D)/m`` counts as p << 1/D and ``p >= m/D`` as p >> 1/D.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ParameterError
from .kneser import kneser_params

SUB_D = "sub_D"
FLAT_LOWER = "flat_lower"
FLAT_UPPER = "flat_upper"
PRINCIPAL = "principal"
GAP = "gap"
TAGS = (SUB_D, FLAT_LOWER, FLAT_UPPER, PRINCIPAL, GAP)

DEFAULT_MARGIN = 10.0
DEFAULT_EPSILON = 0.1
DEFAULT_C = 1.0


@dataclass(frozen=True)
class Thresholds:
    p1: float  # 1/D
    p2: float  # (n/k)/D
    p3: float  # (n/k)^(1-eps)/D
    p4: float  # C (n/k) ln^2(n/k) / D


@dataclass(frozen=True)
class RegimePrediction:
    regime: str
    predicted_size: float
    lower: float
    upper: float
    epsilon: float
    C: float


def thresholds(n: int, k: int, epsilon: float = DEFAULT_EPSILON, C: float = DEFAULT_C) -> Thresholds:
    kp = kneser_params(n, k)
    log_D = math.log(kp.D)
    r = n / k
    lr = math.log(r)
    return Thresholds(
        p1=math.exp(-log_D),
        p2=math.exp(lr - log_D),
        p3=math.exp((1 - epsilon) * lr - log_D),
        p4=math.exp(math.log(C) + lr + 2 * math.log(lr) - log_D),
    )


def _tag(p: float, th: Thresholds, margin: float) -> str:
    if p >= th.p4:
        return PRINCIPAL
    if p <= th.p1 / margin:
        return SUB_D
    if p < th.p1 * margin:
        return GAP
    if p <= th.p3:
        return FLAT_UPPER
    if p <= th.p2:
        return FLAT_LOWER
    return GAP


class _Model:
    """Regime formulas for one (n, k, epsilon, C, margin)."""

    def __init__(self, n, k, epsilon, C, margin):
        kp = kneser_params(n, k)
        self.n, self.k, self.N, self.D = n, k, kp.N, kp.D
        self.epsilon, self.C, self.margin = epsilon, C, margin
        self.th = thresholds(n, k, epsilon, C)
        th = self.th
        self.a, self.b = th.p1 / margin, th.p1 * margin
        self.breaks = sorted({self.a, self.b, th.p3, th.p2, th.p4})

    def tag(self, p: float) -> str:
        return _tag(p, self.th, self.margin)

    def tag_left_of(self, c: float) -> str:
        return self.tag(c * (1 - 1e-12))

    def flat(self, p: float) -> float:
        return self.N / self.D * math.log(p * self.D)

    def star(self, p: float) -> float:
        return p * self.k / self.n * self.N

    def raw(self, tag: str, p: float) -> tuple[float, float, float]:
        """(lower, predicted, upper) from the regime's own formula."""
        eps, N = self.epsilon, self.N
        if tag == SUB_D:
            return (1 - eps) * p * N, p * N, (1 + eps) * p * N
        if tag == PRINCIPAL:
            v = self.star(p)
            return (1 - eps) * v, v, (1 + eps) * v
        if tag == FLAT_UPPER:
            v = self.flat(p)
            return (1 - eps) * v, v, max(self.C * v, v)
        if tag == FLAT_LOWER:
            v = self.flat(p)
            return (1 - eps) * v, v, max(v, (1 + eps) * self.star(self.th.p4))
        # gap: log-linear interpolation between the neighbouring regimes' values
        th = self.th
        flat_hi = min(th.p2, th.p4)
        has_flat = self.b <= flat_hi
        if has_flat and p > th.p2:
            L, vL, R, vR = th.p2, self.flat(th.p2), th.p4, self.star(th.p4)
        elif has_flat:
            L, vL, R, vR = self.a, self.a * N, self.b, self.flat(self.b)
        else:
            L, vL, R, vR = self.a, self.a * N, th.p4, self.star(th.p4)
        if vL > 0 and vR > 0 and R > L:
            t = math.log(p / L) / math.log(R / L)
            v = math.exp((1 - t) * math.log(vL) + t * math.log(vR))
        else:
            v = max(vL, vR)
        upper = (1 + eps) * (p * N if p < self.b else self.star(th.p4))
        return min(vL, v), v, max(upper, v)


def classify_and_predict(
    n: int,
    k: int,
    p: float,
    epsilon: float = DEFAULT_EPSILON,
    C: float = DEFAULT_C,
    margin: float = DEFAULT_MARGIN,
) -> RegimePrediction:
    """Regime tag and predicted largest intersecting family in H^k(n, p).

    Inside a gap the prediction interpolates (in log p) between the values
    of the regimes on either side.  The result is made non-decreasing in p
    by a running maximum over regime right ends to the left of p, since
    i(H) itself is monotone in p.
    """
    if not (0 < p <= 1):
        raise ParameterError(f"p must lie in (0, 1], got {p}")
    if margin < 1:
        raise ParameterError("margin must be at least 1")
    model = _Model(n, k, epsilon, C, margin)
    tag = model.tag(p)
    lower, predicted, upper = model.raw(tag, p)
    for c in model.breaks:
        if c <= p:
            predicted = max(predicted, model.raw(model.tag_left_of(c), c)[1])
    return RegimePrediction(tag, predicted, min(lower, predicted), max(upper, predicted), epsilon, C)


# ---------------------------------------------------------------------------
# transference bounds


def default_constants(epsilon: float, delta: float) -> float:
    """Conservative default for C: max(800/eps^3, 100/delta^4)."""
    return max(800.0 / epsilon**3, 100.0 / delta**4)


def _prob(log_value: float) -> float:
    return math.exp(min(0.0, log_value))


@dataclass(frozen=True)
class TransferenceBounds:
    case_ii_size_threshold: float | None
    case_ii_prob: float | None
    case_iii_size_threshold: float
    case_iii_prob: float
    case_iv_prob: float
    log_case_ii_prob: float | None = None
    log_case_iii_prob: float = 0.0
    log_case_iv_prob: float = 0.0
    applicable: dict[str, bool] = field(default_factory=dict)


def transference_bounds(
    N: float,
    D: float,
    p: float,
    lam: float,
    gamma: float,
    epsilon: float,
    delta: float,
    C: float | None = None,
) -> TransferenceBounds:
    """Size thresholds and failure probabilities for parts (ii)-(iv).

    Part (ii) is reported as None when pD < 1 (ln(pD) < 0).  ``case_iv_prob``
    is the failure probability exp(-delta^2 lambda p N / 2); the structural
    statement holds with probability at least one minus it.  ``applicable``
    records whether p lies in each part's stated range, using C (default:
    ``default_constants``).
    """
    if not (0 < p <= 1) or N <= 0 or D <= 0:
        raise ParameterError("need N, D > 0 and p in (0, 1]")
    if not (0 < lam <= 1 and 0 < gamma <= 1) or epsilon < 0 or delta < 0:
        raise ParameterError("need lambda, gamma in (0, 1] and epsilon, delta >= 0")
    if C is None:
        C = default_constants(epsilon or 1.0, delta or 1.0)
    pD = p * D
    if pD >= 1:
        lpd = math.log(pD)
        thr_ii = 4 * N / (epsilon * gamma * D) * lpd if epsilon > 0 else math.inf
        log_ii = -(N / (gamma * D)) * lpd
        prob_ii = _prob(log_ii)
    else:
        thr_ii = prob_ii = log_ii = None
    log_iii = -(epsilon**2) * p * lam * N / 24
    log_iv = -(delta**2) * lam * p * N / 2
    le = math.log(math.e / lam)
    applicable = {
        "ii": pD >= 9 and p <= lam**epsilon / (lam * gamma * D),
        "iii": p >= C / (lam * gamma * D) * le**2,
        "iv": p >= C / (lam * D) * le**2,
    }
    return TransferenceBounds(
        case_ii_size_threshold=thr_ii,
        case_ii_prob=prob_ii,
        case_iii_size_threshold=(1 + epsilon) * lam * p * N,
        case_iii_prob=_prob(log_iii),
        case_iv_prob=_prob(log_iv),
        log_case_ii_prob=log_ii,
        log_case_iii_prob=log_iii,
        log_case_iv_prob=log_iv,
        applicable=applicable,
    )
