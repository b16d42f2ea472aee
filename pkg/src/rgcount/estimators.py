"""Unbiased sequential-embedding estimators for k-cliques, k-independent sets and k-clique covers.

A single run embeds a clique one vertex at a time. Step ``i`` draws the next
vertex uniformly from the common neighborhood ``N_i`` of the vertices chosen
so far (``N_0`` is the whole vertex set) and records ``X_i = |N_i|``. The
product ``X_0 ... X_{k-1}`` is the inverse probability of the ordered clique
that was produced, so its expectation is the number of ordered k-cliques;
dividing by ``k!`` gives an unbiased clique count. A failed run outputs 0.

The cover estimator embeds ``n/k`` cliques in sequence into the shrinking
residual graph and divides the product of all step factors by
``(k!)^(n/k) (n/k)!`` once.
"""

from __future__ import annotations

import math
import statistics
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from . import analytic
from .graph import Graph, bits, remove_vertices, root_rng, sample_rng
from .scaled import ZERO, ScaledValue

__all__ = [
    "ConfigurationError",
    "EmbedTrace",
    "SampleConfig",
    "EstimateReport",
    "TARGETS",
    "embed_clique_once",
    "embed_cover_once",
    "clique_value",
    "cover_value",
    "cover_automorphisms",
    "enumerate_paths",
    "exact_expectation",
    "required_samples",
    "sample_plan",
    "resolve_rho",
    "run_samples",
    "estimate",
    "embed_clique_batch",
    "ordered_estimates_gnp",
]

TARGETS = ("cliques", "independent-sets", "covers")
RHO_SAFETY = 4


class ConfigurationError(ValueError):
    """Invalid estimator or sampling configuration, raised before any sampling."""


@dataclass(frozen=True)
class EmbedTrace:
    """One estimator run: chosen vertices in order, the per-step choice-set sizes, success.

    On failure the last factor is the empty choice set's size, 0, so the
    product of ``factors`` always equals :attr:`raw`.
    """

    vertices: tuple[int, ...]
    factors: tuple[int, ...]
    success: bool

    @property
    def raw(self) -> int:
        if not self.success:
            return 0
        return math.prod(self.factors)


def _nth_bit(mask: int, r: int) -> int:
    for i, v in enumerate(bits(mask)):
        if i == r:
            return v
    raise IndexError(r)


def embed_clique_once(g: Graph, k: int, rng) -> EmbedTrace:
    """Run the single-clique embedding once.

    ``rng`` needs only an ``integers(high)`` method returning a uniform int in
    ``[0, high)``, e.g. a :class:`numpy.random.Generator`.
    """
    if k < 1:
        raise ConfigurationError(f"k must be positive, got {k}")
    if k > g.n:
        return EmbedTrace((), (), False)
    cand = g.vertex_mask
    chosen: list[int] = []
    factors: list[int] = []
    for _ in range(k):
        if not cand:
            factors.append(0)
            return EmbedTrace(tuple(chosen), tuple(factors), False)
        x = cand.bit_count()
        factors.append(x)
        v = _nth_bit(cand, int(rng.integers(x)))
        chosen.append(v)
        # adj[v] excludes v, and earlier choices are already outside cand
        cand &= g.adj[v]
    return EmbedTrace(tuple(chosen), tuple(factors), True)


def embed_cover_once(g: Graph, k: int, rng) -> EmbedTrace:
    """Embed ``n/k`` cliques in sequence, removing each from the residual graph.

    Returned vertices are labels of ``g`` (via the residual graphs' label maps),
    grouped clique by clique.
    """
    if k < 1 or g.n % k:
        raise ConfigurationError(f"k={k} must divide n={g.n}")
    res = g
    chosen: list[int] = []
    factors: list[int] = []
    while res.n:
        t = embed_clique_once(res, k, rng)
        factors.extend(t.factors)
        chosen.extend(res.labels[v] for v in t.vertices)
        if not t.success:
            return EmbedTrace(tuple(chosen), tuple(factors), False)
        res = remove_vertices(res, t.vertices)
    return EmbedTrace(tuple(chosen), tuple(factors), True)


def cover_automorphisms(n: int, k: int) -> int:
    """``(k!)^(n/k) (n/k)!``: ordered embedding sequences per unordered cover."""
    return factorial(k) ** (n // k) * factorial(n // k)


def clique_value(trace: EmbedTrace, k: int, exact: bool = False) -> ScaledValue:
    return _scaled(trace.raw, factorial(k), exact)


def cover_value(trace: EmbedTrace, n: int, k: int, exact: bool = False) -> ScaledValue:
    return _scaled(trace.raw, cover_automorphisms(n, k), exact)


def _scaled(raw: int, symmetry: int, exact: bool) -> ScaledValue:
    if raw == 0:
        return ZERO
    if exact:
        return ScaledValue.of(Fraction(raw, symmetry))
    return ScaledValue.from_log(math.log(raw) - math.log(symmetry))


# -- exhaustive path enumeration ----------------------------------------------


class _ScriptedChoices:
    """Stand-in for a Generator that replays a fixed prefix of choices, then picks 0."""

    def __init__(self, prefix: tuple[int, ...]):
        self.prefix = prefix
        self.highs: list[int] = []

    def integers(self, high: int) -> int:
        pos = len(self.highs)
        self.highs.append(high)
        return self.prefix[pos] if pos < len(self.prefix) else 0


def enumerate_paths(
    kernel: Callable[[Graph, int, object], EmbedTrace], g: Graph, k: int
) -> Iterator[tuple[Fraction, EmbedTrace]]:
    """Yield ``(probability, trace)`` for every random-choice path of ``kernel``.

    The kernel itself is driven, once per path, with scripted choices; the
    probabilities of all yielded paths sum to 1.
    """
    stack: list[tuple[int, ...]] = [()]
    while stack:
        prefix = stack.pop()
        script = _ScriptedChoices(prefix)
        trace = kernel(g, k, script)
        prob = Fraction(1)
        for h in script.highs:
            prob /= h
        yield prob, trace
        choices = prefix + (0,) * (len(script.highs) - len(prefix))
        for pos in range(len(prefix), len(script.highs)):
            for r in range(1, script.highs[pos]):
                stack.append(choices[:pos] + (r,))


def exact_expectation(g: Graph, k: int, target: str = "cliques") -> Fraction:
    """Exact expectation of one estimator run on ``g``, summed over all choice paths."""
    if target == "independent-sets":
        g, target = g.complement(), "cliques"
    if target == "cliques":
        if k > g.n:
            return Fraction(0)
        sym = factorial(k)
        kernel = embed_clique_once
    elif target == "covers":
        if k < 1 or g.n % k:
            raise ConfigurationError(f"k={k} must divide n={g.n}")
        sym = cover_automorphisms(g.n, k)
        kernel = embed_cover_once
    else:
        raise ConfigurationError(f"unknown target {target!r}")
    return sum((prob * trace.raw for prob, trace in enumerate_paths(kernel, g, k)), Fraction(0)) / sym


# -- sampling driver ------------------------------------------------------------


@dataclass(frozen=True)
class SampleConfig:
    """Accuracy target and sampling mode.

    ``rho`` bounds the critical ratio ``E[X^2]/E[X]^2``; when ``None`` it is
    derived from the analytic critical ratio of averages (times a safety
    factor of 4) by :func:`resolve_rho`.
    """

    epsilon: float
    delta: float
    rho: float | Fraction | None = None
    mode: str = "fixed"

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ConfigurationError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not 0 < self.delta < 1:
            raise ConfigurationError(f"delta must lie in (0, 1), got {self.delta}")
        if self.rho is not None and self.rho < 1:
            raise ConfigurationError(f"rho must be at least 1, got {self.rho}")
        if self.mode not in ("fixed", "median-of-means"):
            raise ConfigurationError(f"mode must be 'fixed' or 'median-of-means', got {self.mode!r}")


def _frac(x) -> Fraction:
    return Fraction(repr(x)) if isinstance(x, float) else Fraction(x)


def sample_plan(cfg: SampleConfig) -> tuple[int, int]:
    """``(groups, samples_per_group)``.

    fixed: one group of ``ceil(rho / (eps^2 delta))`` (Chebyshev).
    median-of-means: ``ceil(8 ln(1/delta))`` groups of ``ceil(8 rho / eps^2)``.
    """
    if cfg.rho is None:
        raise ConfigurationError("rho is unset; pass it explicitly or resolve it from the model")
    eps, delta, rho = _frac(cfg.epsilon), _frac(cfg.delta), _frac(cfg.rho)
    if cfg.mode == "fixed":
        return 1, math.ceil(rho / (eps * eps * delta))
    groups = math.ceil(8 * math.log(1 / float(delta)))
    return groups, math.ceil(8 * rho / (eps * eps))


def required_samples(cfg: SampleConfig) -> int:
    groups, per_group = sample_plan(cfg)
    return groups * per_group


def resolve_rho(cfg: SampleConfig, n: int, k: int, target: str, p=None) -> Fraction:
    """``cfg.rho`` if set, else 4 times the analytic critical ratio of averages at ``p``."""
    if cfg.rho is not None:
        return _frac(cfg.rho)
    if p is None:
        raise ConfigurationError("rho is unset and no edge probability is known to derive it")
    p = analytic.as_probability(p)
    try:
        if target == "cliques":
            crr = analytic.crr_clique(k, n, p)
        elif target == "independent-sets":
            crr = analytic.crr_clique(k, n, 1 - p)
        elif target == "covers":
            crr = analytic.crr_cover_total(k, n, p)
        else:
            raise ConfigurationError(f"unknown target {target!r}")
    except analytic.UndefinedRatioError as exc:
        raise ConfigurationError(f"cannot derive rho: {exc}") from exc
    return RHO_SAFETY * crr


def _check_target(g: Graph, k: int, target: str) -> None:
    if target not in TARGETS:
        raise ConfigurationError(f"unknown target {target!r}; expected one of {TARGETS}")
    if k < 1:
        raise ConfigurationError(f"k must be positive, got {k}")
    if target == "covers" and g.n % k:
        raise ConfigurationError(f"covers need k | n, got k={k}, n={g.n}")


def run_samples(g: Graph, k: int, target: str, seed: int, count: int, start: int = 0) -> list[int]:
    """Raw (pre-symmetry) outputs of samples ``start .. start+count-1``.

    Sample ``i`` draws only from substream ``i`` of ``seed``; independent-set
    samples run the clique kernel on the complement.
    """
    _check_target(g, k, target)
    if target == "covers":
        kernel = embed_cover_once
    else:
        kernel = embed_clique_once
        if target == "independent-sets":
            g = g.complement()
    return [kernel(g, k, sample_rng(seed, i)).raw for i in range(start, start + count)]


@dataclass(frozen=True)
class EstimateReport:
    target: str
    n: int
    k: int
    seed: int
    mode: str
    rho: Fraction
    estimate: ScaledValue
    samples: int
    zeros: int
    second_moment: ScaledValue
    variance: ScaledValue
    critical_ratio: float
    ci_low: ScaledValue
    ci_high: ScaledValue
    confidence: float


def estimate(
    g: Graph,
    k: int,
    target: str,
    cfg: SampleConfig,
    seed: int = 0,
    *,
    p=None,
    exact: bool = False,
) -> EstimateReport:
    """Mean (fixed mode) or median of group means of independent estimator runs.

    ``p`` is the model edge probability used to derive ``rho`` when
    ``cfg.rho`` is unset. With ``exact=True`` all moments are exact rationals.

    The confidence interval is Chebyshev's: half-width ``sqrt(var / (T delta))``
    for the plain mean of ``T`` samples, and ``2 sqrt(var / b)`` around the
    median of group means of size ``b``.
    """
    _check_target(g, k, target)
    rho = resolve_rho(cfg, g.n, k, target, p)
    groups, per_group = sample_plan(SampleConfig(cfg.epsilon, cfg.delta, rho, cfg.mode))
    total = groups * per_group
    raws = run_samples(g, k, target, seed, total)
    symmetry = cover_automorphisms(g.n, k) if target == "covers" else factorial(k)
    values = [_scaled(r, symmetry, exact) for r in raws]

    mean = _mean(values)
    if groups == 1:
        point = mean
    else:
        group_means = [_mean(values[i * per_group : (i + 1) * per_group]) for i in range(groups)]
        point = statistics.median_low(group_means)
    second = _mean([v * v for v in values])

    if mean.is_zero:
        variance, ratio = ZERO, math.nan
    elif exact:
        variance = ScaledValue.of(second.exact - mean.exact**2)
        # Cauchy-Schwarz; equality only for constant samples
        ratio = float(second.exact / mean.exact**2)
    else:
        variance, ratio = _float_variance(values, mean)

    if cfg.mode == "fixed":
        half = _sqrt(variance / (total * _frac(cfg.delta)))
    else:
        half = _sqrt(variance / per_group) * 2
    ci_low, ci_high = _minus_floor(point, half), point + half

    return EstimateReport(
        target=target,
        n=g.n,
        k=k,
        seed=seed,
        mode=cfg.mode,
        rho=rho,
        estimate=point,
        samples=total,
        zeros=sum(1 for r in raws if r == 0),
        second_moment=second,
        variance=variance,
        critical_ratio=max(ratio, 1.0) if not math.isnan(ratio) else ratio,
        ci_low=ci_low,
        ci_high=ci_high,
        confidence=1 - float(cfg.delta),
    )


def _mean(values: list[ScaledValue]) -> ScaledValue:
    return ScaledValue.sum(values) / len(values)


def _sqrt(v: ScaledValue) -> ScaledValue:
    return ZERO if v.is_zero else ScaledValue.from_log(v.log / 2)


def _minus_floor(a: ScaledValue, b: ScaledValue) -> ScaledValue:
    """``max(a - b, 0)`` computed in log space."""
    if b.is_zero:
        return a
    if b.log >= a.log:
        return ZERO
    return ScaledValue.from_log(a.log + math.log1p(-math.exp(b.log - a.log)))


def _float_variance(values: list[ScaledValue], mean: ScaledValue) -> tuple[ScaledValue, float]:
    top = max(v.log for v in values)
    scaled = np.exp(np.array([v.log for v in values]) - top)
    m = math.fsum(scaled) / len(scaled)
    sq = math.fsum(scaled * scaled) / len(scaled)
    var = max(sq - m * m, 0.0)
    variance = ScaledValue.from_log(2 * top + math.log(var)) if var > 0 else ZERO
    return variance, sq / (m * m)


# -- vectorised model-averaged sampling -----------------------------------------


def embed_clique_batch(adj: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Ordered raw estimates ``X_0 ... X_{k-1}`` for a batch of graphs, one run each.

    ``adj`` has shape ``(B, n, n)``: symmetric boolean adjacency with a false
    diagonal. Uses the same step rule as :func:`embed_clique_once`.
    Returns float64 (exact while ``n**k < 2**53``).
    """
    adj = np.asarray(adj, dtype=bool)
    batch, n = adj.shape[0], adj.shape[1]
    cand = np.ones((batch, n), dtype=bool)
    raw = np.ones(batch, dtype=np.float64)
    rows = np.arange(batch)
    for _ in range(k):
        x = cand.sum(axis=1)
        raw *= x
        r = rng.integers(0, np.maximum(x, 1))
        v = np.argmax(np.cumsum(cand, axis=1) > r[:, None], axis=1)
        cand &= adj[rows, v]
    return raw


def ordered_estimates_gnp(
    n: int, k: int, p, count: int, seed: int, batch: int = 10_000
) -> np.ndarray:
    """Raw ordered clique estimates over ``count`` fresh ``G(n, p)`` graphs, one run per graph.

    Their second moment estimates the k-nesting ``N(k, n, p)`` and their mean
    estimates ``(n)_k p^C(k,2)``.
    """
    rng = root_rng(seed)
    pf = float(analytic.as_probability(p))
    iu = np.triu_indices(n, 1)
    out = []
    done = 0
    while done < count:
        b = min(batch, count - done)
        upper = np.zeros((b, n, n), dtype=bool)
        upper[:, iu[0], iu[1]] = rng.random((b, iu[0].size)) < pf
        adj = upper | upper.transpose(0, 2, 1)
        out.append(embed_clique_batch(adj, k, rng))
        done += b
    return np.concatenate(out) if out else np.zeros(0)
