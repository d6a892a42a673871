"""Detection machinery: exact marginals, second moments, tests, experiments.

The overlap of a uniform unit vector with any fixed direction has density
proportional to (1 - t^2)^((n-3)/2) on [-1, 1]. Everything here that
integrates against that density substitutes t = sin(theta) first: the
integrand becomes cos(theta)^(n-2) times a smooth factor on
[-pi/2, pi/2], which kills the n = 2 endpoint singularity and makes the
trapezoid rule converge spectrally fast (endpoint derivatives vanish).

Second moments of the likelihood ratio are computed self-normalized: the
numerator and the density normalization use the same nodes and weights, so
shared quadrature error cancels and zero signal strength returns exactly 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp, roots_legendre

from .ensembles import (
    STREAM_TEST,
    EnsembleSpec,
    batch_statistics,
    sample_sphere,
    sub_seed_hex,
    trial_rng,
)
from .errors import ConfigError, ContractError, NumericalFailure
from .spectra import eigvals_sym, ks_distance
from .tensors import DenseTensor, frobenius, operator_norm_lb

_LOG_TOL_1D = 1e-10
_MC_STREAM = 5
_TV_VACUOUS = "vacuous"


def _check_dim(n) -> int:
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ContractError(f"dimension n must be an integer >= 2, got {n!r}")
    return int(n)


def _check_order(k) -> int:
    if not isinstance(k, (int, np.integer)) or not 2 <= k <= 10:
        raise ContractError(f"order k must be an integer in [2, 10], got {k!r}")
    return int(k)


def log_cn(n: int) -> float:
    """Log normalizer of the first-coordinate density on the unit sphere."""
    n = _check_dim(n)
    return math.lgamma(n / 2.0) - 0.5 * math.log(math.pi) - math.lgamma((n - 1) / 2.0)


def first_coord_log_density(t: float, n: int) -> float:
    """Log density of one coordinate of a uniform point on the sphere in R^n.

    At |t| = 1 the value is -inf for n > 3, the constant log(1/2) for n = 3,
    and +inf for n = 2 (integrable endpoint blowup).
    """
    n = _check_dim(n)
    if not math.isfinite(t) or abs(t) > 1.0:
        raise ContractError(f"t must lie in [-1, 1], got {t!r}")
    if abs(t) == 1.0:
        if n == 2:
            return float("inf")
        if n == 3:
            return log_cn(3)
        return float("-inf")
    return log_cn(n) + 0.5 * (n - 3) * math.log1p(-(t * t))


def _log_trapezoid(values: np.ndarray, h: float) -> float:
    """log of the trapezoid rule applied to exp(values) with spacing h."""
    w = np.zeros_like(values)
    w[0] = w[-1] = math.log(0.5)
    return float(logsumexp(values + w)) + math.log(h)


def first_coord_tail_logprob(a: float, n: int) -> float:
    """log P(first coordinate >= a), by log-space Gauss-Legendre in theta.

    The integrand cos(theta)^(n-2) decays geometrically away from its
    maximum, so the interval is first cut where the log integrand has
    fallen by 140 (a relative exp(-140) truncation), then Gauss-Legendre
    node counts are doubled until the log value moves by less than 1e-10.
    """
    n = _check_dim(n)
    if not math.isfinite(a) or abs(a) > 1.0:
        raise ContractError(f"a must lie in [-1, 1], got {a!r}")
    if a == 1.0:
        return float("-inf")
    if a == -1.0:
        return 0.0
    lo = math.asin(a)
    hi = math.pi / 2.0
    if n > 3:
        peak_cos = 1.0 if lo < 0.0 else math.cos(lo)
        hi = min(hi, math.acos(peak_cos * math.exp(-140.0 / (n - 2))))
    lc = log_cn(n)
    prev = None
    for m in (128, 256, 512, 1024, 2048, 4096):
        x, w = roots_legendre(m)
        half = 0.5 * (hi - lo)
        theta = 0.5 * (hi + lo) + half * x
        vals = lc + (n - 2) * np.log(np.cos(theta)) + np.log(w)
        cur = float(logsumexp(vals)) + math.log(half)
        if prev is not None and abs(cur - prev) <= _LOG_TOL_1D:
            return cur
        prev = cur
    raise NumericalFailure(
        "tail probability quadrature did not stabilize", partial={"log_prob": prev}
    )


@dataclass(frozen=True)
class SecondMomentResult:
    """Log second moment of a likelihood ratio plus its error diagnostics.

    ``implied_tv_upper`` is sqrt(exp(L) - 1)/2 when that is an informative
    bound and the string "vacuous" when it reaches 1 or overflows.
    ``quadrature_error`` is the last node-doubling increment for quadrature
    and the relative standard error for the Monte Carlo path.
    """

    model: str
    k: int
    n: int
    strength: float
    log_second_moment: float
    quadrature_error: float
    implied_tv_upper: float | str
    method: str
    nodes: int

    def to_json_dict(self) -> dict:
        return {
            "model": self.model,
            "k": self.k,
            "n": self.n,
            "strength": self.strength,
            "log_second_moment": self.log_second_moment,
            "quadrature_error": self.quadrature_error,
            "implied_tv_upper": self.implied_tv_upper,
            "method": self.method,
            "nodes": self.nodes,
        }


def _implied_tv(log_sm: float):
    if log_sm > 700.0:
        return _TV_VACUOUS
    excess = math.expm1(log_sm)
    if excess <= 0.0:
        # Monte Carlo estimates may sit a hair below a unit second moment
        return 0.0
    bound = 0.5 * math.sqrt(excess)
    return bound if bound < 1.0 else _TV_VACUOUS


def _clamp_log_moment(log_sm: float, context: str) -> float:
    # The second moment is >= 1 for every model here (Jensen against a
    # centered overlap), so a tiny negative value is quadrature noise.
    if log_sm >= 0.0:
        return log_sm
    if log_sm >= -1e-9:
        return 0.0
    raise NumericalFailure(
        f"{context} produced log second moment {log_sm}, below the noise floor",
        partial={"log_second_moment": log_sm},
    )


def _check_strength(value: float, name: str) -> float:
    if not math.isfinite(value) or value < 0:
        raise ContractError(f"{name} must be finite and >= 0, got {value!r}")
    return float(value)


def second_moment_sym(beta: float, n: int, k: int) -> SecondMomentResult:
    """Second moment of the symmetric-model likelihood ratio under noise.

    Computes E exp(n beta^2 T^k / 2) with T the overlap of two independent
    uniform directions, as a self-normalized theta-space trapezoid.
    """
    n = _check_dim(n)
    k = _check_order(k)
    beta = _check_strength(beta, "beta")
    if beta == 0.0:
        return SecondMomentResult("sym", k, n, 0.0, 0.0, 0.0, 0.0, "quadrature", 0)
    half_nb2 = 0.5 * n * beta * beta
    prev = None
    cur = 0.0
    err = math.inf
    m = 0
    for p in range(14, 22):
        m = 2**p
        theta, h = np.linspace(-math.pi / 2.0, math.pi / 2.0, m + 1, retstep=True)
        dens = (n - 2) * np.log(np.cos(theta))
        num = dens + half_nb2 * np.sin(theta) ** k
        cur = _log_trapezoid(num, float(h)) - _log_trapezoid(dens, float(h))
        if prev is not None:
            err = abs(cur - prev)
            if err <= max(1e-10, 1e-9 * abs(cur)):
                break
        prev = cur
    else:
        raise NumericalFailure(
            "second moment quadrature did not stabilize",
            partial={"log_second_moment": cur, "quadrature_error": err},
        )
    log_sm = _clamp_log_moment(cur, "symmetric quadrature")
    return SecondMomentResult(
        "sym", k, n, beta, log_sm, err, _implied_tv(log_sm), "quadrature", m + 1
    )


def _asym_safe_radius(lam: float, n: int, k: int):
    """Largest-coordinate cutoff outside which the overlap mass is negligible.

    Scans an upper bound for the rate function on the shell max|t_i| = r
    (one coordinate pinned at r, the rest relaxed through an AM-GM bound)
    and returns the smallest r whose suffix maximum stays below -80/n, so
    everything dropped is exp(-80) relative to the bulk, secondary bumps
    included. Returns None when no such radius exists (supercritical lam).
    """
    if n <= 4:
        return None
    c2 = (n - 3) / (2.0 * n)
    rs = np.linspace(1e-6, 1.0 - 1e-9, 2001)
    base = c2 * np.log1p(-(rs**2))
    # inner max over the free coordinates, one row per pinned radius
    inner = lam * lam * np.outer(rs, rs ** (k - 1)) / (k - 1) + base[None, :]
    face = base + (k - 1) * inner.max(axis=1)
    suffix = np.maximum.accumulate(face[::-1])[::-1]
    ok = (suffix <= -80.0 / n) & (rs >= min(1.0, 24.0 / math.sqrt(n)))
    idx = np.nonzero(ok)[0]
    if idx.size == 0:
        return None
    return float(rs[idx[0]])


def _asym_quad_k2(lam: float, n: int, theta_max: float):
    half = n * lam * lam
    prev = None
    cur = 0.0
    err = math.inf
    m = 0
    for p in range(11, 14):
        m = 2**p
        theta, h = np.linspace(-theta_max, theta_max, m + 1, retstep=True)
        base = (n - 2) * np.log(np.cos(theta))
        base[0] += math.log(0.5)
        base[-1] += math.log(0.5)
        s = np.sin(theta)
        log_den = float(logsumexp(base))
        blocks = []
        for i0 in range(0, m + 1, 256):
            i1 = min(i0 + 256, m + 1)
            e = base[i0:i1, None] + base[None, :] + half * np.outer(s[i0:i1], s)
            blocks.append(logsumexp(e))
        cur = float(logsumexp(np.array(blocks))) - 2.0 * log_den
        if prev is not None:
            err = abs(cur - prev)
            if err <= max(1e-9, 1e-9 * abs(cur)):
                break
        prev = cur
    return cur, err, m + 1


def _asym_quad_k3(lam: float, n: int, theta_max: float):
    coef = n * lam * lam
    prev = None
    cur = 0.0
    err = math.inf
    m = 0
    for p in range(8, 10):
        m = 2**p
        theta, h = np.linspace(-theta_max, theta_max, m + 1, retstep=True)
        base = (n - 2) * np.log(np.cos(theta))
        base[0] += math.log(0.5)
        base[-1] += math.log(0.5)
        s = np.sin(theta)
        log_den = float(logsumexp(base))
        pair = base[:, None] + base[None, :]
        ss = np.outer(s, s)
        planes = np.empty(m + 1)
        for i in range(m + 1):
            planes[i] = logsumexp(pair + (coef * s[i]) * ss)
        cur = float(logsumexp(base + planes)) - 3.0 * log_den
        if prev is not None:
            err = abs(cur - prev)
            if err <= max(1e-7, 1e-7 * abs(cur)):
                break
        prev = cur
    return cur, err, m + 1


def second_moment_asym(
    lam: float, n: int, k: int, *, mc_samples: int = 1 << 17, seed: int = 0
) -> SecondMomentResult:
    """Second moment E exp(n lam^2 T_1 ... T_k) for independent overlaps.

    Orders 2 and 3 use a tensor-product theta quadrature restricted to a
    provably sufficient box; higher orders fall back to Monte Carlo over
    exact overlap marginals (T^2 ~ Beta(1/2, (n-1)/2) with a random sign),
    reporting the relative standard error in ``quadrature_error``. The
    Monte Carlo value is returned unclamped, so it can sit slightly below
    0 within its own noise.
    """
    n = _check_dim(n)
    k = _check_order(k)
    lam = _check_strength(lam, "lam")
    if lam == 0.0:
        return SecondMomentResult("asym", k, n, 0.0, 0.0, 0.0, 0.0, "quadrature", 0)
    if k in (2, 3):
        radius = _asym_safe_radius(lam, n, k)
        theta_max = math.pi / 2.0 if radius is None else math.asin(min(radius, 1.0))
        if k == 2:
            cur, err, nodes = _asym_quad_k2(lam, n, theta_max)
        else:
            cur, err, nodes = _asym_quad_k3(lam, n, theta_max)
        log_sm = _clamp_log_moment(cur, "asymmetric quadrature")
        return SecondMomentResult(
            "asym", k, n, lam, log_sm, err, _implied_tv(log_sm), "quadrature", nodes
        )
    if mc_samples < 2:
        raise ContractError(f"mc_samples must be >= 2, got {mc_samples!r}")
    rng = trial_rng(seed, 0, _MC_STREAM)
    t2 = rng.beta(0.5, (n - 1) / 2.0, size=(mc_samples, k))
    signs = 2.0 * rng.integers(0, 2, size=(mc_samples, k)) - 1.0
    expo = n * lam * lam * np.prod(signs * np.sqrt(t2), axis=1)
    log_sm = float(logsumexp(expo)) - math.log(mc_samples)
    log_m2 = float(logsumexp(2.0 * expo)) - math.log(mc_samples)
    rel_var = math.expm1(min(log_m2 - 2.0 * log_sm, 700.0))
    rel_se = math.sqrt(max(rel_var, 0.0) / mc_samples)
    return SecondMomentResult(
        "asym", k, n, lam, log_sm, rel_se, _implied_tv(log_sm), "monte_carlo", mc_samples
    )


@dataclass(frozen=True)
class LikelihoodRatioEstimate:
    """Monte Carlo likelihood ratio with linear- and log-scale values.

    ``dominated`` flags runs where one sampled direction carries more than
    99% of the total weight, i.e. the average is untrustworthy.
    """

    log_estimate: float
    estimate: float
    std_error: float
    dominated: bool
    n_samples: int


def _contract_all(arr: np.ndarray, v: np.ndarray) -> float:
    w = arr
    for _ in range(arr.ndim):
        w = np.tensordot(w, v, axes=([w.ndim - 1], [0]))
    return float(w)


def likelihood_ratio_mc(
    x, beta: float, n_samples: int = 2048, rng: np.random.Generator | None = None
) -> LikelihoodRatioEstimate:
    """Estimate the spiked-vs-noise likelihood ratio by spherical averaging.

    Averages exp((n beta / 2) <X, v^(x)k> - n beta^2 / 4) over uniform
    directions v. Zero beta short-circuits to the exact value 1.
    """
    beta = _check_strength(beta, "beta")
    arr = x.array if isinstance(x, DenseTensor) else np.asarray(x, dtype=np.float64)
    if arr.ndim < 2 or len(set(arr.shape)) != 1:
        raise ContractError("likelihood_ratio_mc expects a cubic tensor of order >= 2")
    n = arr.shape[0]
    if beta == 0.0:
        return LikelihoodRatioEstimate(0.0, 1.0, 0.0, False, 0)
    if n_samples < 2:
        raise ContractError(f"n_samples must be >= 2, got {n_samples!r}")
    if rng is None:
        rng = np.random.default_rng(0)
    shift = -0.25 * n * beta * beta
    logw = np.empty(n_samples)
    for j in range(n_samples):
        v = sample_sphere(n, rng).coords
        logw[j] = 0.5 * n * beta * _contract_all(arr, v) + shift
    top = float(np.max(logw))
    u = np.exp(logw - top)
    total = float(np.sum(u))
    log_est = top + math.log(total / n_samples)
    estimate = float(np.exp(log_est))
    std_error = float(np.exp(top) * np.std(u, ddof=1) / math.sqrt(n_samples))
    dominated = bool(np.max(u) / total > 0.99)
    return LikelihoodRatioEstimate(log_est, estimate, std_error, dominated, n_samples)


def trace_stat(x) -> float:
    """Sum of diagonal entries of a matrix-shaped sample."""
    arr = x.array if isinstance(x, DenseTensor) else np.asarray(x, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ContractError("trace_stat expects a square matrix")
    return float(np.trace(arr))


def trace_test(x, beta: float, threshold: float | None = None) -> int:
    """Accept the spike when the trace exceeds the midpoint beta/2.

    Under noise the trace is N(0, 2); a rank-one unit spike of size beta
    shifts its mean to beta, so the likelihood ratio test thresholds at
    the midpoint.
    """
    beta = _check_strength(beta, "beta")
    cut = 0.5 * beta if threshold is None else float(threshold)
    return int(trace_stat(x) >= cut)


def trace_tv(beta: float) -> float:
    """Total variation distance between N(0, 2) and N(beta, 2)."""
    beta = _check_strength(beta, "beta")
    return math.erf(beta / 4.0)


def spectral_test_eig(x, delta: float = 0.15) -> int:
    """Accept when the top eigenvalue clears the bulk edge by delta."""
    if not math.isfinite(delta) or delta <= 0:
        raise ContractError(f"delta must be finite and > 0, got {delta!r}")
    return int(eigvals_sym(x).largest >= 2.0 + delta)


STATISTICS = ("eig", "trace", "lr", "frob", "opnorm")


def make_statistic(name: str, params: dict | None = None):
    """Build a named per-trial statistic callable for batch evaluation.

    The callable takes the sampled tensor plus keyword context
    (spec, trial, context) and returns a float. Randomized statistics
    ("lr", "opnorm") derive their generator from the trial coordinates on
    a stream separate from sampling, so results do not depend on worker
    count or evaluation order.
    """
    params = dict(params or {})
    if name == "eig":
        return lambda x, **kw: eigvals_sym(x).largest
    if name == "trace":
        return lambda x, **kw: trace_stat(x)
    if name == "frob":
        return lambda x, **kw: frobenius(x)
    if name == "lr":
        beta = params.get("beta")
        if beta is None:
            raise ConfigError("test.params.beta", "the lr statistic needs a strength")
        n_samples = int(params.get("samples", 2048))

        def lr_stat(x, *, spec, trial, context=0, **kw):
            rng = trial_rng(spec.seed, trial, STREAM_TEST, context)
            return likelihood_ratio_mc(x, beta, n_samples, rng).log_estimate

        return lr_stat
    if name == "opnorm":
        restarts = int(params.get("restarts", 8))
        iters = int(params.get("iters", 200))

        def opnorm_stat(x, *, spec, trial, context=0, **kw):
            rng = trial_rng(spec.seed, trial, STREAM_TEST, context)
            return operator_norm_lb(x, restarts=restarts, iters=iters, rng=rng).value

        return opnorm_stat
    raise ConfigError("test.statistic", f"unknown statistic {name!r}; known: {STATISTICS}")


@dataclass(frozen=True)
class ExperimentSpec:
    """Two-hypothesis testing run: null model, alternative model, one test."""

    h0: EnsembleSpec
    h1: EnsembleSpec
    statistic: str
    threshold: float
    trials: int
    seed: int = 0
    params: dict | None = None

    def __post_init__(self):
        if self.statistic not in STATISTICS:
            raise ConfigError(
                "test.statistic", f"unknown statistic {self.statistic!r}; known: {STATISTICS}"
            )
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ConfigError("trials", f"must be a positive integer, got {self.trials!r}")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError("seed", f"must be a nonnegative integer, got {self.seed!r}")
        if not math.isfinite(self.threshold):
            raise ConfigError("test.threshold", f"must be finite, got {self.threshold!r}")

    @classmethod
    def from_json_dict(cls, data: dict) -> "ExperimentSpec":
        if not isinstance(data, dict):
            raise ConfigError("experiment", "expected a JSON object")
        allowed = {"h0", "h1", "test", "trials", "seed"}
        unknown = set(data) - allowed
        if unknown:
            raise ConfigError("experiment", f"unknown fields {sorted(unknown)}")
        for field in ("h0", "h1", "test", "trials"):
            if field not in data:
                raise ConfigError(field, "is required")
        h0 = EnsembleSpec.from_json_dict(data["h0"])
        h1 = EnsembleSpec.from_json_dict(data["h1"])
        test = data["test"]
        if not isinstance(test, dict) or "statistic" not in test:
            raise ConfigError("test", "expected an object with a 'statistic' field")
        t_unknown = set(test) - {"statistic", "threshold", "delta", "params"}
        if t_unknown:
            raise ConfigError("test", f"unknown fields {sorted(t_unknown)}")
        name = test["statistic"]
        params = test.get("params")
        if params is not None and not isinstance(params, dict):
            raise ConfigError("test.params", "expected an object")
        if name == "lr":
            params = dict(params or {})
            params.setdefault("beta", h1.strength)
        threshold = _resolve_threshold(name, test, h1)
        seed = data.get("seed", 0)
        return cls(
            h0=h0,
            h1=h1,
            statistic=name,
            threshold=threshold,
            trials=data["trials"],
            seed=seed,
            params=params,
        )

    def to_json_dict(self) -> dict:
        test: dict = {"statistic": self.statistic, "threshold": self.threshold}
        if self.params:
            test["params"] = dict(self.params)
        return {
            "h0": self.h0.to_json_dict(),
            "h1": self.h1.to_json_dict(),
            "test": test,
            "trials": self.trials,
            "seed": self.seed,
        }


def _resolve_threshold(name: str, test: dict, h1: EnsembleSpec) -> float:
    if "threshold" in test and "delta" in test:
        raise ConfigError("test", "give either 'threshold' or 'delta', not both")
    if "threshold" in test:
        value = test["threshold"]
        if not isinstance(value, (int, float)) or not math.isfinite(value):
            raise ConfigError("test.threshold", f"must be a finite number, got {value!r}")
        return float(value)
    if "delta" in test:
        if name != "eig":
            raise ConfigError("test.delta", "only the eig statistic takes an edge margin")
        value = test["delta"]
        if not isinstance(value, (int, float)) or not math.isfinite(value) or value <= 0:
            raise ConfigError("test.delta", f"must be a positive number, got {value!r}")
        return 2.0 + float(value)
    if name == "trace":
        return 0.5 * h1.strength
    if name == "lr":
        # log likelihood ratio >= 0 is the equal-prior Bayes rule
        return 0.0
    raise ConfigError("test.threshold", f"required for the {name} statistic")


@dataclass(frozen=True)
class ExperimentResult:
    spec: ExperimentSpec
    fpr: float
    power: float
    ks: float
    stats0: np.ndarray
    stats1: np.ndarray
    roc: list
    rows: list

    def to_json_dict(self) -> dict:
        return {
            "experiment": self.spec.to_json_dict(),
            "threshold": self.spec.threshold,
            "trials": self.spec.trials,
            "seed": self.spec.seed,
            "fpr": self.fpr,
            "power": self.power,
            "ks_distance": self.ks,
            "roc": [[float(a), float(b)] for a, b in self.roc],
        }

    def rows_csv(self) -> str:
        lines = ["hypothesis,trial,statistic,decision,sub_seed"]
        for r in self.rows:
            lines.append(
                f"{r['hypothesis']},{r['trial']},{r['statistic']!r},{r['decision']},{r['sub_seed']}"
            )
        return "\n".join(lines) + "\n"


def _roc_curve(stats0: np.ndarray, stats1: np.ndarray) -> list:
    s0 = np.sort(stats0)
    s1 = np.sort(stats1)
    cuts = np.unique(np.concatenate([s0, s1]))
    fpr = 1.0 - np.searchsorted(s0, cuts, side="left") / s0.size
    tpr = 1.0 - np.searchsorted(s1, cuts, side="left") / s1.size
    pts = [(1.0, 1.0)] + list(zip(fpr, tpr)) + [(0.0, 0.0)]
    return pts


def run_experiment(spec: ExperimentSpec, workers: int = 1) -> ExperimentResult:
    """Sample both hypotheses, apply the test, and summarize separation.

    Each hypothesis gets ``spec.trials`` fresh samples on its own stream
    (derived from the experiment seed and the hypothesis index), so the
    null and alternative never share noise. Decisions are statistic >=
    threshold. The reported KS distance is the exact maximum CDF gap
    between the two statistic samples, which is also the best achievable
    |power - fpr| over all thresholds.
    """
    stat = make_statistic(spec.statistic, spec.params)
    batches = []
    for hyp, ens in enumerate((spec.h0, spec.h1)):
        context = spec.seed * 2 + hyp
        batches.append(batch_statistics(ens, spec.trials, stat, workers, context))
    stats0 = batches[0].values
    stats1 = batches[1].values
    decisions0 = stats0 >= spec.threshold
    decisions1 = stats1 >= spec.threshold
    rows = []
    for hyp, batch, dec in ((0, batches[0], decisions0), (1, batches[1], decisions1)):
        for i in range(spec.trials):
            rows.append(
                {
                    "hypothesis": hyp,
                    "trial": i,
                    "statistic": float(batch.values[i]),
                    "decision": int(dec[i]),
                    "sub_seed": batch.sub_seeds[i],
                }
            )
    return ExperimentResult(
        spec=spec,
        fpr=float(np.mean(decisions0)),
        power=float(np.mean(decisions1)),
        ks=ks_distance(stats0, stats1),
        stats0=stats0,
        stats1=stats1,
        roc=_roc_curve(stats0, stats1),
        rows=rows,
    )
