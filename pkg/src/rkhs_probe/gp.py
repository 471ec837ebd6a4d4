"""Kriging with smooth stationary kernels and the variance-scale diagnostic.

Model: a centered Gaussian process on [a,b] with covariance sigma2 * k(x-x'),
observed without noise at design points x_1 < ... < x_N.  With
K_N = (sigma2 k(x_i-x_j))_{i,j} and b_N(x) = (sigma2 k(x-x_i))_i:

  conditional mean       mu_N(x)  = F_N^T K_N^{-1} b_N(x)
  conditional variance   C_N(x,x) = sigma2 - b_N(x)^T K_N^{-1} b_N(x)
  scale estimate         sigma2_hat_N = F_N^T K_N^{-1} F_N / N
  discrete BLUE variance var_N = 1 / (F_N^T K_N^{-1} F_N)
  log-likelihood         LL(s) = -(N log(2 pi s) + log det K_N + F^T K^{-1} F / s)/2

so that sigma2_hat_N * N * var_N = 1 identically.  The membership diagnostic
tracks N * sigma2_hat_N along a schedule of equispaced designs: it stays
bounded (at the squared native-space norm of f) exactly when f belongs to
the kernel's native space, and diverges otherwise.

Kernel families (k(0) = 1, all even):

  gaussian:  k(u) = exp(-rate u^2)
  cauchy:    k(u) = 1/(1 + rate u^2); length form 1/(1 + (u/l)^2), rate = 1/l^2
  sinc:      k(u) = sin(u)/u
  bessel:    k(u) = 2 J_1(u)/u
  cosine:    k(u) = cos(freq u)         (rank-2, not strictly positive definite)
  mixture:   k(u) = gamma + (1-gamma) k_inner(u)

Gram matrices of the smooth families are catastrophically ill conditioned,
so every solve runs at escalating binary precision (doubling from the
requested start) until the relative residual max|K w - F| / max|F| drops
below 1e-20, the residual being evaluated with the matrix rebuilt at twice
the solve precision.  A Cholesky breakdown that persists at the 2^16-bit
ceiling is reported as a singular kernel matrix (cosine with N >= 3);
residual stagnation is reported as a precision failure.  Rational kernels
(cauchy, mixtures of cauchy) on rational designs with rational data are
solved in exact arithmetic instead.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import mpmath as mp

from .errors import (DegenerateError, DomainError, ParameterError,
                     PrecisionError, SingularKernelError)
from .moments import SpectralFamily
from .scalars import (DEFAULT_BITS, PRECISION_CEILING_BITS, ExactScalar,
                      format_rational, parse_rational)

RESIDUAL_REL = mp.mpf("1e-20")

GAUSSIAN = "gaussian"
CAUCHY = "cauchy"
SINC = "sinc"
BESSEL = "bessel"
COSINE = "cosine"
MIXTURE = "mixture"
_KERNEL_TAGS = (GAUSSIAN, CAUCHY, SINC, BESSEL, COSINE, MIXTURE)

SLOPE_MEMBER = 0.1
SLOPE_NONMEMBER = 0.5
PLATEAU_REL = 0.05
ACCEL_MIN = 0.01

VERDICT_MEMBER = "consistent-with-membership"
VERDICT_NONMEMBER = "consistent-with-nonmembership"
VERDICT_INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Kernel:
    """Stationary kernel sigma2 * k(x-x') from the closed-form families."""

    kind: str
    rate: Optional[Fraction] = None
    freq: Optional[Fraction] = None
    gamma: Optional[Fraction] = None
    inner: Optional["Kernel"] = None
    sigma2: Fraction = Fraction(1)

    def __post_init__(self):
        if self.kind not in _KERNEL_TAGS:
            raise ParameterError(f"unknown kernel kind {self.kind!r}")
        if self.sigma2 <= 0:
            raise ParameterError(f"sigma2 must be positive, got {self.sigma2}")

    @classmethod
    def gaussian(cls, rate, sigma2=1) -> "Kernel":
        rate = parse_rational(rate)
        if rate <= 0:
            raise ParameterError(f"gaussian kernel rate must be positive, got {rate}")
        return cls(kind=GAUSSIAN, rate=rate, sigma2=parse_rational(sigma2))

    @classmethod
    def cauchy_rate(cls, rate, sigma2=1) -> "Kernel":
        rate = parse_rational(rate)
        if rate <= 0:
            raise ParameterError(f"cauchy kernel rate must be positive, got {rate}")
        return cls(kind=CAUCHY, rate=rate, sigma2=parse_rational(sigma2))

    @classmethod
    def cauchy_length(cls, length, sigma2=1) -> "Kernel":
        length = parse_rational(length)
        if length <= 0:
            raise ParameterError(f"cauchy kernel length must be positive, got {length}")
        return cls.cauchy_rate(1 / length ** 2, sigma2=sigma2)

    @classmethod
    def sinc(cls, sigma2=1) -> "Kernel":
        return cls(kind=SINC, sigma2=parse_rational(sigma2))

    @classmethod
    def bessel(cls, sigma2=1) -> "Kernel":
        return cls(kind=BESSEL, sigma2=parse_rational(sigma2))

    @classmethod
    def cosine(cls, freq, sigma2=1) -> "Kernel":
        freq = parse_rational(freq)
        if freq == 0:
            raise ParameterError("cosine kernel frequency must be nonzero")
        return cls(kind=COSINE, freq=freq, sigma2=parse_rational(sigma2))

    @classmethod
    def mixture(cls, gamma, inner: "Kernel", sigma2=1) -> "Kernel":
        gamma = parse_rational(gamma)
        if not (0 < gamma < 1):
            raise ParameterError(f"mixture weight must lie in (0,1), got {gamma}")
        if not isinstance(inner, Kernel):
            raise ParameterError("mixture inner part must be a Kernel")
        if inner.kind == MIXTURE:
            raise ParameterError("nested mixtures are not supported")
        if inner.sigma2 != 1:
            raise ParameterError("inner kernel of a mixture must have sigma2 = 1")
        return cls(kind=MIXTURE, gamma=gamma, inner=inner, sigma2=parse_rational(sigma2))

    def with_sigma2(self, sigma2) -> "Kernel":
        return Kernel(kind=self.kind, rate=self.rate, freq=self.freq,
                      gamma=self.gamma, inner=self.inner,
                      sigma2=parse_rational(sigma2))

    def label(self) -> str:
        if self.kind == GAUSSIAN:
            return f"gaussian(rate={self.rate})"
        if self.kind == CAUCHY:
            return f"cauchy(rate={self.rate})"
        if self.kind == COSINE:
            return f"cosine(freq={self.freq})"
        if self.kind == MIXTURE:
            return f"mixture(gamma={self.gamma}, {self.inner.label()})"
        return self.kind

    def to_json_dict(self) -> Dict:
        if self.kind == GAUSSIAN:
            params = {"rate": format_rational(self.rate)}
        elif self.kind == CAUCHY:
            params = {"rate": format_rational(self.rate)}
        elif self.kind == COSINE:
            params = {"freq": format_rational(self.freq)}
        elif self.kind == MIXTURE:
            params = {"gamma": format_rational(self.gamma),
                      "inner": self.inner.to_json_dict()}
        else:
            params = {}
        return {"kernel": self.kind, "params": params}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, doc: Dict) -> "Kernel":
        if not isinstance(doc, dict):
            raise ParameterError("kernel document must be a JSON object")
        unknown = set(doc) - {"kernel", "params"}
        if unknown:
            raise ParameterError(f"unknown keys in kernel document: {sorted(unknown)}")
        kind = doc.get("kernel")
        if kind not in _KERNEL_TAGS:
            raise ParameterError(f"unknown kernel tag {kind!r}")
        params = doc.get("params", {})
        if not isinstance(params, dict):
            raise ParameterError("kernel params must be a JSON object")

        def need(keys):
            missing = set(keys) - set(params)
            extra = set(params) - set(keys)
            if missing or extra:
                raise ParameterError(
                    f"kernel {kind!r} expects params {sorted(keys)}, got {sorted(params)}")

        if kind == GAUSSIAN:
            need({"rate"})
            return cls.gaussian(params["rate"])
        if kind == CAUCHY:
            # two printed parameterizations: 1/(1 + rate u^2) and 1/(1 + (u/length)^2)
            if set(params) == {"rate"}:
                return cls.cauchy_rate(params["rate"])
            if set(params) == {"length"}:
                return cls.cauchy_length(params["length"])
            raise ParameterError(
                f"kernel 'cauchy' expects params ['rate'] or ['length'], got {sorted(params)}")
        if kind == COSINE:
            need({"freq"})
            return cls.cosine(params["freq"])
        if kind == MIXTURE:
            need({"gamma", "inner"})
            return cls.mixture(params["gamma"], cls.from_json_dict(params["inner"]))
        need(set())
        return cls(kind=kind)

    @classmethod
    def from_json(cls, text: str) -> "Kernel":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParameterError(f"invalid kernel JSON: {exc}") from exc
        return cls.from_json_dict(doc)


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    pn, qn = isqrt(x.numerator), isqrt(x.denominator)
    if pn * pn == x.numerator and qn * qn == x.denominator:
        return Fraction(pn, qn)
    return None


def matched_spectral_family(kernel: Kernel) -> Optional[SpectralFamily]:
    """The spectral measure whose even moments are the kernel's Taylor data.

    gaussian rate l matches the gaussian family at rate 2l (the family rate
    is the variance of the frequency distribution, exp(-l u^2) =
    exp(-(2l) u^2 / 2)).  A cauchy kernel matches the cauchy family only
    when its rate is a perfect rational square.
    """
    if kernel.kind == GAUSSIAN:
        return SpectralFamily.gaussian(2 * kernel.rate)
    if kernel.kind == CAUCHY:
        root = _rational_sqrt(kernel.rate)
        return SpectralFamily.cauchy(1 / root) if root is not None else None
    if kernel.kind == SINC:
        return SpectralFamily.symmetric_beta(0)
    if kernel.kind == BESSEL:
        return SpectralFamily.symmetric_beta(Fraction(1, 2))
    if kernel.kind == COSINE:
        return SpectralFamily.cosine_atoms(kernel.freq)
    inner = matched_spectral_family(kernel.inner)
    if inner is None:
        return None
    return SpectralFamily.atom_mixture(kernel.gamma, inner)


def _k_mpf(kernel: Kernel, u):
    # normalized k(u) at the ambient mpmath precision, sigma2 excluded
    if kernel.kind == GAUSSIAN:
        lam = mp.mpf(kernel.rate.numerator) / kernel.rate.denominator
        return mp.exp(-lam * u * u)
    if kernel.kind == CAUCHY:
        a = mp.mpf(kernel.rate.numerator) / kernel.rate.denominator
        return 1 / (1 + a * u * u)
    if kernel.kind == SINC:
        return mp.sin(u) / u if u != 0 else mp.mpf(1)
    if kernel.kind == BESSEL:
        return 2 * mp.besselj(1, u) / u if u != 0 else mp.mpf(1)
    if kernel.kind == COSINE:
        lam = mp.mpf(kernel.freq.numerator) / kernel.freq.denominator
        return mp.cos(lam * u)
    g = mp.mpf(kernel.gamma.numerator) / kernel.gamma.denominator
    return g + (1 - g) * _k_mpf(kernel.inner, u)


def _k_exact(kernel: Kernel, u: Fraction) -> Optional[Fraction]:
    # normalized k(u) as an exact rational where the family allows it
    if u == 0:
        return Fraction(1)
    if kernel.kind == CAUCHY:
        return 1 / (1 + kernel.rate * u * u)
    if kernel.kind == MIXTURE:
        e = _k_exact(kernel.inner, u)
        return None if e is None else kernel.gamma + (1 - kernel.gamma) * e
    return None


def kernel_eval(kernel: Kernel, u, bits: int = DEFAULT_BITS) -> ExactScalar:
    """sigma2 * k(u).  Exact for rational-valued families, else bits-precision."""
    try:
        uq = parse_rational(u)
    except (ValueError, TypeError):
        uq = None
    if uq is not None:
        e = _k_exact(kernel, uq)
        if e is not None:
            return ExactScalar.exact(kernel.sigma2 * e)
    with mp.workprec(bits):
        if uq is not None:
            um = mp.mpf(uq.numerator) / uq.denominator
        else:
            um = mp.mpf(u)
        s2 = mp.mpf(kernel.sigma2.numerator) / kernel.sigma2.denominator
        return ExactScalar.hp(s2 * _k_mpf(kernel, um), bits)


@dataclass(frozen=True)
class Design:
    """Strictly increasing observation points."""

    points: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.points) == 0:
            raise ParameterError("design needs at least one point")
        pts = tuple(parse_rational(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise DomainError("design points must be strictly increasing")

    def __len__(self) -> int:
        return len(self.points)


def equispaced_design(domain, N: int) -> Design:
    """x_j = a + (j-1)(b-a)/(N-1) for j = 1..N; the single point a when N = 1."""
    a, b = (parse_rational(domain[0]), parse_rational(domain[1]))
    if not a < b:
        raise DomainError(f"domain must satisfy a < b, got [{a}, {b}]")
    if N < 1:
        raise ParameterError("design size must be >= 1")
    if N == 1:
        return Design(points=(a,))
    step = (b - a) / (N - 1)
    return Design(points=tuple(a + j * step for j in range(N)))


def kernel_matrix(kernel: Kernel, design: Design, bits: int = DEFAULT_BITS):
    """K_N = (sigma2 k(x_i-x_j))_{i,j} as an mpmath matrix at bits precision."""
    with mp.workprec(bits):
        return _gram(kernel, design)


def _gram(kernel: Kernel, design: Design):
    pts = design.points
    N = len(pts)
    s2 = mp.mpf(kernel.sigma2.numerator) / kernel.sigma2.denominator
    K = mp.matrix(N, N)
    for i in range(N):
        K[i, i] = s2
        for j in range(i):
            u = pts[i] - pts[j]
            K[i, j] = K[j, i] = s2 * _k_mpf(kernel, mp.mpf(u.numerator) / u.denominator)
    return K


def _cholesky(K):
    # lower factor, or None when a pivot fails (not positive definite at
    # this precision)
    n = K.rows
    L = mp.matrix(n, n)
    for j in range(n):
        s = K[j, j] - mp.fsum(L[j, k] ** 2 for k in range(j))
        if s <= 0:
            return None
        L[j, j] = mp.sqrt(s)
        for i in range(j + 1, n):
            v = K[i, j] - mp.fsum(L[i, k] * L[j, k] for k in range(j))
            L[i, j] = v / L[j, j]
    return L


def _chol_solve(L, rhs):
    n = L.rows
    y = [mp.mpf(0)] * n
    for i in range(n):
        y[i] = (rhs[i] - mp.fsum(L[i, k] * y[k] for k in range(i))) / L[i, i]
    x = [mp.mpf(0)] * n
    for i in range(n - 1, -1, -1):
        x[i] = (y[i] - mp.fsum(L[k, i] * x[k] for k in range(i + 1, n))) / L[i, i]
    return x


def _forward_sub(L, rhs):
    n = L.rows
    y = [mp.mpf(0)] * n
    for i in range(n):
        y[i] = (rhs[i] - mp.fsum(L[i, k] * y[k] for k in range(i))) / L[i, i]
    return y


class _GramSolver:
    """Cholesky factorization of K_N at the lowest precision meeting the
    residual target, shared by every downstream query."""

    def __init__(self, kernel: Kernel, design: Design, start_bits: int = DEFAULT_BITS):
        if start_bits < 8:
            raise ParameterError("start precision below 8 bits is not usable")
        self.kernel = kernel
        self.design = design
        bits = start_bits
        breakdown = False
        L = None
        while bits <= PRECISION_CEILING_BITS:
            with mp.workprec(bits):
                K = _gram(kernel, design)
                L = _cholesky(K)
            if L is not None:
                self.bits = bits
                self.L = L
                return
            breakdown = True
            bits *= 2
        if breakdown:
            raise SingularKernelError(kernel.label(), len(design))
        raise PrecisionError("kernel matrix factorization exhausted precision")

    def solve(self, f_values: Sequence) -> Tuple[List, int]:
        """w with K w = f to 1e-20 relative max-norm residual, escalating
        the factorization precision as needed.  Returns (w, bits)."""
        bits = self.bits
        data = list(f_values)
        while True:
            with mp.workprec(bits):
                if bits > self.bits:
                    K = _gram(self.kernel, self.design)
                    L = _cholesky(K)
                    if L is None:
                        raise SingularKernelError(self.kernel.label(), len(self.design))
                    self.bits, self.L = bits, L
                F = [_to_mpf(v) for v in data]
                scale = max(abs(x) for x in F)
                if scale == 0:
                    return [mp.mpf(0)] * len(F), bits
                w = _chol_solve(self.L, F)
            with mp.workprec(2 * bits):
                K2 = _gram(self.kernel, self.design)
                F2 = [_to_mpf(v) for v in data]
                resid = max(
                    abs(mp.fsum(K2[i, j] * w[j] for j in range(len(w))) - F2[i])
                    for i in range(len(F2))) / scale
            if resid < RESIDUAL_REL:
                return w, bits
            if bits >= PRECISION_CEILING_BITS:
                raise PrecisionError(
                    f"solve residual stuck at {mp.nstr(resid, 5)} at the precision ceiling",
                    candidates=w)
            bits *= 2

    def condition_estimate(self):
        with mp.workprec(self.bits):
            d = [self.L[i, i] for i in range(self.L.rows)]
            return (max(d) / min(d)) ** 2

    def logdet(self):
        with mp.workprec(self.bits):
            return 2 * mp.fsum(mp.log(self.L[i, i]) for i in range(self.L.rows))

    def cross_covariance(self, q):
        # b_N(q) at the solver's precision; q exact rational or mpf
        s2 = mp.mpf(self.kernel.sigma2.numerator) / self.kernel.sigma2.denominator
        out = []
        for p in self.design.points:
            u = q - mp.mpf(p.numerator) / p.denominator
            out.append(s2 * _k_mpf(self.kernel, u))
        return out


def _to_mpf(v):
    if isinstance(v, ExactScalar):
        return v.to_mpf(mp.mp.prec)
    if isinstance(v, Fraction):
        return mp.mpf(v.numerator) / v.denominator
    if isinstance(v, int):
        return mp.mpf(v)
    if isinstance(v, str):
        q = parse_rational(v)
        return mp.mpf(q.numerator) / q.denominator
    return mp.mpf(v)


def _query_to_mpf(q):
    try:
        qq = parse_rational(q)
        return mp.mpf(qq.numerator) / qq.denominator
    except (ValueError, TypeError):
        return mp.mpf(q)


@dataclass(frozen=True)
class KrigingFit:
    """Interpolation state: design, solved weights w = K_N^{-1} F_N, the
    scale estimate, and the precision actually used."""

    design: Design
    weights: Tuple[ExactScalar, ...]
    sigma2_hat: ExactScalar
    solve_precision: int
    condition_estimate: ExactScalar
    solver: "_GramSolver" = field(repr=False, compare=False)

    def evaluate(self, queries) -> Tuple[List[ExactScalar], List[ExactScalar]]:
        """Conditional mean and variance at each query; variance clamped at 0."""
        bits = self.solve_precision
        means: List[ExactScalar] = []
        cvars: List[ExactScalar] = []
        with mp.workprec(bits):
            s2 = mp.mpf(self.solver.kernel.sigma2.numerator) / \
                self.solver.kernel.sigma2.denominator
            w = [x.to_mpf(bits) for x in self.weights]
            for q in queries:
                qm = _query_to_mpf(q)
                bq = self.solver.cross_covariance(qm)
                mu = mp.fsum(wi * bi for wi, bi in zip(w, bq))
                y = _forward_sub(self.solver.L, bq)
                cv = s2 - mp.fsum(t * t for t in y)
                if cv < 0:
                    cv = mp.mpf(0)
                means.append(ExactScalar.hp(mu, bits))
                cvars.append(ExactScalar.hp(cv, bits))
        return means, cvars


def krige(kernel: Kernel, design: Design, f_values: Sequence, queries: Sequence,
          start_bits: int = DEFAULT_BITS) -> Tuple[List[ExactScalar], List[ExactScalar], KrigingFit]:
    """Conditional mean and variance at the queries, plus the reusable fit."""
    if len(f_values) != len(design):
        raise ParameterError(
            f"need one observation per design point, got {len(f_values)} for N={len(design)}")
    solver = _GramSolver(kernel, design, start_bits)
    w, bits = solver.solve(f_values)
    with mp.workprec(bits):
        F = [_to_mpf(v) for v in f_values]
        quad = mp.fsum(wi * fi for wi, fi in zip(w, F))
        s2_hat = ExactScalar.hp(quad / len(design), bits)
    fit = KrigingFit(design=design,
                     weights=tuple(ExactScalar.hp(x, bits) for x in w),
                     sigma2_hat=s2_hat,
                     solve_precision=bits,
                     condition_estimate=ExactScalar.hp(solver.condition_estimate(), bits),
                     solver=solver)
    means, cvars = fit.evaluate(queries)
    return means, cvars, fit


def _exact_gram(kernel: Kernel, design: Design) -> Optional[List[List[Fraction]]]:
    rows: List[List[Fraction]] = []
    pts = design.points
    for i in range(len(pts)):
        row = []
        for j in range(len(pts)):
            e = _k_exact(kernel, pts[i] - pts[j])
            if e is None:
                return None
            row.append(kernel.sigma2 * e)
        rows.append(row)
    return rows


def _exact_values(values: Sequence) -> Optional[List[Fraction]]:
    out = []
    for v in values:
        if isinstance(v, ExactScalar):
            if not v.is_exact:
                return None
            out.append(v.rational)
            continue
        if isinstance(v, float):
            return None  # floats are measurements, not exact statements
        try:
            out.append(parse_rational(v))
        except (ValueError, TypeError):
            return None
    return out


def _quadratic_form(kernel: Kernel, design: Design, f_values: Sequence,
                    start_bits: int, prefer_exact: bool = True):
    """F^T K_N^{-1} F as (value, weights, bits) with an exact fast path."""
    if prefer_exact:
        F = _exact_values(f_values)
        A = _exact_gram(kernel, design) if F is not None else None
        if F is not None and A is not None:
            from .hankel import _solve_fraction_system
            try:
                w = _solve_fraction_system(A, F)
            except DegenerateError as exc:
                raise SingularKernelError(kernel.label(), len(design)) from exc
            quad = sum(a * b for a, b in zip(w, F))
            return (ExactScalar.exact(quad),
                    [ExactScalar.exact(x) for x in w], None)
    solver = _GramSolver(kernel, design, start_bits)
    w, bits = solver.solve(f_values)
    with mp.workprec(bits):
        F = [_to_mpf(v) for v in f_values]
        quad = mp.fsum(wi * fi for wi, fi in zip(w, F))
    return (ExactScalar.hp(quad, bits),
            [ExactScalar.hp(x, bits) for x in w], bits)


def mle_sigma2(kernel: Kernel, design: Design, f_values: Sequence,
               start_bits: int = DEFAULT_BITS) -> ExactScalar:
    """sigma2_hat_N = F_N^T K_N^{-1} F_N / N for a unit-scale kernel."""
    if kernel.sigma2 != 1:
        raise ParameterError("scale estimation requires a kernel with sigma2 = 1")
    if len(f_values) != len(design):
        raise ParameterError(
            f"need one observation per design point, got {len(f_values)} for N={len(design)}")
    quad, _, _ = _quadratic_form(kernel, design, f_values, start_bits)
    return quad / len(design)


def log_likelihood(kernel: Kernel, design: Design, f_values: Sequence, sigma2,
                   start_bits: int = DEFAULT_BITS) -> ExactScalar:
    """LL(s) = -(N log(2 pi s) + log det K_N + F^T K_N^{-1} F / s)/2, unit-scale K_N."""
    if kernel.sigma2 != 1:
        raise ParameterError("the likelihood is parameterized by s over a unit-scale kernel")
    s = parse_rational(sigma2)
    if s <= 0:
        raise ParameterError(f"sigma2 must be positive, got {s}")
    solver = _GramSolver(kernel, design, start_bits)
    w, bits = solver.solve(f_values)
    with mp.workprec(bits):
        F = [_to_mpf(v) for v in f_values]
        quad = mp.fsum(wi * fi for wi, fi in zip(w, F))
        sm = mp.mpf(s.numerator) / s.denominator
        N = len(design)
        ll = -(N * mp.log(2 * mp.pi * sm) + solver.logdet() + quad / sm) / 2
        return ExactScalar.hp(ll, bits)


def blue_discrete(kernel: Kernel, design: Design, regressor_values: Sequence,
                  start_bits: int = DEFAULT_BITS) -> Tuple[Tuple[ExactScalar, ...], ExactScalar]:
    """Weights and variance of the discrete BLUE for a location parameter.

    variance = 1/(F^T K_N^{-1} F), weights = variance * K_N^{-1} F, so the
    weights resolve the regressor exactly once: weights . F = 1.
    """
    if len(regressor_values) != len(design):
        raise ParameterError(
            f"need one regressor value per design point, got "
            f"{len(regressor_values)} for N={len(design)}")
    if all(_is_zero(v) for v in regressor_values):
        raise DegenerateError("degenerate regressor: F_N = 0 admits no unbiased estimate")
    quad, kw, bits = _quadratic_form(kernel, design, regressor_values, start_bits)
    variance = 1 / quad
    weights = tuple(variance * x for x in kw)
    return weights, variance


def _is_zero(v) -> bool:
    if isinstance(v, ExactScalar):
        return v == 0
    try:
        return parse_rational(v) == 0
    except (ValueError, TypeError):
        return float(v) == 0.0


@dataclass(frozen=True)
class MembershipEntry:
    N: int
    sigma2_hat: ExactScalar
    N_sigma2_hat: ExactScalar
    var_blue: ExactScalar


@dataclass(frozen=True)
class MembershipDiagnostic:
    """Trace of N * sigma2_hat_N along an increasing schedule of equispaced
    designs, with the fitted log-log slope over the top half and a verdict.

    The sequence is bounded by the squared native-space norm of the data
    function when the function belongs to the kernel's space and diverges
    otherwise.  The verdict thresholds are heuristics: plateau (slope
    under 0.1, last two entries within 5%, increments not accelerating)
    reads as membership; slope above 0.5 or steadily accelerating relative
    increments reads as nonmembership; anything else is inconclusive.
    """

    entries: Tuple[MembershipEntry, ...]
    slope: float
    rel_increments: Tuple[float, ...]
    verdict: str

    def to_json_dict(self) -> Dict:
        return {
            "entries": [
                {"N": e.N,
                 "sigma2_hat": e.sigma2_hat.to_text(),
                 "N_sigma2_hat": e.N_sigma2_hat.to_text(),
                 "var_blue": e.var_blue.to_text()}
                for e in self.entries],
            "slope": self.slope,
            "rel_increments": list(self.rel_increments),
            "verdict": self.verdict,
        }


def membership_diagnostic(kernel: Kernel, f: Callable, domain, N_schedule: Sequence[int],
                          start_bits: int = DEFAULT_BITS) -> MembershipDiagnostic:
    """Run the scale diagnostic on equispaced designs of the given sizes."""
    sched = [int(n) for n in N_schedule]
    if len(sched) < 2:
        raise ParameterError("membership diagnostic needs at least two design sizes")
    if any(b <= a for a, b in zip(sched, sched[1:])):
        raise ParameterError("design sizes must be strictly increasing")
    if sched[0] < 2:
        raise ParameterError("design sizes must be >= 2")
    entries: List[MembershipEntry] = []
    for N in sched:
        design = equispaced_design(domain, N)
        f_vals = [evaluate_test_function(f, p, start_bits) for p in design.points]
        quad, _, _ = _quadratic_form(kernel, design, f_vals, start_bits,
                                     prefer_exact=False)
        s2_hat = quad / N
        entries.append(MembershipEntry(
            N=N, sigma2_hat=s2_hat, N_sigma2_hat=N * s2_hat, var_blue=1 / quad))
    v = [float(e.N_sigma2_hat) for e in entries]
    top = max(2, (len(v) + 1) // 2)
    slope = _loglog_slope(sched[-top:], v[-top:])
    rel = tuple(v[i + 1] / v[i] - 1 for i in range(len(v) - 1))
    verdict = _verdict(v, slope, rel)
    return MembershipDiagnostic(entries=tuple(entries), slope=slope,
                                rel_increments=rel, verdict=verdict)


def evaluate_test_function(f: Callable, point: Fraction, bits: int):
    """f at an exact point: exact when f returns a rational for rational
    input, otherwise a high-precision value with generous guard bits."""
    exact = f(point)
    if isinstance(exact, (Fraction, int, ExactScalar)):
        return exact
    with mp.workprec(4 * bits):
        x = mp.mpf(point.numerator) / point.denominator
        return ExactScalar.hp(f(x), 4 * bits)


def _loglog_slope(Ns: Sequence[int], vals: Sequence[float]) -> float:
    xs = [math.log(n) for n in Ns]
    ys = [math.log(v) for v in vals]
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return sxy / sxx


def _verdict(v: List[float], slope: float, rel: Tuple[float, ...]) -> str:
    # steady plateaus drift by strictly shrinking or negligible increments;
    # a divergent sequence shows either a large slope outright or relative
    # increments that keep growing (slow divergence of smooth functions
    # outside the space starts well under the 0.5 slope gate)
    accelerating = (len(rel) >= 2 and rel[-1] > ACCEL_MIN
                    and all(r > 0 for r in rel)
                    and all(b > a for a, b in zip(rel, rel[1:])))
    if slope > SLOPE_NONMEMBER or accelerating:
        return VERDICT_NONMEMBER
    if slope < SLOPE_MEMBER and abs(v[-1] / v[-2] - 1) < PLATEAU_REL:
        return VERDICT_MEMBER
    return VERDICT_INCONCLUSIVE


def confidence_bands(fit: KrigingFit, queries: Sequence, factor=3,
                     variant: str = "paper") -> List[Tuple[ExactScalar, ExactScalar]]:
    """Bands mu(q) +/- h(q).

    The default reproduces the printed rule h = factor * sigma2_hat *
    C_N(q,q), variance units and all; the dimensionally conventional
    h = factor * sqrt(sigma2_hat * C_N(q,q)) sits behind variant="standard".
    """
    if variant not in ("paper", "standard"):
        raise ParameterError(f"unknown band variant {variant!r}")
    fac = parse_rational(factor)
    if fac < 0:
        raise ParameterError(f"band factor must be >= 0, got {fac}")
    means, cvars = fit.evaluate(queries)
    bits = fit.solve_precision
    out = []
    with mp.workprec(bits):
        fm = mp.mpf(fac.numerator) / fac.denominator
        s2h = fit.sigma2_hat.to_mpf(bits)
        for mu, cv in zip(means, cvars):
            c = cv.to_mpf(bits)
            if variant == "paper":
                half = fm * s2h * c
            else:
                half = fm * mp.sqrt(s2h * c)
            out.append((ExactScalar.hp(mu.to_mpf(bits) - half, bits),
                        ExactScalar.hp(mu.to_mpf(bits) + half, bits)))
    return out


def offset_gaussian(x):
    """f1(x) = exp(-2 (x - 1/3)^2); lies in the native space of every
    gaussian kernel with rate above 2."""
    if isinstance(x, Fraction):
        x = mp.mpf(x.numerator) / x.denominator
    return mp.exp(-2 * (x - mp.mpf(1) / 3) ** 2)


def offset_parabola(x):
    """f2(x) = 1 - 2 (x - 1/3)^2; a polynomial, hence outside the native
    space of every kernel whose spectral measure has infinite support."""
    if isinstance(x, (Fraction, int)):
        return 1 - 2 * (Fraction(x) - Fraction(1, 3)) ** 2
    return 1 - 2 * (x - mp.mpf(1) / 3) ** 2


def reproducing_element(kernel: Kernel, x0) -> Callable:
    """x -> K(x0, x), the canonical member of the space with norm K(x0,x0)."""
    x0q = parse_rational(x0)

    def f(x):
        if isinstance(x, Fraction):
            e = _k_exact(kernel, x - x0q)
            if e is not None:
                return kernel.sigma2 * e
            x = mp.mpf(x.numerator) / x.denominator
        x0m = mp.mpf(x0q.numerator) / x0q.denominator
        s2 = mp.mpf(kernel.sigma2.numerator) / kernel.sigma2.denominator
        return s2 * _k_mpf(kernel, x - x0m)

    return f


def polynomial_function(coeffs: Sequence) -> Callable:
    """x -> sum c_i x^i with exact rational coefficients."""
    cs = [parse_rational(c) for c in coeffs]
    if not cs:
        raise ParameterError("polynomial needs at least one coefficient")

    def f(x):
        if isinstance(x, (Fraction, int)):
            acc = Fraction(0)
            for c in reversed(cs):
                acc = acc * x + c
            return acc
        acc = mp.mpf(0)
        for c in reversed(cs):
            acc = acc * x + mp.mpf(c.numerator) / c.denominator
        return acc

    return f
