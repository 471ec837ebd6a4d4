"""Spectral measures represented by their even-moment sequences.

A symmetric probability measure alpha on the real line with all moments
finite is described here by the half-line sequence b_j = c_{2j}, where
c_{2n} = integral t^{2n} alpha(dt) (odd moments vanish by symmetry).

Shipped families and their moments:

  gaussian(rate l):   c_{2n} = l^n (2n-1)!!        (centered normal, variance l)
  cauchy(rate l):     c_{2n} = (2n)! / l^{2n}      (two-sided exponential density (l/2) e^{-l|t|})
  beta(alpha):        density on [-1,1] proportional to (1-t^2)^alpha,
                      b_j = prod_{i=0}^{j-1} (i+1/2)/(i+alpha+3/2)
  cosine(freq l):     atoms at +-l with mass 1/2 each, c_{2n} = l^{2n}
  finite(t_i, w_i):   atoms at +-t_i with mass w_i each, c_{2n} = sum 2 w_i t_i^{2n}
  mixture(g, inner):  atom of mass g at 0 plus (1-g) * inner,
                      b'_0 = 1 and b'_j = (1-g) b_j for j >= 1

All parameters are rationals, so every moment is an exact rational.
The Carleman partial sums C_N = sum_{n=1..N} c_{2n}^{-1/(2n)} and the
boundedness of (1/(2n)) c_{2n}^{1/(2n)} provide two sufficient criteria
for moment determinacy; determinacy_indicators fits the growth rate of
C_N against sqrt(k), log(k) and k templates to label the divergence.
"""

from __future__ import annotations

import json
import statistics
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Dict, List, Optional, Tuple, Union

import mpmath as mp

from .errors import (DomainError, LengthError, ParameterError,
                     UnsupportedFamilyError)
from .scalars import (DEFAULT_BITS, ExactScalar, format_rational,
                      parse_rational)

GAUSSIAN = "gaussian"
CAUCHY = "cauchy"
BETA = "beta"
COSINE = "cosine"
FINITE = "finite"
MIXTURE = "mixture"

_FAMILY_TAGS = (GAUSSIAN, CAUCHY, BETA, COSINE, FINITE, MIXTURE)


def _dfact(k: int) -> int:
    # double factorial with (-1)!! = 1
    r = 1
    while k > 1:
        r *= k
        k -= 2
    return r


@dataclass(frozen=True)
class SpectralFamily:
    """Parameterized symmetric spectral measure (c_0 = 1, odd moments 0)."""

    kind: str
    rate: Optional[Fraction] = None
    alpha: Optional[Fraction] = None
    freq: Optional[Fraction] = None
    points: Optional[Tuple[Fraction, ...]] = None
    weights: Optional[Tuple[Fraction, ...]] = None
    gamma: Optional[Fraction] = None
    inner: Optional["SpectralFamily"] = None

    @classmethod
    def gaussian(cls, rate) -> "SpectralFamily":
        rate = parse_rational(rate)
        if rate <= 0:
            raise ParameterError(f"gaussian rate must be positive, got {rate}")
        return cls(kind=GAUSSIAN, rate=rate)

    @classmethod
    def cauchy(cls, rate) -> "SpectralFamily":
        rate = parse_rational(rate)
        if rate <= 0:
            raise ParameterError(f"cauchy rate must be positive, got {rate}")
        return cls(kind=CAUCHY, rate=rate)

    @classmethod
    def symmetric_beta(cls, alpha) -> "SpectralFamily":
        alpha = parse_rational(alpha)
        if alpha <= -1:
            raise ParameterError(f"beta exponent must exceed -1, got {alpha}")
        return cls(kind=BETA, alpha=alpha)

    @classmethod
    def cosine_atoms(cls, freq) -> "SpectralFamily":
        freq = parse_rational(freq)
        if freq == 0:
            raise ParameterError("cosine frequency must be nonzero")
        return cls(kind=COSINE, freq=freq)

    @classmethod
    def finite_support(cls, points, weights) -> "SpectralFamily":
        pts = tuple(parse_rational(p) for p in points)
        wts = tuple(parse_rational(w) for w in weights)
        if len(pts) == 0 or len(pts) != len(wts):
            raise ParameterError("finite support needs equally many points and weights")
        if any(p <= 0 for p in pts) or any(pts[i] >= pts[i + 1] for i in range(len(pts) - 1)):
            raise ParameterError("support points must be strictly increasing and positive")
        if any(w <= 0 for w in wts):
            raise ParameterError("weights must be positive")
        if sum(wts) != Fraction(1, 2):
            raise ParameterError("weights must sum to 1/2 per half line")
        return cls(kind=FINITE, points=pts, weights=wts)

    @classmethod
    def atom_mixture(cls, gamma, inner: "SpectralFamily") -> "SpectralFamily":
        gamma = parse_rational(gamma)
        if not (0 < gamma < 1):
            raise ParameterError(f"mixture weight must lie in (0,1), got {gamma}")
        if not isinstance(inner, SpectralFamily):
            raise ParameterError("mixture inner must be a SpectralFamily")
        if inner.kind == MIXTURE:
            raise ParameterError("nested atom mixtures are not supported")
        return cls(kind=MIXTURE, gamma=gamma, inner=inner)

    def label(self) -> str:
        if self.kind == GAUSSIAN:
            return f"gaussian({format_rational(self.rate)})"
        if self.kind == CAUCHY:
            return f"cauchy({format_rational(self.rate)})"
        if self.kind == BETA:
            return f"beta({format_rational(self.alpha)})"
        if self.kind == COSINE:
            return f"cosine({format_rational(self.freq)})"
        if self.kind == FINITE:
            return f"finite(m={len(self.points)})"
        return f"mixture({format_rational(self.gamma)}, {self.inner.label()})"

    # JSON serialization: {"family": tag, "params": {...}}
    def to_json_dict(self) -> Dict:
        if self.kind == GAUSSIAN:
            params = {"rate": format_rational(self.rate)}
        elif self.kind == CAUCHY:
            params = {"rate": format_rational(self.rate)}
        elif self.kind == BETA:
            params = {"alpha": format_rational(self.alpha)}
        elif self.kind == COSINE:
            params = {"freq": format_rational(self.freq)}
        elif self.kind == FINITE:
            params = {"points": [format_rational(p) for p in self.points],
                      "weights": [format_rational(w) for w in self.weights]}
        else:
            params = {"gamma": format_rational(self.gamma),
                      "inner": self.inner.to_json_dict()}
        return {"family": self.kind, "params": params}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, doc: Dict) -> "SpectralFamily":
        if not isinstance(doc, dict):
            raise ParameterError("family document must be a JSON object")
        unknown = set(doc) - {"family", "params"}
        if unknown:
            raise ParameterError(f"unknown keys in family document: {sorted(unknown)}")
        kind = doc.get("family")
        if kind not in _FAMILY_TAGS:
            raise ParameterError(f"unknown family tag {kind!r}")
        params = doc.get("params", {})
        if not isinstance(params, dict):
            raise ParameterError("family params must be a JSON object")

        def need(keys):
            missing = set(keys) - set(params)
            extra = set(params) - set(keys)
            if missing or extra:
                raise ParameterError(
                    f"family {kind!r} expects params {sorted(keys)}, got {sorted(params)}")

        if kind == GAUSSIAN:
            need({"rate"})
            return cls.gaussian(params["rate"])
        if kind == CAUCHY:
            need({"rate"})
            return cls.cauchy(params["rate"])
        if kind == BETA:
            need({"alpha"})
            return cls.symmetric_beta(params["alpha"])
        if kind == COSINE:
            need({"freq"})
            return cls.cosine_atoms(params["freq"])
        if kind == FINITE:
            need({"points", "weights"})
            return cls.finite_support(params["points"], params["weights"])
        need({"gamma", "inner"})
        return cls.atom_mixture(params["gamma"], cls.from_json_dict(params["inner"]))

    @classmethod
    def from_json(cls, text: str) -> "SpectralFamily":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParameterError(f"invalid family JSON: {exc}") from exc
        return cls.from_json_dict(doc)


@dataclass(frozen=True)
class MomentSequence:
    """Half-line moments b_0..b_n with scalar kind and provenance."""

    b: Tuple[ExactScalar, ...]
    kind: str = "exact"  # exact | high-precision
    provenance: Union[SpectralFamily, str] = "derived"

    def __post_init__(self):
        if len(self.b) == 0:
            raise LengthError("moment sequence must contain b_0")
        if not (self.b[0] > 0):
            raise DomainError("b_0 must be positive")

    def __len__(self) -> int:
        return len(self.b)

    def __getitem__(self, j: int) -> ExactScalar:
        return self.b[j]

    @classmethod
    def from_rationals(cls, values, provenance="derived") -> "MomentSequence":
        return cls(b=tuple(ExactScalar.exact(v) for v in values),
                   kind="exact", provenance=provenance)

    def fractions(self) -> List[Fraction]:
        if self.kind != "exact":
            raise DomainError("sequence is not exact")
        return [s.rational for s in self.b]

    def family(self) -> Optional[SpectralFamily]:
        return self.provenance if isinstance(self.provenance, SpectralFamily) else None

    def to_csv_text(self) -> str:
        lines = []
        if self.kind == "exact":
            lines.append("j,b_j_numerator,b_j_denominator")
            for j, s in enumerate(self.b):
                lines.append(f"{j},{s.rational.numerator},{s.rational.denominator}")
        else:
            lines.append("j,b_j_decimal,precision_bits")
            for j, s in enumerate(self.b):
                lines.append(f"{j},{s.to_text()},{s.precision_bits}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class DeterminacyReport:
    """Carleman partial sums with a fitted divergence-rate label and the
    boundedness check of (1/(2n)) c_{2n}^{1/(2n)}."""

    carleman_partial_sums: Tuple[ExactScalar, ...]
    carleman_rate_label: str  # sqrt-N | log-N | linear-N | undetermined
    a4_sequence: Tuple[float, ...]
    a4_bounded: bool
    verdict: str  # determinate-by-(A.1) | determinate-by-(A.4) | inconclusive
    fit_residuals: Dict[str, float] = field(default_factory=dict)


def even_moments(family: SpectralFamily, n_max: int) -> MomentSequence:
    """Half-line moments b_j = c_{2j} for j = 0..n_max, exact rationals."""
    if n_max < 0:
        raise ParameterError("n_max must be >= 0")
    k = family.kind
    if k == GAUSSIAN:
        lam = family.rate
        vals = [lam ** j * _dfact(2 * j - 1) for j in range(n_max + 1)]
    elif k == CAUCHY:
        lam = family.rate
        fact = 1
        vals = []
        for j in range(n_max + 1):
            if j > 0:
                fact *= (2 * j - 1) * (2 * j)
            vals.append(Fraction(fact) / lam ** (2 * j))
    elif k == BETA:
        alpha = family.alpha
        vals = [Fraction(1)]
        for i in range(n_max):
            vals.append(vals[-1] * (Fraction(2 * i + 1, 2) / (i + alpha + Fraction(3, 2))))
    elif k == COSINE:
        lam = family.freq
        vals = [lam ** (2 * j) for j in range(n_max + 1)]
    elif k == FINITE:
        vals = [sum(2 * w * t ** (2 * j) for t, w in zip(family.points, family.weights))
                for j in range(n_max + 1)]
    elif k == MIXTURE:
        inner = even_moments(family.inner, n_max).fractions()
        g = family.gamma
        vals = [Fraction(1)] + [(1 - g) * bj for bj in inner[1:]]
    else:
        raise UnsupportedFamilyError(f"unknown family kind {k!r}")
    return MomentSequence.from_rationals(vals, provenance=family)


def shift_measure(b: MomentSequence, m: int) -> MomentSequence:
    """Moments of the tilted measure t^{2m} alpha(dt) / c_{2m}.

    b'_j = b_{m+j} / b_m; the output carries every available order,
    len(b) - m entries.
    """
    if m < 0:
        raise ParameterError("tilt order must be >= 0")
    if m == 0:
        return b
    if len(b) <= m:
        raise LengthError(f"need at least {m + 1} moments, have {len(b)}")
    bm = b[m]
    if not (bm > 0):
        raise DomainError("b_m must be positive to tilt")
    vals = [b[m + j] / bm for j in range(len(b) - m)]
    return MomentSequence(b=tuple(vals), kind=b.kind, provenance="derived")


def mix_atom(b: MomentSequence, gamma) -> MomentSequence:
    """Add an atom of mass gamma at zero: b'_0 = 1, b'_j = (1-gamma) b_j."""
    gamma = parse_rational(gamma)
    if not (0 < gamma < 1):
        raise ParameterError(f"mixture weight must lie in (0,1), got {gamma}")
    if b.kind == "exact":
        if b[0].rational != 1:
            raise ParameterError("b_0 must equal 1 before mixing in an atom")
    elif abs(float(b[0]) - 1.0) > 1e-12:
        raise ParameterError("b_0 must equal 1 before mixing in an atom")
    one = ExactScalar.exact(1)
    scale = ExactScalar.exact(1 - gamma)
    vals = [one] + [scale * bj for bj in b.b[1:]]
    fam = b.family()
    prov = SpectralFamily.atom_mixture(gamma, fam) if fam is not None and fam.kind != MIXTURE else "derived"
    return MomentSequence(b=tuple(vals), kind=b.kind, provenance=prov)


def _exact_carleman_term(family: Optional[SpectralFamily]) -> Optional[Fraction]:
    # perfect-power families have rational 2n-th roots: c_{2n}^{-1/(2n)} is constant
    if family is None:
        return None
    if family.kind == COSINE:
        return 1 / abs(family.freq)
    if family.kind == FINITE and len(family.points) == 1:
        return 1 / family.points[0]
    return None


def carleman_partial_sums(b: MomentSequence, N: int, bits: int = DEFAULT_BITS) -> List[ExactScalar]:
    """Partial sums C_k = sum_{n=1..k} b_n^{-1/(2n)} for k = 1..N.

    Exact for atom families whose moments are perfect powers (single
    frequency); high-precision roots otherwise.
    """
    if N < 1:
        raise ParameterError("N must be >= 1")
    if len(b) <= N:
        raise LengthError(f"need moments up to b_{N}, have {len(b) - 1}")
    term = _exact_carleman_term(b.family())
    if term is not None and b.kind == "exact":
        return [ExactScalar.exact(k * term) for k in range(1, N + 1)]
    sums = []
    with mp.workprec(bits):
        acc = mp.mpf(0)
        for n in range(1, N + 1):
            bn = b[n]
            if not (bn > 0):
                raise DomainError(f"b_{n} must be positive")
            x = bn.to_mpf(bits)
            acc += x ** (mp.mpf(-1) / (2 * n))
            sums.append(ExactScalar.hp(acc, bits))
    return sums


_RATE_TEMPLATES = {
    "sqrt-N": lambda k: mp.sqrt(k),
    "log-N": lambda k: mp.log(k),
    "linear-N": lambda k: mp.mpf(k),
}


def determinacy_indicators(b: MomentSequence, N: int, bits: int = DEFAULT_BITS) -> DeterminacyReport:
    """Growth-rate label for the Carleman sums plus the easy boundedness check.

    The label is the best scale-only least-squares fit of C_k against
    sqrt(k), log(k) and k over the window k in [N/2, N]; residual above 10%
    of the data norm yields 'undetermined'.  a4_bounded holds when the
    sequence (1/(2n)) c_{2n}^{1/(2n)} is non-increasing over its last
    quarter or bounded by twice its median.  Verdict precedence: a bounded
    a4 sequence certifies determinacy on its own; otherwise a divergent
    Carleman label does; otherwise inconclusive.
    """
    if N < 16:
        raise ParameterError("rate fitting needs N >= 16")
    sums = carleman_partial_sums(b, N, bits=bits)
    cs = [float(s) for s in sums]
    window = list(range(N // 2, N + 1))
    data = [cs[k - 1] for k in window]
    norm = mp.sqrt(mp.fsum(c * c for c in data))
    residuals = {}
    for name, g in _RATE_TEMPLATES.items():
        gv = [g(k) for k in window]
        denom = mp.fsum(x * x for x in gv)
        a = mp.fsum(c * x for c, x in zip(data, gv)) / denom
        res = mp.sqrt(mp.fsum((c - a * x) ** 2 for c, x in zip(data, gv)))
        residuals[name] = float(res / norm)
    label = min(residuals, key=residuals.get)
    if residuals[label] > 0.10:
        label = "undetermined"

    a4 = []
    with mp.workprec(bits):
        for n in range(1, N + 1):
            x = b[n].to_mpf(bits)
            a4.append(float(x ** (mp.mpf(1) / (2 * n)) / (2 * n)))
    tail = a4[-max(1, N // 4):]
    non_increasing = all(tail[i + 1] <= tail[i] * (1 + 1e-12) for i in range(len(tail) - 1))
    bounded_by_median = max(a4) <= 2 * statistics.median(a4)
    a4_bounded = non_increasing or bounded_by_median

    if a4_bounded:
        verdict = "determinate-by-(A.4)"
    elif label != "undetermined":
        verdict = "determinate-by-(A.1)"
    else:
        verdict = "inconclusive"
    return DeterminacyReport(
        carleman_partial_sums=tuple(sums),
        carleman_rate_label=label,
        a4_sequence=tuple(a4),
        a4_bounded=a4_bounded,
        verdict=verdict,
        fit_residuals=residuals,
    )


def kernel_taylor_moments(kernel, n_max: int) -> MomentSequence:
    """Moments read off the kernel's power series at 0: b_j = (-1)^j k^{(2j)}(0).

    Series coefficients are closed-form per family; no numerical
    differentiation.  Matches even_moments of the matched spectral family
    exactly (the kernel's scale sigma2 is excluded, k(0) = 1).
    """
    if n_max < 0:
        raise ParameterError("n_max must be >= 0")
    kind = getattr(kernel, "kind", None)
    if kind == "gaussian":
        # k(u) = exp(-l u^2): b_j = (2l)^j (2j-1)!!
        lam = kernel.rate
        vals = [(2 * lam) ** j * _dfact(2 * j - 1) for j in range(n_max + 1)]
    elif kind == "cauchy":
        # k(u) = 1/(1 + a u^2): b_j = (2j)! a^j
        a = kernel.rate
        fact = 1
        vals = []
        for j in range(n_max + 1):
            if j > 0:
                fact *= (2 * j - 1) * (2 * j)
            vals.append(Fraction(fact) * a ** j)
    elif kind == "sinc":
        # k(u) = sin(u)/u: b_j = (2j)!/(2j+1)! = 1/(2j+1)
        vals = [Fraction(1, 2 * j + 1) for j in range(n_max + 1)]
    elif kind == "bessel":
        # k(u) = 2 J_1(u)/u: b_j = (2j)!/(j! (j+1)! 4^j), the scaled Catalan numbers
        vals = []
        fact = 1
        fj = 1
        for j in range(n_max + 1):
            if j > 0:
                fact *= (2 * j - 1) * (2 * j)
                fj *= j
            vals.append(Fraction(fact, fj * fj * (j + 1) * 4 ** j))
    elif kind == "cosine":
        lam = kernel.freq
        vals = [lam ** (2 * j) for j in range(n_max + 1)]
    elif kind == "mixture":
        inner = kernel_taylor_moments(kernel.inner, n_max)
        return mix_atom(inner, kernel.gamma)
    else:
        raise UnsupportedFamilyError(f"no power series for kernel kind {kind!r}")
    return MomentSequence.from_rationals(vals, provenance="derived")
