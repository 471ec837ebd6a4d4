"""Hankel determinants of moment sequences and the BLUE variance ratio.

For half-line moments b_0, b_1, ... the two determinant families are

  H_n = det (b_{i+j})_{i,j=0..n},   G_n = det (b_{i+j})_{i,j=1..n},   G_0 = 1.

Their ratio var_n = H_n / G_n is simultaneously: the variance of the best
linear unbiased estimator of a location parameter observed through a
stationary process with these spectral moments, the squared L2 distance
from the constant 1 to span{t, ..., t^n} under the half-line measure, and
the Schur complement of the top-left entry of the order-n moment matrix.
It is invariant under b_j -> s^j b_j and non-increasing in n; it tends to
zero exactly when the underlying moment problem is determinate with no
atom at zero, and it vanishes identically from n = m on when the measure
has m support points per half line.

Closed forms implemented here:

  gaussian:    var_n = 2^n n! / (2n+1)!!
               ~ sqrt(pi)/(2 sqrt(n)) (1 - 3/(8n) + 25/(128 n^2) + O(n^-3))
  beta(a):     var_n = sqrt(pi)/(2^{2a+1} B(a+1,a+1)) * (2n)!!/(2n+1)!!
                       * Gamma(n+1+a)/Gamma(n+3/2+a)
               ~ pi/(2^{2a+2} B(a+1,a+1)) * 1/n
  beta(0):     var_n = [(2n)!!/(2n+1)!!]^2,  ~ pi/(4n)
  beta(-1/2):  var_n = 1/(2n+1),             ~ 1/(2n)
  mixture:     var_n = gamma + (1-gamma) var_n(inner)

Product formulas: with positive recurrence coefficients d_1..d_{2n}
(gaussian: d_{2k-1} = k - 1/2, d_{2k} = k),

  H_n = prod_{i=1..n} (d_{2i-1} d_{2i})^{n-i+1},

and with canonical moments p_1..p_{2n} of the half-line image on [0,1]
(q_j = 1 - p_j, q_0 = 1),

  H_n = prod_{i=1..n} (q_{2i-2} p_{2i-1} q_{2i-1} p_{2i})^{n+1-i},

where the beta(a) canonical moments are p_{2j} = j/(2j+1/2+a) and
p_{2j-1} = (j-1/2)/(2j-1/2+a).

Exact arithmetic uses Bareiss fraction-free elimination on the
denominator-cleared integer Hankel matrix; a single pass produces every
leading principal minor.  Moment matrices of measures are positive
semidefinite at all orders, so a zero pivot forces all later minors to
zero (the finite-support case).  The high-precision path computes Cholesky
pivots with precision doubling until successive runs agree to 1e-12
relative, with a 2^16-bit ceiling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import mpmath as mp

from .errors import (DegenerateError, DomainError, LengthError,
                     ParameterError, PrecisionError, UnsupportedFamilyError)
from .moments import (BETA, GAUSSIAN, MIXTURE, MomentSequence,
                      SpectralFamily, _dfact)
from .scalars import (DEFAULT_BITS, PRECISION_CEILING_BITS, ExactScalar,
                      parse_rational)

STABILITY_REL = 1e-12


@dataclass(frozen=True)
class HankelPair:
    """H_n and G_n for one order, with the computation path used."""

    n: int
    H_n: ExactScalar
    G_n: ExactScalar
    path: str  # direct-determinant | recurrence-product | canonical-product | closed-form


@dataclass(frozen=True)
class VarianceEntry:
    n: int
    var: ExactScalar
    path: str
    closed_form: Optional[ExactScalar] = None
    abs_residual: Optional[ExactScalar] = None


@dataclass(frozen=True)
class VarianceReport:
    """The sequence var_n = H_n/G_n for n = 0..n_max with a limit heuristic."""

    entries: Tuple[VarianceEntry, ...]
    limit_flag: str  # tends-to-zero | bounded-away-from-zero | degenerate-zero
    provenance: Union[SpectralFamily, str] = "derived"

    @property
    def kind(self) -> str:
        return "exact" if self.entries[0].var.is_exact else "high-precision"

    def variances(self) -> List[ExactScalar]:
        return [e.var for e in self.entries]

    def to_csv_text(self) -> str:
        lines = []
        exact = self.kind == "exact"
        if exact:
            lines.append("n,var_numer,var_denom,path,closed_form,abs_residual")
        else:
            lines.append("n,var_decimal,path,closed_form,abs_residual")
        for e in self.entries:
            cf = e.closed_form.to_text() if e.closed_form is not None else ""
            res = e.abs_residual.to_text() if e.abs_residual is not None else ""
            if exact:
                q = e.var.rational
                lines.append(f"{e.n},{q.numerator},{q.denominator},{e.path},{cf},{res}")
            else:
                lines.append(f"{e.n},{e.var.to_text()},{e.path},{cf},{res}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class RecurrenceCoefficients:
    """Either recurrence coefficients d_1..d_{2n} or canonical moments p_1..p_{2n}."""

    d: Optional[Tuple[Fraction, ...]] = None
    p: Optional[Tuple[Fraction, ...]] = None

    def __post_init__(self):
        if (self.d is None) == (self.p is None):
            raise ParameterError("give exactly one of d (recurrence) or p (canonical)")
        if self.d is not None and any(x <= 0 for x in self.d):
            raise DomainError("recurrence coefficients must be positive")
        if self.p is not None and any(not (0 < x < 1) for x in self.p):
            raise DomainError("canonical moments must lie strictly inside (0,1)")


def _bareiss_leading_minors(rows: List[List[int]]) -> List[int]:
    """Leading principal minors M_1..M_n of an integer matrix.

    Fraction-free elimination; exact for any integer input.  A zero pivot
    stops elimination and fills the remaining minors with zeros, which is
    valid for moment matrices of measures (PSD at every order, so rank
    deficiency propagates to all larger leading blocks).
    """
    n = len(rows)
    a = [list(r) for r in rows]
    minors: List[int] = []
    prev = 1
    for k in range(n):
        minors.append(a[k][k])
        if k == n - 1:
            break
        piv = a[k][k]
        if piv == 0:
            minors.extend([0] * (n - 1 - k))
            break
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * piv - aik * row_k[j]) // prev
        prev = piv
    return minors


def _exact_hankel_minors(bf: Sequence[Fraction], size: int, shift: int) -> List[Fraction]:
    """Leading minors of (b_{i+j+2*shift})_{i,j=0..size-1} as exact rationals."""
    if size == 0:
        return []
    used = [bf[i + j + 2 * shift] for i in range(size) for j in range(size)]
    scale = lcm(*[f.denominator for f in used]) if used else 1
    rows = [[int(bf[i + j + 2 * shift] * scale) for j in range(size)] for i in range(size)]
    minors = _bareiss_leading_minors(rows)
    return [Fraction(m, scale ** (k + 1)) for k, m in enumerate(minors)]


def _cholesky_minors(A) -> Optional[List]:
    # leading minors as running products of squared Cholesky pivots
    n = A.rows
    L = mp.matrix(n, n)
    minors = []
    run = mp.mpf(1)
    for j in range(n):
        s = A[j, j] - mp.fsum(L[j, k] ** 2 for k in range(j))
        if s <= 0:
            return None
        L[j, j] = mp.sqrt(s)
        run *= s
        minors.append(+run)
        for i in range(j + 1, n):
            v = A[i, j] - mp.fsum(L[i, k] * L[j, k] for k in range(j))
            L[i, j] = v / L[j, j]
    return minors


def _hp_hankel_minors(b: MomentSequence, size: int, shift: int,
                      start_bits: int = DEFAULT_BITS) -> Tuple[List, int]:
    """Escalate precision until all leading minors stabilize to 1e-12 relative."""
    if size == 0:
        return [], start_bits
    bits = start_bits
    prev = None
    while bits <= PRECISION_CEILING_BITS:
        with mp.workprec(bits):
            A = mp.matrix(size, size)
            for i in range(size):
                for j in range(size):
                    A[i, j] = b[i + j + 2 * shift].to_mpf(bits)
            cur = _cholesky_minors(A)
        if cur is not None and prev is not None:
            stable = all(
                abs(c - p) <= STABILITY_REL * abs(c) if c != 0 else abs(p) <= STABILITY_REL
                for c, p in zip(cur, prev))
            if stable:
                return cur, bits
        if cur is not None:
            prev = cur
        bits *= 2
    raise PrecisionError(
        f"Hankel minors did not stabilize below {PRECISION_CEILING_BITS} bits",
        candidates=prev)


def hankel_pair(b: MomentSequence, n: int) -> HankelPair:
    """H_n and G_n by direct determinant evaluation."""
    if n < 0:
        raise ParameterError("order must be >= 0")
    if len(b) < 2 * n + 1:
        raise LengthError(f"need moments b_0..b_{2 * n}, have {len(b) - 1}")
    if b.kind == "exact":
        bf = b.fractions()
        H = _exact_hankel_minors(bf, n + 1, 0)
        G = _exact_hankel_minors(bf, n, 1)
        return HankelPair(n=n, H_n=ExactScalar.exact(H[n]),
                          G_n=ExactScalar.exact(G[n - 1]) if n >= 1 else ExactScalar.exact(1),
                          path="direct-determinant")
    H, bits_h = _hp_hankel_minors(b, n + 1, 0)
    if n >= 1:
        G, bits_g = _hp_hankel_minors(b, n, 1)
        g_n = ExactScalar.hp(G[n - 1], bits_g)
    else:
        g_n = ExactScalar.exact(1)
    return HankelPair(n=n, H_n=ExactScalar.hp(H[n], bits_h), G_n=g_n,
                      path="direct-determinant")


def _aitken_limit(v_quarter: float, v_half: float, v_last: float) -> float:
    d1 = v_half - v_quarter
    d2 = v_last - v_half
    dd = d2 - d1
    if dd <= 0:
        # decay not slowing down: no finite positive limit indicated
        return float("-inf")
    return v_last - d2 * d2 / dd


def _limit_flag(vals: Sequence[ExactScalar]) -> str:
    """Limit heuristic tuned for horizons around n_max = 64.

    degenerate-zero on any exact zero.  Otherwise the sequence is declared
    bounded away from zero when its last quarter varies by under 1%
    relative, or when Aitken extrapolation through var at n_max/4, n_max/2
    and n_max predicts a limit of at least 60% of the current value (an
    atom at zero keeps that fraction high; slowly determinate families
    fall below it).  Everything else counts as tending to zero.
    """
    if any(v == 0 for v in vals):
        return "degenerate-zero"
    f = [float(v) for v in vals]
    n_max = len(f) - 1
    if n_max < 4:
        return "tends-to-zero" if f[-1] < 0.5 * f[0] else "bounded-away-from-zero"
    tail = f[-max(2, n_max // 4):]
    if (max(tail) - min(tail)) / min(tail) < 0.01:
        return "bounded-away-from-zero"
    limit = _aitken_limit(f[n_max // 4], f[n_max // 2], f[n_max])
    if limit >= 0.6 * f[n_max]:
        return "bounded-away-from-zero"
    return "tends-to-zero"


def _closed_form_or_none(family: Optional[SpectralFamily], n: int,
                         bits: int = 512) -> Optional[ExactScalar]:
    if family is None or n < 1:
        return None
    if family.kind in (GAUSSIAN, BETA):
        return closed_form_variance(family, n, bits=bits)
    if family.kind == MIXTURE and family.inner.kind in (GAUSSIAN, BETA):
        inner = closed_form_variance(family.inner, n, bits=bits)
        g = family.gamma
        return ExactScalar.exact(g) + ExactScalar.exact(1 - g) * inner
    return None


def blue_variance_seq(b: MomentSequence, n_max: int) -> VarianceReport:
    """var_n = H_n/G_n for n = 0..n_max with closed-form residuals attached.

    var_0 = b_0 by the G_0 = 1 convention.  Once H_n hits an exact zero
    (finite support of m points, n >= m) the variance is zero from that
    order on, including where G_n vanishes as well.
    """
    if n_max < 0:
        raise ParameterError("n_max must be >= 0")
    if len(b) < 2 * n_max + 1:
        raise LengthError(f"need moments b_0..b_{2 * n_max}, have {len(b) - 1}")
    family = b.family()
    if b.kind == "exact":
        bf = b.fractions()
        H = _exact_hankel_minors(bf, n_max + 1, 0)
        G = _exact_hankel_minors(bf, n_max, 1)
        vars_: List[ExactScalar] = [ExactScalar.exact(bf[0])]
        for n in range(1, n_max + 1):
            if H[n] == 0:
                vars_.append(ExactScalar.exact(0))
            else:
                vars_.append(ExactScalar.exact(H[n] / G[n - 1]))
    else:
        H, bits_h = _hp_hankel_minors(b, n_max + 1, 0)
        G, _ = _hp_hankel_minors(b, n_max, 1) if n_max >= 1 else ([], bits_h)
        vars_ = [ExactScalar.hp(H[0], bits_h)]
        for n in range(1, n_max + 1):
            vars_.append(ExactScalar.hp(H[n] / G[n - 1], bits_h))
    entries = []
    for n, v in enumerate(vars_):
        cf = _closed_form_or_none(family, n)
        res = abs(v - cf) if cf is not None else None
        entries.append(VarianceEntry(n=n, var=v, path="direct-determinant",
                                     closed_form=cf, abs_residual=res))
    return VarianceReport(entries=tuple(entries), limit_flag=_limit_flag(vars_),
                          provenance=b.provenance)


def gaussian_recurrence(n: int) -> RecurrenceCoefficients:
    """Recurrence coefficients of the gaussian family: d_{2k-1} = k - 1/2, d_{2k} = k."""
    if n < 1:
        raise ParameterError("need n >= 1")
    d: List[Fraction] = []
    for k in range(1, n + 1):
        d.append(Fraction(2 * k - 1, 2))
        d.append(Fraction(k))
    return RecurrenceCoefficients(d=tuple(d))


def hankel_from_recurrence(d: Union[RecurrenceCoefficients, Iterable], n: int) -> ExactScalar:
    """H_n = prod_{i=1..n} (d_{2i-1} d_{2i})^{n-i+1} for b_0 = 1 sequences."""
    if n < 1:
        raise ParameterError("need n >= 1")
    coeffs = d.d if isinstance(d, RecurrenceCoefficients) else tuple(
        parse_rational(x) for x in d)
    if coeffs is None:
        raise ParameterError("recurrence coefficients (d) required, not canonical moments")
    if len(coeffs) < 2 * n:
        raise LengthError(f"need 2n = {2 * n} coefficients, have {len(coeffs)}")
    if any(x <= 0 for x in coeffs):
        raise DomainError("recurrence coefficients must be positive")
    out = Fraction(1)
    for i in range(1, n + 1):
        out *= (coeffs[2 * i - 2] * coeffs[2 * i - 1]) ** (n - i + 1)
    return ExactScalar.exact(out)


def beta_canonical_moments(alpha, n: int) -> RecurrenceCoefficients:
    """Canonical moments of the half-line image of the beta(alpha) family.

    p_{2j} = j/(2j + 1/2 + alpha), p_{2j-1} = (j - 1/2)/(2j - 1/2 + alpha).
    """
    alpha = parse_rational(alpha)
    if alpha <= -1:
        raise ParameterError(f"beta exponent must exceed -1, got {alpha}")
    if n < 1:
        raise ParameterError("need n >= 1")
    p: List[Fraction] = []
    for j in range(1, n + 1):
        p.append(Fraction(2 * j - 1, 2) / (Fraction(4 * j - 1, 2) + alpha))
        p.append(Fraction(j) / (Fraction(4 * j + 1, 2) + alpha))
    return RecurrenceCoefficients(p=tuple(p))


def hankel_from_canonical(p: Union[RecurrenceCoefficients, Iterable], n: int) -> ExactScalar:
    """H_n = prod_{i=1..n} (q_{2i-2} p_{2i-1} q_{2i-1} p_{2i})^{n+1-i}, q_0 = 1."""
    if n < 1:
        raise ParameterError("need n >= 1")
    moms = p.p if isinstance(p, RecurrenceCoefficients) else tuple(
        parse_rational(x) for x in p)
    if moms is None:
        raise ParameterError("canonical moments (p) required, not recurrence coefficients")
    if len(moms) < 2 * n:
        raise LengthError(f"need 2n = {2 * n} canonical moments, have {len(moms)}")
    if any(not (0 < x < 1) for x in moms):
        raise DomainError("canonical moments must lie strictly inside (0,1)")
    q = [Fraction(1)] + [1 - x for x in moms]  # q[j] = 1 - p_j, q[0] = 1
    out = Fraction(1)
    for i in range(1, n + 1):
        factor = q[2 * i - 2] * moms[2 * i - 2] * q[2 * i - 1] * moms[2 * i - 1]
        out *= factor ** (n + 1 - i)
    return ExactScalar.exact(out)


def _gamma_rp(x: Fraction) -> Tuple[Fraction, int]:
    """Gamma(x) as (rational, power of sqrt(pi)) for positive integer or
    half-integer x."""
    if x <= 0:
        raise DomainError(f"gamma argument must be positive, got {x}")
    if x.denominator == 1:
        return Fraction(factorial(x.numerator - 1)), 0
    if x.denominator == 2:
        k = (x.numerator - 1) // 2  # x = k + 1/2
        return Fraction(_dfact(2 * k - 1), 2 ** k), 1
    raise DomainError(f"gamma argument must be integer or half-integer, got {x}")


def closed_form_variance(family: SpectralFamily, n: int, bits: int = 512) -> ExactScalar:
    """Closed-form var_n for the gaussian and beta families.

    gaussian: 2^n n!/(2n+1)!!, exact for every n.  beta(alpha): exact via
    telescoping double-factorial Gamma ratios whenever 2*alpha is an
    integer, high-precision log-Gamma evaluation otherwise.
    """
    if n < 1:
        raise ParameterError("closed forms start at n = 1")
    if family.kind == GAUSSIAN:
        return ExactScalar.exact(Fraction(2 ** n * factorial(n), _dfact(2 * n + 1)))
    if family.kind != BETA:
        raise UnsupportedFamilyError(
            f"no closed-form variance for family {family.kind!r}")
    alpha = family.alpha
    ratio_dd = Fraction(_dfact(2 * n), _dfact(2 * n + 1))  # (2n)!!/(2n+1)!!
    if (2 * alpha).denominator == 1:
        # sqrt(pi) powers cancel between the Beta-function and Gamma ratios
        g_2a2, p1 = _gamma_rp(2 * alpha + 2)
        g_a1, p2 = _gamma_rp(alpha + 1)
        g_num, p3 = _gamma_rp(n + 1 + alpha)
        g_den, p4 = _gamma_rp(n + Fraction(3, 2) + alpha)
        two_pow = int(2 * alpha + 1)  # >= 0 since alpha > -1 and 2*alpha integer
        rational = (g_2a2 / (g_a1 * g_a1)) / Fraction(2) ** two_pow * ratio_dd * g_num / g_den
        power = 1 + p1 - 2 * p2 + p3 - p4
        if power != 0:
            raise DomainError("sqrt(pi) powers failed to cancel in exact closed form")
        return ExactScalar.exact(rational)
    with mp.workprec(bits):
        a = mp.mpf(alpha.numerator) / alpha.denominator
        log_val = (mp.log(mp.pi) / 2
                   - (2 * a + 1) * mp.log(2)
                   - mp.log(mp.beta(a + 1, a + 1))
                   + mp.log(mp.mpf(ratio_dd.numerator)) - mp.log(mp.mpf(ratio_dd.denominator))
                   + mp.loggamma(n + 1 + a) - mp.loggamma(n + mp.mpf(3) / 2 + a))
        return ExactScalar.hp(mp.exp(log_val), bits)


def asymptotic_variance(family: SpectralFamily, n: int,
                        bits: int = DEFAULT_BITS) -> ExactScalar:
    """Leading asymptotics of var_n for the gaussian and beta families."""
    if n < 1:
        raise ParameterError("asymptotics start at n = 1")
    if family.kind == GAUSSIAN:
        with mp.workprec(bits):
            x = mp.mpf(n)
            val = mp.sqrt(mp.pi) / (2 * mp.sqrt(x)) * (
                1 - mp.mpf(3) / (8 * x) + mp.mpf(25) / (128 * x * x))
            return ExactScalar.hp(val, bits)
    if family.kind != BETA:
        raise UnsupportedFamilyError(
            f"no asymptotic variance for family {family.kind!r}")
    alpha = family.alpha
    if alpha == Fraction(-1, 2):
        return ExactScalar.exact(Fraction(1, 2 * n))
    with mp.workprec(bits):
        a = mp.mpf(alpha.numerator) / alpha.denominator
        val = mp.pi / (2 ** (2 * a + 2) * mp.beta(a + 1, a + 1)) / n
        return ExactScalar.hp(val, bits)


def polyapprox_oracle(b: MomentSequence, n: int) -> ExactScalar:
    """Best-approximation value V* = min ||1 - sum a_i t^i||^2 in L2 terms.

    Solves (b_{i+j})_{i,j=1..n} a = (b_i)_{i=1..n} and returns
    V* = b_0 - a . (b_1..b_n).  Equals H_n/G_n by the Schur-complement
    identity; computed here by a linear solve, independent of any
    determinant code.
    """
    if n < 0:
        raise ParameterError("order must be >= 0")
    if len(b) < 2 * n + 1:
        raise LengthError(f"need moments b_0..b_{2 * n}, have {len(b) - 1}")
    if n == 0:
        return b[0]
    if b.kind == "exact":
        bf = b.fractions()
        A = [[bf[i + j] for j in range(1, n + 1)] for i in range(1, n + 1)]
        rhs = [bf[i] for i in range(1, n + 1)]
        sol = _solve_fraction_system(A, rhs)
        v = bf[0] - sum(a * bi for a, bi in zip(sol, rhs))
        return ExactScalar.exact(v)
    bits = max(s.precision_bits or DEFAULT_BITS for s in b.b)
    with mp.workprec(bits):
        A = mp.matrix(n, n)
        for i in range(n):
            for j in range(n):
                A[i, j] = b[i + j + 2].to_mpf(bits)
        rhs = mp.matrix([b[i].to_mpf(bits) for i in range(1, n + 1)])
        try:
            sol = mp.lu_solve(A, rhs)
        except ZeroDivisionError as exc:
            raise DegenerateError(f"singular Gram matrix at order {n}") from exc
        v = b[0].to_mpf(bits) - mp.fsum(sol[i] * rhs[i] for i in range(n))
        return ExactScalar.hp(v, bits)


def _solve_fraction_system(A: List[List[Fraction]], rhs: List[Fraction]) -> List[Fraction]:
    # exact gaussian elimination with partial pivoting
    n = len(rhs)
    M = [row[:] + [r] for row, r in zip(A, rhs)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(M[r][col]))
        if M[piv][col] == 0:
            raise DegenerateError(f"singular Gram matrix at order {n}")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        for r in range(col + 1, n):
            f = M[r][col] * inv
            if f:
                for c in range(col, n + 1):
                    M[r][c] -= f * M[col][c]
    sol = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        s = M[r][n] - sum(M[r][c] * sol[c] for c in range(r + 1, n))
        sol[r] = s / M[r][r]
    return sol


def _ldl_negative_count(A, t) -> Optional[int]:
    # inertia of A - t I via an unpivoted LDL pass; None on exact breakdown
    n = A.rows
    L = [[mp.mpf(0)] * n for _ in range(n)]
    d = [mp.mpf(0)] * n
    neg = 0
    for j in range(n):
        s = A[j, j] - t - mp.fsum(L[j][k] * L[j][k] * d[k] for k in range(j))
        if s == 0:
            return None
        d[j] = s
        if s < 0:
            neg += 1
        for i in range(j + 1, n):
            v = A[i, j] - mp.fsum(L[i][k] * L[j][k] * d[k] for k in range(j))
            L[i][j] = v / s
    return neg


def smallest_eigenvalue_diag(b: MomentSequence, n: int, bits: int = 512) -> ExactScalar:
    """Smallest eigenvalue of (b_{i+j})_{i,j=0..n} by inertia bisection.

    Bisection on the shift t: the count of negative LDL pivots of the
    shifted matrix tells whether t has passed the smallest eigenvalue.
    The matrix is positive definite for infinite-support input, and
    lambda_min <= b_0 (Rayleigh quotient at the first unit vector), which
    brackets the search in (0, b_0].
    """
    if n < 0:
        raise ParameterError("order must be >= 0")
    if len(b) < 2 * n + 1:
        raise LengthError(f"need moments b_0..b_{2 * n}, have {len(b) - 1}")
    if n == 0:
        return b[0]
    with mp.workprec(bits):
        A = mp.matrix(n + 1, n + 1)
        for i in range(n + 1):
            for j in range(n + 1):
                A[i, j] = b[i + j].to_mpf(bits)
        lo = mp.mpf(0)
        hi = b[0].to_mpf(bits)
        nudge = mp.mpf(2) ** (-(bits // 2))
        for _ in range(bits):
            mid = (lo + hi) / 2
            if mid == lo or mid == hi:
                break
            c = _ldl_negative_count(A, mid)
            if c is None:
                mid *= (1 + nudge)
                c = _ldl_negative_count(A, mid)
                if c is None:
                    raise PrecisionError("LDL breakdown persisted during bisection")
            if c >= 1:
                hi = mid
            else:
                lo = mid
        return ExactScalar.hp((lo + hi) / 2, bits)
