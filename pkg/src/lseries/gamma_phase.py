"""Log-gamma, phase functions, and completed values.

All precision-sensitive work in the package runs through the
PrecisionContext defined here.  ``log_gamma`` is an independent
implementation (recurrence shift into the asymptotic region, then the
Stirling series with exact Bernoulli numbers); the library routine is
used only as a cross-check in the test suite.

The phase function ``phase_theta`` is the rotation that makes the
completed value real (or purely imaginary, depending on the sign
character) on the central vertical line.  It is anchored at t = 0: the
constant arguments of the gamma factors at the central point are
subtracted, so phase_theta(0) = 0 and the function is continuous in t
with no modular folding.  The constant that restores the exact rotation
(root-number phase plus the subtracted anchors) is carried separately on
the L-function description as ``phi0``.

This module deliberately imports nothing else from the package: the
L-function descriptions it receives are duck-typed (``gamma.scale_N``,
``gamma.factors``, ``k``, ``phi0``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from mpmath import mp, mpc, mpf


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision and the knobs of the log-gamma evaluator.

    digits          decimal digits carried through evaluations
    stirling_terms  lower bound on the number of asymptotic terms used
    shift_threshold recurrence shift target: arguments are raised until
                    their real part is at least this before the
                    asymptotic series is applied
    """

    digits: int = 64
    stirling_terms: int = 10
    shift_threshold: int = 100

    @property
    def workdps(self) -> int:
        return self.digits + 15

    @property
    def eps(self) -> mpf:
        return mpf(10) ** (-self.digits)


DEFAULT_CONTEXT = PrecisionContext()


# ---------------------------------------------------------------------------
# Bernoulli numbers (exact)

_BERNOULLI: list = [Fraction(1), Fraction(-1, 2)]  # B_0, B_1


def bernoulli_number(m: int) -> Fraction:
    """Exact Bernoulli number B_m (convention B_1 = -1/2), cached."""
    while len(_BERNOULLI) <= m:
        n = len(_BERNOULLI)
        acc = Fraction(0)
        for j in range(n):
            acc += comb(n + 1, j) * _BERNOULLI[j]
        _BERNOULLI.append(-acc / (n + 1))
    return _BERNOULLI[m]


# ---------------------------------------------------------------------------
# log-gamma

_PLAN_CACHE: dict = {}


def _stirling_plan(digits: int, threshold: int) -> tuple[int, int]:
    """Choose (shift target S, term count R) for the asymptotic series.

    The error after R terms, for arguments w with Re w >= S, is below
    |B_{2R+2}| * 2^(R+1) / ((2R+2)(2R+1) S^(2R+1)); the plan picks the
    smallest R pushing that under 10^-(digits+2), enlarging S if the
    series bottoms out too early.
    """
    key = (digits, threshold)
    if key in _PLAN_CACHE:
        return _PLAN_CACHE[key]
    target = Fraction(1, 10 ** (digits + 2))
    S = max(int(threshold), 8)
    while True:
        best = None
        R = 1
        prev = None
        while R <= 8 * S:
            b = abs(bernoulli_number(2 * R + 2))
            bound = b * 2 ** (R + 1) / ((2 * R + 2) * (2 * R + 1) * Fraction(S) ** (2 * R + 1))
            if bound < target:
                best = R
                break
            if prev is not None and bound > prev:
                break  # asymptotic floor reached without meeting the target
            prev = bound
            R += 1
        if best is not None:
            _PLAN_CACHE[key] = (S, best)
            return S, best
        S = S + max(S // 2, 8)


def log_gamma(z, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpc:
    """Principal branch of log Gamma(z), holomorphic off (-inf, 0].

    Shifts the argument up by the recurrence until its real part reaches
    the plan's target, subtracting principal logs of the skipped factors,
    then applies the Stirling series with exact Bernoulli coefficients.
    """
    S, R = _stirling_plan(ctx.digits, ctx.shift_threshold)
    floorR = max(R, ctx.stirling_terms)
    with mp.workdps(ctx.workdps):
        w = mpc(z)
        if w.imag == 0 and w.real <= 0:
            raise ValueError("log_gamma: argument on the branch cut (-inf, 0]")
        acc = mpc(0)
        while w.real < S:
            acc += mp.log(w)
            w = w + 1
        res = (w - mpf(1) / 2) * mp.log(w) - w + mp.log(2 * mp.pi) / 2
        w2 = w * w
        zpow = w
        for r in range(1, floorR + 1):
            b = bernoulli_number(2 * r)
            term = mpf(b.numerator) / (b.denominator * (2 * r) * (2 * r - 1)) / zpow
            res += term
            zpow *= w2
        return res - acc


def reduce_angle(x) -> mpf:
    """Reduce an angle to the half-open interval (-pi, pi]."""
    with mp.workdps(mp.dps + 5):
        y = mp.fmod(x, 2 * mp.pi)
        if y > mp.pi:
            y -= 2 * mp.pi
        elif y <= -mp.pi:
            y += 2 * mp.pi
        return y


# ---------------------------------------------------------------------------
# phase function and completed values


def phase_theta(lspec, t, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """Continuous phase of the completed value along the central line.

    phase_theta(t) = t*log(scale_N)
                   + sum_i [Im log Gamma(b_i (k/2 + i t) + c_i)
                            - Im log Gamma(b_i k/2 + c_i)]

    Continuous in t, no 2 pi folding, and phase_theta(0) = 0.  Together
    with the constant ``lspec.phi0``, exp(i(phase_theta(t) + phi0)) L(k/2+it)
    is real on the line for even sign character and purely imaginary for
    odd (see the ``parity`` field of the description).
    """
    with mp.workdps(ctx.workdps):
        tt = mpf(t)
        half_k = mpf(lspec.k) / 2
        total = tt * mp.log(mpf(lspec.gamma.scale_N))
        for b, c in lspec.gamma.factors:
            b = mpf(b)
            c = mpc(c)
            total += log_gamma(b * (half_k + 1j * tt) + c, ctx).imag
            total -= log_gamma(b * half_k + c, ctx).imag
        return total


def phase_theta_mod(lspec, t, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """phase_theta reduced to (-pi, pi]."""
    with mp.workdps(ctx.workdps):
        return reduce_angle(phase_theta(lspec, t, ctx))


def gamma_prefactor(lspec, s, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpc:
    """scale_N**s * prod Gamma(b_i s + c_i) at the working precision."""
    with mp.workdps(ctx.workdps):
        s = mpc(s)
        acc = s * mp.log(mpf(lspec.gamma.scale_N))
        for b, c in lspec.gamma.factors:
            acc += log_gamma(mpf(b) * s + mpc(c), ctx)
        return mp.exp(acc)


def completed_R(lspec, s, lvalue, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpc:
    """Completed value scale_N**s * prod Gamma(b_i s + c_i) * L(s).

    ``lvalue`` is the already-computed Dirichlet-series value at s; this
    routine supplies the archimedean prefactor only, so it needs no
    evaluator and stays import-free.
    """
    with mp.workdps(ctx.workdps):
        return gamma_prefactor(lspec, s, ctx) * mpc(lvalue)


def on_line_factor(lspec, t, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpc:
    """exp(i (phase_theta(t) + phi0)): the unimodular rotation that makes
    L(k/2 + it) real (even parity) or purely imaginary (odd parity)."""
    with mp.workdps(ctx.workdps):
        ang = phase_theta(lspec, t, ctx) + mpf(lspec.phi0)
        return mp.exp(1j * ang)
