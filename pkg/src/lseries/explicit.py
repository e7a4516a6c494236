"""Explicit-formula comparison for the weight-8 form.

One side is the weighted prime-power sum over the unitarized local
roots, with a half-weight convention at the boundary; the other is a
sum over the low-lying zeros of the same L-function together with two
elementary terms: a closed form collecting the trivial zeros and the
logarithmic derivative of the series at the right edge of the critical
strip.  Away from the jumps the two sides agree to a few tenths once
several dozen zeros are included, and the comparison table makes the
jumps visible by printing each one three times (left limit, half-weight
value, right limit).
"""

from __future__ import annotations

import csv
import io
from typing import Dict, List, Sequence, Tuple

from mpmath import mp, mpf

from .abel import evaluate
from .coefficients import DirichletCoefficients, cusp_s8_coeffs
from .gamma_phase import DEFAULT_CONTEXT, PrecisionContext
from .model import builtin_spec

__all__ = [
    "comparison_csv_text",
    "comparison_rows",
    "log_derivative_point",
    "oscillatory_sum",
    "prime_power_jumps",
    "prime_side",
    "satake_trace",
    "trivial_term",
    "write_comparison_csv",
    "zero_side",
    "zero_term",
]

# weight-8 form on level 2: unitarization divides a_p by p^((8-1)/2),
# and the local factor at the ramified prime 2 is linear
_HALF_WEIGHT = mpf(7) / 2
_RAMIFIED = (2,)


def satake_trace(a_p: int, p: int, n: int) -> mpf:
    """alpha_p**n + beta_p**n for the unitarized local roots.

    At a good prime the roots satisfy alpha + beta = a_p / p^(7/2) and
    alpha * beta = 1, so the power sums follow the two-term recurrence
    u_n = c u_(n-1) - u_(n-2).  At the ramified prime the factor is
    linear: the single root is a_p / p^(7/2) and beta = 0.
    """

    if n < 1:
        raise ValueError("n must be at least 1")
    c = mpf(a_p) / mp.power(p, _HALF_WEIGHT)
    if p in _RAMIFIED:
        return c ** n
    prev, cur = mpf(2), c
    for _ in range(n - 1):
        prev, cur = cur, c * cur - prev
    return cur


def prime_power_jumps(x_hi) -> List[Tuple[int, int, int]]:
    """Prime powers up to x_hi as (p**n, p, n), sorted by value."""

    limit = int(mpf(x_hi))
    sieve = [True] * (limit + 1)
    jumps = []
    for p in range(2, limit + 1):
        if not sieve[p]:
            continue
        for m in range(2 * p, limit + 1, p):
            sieve[m] = False
        q, n = p, 1
        while q <= limit:
            jumps.append((q, p, n))
            q *= p
            n += 1
    jumps.sort()
    return jumps


def prime_side(x, coeffs: DirichletCoefficients, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """Sum of (alpha_p**n + beta_p**n) log p over p**n <= x, half at x."""

    with mp.workdps(ctx.workdps):
        x = mpf(x)
        total = mpf(0)
        for value, p, n in prime_power_jumps(x):
            if value > x:
                continue
            term = satake_trace(coeffs[p], p, n) * mp.log(p)
            total += term / 2 if value == x else term
        return total


def trivial_term(x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """Closed form collecting the trivial-zero contribution.

    log((sqrt(x)+1)/(sqrt(x)-1)) minus the first three terms of its own
    expansion in 1/sqrt(x), leaving a tail that decays like x^(-7/2).
    """

    with mp.workdps(ctx.workdps):
        x = mpf(x)
        if x <= 1:
            raise ValueError("the closed form needs x > 1")
        rx = mp.sqrt(x)
        return (
            mp.log((rx + 1) / (rx - 1))
            - 2 / rx
            - mpf(2) / 3 / (rx ** 3)
            - mpf(2) / 5 / (rx ** 5)
        )


def zero_term(x, t, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """Contribution of the zero pair at height t in unitarized position.

    sqrt(x) (t^2 + 1/4)^(-1) [cos(t log x) + 2 t sin(t log x)], which is
    2 Re(x^rho / rho) for rho = 1/2 + i t.
    """

    with mp.workdps(ctx.workdps):
        x, t = mpf(x), mpf(t)
        u = t * mp.log(x)
        return mp.sqrt(x) / (t ** 2 + mpf(1) / 4) * (mp.cos(u) + 2 * t * mp.sin(u))


def oscillatory_sum(x, ordinates: Sequence, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """Sum of zero_term over the supplied zero ordinates."""

    with mp.workdps(ctx.workdps):
        return mp.fsum(zero_term(x, t, ctx) for t in ordinates)


def log_derivative_point(
    N: int = 2000,
    l: int = 30,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
) -> Tuple[mpf, mpf, mpf]:
    """(value, derivative, ratio) of the series at the strip's right edge.

    The derivative comes from central differences under two rounds of
    step-halving extrapolation, which removes the h^2 and h^4 error
    terms; the evaluation point 7/2 sits half a unit off the central
    point, where the level ladder converges to far more digits than the
    difference scheme needs.
    """

    spec = builtin_spec("s8f", N)
    with mp.workdps(ctx.workdps):
        s0 = _HALF_WEIGHT

        def f(s):
            return evaluate(spec, mp.mpc(s, 0), N, l, ctx, apply_phase=False).value.real

        value = f(s0)
        h = mpf(1) / 64
        table = []
        for j in range(3):
            hj = h / 2 ** j
            table.append((f(s0 + hj) - f(s0 - hj)) / (2 * hj))
        for m in range(1, 3):
            factor = mpf(4) ** m
            table = [
                (factor * table[j + 1] - table[j]) / (factor - 1)
                for j in range(len(table) - 1)
            ]
        derivative = table[0]
        return value, derivative, derivative / value


def zero_side(
    x,
    ordinates: Sequence,
    ratio,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
) -> mpf:
    """Smooth side of the comparison: -zeros + trivial tail - ratio."""

    with mp.workdps(ctx.workdps):
        return -oscillatory_sum(x, ordinates, ctx) + trivial_term(x, ctx) - mpf(ratio)


def comparison_rows(
    x_lo,
    x_hi,
    ordinates: Sequence,
    coeffs: DirichletCoefficients,
    ratio,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
) -> List[Dict[str, mpf]]:
    """Table of both sides over [x_lo, x_hi].

    Between consecutive jumps the table carries one midpoint row; each
    prime power p**n inside the window appears three times, as the left
    limit, the half-weight value, and the right limit of the prime side
    at the same x.  Every row records x, prime_side, zero_side, and
    their difference.
    """

    with mp.workdps(ctx.workdps):
        x_lo, x_hi = mpf(x_lo), mpf(x_hi)
        if not x_hi > x_lo:
            raise ValueError("need x_lo < x_hi")
        jumps = [(mpf(v), p, n) for v, p, n in prime_power_jumps(x_hi) if x_lo < v <= x_hi]

        rows: List[Dict[str, mpf]] = []

        def add(x, p_value):
            z_value = zero_side(x, ordinates, ratio, ctx)
            rows.append(
                {
                    "x": x,
                    "prime_side": p_value,
                    "zero_side": z_value,
                    "difference": p_value - z_value,
                }
            )

        # running value is the right limit: full weight for p**n <= x_lo
        acc = mp.fsum(
            satake_trace(coeffs[p], p, n) * mp.log(p)
            for value, p, n in prime_power_jumps(x_lo)
        )
        prev = x_lo
        for value, p, n in jumps:
            add((prev + value) / 2, acc)
            term = satake_trace(coeffs[p], p, n) * mp.log(p)
            add(value, acc)
            add(value, acc + term / 2)
            add(value, acc + term)
            acc += term
            prev = value
        if x_hi > prev:
            add((prev + x_hi) / 2, acc)
        return rows


def comparison_csv_text(rows: Sequence[Dict[str, mpf]]) -> str:
    """Comparison rows as CSV text with 20 significant digits."""

    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(["x", "prime_side", "zero_side", "difference"])
    for row in rows:
        writer.writerow(
            [mp.nstr(row[key], 20) for key in ("x", "prime_side", "zero_side", "difference")]
        )
    return buffer.getvalue()


def write_comparison_csv(path: str, rows: Sequence[Dict[str, mpf]]) -> None:
    """Write comparison rows as CSV with 20 significant digits."""

    with open(path, "w", newline="") as handle:
        handle.write(comparison_csv_text(rows))
