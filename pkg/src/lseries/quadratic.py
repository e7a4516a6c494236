"""Real quadratic fields Q(sqrt(d)): fundamental units and Hecke characters.

Supports the class-number-one fields with d in {2, 5, 19, 29, 31, 67}.
Elements are kept exact as integer triples (a, b, t) denoting
(a + b*sqrt(d)) / t; the fundamental unit comes out of the continued
fraction of sqrt(d) (or (1 + sqrt(d))/2 when d = 1 mod 4) and is stored
as an exact coordinate pair in the integral basis.  On top of that sit
the unramified Hecke characters chi of modulus (1): chi is pinned down
by a parity bit m and a frequency v1 chosen so that chi is trivial on
units, and evaluated on a principal ideal through any generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from mpmath import mp, mpf

from .gamma_phase import DEFAULT_CONTEXT, PrecisionContext

# Fields known to have class number one; every construction below leans on
# all ideals being principal, so other d are rejected outright.
CLASS_NUMBER_ONE = (2, 5, 19, 29, 31, 67)

# Generator searches scan b = 0, 1, 2, ... up to this bound.  For class
# number one the smallest generator of a degree-one prime ideal has
# b = O(sqrt(p * eps)), far below the bound for any norm we touch.
GENERATOR_SEARCH_BOUND = 10 ** 6

# An element (a + b sqrt(d)) / t of the ring of integers: t = 1 always
# works, t = 2 is allowed for d = 1 mod 4 when a and b share parity.
Element = Tuple[int, int, int]


@dataclass(frozen=True)
class QuadraticFieldData:
    """Invariants of Q(sqrt(d)) needed by the Hecke-character machinery.

    d         square-free integer > 1
    D         field discriminant (d for d = 1 mod 4, else 4d)
    eps       fundamental unit > 1 as an exact pair (x, y) in the
              integral basis {1, sqrt(d)} or {1, (1 + sqrt(d))/2}
    norm_eps  norm of eps, +1 or -1
    log_eps   natural log of the real embedding eps > 1 (mpf)
    """

    d: int
    D: int
    eps: Tuple[int, int]
    norm_eps: int
    log_eps: mpf


@dataclass(frozen=True)
class HeckeCharParams:
    """Data of a Hecke character of modulus (1) on a class-number-one field.

    The character of a principal ideal (alpha) is

        chi((alpha)) = sgn(N(alpha))^m * |alpha'|^(-i v1)

    with alpha' the first real embedding, m in {0, 1} and v1 real.  Being
    well defined forces eps^(i v1) = sgn(N(eps))^m, which quantizes v1:
    v1 = -2 n pi / log eps, except in the odd case m = 1 with N(eps) = -1
    where v1 = -(2n + 1) pi / log eps.  v2 stays 0 throughout (the second
    embedding never carries a frequency here).
    """

    field: QuadraticFieldData
    n: int
    m: int
    v1: mpf
    v2: mpf


def _is_squarefree(d: int) -> bool:
    if d % 4 == 0:
        return False
    q = 3
    while q * q <= d:
        if d % (q * q) == 0:
            return False
        q += 2
    return True


def pair_to_element(d: int, pair: Tuple[int, int]) -> Element:
    """Convert integral-basis coordinates (x, y) to an (a, b, t) triple.

    The basis is {1, sqrt(d)} for d = 2, 3 mod 4 and {1, (1 + sqrt(d))/2}
    for d = 1 mod 4.
    """

    x, y = pair
    if d % 4 == 1:
        return (2 * x + y, y, 2)
    return (x, y, 1)


def element_norm(elem: Element, d: int) -> int:
    """Exact norm (a^2 - d b^2) / t^2 of an integral element."""

    a, b, t = elem
    num = a * a - d * b * b
    if num % (t * t) != 0:
        raise ValueError(f"element {elem} is not integral in Q(sqrt({d}))")
    return num // (t * t)


def element_embedding(elem: Element, d: int):
    """First real embedding (a + b sqrt(d)) / t at the current mp precision."""

    a, b, t = elem
    return (a + b * mp.sqrt(d)) / t


def fundamental_unit(d: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> QuadraticFieldData:
    """Smallest unit > 1 of the ring of integers of Q(sqrt(d)), exactly.

    Expands theta0 = sqrt(d) (or (1 + sqrt(d))/2 when d = 1 mod 4) as a
    continued fraction with the exact (P, Q) state recurrence, detects the
    cycle of the purely periodic tail and applies the cycle's convergent
    matrix to the tail value theta*: eps = q_(l-1) theta* + q_(l-2) is the
    fundamental automorphism of the maximal order.
    """

    if d <= 1 or not _is_squarefree(d):
        raise ValueError(f"d must be a square-free integer > 1, got {d}")
    if d not in CLASS_NUMBER_ONE:
        raise ValueError(
            f"Q(sqrt({d})) is outside the supported class-number-one fields {CLASS_NUMBER_ONE}"
        )

    sq = math.isqrt(d)
    if d % 4 == 1:
        P, Q = 1, 2
    else:
        P, Q = 0, 1

    seen = {}
    states = []
    partials = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(states)
        states.append((P, Q))
        a = (P + sq) // Q
        partials.append(a)
        P = a * Q - P
        Q = (d - P * P) // Q
    start = seen[(P, Q)]

    # Convergents of one full period of the purely periodic tail.
    p1, p0 = 1, 0  # p_(i-1), p_(i-2)
    q1, q0 = 0, 1
    for a in partials[start:]:
        p1, p0 = a * p1 + p0, p1
        q1, q0 = a * q1 + q0, q1

    Ps, Qs = states[start]
    # eps = q1 * (Ps + sqrt(d))/Qs + q0 = A + B sqrt(d) with exact A, B.
    A = Fraction(q1 * Ps + q0 * Qs, Qs)
    B = Fraction(q1, Qs)

    if d % 4 == 1:
        x, y = A - B, 2 * B
    else:
        x, y = A, B
    if x.denominator != 1 or y.denominator != 1:
        raise AssertionError(f"unit for d={d} fell outside the integral basis: {A} + {B} sqrt(d)")
    x, y = int(x), int(y)

    if d % 4 == 1:
        norm = x * x + x * y - y * y * (d - 1) // 4
        D = d
    else:
        norm = x * x - d * y * y
        D = 4 * d
    if norm not in (1, -1):
        raise AssertionError(f"automorph for d={d} is not a unit: norm {norm}")

    with mp.workdps(ctx.workdps):
        emb = element_embedding(pair_to_element(d, (x, y)), d)
        if emb <= 1:
            raise AssertionError(f"unit for d={d} is not > 1")
        log_eps = mp.log(emb)

    return QuadraticFieldData(d=d, D=D, eps=(x, y), norm_eps=norm, log_eps=log_eps)


def unit_log(field: QuadraticFieldData, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """log(eps) recomputed from the exact pair at ctx's working precision."""

    with mp.workdps(ctx.workdps):
        return mp.log(element_embedding(pair_to_element(field.d, field.eps), field.d))


def hecke_char_params(
    field: QuadraticFieldData,
    n: int,
    m: int,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
) -> HeckeCharParams:
    """Build the index-n character with parity bit m, checking unit triviality."""

    if m not in (0, 1):
        raise ValueError(f"parity bit m must be 0 or 1, got {m}")
    log_eps = unit_log(field, ctx)
    with mp.workdps(ctx.workdps):
        if m == 1 and field.norm_eps == -1:
            v1 = -(2 * n + 1) * mp.pi / log_eps
        else:
            v1 = -2 * n * mp.pi / log_eps
        target = -1 if (m == 1 and field.norm_eps == -1) else 1
        resid = abs(mp.expj(v1 * log_eps) - target)
        if resid > mpf(10) ** (-(ctx.digits - 5)):
            raise ValueError(f"character (n={n}, m={m}) is not trivial on units: residual {resid}")
        return HeckeCharParams(field=field, n=n, m=m, v1=v1, v2=mp.mpf(0))


def chi_star(params: HeckeCharParams, elem: Element, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Character value sgn(N(alpha))^m |alpha'|^(-i v1) of a principal ideal.

    Depends only on the ideal (alpha): multiplying the generator by -1 or
    by a power of eps leaves the value unchanged (up to working precision).
    """

    nrm = element_norm(elem, params.field.d)
    if nrm == 0:
        raise ValueError("chi_star of the zero ideal")
    with mp.workdps(ctx.workdps):
        emb = abs(element_embedding(elem, params.field.d))
        val = mp.expj(-params.v1 * mp.log(emb))
        if params.m == 1 and nrm < 0:
            val = -val
        return val


def conjugate_embedding_abs(elem: Element, d: int):
    """|second embedding| = |N(alpha)| / |first embedding| at mp precision."""

    a, b, t = elem
    return abs((a - b * mp.sqrt(d)) / t)


def chi_star_conjugate(params: HeckeCharParams, elem: Element, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Character value of the conjugate ideal (alpha-bar)."""

    nrm = element_norm(elem, params.field.d)
    if nrm == 0:
        raise ValueError("chi_star of the zero ideal")
    with mp.workdps(ctx.workdps):
        emb = conjugate_embedding_abs(elem, params.field.d)
        val = mp.expj(-params.v1 * mp.log(emb))
        if params.m == 1 and nrm < 0:
            val = -val
        return val


def kronecker_symbol(D: int, p: int) -> int:
    """Kronecker symbol (D / p) for prime p: +1 split, -1 inert, 0 ramified."""

    if D % p == 0:
        return 0
    if p == 2:
        return 1 if D % 8 in (1, 7) else -1
    r = pow(D % p, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def splitting_type(field: QuadraticFieldData, p: int) -> str:
    """'split', 'inert' or 'ramified' for the rational prime p."""

    s = kronecker_symbol(field.D, p)
    if s == 1:
        return "split"
    if s == -1:
        return "inert"
    return "ramified"


def prime_ideal_generator(field: QuadraticFieldData, p: int) -> Element:
    """Generator of a prime ideal of norm p (split or ramified p only).

    Scans b = 0, 1, 2, ... for exact solutions of a^2 - d b^2 = +-p t^2
    with t = 1 (plus t = 2 with a = b mod 2 when d = 1 mod 4); the first
    hit is returned as (a, b, t) with norm +-p.  Class number one makes
    the search succeed well inside the bound.
    """

    d = field.d
    ts = (1, 2) if d % 4 == 1 else (1,)
    for b in range(GENERATOR_SEARCH_BOUND + 1):
        db2 = d * b * b
        for t in ts:
            pt2 = p * t * t
            for target in (db2 + pt2, db2 - pt2):
                if target < 0:
                    continue
                a = math.isqrt(target)
                if a * a != target:
                    continue
                if t == 2 and (a - b) % 2 != 0:
                    continue
                return (a, b, t)
    raise RuntimeError(f"no generator found for a prime of norm {p} in Q(sqrt({d}))")
