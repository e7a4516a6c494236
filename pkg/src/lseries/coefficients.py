"""Dirichlet coefficient factories for the built-in L-function families.

Eight families are produced here, all exact until the last moment:

  s8f     weight-8 level-2 cusp form (eta(z) eta(2z))^8, integer a_n
  s92g    weight-9/2 form theta^-3 eta(2z)^12, integer c_n
  hplus   Kohnen combination delta - 2^-6 delta_0, dyadic rational b+_n
  hminus  Kohnen combination delta + 2^-6 delta_0, dyadic rational b-_n
  sym3    symmetric cube of the discriminant form, integer a_n
  sym4    symmetric fourth power of the discriminant form, integer a_n
  hecke   unramified Hecke character on Q(sqrt(d)), complex a_n
  artin   degree-4 representation cut out of X^5 - X + 1, integer a_n

Everything with an Euler product is assembled by expanding exact local
factors and sieving multiplicatively.  Complex values (the Hecke family
only) are produced at the precision of the supplied context.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, List, Sequence, Tuple

from mpmath import mp, mpc, mpf
from sympy import primerange

from .gamma_phase import DEFAULT_CONTEXT, PrecisionContext
from .qseries import (
    eta_qexp,
    qseries_dilate,
    qseries_inv,
    qseries_mul,
    qseries_pow,
    theta_qexp,
)
from .quadratic import (
    HeckeCharParams,
    chi_star,
    chi_star_conjugate,
    prime_ideal_generator,
    splitting_type,
)


@dataclass(frozen=True)
class DirichletCoefficients:
    """Coefficients a_1..a_N of a Dirichlet series, 1-based via [n].

    values[n-1] holds a_n.  Integer families keep exact ints, the Kohnen
    combinations exact Fractions, the Hecke characters mpc at working
    precision; imaginary parts of real families are exactly zero.
    """

    family: str
    length: int
    values: tuple

    def __getitem__(self, n: int):
        if not 1 <= n <= self.length:
            raise IndexError(f"coefficient index {n} outside 1..{self.length}")
        return self.values[n - 1]


def _primes(M: int) -> List[int]:
    return list(primerange(2, M + 1))


# ---------------------------------------------------------------------------
# q-expansion families


@lru_cache(maxsize=8)
def cusp_s8_coeffs(M: int) -> DirichletCoefficients:
    """a_n of the weight-8 level-2 eigenform (eta(z) eta(2z))^8.

    The q-prefactor q^(24/24) shifts everything by one: a_n is the
    coefficient of q^(n-1) in the plain product part.
    """

    base = qseries_mul(eta_qexp(M), qseries_dilate(eta_qexp(M // 2 + 1), 2, M), M)
    f8 = qseries_pow(base, 8, M)
    return DirichletCoefficients("s8f", M, tuple(f8[n - 1] for n in range(1, M + 1)))


@lru_cache(maxsize=8)
def cusp_s92_coeffs(M: int) -> DirichletCoefficients:
    """c_n of theta(z)^-3 eta(2z)^12 (weight 9/2, no Euler product).

    eta(2z)^12 carries q^(24/24); theta^-3 is a unit power series, so c_n
    is the coefficient of q^(n-1) in inv(theta^3) * dilated-eta^12.
    """

    e2_12 = qseries_pow(qseries_dilate(eta_qexp(M // 2 + 1), 2, M), 12, M)
    th3 = qseries_pow(theta_qexp(M), 3, M)
    part = qseries_mul(e2_12, qseries_inv(th3, M), M)
    return DirichletCoefficients("s92g", M, tuple(part[n - 1] for n in range(1, M + 1)))


@lru_cache(maxsize=8)
def tau_coeffs(M: int) -> Tuple[int, ...]:
    """Ramanujan tau(1..M) from the 24th power of the eta product part."""

    d24 = qseries_pow(eta_qexp(M), 24, M)
    return tuple(d24[n - 1] for n in range(1, M + 1))


# ---------------------------------------------------------------------------
# Kohnen half-integral family


def _sigma3_table(L: int) -> List[int]:
    sig = [0] * (L + 1)
    for d in range(1, L + 1):
        d3 = d * d * d
        for m in range(d, L + 1, d):
            sig[m] += d3
    return sig


@lru_cache(maxsize=8)
def kohnen_delta_coeffs(M: int) -> Tuple[int, ...]:
    """c(1..M): omega-weighted divisor sums, nonzero only for n = 0,1 mod 4.

    c(n) = omega(sqrt(n)) n
           + 120 sum_(m=1..[(n-1)/4]) omega(sqrt(n-4m)) sigma3(m) (2n-9m)
           - 15 n sigma3(n/4)                     [last term only for 4 | n]

    with omega(x) = 1 for integer x, else 0.  The middle sum is walked over
    the squares k^2 = n - 4m instead of over m, which keeps it O(sqrt(n)).
    """

    sig = _sigma3_table(M // 4 + 1)
    out = []
    for n in range(1, M + 1):
        r = math.isqrt(n)
        total = n if r * r == n else 0
        acc = 0
        k = 1
        while k * k <= n - 4:
            rem = n - k * k
            if rem % 4 == 0:
                m = rem // 4
                acc += sig[m] * (2 * n - 9 * m)
            k += 1
        total += 120 * acc
        if n % 4 == 0:
            total -= 15 * n * sig[n // 4]
        out.append(total)
    return tuple(out)


@lru_cache(maxsize=8)
def hpm_coeffs(sign: int, M: int) -> DirichletCoefficients:
    """b_n of h+ (sign=+1) or h- (sign=-1): b_n = c(n) -+ 2^-6 c(4n).

    Exact dyadic rationals; b+_n + b-_n = 2 c(n) identically.
    """

    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    c = kohnen_delta_coeffs(4 * M)
    vals = tuple(
        Fraction(c[n - 1]) - sign * Fraction(c[4 * n - 1], 64) for n in range(1, M + 1)
    )
    family = "hplus" if sign == 1 else "hminus"
    return DirichletCoefficients(family, M, vals)


# ---------------------------------------------------------------------------
# multiplicative assembly from exact local factors


def _inverse_series(poly: Sequence, order: int) -> list:
    """Power-series inverse of a polynomial with constant term 1."""

    h = [1]
    deg = len(poly) - 1
    for j in range(1, order + 1):
        acc = 0
        for i in range(1, min(j, deg) + 1):
            if poly[i] != 0:
                acc += poly[i] * h[j - i]
        h.append(-acc)
    return h


def _poly_mul(a: Sequence, b: Sequence) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _multiplicative_sieve(M: int, local_h: Callable[[int, int], Sequence]) -> list:
    """a_n for n <= M from local inverse-factor series h = local_h(p, e).

    local_h(p, e) returns the coefficients h_0..h_e of the local Dirichlet
    series at p (h_0 = 1); a_n is then the multiplicative extension.
    Primes are processed in increasing order, so while p is being folded
    in, nonzero entries are exactly the p-free indices already finished.
    """

    a = [0] * (M + 1)
    a[1] = 1
    for p in _primes(M):
        e = 0
        pe = 1
        while pe * p <= M:
            pe *= p
            e += 1
        h = local_h(p, e)
        updates = []
        pe = p
        j = 1
        while pe <= M:
            hj = h[j]
            if hj != 0:
                for n in range(1, M // pe + 1):
                    an = a[n]
                    if an != 0:
                        updates.append((n * pe, an * hj))
            pe *= p
            j += 1
        for idx, v in updates:
            a[idx] += v
    return a[1:]


@lru_cache(maxsize=8)
def symmetric_power_coeffs(r: int, M: int) -> DirichletCoefficients:
    """a_n of the symmetric r-th power lift of the discriminant form.

    The Satake pair (alpha_p, beta_p) solves 1 - tau(p) X + p^11 X^2; the
    inverse local factor prod_j (1 - alpha^(r-j) beta^j X) collapses to an
    exact integer polynomial through the symmetric functions
    alpha + beta = tau(p), alpha beta = p^11, so the whole expansion stays
    in Z.
    """

    if r not in (3, 4):
        raise ValueError(f"unsupported symmetric power r={r}")
    taus = tau_coeffs(M)

    def local(p: int, e: int) -> list:
        t = taus[p - 1]
        p11 = p ** 11
        if r == 3:
            # (1 - (a^3+b^3) X + p^33 X^2) (1 - p^11 t X + p^33 X^2)
            a3b3 = t * t * t - 3 * p11 * t
            poly = _poly_mul([1, -a3b3, p11 ** 3], [1, -p11 * t, p11 ** 3])
        else:
            # (1 - (a^4+b^4) X + p^44 X^2) (1 - p^11 (a^2+b^2) X + p^44 X^2)
            # times (1 - p^22 X)
            a4b4 = t ** 4 - 4 * p11 * t * t + 2 * p11 * p11
            a2b2 = t * t - 2 * p11
            poly = _poly_mul([1, -a4b4, p11 ** 4], [1, -p11 * a2b2, p11 ** 4])
            poly = _poly_mul(poly, [1, -p11 * p11])
        return _inverse_series(poly, e)

    vals = tuple(_multiplicative_sieve(M, local))
    return DirichletCoefficients("sym3" if r == 3 else "sym4", M, vals)


# ---------------------------------------------------------------------------
# Hecke character family


def hecke_family_tag(params: HeckeCharParams) -> str:
    return f"hecke(d={params.field.d},n={params.n},m={params.m})"


@lru_cache(maxsize=8)
def hecke_char_coeffs(
    params: HeckeCharParams, M: int, ctx: PrecisionContext = DEFAULT_CONTEXT
) -> DirichletCoefficients:
    """a_m = sum of chi over the ideals of norm m, complex at ctx precision.

    Split p: two conjugate degree-one primes through a found generator.
    Inert p: the single prime (p) of norm p^2.  Ramified p | D: one prime
    of norm p.  All are expanded as inverse local factors and sieved.
    """

    field = params.field
    with mp.workdps(ctx.workdps):

        def local(p: int, e: int) -> list:
            typ = splitting_type(field, p)
            if typ == "inert":
                # chi((p)) = |p|^(-i v1); the norm p^2 is positive, so the
                # sign factor is +1 for either m.
                cp = mp.expj(-params.v1 * mp.log(p))
                h = [mpc(0)] * (e + 1)
                h[0] = mpc(1)
                power = mpc(1)
                for j in range(2, e + 1, 2):
                    power *= cp
                    h[j] = power
                return h
            gen = prime_ideal_generator(field, p)
            c1 = chi_star(params, gen, ctx)
            if typ == "ramified":
                h = [mpc(1)]
                for j in range(1, e + 1):
                    h.append(h[-1] * c1)
                return h
            c2 = chi_star_conjugate(params, gen, ctx)
            s1, s2 = c1 + c2, c1 * c2
            h = [mpc(1), s1]
            for j in range(2, e + 1):
                h.append(s1 * h[-1] - s2 * h[-2])
            return h[: e + 1]

        vals = tuple(mpc(v) for v in _multiplicative_sieve(M, local))
    return DirichletCoefficients(hecke_family_tag(params), M, vals)


# ---------------------------------------------------------------------------
# quintic Artin family


def _quintic_mod(p: int) -> list:
    # X^5 - X + 1 reduced mod p, low-degree first.
    return [1 % p, (-1) % p, 0, 0, 0, 1]


def _poly_degree(a: Sequence[int]) -> int:
    for i in range(len(a) - 1, -1, -1):
        if a[i] != 0:
            return i
    return -1


def _poly_trim(a: List[int]) -> List[int]:
    d = _poly_degree(a)
    return a[: d + 1] if d >= 0 else [0]


def _poly_divmod(a: Sequence[int], g: Sequence[int], p: int) -> Tuple[list, list]:
    """Division with remainder by a (made-monic) g over F_p."""

    dg = _poly_degree(g)
    inv_lead = pow(g[dg], p - 2, p)
    rem = [c % p for c in a]
    quo = [0] * max(len(rem) - dg, 1)
    for i in range(_poly_degree(rem), dg - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        q = c * inv_lead % p
        quo[i - dg] = q
        for j in range(dg + 1):
            rem[i - dg + j] = (rem[i - dg + j] - q * g[j]) % p
    return _poly_trim(quo), _poly_trim(rem)


def _poly_mulmod(a: Sequence[int], b: Sequence[int], g: Sequence[int], p: int) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return _poly_divmod(out, g, p)[1]


def _poly_powmod(a: Sequence[int], e: int, g: Sequence[int], p: int) -> list:
    result = [1]
    base = _poly_divmod(a, g, p)[1]
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, g, p)
        base = _poly_mulmod(base, base, g, p)
        e >>= 1
    return result


def _poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list:
    a = _poly_trim([c % p for c in a])
    b = _poly_trim([c % p for c in b])
    while _poly_degree(b) >= 0:
        a, b = b, _poly_divmod(a, b, p)[1]
    d = _poly_degree(a)
    if d < 0:
        return [0]
    inv_lead = pow(a[d], p - 2, p)
    return [c * inv_lead % p for c in a]


def quintic_degree_pattern(p: int) -> Tuple[int, ...]:
    """Sorted degrees of the irreducible factors of X^5 - X + 1 over F_p.

    Distinct-degree factorization: successive gcds of X^(p^i) - X with the
    shrinking cofactor.  Valid for p not dividing the discriminant 2869;
    the two ramified primes 19 and 151 are handled by their callers.
    """

    f = _quintic_mod(p)
    g = _poly_trim(f)
    pattern: List[int] = []
    h = [0, 1]  # X
    i = 0
    while True:
        dg = _poly_degree(g)
        if dg <= 0:
            break
        i += 1
        if 2 * i > dg:
            pattern.append(dg)
            break
        h = _poly_powmod(h, p, g, p)
        diff = list(h) + [0] * (2 - len(h))
        diff[1] = (diff[1] - 1) % p
        d = _poly_gcd(diff, g, p)
        dd = _poly_degree(d)
        if dd > 0:
            pattern.extend([i] * (dd // i))
            g = _poly_divmod(g, d, p)[0]
            h = _poly_divmod(h, g, p)[1]
    return tuple(sorted(pattern))


def _row_poly(*factors: Sequence[int]) -> Tuple[int, ...]:
    out = [1]
    for f in factors:
        out = _poly_mul(out, f)
    return tuple(out)


# Inverse local factors in x = p^(-s), keyed by the factorization pattern
# of the quintic mod p (equivalently the Frobenius class in S5).
_ONE_MINUS = (1, -1)
_ONE_PLUS = (1, 1)
_ARTIN_ROWS = {
    (1, 1, 1, 1, 1): _row_poly(_ONE_MINUS, _ONE_MINUS, _ONE_MINUS, _ONE_MINUS),
    (1, 1, 1, 2): _row_poly(_ONE_MINUS, _ONE_MINUS, _ONE_MINUS, _ONE_PLUS),
    (1, 1, 3): _row_poly(_ONE_MINUS, _ONE_MINUS, (1, 1, 1)),
    (1, 4): _row_poly(_ONE_MINUS, _ONE_PLUS, (1, 0, 1)),
    (5,): _row_poly((1, 1, 1, 1, 1)),
    (1, 2, 2): _row_poly(_ONE_MINUS, _ONE_MINUS, _ONE_PLUS, _ONE_PLUS),
    (2, 3): _row_poly(_ONE_MINUS, _ONE_PLUS, (1, 1, 1)),
}
_ARTIN_ROW_19 = (1, 0, 0, -1)  # 1 - p^(-3s)
_ARTIN_ROW_151 = _row_poly(_ONE_PLUS, _ONE_MINUS, _ONE_MINUS)  # (1+x)(1-x)^2


@lru_cache(maxsize=8)
def artin_s5_coeffs(M: int) -> DirichletCoefficients:
    """Integer a_n of the degree-4 L-function attached to X^5 - X + 1."""

    def local(p: int, e: int) -> list:
        if p == 19:
            row = _ARTIN_ROW_19
        elif p == 151:
            row = _ARTIN_ROW_151
        else:
            row = _ARTIN_ROWS[quintic_degree_pattern(p)]
        return _inverse_series(row, e)

    vals = tuple(_multiplicative_sieve(M, local))
    return DirichletCoefficients("artin", M, vals)


# ---------------------------------------------------------------------------
# cache files: one coefficient per line, JSON sidecar with the parameters


def write_coeff_cache(
    coeffs: DirichletCoefficients, path: str, params: dict = None, digits: int = 40
) -> None:
    """Write values one per line: ints, 'p/q' rationals, or 're im' pairs.

    Complex values are written to `digits` significant figures; the other
    kinds are exact.  A JSON sidecar at path + '.json' records the family,
    the length, the value kind and any build parameters.
    """

    kinds = set()
    lines = []
    with mp.workdps(digits + 10):
        for v in coeffs.values:
            if isinstance(v, int):
                kinds.add("int")
                lines.append(str(v))
            elif isinstance(v, Fraction):
                kinds.add("rational")
                lines.append(f"{v.numerator}/{v.denominator}")
            else:
                kinds.add("complex")
                w = mpc(v)
                lines.append(f"{mp.nstr(w.real, digits)} {mp.nstr(w.imag, digits)}")
    kind = "complex" if "complex" in kinds else ("rational" if "rational" in kinds else "int")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    sidecar = {
        "family": coeffs.family,
        "M": coeffs.length,
        "kind": kind,
        "digits": digits,
        "params": params or {},
    }
    with open(path + ".json", "w") as fh:
        json.dump(sidecar, fh, indent=1)
        fh.write("\n")


def read_coeff_cache(path: str) -> DirichletCoefficients:
    """Inverse of write_coeff_cache; exact for int and rational kinds."""

    with open(path + ".json") as fh:
        sidecar = json.load(fh)
    vals = []
    with mp.workdps(sidecar.get("digits", 40) + 10):
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                if " " in line:
                    re_s, im_s = line.split()
                    vals.append(mpc(mpf(re_s), mpf(im_s)))
                elif "/" in line:
                    num, den = line.split("/")
                    vals.append(Fraction(int(num), int(den)))
                else:
                    vals.append(int(line))
    if len(vals) != sidecar["M"]:
        raise ValueError(f"cache file {path} holds {len(vals)} values, sidecar says {sidecar['M']}")
    return DirichletCoefficients(sidecar["family"], sidecar["M"], tuple(vals))


def cache_dir() -> str:
    """Directory for coefficient caches; honours LSERIES_CACHE_DIR."""

    return os.environ.get("LSERIES_CACHE_DIR", os.path.join(os.path.expanduser("~"), ".cache", "lseries"))
