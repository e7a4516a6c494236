"""Coefficient factories checked against independent constructions.

Each family gets at least one oracle that does not share code with the
implementation: an alternate modular-form identity, a brute-force lattice
or root count, numerically evaluated Satake parameters, or sympy's
finite-field factorization.
"""

import math
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
from mpmath import mp, mpc

from lseries.coefficients import (
    artin_s5_coeffs,
    cusp_s8_coeffs,
    cusp_s92_coeffs,
    hecke_char_coeffs,
    hpm_coeffs,
    kohnen_delta_coeffs,
    quintic_degree_pattern,
    read_coeff_cache,
    symmetric_power_coeffs,
    tau_coeffs,
    write_coeff_cache,
)
from lseries.gamma_phase import DEFAULT_CONTEXT
from lseries.qseries import QSeries, qseries_add, qseries_mul, qseries_scale, theta_qexp
from lseries.quadratic import fundamental_unit, hecke_char_params

TAU_KNOWN = (1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920)


# ---------------------------------------------------------------------------
# tau and the weight-8 eigenform


def test_tau_first_values():
    assert tau_coeffs(10) == TAU_KNOWN


def test_tau_hecke_relations():
    tau = tau_coeffs(200)
    for p in (2, 3, 5, 7, 11, 13):
        assert tau[p * p - 1] == tau[p - 1] ** 2 - p ** 11
    for m, n in ((2, 3), (3, 4), (2, 9), (5, 7), (4, 25)):
        assert tau[m * n - 1] == tau[m - 1] * tau[n - 1]


def test_s8f_first_coefficients():
    a = cusp_s8_coeffs(12)
    assert a[1] == 1
    assert a[2] == -8


def test_s8f_is_an_eigenform():
    # Hecke relations pin the q-expansion far beyond any single table value:
    # a_2^j is (-8)^j at the bad prime, and a_(p^2) = a_p^2 - p^7 elsewhere.
    a = cusp_s8_coeffs(2100)
    for j in range(1, 11):
        assert a[2 ** j] == (-8) ** j
    for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43):
        assert a[p * p] == a[p] ** 2 - p ** 7
    for p in (3, 5, 7, 11):
        assert a[p ** 3] == a[p] * a[p * p] - p ** 7 * a[p]
    for m, n in ((2, 3), (3, 5), (4, 9), (8, 7), (25, 49), (6, 35)):
        assert a[m * n] == a[m] * a[n]


# ---------------------------------------------------------------------------
# the weight-9/2 form, via brute-force r3(n) and forward substitution


def _r3(n: int) -> int:
    count = 0
    r = math.isqrt(n)
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            rem = n - x * x - y * y
            if rem < 0:
                continue
            z = math.isqrt(rem)
            if z * z == rem:
                count += 2 if z else 1
    return count


def _eta_power_coeffs(power: int, scale: int, M: int) -> list:
    """Coefficients of prod_n (1 - x^(scale n))^power by repeated multiply."""

    out = [0] * M
    out[0] = 1
    for _ in range(power):
        n = 1
        while scale * n < M:
            # multiply by (1 - x^(scale n)) in place, descending
            step = scale * n
            for i in range(M - 1, step - 1, -1):
                out[i] -= out[i - step]
            n += 1
    return out


def test_s92g_against_forward_substitution():
    M = 60
    e12 = _eta_power_coeffs(12, 2, M)
    r3 = [_r3(n) for n in range(M)]
    part = [0] * M
    part[0] = 1
    for n in range(1, M):
        part[n] = e12[n] - sum(r3[j] * part[n - j] for j in range(1, n + 1))
    g = cusp_s92_coeffs(M)
    assert g[1] == 1
    for n in range(1, M + 1):
        assert g[n] == part[n - 1]


# ---------------------------------------------------------------------------
# Kohnen family, via the weight-raising bracket of G4(4z) and theta


def _sigma3(n: int) -> int:
    return sum(d ** 3 for d in range(1, n + 1) if n % d == 0)


def test_kohnen_delta_small_values():
    c = kohnen_delta_coeffs(9)
    assert c[0] == 1  # c(1)
    assert c[3] == -56  # c(4)
    assert c[4] == 120  # c(5)
    assert c[7] == -240  # c(8)
    assert c[8] == 9  # c(9)
    for n in range(1, 10):
        if n % 4 in (2, 3):
            assert c[n - 1] == 0


def test_kohnen_delta_against_bracket():
    # delta is proportional to the first Rankin-Cohen-type bracket of
    # G4(4z) and theta(z); expanding 60 (2 G4(4z) Dtheta - (DG4)(4z) theta)
    # with D = q d/dq rebuilds every coefficient from sigma3 sums alone.
    M = 401
    g4 = [Fraction(0)] * M
    g4[0] = Fraction(1, 240)
    dg4 = [0] * M
    for a in range(1, (M - 1) // 4 + 1):
        s = _sigma3(a)
        g4[4 * a] = Fraction(s)
        dg4[4 * a] = a * s
    dtheta = [0] * M
    b = 1
    while b * b < M:
        dtheta[b * b] = 2 * b * b
        b += 1
    term1 = qseries_mul(QSeries(0, tuple(g4)), QSeries(0, tuple(dtheta)), M)
    term2 = qseries_mul(QSeries(0, tuple(dg4)), theta_qexp(M), M)
    bracket = qseries_add(qseries_scale(term1, 2), qseries_scale(term2, -1), M)
    bracket = qseries_scale(bracket, 60)
    assert bracket[0] == 0
    c = kohnen_delta_coeffs(M - 1)
    for n in range(1, M):
        assert bracket[n] == c[n - 1], f"bracket mismatch at n={n}"


def test_hpm_combinations():
    M = 120
    plus = hpm_coeffs(1, M)
    minus = hpm_coeffs(-1, M)
    c = kohnen_delta_coeffs(4 * M)
    assert plus[1] == Fraction(15, 8)
    assert minus[1] == Fraction(1, 8)
    for n in range(1, M + 1):
        assert plus[n] + minus[n] == 2 * c[n - 1]
        assert plus[n] == Fraction(c[n - 1]) - Fraction(c[4 * n - 1], 64)
    assert plus.family == "hplus" and minus.family == "hminus"


def test_hpm_rejects_other_signs():
    with pytest.raises(ValueError):
        hpm_coeffs(2, 10)


# ---------------------------------------------------------------------------
# symmetric powers, via numerically evaluated Satake parameters


def _satake_h(r: int, p: int, e: int) -> complex:
    """h_e of the inverse roots alpha^(r-j) beta^j, computed numerically."""

    with mp.workdps(120):
        t = TAU_KNOWN[p - 1]
        disc = mp.sqrt(mpc(t * t - 4 * p ** 11))
        alpha = (t + disc) / 2
        beta = (t - disc) / 2
        gammas = [alpha ** (r - j) * beta ** j for j in range(r + 1)]
        total = mpc(0)
        for combo in combinations_with_replacement(gammas, e):
            prod = mpc(1)
            for gam in combo:
                prod *= gam
            total += prod
        return total


@pytest.mark.parametrize("r", [3, 4])
def test_symmetric_power_prime_values(r):
    a = symmetric_power_coeffs(r, 100)
    tau = tau_coeffs(100)
    assert a[1] == 1
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97):
        t, p11 = tau[p - 1], p ** 11
        if r == 3:
            expect = t ** 3 - 2 * p11 * t
        else:
            expect = t ** 4 - 3 * p11 * t * t + p11 * p11
        assert a[p] == expect, f"r={r} p={p}"


@pytest.mark.parametrize("r", [3, 4])
def test_symmetric_power_prime_powers_match_satake(r):
    M = 700 if r == 3 else 700
    a = symmetric_power_coeffs(r, M)
    for p in (2, 3, 5):
        emax = 4 if p ** 4 <= M else 3
        for e in range(1, emax + 1):
            if p ** e > M:
                break
            h = _satake_h(r, p, e)
            tol = (abs(h) + 1) * mp.mpf("1e-100")
            assert abs(h.imag) < tol
            assert abs(h.real - a[p ** e]) < tol, (r, p, e)


@pytest.mark.parametrize("r", [3, 4])
def test_symmetric_power_multiplicative(r):
    a = symmetric_power_coeffs(r, 400)
    for m, n in ((2, 3), (3, 4), (5, 7), (4, 9), (8, 27), (6, 25)):
        assert a[m * n] == a[m] * a[n]


def test_symmetric_power_rejects_other_orders():
    with pytest.raises(ValueError):
        symmetric_power_coeffs(2, 10)


# ---------------------------------------------------------------------------
# Hecke characters, via the factorization of the Dedekind zeta function


def _chi8(t: int) -> int:
    if t % 2 == 0:
        return 0
    return 1 if t % 8 in (1, 7) else -1


def _chi5(t: int) -> int:
    if t % 5 == 0:
        return 0
    return 1 if t % 5 in (1, 4) else -1


@pytest.mark.parametrize("d,chi", [(2, _chi8), (5, _chi5)])
def test_trivial_character_counts_ideals(d, chi):
    # With n = m = 0 the character is identically 1, so a_m is the number
    # of ideals of norm m: the divisor sum of the quadratic residue
    # character attached to the discriminant.
    field = fundamental_unit(d)
    params = hecke_char_params(field, 0, 0)
    M = 400
    a = hecke_char_coeffs(params, M)
    for m in range(1, M + 1):
        expect = sum(chi(t) for t in range(1, m + 1) if m % t == 0)
        got = a[m]
        assert abs(got.real - expect) < mp.mpf("1e-35"), m
        assert abs(got.imag) < mp.mpf("1e-35"), m


def test_hecke_coefficients_conjugate_pairs():
    field = fundamental_unit(2)
    M = 150
    a_pos = hecke_char_coeffs(hecke_char_params(field, 1, 0), M)
    a_neg = hecke_char_coeffs(hecke_char_params(field, -1, 0), M)
    with mp.workdps(DEFAULT_CONTEXT.workdps):
        for m in range(1, M + 1):
            diff = a_pos[m] - mp.conj(a_neg[m])
            assert abs(diff) < mp.mpf("1e-35"), m


def test_hecke_coefficients_divisor_bound():
    field = fundamental_unit(2)
    a = hecke_char_coeffs(hecke_char_params(field, 1, 0), 300)
    for m in range(1, 301):
        sigma0 = sum(1 for t in range(1, m + 1) if m % t == 0)
        assert abs(a[m]) <= sigma0 + mp.mpf("1e-30"), m


def test_hecke_ramified_tower_is_unitary():
    # In Q(sqrt(2)) the prime 2 is ramified: a single ideal of norm 2^j for
    # every j, so |a_(2^j)| = 1 for any unitary character.
    field = fundamental_unit(2)
    for n, m in ((1, 0), (2, 0), (1, 1)):
        a = hecke_char_coeffs(hecke_char_params(field, n, m), 64)
        for j in (1, 2, 3, 4, 5, 6):
            assert abs(abs(a[2 ** j]) - 1) < mp.mpf("1e-35"), (n, m, j)


def test_hecke_multiplicative():
    field = fundamental_unit(5)
    a = hecke_char_coeffs(hecke_char_params(field, 1, 0), 200)
    with mp.workdps(DEFAULT_CONTEXT.workdps):
        for m, n in ((4, 5), (9, 11), (19, 10)):
            assert abs(a[m * n] - a[m] * a[n]) < mp.mpf("1e-35")


# ---------------------------------------------------------------------------
# the quintic Artin family


def _quintic_root_count(p: int) -> int:
    return sum(1 for x in range(p) if (pow(x, 5, p) - x + 1) % p == 0)


def test_quintic_patterns_against_sympy():
    from sympy import Poly, factor_list
    from sympy.abc import x as sym_x

    from lseries.coefficients import _primes

    for p in _primes(300):
        if p in (19, 151):
            continue
        _, factors = Poly(sym_x ** 5 - sym_x + 1, sym_x, modulus=p).factor_list()
        degrees = []
        for poly, mult in factors:
            assert mult == 1, f"unexpected repeated factor at p={p}"
            degrees.extend([poly.degree()])
        assert quintic_degree_pattern(p) == tuple(sorted(degrees)), p


def test_artin_prime_values_count_roots():
    # The degree-4 factor of the quintic field's zeta function has
    # a_p = (number of roots of X^5 - X + 1 mod p) - 1 away from 2869.
    a = artin_s5_coeffs(500)
    from lseries.coefficients import _primes

    for p in _primes(500):
        if p in (19, 151):
            continue
        assert a[p] == _quintic_root_count(p) - 1, p


def test_artin_ramified_primes():
    a = artin_s5_coeffs(7000)
    assert a[19] == 0
    assert a[19 * 19] == 0
    assert a[6859] == 1
    assert a[151] == 1


def test_artin_basic_structure():
    a = artin_s5_coeffs(100)
    assert a[1] == 1
    assert a[2] == -1  # X^5 - X + 1 is irreducible with no roots mod 2
    for m, n in ((2, 3), (4, 5), (9, 10)):
        assert a[m * n] == a[m] * a[n]


# ---------------------------------------------------------------------------
# cache files


def test_cache_roundtrip_int(tmp_path):
    orig = cusp_s8_coeffs(50)
    path = str(tmp_path / "s8f.coeffs")
    write_coeff_cache(orig, path)
    back = read_coeff_cache(path)
    assert back.family == orig.family
    assert back.length == orig.length
    assert back.values == orig.values


def test_cache_roundtrip_rational(tmp_path):
    orig = hpm_coeffs(1, 20)
    path = str(tmp_path / "hplus.coeffs")
    write_coeff_cache(orig, path)
    back = read_coeff_cache(path)
    assert back.values == orig.values
    assert all(isinstance(v, Fraction) for v in back.values)


def test_cache_roundtrip_complex(tmp_path):
    field = fundamental_unit(2)
    orig = hecke_char_coeffs(hecke_char_params(field, 1, 0), 30)
    path = str(tmp_path / "hecke.coeffs")
    write_coeff_cache(orig, path, params={"d": 2, "n": 1, "m": 0}, digits=40)
    back = read_coeff_cache(path)
    for u, v in zip(back.values, orig.values):
        assert abs(u - v) < mp.mpf("1e-35")


def test_getitem_bounds():
    a = cusp_s8_coeffs(10)
    with pytest.raises(IndexError):
        a[0]
    with pytest.raises(IndexError):
        a[11]
