"""Functional-equation data model and the built-in catalog.

An LFunctionSpec packages everything an evaluator needs about one
L-function: the archimedean prefactor (a positive scale to the power s
times a product of Gamma(b_i s + c_i)), the reflection constant k of the
functional equation R(k - conj(s)) = kappa conj(R(s)), the root number
kappa with its square root kappa1, the coefficient list, and bookkeeping
for the evaluator (coefficient weight shift, abscissa of absolute
convergence, the constant phase phi0 that completes the central-line
rotation).

Unit-modulus constants that some completed forms carry in front of the
(positive real)^s prefactor are folded into kappa and kappa1 here, so the
stored prefactor is always exp(s * log_scale) with a real log_scale; the
root number is adjusted by the matching phase so the reflection identity
still holds for the stored form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple

from mpmath import mp, mpc, mpf

from .coefficients import (
    DirichletCoefficients,
    artin_s5_coeffs,
    cusp_s8_coeffs,
    cusp_s92_coeffs,
    hecke_char_coeffs,
    hpm_coeffs,
    read_coeff_cache,
    symmetric_power_coeffs,
)
from .gamma_phase import DEFAULT_CONTEXT, PrecisionContext, log_gamma
from .quadratic import HeckeCharParams, chi_star, fundamental_unit, hecke_char_params


class Parity(Enum):
    """Which component of the rotated central-line value carries the signal."""

    RealOnLine = "RealOnLine"
    ImaginaryOnLine = "ImaginaryOnLine"


@dataclass(frozen=True)
class GammaFactorData:
    """Archimedean prefactor scale_N**s * prod_i Gamma(b_i s + c_i)."""

    scale_N: mpf
    factors: Tuple[Tuple[float, complex], ...]


@dataclass(frozen=True)
class LFunctionSpec:
    """Complete description of one L-function for evaluation and scanning.

    kappa1 is a fixed square root of 1/kappa; phi0 is the constant phase
    such that exp(i(phase_theta(t) + phi0)) L(k/2 + it) is real for parity
    RealOnLine and purely imaginary for ImaginaryOnLine.
    """

    name: str
    gamma: GammaFactorData
    k: float
    kappa: mpc
    kappa1: mpc
    parity: Parity
    coeffs: DirichletCoefficients
    phi0: mpf
    v_shift: int = 0
    sigma_abs: float = 1.0


@dataclass(frozen=True)
class CatalogEntry:
    """One built-in family: canonical name plus builder bookkeeping."""

    name: str
    summary: str
    needs_params: bool = False
    kappa1_sign: int = 1


CATALOG: Dict[str, CatalogEntry] = {
    e.name: e
    for e in (
        CatalogEntry("s8f", "weight-8 level-2 cusp form (eta(z) eta(2z))^8"),
        CatalogEntry("s92g", "weight-9/2 form eta(2z)^12 / theta(z)^3"),
        CatalogEntry("hplus", "Kohnen combination with even functional equation"),
        CatalogEntry("hminus", "Kohnen combination with odd functional equation"),
        CatalogEntry("sym3", "symmetric cube of the discriminant form"),
        CatalogEntry("sym4", "symmetric fourth power of the discriminant form"),
        CatalogEntry("hecke", "Hecke character L-function of a real quadratic field", needs_params=True),
        CatalogEntry("artin", "degree-4 factor of the quintic field zeta, X^5 - X + 1"),
    )
}

_ALIASES = {"artin_s5": "artin"}


def builtin_names() -> Tuple[str, ...]:
    return tuple(CATALOG)


def parse_family_name(name: str) -> Tuple[str, Optional[dict]]:
    """Split 'hecke(2,1,0)' style names into ('hecke', {'d':2,'n':1,'m':0})."""

    name = name.strip()
    if "(" in name and name.endswith(")"):
        base, inner = name[:-1].split("(", 1)
        base = _ALIASES.get(base.strip(), base.strip())
        parts = [p.strip() for p in inner.split(",") if p.strip()]
        vals = []
        for p in parts:
            if "=" in p:
                p = p.split("=", 1)[1]
            vals.append(int(p))
        if base != "hecke" or len(vals) != 3:
            raise ValueError(f"unknown family name: {name!r}")
        return base, {"d": vals[0], "n": vals[1], "m": vals[2]}
    return _ALIASES.get(name, name), None


def different_character_value(
    params: HeckeCharParams, ctx: PrecisionContext = DEFAULT_CONTEXT
) -> mpc:
    """Character value at the generator sqrt(D) of the ramified ideal.

    D = d for d = 1 mod 4 (generator sqrt(d)) and D = 4d otherwise
    (generator 2 sqrt(d)); the value has modulus 1 and is 1 for the
    trivial character.
    """

    if params.field.d % 4 == 1:
        elem = (0, 1, 1)
    else:
        elem = (0, 2, 1)
    return chi_star(params, elem, ctx)


def _principal_sqrt_inverse(kappa: mpc) -> mpc:
    """Square root of 1/kappa with argument halved into (-pi/2, pi/2]."""

    return mp.sqrt(1 / kappa)


def _phi0(
    factors: Tuple[Tuple[float, complex], ...],
    k: float,
    kappa1: mpc,
    parity: Parity,
    ctx: PrecisionContext,
) -> mpf:
    with mp.workdps(ctx.workdps):
        total = mp.arg(kappa1)
        for b, c in factors:
            total += log_gamma(mpf(b) * mpf(k) / 2 + mpc(c), ctx).imag
        if parity is Parity.ImaginaryOnLine:
            total -= mp.pi / 2
        return total


def builtin_spec(
    name: str,
    M: int,
    params: Optional[dict] = None,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
) -> LFunctionSpec:
    """Fully populated description of a built-in family with M coefficients.

    `params` is required for the hecke family: a dict with keys d, n, m
    (field, character index, sign exponent), unless the name itself is of
    the form 'hecke(d,n,m)'.  All other families take no parameters.
    """

    base, inline = parse_family_name(name)
    if inline is not None:
        params = inline
    if base not in CATALOG:
        raise ValueError(f"unknown family name: {name!r}")
    if M < 1:
        raise ValueError("M must be >= 1")
    entry = CATALOG[base]

    with mp.workdps(ctx.workdps):
        two_pi = 2 * mp.pi
        one = mpc(1)
        minus_one = mpc(-1)

        if base == "s8f":
            gamma = GammaFactorData(mp.sqrt(2) / two_pi, ((1.0, 0),))
            k, kappa, parity, v, sig = 8.0, one, Parity.RealOnLine, 0, 4.5
            coeffs = cusp_s8_coeffs(M)
        elif base == "s92g":
            gamma = GammaFactorData(2 / two_pi, ((1.0, 0),))
            k, kappa, parity, v, sig = 4.5, one, Parity.RealOnLine, 0, 2.75
            coeffs = cusp_s92_coeffs(M)
        elif base in ("hplus", "hminus"):
            gamma = GammaFactorData(2 / two_pi, ((1.0, 0),))
            k = 6.5
            kappa = one if base == "hplus" else minus_one
            parity, v, sig = Parity.RealOnLine, 0, 3.75
            coeffs = hpm_coeffs(1 if base == "hplus" else -1, M)
        elif base == "sym3":
            gamma = GammaFactorData(two_pi ** -2, ((1.0, 0), (1.0, -11)))
            k, kappa, parity, v, sig = 34.0, minus_one, Parity.ImaginaryOnLine, 8, 17.5
            coeffs = symmetric_power_coeffs(3, M)
        elif base == "sym4":
            gamma = GammaFactorData(
                mp.pi ** mpf("-0.5") * two_pi ** -2,
                ((1.0, 0), (1.0, -11), (0.5, -11)),
            )
            k, kappa, parity, v, sig = 45.0, one, Parity.RealOnLine, 12, 23.0
            coeffs = symmetric_power_coeffs(4, M)
        elif base == "artin":
            gamma = GammaFactorData(
                mp.sqrt(19 * 151) / mp.pi ** 2,
                ((0.5, 0), (0.5, 0), (0.5, 0.5), (0.5, 0.5)),
            )
            k, kappa, parity, v, sig = 1.0, one, Parity.RealOnLine, 0, 1.0
            coeffs = artin_s5_coeffs(M)
        else:  # hecke
            if params is None:
                params = {"d": 2, "n": 1, "m": 0}
            if isinstance(params, HeckeCharParams):
                hp = params
            else:
                field = fundamental_unit(int(params["d"]), ctx)
                hp = hecke_char_params(field, int(params["n"]), int(params["m"]), ctx)
            D = hp.field.D
            m_bit = hp.m
            gamma = GammaFactorData(
                mp.sqrt(D) / mp.pi,
                ((0.5, mpc(m_bit, hp.v1) / 2), (0.5, mpc(m_bit) / 2)),
            )
            k, parity, v, sig = 1.0, Parity.RealOnLine, 0, 1.0
            # The completed form carries the unit constant pi^(-i v1 / 2)
            # in front of the pure (scale)^s prefactor.  Dropping it from
            # the stored prefactor multiplies the root number by the
            # square of its conjugate phase, i.e. by pi^(i v1).
            kappa_plain = ((-1) ** m_bit) * different_character_value(hp, ctx)
            kappa = kappa_plain * mp.expj(hp.v1 * mp.log(mp.pi))
            coeffs = hecke_char_coeffs(hp, M, ctx)
            base_name = f"hecke(d={hp.field.d},n={hp.n},m={hp.m})"
            kappa1 = entry.kappa1_sign * _principal_sqrt_inverse(kappa)
            phi0 = _phi0(gamma.factors, k, kappa1, parity, ctx)
            return LFunctionSpec(
                base_name, gamma, k, kappa, kappa1, parity, coeffs, phi0, v, sig
            )

        kappa1 = entry.kappa1_sign * _principal_sqrt_inverse(kappa)
        phi0 = _phi0(gamma.factors, k, kappa1, parity, ctx)
        return LFunctionSpec(base, gamma, k, kappa, kappa1, parity, coeffs, phi0, v, sig)


# ---------------------------------------------------------------------------
# JSON descriptors


def _num(x) -> str:
    return mp.nstr(mpf(x), 40)


def spec_descriptor(spec: LFunctionSpec, coeff_cache_path: str) -> dict:
    """JSON-serializable descriptor; coefficients live in a cache file."""

    with mp.workdps(60):
        return {
            "name": spec.name,
            "k": spec.k,
            "kappa": [_num(spec.kappa.real), _num(spec.kappa.imag)],
            "kappa1": [_num(spec.kappa1.real), _num(spec.kappa1.imag)],
            "log_scale": _num(mp.log(spec.gamma.scale_N)),
            "gamma_factors": [
                [b, [_num(mpc(c).real), _num(mpc(c).imag)]] for b, c in spec.gamma.factors
            ],
            "parity": spec.parity.value,
            "phi0": _num(spec.phi0),
            "v_shift": spec.v_shift,
            "sigma_abs": spec.sigma_abs,
            "coeff_cache": coeff_cache_path,
        }


def spec_from_descriptor(desc, ctx: PrecisionContext = DEFAULT_CONTEXT) -> LFunctionSpec:
    """Rebuild a spec from a descriptor dict or a path to its JSON file."""

    if isinstance(desc, str):
        with open(desc) as fh:
            desc = json.load(fh)
    coeffs = read_coeff_cache(desc["coeff_cache"])
    with mp.workdps(ctx.workdps):
        factors = tuple(
            (float(b), mpc(mpf(cre), mpf(cim))) for b, (cre, cim) in desc["gamma_factors"]
        )
        gamma = GammaFactorData(mp.exp(mpf(desc["log_scale"])), factors)
        kappa = mpc(mpf(desc["kappa"][0]), mpf(desc["kappa"][1]))
        kappa1 = mpc(mpf(desc["kappa1"][0]), mpf(desc["kappa1"][1]))
        return LFunctionSpec(
            desc["name"],
            gamma,
            float(desc["k"]),
            kappa,
            kappa1,
            Parity(desc["parity"]),
            coeffs,
            mpf(desc["phi0"]),
            int(desc["v_shift"]),
            float(desc["sigma_abs"]),
        )
