"""Catalog structure, root numbers, and descriptor round-trips."""

import json

import pytest
from mpmath import mp, mpc, mpf

from lseries.coefficients import write_coeff_cache
from lseries.gamma_phase import DEFAULT_CONTEXT, phase_theta
from lseries.model import (
    CATALOG,
    GammaFactorData,
    LFunctionSpec,
    Parity,
    builtin_names,
    builtin_spec,
    different_character_value,
    parse_family_name,
    spec_descriptor,
    spec_from_descriptor,
)
from lseries.quadratic import fundamental_unit, hecke_char_params

ALL_NAMES = ("s8f", "s92g", "hplus", "hminus", "sym3", "sym4", "hecke", "artin")


def _all_specs(M=30):
    return [builtin_spec(name, M) for name in ALL_NAMES]


def test_catalog_names():
    assert builtin_names() == ALL_NAMES
    assert len(set(builtin_names())) == 8


def test_contract_examples():
    assert builtin_spec("artin_s5", 10).kappa == mpc(1)
    assert builtin_spec("sym4", 10).k == 45
    s = builtin_spec("s8f", 10)
    assert s.k == 8 and s.kappa == mpc(1)


def test_known_weights_and_root_numbers():
    expect = {
        "s8f": (8, 1, Parity.RealOnLine, 0),
        "s92g": (4.5, 1, Parity.RealOnLine, 0),
        "hplus": (6.5, 1, Parity.RealOnLine, 0),
        "hminus": (6.5, -1, Parity.RealOnLine, 0),
        "sym3": (34, -1, Parity.ImaginaryOnLine, 8),
        "sym4": (45, 1, Parity.RealOnLine, 12),
        "artin": (1, 1, Parity.RealOnLine, 0),
    }
    for name, (k, kappa, parity, v) in expect.items():
        s = builtin_spec(name, 10)
        assert s.k == k
        assert s.kappa == mpc(kappa)
        assert s.parity is parity
        assert s.v_shift == v


def test_root_number_invariants_all_entries():
    with mp.workdps(DEFAULT_CONTEXT.workdps):
        tol = mpf("1e-55")
        for s in _all_specs():
            assert abs(abs(s.kappa) - 1) < tol, s.name
            assert abs(s.kappa1 ** 2 * s.kappa - 1) < tol, s.name
            # fixed branch: argument of kappa1 in (-pi/2, pi/2] up to sign pins
            assert abs(mp.arg(s.kappa1)) <= mp.pi / 2 + tol, s.name


def test_gamma_factor_pole_condition_all_entries():
    # no Gamma pole or zero of the prefactor to the right of the central
    # line: Re(c_i) > -b_i k / 2 must hold strictly for every factor
    for s in _all_specs():
        for b, c in s.gamma.factors:
            assert mpc(c).real > -b * s.k / 2, s.name


def test_scales_are_positive_reals():
    with mp.workdps(40):
        expect = {
            "s8f": mp.sqrt(2) / (2 * mp.pi),
            "s92g": 1 / mp.pi,
            "hplus": 1 / mp.pi,
            "hminus": 1 / mp.pi,
            "sym3": (2 * mp.pi) ** -2,
            "sym4": 1 / (mp.sqrt(mp.pi) * (2 * mp.pi) ** 2),
            "artin": mp.sqrt(2869) / mp.pi ** 2,
            "hecke": mp.sqrt(8) / mp.pi,
        }
        for name, val in expect.items():
            got = builtin_spec(name, 5).gamma.scale_N
            assert got > 0
            assert abs(got - val) < mpf("1e-35"), name


def test_constant_phases():
    with mp.workdps(DEFAULT_CONTEXT.workdps):
        tol = mpf("1e-50")
        for name in ("s8f", "s92g", "hplus", "sym3", "sym4", "artin"):
            assert abs(builtin_spec(name, 5).phi0) < tol, name
        assert abs(builtin_spec("hminus", 5).phi0 - mp.pi / 2) < tol


def test_phase_theta_anchored_at_zero():
    for s in _all_specs(5):
        assert abs(phase_theta(s, 0)) < mpf("1e-50"), s.name


def test_hecke_defaults_and_inline_names():
    s_default = builtin_spec("hecke", 20)
    s_inline = builtin_spec("hecke(2,1,0)", 20)
    assert s_default.name == "hecke(d=2,n=1,m=0)" == s_inline.name
    assert s_default.kappa == s_inline.kappa
    assert parse_family_name("hecke(d=19,n=2,m=1)") == ("hecke", {"d": 19, "n": 2, "m": 1})
    assert parse_family_name("artin_s5") == ("artin", None)


def test_unknown_names_rejected():
    with pytest.raises(ValueError):
        builtin_spec("zeta", 10)
    with pytest.raises(ValueError):
        builtin_spec("s8f", 0)
    with pytest.raises(ValueError):
        parse_family_name("sym3(1,2,3)")


def test_different_character_value_examples():
    field = fundamental_unit(2)
    with mp.workdps(DEFAULT_CONTEXT.workdps):
        # trivial character
        triv = different_character_value(hecke_char_params(field, 0, 0))
        assert abs(triv - 1) < mpf("1e-55")
        # chi_1 on Q(sqrt(2)): the generator 2 sqrt(2) of the ramified cube
        # gives |2^(3/2)|^(-i v1) with v1 = -2 pi / log eps
        p1 = hecke_char_params(field, 1, 0)
        got = different_character_value(p1)
        expect = mp.expj(3 * mp.pi * mp.log(2) / field.log_eps)
        assert abs(got - expect) < mpf("1e-50")
        assert abs(abs(got) - 1) < mpf("1e-55")
        # kappa folds the dropped unit constant: kappa = dcv * pi^(i v1)
        spec = builtin_spec("hecke", 5)
        pred = got * mp.expj(p1.v1 * mp.log(mp.pi))
        assert abs(spec.kappa - pred) < mpf("1e-50")


def test_hecke_m1_kappa1_still_squares_to_inverse():
    with mp.workdps(DEFAULT_CONTEXT.workdps):
        spec = builtin_spec("hecke", 10, {"d": 2, "n": 1, "m": 1})
        assert abs(spec.kappa1 ** 2 * spec.kappa - 1) < mpf("1e-50")


def test_descriptor_roundtrip(tmp_path):
    spec = builtin_spec("s8f", 40)
    cache = str(tmp_path / "s8f.coeffs")
    write_coeff_cache(spec.coeffs, cache)
    desc = spec_descriptor(spec, cache)
    path = tmp_path / "s8f.spec.json"
    path.write_text(json.dumps(desc))
    back = spec_from_descriptor(str(path))
    assert back.name == spec.name
    assert back.k == spec.k
    assert back.parity is spec.parity
    assert back.v_shift == spec.v_shift
    assert back.coeffs.values == spec.coeffs.values
    with mp.workdps(45):
        assert abs(back.kappa - spec.kappa) < mpf("1e-35")
        assert abs(back.kappa1 - spec.kappa1) < mpf("1e-35")
        assert abs(back.phi0 - spec.phi0) < mpf("1e-35")
        assert abs(back.gamma.scale_N - spec.gamma.scale_N) < mpf("1e-35")
        assert len(back.gamma.factors) == len(spec.gamma.factors)
        for (b1, c1), (b2, c2) in zip(back.gamma.factors, spec.gamma.factors):
            assert b1 == b2
            assert abs(mpc(c1) - mpc(c2)) < mpf("1e-35")


def test_hecke_descriptor_roundtrip(tmp_path):
    spec = builtin_spec("hecke", 25, {"d": 5, "n": 1, "m": 0})
    cache = str(tmp_path / "hecke.coeffs")
    write_coeff_cache(spec.coeffs, cache, digits=45)
    desc = spec_descriptor(spec, cache)
    back = spec_from_descriptor(desc)
    with mp.workdps(45):
        assert abs(back.kappa - spec.kappa) < mpf("1e-35")
        assert abs(back.phi0 - spec.phi0) < mpf("1e-35")
        for u, v in zip(back.coeffs.values, spec.coeffs.values):
            assert abs(u - v) < mpf("1e-35")
