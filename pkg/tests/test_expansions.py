import cmath

import numpy as np
import pytest

from ellpf.errors import DomainError
from ellpf.expansions import (
    SCHUR_BASES,
    laurent_coefficient,
    laurent_coefficients,
    laurent_residual,
    laurent_sum,
    pi_sigma,
    rational_part,
    schur_expansion_check,
    sqe_expansion_check,
    trig_gap,
    trig_leading_check,
)
from ellpf.nome import Nome
from ellpf.pfaffians import SIGMA_BASES, p_sigma, sample_config

TAU = 0.13 + 1.05j


@pytest.fixture
def enome():
    return Nome(TAU)


def ring_point(rng, radius=1.0, wobble=0.05):
    return radius * (1 + wobble * rng.standard_normal()) * cmath.exp(
        2j * cmath.pi * rng.random()
    )


# --- entry expansions --------------------------------------------------------

def test_laurent_residual_all_bases(rng, enome):
    for base in SIGMA_BASES:
        for _ in range(8):
            x = ring_point(rng, wobble=0.03)
            assert laurent_residual(base, x, enome) < 1e-10


def test_laurent_mirror_rule(enome):
    # even bases: c_{-k} = -c_k with c_0 = 0; odd bases: c_{1-k} = -c_k
    for base in (0, 4):
        assert laurent_coefficient(base, 0, enome) == 0
        for k in (1, 2, 3):
            a = laurent_coefficient(base, k, enome)
            b = laurent_coefficient(base, -k, enome)
            assert abs(a + b) < 1e-15 * max(abs(a), 1.0)
    for base in (1, 2, 3, 6):
        for k in (1, 2, 3):
            a = laurent_coefficient(base, k, enome)
            b = laurent_coefficient(base, 1 - k, enome)
            assert abs(a + b) < 1e-15 * max(abs(a), 1.0)


def test_laurent_table_bundles(enome):
    table = laurent_coefficients(2, range(-2, 3), enome)
    assert table.parity == "odd"
    assert set(table.values) == {-2, -1, 0, 1, 2}
    for k, v in table.values.items():
        assert v == table.coefficient(k)


def test_laurent_rejects_hatted(enome):
    with pytest.raises(DomainError):
        laurent_coefficients("2h", range(3), enome)


def test_laurent_annulus_guard(enome):
    # base 0 converges only on (|p|^{1/6}, |p|^{-1/6})
    with pytest.raises(DomainError):
        laurent_sum(0, 2.5, enome)


def test_rational_part_odd():
    assert abs(rational_part(1.3) + rational_part(1 / 1.3)) < 1e-15


def test_base_one_rational_poles():
    # the subtracted term blows up at x^6 = -1, on the unit circle only
    x = cmath.exp(1j * cmath.pi / 6)
    assert abs(x**-3 + x**3) < 1e-14
    assert abs(rational_part(1.1 * x)) < 50


# --- schur expansions --------------------------------------------------------

def test_schur_expansion_small(rng):
    nome = Nome(0.1 + 1.3j)
    for base in SCHUR_BASES:
        for n in (1, 2):
            cfg = sample_config(rng, n, nome, sigma=base, beta=0.03)
            assert schur_expansion_check(base, cfg) < 1e-7


def test_schur_quadratic_expansion(rng):
    nome = Nome(0.1 + 1.3j)
    for n in (1, 2):
        cfg = sample_config(rng, n, nome, sigma=1, beta=0.03)
        assert sqe_expansion_check(cfg) < 1e-7


def test_schur_expansion_rejects_base_one(rng):
    nome = Nome(0.1 + 1.3j)
    cfg = sample_config(rng, 1, nome, beta=0.03)
    with pytest.raises(DomainError):
        schur_expansion_check(1, cfg)


# --- trigonometric limit -----------------------------------------------------

def test_pi_sigma_matches_small_nome(rng):
    # at |p| ~ 1e-4 the full family is the trig limit plus O(p^gap)
    nome = Nome(0.25 + 2.93j)  # |p| ~ 1e-4
    for base in SIGMA_BASES:
        cfg = sample_config(rng, 1, nome, sigma=base, beta=0.02)
        full = p_sigma(base, cfg)
        trig = pi_sigma(base, cfg)
        gap = trig_gap(base, 1)
        bound = 50 * abs(nome.p) ** gap * max(abs(trig), 1e-10)
        assert abs(full - trig) < bound


def test_trig_gap_table():
    for base in (0, 3, 6):
        assert trig_gap(base, 1) == pytest.approx(1 / 3)
    for base in (1, 2):
        assert trig_gap(base, 2) == pytest.approx(1.0)
    assert trig_gap(4, 1) == pytest.approx(1.0)
    assert trig_gap(4, 2) == pytest.approx(2.0)


def test_trig_leading_slope(rng):
    for base in SIGMA_BASES:
        z = tuple(
            0.1 + 0.2 * j + rng.uniform(-0.06, 0.06) + 0.02j * rng.standard_normal()
            for j in range(4)
        )
        result = trig_leading_check(base, z)
        assert result.ok, f"base {base}: slope {result.slope:.3f} below gap {result.gap:.3f}"
