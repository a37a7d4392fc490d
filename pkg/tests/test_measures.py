"""Density-level results: Beta push-forwards, Stieltjes inversion,
moments and Gaussian convergence."""

import math
from fractions import Fraction

import numpy as np
import pytest

from ultrafid.config import DomainError
from ultrafid.exact import catalan
from ultrafid.measures import (
    BetaParams,
    beta_density,
    check_beta_square,
    check_beta_symmetric,
    density_ultra,
    moment,
    poincare_report,
    stieltjes_invert,
)


def test_beta_params_validation():
    BetaParams(Fraction(3, 2), Fraction(1, 2))
    with pytest.raises(DomainError):
        BetaParams(Fraction(1, 3), Fraction(1, 2))
    with pytest.raises(DomainError):
        BetaParams(Fraction(-1, 2), Fraction(1, 2))


# [TRIVIAL] arcsine density: Beta(1/2,1/2)(u) = 1/(pi sqrt(u(1-u)))
def test_arcsine_density():
    p = BetaParams(Fraction(1, 2), Fraction(1, 2))
    for u in (0.1, 0.5, 0.73):
        assert abs(beta_density(p, u) - 1 / (math.pi * math.sqrt(u * (1 - u)))) < 1e-14


# [TRIVIAL] Beta(3/2,3/2)(u) = 8 sqrt(u(1-u)) / pi, the semicircle image
def test_semicircle_beta_image():
    p = BetaParams(Fraction(3, 2), Fraction(3, 2))
    for u in (0.2, 0.5, 0.9):
        assert abs(beta_density(p, u) - 8 * math.sqrt(u * (1 - u)) / math.pi) < 1e-14


def test_beta_density_domain():
    p = BetaParams(Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(DomainError):
        beta_density(p, 0.0)
    with pytest.raises(DomainError):
        beta_density(p, 1.0)


def test_density_support():
    assert density_ultra(3, -2.5) == 0.0
    assert density_ultra(3, 2.0) == 0.0
    assert density_ultra(3, 0.0) > 0.0
    x = np.array([-3.0, 0.0, 1.0, 5.0])
    vals = density_ultra(2, x)
    assert vals[0] == vals[3] == 0.0


@pytest.mark.parametrize("n", range(1, 7))
def test_density_mass(n):
    # trapezoid over a fine grid; integrand has sqrt endpoint behavior
    # only for n=1 so a dense grid suffices at 1e-8
    x = np.linspace(-2, 2, 400001)
    mass = np.trapezoid(density_ultra(n, x), x)
    assert abs(mass - 1.0) < 1e-8


# [DERIVED] Stieltjes inversion error is linear in eps with slope about
# n/(2 pi); constants pinned with margin after the oracle run
STIELTJES_K = {1: 0.17, 2: 0.34, 3: 0.51, 4: 0.68, 5: 0.85, 6: 1.02}


@pytest.mark.parametrize("n", range(1, 7))
def test_stieltjes_inversion(n):
    x = np.linspace(-1.95, 1.95, 79)
    for eps in (1e-4, 1e-5, 1e-6):
        worst = max(
            abs(stieltjes_invert(n, float(xx), eps) - density_ultra(n, float(xx)))
            for xx in x
        )
        assert worst < STIELTJES_K[n] * eps


def test_stieltjes_domain():
    with pytest.raises(DomainError):
        stieltjes_invert(1, 2.5, 1e-6)
    with pytest.raises(DomainError):
        stieltjes_invert(1, 0.5, 0.0)


@pytest.mark.parametrize("n", range(1, 9))
def test_beta_pushforward_residuals(n):
    u = np.linspace(1 / 201, 200 / 201, 200)
    assert check_beta_symmetric(n, u) < 1e-12
    assert check_beta_square(n, u) < 1e-12


# [KNOWN] semicircle even moments are the Catalan numbers
def test_semicircle_moments():
    for k in range(9):
        assert abs(moment(1, 2 * k) - catalan(k)) < 1e-10


def test_odd_moments_vanish():
    for n in (1, 3, 5):
        assert moment(n, 3) == 0.0
        assert moment(n, 7) == 0.0


# [DERIVED] second moment 2/(n+1), measured by the quadrature oracle
@pytest.mark.parametrize("n", range(1, 11))
def test_second_moment(n):
    assert abs(moment(n, 2) - 2 / (n + 1)) < 1e-10


def test_poincare_convergence():
    x = np.linspace(-5, 5, 401)
    report = poincare_report((1, 2, 5, 10, 20, 50), x)
    dists = [d for _, d in report.entries]
    assert all(a > b for a, b in zip(dists, dists[1:]))
    assert dists[-1] < 0.01
    # [DERIVED] frozen baseline for the semicircle entry on this grid
    assert abs(dists[0] - 0.08123109833072294) < 1e-12


def test_report_csv_format():
    x = np.linspace(-3, 3, 21)
    report = poincare_report((1, 2), x)
    lines = report.to_csv().strip().split("\n")
    assert lines[0] == "n,sup_distance"
    assert len(lines) == 3
    assert len(lines[1].split(",")) == 2
