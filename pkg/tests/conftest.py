"""Shared fixtures: spectral data objects reused across the suite."""

import pytest

from nnlstep import StepProfile, soliton_spectral, step_spectral


@pytest.fixture(scope="session")
def step_sd():
    """Closed-form scattering data of the centered unit step."""
    return step_spectral(StepProfile(A=1.0, R=0.0))


@pytest.fixture(scope="session")
def soliton_sd():
    """Reflectionless one-soliton scattering data, phi0 = 0."""
    return soliton_spectral(1.0, 0.0)
