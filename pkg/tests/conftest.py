"""Shared fixtures: the reference-scale schemes are built once per session."""

import pytest

import dmshape as d

N_REF = 216
K_REF = 349


@pytest.fixture(scope="session")
def ccdm216():
    return d.build_ccdm(N_REF, K_REF)


@pytest.fixture(scope="session")
def mpdm216():
    return d.build_mpdm(N_REF, K_REF)


@pytest.fixture(scope="session")
def ess216():
    return d.build_ess(N_REF, K_REF)


@pytest.fixture(scope="session")
def opt216():
    return d.build_opt_mpdm(N_REF, K_REF)


@pytest.fixture(scope="session")
def config_default():
    return d.parse_config(None)


@pytest.fixture(scope="session")
def model216(config_default, mpdm216):
    kmin, _ = mpdm216.kurtosis_range()
    return config_default.resolve_model(anchor2_kurtosis=kmin)
