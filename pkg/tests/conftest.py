import numpy as np
import pytest

from bergmanlab.geometry import make_hamiltonian, make_model
from bergmanlab.quantization import quantize


@pytest.fixture(scope="session")
def bf():
    return make_model("BargmannFock")


@pytest.fixture(scope="session")
def fs():
    return make_model("FubiniStudyCP1")


@pytest.fixture(scope="session")
def bf_radial(bf):
    return make_hamiltonian("bf_radial", bf)


@pytest.fixture(scope="session")
def bf_linear(bf):
    return make_hamiltonian("bf_linear", bf)


@pytest.fixture(scope="session")
def fs_north(fs):
    return make_hamiltonian("fs_height", fs)


@pytest.fixture(scope="session")
def fs_skew(fs):
    return make_hamiltonian("fs_skew", fs)


@pytest.fixture(scope="session")
def fs_skew_b(fs):
    return make_hamiltonian("fs_skew_b", fs)


@pytest.fixture(scope="session")
def radial_40(bf, bf_radial):
    """Basis and spectrum of |z|^2 on Bargmann-Fock, k = 40, truncation 200."""
    basis, spec, _ = quantize(bf, bf_radial, 40, truncation=200)
    return basis, spec


@pytest.fixture(scope="session")
def linear_40(bf, bf_linear):
    """Basis and spectrum of Re(sqrt(2) conj z) on Bargmann-Fock, k = 40."""
    basis, spec, _ = quantize(bf, bf_linear, 40, truncation=200)
    return basis, spec


@pytest.fixture(scope="session")
def skew_8(fs, fs_skew):
    basis, spec, matrix = quantize(fs, fs_skew, 8)
    return basis, spec, matrix


@pytest.fixture(scope="session")
def skew_spectrum(fs, fs_skew):
    """Return (basis, spec) of fs_skew at tensor power k, each k quantized once."""
    cache = {}

    def spectrum(k):
        if k not in cache:
            basis, spec, _ = quantize(fs, fs_skew, k)
            cache[k] = (basis, spec)
        return cache[k]

    return spectrum


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240611)
