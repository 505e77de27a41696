import contextlib

import numpy as np
import pytest

from primeframes.spectral import Domain, Signal, idft
from primeframes.zmod import find_generator

SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101]
SWEEP_PRIMES = [5, 7, 11, 13, 17]


def random_signal(ctx, rng, domain=Domain.TIME):
    return Signal(ctx, rng.normal(size=ctx.p) + 1j * rng.normal(size=ctx.p), domain)


def sparse_window(ctx, rng, density, support=None):
    """Time-domain window whose DFT is random on a random (or given) support."""
    v = np.zeros(ctx.p, dtype=np.complex128)
    if support is None:
        support = np.flatnonzero(rng.random(ctx.p) < density)
        if support.size == 0:
            support = np.array([rng.integers(ctx.p)])
    vals = rng.normal(size=len(support)) + 1j * rng.normal(size=len(support))
    # keep magnitudes well away from the zero tolerance
    vals = vals / np.abs(vals) * (0.5 + rng.random(len(support)))
    v[np.asarray(support)] = vals
    return idft(Signal(ctx, v, Domain.FREQ))


def admissible_window(ctx, H, rng, density=0.5):
    """Random sparse window passing the frame criterion for subgroup ``H``:
    DC plus one random sample per coset, plus extra random support."""
    support = {0}
    for coset in H.cosets:
        support.add(int(rng.choice(coset)))
    support |= set(np.flatnonzero(rng.random(ctx.p) < density).tolist())
    return sparse_window(ctx, rng, 0, support=sorted(support))


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture(scope="session")
def ctx7():
    return find_generator(7)


@pytest.fixture(scope="session")
def ctx13():
    return find_generator(13)


# -- acceptance bookkeeping ----------------------------------------------------

_ACCEPTANCE = []


class _Entry:
    def __init__(self, name):
        self.name = name
        self.detail = ""


@pytest.fixture
def criterion():
    @contextlib.contextmanager
    def run(name):
        entry = _Entry(name)
        try:
            yield entry
        except BaseException:
            _ACCEPTANCE.append((name, False, entry.detail))
            raise
        _ACCEPTANCE.append((name, True, entry.detail))

    return run


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        line = f"{'PASS' if ok else 'FAIL'}  {name}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
