import contextlib
import itertools
import sys

import pytest
from hypothesis import strategies as st

from permhom import chains, corpus, kernels, perm_homology, stratify
from permhom.complex import build_complex

BACKENDS = ["python"]
try:
    kernels.get_backend("cython")
    BACKENDS.append("cython")
except ImportError:
    pass


def _clear_caches():
    chains.chain_complex.cache_clear()
    perm_homology.tower.cache_clear()
    perm_homology.derived.cache_clear()
    stratify.local_profile.cache_clear()
    stratify._q_iso.cache_clear()
    stratify._cstar.cache_clear()


@contextlib.contextmanager
def use_backend(name):
    """Swap the reduction kernel for the duration of a block."""
    mod = kernels.get_backend(name)
    saved = {fn: getattr(kernels, fn) for fn in ("reduce_complex", "project_chain", "lift_chain")}
    for fn in saved:
        setattr(kernels, fn, getattr(mod, fn))
    _clear_caches()
    try:
        yield name
    finally:
        for fn, f in saved.items():
            setattr(kernels, fn, f)
        _clear_caches()


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run a test once per available reduction kernel."""
    mod = kernels.get_backend(request.param)
    for fn in ("reduce_complex", "project_chain", "lift_chain"):
        monkeypatch.setattr(kernels, fn, getattr(mod, fn))
    _clear_caches()
    yield request.param
    _clear_caches()


@pytest.fixture(scope="session")
def book():
    return corpus.book3()


@pytest.fixture(scope="session")
def xpp():
    return corpus.x_pp()


@st.composite
def complexes(draw, max_vertices=6, max_dim=3, max_facets=6):
    nv = draw(st.integers(1, max_vertices))
    facets = draw(
        st.lists(
            st.lists(st.integers(0, nv - 1), min_size=1, max_size=max_dim + 1, unique=True),
            min_size=1,
            max_size=max_facets,
        )
    )
    return build_complex(facets)


def all_faces(s):
    for k in range(1, len(s) + 1):
        yield from itertools.combinations(s, k)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.SUMMARY:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.SUMMARY):
        terminalreporter.write_line(mod.SUMMARY[n].line())
