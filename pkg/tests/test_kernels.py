import random
import runpy
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from posmv import _kernels_py, kernels
from posmv._compile import compile_quasi, table_array
from posmv.checker import catalogue, find_violation
from posmv.constructions import luk_chain
from posmv.terms import parse_quasi

from helpers import mixed_algebra

compiled = pytest.mark.skipif(kernels._kernels is None, reason="compiled kernels not built")


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


def _args(a, q):
    code, bounds = compile_quasi(q)
    return table_array(a), a.zero, a.one, code, bounds, q.arity


def test_x_varies_fastest():
    # x1 = 1 first fails at index 1 * n for x = 0; ordering puts x0 fastest
    a = luk_chain(3)
    q = parse_quasi("x1 = 0")
    t, z, o, code, bounds, k = _args(a, q)
    assert _kernels_py.first_violation(t, z, o, code, bounds, k, 0, len(a) ** k) == 4


def test_range_bounds_respected():
    a = luk_chain(2)
    q = parse_quasi("x = 0")
    t, z, o, code, bounds, k = _args(a, q)
    assert _kernels_py.first_violation(t, z, o, code, bounds, k, 0, 1) == -1
    assert _kernels_py.first_violation(t, z, o, code, bounds, k, 2, 3) == 2


@compiled
@given(st.integers(0, 10**6))
@settings(max_examples=80, deadline=None)
def test_compiled_matches_python(seed):
    rng = random.Random(seed)
    a = mixed_algebra(rng, 5)
    for q in catalogue().values():
        args = _args(a, q)
        total = len(a) ** q.arity
        lo = rng.randrange(total + 1)
        assert (kernels._kernels.first_violation(*args, 0, total)
                == _kernels_py.first_violation(*args, 0, total))
        assert (kernels._kernels.first_violation(*args, lo, total)
                == _kernels_py.first_violation(*args, lo, total))


@compiled
def test_compiled_zero_arity():
    a = luk_chain(2)
    for src, expect in (("0 + 1 = 1", -1), ("0 + 0 = 1", 0)):
        args = _args(a, parse_quasi(src))
        assert kernels._kernels.first_violation(*args, 0, 1) == expect
        assert _kernels_py.first_violation(*args, 0, 1) == expect


@pytest.mark.parametrize("jobs", [1, 2, 4])
def test_parallel_scan_reports_least_violation(jobs):
    # 11^5 assignments, enough to cross the parallel threshold
    a = luk_chain(10)
    q = parse_quasi("x0 + x1 + x2 + x3 + x4 = 1 => x4 = 1")
    v = find_violation(a, q, jobs=jobs)
    assert v is not None
    assert v == find_violation(a, q, jobs=1)
    assert v.assignment == {"x0": "1", "x1": "0", "x2": "0", "x3": "0", "x4": "0"}


def test_table_array_layout():
    a = luk_chain(2)
    t = table_array(a)
    assert t.shape == (4, 3, 3) and t.dtype == np.int32
    assert t[0, 1, 1] == a.oplus[1][1]


def test_benchmark_smoke(capsys):
    path = Path(__file__).resolve().parent.parent / "benchmarks" / "bench_kernels.py"
    runpy.run_path(str(path))["main"](["--sizes", "2", "--repeat", "1"])
    assert "assignments" in capsys.readouterr().out
