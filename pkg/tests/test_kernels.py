import os
import subprocess
import sys

import numpy as np
import pytest

from powergraph import _kernels_py, kernels
from powergraph import groups as grp

import oracles

try:
    from powergraph import _kernels as compiled
except ImportError:
    compiled = None

BACKENDS = [pytest.param(_kernels_py, id="python")]
BACKENDS.append(pytest.param(compiled, id="cython", marks=pytest.mark.skipif(compiled is None, reason="extension not built")))


def _table(g):
    return np.ascontiguousarray(g.table, dtype=np.int32)


@pytest.mark.parametrize("impl", BACKENDS)
def test_orders_match_oracle(impl, small_group):
    assert impl.element_orders(_table(small_group)).tolist() == oracles.orders(oracles.rows(small_group))


@pytest.mark.parametrize("impl", BACKENDS)
def test_power_arcs_match_oracle(impl, small_group):
    t = oracles.rows(small_group)
    arcs = impl.power_arcs(_table(small_group))
    for x in range(len(t)):
        assert set(np.flatnonzero(arcs[x]).tolist()) == oracles.powers(t, x) - {x}


@pytest.mark.parametrize("impl", BACKENDS)
def test_associativity_witness(impl, small_group):
    assert impl.associativity_witness(_table(small_group), -1) is None
    # x*y = x - y mod 5 is a Latin square but not associative
    bad = np.array([[(a - b) % 5 for b in range(5)] for a in range(5)], dtype=np.int32)
    a, b, c = impl.associativity_witness(bad, -1)
    assert bad[bad[a, b], c] != bad[a, bad[b, c]]


def test_backends_agree_on_larger_groups():
    if compiled is None:
        pytest.skip("extension not built")
    for g in (grp.build_symmetric(5), grp.build_dihedral(100), grp.build_frobenius_7_3(2)):
        t = _table(g)
        assert np.array_equal(compiled.element_orders(t), _kernels_py.element_orders(t))
        assert np.array_equal(compiled.power_arcs(t), _kernels_py.power_arcs(t))


def test_backend_selection_honours_env():
    code = "from powergraph import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, POWERGRAPH_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    assert kernels.BACKEND in ("cython", "python")
    if compiled is not None and os.environ.get("POWERGRAPH_PURE", "") in ("", "0"):
        assert kernels.BACKEND == "cython"


def test_wrapper_accepts_other_dtypes():
    g = grp.build_cyclic(6)
    assert kernels.element_orders(g.table.astype(np.int64)).tolist() == [1, 6, 3, 2, 3, 6]
