import numpy as np
import pytest

import resglue
from resglue import _backend
from resglue import _kernels_py as pyk

from helpers import luk


def test_backend_reports_its_choice():
    assert resglue.BACKEND in ("cython", "python")
    assert _backend.BACKEND == resglue.BACKEND


@pytest.mark.skipif(resglue.BACKEND != "cython",
                    reason="compiled kernels not built")
def test_kernels_agree():
    from resglue import _kernels as ck

    l4 = luk(4)
    tabs = np.stack([l4.join, l4.meet, l4.mul, l4.ldiv, l4.rdiv])
    assert ck.assoc_witness(l4.mul) == pyk.assoc_witness(l4.mul)
    assert ck.residuation_witness(l4.leq, l4.mul, l4.ldiv, l4.rdiv) == \
        pyk.residuation_witness(l4.leq, l4.mul, l4.ldiv, l4.rdiv)
    assert ck.bounds_witness(l4.leq, l4.join, l4.meet) == \
        pyk.bounds_witness(l4.leq, l4.join, l4.meet)

    bad = l4.mul.copy()
    bad[1, 2] = 3
    assert ck.assoc_witness(bad) == pyk.assoc_witness(bad)
    jbad = l4.join.copy()
    jbad[0, 1] = 0
    assert ck.bounds_witness(l4.leq, jbad, l4.meet) == \
        pyk.bounds_witness(l4.leq, jbad, l4.meet)

    # (x * y) \ x over all assignments
    codes = np.array([pyk.OP_VAR, pyk.OP_VAR, pyk.OP_TABLE,
                      pyk.OP_VAR, pyk.OP_TABLE], dtype=np.int64)
    args = np.array([0, 1, 2, 0, 3], dtype=np.int64)
    got_c = ck.eval_term_all(codes, args, tabs, 2, l4.n, l4.unit)
    got_p = pyk.eval_term_all(codes, args, tabs, 2, l4.n, l4.unit)
    assert np.array_equal(got_c, got_p)

    for seed in (0b0100, 0b0011, 0b1000):
        assert ck.close_mask(tabs, seed, l4.n) == \
            pyk.close_mask(tabs, seed, l4.n)
    assert np.array_equal(ck.closure_all_seeds(tabs, l4.n),
                          pyk.closure_all_seeds(tabs, l4.n))
