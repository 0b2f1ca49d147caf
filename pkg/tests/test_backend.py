import os
import subprocess
import sys

import numpy as np
import pytest

from stieltjes import _backend, _pykernels
from stieltjes.measure import Measure, constant_piece
from stieltjes.transform import StieltjesFunction, eval_transform


def _run(code, pure):
    env = dict(os.environ)
    env["STIELTJES_PURE_PYTHON"] = "1" if pure else "0"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return out.stdout.strip()


def test_env_var_selects_python_backend():
    assert _run("from stieltjes._backend import BACKEND; print(BACKEND)", True) == "python"


def test_default_backend_is_importable():
    assert _backend.BACKEND in ("compiled", "python")
    assert _backend.pykernels is _pykernels


def test_backends_agree_end_to_end():
    code = ("from stieltjes.reproduce import corpus;"
            "from stieltjes.transform import StieltjesFunction, eval_transform;"
            "mu = dict(corpus())['mixed'];"
            "print(repr(complex(eval_transform(StieltjesFunction(mu, 1.5), 0.7+0.4j))))")
    a = complex(_run(code, True))
    b = complex(_run(code, False))
    assert a == pytest.approx(b, rel=1e-13)


@pytest.mark.skipif(_backend.BACKEND != "compiled", reason="compiled kernels not built")
def test_vectorized_kernels_parity():
    from stieltjes import _ckernels
    x = np.linspace(0.05, 30.0, 50)
    assert np.allclose(_ckernels.gamma_array(x), _pykernels.gamma_array(x), rtol=1e-14)
    u = np.linspace(0.0, 1.0, 50)
    assert np.allclose(_ckernels.betainc_array(u, 0.6, 1.7), _pykernels.betainc_array(u, 0.6, 1.7), rtol=1e-13)
    z = np.linspace(-40.0, 0.9, 50)
    assert np.allclose(_ckernels.hyp2f1_array(0.5, 1.0, 2.0, z), _pykernels.hyp2f1_array(0.5, 1.0, 2.0, z),
                       rtol=1e-12)
