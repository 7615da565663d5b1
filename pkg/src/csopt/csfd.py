"""Scalar derivative operators: forward/central differences and complex steps.

The finite-difference schemes subtract nearby function values and hit
cancellation once the perturbation drops below roughly sqrt(eps); the
complex-step variants read the derivative off an imaginary channel and stay
at round-off accuracy for arbitrarily small steps.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

import numpy as np

from .errors import EvaluationError
from .multicomplex import BiCplx, Cplx, imag1, imag12

# First-order steps carry no cancellation, so the default sits far below
# sqrt(eps).  The second-order step divides by h**2 and is kept large enough
# that the mixed imaginary channel stays well clear of denormals.
DEFAULT_H1 = 1e-20
DEFAULT_H2 = 1e-6

SCHEMES = ("FFD", "CFD", "CSFD1", "CSFD2")


@dataclass(frozen=True)
class DiffScheme:
    kind: str
    h: float

    def __post_init__(self):
        if self.kind not in SCHEMES:
            raise ValueError(f"unknown scheme {self.kind!r}")
        if not (math.isfinite(self.h) and self.h >= sys.float_info.min):
            raise ValueError("h must be a positive normal float")


def _real_eval(f, x):
    y = f(x)
    if not np.isfinite(y):
        raise EvaluationError(f"f({x}) is not finite")
    return y


def ffd(f, x0: float, h: float) -> float:
    """(f(x0+h) - f(x0)) / h"""
    return (_real_eval(f, x0 + h) - _real_eval(f, x0)) / h


def cfd(f, x0: float, h: float) -> float:
    """(f(x0+h) - f(x0-h)) / (2h)"""
    return (_real_eval(f, x0 + h) - _real_eval(f, x0 - h)) / (2.0 * h)


def csfd1(f, x0: float, h: float = DEFAULT_H1) -> float:
    """Im(f(x0 + h*i)) / h; subtraction-free first derivative."""
    return float(imag1(f(Cplx(x0, h)))) / h


def csfd2(f, x0: float, h: float = DEFAULT_H2) -> float:
    """Im2(f(x0 + h*i1 + h*i2)) / h**2; subtraction-free second derivative."""
    if h < 1e-150:
        raise ValueError("h too small: h**2 would underflow")
    w = BiCplx(Cplx(x0, h), Cplx(h, 0.0))
    return float(imag12(f(w))) / (h * h)


def relative_error(approx: float, exact: float) -> float:
    return abs(approx - exact) / max(abs(exact), 1e-300)


def error_curve(f, f_analytic, x0: float, h_grid, out_path=None):
    """Relative error of all four schemes against the analytic derivative.

    ``f_analytic`` supplies the first derivative; CSFD2 rows are measured
    against a first-order complex step of ``f_analytic`` itself, keeping the
    reference independent of the scheme under test.  Returns a list of
    (scheme, h, rel_error) rows and optionally writes them as CSV.
    """
    h_grid = [float(h) for h in h_grid]
    if any(h <= 0.0 for h in h_grid):
        raise ValueError("h_grid must be strictly positive")
    if any(b >= a for a, b in zip(h_grid, h_grid[1:])):
        raise ValueError("h_grid must be strictly descending")

    exact1 = float(f_analytic(x0))
    exact2 = csfd1(f_analytic, x0)

    rows = []
    for h in h_grid:
        rows.append(("FFD", h, relative_error(ffd(f, x0, h), exact1)))
        rows.append(("CFD", h, relative_error(cfd(f, x0, h), exact1)))
        rows.append(("CSFD1", h, relative_error(csfd1(f, x0, h), exact1)))
        rows.append(("CSFD2", h, relative_error(csfd2(f, x0, h), exact2)))

    if out_path is not None:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("scheme,h,rel_error\n")
            for scheme, h, err in rows:
                fh.write(f"{scheme},{h!r},{err!r}\n")
    return rows
