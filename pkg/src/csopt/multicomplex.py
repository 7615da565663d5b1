"""First- and second-level complex scalars for step-derivative computations.

``Cplx`` is a complex number stored as an explicit (re, im) pair of float64
values; ``BiCplx`` is a pair of ``Cplx`` (value = z1 + z2*i2) with a second,
commuting imaginary unit i2.  Both wrap either python/numpy scalars or
ndarrays, so the same classes serve scalar differentiation and vectorized
network evaluation.

Two properties drive the implementation and are worth keeping in mind when
editing:

* no subtraction of nearly-equal quantities may be introduced on the
  imaginary channels -- their content is the derivative signal;
* an input with zero imaginary components must reproduce the plain float64
  computation bit-for-bit, which is why arithmetic is written out over
  components (numpy's native complex kernels do not have this property)
  and division uses Smith's algorithm.

Piecewise functions (relu, elu, abs, max2) branch on the leading real
component only, then apply the selected smooth branch to the full value.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError

__all__ = [
    "Cplx",
    "BiCplx",
    "imag1",
    "imag12",
    "leading_real",
    "select",
    "exp",
    "log",
    "sin",
    "cos",
    "sinh",
    "cosh",
    "tan",
    "arctan",
    "tanh",
    "sigmoid",
    "sqrt",
    "pow_int",
    "relu",
    "elu",
    "absolute",
    "maximum2",
]

_REAL_TYPES = (int, float, np.integer, np.floating, np.ndarray)


def _f64(v):
    # unwrap 0-d arrays back to numpy scalars so scalar math stays scalar
    return np.asarray(v, dtype=np.float64)[()]


class Cplx:
    """re + im*i over float64 scalars or ndarrays."""

    __slots__ = ("re", "im")
    __array_ufunc__ = None  # force ndarray ops to defer to our reflected methods

    def __init__(self, re, im=0.0):
        self.re = _f64(re)
        self.im = _f64(im)

    # -- structure ---------------------------------------------------------
    @property
    def shape(self):
        return np.shape(self.re)

    @property
    def T(self):
        return Cplx(np.transpose(self.re), np.transpose(self.im))

    def reshape(self, *shape):
        return Cplx(np.reshape(self.re, shape), np.reshape(self.im, shape))

    def ravel(self):
        return Cplx(np.ravel(self.re), np.ravel(self.im))

    def copy(self):
        return Cplx(np.copy(self.re), np.copy(self.im))

    def __getitem__(self, idx):
        return Cplx(self.re[idx], self.im[idx])

    def sum(self, axis=None):
        return Cplx(np.sum(self.re, axis=axis), np.sum(self.im, axis=axis))

    def mean(self, axis=None):
        return Cplx(np.mean(self.re, axis=axis), np.mean(self.im, axis=axis))

    def isfinite(self):
        return np.all(np.isfinite(self.re)) and np.all(np.isfinite(self.im))

    def __repr__(self):
        return f"Cplx({self.re!r}, {self.im!r})"

    # -- arithmetic --------------------------------------------------------
    def __neg__(self):
        return Cplx(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, Cplx):
            return Cplx(self.re + other.re, self.im + other.im)
        if isinstance(other, _REAL_TYPES):
            return Cplx(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Cplx):
            return Cplx(self.re - other.re, self.im - other.im)
        if isinstance(other, _REAL_TYPES):
            return Cplx(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _REAL_TYPES):
            return Cplx(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Cplx):
            return Cplx(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, _REAL_TYPES):
            return Cplx(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Cplx):
            return _cplx_div(self.re, self.im, other.re, other.im)
        if isinstance(other, _REAL_TYPES):
            _check_nonzero_real(other)
            return Cplx(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _REAL_TYPES):
            return _cplx_div(other, np.zeros_like(self.re), self.re, self.im)
        return NotImplemented

    def __pow__(self, n):
        if isinstance(n, (int, np.integer)):
            return pow_int(self, int(n))
        return NotImplemented

    def __matmul__(self, other):
        if isinstance(other, Cplx):
            return Cplx(
                self.re @ other.re - self.im @ other.im,
                self.re @ other.im + self.im @ other.re,
            )
        if isinstance(other, np.ndarray):
            return Cplx(self.re @ other, self.im @ other)
        return NotImplemented

    def __rmatmul__(self, other):
        if isinstance(other, np.ndarray):
            return Cplx(other @ self.re, other @ self.im)
        return NotImplemented


def _check_nonzero_real(v):
    if np.any(np.asarray(v) == 0.0):
        raise DomainError("division by exact zero")


def _cplx_div(ar, ai, br, bi):
    """Smith's algorithm; exact for a purely real divisor."""
    if np.any((np.asarray(br) == 0.0) & (np.asarray(bi) == 0.0)):
        raise DomainError("complex division by exact zero")
    with np.errstate(all="ignore"):
        big_re = np.abs(br) >= np.abs(bi)
        # branch where |br| >= |bi|
        t1 = bi / br
        d1 = br + bi * t1
        re1 = (ar + ai * t1) / d1
        im1 = (ai - ar * t1) / d1
        # branch where |bi| > |br|
        t2 = br / bi
        d2 = bi + br * t2
        re2 = (ar * t2 + ai) / d2
        im2 = (ai * t2 - ar) / d2
    return Cplx(np.where(big_re, re1, re2), np.where(big_re, im1, im2))


class BiCplx:
    """z1 + z2*i2 with z1, z2 complex over i1; i1 and i2 commute, i2**2 = -1."""

    __slots__ = ("z1", "z2")
    __array_ufunc__ = None

    def __init__(self, z1, z2=None):
        self.z1 = z1 if isinstance(z1, Cplx) else Cplx(z1)
        if z2 is None:
            z2 = Cplx(np.zeros_like(self.z1.re), np.zeros_like(self.z1.re))
        self.z2 = z2 if isinstance(z2, Cplx) else Cplx(z2)

    # -- structure ---------------------------------------------------------
    @property
    def shape(self):
        return self.z1.shape

    @property
    def T(self):
        return BiCplx(self.z1.T, self.z2.T)

    def reshape(self, *shape):
        return BiCplx(self.z1.reshape(*shape), self.z2.reshape(*shape))

    def ravel(self):
        return BiCplx(self.z1.ravel(), self.z2.ravel())

    def copy(self):
        return BiCplx(self.z1.copy(), self.z2.copy())

    def __getitem__(self, idx):
        return BiCplx(self.z1[idx], self.z2[idx])

    def sum(self, axis=None):
        return BiCplx(self.z1.sum(axis), self.z2.sum(axis))

    def mean(self, axis=None):
        return BiCplx(self.z1.mean(axis), self.z2.mean(axis))

    def isfinite(self):
        return self.z1.isfinite() and self.z2.isfinite()

    def __repr__(self):
        return f"BiCplx({self.z1!r}, {self.z2!r})"

    # -- arithmetic (generic pair rules; u = i2, u**2 = -1) ------------------
    def __neg__(self):
        return BiCplx(-self.z1, -self.z2)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, BiCplx):
            return BiCplx(self.z1 + other.z1, self.z2 + other.z2)
        if isinstance(other, (Cplx,) + _REAL_TYPES):
            return BiCplx(self.z1 + other, self.z2)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, BiCplx):
            return BiCplx(self.z1 - other.z1, self.z2 - other.z2)
        if isinstance(other, (Cplx,) + _REAL_TYPES):
            return BiCplx(self.z1 - other, self.z2)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (Cplx,) + _REAL_TYPES):
            return BiCplx(other - self.z1, -self.z2)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, BiCplx):
            return BiCplx(
                self.z1 * other.z1 - self.z2 * other.z2,
                self.z1 * other.z2 + self.z2 * other.z1,
            )
        if isinstance(other, (Cplx,) + _REAL_TYPES):
            return BiCplx(self.z1 * other, self.z2 * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, BiCplx):
            return _bicplx_div(self, other)
        if isinstance(other, Cplx):
            return BiCplx(self.z1 / other, self.z2 / other)
        if isinstance(other, _REAL_TYPES):
            _check_nonzero_real(other)
            return BiCplx(self.z1 / other, self.z2 / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (Cplx,) + _REAL_TYPES):
            return _bicplx_div(BiCplx(Cplx(0.0) + other), self)
        return NotImplemented

    def __pow__(self, n):
        if isinstance(n, (int, np.integer)):
            return pow_int(self, int(n))
        return NotImplemented

    def __matmul__(self, other):
        if isinstance(other, BiCplx):
            return BiCplx(
                self.z1 @ other.z1 - self.z2 @ other.z2,
                self.z1 @ other.z2 + self.z2 @ other.z1,
            )
        if isinstance(other, (Cplx, np.ndarray)):
            return BiCplx(self.z1 @ other, self.z2 @ other)
        return NotImplemented

    def __rmatmul__(self, other):
        if isinstance(other, (Cplx, np.ndarray)):
            return BiCplx(other @ self.z1, other @ self.z2)
        return NotImplemented


def _is_zero_cplx(z: Cplx) -> bool:
    return bool(np.all(np.asarray(z.re) == 0.0) and np.all(np.asarray(z.im) == 0.0))


def _bicplx_div(num: BiCplx, den: BiCplx) -> BiCplx:
    """Multiply by the i2-conjugate, then divide by z1**2 + z2**2 (a Cplx).

    A divisor with z1**2 + z2**2 = 0 is a zero divisor of the bicomplex ring
    and rejected.  A divisor whose i2 component is identically zero reduces
    componentwise, which keeps the real embedding exact.
    """
    c, d = den.z1, den.z2
    if _is_zero_cplx(d):
        return BiCplx(num.z1 / c, num.z2 / c)
    a, b = num.z1, num.z2
    denom = c * c + d * d
    if np.any((np.asarray(denom.re) == 0.0) & (np.asarray(denom.im) == 0.0)):
        raise DomainError("bicomplex divisor is a zero divisor (z1^2 + z2^2 = 0)")
    return BiCplx((a * c + b * d) / denom, (b * c - a * d) / denom)


# -- projections ------------------------------------------------------------


def leading_real(x):
    """The fully-real component; piecewise branches depend only on this."""
    if isinstance(x, BiCplx):
        return x.z1.re
    if isinstance(x, Cplx):
        return x.re
    return x


def imag1(x):
    """Coefficient of i1 (first-level imaginary part)."""
    if isinstance(x, BiCplx):
        return x.z1.im
    if isinstance(x, Cplx):
        return x.im
    raise TypeError(f"no first-level imaginary part on {type(x).__name__}")


def imag12(x):
    """Coefficient of the mixed unit i1*i2 of a bicomplex value."""
    if isinstance(x, BiCplx):
        return x.z2.im
    raise TypeError(f"no mixed imaginary part on {type(x).__name__}")


def select(mask, a, b):
    """Componentwise where() that understands all three scalar kinds.

    ``b`` may be the scalar 0.0 regardless of the kind of ``a``.
    """
    if isinstance(a, BiCplx):
        if not isinstance(b, BiCplx):
            b = BiCplx(Cplx(b * np.ones_like(a.z1.re)))
        return BiCplx(select(mask, a.z1, b.z1), select(mask, a.z2, b.z2))
    if isinstance(a, Cplx):
        if not isinstance(b, Cplx):
            b = Cplx(b * np.ones_like(a.re))
        return Cplx(np.where(mask, a.re, b.re), np.where(mask, a.im, b.im))
    return np.where(mask, a, b)


# -- elementary functions ----------------------------------------------------
#
# Level-1 formulas are the componentwise textbook identities; level-2 ones
# come from the addition theorems with i2 treated as the outer imaginary unit
# (cos(b*i2) = cosh(b), sin(b*i2) = i2*sinh(b)), so every function recurses
# through its level-1 counterpart.


def exp(x):
    if isinstance(x, BiCplx):
        ea = exp(x.z1)
        return BiCplx(ea * cos(x.z2), ea * sin(x.z2))
    if isinstance(x, Cplx):
        ex = np.exp(x.re)
        return Cplx(ex * np.cos(x.im), ex * np.sin(x.im))
    return np.exp(x)


def sin(x):
    if isinstance(x, BiCplx):
        return BiCplx(sin(x.z1) * cosh(x.z2), cos(x.z1) * sinh(x.z2))
    if isinstance(x, Cplx):
        return Cplx(np.sin(x.re) * np.cosh(x.im), np.cos(x.re) * np.sinh(x.im))
    return np.sin(x)


def cos(x):
    if isinstance(x, BiCplx):
        return BiCplx(cos(x.z1) * cosh(x.z2), -(sin(x.z1) * sinh(x.z2)))
    if isinstance(x, Cplx):
        return Cplx(np.cos(x.re) * np.cosh(x.im), -(np.sin(x.re) * np.sinh(x.im)))
    return np.cos(x)


def sinh(x):
    if isinstance(x, Cplx):
        return Cplx(np.sinh(x.re) * np.cos(x.im), np.cosh(x.re) * np.sin(x.im))
    return np.sinh(x)


def cosh(x):
    if isinstance(x, Cplx):
        return Cplx(np.cosh(x.re) * np.cos(x.im), np.sinh(x.re) * np.sin(x.im))
    return np.cosh(x)


def tan(x):
    if isinstance(x, Cplx):
        return sin(x) / cos(x)
    return np.tan(x)


def arctan(x):
    """Principal arctangent; used by the level-2 log.

    Small arguments take a short odd series so that tiny imaginary channels
    are never produced by cancellation of O(1) logarithms.
    """
    if not isinstance(x, Cplx):
        return np.arctan(x)
    small = np.maximum(np.abs(x.re), np.abs(x.im)) < 1e-3
    x2 = x * x
    series = x * (1.0 - x2 * (1.0 / 3.0) + x2 * x2 * (1.0 / 5.0))
    with np.errstate(all="ignore"):
        re = 0.5 * np.arctan2(2.0 * x.re, 1.0 - x.re * x.re - x.im * x.im)
        im = 0.25 * np.log(
            (x.re * x.re + (1.0 + x.im) ** 2) / (x.re * x.re + (1.0 - x.im) ** 2)
        )
    return Cplx(np.where(small, series.re, re), np.where(small, series.im, im))


def _half_log1p_sq(s: Cplx) -> Cplx:
    """0.5*log(1 + s**2), series below |s| ~ 1e-3 for the same reason as arctan."""
    small = np.maximum(np.abs(s.re), np.abs(s.im)) < 1e-3
    s2 = s * s
    series = s2 * (0.5 - s2 * 0.25 + s2 * s2 * (1.0 / 6.0))
    with np.errstate(all="ignore"):
        u = s2 + 1.0
        full = Cplx(0.5 * np.log(np.hypot(u.re, u.im)), 0.5 * np.arctan2(u.im, u.re))
    return Cplx(np.where(small, series.re, full.re), np.where(small, series.im, full.im))


def log(x):
    if np.any(leading_real(x) <= 0.0):
        raise DomainError("log requires a positive leading real part")
    if isinstance(x, BiCplx):
        s = x.z2 / x.z1
        return BiCplx(log(x.z1) + _half_log1p_sq(s), arctan(s))
    if isinstance(x, Cplx):
        return Cplx(np.log(np.hypot(x.re, x.im)), np.arctan2(x.im, x.re))
    return np.log(x)


def sqrt(x):
    if np.any(leading_real(x) <= 0.0):
        raise DomainError("sqrt requires a positive leading real part")
    if isinstance(x, BiCplx):
        return exp(log(x) * 0.5)
    if isinstance(x, Cplx):
        re = np.sqrt(0.5 * (x.re + np.hypot(x.re, x.im)))
        return Cplx(re, x.im / (2.0 * re))
    return np.sqrt(x)


def tanh(x):
    # tanh(a + b*u) = (tanh a + u*tan b) / (1 + u*tanh(a)*tan(b)) at both levels
    if isinstance(x, BiCplx):
        ta, tb = tanh(x.z1), tan(x.z2)
        return BiCplx(ta, tb) / BiCplx(Cplx(np.ones_like(x.z1.re)), ta * tb)
    if isinstance(x, Cplx):
        ta, tb = np.tanh(x.re), np.tan(x.im)
        return Cplx(ta, tb) / Cplx(np.ones_like(ta), ta * tb)
    return np.tanh(x)


def absolute(x):
    """x * sign(Re x), with sign(0) = +1."""
    sgn = np.where(leading_real(x) >= 0.0, 1.0, -1.0)
    return x * sgn


def sigmoid(x):
    # 1/(1+exp(-x)) rewritten per real-part sign so exp never overflows
    e = exp(-absolute(x))
    return select(leading_real(x) >= 0.0, 1.0 / (1.0 + e), e / (1.0 + e))


def relu(x):
    return select(leading_real(x) > 0.0, x, 0.0)


def elu(x):
    return select(leading_real(x) > 0.0, x, exp(x) - 1.0)


def maximum2(a, b):
    if isinstance(a, _REAL_TYPES) and isinstance(b, _REAL_TYPES):
        return np.where(np.greater_equal(a, b), a, b)
    a, b = _coerce_pair(a, b)
    return select(leading_real(a) >= leading_real(b), a, b)


def _coerce_pair(a, b):
    if isinstance(a, BiCplx) or isinstance(b, BiCplx):
        if not isinstance(a, BiCplx):
            a = BiCplx(a if isinstance(a, Cplx) else Cplx(a))
        if not isinstance(b, BiCplx):
            b = BiCplx(b if isinstance(b, Cplx) else Cplx(b))
        return a, b
    if not isinstance(a, Cplx):
        a = Cplx(a)
    if not isinstance(b, Cplx):
        b = Cplx(b)
    return a, b


def pow_int(x, n: int):
    """x**n for integer n by repeated squaring (valid for every scalar kind)."""
    if not isinstance(n, (int, np.integer)):
        raise TypeError("pow_int exponent must be an integer")
    if n < 0:
        return 1.0 / pow_int(x, -n)
    if isinstance(x, _REAL_TYPES):
        return np.power(x, n)
    if n == 0:
        one = np.ones_like(leading_real(x))
        return Cplx(one) if isinstance(x, Cplx) else BiCplx(Cplx(one))
    acc = None
    base = x
    while n:
        if n & 1:
            acc = base if acc is None else acc * base
        n >>= 1
        if n:
            base = base * base
    return acc
