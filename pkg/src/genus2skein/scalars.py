"""Exact scalar arithmetic: rationals and Gaussian rationals.

Everything downstream (Laurent polynomials, rational functions, skein
coefficients) is built on exact rational arithmetic.  Two interchangeable
rational cores are supported and one is selected at import time:

* ``gmpy2.mpq`` -- a compiled extension, much faster on the hot paths;
* ``fractions.Fraction`` -- pure Python fallback.

Set the environment variable ``GENUS2SKEIN_PURE_PYTHON=1`` to force the
pure-Python core.  ``benchmarks/bench_scalars.py`` compares the two.

Gaussian rationals are pairs re + im*i with i^2 = -1 and exact rational
parts; denominators are kept positive and in lowest terms by the rational
core itself.  No floating point is ever involved in arithmetic.
"""

from __future__ import annotations

import os

if os.environ.get("GENUS2SKEIN_PURE_PYTHON"):
    from fractions import Fraction as Rat

    BACKEND = "fractions"
else:
    try:
        from gmpy2 import mpq as Rat

        BACKEND = "gmpy2"
    except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
        from fractions import Fraction as Rat

        BACKEND = "fractions"

RAT_ZERO = Rat(0)
RAT_ONE = Rat(1)


def rat_from_str(text):
    """Parse "a" or "a/b" into an exact rational."""
    text = text.strip()
    if "/" in text:
        a, b = text.split("/")
        return Rat(int(a), int(b))
    return Rat(int(text))


def rat_to_str(r):
    if r.denominator == 1:
        return str(r.numerator)
    return "%d/%d" % (r.numerator, r.denominator)


class GaussRat:
    """A Gaussian rational re + im*i, with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is type(RAT_ZERO) else Rat(re)
        self.im = im if type(im) is type(RAT_ZERO) else Rat(im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_zero(self):
        return not (self.re or self.im)

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int,)) or type(other) is type(RAT_ZERO):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __add__(self, other):
        if type(other) is not GaussRat:
            other = _coerce(other)
        return _gr(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return _gr(-self.re, -self.im)

    def __sub__(self, other):
        if type(other) is not GaussRat:
            other = _coerce(other)
        return _gr(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other).__sub__(self)

    def __mul__(self, other):
        if type(other) is not GaussRat:
            other = _coerce(other)
        if not self.im and not other.im:
            return _gr(self.re * other.re, RAT_ZERO)
        return _gr(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self):
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussRat(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def conjugate(self):
        return GaussRat(self.re, -self.im)

    def __float__(self):
        if self.im:
            raise ValueError("Gaussian rational with nonzero imaginary part")
        return int(self.re.numerator) / int(self.re.denominator)

    def __repr__(self):
        return "GaussRat(%s, %s)" % (rat_to_str(self.re), rat_to_str(self.im))

    def __str__(self):
        if not self.im:
            return rat_to_str(self.re)
        return "(%s)+(%s)i" % (rat_to_str(self.re), rat_to_str(self.im))


def _gr(re, im):
    """Fast constructor: both parts must already be backend rationals."""
    g = GaussRat.__new__(GaussRat)
    g.re = re
    g.im = im
    return g


def _coerce(x):
    if isinstance(x, GaussRat):
        return x
    return GaussRat(x)


GR_ZERO = GaussRat(0)
GR_ONE = GaussRat(1)
IOTA = GaussRat(0, 1)


def gauss_from_str(text):
    """Parse the text forms "a/b" and "(a/b)+(c/d)i"."""
    text = text.strip()
    if text.endswith("i"):
        body = text[:-1]
        # shape: (re)+(im)  or (re)-(im) with parenthesised parts
        if not (body.startswith("(") and body.endswith(")")):
            raise ValueError("malformed Gaussian rational %r" % text)
        depth = 0
        split = -1
        for pos, ch in enumerate(body):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif depth == 0 and ch in "+-":
                split = pos
                break
        if split < 0:
            raise ValueError("malformed Gaussian rational %r" % text)
        re_part = rat_from_str(body[1 : split - 1])
        sign = -1 if body[split] == "-" else 1
        im_part = rat_from_str(body[split + 2 : -1])
        return GaussRat(re_part, sign * im_part)
    return GaussRat(rat_from_str(text))
