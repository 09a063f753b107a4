"""Exact scalar context shared by the coefficient formulas.

Every structure-constant formula in this package is written once against
a small scalar surface (powers of the generators, quantum integers, the
imaginary unit, integer embedding) and instantiated either exactly --
elements are RatFunc over chosen variables -- or over a prime field for
probabilistic checking (see modp.ModField, which mirrors this surface).
"""

from __future__ import annotations

from .laurent import LaurentPoly, qfact, qint
from .ratfunc import RatFunc
from .scalars import IOTA


class ExactField:
    mode = "exact"

    def __init__(self, vars=("s",)):
        self.vars = tuple(vars)
        self.zero = RatFunc.zero(self.vars)
        self.one = RatFunc.one(self.vars)
        self._qint = {}
        self._qfact = {}
        self.memo = {}  # structure-constant cache, keyed by formula tag

    def of_int(self, n):
        return RatFunc(LaurentPoly.const(n, self.vars))

    def of_gauss(self, c):
        return RatFunc(LaurentPoly.const(c, self.vars))

    def gen_pow(self, name, k):
        return RatFunc(LaurentPoly.gen(name, k, self.vars))

    def s_pow(self, k):
        return self.gen_pow("s", k)

    def iota(self):
        return self.of_gauss(IOTA)

    def delta(self):
        return self.s_pow(2) - self.s_pow(-2)

    def qint(self, n):
        value = self._qint.get(n)
        if value is None:
            value = RatFunc(qint(n).with_vars(self.vars))
            self._qint[n] = value
        return value

    def qfact(self, n):
        value = self._qfact.get(n)
        if value is None:
            value = RatFunc(qfact(n).with_vars(self.vars))
            self._qfact[n] = value
        return value

    def from_ratfunc(self, r):
        if r.num.vars == self.vars:
            return r
        if set(r.num.vars) <= set(self.vars):
            return RatFunc(r.num.with_vars(self.vars), r.den.with_vars(self.vars))
        raise ValueError(
            "cannot embed %r into variables %r" % (r.num.vars, self.vars)
        )


S_FIELD = ExactField(("s",))
