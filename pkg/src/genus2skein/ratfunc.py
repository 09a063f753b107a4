"""Rational functions as lazy fractions of Laurent polynomials.

Fractions are *not* kept in lowest terms: equality is decided by
cross-multiplication (num1*den2 == num2*den1), which is all identity
checking needs and avoids multivariate gcd entirely.  Two cheap
normalisations are applied on construction so that denominators repeat
structurally (enabling the fast common-denominator paths):

* the denominator's exponent support is shifted so its minimum exponent
  in every variable is 0 (monomials are units in a Laurent ring);
* the denominator is made monic at its lexicographically largest term.

For univariate fractions a gcd reduction kicks in automatically once the
term counts pass a threshold; gcd over Q(i)[s] is an ordinary Euclidean
algorithm.  Multivariate fractions are never reduced.
"""

from __future__ import annotations

from .laurent import LaurentPoly
from .scalars import GR_ONE, GaussRat, rat_to_str

REDUCE_THRESHOLD = 48


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None, normalize=True):
        if den is None:
            den = LaurentPoly.const(1, num.vars)
        if num.vars != den.vars:
            raise ValueError("numerator/denominator variable mismatch")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if normalize and num.terms:
            num, den = _normalize(num, den)
            if (
                len(num.vars) == 1
                and len(num.terms) + len(den.terms) > REDUCE_THRESHOLD
            ):
                num, den = _reduce_univariate(num, den)
        elif normalize:
            den = LaurentPoly.const(1, den.vars)
        self.num = num
        self.den = den

    # -- constructors --------------------------------------------------

    @classmethod
    def from_int(cls, n, vars=("s",)):
        return cls(LaurentPoly.const(n, vars))

    @classmethod
    def zero(cls, vars=("s",)):
        return cls(LaurentPoly.zero(vars))

    @classmethod
    def one(cls, vars=("s",)):
        return cls(LaurentPoly.const(1, vars))

    # -- predicates ------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return self.num == self.den

    def __eq__(self, other):
        if isinstance(other, int):
            other = RatFunc.from_int(other, self.num.vars)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        raise TypeError("RatFunc is unhashable (lazy fraction)")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        if self.den.is_one():
            return RatFunc(self.num * other.den + other.num, other.den)
        if other.den.is_one():
            return RatFunc(self.num + other.num * self.den, self.den)
        if len(self.num.vars) == 1:
            # common-factor aware sum: denominators here are typically
            # products of overlapping quantum integers, so the lcm stays
            # small while the naive product blows up exponentially
            return _add_via_lcm(self, other)
        return RatFunc(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, normalize=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n):
        if n < 0:
            return RatFunc(self.den ** (-n), self.num ** (-n))
        return RatFunc(self.num ** n, self.den ** n)

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, LaurentPoly):
            return RatFunc(other)
        if isinstance(other, (int, GaussRat)):
            return RatFunc(LaurentPoly.const(other, self.num.vars))
        raise TypeError("cannot mix RatFunc with %r" % type(other))

    # -- reduction and display ---------------------------------------------

    def reduce(self):
        """Return an equal fraction in lowest terms (univariate only)."""
        if self.num.is_zero():
            return RatFunc.zero(self.num.vars)
        if len(self.num.vars) != 1:
            return self
        num, den = _reduce_univariate(self.num, self.den)
        return RatFunc(num, den)

    def as_poly(self):
        """The numerator, provided the denominator is trivial after reduction."""
        r = self.reduce()
        if not r.den.is_one():
            raise ValueError("not a Laurent polynomial: %s" % r.text())
        return r.num

    def eval_float(self, assignment):
        den = self.den.eval_float(assignment)
        if den == 0.0:
            raise ZeroDivisionError("denominator vanishes at the sample point")
        return self.num.eval_float(assignment) / den

    def text(self):
        r = self.reduce() if len(self.num.vars) == 1 else self
        if r.den.is_one():
            return r.num.text()
        return "(%s) / (%s)" % (r.num.text(), r.den.text())

    def __repr__(self):
        return "RatFunc(%s)" % self.text()

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data):
        return cls(
            LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"])
        )


def _normalize(num, den):
    # make the denominator's exponent support start at 0 in each variable
    dmin = den.min_exps()
    if any(dmin):
        shift = tuple(-e for e in dmin)
        den = den.shift(shift)
        num = num.shift(shift)
    # make the denominator monic at its lex-largest exponent
    _, lead = den.leading()
    if lead != GR_ONE:
        inv = lead.inverse()
        den = den.scale(inv)
        num = num.scale(inv)
    return num, den


def _as_dense(poly):
    """Univariate Laurent -> (offset, list of GaussRat) with offset = min exp."""
    lo = poly.min_exps()[0]
    hi = poly.max_exps()[0]
    coeffs = [poly.terms.get((e,), None) for e in range(lo, hi + 1)]
    return lo, [c if c is not None else GaussRat(0) for c in coeffs]


def _poly_mod(a, b):
    """Remainder of dense coefficient lists (descending degree loop).

    The remainder is rescaled to be monic, which is harmless inside a gcd
    chain and keeps the rational coefficients from exploding.
    """
    a = list(a)
    db = len(b) - 1
    lead_inv = b[-1].inverse()
    support = [(i, c) for i, c in enumerate(b[:-1]) if not c.is_zero()]
    while len(a) - 1 >= db:
        c = a.pop()
        if c.is_zero():
            continue
        f = c * lead_inv
        off = len(a) - db
        for i, bc in support:
            a[off + i] = a[off + i] - f * bc
    while a and a[-1].is_zero():
        a.pop()
    if a:
        lead = a[-1].inverse()
        a = [c * lead for c in a]
    return a


def _poly_gcd(a, b):
    while b:
        a, b = b, _poly_mod(a, b)
    return a


def _poly_divexact(a, b):
    """Exact quotient of dense lists; remainder is asserted to vanish."""
    q = [GaussRat(0)] * (len(a) - len(b) + 1)
    a = list(a)
    db = len(b) - 1
    lead_inv = b[-1].inverse()
    support = [(i, c) for i, c in enumerate(b) if not c.is_zero()]
    while len(a) - 1 >= db:
        c = a[-1]
        if not c.is_zero():
            f = c * lead_inv
            off = len(a) - 1 - db
            q[off] = f
            for i, bc in support:
                a[off + i] = a[off + i] - f * bc
        a.pop()
    assert all(c.is_zero() for c in a), "inexact polynomial division"
    return q


def _from_dense(offset, coeffs, vars):
    terms = {}
    for j, c in enumerate(coeffs):
        if not c.is_zero():
            terms[(offset + j,)] = c
    return LaurentPoly(vars, terms)


def _reduce_univariate(num, den):
    vars = num.vars
    nlo, ncoeffs = _as_dense(num)
    dlo, dcoeffs = _as_dense(den)
    g = _poly_gcd(list(ncoeffs), list(dcoeffs))
    if len(g) > 1:
        ncoeffs = _poly_divexact(ncoeffs, g)
        dcoeffs = _poly_divexact(dcoeffs, g)
    num = _from_dense(nlo, ncoeffs, vars)
    den = _from_dense(dlo, dcoeffs, vars)
    return _normalize(num, den)


def _divides(d, n):
    """If d | n (univariate), return n/d as a LaurentPoly, else None."""
    dlo, dd = _as_dense(d)
    nlo, nn = _as_dense(n)
    if len(nn) < len(dd):
        return None
    q = [GaussRat(0)] * (len(nn) - len(dd) + 1)
    rem = list(nn)
    db = len(dd) - 1
    lead_inv = dd[-1].inverse()
    support = [(i, c) for i, c in enumerate(dd) if not c.is_zero()]
    while len(rem) - 1 >= db:
        c = rem[-1]
        if not c.is_zero():
            f = c * lead_inv
            off = len(rem) - 1 - db
            q[off] = f
            for i, bc in support:
                rem[off + i] = rem[off + i] - f * bc
        rem.pop()
    if any(not c.is_zero() for c in rem):
        return None
    return _from_dense(nlo - dlo, q, n.vars)


def _add_via_lcm(a, b):
    vars = a.num.vars
    # accumulation pattern: one denominator usually divides the other
    q = _divides(a.den, b.den)
    if q is not None:
        return RatFunc(a.num * q + b.num, b.den)
    q = _divides(b.den, a.den)
    if q is not None:
        return RatFunc(a.num + b.num * q, a.den)
    _, da = _as_dense(a.den)
    dlo, db = _as_dense(b.den)
    g = _poly_gcd(list(da), list(db))
    if len(g) <= 1:
        return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den)
    cof_b = _from_dense(dlo, _poly_divexact(db, g), vars)  # b.den / g
    lcm = a.den * cof_b
    cof_a = _divides(b.den, lcm)  # lcm / b.den
    num = a.num * cof_b + b.num * cof_a
    return RatFunc(num, lcm)
