"""Sparse multivariate Laurent polynomials over the Gaussian rationals.

A polynomial carries an ordered tuple of variable names and a sparse map
from integer exponent vectors (tuples, possibly negative entries) to
nonzero GaussRat coefficients.  Instances are treated as immutable: all
operations return fresh polynomials and never mutate stored dicts.

Quantum integers live here:  qint(n) = (s^{2n} - s^{-2n}) / (s^2 - s^{-2})
is always an honest Laurent polynomial in s, and the quantum factorial is
the product qint(1) * ... * qint(n).  Note qint(0) = 0 while qfact(0) = 1;
the factorial product starts at 1, which is the only convention making the
closed-form evaluation and structure-constant formulas nonzero.
"""

from __future__ import annotations

from .scalars import GR_ONE, GR_ZERO, GaussRat, gauss_from_str, rat_to_str


class LaurentPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms):
        self.vars = tuple(vars)
        self.terms = terms  # exponent tuple -> nonzero GaussRat

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, vars=("s",)):
        return cls(vars, {})

    @classmethod
    def const(cls, value, vars=("s",)):
        if not isinstance(value, GaussRat):
            value = GaussRat(value)
        if value.is_zero():
            return cls(vars, {})
        return cls(vars, {(0,) * len(vars): value})

    @classmethod
    def monomial(cls, vars, exps, coeff=GR_ONE):
        if not isinstance(coeff, GaussRat):
            coeff = GaussRat(coeff)
        if coeff.is_zero():
            return cls(vars, {})
        return cls(vars, {tuple(exps): coeff})

    @classmethod
    def gen(cls, name, power=1, vars=("s",)):
        idx = vars.index(name)
        exps = [0] * len(vars)
        exps[idx] = power
        return cls.monomial(vars, exps)

    # -- predicates ---------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_one(self):
        if len(self.terms) != 1:
            return False
        ((exps, c),) = self.terms.items()
        return all(e == 0 for e in exps) and c == GR_ONE

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- arithmetic ---------------------------------------------------

    def _check(self, other):
        if self.vars != other.vars:
            raise ValueError(
                "variable mismatch: %r vs %r" % (self.vars, other.vars)
            )

    def __add__(self, other):
        self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            acc = terms.get(exps)
            if acc is None:
                terms[exps] = c
            else:
                acc = acc + c
                if acc.is_zero():
                    del terms[exps]
                else:
                    terms[exps] = acc
        return LaurentPoly(self.vars, terms)

    def __neg__(self):
        return LaurentPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GaussRat):
            return self.scale(other)
        self._check(other)
        if not self.terms or not other.terms:
            return LaurentPoly(self.vars, {})
        if len(self.terms) > len(other.terms):
            big, small = self.terms, other.terms
        else:
            big, small = other.terms, self.terms
        terms = {}
        for e1, c1 in small.items():
            for e2, c2 in big.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                acc = terms.get(exps)
                if acc is None:
                    terms[exps] = c
                else:
                    acc = acc + c
                    if acc.is_zero():
                        del terms[exps]
                    else:
                        terms[exps] = acc
        return LaurentPoly(self.vars, terms)

    def scale(self, coeff):
        if not isinstance(coeff, GaussRat):
            coeff = GaussRat(coeff)
        if coeff.is_zero() or not self.terms:
            return LaurentPoly(self.vars, {})
        return LaurentPoly(
            self.vars, {e: c * coeff for e, c in self.terms.items()}
        )

    def shift(self, exps):
        """Multiply by the monomial with the given exponent vector."""
        if not self.terms:
            return self
        exps = tuple(exps)
        return LaurentPoly(
            self.vars,
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()},
        )

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = LaurentPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- structure ----------------------------------------------------

    def min_exps(self):
        return tuple(min(e[i] for e in self.terms) for i in range(len(self.vars)))

    def max_exps(self):
        return tuple(max(e[i] for e in self.terms) for i in range(len(self.vars)))

    def leading(self):
        """(exponents, coefficient) at the lexicographically largest exponent."""
        exps = max(self.terms)
        return exps, self.terms[exps]

    def collapse_var(self, src, dst):
        """Substitute src := dst (both must be variables); src is removed."""
        si = self.vars.index(src)
        di = self.vars.index(dst)
        new_vars = tuple(v for v in self.vars if v != src)
        terms = {}
        for exps, c in self.terms.items():
            merged = list(exps)
            merged[di] += merged[si]
            del merged[si]
            key = tuple(merged)
            acc = terms.get(key)
            if acc is None:
                terms[key] = c
            else:
                acc = acc + c
                if acc.is_zero():
                    del terms[key]
                else:
                    terms[key] = acc
        return LaurentPoly(new_vars, terms)

    def with_vars(self, new_vars):
        """Reindex into a larger variable tuple (old vars must all appear)."""
        new_vars = tuple(new_vars)
        if new_vars == self.vars:
            return self
        positions = [new_vars.index(v) for v in self.vars]
        width = len(new_vars)
        terms = {}
        for exps, c in self.terms.items():
            key = [0] * width
            for pos, e in zip(positions, exps):
                key[pos] = e
            terms[tuple(key)] = c
        return LaurentPoly(new_vars, terms)

    def eval_float(self, assignment):
        """Evaluate at float values (real coefficients only)."""
        total = 0.0
        vals = [assignment[v] for v in self.vars]
        for exps, c in self.terms.items():
            m = float(c)
            for v, e in zip(vals, exps):
                m *= v ** e
            total += m
        return total

    # -- display ------------------------------------------------------

    def __repr__(self):
        return "LaurentPoly(%r, %s)" % (self.vars, self.text())

    def text(self):
        """Signed terms c*v^k sorted by descending exponent."""
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, reverse=True):
            c = self.terms[exps]
            mono = "*".join(
                v if e == 1 else "%s^%d" % (v, e)
                for v, e in zip(self.vars, exps)
                if e != 0
            )
            if not mono:
                body = str(c)
            elif c == GR_ONE:
                body = mono
            elif c == GaussRat(-1):
                body = "-" + mono
            else:
                body = "%s*%s" % (str(c), mono)
            if parts and not body.startswith("-"):
                parts.append("+ " + body)
            elif parts:
                parts.append("- " + body[1:])
            else:
                parts.append(body)
        return " ".join(parts)

    def to_json(self):
        return {
            "vars": list(self.vars),
            "terms": [
                {
                    "exp": list(exps),
                    "re": rat_to_str(c.re),
                    "im": rat_to_str(c.im),
                }
                for exps in sorted(self.terms, reverse=True)
                for c in (self.terms[exps],)
            ],
        }

    @classmethod
    def from_json(cls, data):
        vars = tuple(data["vars"])
        terms = {}
        for item in data["terms"]:
            c = gauss_from_str("(%s)+(%s)i" % (item["re"], item["im"]))
            if not c.is_zero():
                terms[tuple(item["exp"])] = c
        return cls(vars, terms)

    # -- univariate helpers (used by gcd reduction and division) -------

    def degree_span(self):
        """Number of lattice points between min and max exponents (1 var)."""
        if not self.terms:
            return 0
        return self.max_exps()[0] - self.min_exps()[0] + 1


S_VARS = ("s",)
S = LaurentPoly.gen("s")
ONE = LaurentPoly.const(1)

_qint_cache = {}
_qfact_cache = {0: ONE, 1: ONE}


def s_power(k):
    return LaurentPoly.monomial(S_VARS, (k,))


def qint(n):
    """The quantum integer as a Laurent polynomial in s.

    qint(n) = s^{2n-2} + s^{2n-6} + ... + s^{2-2n}; antisymmetric in n,
    and qint(0) = 0.
    """
    poly = _qint_cache.get(n)
    if poly is not None:
        return poly
    if n == 0:
        poly = LaurentPoly.zero(S_VARS)
    elif n < 0:
        poly = -qint(-n)
    else:
        poly = LaurentPoly(
            S_VARS, {(2 * n - 2 - 4 * j,): GR_ONE for j in range(n)}
        )
    _qint_cache[n] = poly
    return poly


def qfact(n):
    """Quantum factorial qint(1) * qint(2) * ... * qint(n); qfact(0) = 1."""
    if n < 0:
        raise ValueError("quantum factorial of a negative integer")
    poly = _qfact_cache.get(n)
    if poly is not None:
        return poly
    top = max(_qfact_cache)
    poly = _qfact_cache[top]
    for k in range(top + 1, n + 1):
        poly = poly * qint(k)
        _qfact_cache[k] = poly
    return poly


def delta_poly():
    """s^2 - s^{-2}, the ubiquitous twist denominator."""
    return LaurentPoly(S_VARS, {(2,): GR_ONE, (-2,): GaussRat(-1)})
