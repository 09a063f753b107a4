"""Prime-field evaluation backend for probabilistic identity testing.

An identity of rational functions that holds exactly also holds after
substituting random nonzero residues modulo a large prime; a mismatch at
any point refutes the identity outright, while agreement at many points
is accepted with a Schwartz-Zippel failure bound.  Points at which some
denominator happens to vanish are useless and signalled by
``ResampleNeeded`` so the caller can draw a fresh point.

The imaginary unit is representable whenever p = 1 (mod 4); the default
prime is the smallest such prime above 2^61.
"""

from __future__ import annotations

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class ResampleNeeded(Exception):
    """The sample point is degenerate (a denominator vanished); pick another."""


def is_probable_prime(n):
    """Deterministic Miller-Rabin for n < 3.3 * 10^24."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n, mod4_is_1=False):
    """Smallest prime strictly above n, optionally congruent to 1 mod 4."""
    candidate = n + 1
    while True:
        if is_probable_prime(candidate) and (
            not mod4_is_1 or candidate % 4 == 1
        ):
            return candidate
        candidate += 1


DEFAULT_PRIME = next_prime(2 ** 61, mod4_is_1=True)


def sqrt_minus_one(p):
    """A residue i with i^2 = -1 mod p; requires p = 1 (mod 4)."""
    if p % 4 != 1:
        raise ValueError("p = %d is not 1 mod 4; no square root of -1" % p)
    for a in range(2, 1000):
        if pow(a, (p - 1) // 2, p) == p - 1:
            return pow(a, (p - 1) // 4, p)
    raise ValueError("no quadratic nonresidue found below 1000")  # pragma: no cover


class PrimeFieldPoint:
    """A prime modulus together with nonzero residues for each variable."""

    def __init__(self, p, assignment):
        self.p = p
        self.assignment = dict(assignment)
        for name, value in self.assignment.items():
            value %= p
            if value == 0:
                raise ValueError("residue for %r is zero mod %d" % (name, p))
            self.assignment[name] = value
        self.iota = sqrt_minus_one(p) if p % 4 == 1 else None

    @classmethod
    def sample(cls, p, names, rng):
        return cls(p, {name: rng.randrange(2, p - 1) for name in names})

    def __repr__(self):
        return "PrimeFieldPoint(p=%d, %r)" % (self.p, self.assignment)


class FpElement:
    """A residue with field operator syntax, tied to a ModField."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def is_zero(self):
        return self.v == 0

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.v == other.v and self.p == other.p
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __add__(self, other):
        return FpElement(self.v + self._val(other), self.p)

    __radd__ = __add__

    def __neg__(self):
        return FpElement(-self.v, self.p)

    def __sub__(self, other):
        return FpElement(self.v - self._val(other), self.p)

    def __rsub__(self, other):
        return FpElement(self._val(other) - self.v, self.p)

    def __mul__(self, other):
        return FpElement(self.v * self._val(other), self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        d = self._val(other)
        if d % self.p == 0:
            raise ResampleNeeded("division by a vanishing residue")
        return FpElement(self.v * pow(d, self.p - 2, self.p), self.p)

    def __rtruediv__(self, other):
        return FpElement(self._val(other), self.p) / self

    def __pow__(self, n):
        if n < 0:
            if self.v == 0:
                raise ResampleNeeded("inverting a vanishing residue")
            return FpElement(pow(pow(self.v, self.p - 2, self.p), -n, self.p), self.p)
        return FpElement(pow(self.v, n, self.p), self.p)

    def _val(self, other):
        if isinstance(other, FpElement):
            return other.v
        if isinstance(other, int):
            return other
        raise TypeError("cannot mix FpElement with %r" % type(other))

    def __repr__(self):
        return "FpElement(%d mod %d)" % (self.v, self.p)


def _rat_mod(r, p):
    den = r.denominator % p
    if den == 0:
        raise ResampleNeeded("coefficient denominator divisible by the prime")
    return r.numerator % p * pow(den, p - 2, p) % p


def _gauss_mod(c, pt):
    value = _rat_mod(c.re, pt.p)
    if c.im:
        if pt.iota is None:
            raise ValueError("imaginary coefficients need a prime = 1 mod 4")
        value = (value + _rat_mod(c.im, pt.p) * pt.iota) % pt.p
    return value


def eval_poly_mod(poly, pt):
    """Evaluate a LaurentPoly at a prime-field point; returns a residue."""
    p = pt.p
    gens = []
    for name in poly.vars:
        if name not in pt.assignment:
            raise KeyError("no residue assigned to variable %r" % name)
        gens.append(pt.assignment[name])
    total = 0
    for exps, c in poly.terms.items():
        term = _gauss_mod(c, pt)
        for base, e in zip(gens, exps):
            if e >= 0:
                term = term * pow(base, e, p) % p
            else:
                term = term * pow(pow(base, p - 2, p), -e, p) % p
        total = (total + term) % p
    return total


def specialize(f, pt):
    """Evaluate a RatFunc at a prime-field point.

    Raises ResampleNeeded when the denominator vanishes at the point.
    """
    den = eval_poly_mod(f.den, pt)
    if den == 0:
        raise ResampleNeeded("denominator vanishes at the sample point")
    num = eval_poly_mod(f.num, pt)
    return num * pow(den, pt.p - 2, pt.p) % pt.p


class ModField:
    """Prime-field scalar context mirroring the exact field's surface."""

    mode = "prob"

    def __init__(self, point):
        self.point = point
        self.p = point.p
        self.zero = FpElement(0, self.p)
        self.one = FpElement(1, self.p)
        self._qint = {}
        self.memo = {}
        s = point.assignment.get("s")
        if s is not None:
            s2 = s * s % self.p
            if s2 == pow(s2, self.p - 2, self.p):
                # s^4 = 1 makes qint(1)'s denominator vanish everywhere
                raise ResampleNeeded("s^4 = 1 at the sample point")

    def of_int(self, n):
        return FpElement(n, self.p)

    def gen_pow(self, name, k):
        base = self.point.assignment[name]
        if k < 0:
            base = pow(base, self.p - 2, self.p)
            k = -k
        return FpElement(pow(base, k, self.p), self.p)

    def s_pow(self, k):
        return self.gen_pow("s", k)

    def iota(self):
        if self.point.iota is None:
            raise ValueError("prime is not 1 mod 4; no imaginary unit")
        return FpElement(self.point.iota, self.p)

    def delta(self):
        return self.s_pow(2) - self.s_pow(-2)

    def qint(self, n):
        value = self._qint.get(n)
        if value is None:
            num = self.s_pow(2 * n) - self.s_pow(-2 * n)
            value = num / self.delta()
            self._qint[n] = value
        return value

    def qfact(self, n):
        out = self.one
        for k in range(2, n + 1):
            out = out * self.qint(k)
        return out

    def from_ratfunc(self, r):
        return FpElement(specialize(r, self.point), self.p)
