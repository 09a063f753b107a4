"""Bases of the genus-2 handlebody skein module and the six loop actions.

Two trivalent-graph bases are used, both indexed by integer triples:

* theta basis ``n(i,j,k)``: triples with nonnegative entries, even sum and
  the triangle inequality |i-j| <= k <= i+j ("admissible" triples);
* dumbbell basis ``m(i,j,k)``: j even, i >= j/2, k >= j/2 (equivalently
  (i,i,j) and (k,k,j) admissible).

The surface loops A1, A2, A3, B12, B13, B23 (and the separating curve X)
act linearly on these bases with closed-form structure constants built
from quantum integers.  A structure constant whose denominator vanishes
identically (a quantum integer with index 0) is defined to be zero; this
convention is decided here by inspecting indices, never by evaluating at
a numeric point, and targets that fall outside a basis are only dropped
after asserting their coefficient is identically zero.

The module is infinite-dimensional, so every operator application takes a
truncation bound N on i+j+k together with the operator's shift weight w:
the application is exact on vectors supported in i+j+k <= N - w, and a
vector outside that safe region raises TruncationError instead of being
silently clamped.
"""

from __future__ import annotations

from .fields import S_FIELD
from .laurent import qfact
from .ratfunc import RatFunc
from .scalars import GaussRat

THETA_LOOPS = ("A1", "A2", "A3", "B12", "B13", "B23")
DUMBBELL_LOOPS = ("A1", "A2", "A3", "X", "B12", "B23")

SHIFT_WEIGHTS = {
    "n": {"A1": 0, "A2": 0, "A3": 0, "B12": 2, "B13": 2, "B23": 2},
    "m": {"A1": 0, "A2": 2, "A3": 0, "X": 0, "B12": 2, "B23": 2},
    "psi": {"A1": 0, "A2": 0, "A3": 0, "B12": 2, "B13": 2, "B23": 2},
}


class TruncationError(Exception):
    """An operator was applied outside its exact (safe) region."""


def is_admissible(i, j, k):
    """Theta-basis validity: nonnegative, even sum, triangle inequality."""
    return (
        i >= 0
        and j >= 0
        and k >= 0
        and (i + j + k) % 2 == 0
        and abs(i - j) <= k <= i + j
    )


def is_dumbbell(i, j, k):
    """Dumbbell-basis validity: (i,i,j) and (k,k,j) both admissible."""
    return j >= 0 and j % 2 == 0 and i >= j // 2 and k >= j // 2


def admissible_triples(bound):
    """All admissible triples with i+j+k <= bound, sorted."""
    out = []
    for i in range(bound + 1):
        for j in range(bound + 1 - i):
            for k in range(bound + 1 - i - j):
                if is_admissible(i, j, k):
                    out.append((i, j, k))
    out.sort()
    return out

def dumbbell_triples(bound):
    """All dumbbell triples with i+j+k <= bound, sorted."""
    out = []
    for j in range(0, bound + 1, 2):
        for i in range(j // 2, bound + 1):
            for k in range(j // 2, bound + 1 - i - j):
                if i + j + k <= bound:
                    out.append((i, j, k))
    out.sort()
    return out


def split_xyd(i, j, k):
    """Write an admissible triple as (x+d, y+d, x+y) and return (x, y, d)."""
    d = (i + j - k) // 2
    x = i - d
    y = j - d
    if d < 0 or x < 0 or y < 0 or (x + d, y + d, x + y) != (i, j, k):
        raise ValueError("triple %r is not admissible" % ((i, j, k),))
    return x, y, d


_VALIDATORS = {"n": is_admissible, "m": is_dumbbell, "psi": is_admissible}


class SkeinVector:
    """Basis-tagged sparse vector: triple -> scalar, no stored zeros."""

    __slots__ = ("basis", "entries")

    def __init__(self, basis, entries=None):
        if basis not in _VALIDATORS:
            raise ValueError("unknown basis tag %r" % basis)
        self.basis = basis
        self.entries = {}
        if entries:
            for key, value in entries.items():
                self.add_term(key, value)

    @classmethod
    def unit(cls, basis, key, field=S_FIELD):
        v = cls(basis)
        v.add_term(tuple(key), field.one)
        return v

    def add_term(self, key, value):
        key = tuple(key)
        if not _VALIDATORS[self.basis](*key):
            raise ValueError("key %r is not valid in basis %r" % (key, self.basis))
        if value.is_zero():
            return
        acc = self.entries.get(key)
        if acc is None:
            self.entries[key] = value
        else:
            acc = acc + value
            if acc.is_zero():
                del self.entries[key]
            else:
                self.entries[key] = acc

    def scale(self, c):
        out = SkeinVector(self.basis)
        if c.is_zero():
            return out
        for key, value in self.entries.items():
            out.entries[key] = value * c
        return out

    def __add__(self, other):
        if self.basis != other.basis:
            raise ValueError("basis mismatch")
        out = SkeinVector(self.basis)
        out.entries = dict(self.entries)
        for key, value in other.entries.items():
            out.add_term(key, value)
        return out

    def __sub__(self, other):
        if self.basis != other.basis:
            raise ValueError("basis mismatch")
        out = SkeinVector(self.basis)
        out.entries = dict(self.entries)
        for key, value in other.entries.items():
            out.add_term(key, -value)
        return out

    def __eq__(self, other):
        if not isinstance(other, SkeinVector):
            return NotImplemented
        if self.basis != other.basis:
            return False
        if set(self.entries) != set(other.entries):
            return False
        return all(self.entries[k] == other.entries[k] for k in self.entries)

    def is_zero(self):
        return not self.entries

    def support_bound(self):
        return max((sum(k) for k in self.entries), default=0)

    def coeff(self, key, field=S_FIELD):
        return self.entries.get(tuple(key), field.zero)

    def __repr__(self):
        if not self.entries:
            return "SkeinVector(%r, 0)" % self.basis
        parts = [
            "%r: %s" % (key, value.text() if hasattr(value, "text") else value)
            for key, value in sorted(self.entries.items())
        ]
        return "SkeinVector(%r, {%s})" % (self.basis, ", ".join(parts))

    def to_json(self):
        return {
            "basis": self.basis,
            "entries": [
                {"key": list(key), "coeff": self.entries[key].to_json()}
                for key in sorted(self.entries)
            ],
        }

    @classmethod
    def from_json(cls, data):
        v = cls(data["basis"])
        for item in data["entries"]:
            v.add_term(tuple(item["key"]), RatFunc.from_json(item["coeff"]))
        return v


# ---------------------------------------------------------------------------
# structure constants
# ---------------------------------------------------------------------------


def _cached(field, key, builder):
    value = field.memo.get(key)
    if value is None:
        value = builder()
        if hasattr(value, "reduce"):
            value = value.reduce()
        field.memo[key] = value
    return value


def d_coeff(a, b, i, j, k, field=S_FIELD):
    """Theta-basis hop coefficient for the shift (i+a, j+b, k).

    Zero whenever its denominator contains the vanishing quantum integer
    qint(0), i.e. for a = -1 with i = 0 or b = -1 with j = 0.
    """
    return _cached(
        field, ("D", a, b, i, j, k), lambda: _d_coeff_raw(a, b, i, j, k, field)
    )


def _d_coeff_raw(a, b, i, j, k, field):
    if a == 1 and b == 1:
        return field.one
    if a == 1 and b == -1:
        if j == 0:
            return field.zero
        num = field.qint((j + k - i) // 2)
        return -(num * num) / (field.qint(j) * field.qint(j + 1))
    if a == -1 and b == 1:
        if i == 0:
            return field.zero
        num = field.qint((i + k - j) // 2)
        return -(num * num) / (field.qint(i) * field.qint(i + 1))
    if a == -1 and b == -1:
        if i == 0 or j == 0:
            return field.zero
        n1 = field.qint((i + j + k + 2) // 2)
        n2 = field.qint((i + j - k) // 2)
        den = (
            field.qint(i)
            * field.qint(i + 1)
            * field.qint(j)
            * field.qint(j + 1)
        )
        return (n1 * n1 * n2 * n2) / den
    raise ValueError("hop signs must be +-1, got (%r, %r)" % (a, b))


def _a_eigenvalue(index, field):
    return _cached(
        field,
        ("eig", index),
        lambda: -(field.s_pow(2 * index + 2) + field.s_pow(-2 * index - 2)),
    )


def _dumbbell_down(idx, j, field):
    """Down-hop coefficient for B12/B23 on the dumbbell basis.

    For a loop index idx and band label j this is
    qint(idx + j/2 + 1) * qint(idx - j/2) / (qint(idx) * qint(idx + 1)),
    and it vanishes exactly at the boundary idx = j/2.
    """
    if idx == j // 2:
        return field.zero
    return _cached(
        field,
        ("beta", idx, j),
        lambda: (field.qint(idx + j // 2 + 1) * field.qint(idx - j // 2))
        / (field.qint(idx) * field.qint(idx + 1)),
    )


def a2_dumbbell_coeffs(i, j, k, field=S_FIELD, drop_constant=False):
    """Structure constants of the middle loop on m(i, j, k).

    Returns (down, diag, up) multiplying m(i,j-2,k), m(i,j,k), m(i,j+2,k).
    Any coefficient whose denominator carries qint(j) is zero when j = 0.
    ``drop_constant`` omits the diagonal correction term (a deliberately
    broken variant used as a negative control by the relation checks).
    """
    key = ("A2", i, j, k, drop_constant)
    cached = field.memo.get(key)
    if cached is None:
        cached = _a2_coeffs_raw(i, j, k, field, drop_constant)
        if hasattr(cached[0], "reduce"):
            cached = tuple(c.reduce() for c in cached)
        field.memo[key] = cached
    return cached


def _a2_coeffs_raw(i, j, k, field, drop_constant):
    delta2 = field.delta() * field.delta()
    h = j // 2
    if j == 0:
        down = field.zero
    else:
        num = field.qint(h) ** 4 * field.qint(i + h + 1) * field.qint(k + h + 1)
        den = (
            field.qint(j - 1)
            * field.qint(j) ** 2
            * field.qint(j + 1)
        )
        down = -(delta2 * num / den)
    up = -(delta2 * field.qint(i - h) * field.qint(k - h))
    diag = -(field.s_pow(2 * (i + k + 1)) + field.s_pow(-2 * (i + k + 1)))
    if not drop_constant:
        kterm = (
            delta2
            * field.qint(h + 1) ** 2
            * field.qint(i - h)
            * field.qint(k - h)
            / (field.qint(j + 1) * field.qint(j + 2))
        )
        if j != 0:
            kterm = kterm + delta2 * field.qint(h) ** 2 * field.qint(
                i + h + 1
            ) * field.qint(k + h + 1) / (field.qint(j) * field.qint(j + 1))
        diag = diag + kterm
    return down, diag, up


# ---------------------------------------------------------------------------
# loop actions
# ---------------------------------------------------------------------------


def _check_safe(vec, trunc, weight):
    if trunc < 0:
        raise TruncationError("negative truncation bound")
    if vec.entries and vec.support_bound() > trunc - weight:
        raise TruncationError(
            "support %d exceeds safe region %d for shift weight %d"
            % (vec.support_bound(), trunc - weight, weight)
        )


def act_theta(loop, vec, trunc, field=S_FIELD):
    """Apply a surface loop to a theta-basis vector, exactly."""
    if vec.basis != "n":
        raise ValueError("act_theta needs a theta-basis vector")
    if loop not in THETA_LOOPS:
        raise ValueError("loop %r has no theta-basis action" % loop)
    _check_safe(vec, trunc, SHIFT_WEIGHTS["n"][loop])
    out = SkeinVector("n")
    if loop in ("A1", "A2", "A3"):
        pos = ("A1", "A2", "A3").index(loop)
        for key, c in vec.entries.items():
            out.add_term(key, c * _a_eigenvalue(key[pos], field))
        return out
    for (i, j, k), c in vec.entries.items():
        for a in (1, -1):
            for b in (1, -1):
                if loop == "B12":
                    coeff = d_coeff(a, b, i, j, k, field)
                    target = (i + a, j + b, k)
                elif loop == "B13":
                    coeff = d_coeff(a, b, i, k, j, field)
                    target = (i + a, j, k + b)
                else:  # B23
                    coeff = d_coeff(a, b, j, k, i, field)
                    target = (i, j + a, k + b)
                if not is_admissible(*target):
                    assert coeff.is_zero(), (
                        "nonzero coefficient %r at non-admissible %r"
                        % (coeff, target)
                    )
                    continue
                out.add_term(target, c * coeff)
    return out


def act_dumbbell(loop, vec, trunc, field=S_FIELD, drop_a2_constant=False):
    """Apply a loop to a dumbbell-basis vector, exactly."""
    if vec.basis != "m":
        raise ValueError("act_dumbbell needs a dumbbell-basis vector")
    if loop not in DUMBBELL_LOOPS:
        raise ValueError("loop %r has no dumbbell-basis action" % loop)
    _check_safe(vec, trunc, SHIFT_WEIGHTS["m"][loop])
    out = SkeinVector("m")
    if loop in ("A1", "A3", "X"):
        pos = {"A1": 0, "X": 1, "A3": 2}[loop]
        for key, c in vec.entries.items():
            out.add_term(key, c * _a_eigenvalue(key[pos], field))
        return out
    if loop in ("B12", "B23"):
        for (i, j, k), c in vec.entries.items():
            if loop == "B12":
                out.add_term((i + 1, j, k), c)
                down = _dumbbell_down(i, j, field)
                if not down.is_zero():
                    out.add_term((i - 1, j, k), c * down)
            else:
                out.add_term((i, j, k + 1), c)
                down = _dumbbell_down(k, j, field)
                if not down.is_zero():
                    out.add_term((i, j, k - 1), c * down)
        return out
    # the middle loop
    for (i, j, k), c in vec.entries.items():
        down, diag, up = a2_dumbbell_coeffs(
            i, j, k, field, drop_constant=drop_a2_constant
        )
        for coeff, target in (
            (down, (i, j - 2, k)),
            (diag, (i, j, k)),
            (up, (i, j + 2, k)),
        ):
            if not is_dumbbell(*target):
                assert coeff.is_zero(), (
                    "nonzero coefficient %r at invalid dumbbell key %r"
                    % (coeff, target)
                )
                continue
            out.add_term(target, c * coeff)
    return out


def act(loop, vec, trunc, field=S_FIELD):
    if vec.basis == "n":
        return act_theta(loop, vec, trunc, field)
    if vec.basis == "m":
        return act_dumbbell(loop, vec, trunc, field)
    raise ValueError("no loop action for basis %r here" % vec.basis)


# ---------------------------------------------------------------------------
# evaluation into the ground ring (standard embedding in the 3-sphere)
# ---------------------------------------------------------------------------


def eval_triple(triple):
    """Value of a theta-basis element under the embedding evaluation map."""
    a, b, c = triple
    if not is_admissible(a, b, c):
        raise ValueError("triple %r is not admissible" % (triple,))
    i = (b + c - a) // 2
    j = (a + c - b) // 2
    k = (a + b - c) // 2
    num = qfact(i + j + k + 1) * qfact(i) * qfact(j) * qfact(k)
    den = qfact(i + j) * qfact(j + k) * qfact(i + k)
    sign = -1 if (i + j + k) % 2 else 1
    return RatFunc(num.scale(GaussRat(sign)), den)


def eval_vector(vec):
    """Linear extension of the evaluation map over a theta-basis vector."""
    if vec.basis != "n":
        raise ValueError("the evaluation map is defined on the theta basis")
    total = RatFunc.zero()
    for key, c in vec.entries.items():
        total = total + c * eval_triple(key)
    return total


# ---------------------------------------------------------------------------
# monomial and Chebyshev bridges
# ---------------------------------------------------------------------------


def empty_link(field=S_FIELD):
    return SkeinVector.unit("n", (0, 0, 0), field)


def monomial_to_theta(a, b, c, trunc, field=S_FIELD):
    """Expand B12^a * B23^b * B13^c in the theta basis."""
    if 2 * (a + b + c) > trunc:
        raise TruncationError("monomial degree exceeds the truncation bound")
    v = empty_link(field)
    for _ in range(c):
        v = act_theta("B13", v, trunc, field)
    for _ in range(b):
        v = act_theta("B23", v, trunc, field)
    for _ in range(a):
        v = act_theta("B12", v, trunc, field)
    return v


def chebyshev_apply(n, gen, trunc, field=S_FIELD):
    """S_n(gen) applied to the empty link, via S_{n+1} = x S_n - S_{n-1}."""
    if gen not in ("B12", "B23", "B13"):
        raise ValueError("Chebyshev words are taken in B12, B23 or B13")
    if 2 * n > trunc:
        raise TruncationError("Chebyshev degree exceeds the truncation bound")
    prev = None
    cur = empty_link(field)
    for _ in range(n):
        nxt = act_theta(gen, cur, trunc, field)
        if prev is not None:
            nxt = nxt - prev
        prev, cur = cur, nxt
    return cur
