"""Identity verification sweeps over the skein module bases.

The generic driver applies two operator expressions to every basis
element inside the safe region of a truncation and compares the images
coefficient by coefficient -- exactly, or at random prime-field points in
probabilistic mode.  A probabilistic failure refutes an identity
outright; agreement at all points is accepted and the report carries the
Schwartz-Zippel false-accept bound.  Suites built on the driver:

* tables          -- the loop actions against independently transcribed
                     structure-constant formulas, including all boundary
                     cases, plus eigenvalue-distinctness checks;
* relations       -- the once-punctured-torus relations (both embeddings,
                     both bases) and the four-punctured-sphere relations
                     including the Casimir identity, with the dependent
                     generator defined through its defining relation;
* dehn            -- the quadruple twisted-commutator word against the
                     direct B13 action;
* commutation     -- commutativity of disjoint curves and of the three
                     multiplication operators;
* triangularity   -- the monomial-to-theta change of basis (triangular,
                     unit diagonal), the Chebyshev identities, and the
                     cyclic-vector path property.
"""

from __future__ import annotations

import random
import time

from .fields import S_FIELD
from .modp import DEFAULT_PRIME, ModField, PrimeFieldPoint, ResampleNeeded
from .ops import (
    A2_NO_CONSTANT,
    AtomOp,
    ComposeOp,
    ScaleOp,
    SumOp,
    atom,
    b13_commutator_word,
    b13_dehn_twist_word,
    delta_ratfunc,
    qcomm,
)
from .ratfunc import RatFunc
from .reports import VerificationReport
from .skein import (
    SkeinVector,
    admissible_triples,
    chebyshev_apply,
    dumbbell_triples,
    is_admissible,
    is_dumbbell,
    monomial_to_theta,
    split_xyd,
)

_TRIPLES = {"n": admissible_triples, "m": dumbbell_triples}


class CheckContext:
    """Exact or probabilistic scalar contexts for a verification run."""

    def __init__(self, mode="exact", trials=10, seed=0, prime=None,
                 var_names=("s",), degree_hint=64):
        if mode not in ("exact", "prob"):
            raise ValueError("mode must be 'exact' or 'prob'")
        self.mode = mode
        self.trials = trials
        self.seed = seed
        self.prime = prime or DEFAULT_PRIME
        self.var_names = tuple(var_names)
        self.degree_hint = degree_hint

    def run(self, report, sweep):
        """Run sweep(field) -> (checked, failures); aggregate into report.

        In probabilistic mode each point's sweep is atomic: a degenerate
        point (ResampleNeeded) is discarded and a fresh one is drawn.
        """
        started = time.monotonic()
        report.mode = self.mode
        if self.mode == "exact":
            checked, failures = sweep(S_FIELD)
            report.checked += checked
            report.failures.extend(failures)
            return report.finish(started)
        rng = random.Random(self.seed)
        done = 0
        attempts = 0
        while done < self.trials:
            attempts += 1
            if attempts > 20 * self.trials + 50:
                raise RuntimeError("too many degenerate sample points")
            try:
                point = PrimeFieldPoint.sample(self.prime, self.var_names, rng)
                field = ModField(point)
                checked, failures = sweep(field)
            except ResampleNeeded:
                continue
            report.checked += checked
            report.failures.extend(failures)
            done += 1
        degree = self.degree_hint
        report.notes["prime"] = self.prime
        report.notes["points"] = self.trials
        report.notes["sz_false_accept_bound"] = "%.3e" % (
            (degree / (self.prime - 1.0)) ** self.trials
        )
        return report.finish(started)


def verify_identity(name, lhs, rhs, basis, trunc, ctx=None, keys=None):
    """Compare two operator expressions on every basis element in the
    safe region trunc - max(shift weights)."""
    ctx = ctx or CheckContext()
    weight = max(lhs.weight(basis), rhs.weight(basis))
    if keys is None:
        sweep_keys = _TRIPLES[basis](trunc - weight)
    else:
        sweep_keys = list(keys)
    report = VerificationReport(name=name)

    def sweep(field):
        checked = 0
        failures = []
        for key in sweep_keys:
            v = SkeinVector.unit(basis, key, field)
            left = lhs.apply(v, trunc, field)
            right = rhs.apply(v, trunc, field)
            checked += 1
            if left != right:
                for target in sorted(set(left.entries) | set(right.entries)):
                    lc = left.entries.get(target, field.zero)
                    rc = right.entries.get(target, field.zero)
                    if lc != rc:
                        failures.append(_coeff_failure(key, target, lc, rc))
        return checked, failures

    ctx.degree_hint = 64 * (trunc + 8)
    return ctx.run(report, sweep)


def _coeff_failure(key, target, lhs, rhs):
    from .reports import Failure

    return Failure(
        tuple(key) + tuple(target),
        lhs.text() if hasattr(lhs, "text") else str(lhs),
        rhs.text() if hasattr(rhs, "text") else str(rhs),
    )


def zero_op():
    return ScaleOp(RatFunc.from_int(0), AtomOp("Id"))


# ---------------------------------------------------------------------------
# presentation relations
# ---------------------------------------------------------------------------


def sigma11_generators(side):
    if side == "left":
        return atom("B12"), atom("A1")
    if side == "right":
        return atom("B23"), atom("A3")
    raise ValueError("side must be 'left' or 'right'")


def verify_sigma11(side, trunc, basis, ctx=None, y3_twist=1):
    """Check the once-punctured-torus relations for one embedded copy.

    The third generator is *defined* by y3 = [y1, y2]_s / (s^2 - s^{-2});
    the remaining two cyclic relations are then genuine checks.  Passing
    y3_twist != 1 deliberately mis-defines y3 (negative control).
    """
    y1, y2 = sigma11_generators(side)
    d = delta_ratfunc()
    y3 = ScaleOp(RatFunc.one() / d, qcomm(y1, y2, y3_twist))
    reports = []
    for rel_name, lhs, rhs in (
        ("[y2,y3]_s = (s^2-s^-2) y1", qcomm(y2, y3, 1), ScaleOp(d, y1)),
        ("[y3,y1]_s = (s^2-s^-2) y2", qcomm(y3, y1, 1), ScaleOp(d, y2)),
    ):
        name = "relations/sigma11-%s/%s/%s" % (side, basis, rel_name)
        reports.append(verify_identity(name, lhs, rhs, basis, trunc, ctx))
    return reports


def sigma04_generators(break_middle=False):
    x1 = atom(A2_NO_CONSTANT) if break_middle else atom("A2")
    x2 = atom("X")
    a1 = a4 = atom("A1")
    a2 = a3 = atom("A3")
    p1 = SumOp([ComposeOp([a1, a2]), ComposeOp([a3, a4])])
    p2 = SumOp([ComposeOp([a2, a3]), ComposeOp([a1, a4])])
    p3 = SumOp([ComposeOp([a1, a3]), ComposeOp([a2, a4])])
    return x1, x2, (a1, a2, a3, a4), (p1, p2, p3)


def verify_sigma04(trunc, ctx=None, break_middle=False):
    """Check the four-punctured-sphere relations on the dumbbell basis.

    x3 is defined through the first cyclic relation; the other two cyclic
    relations and the Casimir identity are genuine checks.  The boundary
    loops pair up as a1 = a4 (outer handle) and a2 = a3 (other handle).
    """
    x1, x2, a_ops, p_ops = sigma04_generators(break_middle)
    a1, a2, a3, a4 = a_ops
    p1, p2, p3 = p_ops
    d = delta_ratfunc()
    s4 = RatFunc(_spow(4)) - RatFunc(_spow(-4))
    x3 = ScaleOp(
        RatFunc.one() / s4,
        SumOp([qcomm(x1, x2, 2), ScaleOp(-d, p3)]),
    )
    tag = "broken/" if break_middle else ""
    reports = []
    for rel_name, lhs, rhs in (
        (
            "[x2,x3]_{s^2} = (s^4-s^-4) x1 + (s^2-s^-2) p1",
            qcomm(x2, x3, 2),
            SumOp([ScaleOp(s4, x1), ScaleOp(d, p1)]),
        ),
        (
            "[x3,x1]_{s^2} = (s^4-s^-4) x2 + (s^2-s^-2) p2",
            qcomm(x3, x1, 2),
            SumOp([ScaleOp(s4, x2), ScaleOp(d, p2)]),
        ),
        ("casimir", _sigma04_casimir_lhs(x1, x2, x3, p1, p2, p3),
         _sigma04_casimir_rhs(a1, a2, a3, a4)),
    ):
        name = "relations/sigma04/m/%s%s" % (tag, rel_name)
        reports.append(verify_identity(name, lhs, rhs, "m", trunc, ctx))
    return reports


def _spow(k):
    from .laurent import s_power

    return s_power(k)


def _sigma04_casimir_lhs(x1, x2, x3, p1, p2, p3):
    sp = lambda k: RatFunc(_spow(k))
    return SumOp(
        [
            ScaleOp(-sp(2), ComposeOp([x1, x2, x3])),
            ScaleOp(sp(4), ComposeOp([x1, x1])),
            ScaleOp(sp(-4), ComposeOp([x2, x2])),
            ScaleOp(sp(4), ComposeOp([x3, x3])),
            ScaleOp(sp(2), ComposeOp([p1, x1])),
            ScaleOp(sp(-2), ComposeOp([p2, x2])),
            ScaleOp(sp(2), ComposeOp([p3, x3])),
        ]
    )


def _sigma04_casimir_rhs(a1, a2, a3, a4):
    sp = lambda k: RatFunc(_spow(k))
    const = (sp(2) + sp(-2)) ** 2
    return SumOp(
        [
            ScaleOp(const, AtomOp("Id")),
            ScaleOp(RatFunc.from_int(-1), ComposeOp([a1, a2, a3, a4])),
            ScaleOp(RatFunc.from_int(-1), ComposeOp([a1, a1])),
            ScaleOp(RatFunc.from_int(-1), ComposeOp([a2, a2])),
            ScaleOp(RatFunc.from_int(-1), ComposeOp([a3, a3])),
            ScaleOp(RatFunc.from_int(-1), ComposeOp([a4, a4])),
        ]
    )


def suite_relations(trunc, ctx=None, surfaces=None, bases=("n", "m")):
    surfaces = surfaces or ("sigma11-left", "sigma11-right", "sigma04")
    reports = []
    for surface in surfaces:
        if surface.startswith("sigma11"):
            side = surface.split("-", 1)[1]
            for basis in bases:
                reports.extend(verify_sigma11(side, trunc, basis, ctx))
        elif surface == "sigma04":
            reports.extend(verify_sigma04(trunc, ctx))
        else:
            raise ValueError("unknown surface %r" % surface)
    return reports


# ---------------------------------------------------------------------------
# the B13 twisted-commutator word
# ---------------------------------------------------------------------------


def suite_dehn(trunc, ctx=None):
    word = b13_commutator_word()
    twisted = b13_dehn_twist_word()
    return [
        verify_identity(
            "dehn/commutator-word = B13", word, atom("B13"), "n", trunc, ctx
        ),
        verify_identity(
            "dehn/twist-composite = commutator-word", twisted, word, "n", trunc, ctx
        ),
    ]


# ---------------------------------------------------------------------------
# commutation of disjoint curves and multiplication operators
# ---------------------------------------------------------------------------

_COMMUTING_PAIRS = {
    "n": [
        ("B12", "B23"),
        ("B12", "B13"),
        ("B23", "B13"),
        ("A1", "A3"),
        ("A1", "B23"),
        ("A3", "B12"),
        ("A1", "A2"),
        ("A2", "A3"),
    ],
    "m": [
        ("A1", "A3"),
        ("A1", "B23"),
        ("A3", "B12"),
        ("A1", "A2"),
        ("A2", "A3"),
    ],
}


def suite_commutation(trunc, ctx=None):
    reports = []
    for basis, pairs in _COMMUTING_PAIRS.items():
        for a, b in pairs:
            name = "commutation/%s/[%s,%s] = 0" % (basis, a, b)
            reports.append(
                verify_identity(
                    name, qcomm(atom(a), atom(b), 0), zero_op(), basis, trunc, ctx
                )
            )
    return reports


# ---------------------------------------------------------------------------
# loop-action tables re-derived from the displayed formulas
# ---------------------------------------------------------------------------


def _expected_theta(loop, key, field):
    i, j, k = key
    eig = lambda e: -(field.s_pow(2 * e + 2) + field.s_pow(-2 * e - 2))
    if loop == "A1":
        return {key: eig(i)}
    if loop == "A2":
        return {key: eig(j)}
    if loop == "A3":
        return {key: eig(k)}
    # hop coefficients in the displayed orientation (p, q, r) = permuted triple
    if loop == "B12":
        p, q, r = i, j, k
        target = lambda a, b: (i + a, j + b, k)
    elif loop == "B13":
        p, q, r = i, k, j
        target = lambda a, b: (i + a, j, k + b)
    elif loop == "B23":
        p, q, r = j, k, i
        target = lambda a, b: (i, j + a, k + b)
    else:
        raise ValueError(loop)
    out = {}

    def put(t, c):
        if not is_admissible(*t):
            assert c.is_zero(), "nonzero hop coefficient at %r" % (t,)
            return
        if not c.is_zero():
            out[t] = c

    put(target(1, 1), field.one)
    if q > 0:
        c = -(field.qint((q + r - p) // 2) ** 2) / (
            field.qint(q) * field.qint(q + 1)
        )
        put(target(1, -1), c)
    if p > 0:
        c = -(field.qint((p + r - q) // 2) ** 2) / (
            field.qint(p) * field.qint(p + 1)
        )
        put(target(-1, 1), c)
    if p > 0 and q > 0:
        c = (
            field.qint((p + q + r + 2) // 2) ** 2
            * field.qint((p + q - r) // 2) ** 2
        ) / (
            field.qint(p)
            * field.qint(p + 1)
            * field.qint(q)
            * field.qint(q + 1)
        )
        put(target(-1, -1), c)
    return out


def _expected_dumbbell(loop, key, field):
    i, j, k = key
    eig = lambda e: -(field.s_pow(2 * e + 2) + field.s_pow(-2 * e - 2))
    if loop == "A1":
        return {key: eig(i)}
    if loop == "X":
        return {key: eig(j)}
    if loop == "A3":
        return {key: eig(k)}
    h = j // 2
    out = {}

    def put(t, c):
        if not is_dumbbell(*t):
            assert c.is_zero(), "nonzero coefficient at invalid key %r" % (t,)
            return
        if not c.is_zero():
            out[t] = c

    if loop in ("B12", "B23"):
        idx = i if loop == "B12" else k
        up = (i + 1, j, k) if loop == "B12" else (i, j, k + 1)
        down = (i - 1, j, k) if loop == "B12" else (i, j, k - 1)
        put(up, field.one)
        if idx > h:
            c = (field.qint(idx + h + 1) * field.qint(idx - h)) / (
                field.qint(idx) * field.qint(idx + 1)
            )
            put(down, c)
        return out
    if loop != "A2":
        raise ValueError(loop)
    delta2 = field.delta() ** 2
    if j == 0:
        put((i, 2, k), -(delta2 * field.qint(i) * field.qint(k)))
        diag = -(field.s_pow(2 * (i + k + 1)) + field.s_pow(-2 * (i + k + 1)))
        diag = diag + delta2 * field.qint(i) * field.qint(k) / field.qint(2)
        put((i, 0, k), diag)
        return out
    down_c = -(
        delta2
        * field.qint(h) ** 4
        * field.qint(i + h + 1)
        * field.qint(k + h + 1)
    ) / (field.qint(j - 1) * field.qint(j) ** 2 * field.qint(j + 1))
    put((i, j - 2, k), down_c)
    put((i, j + 2, k), -(delta2 * field.qint(i - h) * field.qint(k - h)))
    constant = delta2 * (
        field.qint(h + 1) ** 2
        * field.qint(i - h)
        * field.qint(k - h)
        / (field.qint(j + 1) * field.qint(j + 2))
        + field.qint(h) ** 2
        * field.qint(i + h + 1)
        * field.qint(k + h + 1)
        / (field.qint(j) * field.qint(j + 1))
    )
    diag = -(field.s_pow(2 * (i + k + 1)) + field.s_pow(-2 * (i + k + 1)))
    put((i, j, k), diag + constant)
    return out


def suite_tables(bound, ctx=None):
    """Re-derive every loop action inside the bound and compare entries."""
    from .skein import act_dumbbell, act_theta

    ctx = ctx or CheckContext()
    reports = []
    jobs = [("n", loop, _expected_theta, act_theta)
            for loop in ("A1", "A2", "A3", "B12", "B13", "B23")]
    jobs += [("m", loop, _expected_dumbbell, act_dumbbell)
             for loop in ("A1", "A3", "X", "B12", "B23", "A2")]
    for basis, loop, expected_fn, act_fn in jobs:
        report = VerificationReport(name="tables/%s/%s" % (basis, loop))
        keys = _TRIPLES[basis](bound - 2)

        def sweep(field, keys=keys, loop=loop, basis=basis,
                  expected_fn=expected_fn, act_fn=act_fn):
            checked = 0
            failures = []
            for key in keys:
                got = act_fn(loop, SkeinVector.unit(basis, key, field), bound, field)
                want = expected_fn(loop, key, field)
                checked += 1
                if set(got.entries) != set(want) or any(
                    got.entries[t] != want[t] for t in want
                ):
                    for t in sorted(set(got.entries) | set(want)):
                        gc = got.entries.get(t, field.zero)
                        wc = want.get(t, field.zero)
                        if gc != wc:
                            failures.append(_coeff_failure(key, t, gc, wc))
            return checked, failures

        ctx.degree_hint = 64 * (bound + 8)
        reports.append(ctx.run(report, sweep))
    if ctx.mode == "exact":
        reports.append(_eigenvalue_distinctness(bound))
    return reports


def _eigenvalue_distinctness(bound):
    started = time.monotonic()
    report = VerificationReport(name="tables/eigenvalue-distinctness")
    field = S_FIELD
    eigs = [
        -(field.s_pow(2 * e + 2) + field.s_pow(-2 * e - 2))
        for e in range(bound + 1)
    ]
    for a in range(len(eigs)):
        for b in range(a + 1, len(eigs)):
            report.checked += 1
            if eigs[a] == eigs[b]:
                report.record((a, b), eigs[a], eigs[b])
    return report.finish(started)


# ---------------------------------------------------------------------------
# structural checks: triangular change of basis, Chebyshev identities,
# and the cyclic-vector path property
# ---------------------------------------------------------------------------


def suite_triangularity(maxdeg=6, chebmax=8, pathmax=4):
    started = time.monotonic()
    reports = []
    field = S_FIELD

    tri = VerificationReport(name="structural/monomial-to-theta triangular")
    trunc = 2 * maxdeg + 2
    for a in range(maxdeg + 1):
        for b in range(maxdeg + 1 - a):
            for c in range(maxdeg + 1 - a - b):
                lead = (a + c, a + b, b + c)
                vec = monomial_to_theta(a, b, c, trunc, field)
                tri.checked += 1
                diag = vec.entries.get(lead)
                if diag is None or not diag.is_one():
                    tri.record((a, b, c) + lead, diag or field.zero, field.one)
                for key in vec.entries:
                    if key > lead:
                        tri.record((a, b, c) + key, vec.entries[key], field.zero)
    reports.append(tri.finish(started))

    started = time.monotonic()
    cheb = VerificationReport(name="structural/chebyshev words")
    for n in range(chebmax + 1):
        for gen, key in (
            ("B12", (n, n, 0)),
            ("B23", (0, n, n)),
            ("B13", (n, 0, n)),
        ):
            vec = chebyshev_apply(n, gen, 2 * chebmax + 2, field)
            cheb.checked += 1
            if list(vec.entries) != [key] or not vec.entries[key].is_one():
                cheb.record((n,) + key, repr(vec), "unit vector")
    reports.append(cheb.finish(started))

    started = time.monotonic()
    path = VerificationReport(name="structural/cyclic-vector path")
    path.notes["method"] = (
        "nonvanishing witnessed at a prime-field point (definitive), "
        "exact recomputation on a zero witness"
    )
    rng = random.Random(7)
    for x in range(pathmax + 1):
        for y in range(pathmax + 1):
            for d in range(pathmax + 1):
                key = (x + d, y + d, x + y)
                assert split_xyd(*key) == (x, y, d)
                path.checked += 1
                if not _path_hits_origin(key, (x, y, d), rng):
                    path.record(key, "0", "nonzero")
    reports.append(path.finish(started))
    return reports


def _path_word_apply(key, xyd, field):
    from .skein import act_theta

    x, y, d = xyd
    trunc = 4 * (x + y + d) + 4
    vec = SkeinVector.unit("n", key, field)
    for _ in range(d):
        vec = act_theta("B12", vec, trunc, field)
    for _ in range(x):
        vec = act_theta("B13", vec, trunc, field)
    for _ in range(y):
        vec = act_theta("B23", vec, trunc, field)
    return vec.entries.get((0, 0, 0), field.zero)

def _path_hits_origin(key, xyd, rng):
    """A nonzero residue at a random point proves the exact coefficient
    is nonzero; a zero residue falls back to the exact computation."""
    for _ in range(6):
        try:
            point = PrimeFieldPoint.sample(DEFAULT_PRIME, ("s",), rng)
            value = _path_word_apply(key, xyd, ModField(point))
        except ResampleNeeded:
            continue
        if not value.is_zero():
            return True
    return not _path_word_apply(key, xyd, S_FIELD).is_zero()
