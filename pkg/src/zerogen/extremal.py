"""Extremal sequences for 0-generacy.

s_inf(n) is the largest c such that the constant vector (c,...,c) is not
0-generating.  The scan walks c upward running the constant engine; it
starts at 1 + floor of the real threshold (proven to be a lower bound),
so only a handful of decisions are needed, and each verdict at the
boundary comes with its certificate.

The harmonic-mean threshold s_{-1}(n) is bounded from below by exhibiting
a vector that is not 0-generating (the bound is its harmonic mean) and
from above by a covering net: once every minimal vector whose harmonic
mean exceeds t dominates some 0-generating net element, monotonicity
forces every vector with harmonic mean above t to be 0-generating, hence
s_{-1}(n) <= t.  minimal_frontier enumerates those minimal vectors
exactly, with rational arithmetic.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import reference
from .analysis import phi_floor, varphi_int
from .engine import (HARD_CELL_LIMIT, Budget, BudgetExceeded, TierRefused,
                     _allow_long_env, decide, decide_const)
from .nvec import dominates, harmonic_mean, sorted_form
from .vecset import antichain_min


def one_plus_floor_phi(n):
    """1 + floor(phi_real(n)); a proven lower bound for s_inf(n)."""
    return 1 + phi_floor(n)


@dataclass
class SInfResult:
    n: int
    value: int
    lower_cert: dict          # invariant at c = value
    upper_cert: dict          # witness at c = value + 1
    scanned: list = field(default_factory=list)


def s_inf(n, *, budget=None, prune=True, kernels=None, allow_long=False,
          scan_from_one=False):
    """The largest c with (c,...,c) not 0-generating, with certificates.

    The scan normally starts at the proven lower bound 1 + floor(phi(n));
    scan_from_one starts at c = 1 instead (slower, used to cross-check
    the shortcut).  n >= 6 sits in the long tier.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if n >= 6 and not (allow_long or _allow_long_env()):
        raise TierRefused(
            "s_inf(%d) is a long-tier computation; pass allow_long=True "
            "(CLI: --allow-long or ZEROGEN_ALLOW_LONG=1)" % n)
    c = 1 if scan_from_one else max(1, one_plus_floor_phi(n))
    start = c
    budget = budget or Budget()
    prev = None
    scanned = []
    while True:
        if c ** n > HARD_CELL_LIMIT:
            raise TierRefused(
                "the scan reached c=%d where the box of %d cells does not "
                "fit in memory; for this size use witness search instead "
                "of the dense engine" % (c, c ** n))
        try:
            d = decide_const(n, c, prune=prune, kernels=kernels, budget=budget)
        except BudgetExceeded as exc:
            exc.bracket = (prev.vector[0] if prev else None, None)
            raise
        scanned.append((c, d.verdict))
        if d.generating:
            if prev is None:
                raise RuntimeError(
                    "(%d,)*%d is 0-generating although c=%d should be below "
                    "the proven lower bound; this indicates an engine bug"
                    % (c, n, start))
            return SInfResult(n=n, value=c - 1, lower_cert=prev.certificate,
                              upper_cert=d.certificate, scanned=scanned)
        prev = d
        c += 1


# ---------------------------------------------------------------------------
# the minimal frontier of a harmonic-mean level


class FrontierCapError(RuntimeError):
    pass


@dataclass
class FrontierSet:
    n: int
    t: Fraction
    vectors: tuple          # ascending tuples, an antichain
    leaves: int             # leaves emitted before reduction


def minimal_frontier(n, t, *, coord_cap=10 ** 6, card_cap=10 ** 5):
    """Minimal ascending vectors with sum of reciprocals below n/t.

    Every vector whose harmonic mean exceeds t dominates (after sorting)
    exactly the vectors enumerated here.  The search walks coordinates
    left to right: each coordinate starts at the smallest value that
    leaves the reciprocal budget positive, recurses while the all-equal
    completion still overshoots the budget, and emits that completion the
    moment it fits (larger values there would dominate it).  Minimality
    across branches is restored by one antichain pass at the end.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    t = Fraction(t)
    if t <= 0:
        raise ValueError("need t > 0")
    cap = Fraction(n, 1) / t
    out = []

    def walk(prefix, used):
        j = len(prefix)
        rem = n - j
        avail = cap - used
        x = prefix[-1] if prefix else 1
        lo = int(1 / avail) + 1
        if lo > x:
            x = lo
        while True:
            if x > coord_cap:
                raise FrontierCapError(
                    "coordinate exceeded %d at prefix %r; the level t=%s "
                    "is too close to the dimension" % (coord_cap, prefix, t))
            if used + Fraction(rem, x) < cap:
                out.append(prefix + (x,) * rem)
                if len(out) > card_cap:
                    raise FrontierCapError(
                        "more than %d frontier candidates; the level is "
                        "too fine to enumerate" % card_cap)
                return
            walk(prefix + (x,), used + Fraction(1, x))
            x += 1

    walk((), Fraction(0))
    vecs = tuple(sorted(antichain_min(out)))
    return FrontierSet(n=n, t=t, vectors=vecs, leaves=len(out))


@dataclass
class NetReport:
    n: int
    t: Fraction
    ok: bool
    frontier: tuple
    uncovered: tuple          # frontier elements above no net element
    not_generating: tuple     # net elements that failed to generate
    decisions: dict


def verify_net(n, t, net, *, budget=None, prune=True, kernels=None,
               allow_long=False):
    """Check that a net proves s_{-1}(n) <= t.

    Two obligations: every minimal frontier vector at level t dominates
    some net element, and every net element is 0-generating.  Domination
    is taken on sorted vectors, which is equivalent to domination of some
    permutation.
    """
    fr = minimal_frontier(n, t)
    net_sorted = [sorted_form(e) for e in net]
    uncovered = tuple(f for f in fr.vectors
                      if not any(dominates(f, e) for e in net_sorted))
    failures = []
    decisions = {}
    for e in net_sorted:
        d = decide(e, prune=prune, budget=budget, kernels=kernels,
                   allow_long=allow_long)
        decisions[e] = d
        if not d.generating:
            failures.append(e)
    ok = not uncovered and not failures
    return NetReport(n=n, t=Fraction(t), ok=ok, frontier=fr.vectors,
                     uncovered=uncovered, not_generating=tuple(failures),
                     decisions=decisions)


def suggest_net(n, t, *, budget=None, kernels=None, allow_long=False):
    """Shrink frontier vectors while they stay 0-generating (best effort).

    The result covers the frontier by construction; every element is
    checked 0-generating.  It is not guaranteed minimal in any sense.
    """
    fr = minimal_frontier(n, t)
    net = []
    for f in fr.vectors:
        v = list(f)
        if not decide(tuple(v), budget=budget, kernels=kernels,
                      allow_long=allow_long).generating:
            raise ValueError("frontier element %r is not 0-generating; "
                             "no net exists at level t=%s" % (f, t))
        improved = True
        while improved:
            improved = False
            for i in range(n):
                if v[i] <= 2:
                    continue
                cand = sorted_form(tuple(v[:i] + [v[i] - 1] + v[i + 1:]))
                if decide(cand, budget=budget, kernels=kernels,
                          allow_long=allow_long).generating:
                    v = list(cand)
                    improved = True
        w = sorted_form(tuple(v))
        if w not in net:
            net.append(w)
    return tuple(sorted(antichain_min(net)))


# ---------------------------------------------------------------------------
# harmonic-mean bounds


def s1_lower_bound(x, *, budget=None, prune=True, kernels=None,
                   allow_long=False):
    """The harmonic mean of x as a lower bound for s_{-1}(len(x)).

    Valid only when x is not 0-generating, which is decided here; the
    decision is returned alongside the bound.
    """
    d = decide(tuple(x), prune=prune, budget=budget, kernels=kernels,
               allow_long=allow_long)
    if d.generating:
        raise ValueError("%r is 0-generating and yields no lower bound"
                         % (tuple(x),))
    return harmonic_mean(x), d


def defect_bound(n, s1):
    """1 - n/s as an exact fraction; increasing in the bound s."""
    s1 = Fraction(s1)
    if s1 <= 0:
        raise ValueError("need a positive bound")
    return 1 - Fraction(n) / s1


# ---------------------------------------------------------------------------
# recomputed summary tables


def table1(nmax=9, *, s_inf_max=0, budget=None, kernels=None,
           allow_long=False):
    """Rows n=1..nmax of the threshold summary table.

    varphi, 1 + floor(phi) and varphi(n+1) are computed outright, the
    factorial column holds true factorials, and s_inf is scanned with the
    engine for n <= s_inf_max (None beyond).
    """
    rows = []
    for n in range(1, nmax + 1):
        s = None
        if n <= s_inf_max:
            s = s_inf(n, budget=budget, kernels=kernels,
                      allow_long=allow_long).value
        rows.append({"n": n,
                     "varphi": varphi_int(n),
                     "one_plus_floor_phi": one_plus_floor_phi(n),
                     "s_inf": s,
                     "varphi_next": varphi_int(n + 1),
                     "factorial": math.factorial(n)})
    return rows


def table2(nmax=8):
    """Rows n=1..nmax of the harmonic-threshold table with exact defects.

    The bound column composes the sharpest shipped knowledge: exact
    values for n <= 4, the harmonic mean of the recorded boundary vector
    for n = 5, the recorded constant-threshold value where one exists
    (n = 6), and the proven floor bound beyond.  Each row says which.
    """
    ref1 = {r["n"]: r for r in reference.table1_reference()}
    rows = []
    for n in range(1, nmax + 1):
        if n <= 4:
            rel, q, basis = "=", Fraction([1, 2, 3, 5][n - 1]), "exact"
        elif n == 5:
            ex = reference.boundary_examples()["not_generating"][0]
            rel, q, basis = ">=", harmonic_mean(ex), "boundary-vector"
        else:
            q = Fraction(one_plus_floor_phi(n))
            basis = "floor-bound"
            r1 = ref1.get(n)
            if r1:
                srel, sval = r1["s_minus_inf"]
                if srel == "=" and sval is not None and sval > q:
                    q, basis = sval, "recorded-s-inf"
            rel = ">="
        rows.append({"n": n, "rel": rel, "s_minus_1": q,
                     "defect": defect_bound(n, q), "basis": basis})
    return rows
