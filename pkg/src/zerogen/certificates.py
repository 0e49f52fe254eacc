"""Certificates for 0-generacy verdicts, and their checkers.

Three certificate types, all JSON-serializable dicts:

const_witness      n, hbar (an int c), steps.  Each step carries a vector
                   fhat strictly below (c,...,c), a count k with k parts
                   drawn from earlier steps (up to permutation), and the
                   produced vector f.  The last step produces zero, so the
                   constant vector is 0-generating.

general_witness    n, hbar (a vector), rows.  Each row selects one vector
                   per index (a unit or an earlier production for that
                   index), forms their sum strictly below hbar, and lists
                   productions (the sum with one coordinate zeroed).  Some
                   row produces zero.

nongen_invariant   n, hbar, M.  For a constant bound, M is a family of
                   sorted vectors closed under permutations by convention;
                   for a vector bound, M is one family per index.  The
                   checker proves that every vector the recursion can
                   reach dominates a member of M (of an orbit member for
                   the constant case) while zero dominates none, so the
                   bound is not 0-generating.

The checkers are deliberately independent of the engines: plain python
over tuples, no shared state, no numpy.  A verdict plus a verified
certificate is trustworthy even if an engine has a bug.
"""

import json
from dataclasses import dataclass, field

from . import nvec
from .analysis import varphi_int
from .vecset import antichain_min, in_orbit_upset, in_upset, minkowski, orbit_closure


@dataclass
class VerifyResult:
    ok: bool
    error: str = None
    row: int = None
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


class _Malformed(Exception):
    pass


def _fail(error, row=None, **detail):
    return VerifyResult(ok=False, error=error, row=row, detail=detail)


def _vec(obj, n, what):
    if not isinstance(obj, (list, tuple)) or len(obj) != n:
        raise _Malformed("%s is not a vector of length %d" % (what, n))
    out = []
    for v in obj:
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise _Malformed("%s has a non-integer or negative entry" % what)
        out.append(v)
    return tuple(out)


def _int(obj, what, lo=0):
    if isinstance(obj, bool) or not isinstance(obj, int) or obj < lo:
        raise _Malformed("%s is not an integer >= %d" % (what, lo))
    return obj


# ---------------------------------------------------------------------------
# witnesses


def verify_const_witness(cert):
    try:
        return _verify_const_witness(cert)
    except _Malformed as exc:
        return _fail(str(exc))
    except (KeyError, TypeError, AttributeError) as exc:
        return _fail("malformed certificate: %r" % (exc,))


def _verify_const_witness(cert):
    n = _int(cert["n"], "n", lo=1)
    c = _int(cert["hbar"], "hbar")
    steps = cert["steps"]
    if not isinstance(steps, list) or not steps:
        return _fail("steps must be a nonempty list")
    bound = (c,) * n
    earlier = set()              # sorted forms of produced vectors
    sigmas = []
    for m, step in enumerate(steps):
        f = _vec(step["f"], n, "step %d f" % m)
        fhat = _vec(step["fhat"], n, "step %d fhat" % m)
        k = _int(step["k"], "step %d k" % m)
        if not k < n:
            return _fail("k out of range", row=m, k=k)
        parts = step["parts"]
        if not isinstance(parts, list) or len(parts) != k:
            return _fail("expected %d parts" % k, row=m, got=len(parts))
        if not nvec.strictly_below(fhat, bound):
            return _fail("fhat not strictly below the bound", row=m, fhat=fhat)
        total = nvec.tail_indicator(n, k)
        for j, part in enumerate(parts):
            g = _vec(part["vec"], n, "step %d part %d" % (m, j))
            if nvec.sorted_form(g) not in earlier:
                return _fail("part is not a permutation of an earlier "
                             "produced vector", row=m, part=g)
            total = nvec.vec_add(total, g)
        if total != fhat:
            return _fail("indicator plus parts do not sum to fhat", row=m,
                         expected=total, fhat=fhat)
        if nvec.sorted_form(f) != nvec.const_production_rep(fhat):
            return _fail("f is not a permutation of fhat with its last "
                         "coordinate zeroed", row=m, f=f, fhat=fhat)
        if n <= 5:
            sigmas.append(_exhibit_perm(nvec.zero_last(fhat), f))
        earlier.add(nvec.sorted_form(f))
    if steps and tuple(steps[-1]["f"]) != nvec.zero(n):
        return _fail("the last step does not produce the zero vector",
                     row=len(steps) - 1)
    detail = {"steps": len(steps)}
    if n <= 5:
        detail["sigmas"] = sigmas
    return VerifyResult(ok=True, detail=detail)


def _exhibit_perm(x, f):
    """A permutation s with (x o s)(i) = x(s(i)) = f(i)."""
    used = [False] * len(x)
    sigma = []
    for v in f:
        for j, w in enumerate(x):
            if not used[j] and w == v:
                used[j] = True
                sigma.append(j)
                break
    return tuple(sigma)


def verify_general_witness(cert):
    try:
        return _verify_general_witness(cert)
    except _Malformed as exc:
        return _fail(str(exc))
    except (KeyError, TypeError, AttributeError) as exc:
        return _fail("malformed certificate: %r" % (exc,))


def _verify_general_witness(cert):
    n = _int(cert["n"], "n", lo=1)
    hbar = _vec(cert["hbar"], n, "hbar")
    rows = cert["rows"]
    if not isinstance(rows, list) or not rows:
        return _fail("rows must be a nonempty list")
    produced = [set() for _ in range(n)]   # earlier productions per index
    zero_seen = False
    for m, row in enumerate(rows):
        if _int(row["m"], "row %d m" % m) != m:
            return _fail("row numbering is off", row=m, got=row["m"])
        selected = row["selected"]
        if not isinstance(selected, list) or len(selected) != n:
            return _fail("expected one selected vector per index", row=m)
        total = nvec.zero(n)
        for j, sel in enumerate(selected):
            g = _vec(sel, n, "row %d selected %d" % (m, j))
            if g != nvec.unit(n, j) and g not in produced[j]:
                return _fail("selected vector for index %d is neither the "
                             "unit nor an earlier production" % j, row=m,
                             selected=g)
            total = nvec.vec_add(total, g)
        s = _vec(row["sum"], n, "row %d sum" % m)
        if s != total:
            return _fail("selected vectors do not add up to the sum", row=m,
                         expected=total, got=s)
        if not nvec.strictly_below(s, hbar):
            return _fail("sum not strictly below the bound", row=m, sum=s)
        prods = row["productions"]
        if not isinstance(prods, list) or not prods:
            return _fail("row lists no productions", row=m)
        for p in prods:
            i = _int(p["i"], "row %d production index" % m)
            if not i < n:
                return _fail("production index out of range", row=m, i=i)
            vec = _vec(p["vec"], n, "row %d production" % m)
            if vec != s[:i] + (0,) + s[i + 1:]:
                return _fail("production is not the sum with coordinate "
                             "%d zeroed" % i, row=m, vec=vec, sum=s)
            produced[i].add(vec)
            if vec == nvec.zero(n):
                zero_seen = True
    if not zero_seen:
        return _fail("no row produces the zero vector")
    return VerifyResult(ok=True, detail={"rows": len(rows)})


# ---------------------------------------------------------------------------
# non-generating invariants


def verify_nongen_invariant(cert):
    try:
        if isinstance(cert["hbar"], int) and not isinstance(cert["hbar"], bool):
            return _verify_const_invariant(cert)
        return _verify_general_invariant(cert)
    except _Malformed as exc:
        return _fail(str(exc))
    except (KeyError, TypeError, AttributeError) as exc:
        return _fail("malformed certificate: %r" % (exc,))


def _verify_const_invariant(cert):
    """Check that M absorbs the constant recursion below (c,...,c).

    M is read with orbit semantics: a vector is covered when it dominates
    some permutation of some member, equivalently when its sorted form
    dominates a sorted member.  The check walks sum levels: T_k holds the
    minimal k-fold sums of covered vectors, and since productions are
    monotone it is enough that for every k and every minimal candidate
    (the indicator for k plus a member of T_k, strictly below the bound)
    the produced representative is covered again.  The recursion's first
    vector comes from no parts at all, so M is augmented with the
    production of the all-ones vector when it does not already cover it;
    the result reports whether that was needed.
    """
    n = _int(cert["n"], "n", lo=1)
    c = _int(cert["hbar"], "hbar")
    bound = (c,) * n
    ms = [_vec(v, n, "M member") for v in cert["M"]]
    for v in ms:
        if v == nvec.zero(n):
            return _fail("the invariant contains the zero vector")
    reps = []
    for v in ms:
        sv = nvec.sorted_form(v)
        if sv not in reps:
            reps.append(sv)
    augmented = False
    if c >= 2:
        base = nvec.const_production_rep((1,) * n)
        if base == nvec.zero(n):
            return _fail("the first production is already zero")
        if not in_orbit_upset(base, reps):
            reps.append(base)
            augmented = True
    orbit = antichain_min(orbit_closure(reps))
    level = [nvec.zero(n)]
    sizes = []
    for k in range(n):
        sizes.append(len(level))
        ind = nvec.tail_indicator(n, k)
        for s in level:
            x = nvec.vec_add(ind, s)
            if not nvec.strictly_below(x, bound):
                continue
            rep = nvec.const_production_rep(x)
            if not in_orbit_upset(rep, reps):
                return _fail("a reachable vector escapes the invariant",
                             row=k, escape=x, produced=rep)
        if k + 1 < n:
            nxt = [nvec.vec_add(s, o) for s in level for o in orbit]
            nxt = [v for v in nxt if nvec.strictly_below(v, bound)]
            level = antichain_min(nxt)
    return VerifyResult(ok=True, detail={"augmented": augmented,
                                         "levels": sizes})


def _verify_general_invariant(cert):
    """Check that per-index families absorb the general recursion."""
    n = _int(cert["n"], "n", lo=1)
    hbar = _vec(cert["hbar"], n, "hbar")
    fams = cert["M"]
    if not isinstance(fams, list) or len(fams) != n:
        return _fail("expected one family per index")
    mins = []
    for i, fam in enumerate(fams):
        vs = [_vec(v, n, "M[%d] member" % i) for v in fam]
        for v in vs:
            if v == nvec.zero(n):
                return _fail("family %d contains the zero vector" % i)
        if not in_upset(nvec.unit(n, i), vs):
            return _fail("family %d does not cover the unit vector" % i)
        mins.append(antichain_min(vs))
    level = [nvec.zero(n)]
    for i in range(n):
        level = [v for v in minkowski(level, mins[i])
                 if nvec.strictly_below(v, hbar)]
        level = antichain_min(level)
    for s in level:
        for i in range(n):
            p = s[:i] + (0,) + s[i + 1:]
            if not in_upset(p, mins[i]):
                return _fail("a reachable production escapes family %d" % i,
                             escape=s, produced=p)
    return VerifyResult(ok=True, detail={"minimal_sums": len(level)})


def verify_certificate(cert):
    """Dispatch on the certificate type."""
    t = cert.get("type") if isinstance(cert, dict) else None
    if t == "const_witness":
        return verify_const_witness(cert)
    if t == "general_witness":
        return verify_general_witness(cert)
    if t == "nongen_invariant":
        return verify_nongen_invariant(cert)
    return _fail("unknown certificate type %r" % (t,))


# ---------------------------------------------------------------------------
# io


_REQUIRED = {
    "const_witness": ("n", "hbar", "steps"),
    "general_witness": ("n", "hbar", "rows"),
    "nongen_invariant": ("n", "hbar", "M"),
}


def load_certificate(path):
    with open(path) as fh:
        cert = json.load(fh)
    if not isinstance(cert, dict):
        raise ValueError("%s: certificate must be a JSON object" % path)
    t = cert.get("type")
    if t not in _REQUIRED:
        raise ValueError("%s: unknown certificate type %r" % (path, t))
    missing = [k for k in _REQUIRED[t] if k not in cert]
    if missing:
        raise ValueError("%s: missing keys %s" % (path, ", ".join(missing)))
    return cert


def save_certificate(cert, path):
    with open(path, "w") as fh:
        json.dump(cert, fh, indent=1)
        fh.write("\n")


# ---------------------------------------------------------------------------
# an explicit witness family


def generate_phi_witness(n):
    """A witness that (c,...,c) is 0-generating for c = 1 + varphi(n+1).

    Step zero uses no parts.  Then for k = 1..n-1, n-k steps each take k
    copies of the vector produced immediately before, so the whole trace
    has 1 + n(n-1)/2 steps and ends in zero.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    c = 1 + varphi_int(n + 1)

    def produce(g):
        return (0,) + g[:-1]

    fhat = (1,) * n
    steps = [{"f": list(produce(fhat)), "fhat": list(fhat), "k": 0,
              "parts": []}]
    f = produce(fhat)
    for k in range(1, n):
        for _ in range(n - k):
            fhat = nvec.tail_indicator(n, k)
            for _ in range(k):
                fhat = nvec.vec_add(fhat, f)
            if not nvec.strictly_below(fhat, (c,) * n):
                raise AssertionError("construction left the box at n=%d" % n)
            steps.append({"f": list(produce(fhat)), "fhat": list(fhat),
                          "k": k, "parts": [{"vec": list(f)}] * k})
            f = produce(fhat)
    if f != nvec.zero(n):
        raise AssertionError("construction did not reach zero at n=%d" % n)
    return {"type": "const_witness", "n": n, "hbar": c, "steps": steps,
            "meta": {"source": "construction", "bound": c}}
