"""Operations on finite sets of integer vectors.

Everything here works on iterables of equal-length tuples and returns
sets or sorted lists.  These are the reference implementations used by
the certificate checkers and the test oracles; the decision engines use
the array kernels instead.
"""

import itertools

from .nvec import dominates, sorted_form, vec_add


def minkowski(A, B):
    """Pairwise sums {a + b : a in A, b in B}."""
    return {vec_add(a, b) for a in A for b in B}


def k_fold(A, k, n):
    """The k-fold sum A + ... + A; {0} when k == 0."""
    out = {(0,) * n}
    for _ in range(k):
        out = minkowski(out, A)
    return out


def orbit_closure(A):
    """Closure of A under coordinate permutations."""
    out = set()
    for a in A:
        out.update(itertools.permutations(a))
    return out


def antichain_min(A):
    """Minimal elements of A under coordinatewise dominance, sorted.

    Scans in order of increasing coordinate sum; a vector can only be
    dominated by one with strictly smaller sum (equal sums force
    equality), so a single pass suffices.
    """
    kept = []
    for x in sorted(set(A), key=lambda v: (sum(v), v)):
        if not any(dominates(x, m) for m in kept):
            kept.append(x)
    return sorted(kept)


def in_upset(x, mins):
    """True iff x dominates some element of mins."""
    return any(dominates(x, m) for m in mins)


def in_orbit_upset(x, sorted_mins):
    """True iff some permutation of x dominates some element of sorted_mins.

    Both sides are compared through their sorted forms: sorted(x) >= sorted(m)
    coordinatewise iff x >= m o sigma for some permutation sigma.
    """
    sx = sorted_form(x)
    return any(dominates(sx, m) for m in sorted_mins)
