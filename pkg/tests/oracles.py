"""Independent brute-force reference implementations for tiny instances.

These follow the recursion definitions literally: full permutation
closures, no dominance pruning, no numpy, no shared code with the
engines beyond elementary tuple helpers.  They exist so that engine
results on small anchors are checked against something that cannot
share a bug with the optimized code paths.
"""

import itertools
from fractions import Fraction


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _below(x, bound):
    return all(a < b for a, b in zip(x, bound))


def naive_const(n, c, max_rounds=64):
    """Literal constant recursion: cumulative perm-closed stage."""
    bound = (c,) * n
    tails = [(0,) * k + (1,) * (n - k) for k in range(n)]
    stage = set()
    for _ in range(max_rounds):
        new = set()
        members = sorted(stage)
        for k in range(n):
            for combo in itertools.combinations_with_replacement(members, k):
                x = tails[k]
                for g in combo:
                    x = _add(x, g)
                if not _below(x, bound):
                    continue
                produced = x[:-1] + (0,)
                for sigma in itertools.permutations(range(n)):
                    y = tuple(produced[sigma[i]] for i in range(n))
                    if y not in stage:
                        new.add(y)
        if not new:
            return (0,) * n in stage
        stage |= new
    raise RuntimeError("no fixpoint within %d rounds" % max_rounds)


def naive_general(hbar, max_rounds=64):
    """Literal general recursion: one cumulative pool per index."""
    n = len(hbar)
    pools = [{tuple(1 if j == i else 0 for j in range(n))} for i in range(n)]
    for _ in range(max_rounds):
        changed = False
        sums = set()
        for choice in itertools.product(*[sorted(p) for p in pools]):
            s = choice[0]
            for g in choice[1:]:
                s = _add(s, g)
            if _below(s, hbar):
                sums.add(s)
        for s in sums:
            for i in range(n):
                p = s[:i] + (0,) + s[i + 1:]
                if p not in pools[i]:
                    pools[i].add(p)
                    changed = True
        if not changed:
            return any((0,) * n in p for p in pools)
    raise RuntimeError("no fixpoint within %d rounds" % max_rounds)


def brute_frontier(n, t, entry_cap):
    """Minimal ascending vectors with reciprocal sum below n/t, entries
    bounded by entry_cap.  Correct whenever the true frontier fits."""
    cap = Fraction(n) / Fraction(t)
    hits = []
    for v in itertools.combinations_with_replacement(
            range(1, entry_cap + 1), n):
        if sum(Fraction(1, a) for a in v) < cap:
            hits.append(v)
    minimal = []
    for v in hits:
        if not any(w != v and all(a <= b for a, b in zip(w, v))
                   for w in hits):
            minimal.append(v)
    return sorted(minimal)


def brute_weight(f, lam):
    """Largest entry times lam^0, next times lam^1, and so on."""
    return sum(v * lam ** j for j, v in enumerate(sorted(f, reverse=True)))
