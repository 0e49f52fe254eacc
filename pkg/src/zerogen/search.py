"""Randomized witness search for constant bounds past the dense tier.

The dense engine needs the whole box and gives out around c^n = 2e9
cells.  This module searches for an annulating derivation directly: it
grows a pool of reachable produced vectors (kept as sorted
representatives, pruned to minimal elements under dominance, which is
sound because productions are monotone) and records how each one was
derived.  A move picks k earlier vectors, places each one into the n
columns by some permutation, adds the indicator of the last n - k
columns, checks every column stays below c, and zeroes the last column.

Move generation mixes deterministic sweeps (single parts and k equal
copies in sorted placement, which is what most steps of the known
derivations use) with randomized sorted combinations, greedy
mass-stacking placements, and random pair placements.  The derivation
terminates once the pool holds a vector supported on one coordinate
whose value is small enough that n - 1 copies fit below the bound.

Success returns a standard witness certificate (verified before it is
returned); exhausting the budget returns None.  Failure proves nothing:
the bound may still be 0-generating.
"""

import random
import time

from . import nvec
from .analysis import weight, weight_params
from .certificates import verify_certificate

_SEED_STEP = {"k": 0, "parts": []}


def _rep_of_columns(cols):
    return tuple(sorted(cols[:-1] + [0]))


class _Search:
    def __init__(self, n, c, rng, max_pool):
        self.n = n
        self.c = c
        self.rng = rng
        self.max_pool = max_pool
        try:
            params = weight_params(max(n, 4))
            self.lam = params.lam if not params.anomaly else 1.5
        except ValueError:
            self.lam = 1.5
        self.derivs = {}          # rep -> (k, ((part_rep, placement), ...), fhat)
        self.pool = []            # antichain of reps, the active generators
        seed_fhat = (1,) * n
        seed_rep = nvec.const_production_rep(seed_fhat)
        self.derivs[seed_rep] = (0, (), seed_fhat)
        self.pool.append(seed_rep)

    # -- pool updates -------------------------------------------------------

    def _insert(self, rep, deriv):
        if rep in self.derivs:
            return False
        if any(nvec.dominates(rep, m) for m in self.pool):
            return False
        self.derivs[rep] = deriv
        self.pool = [m for m in self.pool if not nvec.dominates(m, rep)]
        self.pool.append(rep)
        return True

    def _try_columns(self, k, placed):
        """Attempt one move; placed is a list of (part_rep, placement)."""
        n, c = self.n, self.c
        cols = [0] * k + [1] * (n - k)
        for _, placement in placed:
            for i in range(n):
                cols[i] += placement[i]
        if any(v >= c for v in cols):
            return None
        fhat = tuple(cols)
        rep = _rep_of_columns(cols)
        if self._insert(rep, (k, tuple(placed), fhat)):
            return rep
        return None

    def _sorted_move(self, k, parts):
        return self._try_columns(k, [(g, g) for g in parts])

    # -- move generators ----------------------------------------------------

    def _sweep(self):
        """All single-part and equal-copies moves in sorted placement."""
        found = []
        for g in list(self.pool):
            for k in range(1, self.n):
                rep = self._sorted_move(k, [g] * k)
                if rep:
                    found.append(rep)
        return found

    def _sample_sorted(self):
        if self.n < 3:
            return None
        k = self.rng.randint(2, self.n - 1)
        parts = [self._pick() for _ in range(k)]
        return self._sorted_move(k, parts)

    def _sample_stack(self):
        """Greedy placement: pile each value on the heaviest column it fits."""
        n, c = self.n, self.c
        k = self.rng.randint(1, self.n - 1)
        parts = [self._pick() for _ in range(k)]
        cols = [0] * k + [1] * (n - k)
        placed = []
        for g in parts:
            values = sorted((v for v in g if v), reverse=True)
            taken = set()
            placement = [0] * n
            order = sorted(range(n), key=lambda j: (-cols[j], j))
            ok = True
            for v in values:
                spot = None
                if n - 1 not in taken and cols[n - 1] + v < c:
                    spot = n - 1
                else:
                    for j in order:
                        if j not in taken and cols[j] + v < c:
                            spot = j
                            break
                if spot is None:
                    ok = False
                    break
                placement[spot] = v
                taken.add(spot)
                cols[spot] += v
            if not ok:
                return None
            placed.append((g, tuple(placement)))
        if any(v >= c for v in cols):
            return None
        fhat = tuple(cols)
        rep = _rep_of_columns(cols)
        if self._insert(rep, (k, tuple(placed), fhat)):
            return rep
        return None

    def _sample_pair(self):
        """Two parts under random placements."""
        n = self.n
        k = 2
        if n < 3:
            return None
        placed = []
        for g in (self._pick(), self._pick()):
            values = [v for v in g if v]
            if len(values) > n:
                return None
            spots = self.rng.sample(range(n), len(values))
            placement = [0] * n
            for v, j in zip(values, spots):
                placement[j] = v
            placed.append((g, tuple(placement)))
        return self._try_columns(k, placed)

    def _pick(self):
        """A pool element biased towards light, concentrated vectors."""
        pool = self.pool
        if len(pool) == 1:
            return pool[0]
        a = self.rng.choice(pool)
        b = self.rng.choice(pool)
        return min(a, b, key=lambda r: (weight(r, self.lam), sum(r)))

    # -- termination --------------------------------------------------------

    def _terminal(self):
        n, c = self.n, self.c
        zero = nvec.zero(n)
        if zero in self.derivs:
            return zero
        singles = [r[-1] for r in self.derivs
                   if sum(1 for v in r if v) == 1]
        if not singles:
            return None
        v = min(singles)
        if n > 1 and (n - 1) * v > c - 2:
            return None
        single = (0,) * (n - 1) + (v,)
        placed = tuple((single, single) for _ in range(n - 1))
        fhat = (0,) * (n - 1) + (1 + (n - 1) * v,)
        self.derivs[zero] = (n - 1, placed, fhat)
        return zero

    # -- certificate assembly ----------------------------------------------

    def _build_cert(self, meta):
        order = []
        seen = set()

        def visit(rep):
            if rep in seen:
                return
            seen.add(rep)
            k, placed, fhat = self.derivs[rep]
            for part_rep, _ in placed:
                visit(part_rep)
            order.append(rep)

        visit(nvec.zero(self.n))
        steps = []
        for rep in order:
            k, placed, fhat = self.derivs[rep]
            steps.append({"f": list(nvec.zero_last(fhat)),
                          "fhat": list(fhat),
                          "k": k,
                          "parts": [{"vec": list(p)} for _, p in placed]})
        return {"type": "const_witness", "n": self.n, "hbar": self.c,
                "steps": steps, "meta": meta}


def search_const_witness(n, c, *, seed=0, restarts=8, iters=400,
                         samples=300, max_pool=5000, max_seconds=None,
                         verbose=False):
    """Search for a witness that (c,...,c) with n entries is 0-generating.

    Returns a verified certificate dict, or None when every restart
    exhausts its budget.  None is not a verdict.
    """
    if n < 1 or c < 1:
        raise ValueError("need n >= 1 and c >= 1")
    if n == 1:
        if c < 2:
            return None
        cert = {"type": "const_witness", "n": 1, "hbar": c,
                "steps": [{"f": [0], "fhat": [1], "k": 0, "parts": []}],
                "meta": {"source": "search", "seed": seed, "restarts": 0}}
        assert verify_certificate(cert)
        return cert
    started = time.time()
    for attempt in range(restarts):
        rng = random.Random(seed * 1_000_003 + attempt)
        s = _Search(n, c, rng, max_pool)
        stale = 0
        for it in range(iters):
            if max_seconds is not None \
                    and time.time() - started > max_seconds:
                return None
            novel = len(s._sweep())
            for _ in range(samples):
                if s._sample_sorted():
                    novel += 1
                if s._sample_stack():
                    novel += 1
                if s._sample_pair():
                    novel += 1
            done = s._terminal()
            if done is not None:
                meta = {"source": "search", "seed": seed,
                        "attempt": attempt, "iterations": it + 1,
                        "pool": len(s.pool),
                        "produced": len(s.derivs)}
                cert = s._build_cert(meta)
                res = verify_certificate(cert)
                if not res:
                    raise AssertionError(
                        "search assembled an invalid certificate: %s"
                        % res.error)
                if verbose:
                    print("found witness for n=%d c=%d: %d steps "
                          "(attempt %d, iteration %d)"
                          % (n, c, len(cert["steps"]), attempt, it + 1))
                return cert
            stale = stale + 1 if not novel else 0
            if stale >= 3 or len(s.derivs) > max_pool:
                break
        if verbose:
            print("attempt %d stalled: pool %d, produced %d"
                  % (attempt, len(s.pool), len(s.derivs)))
    return None
