"""Fixpoint engines deciding whether a vector is 0-generating.

Two recursions are implemented.

The general recursion keeps one pool of vectors per index i, seeded with
the unit vector 1_i.  Each round it forms all sums picking one pool
element per index, keeps the sums strictly below the bound vector, and
for every index i adds the sum with coordinate i zeroed to pool i.  The
bound is 0-generating iff the zero vector eventually lands in some pool.

The constant recursion (for bounds with all entries equal to c) grows a
single permutation-closed stage.  A round forms, for every k < n, the
sums of k stage members shifted by the indicator vector that is zero on
the first k coordinates and one elsewhere; sums strictly below the bound
produce the sorted form of the sum with its last coordinate zeroed.  The
bound is 0-generating iff the zero vector is produced.

Both engines work on flat boolean arrays over the box of cells strictly
below the bound (see _kernels).  The constant engine exploits
permutation closure: stage members are stored as sorted representatives,
k-fold sums are extended by folding representatives only and then
symmetrizing in bulk, and productions are read off with a single sorted
projection per round.  In "antichain" mode a new representative is
discarded when it dominates an already discovered one; this is sound and
complete for the 0-generacy verdict (anything reachable through the
discarded member is dominated by something reachable without it) and it
is what makes boxes beyond a few million cells tractable.  "full" mode
keeps every representative and exists to cross-validate the pruned run
on small boxes.

Either verdict is backed by a certificate: a witness trace for the
generating case, an invariant family for the non-generating case (the
final antichain of representatives, or the pool minima per index).  The
checkers live in certificates.py and do not share code with the engines.
"""

import itertools
import json
import os
import time
from dataclasses import dataclass

import numpy as np

from . import nvec
from ._kernels import box_size, box_strides, decode_many, get_kernels
from .vecset import antichain_min

LONG_TIER_CELLS = 20_000_000
HARD_CELL_LIMIT = 2_000_000_000

__version__ = "0.1.0"


class TierRefused(RuntimeError):
    """A job was refused because it falls in a heavier tier than allowed."""


class BudgetExceeded(RuntimeError):
    def __init__(self, message, cells=0, seconds=0.0, bracket=None):
        super().__init__(message)
        self.cells = cells
        self.seconds = seconds
        self.bracket = bracket


class Budget:
    """Cumulative budget shared by one or more engine runs.

    max_cells bounds the number of candidate cells processed, max_seconds
    the wall clock since construction.  Engines call spend(); exceeding
    either limit raises BudgetExceeded.
    """

    def __init__(self, max_cells=None, max_seconds=None):
        self.max_cells = max_cells
        self.max_seconds = max_seconds
        self.cells = 0
        self.t0 = time.monotonic()

    def spend(self, ncells):
        self.cells += int(ncells)
        if self.max_cells is not None and self.cells > self.max_cells:
            raise BudgetExceeded("cell budget exhausted (%d > %d)"
                                 % (self.cells, self.max_cells),
                                 cells=self.cells, seconds=self.elapsed())
        if self.max_seconds is not None and self.elapsed() > self.max_seconds:
            raise BudgetExceeded("time budget exhausted (%.1fs > %.1fs)"
                                 % (self.elapsed(), self.max_seconds),
                                 cells=self.cells, seconds=self.elapsed())

    def elapsed(self):
        return time.monotonic() - self.t0


@dataclass
class Decision:
    vector: tuple
    generating: bool
    kind: str                 # "const" or "general"
    engine: str               # "antichain", "full" or "general"
    backend: str
    rounds: int
    cells: int
    seconds: float
    certificate: dict = None
    cached: bool = False

    @property
    def verdict(self):
        return "generating" if self.generating else "not-generating"


def canonical_key(x):
    return tuple(sorted(x))


def job_tier(x):
    """Classify a decision job as "fast", "slow" or "long" by box size."""
    cells = 1
    for h in x:
        cells *= int(h)
    if cells > LONG_TIER_CELLS:
        return "long"
    if len(x) <= 4 and (not x or max(x) <= 7):
        return "fast"
    return "slow"


def _trivial_notgen(x, kind, engine_name):
    """Vectors with an entry <= 1 admit no sums strictly below the bound."""
    n = len(x)
    if kind == "const":
        cert = {"type": "nongen_invariant", "n": n, "hbar": int(x[0]),
                "M": [], "meta": {"source": "engine", "trivial": True}}
    else:
        cert = {"type": "nongen_invariant", "n": n, "hbar": list(map(int, x)),
                "M": [[list(nvec.unit(n, i))] for i in range(n)],
                "meta": {"source": "engine", "trivial": True}}
    return Decision(vector=tuple(x), generating=False, kind=kind,
                    engine=engine_name, backend="none", rounds=0, cells=0,
                    seconds=0.0, certificate=cert)


# ---------------------------------------------------------------------------
# constant recursion


class _ConstEngine:
    def __init__(self, n, c, kernels, prune, budget):
        self.n = n
        self.c = c
        self.k = kernels
        self.prune = prune
        self.budget = budget or Budget()
        self.shape = (c,) * n
        self.total = box_size(self.shape)
        self.strides = box_strides(np.asarray(self.shape, dtype=np.int64))
        # k-fold sums of stage members, k = 1..n-1 (the 0-fold sum {0} is
        # implicit); birth stamps say from which round a cell is usable.
        self.P = [np.zeros(self.total, dtype=bool) for _ in range(n - 1)]
        self.Pbirth = [np.zeros(self.total, dtype=np.int16) for _ in range(n - 1)]
        self.Cseen = [np.zeros(self.total, dtype=bool) for _ in range(n)]
        self.seen_reps = np.zeros(self.total, dtype=bool)
        self.delta = np.zeros(self.total, dtype=bool)
        self.reps_tmp = np.zeros(self.total, dtype=bool)
        self.cand = np.zeros(self.total, dtype=bool)
        self.cnew = np.zeros(self.total, dtype=bool)
        self.tmp = np.zeros(self.total, dtype=bool)
        self.reps = {}            # rep -> (birth round, k)
        self.chain = []           # antichain of minimal reps
        self._chain_mat = None
        self.cells = 0
        self.rounds = 0

    def _enc(self, x):
        return int(np.dot(np.asarray(x, dtype=np.int64), self.strides))

    def _chain_matrix(self):
        if self._chain_mat is None and self.chain:
            self._chain_mat = np.asarray(self.chain, dtype=np.int64)
        return self._chain_mat

    def _chain_add(self, y):
        self.chain = [a for a in self.chain if not nvec.dominates(a, y)]
        self.chain.append(y)
        self._chain_mat = None

    def _fold_members(self, members, rnd):
        """Extend every P[k] with sums using at least one new member."""
        n = self.n
        for k in range(1, n):
            self.delta[:] = False
            if k == 1:
                for rep in members:
                    self.delta[self._enc(rep)] = True
            else:
                src = self.P[k - 2]       # updated (k-1)-fold sums
                for rep in members:
                    self.k.or_shift(self.delta, src, self.shape, rep)
            if not self.delta.any():
                continue
            # close under permutations: members enter as whole orbits
            self.reps_tmp[:] = False
            self.k.project_sorted(self.reps_tmp, self.delta, self.shape)
            self.k.unproject_sorted(self.delta, self.reps_tmp, self.shape)
            np.greater(self.delta, self.P[k - 1], out=self.tmp)
            self.Pbirth[k - 1][self.tmp] = rnd
            self.P[k - 1] |= self.tmp

    def run(self):
        n, c = self.n, self.c
        ones_cell = self._enc((1,) * n)
        new_members = []
        zero_hit = None
        while True:
            self.rounds += 1
            rnd = self.rounds
            if rnd > 1:
                if not new_members:
                    return self._finish_notgen()
                self._fold_members(new_members, rnd)
            new_members = []
            for k in range(n):
                self.cand[:] = False
                if k == 0:
                    if rnd == 1:
                        self.cand[ones_cell] = True
                elif self.P[k - 1].any():
                    self.k.or_shift(self.cand, self.P[k - 1], self.shape,
                                    nvec.tail_indicator(n, k))
                np.greater(self.cand, self.Cseen[k], out=self.cnew)
                self.Cseen[k] |= self.cand
                ncand = int(np.count_nonzero(self.cnew))
                if ncand == 0:
                    continue
                self.cells += ncand
                self.budget.spend(ncand)
                self.reps_tmp[:] = False
                self.k.project_sorted(self.reps_tmp, self.cnew, self.shape,
                                      drop_last=True)
                np.greater(self.reps_tmp, self.seen_reps, out=self.tmp)
                self.seen_reps |= self.reps_tmp
                if self.tmp[0]:
                    zero_hit = (rnd, k)
                    self.reps[(0,) * n] = zero_hit
                    return self._finish_generating()
                new_flats = np.flatnonzero(self.tmp)
                if new_flats.size == 0:
                    continue
                digs = decode_many(new_flats, self.shape)
                if self.prune and self.chain:
                    mat = self._chain_matrix()
                    dominated = (digs[:, None, :] >= mat[None, :, :]).all(2).any(1)
                    digs = digs[~dominated]
                # within a batch smaller sums go first, so a member that
                # dominates another new member gets pruned as well
                batch = sorted(tuple(int(v) for v in row) for row in digs)
                batch.sort(key=sum)
                for rep in batch:
                    if self.prune and any(nvec.dominates(rep, a) for a in self.chain):
                        continue
                    self.reps[rep] = (rnd, k)
                    self._chain_add(rep)
                    new_members.append(rep)

    # -- certificates -------------------------------------------------------

    def _finish_notgen(self):
        m = antichain_min(self.chain)
        cert = {"type": "nongen_invariant", "n": self.n, "hbar": self.c,
                "M": [list(v) for v in m],
                "meta": {"source": "engine", "rounds": self.rounds}}
        return False, cert

    def _finish_generating(self):
        cert = self._extract_witness()
        return True, cert

    def _member_arrays(self):
        cells = []
        births = []
        for rep, (b, _k) in sorted(self.reps.items(), key=lambda kv: (kv[1][0], kv[0])):
            if rep == (0,) * self.n:
                continue
            for q in sorted(set(itertools.permutations(rep))):
                cells.append(q)
                births.append(b)
        if not cells:
            return (np.zeros((0, self.n), np.int64), np.zeros(0, np.int64),
                    np.zeros(0, np.int64))
        digs = np.asarray(cells, dtype=np.int64)
        flats = digs @ self.strides
        return digs, flats, np.asarray(births, dtype=np.int64)

    def _recover_candidate(self, rep, rnd, k):
        """Find a processed candidate cell whose production is rep."""
        n, c = self.n, self.c
        if rep[0] != 0:
            raise AssertionError("production representative must contain a zero")
        body = rep[1:]
        ind = nvec.tail_indicator(n, k) if k > 0 else None
        for q in sorted(set(itertools.permutations(body))):
            base = self._enc(q + (0,))
            for t in range(c):
                flat = base + t * int(self.strides[-1])
                if not self.Cseen[k][flat]:
                    continue
                x = q + (t,)
                if k == 0:
                    if x == (1,) * n:
                        return x
                    continue
                if any(x[j] < ind[j] for j in range(n)):
                    continue
                s_flat = flat - self._enc(ind)
                b = int(self.Pbirth[k - 1][s_flat])
                if 1 <= b <= rnd:
                    return x
        raise AssertionError("no candidate found for rep %r" % (rep,))

    def _peel(self, x, k, rnd, mem):
        """Split x - indicator into k member cells usable at round rnd."""
        digs, flats, births = mem
        n = self.n
        s = np.asarray(nvec.vec_sub(x, nvec.tail_indicator(n, k)), dtype=np.int64)
        s_flat = int(s @ self.strides)
        parts = []
        for j in range(k, 0, -1):
            mask = (births <= rnd - 1) & (digs <= s).all(axis=1)
            idx = np.flatnonzero(mask)
            rest = s_flat - flats[idx]
            if j == 1:
                ok = rest == 0
            else:
                ok = (self.Pbirth[j - 2][rest] >= 1) & (self.Pbirth[j - 2][rest] <= rnd)
            hit = np.flatnonzero(ok)
            if hit.size == 0:
                raise AssertionError("peel failed; engine state inconsistent")
            g = digs[idx[hit[0]]]
            parts.append(tuple(int(v) for v in g))
            s = s - g
            s_flat -= int(flats[idx[hit[0]]])
        return parts

    def _extract_witness(self):
        n = self.n
        mem = self._member_arrays()
        needed = {}
        stack = [(0,) * n]
        while stack:
            rep = stack.pop()
            if rep in needed:
                continue
            rnd, k = self.reps[rep]
            x = self._recover_candidate(rep, rnd, k)
            parts = self._peel(x, k, rnd, mem) if k else []
            needed[rep] = {"birth": rnd, "f": rep, "fhat": x, "k": k,
                           "parts": parts}
            for g in parts:
                stack.append(nvec.sorted_form(g))
        rows = sorted(needed.values(), key=lambda r: (r["birth"], r["f"]))
        steps = [{"f": list(r["f"]), "fhat": list(r["fhat"]), "k": r["k"],
                  "parts": [{"vec": list(g)} for g in r["parts"]]}
                 for r in rows]
        return {"type": "const_witness", "n": n, "hbar": self.c,
                "steps": steps,
                "meta": {"source": "engine", "rounds": self.rounds}}


def decide_const(n, c, *, prune=True, kernels=None, budget=None):
    """Decide whether the constant vector (c,)*n is 0-generating."""
    if n < 1:
        raise ValueError("need n >= 1")
    if c < 0:
        raise ValueError("need c >= 0")
    x = (c,) * n
    if c <= 1:
        return _trivial_notgen(x, "const", "antichain" if prune else "full")
    k = kernels or get_kernels()
    eng = _ConstEngine(n, c, k, prune, budget)
    t0 = time.monotonic()
    generating, cert = eng.run()
    return Decision(vector=x, generating=generating, kind="const",
                    engine="antichain" if prune else "full", backend=k.name,
                    rounds=eng.rounds, cells=eng.cells,
                    seconds=time.monotonic() - t0, certificate=cert)


# ---------------------------------------------------------------------------
# general recursion


class _GeneralEngine:
    def __init__(self, hbar, kernels, prune, budget):
        self.hbar = tuple(int(h) for h in hbar)
        self.n = len(hbar)
        self.k = kernels
        self.prune = prune
        self.budget = budget or Budget()
        self.shape = self.hbar
        self.total = box_size(self.shape)
        self.strides = box_strides(np.asarray(self.shape, dtype=np.int64))
        n = self.n
        # chain[i]: antichain of pool minima, the only elements summed over
        # (sound and complete for the verdict, as for the constant engine);
        # members[i]: every element ever admitted, kept for extraction.
        self.chain = [[nvec.unit(n, i)] for i in range(n)]
        self.members = [[(nvec.unit(n, i), 0)] for i in range(n)]
        self.prod_seen = [np.zeros(self.total, dtype=bool) for _ in range(n)]
        for i in range(n):
            self.prod_seen[i][int(self.strides[i])] = True
        self.S_seen = np.zeros(self.total, dtype=bool)
        self.Sbirth = np.zeros(self.total, dtype=np.int16)
        self.cells = 0
        self.rounds = 0
        self.win_index = None

    def _all_sums(self):
        """One pool element per index, summed, clipped to the box."""
        pre = np.zeros(self.total, dtype=bool)
        pre[0] = True
        for i in range(self.n):
            nxt = np.zeros(self.total, dtype=bool)
            for a in self.chain[i]:
                self.k.or_shift(nxt, pre, self.shape, a)
            pre = nxt
        return pre

    def run(self):
        n = self.n
        while True:
            self.rounds += 1
            rnd = self.rounds
            new = self._all_sums()
            new &= ~self.S_seen
            ncand = int(np.count_nonzero(new))
            if ncand == 0:
                return self._finish_notgen()
            self.cells += ncand
            self.budget.spend(ncand)
            self.S_seen |= new
            self.Sbirth[np.flatnonzero(new)] = rnd
            for i in range(n):
                red = np.zeros(self.total, dtype=bool)
                self.k.or_reduce_axis(red, new, self.shape, i)
                red &= ~self.prod_seen[i]
                self.prod_seen[i] |= red
                if red[0]:
                    self.members[i].append(((0,) * n, rnd))
                    self.win_index = i
                    return self._finish_generating()
                flats = np.flatnonzero(red)
                if flats.size == 0:
                    continue
                digs = decode_many(flats, self.shape)
                if self.prune:
                    mat = np.asarray(self.chain[i], dtype=np.int64)
                    dominated = (digs[:, None, :] >= mat[None, :, :]).all(2).any(1)
                    digs = digs[~dominated]
                batch = sorted(tuple(int(v) for v in row) for row in digs)
                batch.sort(key=sum)
                for y in batch:
                    if self.prune and any(nvec.dominates(y, a) for a in self.chain[i]):
                        continue
                    self.members[i].append((y, rnd))
                    if self.prune:
                        self.chain[i] = [a for a in self.chain[i]
                                         if not nvec.dominates(a, y)]
                    self.chain[i].append(y)

    # -- certificates -------------------------------------------------------

    def _finish_notgen(self):
        ms = [[list(v) for v in antichain_min(self.chain[i])]
              for i in range(self.n)]
        cert = {"type": "nongen_invariant", "n": self.n,
                "hbar": list(self.hbar), "M": ms,
                "meta": {"source": "engine", "rounds": self.rounds}}
        return False, cert

    def _resolve(self, i, y_flat):
        """The earliest recorded sum on the axis-i line through y."""
        h = self.shape[i]
        s = int(self.strides[i])
        best = None
        for d in range(h):
            flat = y_flat + d * s
            b = int(self.Sbirth[flat])
            if b >= 1 and (best is None or b < best[0]):
                best = (b, flat)
        if best is None:
            raise AssertionError("pool element with no recorded source sum")
        return best[1], best[0]

    def _decompose(self, x_flat, rnd, pool_cache, memo):
        """Pick one pool element per index, usable before round rnd, summing to x."""
        n = self.n
        x = decode_many(np.asarray([x_flat]), self.shape)[0]

        def rec(j, rem, rem_flat):
            if j == n:
                return [] if rem_flat == 0 else None
            key = (j, rem_flat, rnd)
            if key in memo:
                return None
            digs, flats, births = pool_cache[j]
            mask = (births <= rnd - 1) & (digs <= rem).all(axis=1)
            for t in np.flatnonzero(mask):
                g = digs[t]
                rest = rec(j + 1, rem - g, rem_flat - int(flats[t]))
                if rest is not None:
                    return [tuple(int(v) for v in g)] + rest
            memo.add(key)
            return None

        out = rec(0, x.astype(np.int64), x_flat)
        if out is None:
            raise AssertionError("sum does not decompose; engine state inconsistent")
        return out

    def _finish_generating(self):
        n = self.n
        pool_cache = []
        for j in range(n):
            entries = sorted(self.members[j], key=lambda vb: (vb[1], vb[0]))
            digs = np.asarray([v for v, _b in entries], dtype=np.int64)
            flats = digs @ self.strides
            births = np.asarray([b for _v, b in entries], dtype=np.int64)
            pool_cache.append((digs, flats, births))
        memo = set()
        rows = {}
        seen_pool = {(self.win_index, 0)}
        queue = [(self.win_index, 0)]
        while queue:
            i, y_flat = queue.pop()
            x_flat, rnd = self._resolve(i, y_flat)
            row = rows.get(x_flat)
            if row is None:
                sel = self._decompose(x_flat, rnd, pool_cache, memo)
                row = {"birth": rnd, "selected": sel, "productions": set()}
                rows[x_flat] = row
                for j, g in enumerate(sel):
                    g_flat = int(np.asarray(g, dtype=np.int64) @ self.strides)
                    if g != nvec.unit(n, j) and (j, g_flat) not in seen_pool:
                        seen_pool.add((j, g_flat))
                        queue.append((j, g_flat))
            row["productions"].add((i, y_flat))
        out_rows = []
        for x_flat in sorted(rows, key=lambda f: (rows[f]["birth"], f)):
            row = rows[x_flat]
            x = tuple(int(v) for v in decode_many(np.asarray([x_flat]), self.shape)[0])
            prods = []
            for i, y_flat in sorted(row["productions"]):
                y = tuple(int(v) for v in decode_many(np.asarray([y_flat]), self.shape)[0])
                prods.append({"i": i, "vec": list(y)})
            out_rows.append({"m": len(out_rows),
                             "selected": [list(g) for g in row["selected"]],
                             "sum": list(x), "productions": prods})
        cert = {"type": "general_witness", "n": n, "hbar": list(self.hbar),
                "rows": out_rows,
                "meta": {"source": "engine", "rounds": self.rounds}}
        return True, cert


def decide_general(hbar, *, prune=True, kernels=None, budget=None):
    """Decide whether an arbitrary vector of bounds is 0-generating."""
    x = tuple(int(h) for h in hbar)
    if len(x) < 1:
        raise ValueError("need a nonempty vector")
    if any(h < 0 for h in x):
        raise ValueError("entries must be nonnegative")
    if any(h <= 1 for h in x):
        return _trivial_notgen(x, "general", "general")
    k = kernels or get_kernels()
    eng = _GeneralEngine(x, k, prune, budget)
    t0 = time.monotonic()
    generating, cert = eng.run()
    return Decision(vector=x, generating=generating, kind="general",
                    engine="general", backend=k.name, rounds=eng.rounds,
                    cells=eng.cells, seconds=time.monotonic() - t0,
                    certificate=cert)


# ---------------------------------------------------------------------------
# dispatch, tiers, cache


def _allow_long_env():
    return os.environ.get("ZEROGEN_ALLOW_LONG", "") == "1"


def _cache_file(cache_dir, key):
    name = "v_" + "_".join(str(v) for v in key) + ".json"
    return os.path.join(cache_dir, name)


def cache_lookup(cache_dir, key):
    path = _cache_file(cache_dir, key)
    if not os.path.exists(path):
        return None
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, ValueError):
        return None


def cache_store(cache_dir, key, decision):
    try:
        os.makedirs(cache_dir, exist_ok=True)
        entry = {"key": list(key), "verdict": decision.verdict,
                 "kind": decision.kind, "engine": decision.engine,
                 "rounds": decision.rounds, "version": __version__,
                 "timestamp": time.time()}
        with open(_cache_file(cache_dir, key), "w") as fh:
            json.dump(entry, fh)
    except OSError:
        pass


def decide(x, *, mode="auto", prune=True, budget=None, kernels=None,
           allow_long=False, cache_dir=None, want_cert=True):
    """Decide 0-generacy of a vector, dispatching to the fitting engine.

    mode "auto" routes constant vectors to the constant engine and
    everything else to the general one; "const" and "general" force the
    choice ("const" requires a constant vector).  Jobs whose box exceeds
    the long tier are refused unless allow_long (or ZEROGEN_ALLOW_LONG=1)
    is set.  The verdict is invariant under permuting the vector, so the
    optional cache is keyed by the sorted form; it is consulted only when
    no certificate is wanted or the query is already sorted.
    """
    x = tuple(int(v) for v in x)
    if not x:
        raise ValueError("need a nonempty vector")
    if any(v < 0 for v in x):
        raise ValueError("entries must be nonnegative")
    tier = job_tier(x)
    cells = 1
    for h in x:
        cells *= h
    if cells > HARD_CELL_LIMIT:
        raise TierRefused(
            "box of %d cells does not fit in memory; for constant bounds "
            "this size, use the shipped or searched witnesses instead" % cells)
    if tier == "long" and not (allow_long or _allow_long_env()):
        raise TierRefused(
            "box of %d cells is in the long tier; pass allow_long=True "
            "(CLI: --allow-long or ZEROGEN_ALLOW_LONG=1)" % cells)

    key = canonical_key(x)
    if cache_dir and (x == key or not want_cert):
        hit = cache_lookup(cache_dir, key)
        if hit is not None and hit.get("version") == __version__:
            return Decision(vector=x, generating=hit["verdict"] == "generating",
                            kind=hit["kind"], engine=hit["engine"],
                            backend="cache", rounds=hit.get("rounds", 0),
                            cells=0, seconds=0.0, certificate=None, cached=True)

    is_const = all(v == x[0] for v in x)
    if mode == "const" and not is_const:
        raise ValueError("mode='const' needs a constant vector")
    if mode not in ("auto", "const", "general"):
        raise ValueError("unknown mode %r" % mode)

    if is_const and mode in ("auto", "const"):
        dec = decide_const(len(x), x[0], prune=prune, kernels=kernels,
                           budget=budget)
    else:
        dec = decide_general(x, prune=prune, kernels=kernels, budget=budget)
    if cache_dir:
        cache_store(cache_dir, key, dec)
    return dec
