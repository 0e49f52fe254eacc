import itertools

from zerogen import vecset


def test_minkowski():
    a = [(0, 1), (1, 0)]
    b = [(1, 1)]
    assert sorted(vecset.minkowski(a, b)) == [(1, 2), (2, 1)]
    assert not vecset.minkowski(a, [])


def test_k_fold():
    a = [(0, 1), (1, 0)]
    assert sorted(vecset.k_fold(a, 0, 2)) == [(0, 0)]
    assert sorted(vecset.k_fold(a, 1, 2)) == sorted(a)
    assert sorted(vecset.k_fold(a, 2, 2)) == [(0, 2), (1, 1), (2, 0)]


def test_orbit_closure():
    got = sorted(vecset.orbit_closure([(1, 1, 2)]))
    assert got == [(1, 1, 2), (1, 2, 1), (2, 1, 1)]


def test_antichain_min_drops_dominators():
    a = [(2, 3), (3, 3), (2, 3), (5, 0), (5, 1)]
    assert vecset.antichain_min(a) == [(2, 3), (5, 0)]


def test_antichain_min_brute_force():
    vecs = list(itertools.product(range(4), repeat=3))
    import random
    rng = random.Random(7)
    for _ in range(50):
        sample = rng.sample(vecs, 12)
        got = vecset.antichain_min(sample)
        expect = sorted(x for x in set(sample)
                        if not any(y != x and all(a <= b
                                                  for a, b in zip(y, x))
                                   for y in sample))
        assert got == expect


def test_upset_membership():
    mins = [(2, 3), (5, 0)]
    assert vecset.in_upset((2, 3), mins)
    assert vecset.in_upset((9, 9), mins)
    assert not vecset.in_upset((1, 9), mins)
    assert vecset.in_orbit_upset((3, 2), [(2, 3)])
    assert not vecset.in_orbit_upset((1, 9), [(2, 3)])
    assert vecset.in_orbit_upset((9, 1), [(1, 2)])
