"""Loaders for the data shipped with the package.

data/certificates holds witness and invariant fixtures named table_NN.json.
Where the original record of a table was internally inconsistent, the
shipped fixture carries the repair (documented in its meta.corrections)
and the untouched transcription sits alongside as table_NN_raw.json.

data/reference_tables.json carries the summary tables that the library
recomputes (threshold sequences, defects, weight constants), printed
factorials included verbatim, plus a manifest of known discrepancies
between printed and recomputed values.

data/nets.json holds the covering nets used to bound the harmonic-mean
threshold for n = 2, 3, 4.
"""

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .nvec import parse_rational

RAW_FIXTURES = (5, 6, 7, 14, 16, 17, 22, 23)
CONST_FIXTURES = tuple(range(3, 13))
GENERAL_FIXTURES = tuple(range(13, 24))


def _data_root():
    return resources.files("zerogen.data")


@lru_cache(maxsize=None)
def _load_json(relpath):
    with _data_root().joinpath(relpath).open() as fh:
        return json.load(fh)


def reference_tables():
    return _load_json("reference_tables.json")


def _bound(cell):
    """A {rel, q} cell as (rel, Fraction or None)."""
    q = cell["q"]
    return cell["rel"], (parse_rational(q) if q is not None else None)


def table1_reference():
    t = reference_tables()["table1"]
    rows = []
    for j, n in enumerate(t["n"]):
        rows.append({
            "n": n,
            "varphi": t["varphi"][j],
            "one_plus_floor_phi": t["one_plus_floor_phi"][j],
            "s_minus_inf": _bound(t["s_minus_inf"][j]),
            "s_minus_1": _bound(t["s_minus_1"][j]),
            "varphi_next": t["varphi_next"][j],
            "factorial_printed": t["factorial_printed"][j],
        })
    return rows


def table2_reference():
    t = reference_tables()["table2"]
    return [{"n": n,
             "s_minus_1": _bound(t["s_minus_1"][j]),
             "defect": _bound(t["defect"][j])}
            for j, n in enumerate(t["n"])]


def weight_table_reference():
    return reference_tables()["weight_table"]


def known_discrepancies():
    return reference_tables()["known_discrepancies"]


def boundary_examples():
    ex = reference_tables()["boundary_examples_n5"]
    return {"not_generating": [tuple(v) for v in ex["not_generating"]],
            "generating": [tuple(v) for v in ex["generating"]]}


def annulating_length(n):
    """Recorded length of the shortest known annulating trace."""
    if n == 6:
        return reference_tables()["annulating_length_n6"]
    raise KeyError("no recorded annulating length for n=%d" % n)


def builtin_nets():
    raw = _load_json("nets.json")
    out = {}
    for name, entry in raw.items():
        out[name] = {"n": entry["n"], "t": entry["t"],
                     "net": [tuple(v) for v in entry["net"]]}
    return out


def net_for(n):
    """(t, net) for the shipped net in dimension n."""
    for entry in builtin_nets().values():
        if entry["n"] == n:
            return entry["t"], entry["net"]
    raise KeyError("no shipped net for n=%d" % n)


def fixture_numbers(kind=None):
    """Fixture numbers, optionally filtered by certificate type."""
    all_nums = CONST_FIXTURES + GENERAL_FIXTURES
    if kind is None:
        return all_nums
    if kind in ("const_witness", "general_witness"):
        return tuple(num for num in all_nums
                     if certificate_fixture(num)["type"] == kind)
    raise ValueError(
        "kind must be 'const_witness', 'general_witness' or None")


def certificate_fixture(num, raw=False):
    name = "certificates/table_%02d%s.json" % (num, "_raw" if raw else "")
    try:
        return _load_json(name)
    except FileNotFoundError:
        if raw and num not in RAW_FIXTURES:
            raise KeyError("fixture %d has no raw variant (the record was "
                           "consistent as printed)" % num) from None
        raise


def invariant_fixture(n):
    if n not in (4, 5):
        raise KeyError("invariant fixtures exist for n=4 and n=5 only")
    return _load_json("certificates/invariant_m%d.json" % n)


def factorial_flags():
    """Printed factorials against the true ones, per n."""
    import math
    rows = []
    for r in table1_reference():
        true = math.factorial(r["n"])
        rows.append({"n": r["n"], "printed": r["factorial_printed"],
                     "true": true, "match": true == r["factorial_printed"]})
    return rows
