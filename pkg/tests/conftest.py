import os

import pytest


def pytest_addoption(parser):
    parser.addoption("--run-long", action="store_true", default=False,
                     help="run long-tier tests (many minutes)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-long") \
            or os.environ.get("ZEROGEN_ALLOW_LONG") == "1":
        return
    skip = pytest.mark.skip(reason="long tier; enable with --run-long or "
                                   "ZEROGEN_ALLOW_LONG=1")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)
