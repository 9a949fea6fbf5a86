import pytest


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "extended: long exhaustive reproductions, skipped by default"
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-extended", default=False):
        return
    skip = pytest.mark.skip(reason="extended-scale run; enable with --run-extended")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


def pytest_addoption(parser):
    parser.addoption(
        "--run-extended",
        action="store_true",
        default=False,
        help="run multi-hour extended reproductions",
    )
