import os

import pytest
from hypothesis import settings

settings.register_profile("exoticnc", deadline=None, derandomize=True, print_blob=True)
settings.load_profile("exoticnc")


@pytest.fixture(scope="session", autouse=True)
def isolated_cache(tmp_path_factory):
    """Run every test against a fresh slice cache (the cache only accelerates)."""
    old = os.environ.get("EXOTICNC_CACHE")
    os.environ["EXOTICNC_CACHE"] = str(tmp_path_factory.mktemp("slices"))
    yield
    if old is None:
        os.environ.pop("EXOTICNC_CACHE", None)
    else:
        os.environ["EXOTICNC_CACHE"] = old


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        terminalreporter.write_line(results[k])
