import itertools
from functools import lru_cache

import pytest

from hessgkm.hessenberg import enumerate_theta_ideals
from hessgkm.rootsys import WeylGroup, build_root_system, parabolic

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion number and summary")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    info = getattr(report, "criterion", None)
    if info is None:
        return
    n, text = info
    prev = _CRITERIA.get(n, (text, "PASS"))[1]
    status = "PASS" if report.outcome == "passed" and prev == "PASS" else "FAIL"
    _CRITERIA[n] = (text, status)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        rep.criterion = tuple(marker.args)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        text, status = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {text}")


@lru_cache(maxsize=None)
def root_data(lie_type: str, rank: int):
    rs = build_root_system(lie_type, rank)
    return rs, WeylGroup(rs)


@lru_cache(maxsize=None)
def parabolic_data(lie_type: str, rank: int, theta: tuple):
    rs, W = root_data(lie_type, rank)
    return parabolic(rs, theta, W)


def oracle_cases():
    """Every Theta-ideal of A2, B2, G2 (all Theta) and A3 (|Theta| <= 1)."""
    out = []
    for lie_type, rank, max_theta in [("A", 2, 2), ("B", 2, 2), ("G", 2, 2), ("A", 3, 1)]:
        rs, _ = root_data(lie_type, rank)
        for size in range(max_theta + 1):
            for theta in itertools.combinations(range(1, rank + 1), size):
                par = parabolic_data(lie_type, rank, theta)
                for ideal in enumerate_theta_ideals(rs, par):
                    out.append((rs, par, ideal))
    return out


def case_id(case) -> str:
    rs, par, ideal = case
    pos = {a: i for i, a in enumerate(rs.positive_roots)}
    return f"{rs.name}-t{''.join(map(str, sorted(par.theta)))}-I{'.'.join(str(pos[a]) for a in ideal.roots)}"
