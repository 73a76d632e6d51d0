import random
import time

import pytest
from hypothesis import HealthCheck, settings

from drinfeld_ml.basefield.gf import FFElem
from drinfeld_ml.basefield.poly import Poly
from drinfeld_ml.basefield.ratfunc import RatFunc
from drinfeld_ml.ore import OrePoly

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


# --- random objects ----------------------------------------------------------

def rand_ff(rng, gf, nonzero=False):
    lo = 1 if nonzero else 0
    return FFElem(gf, rng.randrange(lo, gf.order))


def rand_poly(rng, gf, deg):
    return Poly(gf, {i: rng.randrange(gf.order) for i in range(deg + 1)})


def rand_ratfunc(rng, spec, deg=2):
    gf = spec.gf
    num = rand_poly(rng, gf, rng.randint(0, deg))
    den = rand_poly(rng, gf, rng.randint(0, deg))
    while den.is_zero():
        den = rand_poly(rng, gf, rng.randint(0, deg))
    return RatFunc(num, den)


def rand_host(rng, spec, deg=2, nonzero=False):
    while True:
        x = rand_ff(rng, spec.gf) if spec.is_finite else rand_ratfunc(rng, spec, deg)
        if not (nonzero and x.is_zero()):
            return x


def rand_ore(rng, spec, deg, twist=None, cdeg=1):
    return OrePoly(spec, [rand_host(rng, spec, cdeg) for _ in range(deg + 1)], twist)


@pytest.fixture
def rng():
    return random.Random(20240601)


# --- acceptance summary ------------------------------------------------------

_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_call(item):
    start = time.perf_counter()
    yield
    item.user_properties.append(("elapsed", time.perf_counter() - start))


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for key, value in report.user_properties:
        if key == "criterion":
            elapsed = dict(report.user_properties).get("elapsed", 0.0)
            ok, total = _CRITERIA.get(value, (True, 0.0))
            _CRITERIA[value] = (ok and report.outcome == "passed", total + elapsed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_CRITERIA, key=lambda s: int(s.split(".")[0])):
        ok, elapsed = _CRITERIA[label]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {label}: {verdict} ({elapsed:.2f} s)")
