import collections

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from qjcm.algebra import DeformationSpec
from qjcm.field_states import AtomInit, FieldAmplitude, build_coherent_state
from qjcm.spectrum import ModelParams

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile(
    "stress", max_examples=500, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

G = 0.1

FIG2_SPECS = {
    "standard": DeformationSpec.standard(),
    "arik_coon": DeformationSpec.arik_coon(0.9),
    "penson_solomon": DeformationSpec.penson_solomon(0.9),
    "quesne": DeformationSpec.quesne(0.9),
}


def make_case(spec, z_sq=9.0, detuning=0.0, theta=0.0, g=G, m=2):
    dist = build_coherent_state(spec, FieldAmplitude.from_intensity(z_sq, theta))
    return ModelParams.from_detuning(detuning, g, spec, m), dist


@pytest.fixture(params=sorted(FIG2_SPECS))
def fig2_case(request):
    return (request.param, *make_case(FIG2_SPECS[request.param]))


@pytest.fixture
def excited():
    return AtomInit.excited()


@pytest.fixture
def ground():
    return AtomInit.ground()


def gt_grid(gt_max, n, g=G):
    return np.linspace(0.0, gt_max, n) / g


# one summary line per acceptance criterion

_criteria = collections.OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    number = getattr(report, "criterion", None)
    if number is None:
        return
    _criteria.setdefault(number, []).append((report.nodeid, report.outcome))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report.criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        results = _criteria[number]
        failed = [nid.split("::")[-1] for nid, outcome in results if outcome != "passed"]
        status = "PASS" if not failed else "FAIL"
        detail = f"{len(results) - len(failed)}/{len(results)} sub-checks"
        if failed:
            detail += "; failing: " + ", ".join(failed)
        terminalreporter.write_line(f"criterion {number:>2}: {status} ({detail})")
