import pytest

_acceptance: dict = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    label = dict(report.user_properties).get("criterion")
    if label is None:
        return
    ok = report.passed
    _acceptance[label] = _acceptance.get(label, True) and ok


@pytest.fixture(autouse=True)
def _tag_criterion(request):
    marker = request.node.get_closest_marker("acceptance")
    if marker is not None:
        label = marker.args[0]
        callspec = getattr(request.node, "callspec", None)
        if callspec is not None and marker.kwargs.get("split"):
            label = f"{label} [{callspec.id}]"
        request.node.user_properties.append(("criterion", label))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_acceptance, key=lambda s: (int(s.split(".")[0]), s)):
        verdict = "PASS" if _acceptance[label] else "FAIL"
        terminalreporter.write_line(f"{verdict}  {label}")
