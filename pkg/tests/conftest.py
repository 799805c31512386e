import pytest

_acceptance = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number = marker.args[0]
    doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
    failed = rep.failed or (rep.when == "call" and rep.outcome != "passed")
    prev = _acceptance.get(number, (doc, True))
    _acceptance[number] = (doc, prev[1] and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        doc, ok = _acceptance[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {doc}")
