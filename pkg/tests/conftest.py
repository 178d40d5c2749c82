import re

from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter):
    outcomes = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            m = _CRITERION.search(getattr(rep, "nodeid", ""))
            if not m:
                continue
            n, name = int(m.group(1)), m.group(2).replace("_", " ")
            passed = key == "passed" and outcomes.get(n, (name, True))[1]
            outcomes[n] = (name, passed)
    if not outcomes:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for n in sorted(outcomes):
        name, passed = outcomes[n]
        terminalreporter.write_line(f"criterion {n} ({name}): {'PASS' if passed else 'FAIL'}")
