import pytest

from multinormlab.optkernel import OptimizerConfig


@pytest.fixture
def cfg():
    return OptimizerConfig(restarts=8, seed=0)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = next((m for name, m in list(sys.modules.items()) if name.endswith("test_acceptance") and hasattr(m, "RESULTS")), None)
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in range(1, 14):
        if k in mod.RESULTS:
            ok, detail = mod.RESULTS[k]
            terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        else:
            terminalreporter.write_line(f"criterion {k:2d}: NOT RUN")
