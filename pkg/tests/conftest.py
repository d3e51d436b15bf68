import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        ok, title, elapsed, note = results[num]
        line = f"criterion {num:>2} {'PASS' if ok else 'FAIL'}  {title} ({elapsed:.2f}s)"
        if note:
            line += f"  [{note}]"
        terminalreporter.write_line(line)
