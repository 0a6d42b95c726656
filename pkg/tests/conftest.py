import cases


def pytest_terminal_summary(terminalreporter):
    if not cases.ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in cases.CRITERIA.items():
        if n in cases.ACCEPTANCE:
            ok, detail = cases.ACCEPTANCE[n]
            status = "PASS" if ok else "FAIL"
        else:
            status, detail = "NOT RUN", ""
        terminalreporter.write_line(f"criterion {n} [{title}]: {status}" + (f"  {detail}" if detail else ""))
