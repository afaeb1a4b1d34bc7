ACCEPTANCE = {}


def record(number, title, passed, detail=""):
    """Store one acceptance line; printed in the terminal summary."""
    ACCEPTANCE[number] = (title, passed, detail)
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:2d}: {title}"
    print(line + (f"  ({detail})" if detail else ""))
    return passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[n]
        line = f"{'PASS' if passed else 'FAIL'}  {n:2d}  {title}"
        terminalreporter.write_line(line + (f"  -- {detail}" if detail else ""))
