def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(VERDICTS):
        terminalreporter.write_line(VERDICTS[n])
    missing = [n for n in range(1, 15) if n not in VERDICTS]
    for n in missing:
        terminalreporter.write_line(f"criterion {n:2d}: NOT RUN")
