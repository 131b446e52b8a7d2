def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        passed, title = RESULTS[number]
        terminalreporter.write_line(f"AC{number:>2} {'PASS' if passed else 'FAIL'}  {title}")
