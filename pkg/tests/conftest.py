ACCEPTANCE_LINES: list[str] = []


def record_acceptance(number: int, name: str, ok: bool):
    ACCEPTANCE_LINES.append(
        f"acceptance {number} ({name}): {'PASS' if ok else 'FAIL'}"
    )


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
