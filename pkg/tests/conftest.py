from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import SUMMARY
    if SUMMARY:
        terminalreporter.section("acceptance criteria")
        for number in sorted(SUMMARY):
            terminalreporter.write_line(SUMMARY[number])
