import random

from frdtm.expfield import ExpField


def random_field(rng: random.Random, max_terms: int = 3,
                 coeff_scale: float = 1.5) -> ExpField:
    """Small random field; rates stay moderate so evaluation cannot overflow."""
    count = rng.randint(1, max_terms)
    return ExpField(
        (complex(rng.uniform(-coeff_scale, coeff_scale),
                 rng.uniform(-coeff_scale, coeff_scale)),
         complex(rng.uniform(-1.0, 1.0), rng.uniform(-2.0, 2.0)))
        for _ in range(count))


def assert_fields_close(actual: ExpField, expected: ExpField,
                        tol: float = 1e-12, rate_tol: float = 1e-9) -> None:
    """Termwise comparison of two canonical fields."""
    assert len(actual) == len(expected), (actual, expected)
    for got, want in zip(actual.terms, expected.terms):
        assert abs(got.rate - want.rate) <= rate_tol, (got, want)
        assert abs(got.coeff - want.coeff) <= tol * (1.0 + abs(want.coeff)), \
            (got, want)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance test at the end of the run."""
    seen: dict[str, str] = {}
    for key, label in (("failed", "FAIL"), ("error", "FAIL"), ("passed", "PASS")):
        for report in terminalreporter.stats.get(key, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance" in nodeid and nodeid not in seen:
                seen[nodeid] = label
    if not seen:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid in sorted(seen):
        name = nodeid.split("::")[-1]
        terminalreporter.write_line(f"{seen[nodeid]}  {name}")
