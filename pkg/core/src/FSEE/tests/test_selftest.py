import pytest

from FSEE.pipelines.selftest import (
    CHECKS,
    check_checkerboard,
    check_entropy_examples,
    check_fejer_facts,
    check_particle_hole,
    run_selftest,
)


def broken_check():
    raise RuntimeError("boom")


@pytest.mark.unit
class TestSelftest:

    def test_fast_checks_pass(self):
        report = run_selftest([
            ("fejer_facts", check_fejer_facts),
            ("entropy_examples", check_entropy_examples),
            ("particle_hole", check_particle_hole),
            ("checkerboard", check_checkerboard),
        ])
        assert report.ok
        assert report.to_dict()["passed"] == 4

    def test_exceptions_become_failures(self):
        report = run_selftest([("fejer_facts", check_fejer_facts), ("broken", broken_check)])
        assert not report.ok
        assert report.failed == ["broken"]
        assert report.checks[1].detail == "RuntimeError: boom"

    def test_check_names_are_unique(self):
        names = [name for name, _ in CHECKS]
        assert len(names) == len(set(names))


@pytest.mark.slow
def test_full_suite_passes():
    report = run_selftest()
    assert report.ok, report.failed
