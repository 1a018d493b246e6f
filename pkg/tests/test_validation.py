from gaugering import validation


def test_all_checks_pass():
    results = validation.run_all()
    failed = [c.line() for c in results if not c.passed]
    assert not failed, "\n".join(failed)
    assert len(results) == 16


def test_degeneracy_check_is_sensitive():
    assert validation.check_degeneracy().passed
    broken = validation.check_degeneracy(perturb=1e-3)
    assert not broken.passed and broken.measured > 1e-6


def test_check_line_format():
    line = validation.Check("demo", False, 1.5e-3, 1e-9, "why").line()
    assert line.startswith("FAIL") and "demo" in line and "(why)" in line
