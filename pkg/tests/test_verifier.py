import json

import pytest

from tep7 import fixtures, verifier
from tep7.poly import ONE, ZERO, Poly, parse, var
from tep7.tep_model import (
    builtin_families,
    builtin_family,
    canonicalize,
    extend_symmetric,
    HalfInstance,
    residual,
)


def test_numeric_check_examples():
    fam = builtin_family(1)
    assert verifier.numeric_identity_check(residual(fam, 6), trials=100)
    assert not verifier.numeric_identity_check(ONE)
    assert not verifier.numeric_identity_check(residual(fam, 8), trials=100)
    with pytest.raises(ValueError):
        verifier.numeric_identity_check(ONE, trials=0)


def test_numeric_check_is_seeded():
    p = parse("a1^2 - 2*a1*a3 + a3^2 - (a1 - a3)^2 + a1 - 1")
    assert [verifier.numeric_identity_check(p) for _ in range(3)] == [False] * 3
    assert verifier.numeric_identity_check(ZERO)


def test_symbolic_zero_implies_numeric_zero():
    for fam in builtin_families():
        for r in range(1, 9):
            res = residual(fam, r)
            if res.is_zero():
                assert verifier.numeric_identity_check(res)
            else:
                assert not verifier.numeric_identity_check(res)


def test_constant_ratio():
    a1 = var("a1")
    assert verifier.constant_ratio(6 * a1 + 3, 2 * a1 + 1) == 3
    assert verifier.constant_ratio(2 * a1 + 1, 6 * a1 + 3) * 3 == 1
    assert verifier.constant_ratio(a1 + 2, a1 + 1) is None


def test_fixture_regression_passes():
    rep = verifier.fixture_regression()
    assert rep.ok and not rep.mismatches
    status = {c.name: c for c in rep.checks}
    assert status["first condition"].status == "constant"
    assert status["first condition"].constant == 33177600000
    assert status["second condition f=-2"].constant == 2304000
    assert status["phi product form"].status == "exact"
    assert status["phi collected form"].status == "exact"
    assert status["worked family vs builtin:1"].status == "equivalent"
    table = rep.table()
    assert "33177600000" in table and "0 mismatches" in table
    assert json.loads(json.dumps(rep.to_json()))["ok"] is True


def test_regression_reports_mismatch():
    c = verifier._compare("x", var("a1") + 1, var("a1") + 2)
    assert c.status == "mismatch" and not c.ok


def test_genericity_scan_family_1():
    rep = verifier.genericity_scan(builtin_family(1), range(-50, 51))
    assert [r.t for r in rep.rows] == list(range(-50, 51))
    for row in rep.rows:
        assert not row.degenerate
        assert all(row.degrees[r] for r in range(1, 8))
        assert row.degrees[8] == row.trivial
    assert rep.counts["trivial"] == 9
    at2 = next(r for r in rep.rows if r.t == 2)
    assert at2.instance == canonicalize(extend_symmetric(HalfInstance(*fixtures.WORKED_INSTANCE)))


def test_genericity_scan_empty_and_reproducible():
    assert verifier.genericity_scan(builtin_family(1), []).rows == []
    a = verifier.genericity_scan(builtin_family(2), range(-5, 6)).to_json()
    b = verifier.genericity_scan(builtin_family(2), reversed(range(-5, 6))).to_json()
    assert json.dumps(a) == json.dumps(b)


def test_product_form_first_condition():
    from tep7 import pipeline

    form = verifier.product_form(pipeline.first_condition(), [p for p, _ in fixtures.FIRST_FACTORS])
    assert form.constant == 33177600000
    assert form.rest == ONE
    assert dict((str(p), k) for p, k in form.factors)["f + 2"] == 2
    assert form.text().startswith("33177600000 * (f + 2)^2")


def test_product_form_splits_rational_roots():
    g = var("g")
    p = 6 * (g - 1) ** 2 * (2 * g + 3) * (g * g + 1)
    form = verifier.product_form(p)
    assert form.constant == 6
    assert sorted((str(f), k) for f, k in form.factors) == [("2*g + 3", 1), ("g - 1", 2)]
    assert form.rest == g * g + 1


def test_fixture_set_checksums():
    fs = verifier.fixture_set()
    assert set(fs) == set(fixtures.FIXTURES)
    assert fs["conic.worked"]["text"] == "21*a1^2 + 2*a1*a3 + a3^2"
    assert all(len(v["sha256_16"]) == 16 for v in fs.values())
    with pytest.raises(TypeError):
        fixtures.FIXTURES["Q"] = ONE


def test_fixture_checksums_pinned():
    # any edit to a stored fixture changes this digest
    import hashlib

    sums = fixtures.checksums()
    assert len(sums) == 77
    digest = hashlib.sha256(json.dumps(sums, sort_keys=True).encode()).hexdigest()[:16]
    assert digest == "24f9340d9cf6cc8a"
