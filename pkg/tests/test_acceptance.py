"""One test per acceptance criterion; each prints its own verdict line."""

import pytest

from signednu.acceptance import CRITERIA, run_criterion

_IDS = [f"criterion-{num}" for num, _name, _fn in CRITERIA]


@pytest.mark.parametrize("num", [num for num, _name, _fn in CRITERIA],
                         ids=_IDS)
def test_criterion(num):
    ok, name, detail = run_criterion(num)
    print(f"{'PASS' if ok else 'FAIL'} criterion-{num} {name} ({detail})")
    assert ok, f"criterion-{num} {name}: {detail}"
