from __future__ import annotations

import pytest

import _props


@pytest.mark.parametrize("name", list(_props.ALL))
def test_property_suite(name):
    n, bad = _props.ALL[name]()
    assert n >= 1000
    assert bad == []
