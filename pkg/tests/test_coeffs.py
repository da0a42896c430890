import json
import math

import pytest
from hypothesis import given, strategies as st

from hkfam._series import ParameterError
from hkfam.coeffs import (ConstantPotential, FamilyIndex, Flat, Table, g_half, g_int, g_tilde,
                          load_table, parse_provider, seeley_dewitt)

SQRT_2PI = 2.5066282746310002


def test_g_int_values():
    assert g_int(0, 0) == 1.0
    assert g_int(2, 1) == 0.0
    assert g_int(2, 3) == 4.0


@given(st.integers(-6, 6), st.integers(0, 12))
def test_g_int_recurrence(p, k):
    # raising k by one divides by (k - p + 1) and keeps the prefactor
    if k - p + 1 > 0:
        assert g_int(p, k + 1) * (k - p + 1) == pytest.approx(g_int(p, k), rel=1e-14)


def test_g_half_values():
    assert g_half(0.5, 0) == pytest.approx(SQRT_2PI, rel=1e-15)
    assert g_half(0.5, 1) == pytest.approx(2 * SQRT_2PI, rel=1e-15)
    assert g_half(1.5, 0) == pytest.approx(SQRT_2PI, rel=1e-15)


def test_g_half_rejects_integer_index():
    with pytest.raises(ParameterError):
        g_half(1, 0)


def test_g_tilde_values():
    assert g_tilde(2, 0) == 1.0
    assert g_tilde(0, 0) == 0.0
    assert g_tilde(0, 2) == 0.75


def test_family_index_exact_storage():
    ix = FamilyIndex.of(-1.5)
    assert ix.twice_value == -3 and not ix.is_integer
    assert ix.shift(2).value == 0.5
    assert FamilyIndex.of(3).int_value == 3
    with pytest.raises(ParameterError):
        FamilyIndex.of(0.25)


def test_providers():
    assert seeley_dewitt(Flat(), 0) == 1.0
    assert seeley_dewitt(Flat(), 3) == 0.0
    assert seeley_dewitt(ConstantPotential(2.0), 3) == pytest.approx(4.0 / 3.0, rel=1e-15)
    assert seeley_dewitt(ConstantPotential(2.0), -1) == 0.0
    t = Table([1.0, 0.5, 0.1])
    assert (t.a(2), t.a(3), t.support) == (0.1, 0.0, 2)


def test_table_requires_unit_leading_coefficient():
    with pytest.raises(ParameterError):
        Table([2.0, 1.0])


def test_load_table_and_parse_provider(tmp_path):
    path = tmp_path / "a.json"
    path.write_text(json.dumps({"a": [1.0, 0.3, 0.02], "vanvleck_sqrt": 1.0}))
    t = load_table(str(path))
    assert t.values == (1.0, 0.3, 0.02)
    assert parse_provider(f"table:{path}").values == t.values
    assert isinstance(parse_provider("flat"), Flat)
    assert parse_provider("constpot:0.5").v == 0.5
    with pytest.raises(ParameterError):
        parse_provider("curved")


def test_constant_potential_sums_to_exponential():
    p = ConstantPotential(0.7)
    assert math.fsum(p.a(k) for k in range(30)) == pytest.approx(math.exp(0.7), rel=1e-15)
