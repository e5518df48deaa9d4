import math

import numpy as np
import pytest

from graph_spectra.cli import parse_potential_spec
from graph_spectra.rules import PowerRule, RuleSyntaxError, parse_rule


@pytest.mark.parametrize("spec,N,expected", [
    ("n^2", 3, [1, 4, 9]),
    ("0", 5, [0, 0, 0, 0, 0]),
    ("2*n^1 + 1", 2, [3, 5]),
    ("n", 3, [1, 2, 3]),
    ("3.5", 2, [3.5, 3.5]),
    ("n^-2", 2, [1, 0.25]),
    ("n^(-2) - 1", 2, [0, -0.75]),
    ("-n + 4", 3, [3, 2, 1]),
])
def test_potential_grammar(spec, N, expected):
    np.testing.assert_allclose(parse_potential_spec(spec, N), expected, rtol=0, atol=1e-15)


@pytest.mark.parametrize("bad,pos", [("n^", 2), ("2*", 2), ("n^2 +", 5), ("n^2 x", 4), ("", 0), ("n n", 2)])
def test_grammar_errors_carry_position(bad, pos):
    with pytest.raises(RuleSyntaxError) as info:
        parse_rule(bad)
    assert info.value.position == pos


def test_potential_from_value_file(tmp_path):
    f = tmp_path / "c.txt"
    f.write_text("# potential\n1.5\n2, 3\n")
    np.testing.assert_array_equal(parse_potential_spec(str(f), 3), [1.5, 2, 3])
    with pytest.raises(ValueError):
        parse_potential_spec(str(f), 4)


def test_series_of_inverse_squares():
    r = PowerRule.monomial(1.0, -2.0)
    assert r.series_converges()
    assert math.isclose(r.series_total(), math.pi**2 / 6, rel_tol=1e-15)
    for N in (1, 10, 1000):
        tail = r.series_tail(N)
        direct = math.pi**2 / 6 - math.fsum(1.0 / k**2 for k in range(1, N + 1))
        assert math.isclose(tail, direct, rel_tol=1e-9)
        lo, hi = r.tail_bounds(N)
        assert math.isclose(lo, 1 / (N + 1)) and math.isclose(hi, 1 / N)
        assert lo < tail < hi


def test_divergent_series():
    r = parse_rule("n^2").divided_by_monomial(1.0, -4.0)
    assert r.terms == ((1.0, 6.0),)
    assert not r.series_converges()
    with pytest.raises(ValueError):
        r.series_tail(3)
