import cmath
import math

import pytest

import etfkit

Z15_DS = [6, 11, 7, 12, 13, 3, 9, 14]


def test_classify_z15_example():
    cert = etfkit.classify([15], Z15_DS)
    assert cert["is_difference_set"]
    assert cert["lambda"] == 4
    assert cert["S"] == 4
    assert cert["fine_subgroup"] == [[0], [5], [10]]
    assert cert["is_amalgam"]
    assert cert["is_composite"]


def test_synthesis_is_equiangular():
    phi = etfkit.harmonic_synthesis([15], Z15_DS)
    assert len(phi) == 8 and len(phi[0]) == 15
    assert all(abs(abs(z) - 1 / math.sqrt(8)) < 1e-12 for row in phi for z in row)
    assert etfkit.coherence([15], Z15_DS) == pytest.approx(0.25, abs=1e-9)
    assert etfkit.welch_bound(8, 15) == pytest.approx(0.25, abs=1e-12)


def test_conference_matrix():
    c, passed, s = etfkit.conference_matrix([15], Z15_DS, [0, 5, 10], 1)
    assert passed and s == 4
    w = cmath.exp(2j * math.pi / 15)
    assert c[1][0] == pytest.approx(-w, abs=1e-12)
    assert c[0][0] == 0


def test_construct_families():
    singer = etfkit.construct("singer", 2, 2)
    assert [e[0] for e in singer["elements"]] == [3, 6, 7, 9, 11, 12, 13, 14]
    assert [e[0] for e in singer["B"]["elements"]] == [5, 10]
    tpp = etfkit.construct("tpp", 27)
    assert tpp["group"]["cyclic_orders"] == [3, 3, 3, 29]
    mc = etfkit.construct("mcfarland", 2, 2, [2, 2])
    assert len(mc["elements"]) == 6


def test_errors_become_value_errors():
    with pytest.raises(ValueError):
        etfkit.construct("singer", 6, 2)
    with pytest.raises(ValueError):
        etfkit.classify([15], [99])
