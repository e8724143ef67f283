"""Bundled towers: dimensions, defining relations, inclusions and Frobenius systems."""
import json
import math
from fractions import Fraction

import pytest

from frobtower.errors import ConfigError
from frobtower.towers import (FrobeniusAlgebraData, frobenius_step, frobenius_system, load_preset,
                              make_tower, relative_norm)
from frobtower.towers.base import perm_inv, perm_mul, simple_reflection, transposition
from frobtower.towers.frobenius import (bimodule_failures, duality_failures, reproduction_failures,
                                        sample_elements)


def test_perm_convention():
    s = transposition(1, 2, 3)
    t = transposition(2, 3, 3)
    # (s t)(j) = s(t(j)): 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1
    assert perm_mul(s, t) == (2, 3, 1)
    p = (3, 1, 2)
    assert perm_mul(p, perm_inv(p)) == (1, 2, 3)
    assert simple_reflection(2, 4) == (1, 3, 2, 4)


@pytest.mark.parametrize("spec,n,expected", [
    ("sym", 5, 120), ("hecke:1,0", 4, 24), ("hecke:1,3", 3, 6), ("hecke:2,0,0", 3, 48),
    ("hecke:2,0,1", 3, 48), ("wreath:dual_numbers", 3, 48), ("sergeev", 3, 48),
])
def test_dimensions(spec, n, expected):
    assert make_tower(spec, n).dim(n) == expected


def test_hecke_relations():
    T = make_tower("hecke:2,0,1", 3)
    A = T.level(3)
    x1, x2, x3 = (T.x(3, k) for k in (1, 2, 3))
    s1, s2 = T.s(3, 1), T.s(3, 2)
    one = A.one()
    assert s1 * x1 - x2 * s1 == one.scale(-1)
    assert s2 * x2 - x3 * s2 == one.scale(-1)
    assert x1 * x2 == x2 * x1 and x2 * x3 == x3 * x2
    assert s1 * x3 == x3 * s1
    # cyclotomic relation (x1 - 0)(x1 - 1) = 0
    assert (x1 * (x1 - one)).is_zero()
    assert s1 * s2 * s1 == s2 * s1 * s2


def test_sergeev_relations():
    T = make_tower("sergeev", 2)
    A = T.level(2)
    s, c1 = A.generators()
    c2 = s * c1 * s
    assert c1 * c1 == A.one()
    assert c1 * c2 == (c2 * c1).scale(-1)


@pytest.mark.parametrize("spec,N", [("sym", 4), ("hecke:2,0,1", 2), ("hecke:2,0,0", 2),
                                    ("hecke:1,2", 3), ("wreath:dual_numbers", 2), ("sergeev", 2)])
def test_frobenius_steps(spec, N):
    T = make_tower(spec, N + 1)
    for n in range(N + 1):
        fs = frobenius_step(T, n)
        elems = sample_elements(T.level(n + 1), 8, seed=n)
        assert not duality_failures(fs)
        assert not reproduction_failures(fs, elems)
        assert not bimodule_failures(fs, elems[:4])


def test_composite_system_sym():
    T = make_tower("sym", 3)
    fs = frobenius_system(T, 3, 0)
    assert len(fs.B) == 6
    assert not duality_failures(fs)


def test_relative_norm_is_central():
    T = make_tower("hecke:2,0,1", 2)
    fs = frobenius_system(T, 2, 0)
    z = relative_norm(fs, T.x(2, 2))
    for g in T.level(2).generators():
        assert g * z == z * g


def test_inclusions_are_algebra_maps():
    T = make_tower("hecke:2,0,1", 3)
    a, b = sample_elements(T.level(2), 2, seed=4, exhaustive_below=0)
    assert T.include(a * b, 3) == T.include(a, 3) * T.include(b, 3)
    assert T.include(T.level(2).one(), 3) == T.level(3).one()


@pytest.mark.parametrize("spec", ["sym", "hecke:2,0,1", "sergeev"])
def test_jucys_murphy_commutes_with_lower_level(spec):
    T = make_tower(spec, 3)
    x = T.jucys_murphy(3)
    for g in T.level(2).generators():
        G = T.include(g, 3)
        assert G * x == x * G


def test_sym_jm_is_sum_of_transpositions():
    T = make_tower("sym", 3)
    A = T.level(3)
    want = A.basis_element(transposition(1, 3, 3)) + A.basis_element(transposition(2, 3, 3))
    assert T.jucys_murphy(3) == want


@pytest.mark.parametrize("bad", ["hecke:2,0", "hecke:", "hecke:a,b", "nope", "wreath:missing"])
def test_bad_presets(bad):
    with pytest.raises(ConfigError):
        make_tower(bad, 2)


def test_wreath_json_roundtrip(tmp_path):
    F = load_preset("cl1")
    path = tmp_path / "cl1.json"
    path.write_text(json.dumps(F.to_json()))
    G = FrobeniusAlgebraData.from_json(path)
    assert G.to_json() == F.to_json()
    T = make_tower(f"wreath:{path}", 2)
    assert T.dim(2) == 8


def test_wreath_rejects_broken_dual_basis():
    doc = load_preset("dual_numbers").to_json()
    doc["dual_basis_hat"] = [0, 1]
    with pytest.raises(ConfigError):
        FrobeniusAlgebraData.from_json(doc)


def test_wreath_rejects_missing_field():
    doc = load_preset("dual_numbers").to_json()
    del doc["trace"]
    with pytest.raises(ConfigError):
        FrobeniusAlgebraData.from_json(doc)


def test_level_out_of_range():
    T = make_tower("sym", 2)
    with pytest.raises(ConfigError):
        T.level(3)
