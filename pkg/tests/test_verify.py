"""The identity checker: each check must pass on good input and fail on bad input."""
import random
from fractions import Fraction

import pytest

from frobtower import verify as V
from frobtower.errors import AssumptionBViolated, AssumptionViolated, ConfigError
from frobtower.towers import frobenius_step, make_tower

from conftest import tower_data


def test_report_status_is_structural_equality():
    assert V.IdentityReport("x", "t", (1, 0), {}, Fraction(1), 1).ok
    assert not V.IdentityReport("x", "t", (1, 0), {}, [1, 2], [1, 3]).ok
    rec = V.IdentityReport("x", "t", (1, 0), {"k": 2}, Fraction(1, 3), Fraction(1, 3)).to_record()
    assert rec["lhs"] == "1/3" and rec["status"] == "verified"


def test_frobenius_axioms_and_corruption():
    T = make_tower("sym", 3)
    fs = frobenius_step(T, 2)
    assert V.check_frobenius_axioms(fs).ok
    bad = V.check_frobenius_axioms(V.corrupt_dual(fs))
    assert not bad.ok and bad.identity == "frobenius_duality"


@pytest.mark.parametrize("n,k", [(3, 0), (3, 1), (4, 2), (2, 1)])
def test_sym_casimir_scalar(n, k):
    assert V.check_sym_casimir_scalar(make_tower("sym", n), n, k).ok


@pytest.mark.parametrize("weights", ["0,0", "0,1", "1,3"])
def test_hecke_casimir_forms(weights):
    T = make_tower(f"hecke:2,{weights}", 3)
    C, corrected = V.check_hecke_casimir(T, "corrected")
    assert C.ok and corrected.ok
    _, printed = V.check_hecke_casimir(T, "printed")
    assert not printed.ok
    i, j = T.weights
    t = V.hecke_casimir_targets(T, i, j)
    assert t["Ciota_intermediate"] == t["Ciota_corrected"]
    assert not V.check_casimir_central(T, 3, 2, iota=True).ok
    assert V.check_casimir_central(T, 3, 2).ok


def test_hecke_casimir_needs_level_two():
    with pytest.raises(ConfigError):
        V.check_hecke_casimir(make_tower("sym", 3))


def test_trace_identities_on_random_elements():
    T = make_tower("hecke:2,0,1", 3)
    rng = random.Random(1)
    A = T.level(3)
    for _ in range(5):
        a = V.random_combination(A.basis(), rng)
        assert V.check_trace_casimir(T, 3, a).ok
    Z = V.centralizer_basis(T, 3)
    for z in Z[:5]:
        assert V.check_centralizer_trace(T, 3, z).ok


def test_centralizer_trace_rejects_outsiders():
    T = make_tower("sym", 3)
    with pytest.raises(AssumptionViolated):
        V.check_centralizer_trace(T, 3, T.level(3).generators()[1])


def test_centre_basis_dimension_counts_classes():
    T = make_tower("sym", 4)
    assert len(V.centre_basis(T, 4)) == 5           # partitions of 4
    T = make_tower("hecke:2,0,1", 2)
    for z in V.centre_basis(T, 2):
        for g in T.level(2).generators():
            assert g * z == z * g


def test_moment_forms_sym():
    data = tower_data("sym", 4)[1]
    reps = V.check_moment_identities(data, 2, "(2)", 3)
    assert all(r.ok for r in reps)
    lit = V.check_moment_identities(data, 2, "(2)", 0, form="literal")
    assert not any(r.ok for r in lit)


def test_moment_up_needs_cartan_weights_when_blocks_link():
    data = tower_data("hecke:2,0,1", 3)[1]
    ratio = V.check_moment_identities(data, 2, "2.2", 3, form="corrected")
    cartan = V.check_moment_identities(data, 2, "2.2", 3, form="cartan")
    up_ratio = next(r for r in ratio if r.identity.startswith("moment_up"))
    assert (up_ratio.lhs, up_ratio.rhs) == (11, 9)
    assert all(r.ok for r in cartan)


def test_idempotent_independence_modes():
    T, data = tower_data("sym", 4)
    dec = data.decomps[3]
    rep, unit = V.check_idempotent_independence(T, dec, "(2,1)")
    assert rep.ok and unit.ok and rep.params["distinct"] == 1
    lit, _ = V.check_idempotent_independence(T, dec, "(2,1)", mode="literal")
    assert not lit.ok
    with pytest.raises(ConfigError):
        V.check_idempotent_independence(T, dec, "(2,1)", mode="other")


def test_jm_negative_control_raises():
    T, data = tower_data("sym", 4)
    with pytest.raises(AssumptionBViolated):
        V.jm_negative_control(T, data, 2)


@pytest.mark.parametrize("spec,N", [("sym", 3), ("hecke:2,0,1", 2), ("wreath:dual_numbers", 2)])
def test_suite_is_green(spec, N):
    res = V.run_suite(make_tower(spec, N), N)
    assert res.ok, [r.to_record() for r in res.failures()][:3]
    names = {r.identity for r in res.reports}
    assert {"frobenius_axioms", "trace_casimir", "centralizer_trace", "coherence_plain",
            "idempotent_independence"} <= names
