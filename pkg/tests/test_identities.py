"""The verification suites at working truncations, plus their mutations."""

from fractions import Fraction as F

import pytest

from raytheta.identities import (
    FamilyParams,
    PellSolution,
    SearchConfig,
    consolidate,
    id24_pool,
    idp1_pool,
    negative_control,
    pell_levels,
    pell_reports,
    run_suite,
    search_relations,
    thm51_check,
    thm51_lhs,
    thm51_vv_form,
    verify_id1,
    verify_id2,
    verify_relations55,
)
from raytheta.qseries import equals_to_order, eta, v_func


def test_id1_all_pass():
    reports = verify_id1(F(12))
    assert [r.passed for r in reports] == [True, True, True]


def test_id2_all_pass():
    reports = verify_id2(F(12))
    assert len(reports) == 6 and all(r.passed for r in reports)


def test_relations55_all_pass():
    reports = verify_relations55(F(8))
    assert len(reports) == 3 and all(r.passed for r in reports)


def test_thm51_base_cases_match_vv_form():
    for r, eps in ((1, 0), (3, 0), (1, 1)):
        params = FamilyParams.build(1, r, eps)
        lhs = thm51_lhs(params, F(12))
        vv = thm51_vv_form(params, F(12))
        ok, mism = equals_to_order(lhs, vv, F(12))
        assert ok, (r, eps, mism)
        assert thm51_check(1, r, eps, F(12)).passed


def test_thm51_next_member():
    rep = thm51_check(5, 1, 0, F(2))
    assert rep.passed and rep.params["m"] == 100 and rep.params["p"] == 101


def test_thm51_further_square_free_member():
    # a = 13 gives p = 677 prime with a' = 1; both parity variants hold
    rep = thm51_check(13, 1, 0, F(2))
    assert rep.passed and rep.params["m"] == 676
    assert thm51_check(13, 1, 1, F(2)).passed


def test_thm51_nontrivial_square_part_fails_and_is_reported():
    # a = 9 satisfies every stated precondition (p = 13, a' = 5) yet the
    # series differ from the first coefficient on; the checker must report
    # the mismatch honestly rather than error out
    rep = thm51_check(9, 1, 0, F(2))
    assert not rep.passed
    assert rep.first_mismatch == (F(1, 16), 0, 1)
    rep2 = thm51_check(9, 3, 1, F(3))
    assert not rep2.passed and rep2.first_mismatch is not None


def test_thm51_parameter_validation():
    with pytest.raises(ValueError):
        thm51_check(1, 2, 0, F(2))  # even r
    with pytest.raises(ValueError):
        thm51_check(1, 5, 0, F(2))  # r divisible by p
    with pytest.raises(ValueError):
        thm51_check(3, 1, 0, F(2))  # a = 3 mod 4 without the override
    with pytest.raises(ValueError):
        thm51_check(1, 1, 2, F(2))


def test_thm51_experimental_override_runs():
    params = FamilyParams.build(3, 1, 0, experimental=True)
    assert (params.p, params.aprime) == (37, 1)


def test_consolidate_fixtures():
    assert consolidate(99, 6, 1, 1, 242, F(10)).passed
    for r in (1, -2, -5):
        assert consolidate(195, 12, 1, r, 675, F(10)).passed


def test_consolidate_242_sum_is_eta():
    from raytheta.identities import _VCache, _sum

    V = _VCache(F(10))
    total = _sum(V(99 * (1 + 12 * j), 242) for j in range(99))
    ok, mism = equals_to_order(total, eta(F(10)), F(10))
    assert ok, mism


def test_consolidate_675_rhs_is_level3_v():
    from raytheta.qseries import theta_gen

    for r in (1, -2, -5):
        rhs = theta_gen(r, 12, F(10)) - theta_gen(r * 1351, 12, F(10))
        ok, mism = equals_to_order(rhs, v_func(r, 3, F(10)), F(10))
        assert ok, mism


def test_consolidate_trivial_c():
    assert consolidate(1, 12, 5, 1, 3, F(10)).passed


def test_consolidate_random_valid_tuples():
    import random

    rng = random.Random(3)
    done = 0
    while done < 25:
        m = rng.choice([2, 3, 4, 5, 8, 14, 20])
        k = m * (m + 1)
        # pick a square divisor c^2 of k
        cs = [c for c in range(1, 15) if k % (c * c) == 0]
        c = rng.choice(cs)
        b = rng.choice([t for t in range(1, 8) if __import__("math").gcd(t, c) == 1])
        r = rng.randint(-10, 10)
        assert consolidate(c, k // (c * c), b, r, m, F(8)).passed
        done += 1


def test_consolidate_rejects_bad_divisibility():
    with pytest.raises(ValueError):
        consolidate(175, 12, 1, 1, 675, F(4))
    with pytest.raises(ValueError):
        consolidate(6, 2, 3, 1, 8, F(4))


def test_pell_first_two_levels():
    sols = pell_levels(2)
    assert [(s.m, s.c) for s in sols] == [(675, 195), (131043, 37829)]
    assert all(s.verify() for s in sols)


def test_pell_reports_pass():
    assert all(r.passed for r in pell_reports(2))


def test_pell_companion_family():
    # levels with m(m+1) = 6 c^2 feed the same consolidation at k' = 6
    assert 242 * 243 == 6 * 99**2
    assert 23762 * 23763 == 6 * 9701**2


def test_pell_typo_guard():
    assert not PellSolution(675, 175).verify()
    assert PellSolution(675, 195).verify()


def test_search_recovers_known_relations():
    rels = search_relations(idp1_pool(F(16)))
    assert len(rels) == 3
    want = [
        {"L1": 1, "R11": -1, "R12": 1},
        {"L2": 1, "R21": -1, "R22": 1},
        {"L3": 1, "R31": -1, "R32": 1},
    ]
    got = [r["coeffs"] for r in rels]
    for w in want:
        assert w in got or {k: -v for k, v in w.items()} in got
    assert all(r["status"] == "CANDIDATE" for r in rels)


def test_search_single_series_no_relation():
    cfg = SearchConfig.from_products([("only", [(1, 2)])], F(10))
    assert search_relations(cfg) == []


def test_search_id24_family():
    rels = search_relations(id24_pool(F(16)))
    assert len(rels) == 1
    coeffs = rels[0]["coeffs"]
    assert sorted(coeffs) == ["L", "VV1", "VV2"]
    sign = coeffs["L"]
    assert coeffs["VV1"] == -sign and coeffs["VV2"] == -sign


def test_search_size_guard():
    cfg = SearchConfig.from_products([("x", [(1, 2)])], F(10))
    cfg = SearchConfig(pool=cfg.pool, trunc=cfg.trunc, max_coeff=9, max_matrix_entries=1)
    with pytest.raises(ValueError):
        search_relations(cfg)


@pytest.mark.parametrize("suite", ["id1", "id2", "relations55", "thm51", "consolidate", "pell"])
def test_negative_controls_fail(suite):
    rep = negative_control(suite, F(8))
    assert not rep.passed
    assert rep.first_mismatch is not None


def test_run_suite_registry():
    reports = run_suite("id1", F(8))
    assert len(reports) == 3
    with pytest.raises(KeyError):
        run_suite("nosuch")


def test_stability_under_raised_truncation():
    # PASS suites stay PASS when the comparison range doubles
    assert all(r.passed for r in verify_id1(F(24)))
    assert all(r.passed for r in verify_id2(F(24)))
    assert thm51_check(1, 1, 0, F(24)).passed
    assert all(r.passed for r in verify_relations55(F(40)))


def test_sec54_stable_at_raised_truncation():
    from raytheta.identities import verify_sec54

    # ideal norms to 1440 instead of the acceptance gate's 960
    assert all(r.passed for r in verify_sec54(F(6)))
