"""Space loading, the axiom checks and the brute-force oracle route."""

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fmetric import (ChainBudgetError, Generator, SpaceFormatError, Witness,
                     check_axioms, check_d1, check_d2, check_d3,
                     check_d3_bruteforce, is_metric, load_space, make_space,
                     min_chain_sums, random_space, save_space,
                     space_from_dict, space_to_dict, squared_space)
from fmetric.core import FINITE_CARRIER_NOTE, min_chain_paths, reconstruct_chain

from conftest import chain_scan_oracle, simple_path_min_sums

LN = math.log


def line_space(n):
    """The path metric D[i, j] = |i - j|; a true metric."""
    idx = np.arange(n, dtype=float)
    return make_space(np.abs(idx[:, None] - idx[None, :]))


# ---------------------------------------------------------------------------
# construction and format validation


def test_make_space_defaults_labels():
    sp = make_space([[0.0, 1.0], [1.0, 0.0]])
    assert sp.labels == ("p0", "p1")
    assert sp.n == 2
    assert sp.index("p1") == 1
    assert sp.asymmetry == 0.0


def test_make_space_freezes_matrix():
    sp = make_space([[0.0, 1.0], [1.0, 0.0]])
    with pytest.raises(ValueError):
        sp.dist[0, 1] = 2.0


@pytest.mark.parametrize("matrix", [
    [[0.0, 1.0]],                                      # not square
    [[0.0, 1.0], [1.0, 1.0]],                          # nonzero diagonal
    [[0.0, -1.0], [-1.0, 0.0]],                        # negative entry
    [[0.0, math.inf], [math.inf, 0.0]],                # non-finite
    [[0.0, math.nan], [math.nan, 0.0]],                # non-finite
    [[0.0, 1.0], [2.0, 0.0]],                          # asymmetric beyond tol
])
def test_make_space_rejects_bad_matrices(matrix):
    with pytest.raises(SpaceFormatError):
        make_space(matrix)


def test_make_space_rejects_label_problems():
    with pytest.raises(SpaceFormatError):
        make_space([[0.0, 1.0], [1.0, 0.0]], labels=("a",))
    with pytest.raises(SpaceFormatError):
        make_space([[0.0, 1.0], [1.0, 0.0]], labels=("a", "a"))


def test_make_space_repairs_tiny_asymmetry():
    sp = make_space([[0.0, 1.0], [1.0 + 1e-12, 0.0]])
    assert sp.asymmetry == pytest.approx(1e-12, rel=1e-3)
    assert sp.dist[0, 1] == sp.dist[1, 0]
    assert "symmetrized" in check_d2(sp).note


def test_space_dict_round_trip(sq4):
    doc = space_to_dict(sq4)
    back = space_from_dict(doc)
    assert back.labels == sq4.labels
    assert np.array_equal(back.dist, sq4.dist)


@pytest.mark.parametrize("doc", [42, {"labels": ["a", "b"]}, {"matrix": [[0.0]]}])
def test_space_from_dict_rejects_bad_documents(doc):
    with pytest.raises(SpaceFormatError):
        space_from_dict(doc)


# ---------------------------------------------------------------------------
# file round trips


AWKWARD = [[0.0, 0.1 + 0.2, 1.0 / 3.0],
           [0.1 + 0.2, 0.0, math.pi],
           [1.0 / 3.0, math.pi, 0.0]]


@pytest.mark.parametrize("suffix", [".json", ".csv", ".tsv"])
def test_save_load_round_trip_is_bit_exact(tmp_path, suffix):
    sp = make_space(AWKWARD, labels=("plain", "with, comma", 'with "quote"'))
    path = tmp_path / f"space{suffix}"
    save_space(sp, path)
    back = load_space(path)
    assert back.labels == sp.labels
    assert np.array_equal(back.dist, sp.dist)


def test_load_space_explicit_format_overrides_suffix(tmp_path):
    sp = make_space(AWKWARD)
    path = tmp_path / "space.dat"
    save_space(sp, path, fmt="csv")
    back = load_space(path, fmt="csv")
    assert np.array_equal(back.dist, sp.dist)


def test_load_space_bad_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(SpaceFormatError):
        load_space(path)


def test_load_space_bad_csv(tmp_path):
    path = tmp_path / "broken.csv"
    path.write_text("a,b\n0.0,x\n1.0,0.0\n")
    with pytest.raises(SpaceFormatError):
        load_space(path)
    path.write_text("")
    with pytest.raises(SpaceFormatError):
        load_space(path)
    path.write_text("a,b\n0.0,1.0\n")
    with pytest.raises(SpaceFormatError):
        load_space(path)


def test_load_space_unknown_format(tmp_path):
    with pytest.raises(SpaceFormatError):
        load_space(tmp_path / "x.json", fmt="xml")


def test_load_space_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_space(tmp_path / "absent.json")


# ---------------------------------------------------------------------------
# minimum chain sums


def test_min_chain_sums_squared4(sq4):
    # minimal chains walk unit steps, so the sums are |i - j|
    idx = np.arange(4, dtype=float)
    assert np.array_equal(min_chain_sums(sq4), np.abs(idx[:, None] - idx[None, :]))


def test_min_chain_sums_matches_exhaustive_enumeration():
    for seed in range(8):
        sp = random_space(6, scale=2.0, seed=(90, seed))
        got = min_chain_sums(sp)
        want = simple_path_min_sums(sp.dist)
        assert np.allclose(got, want, rtol=1e-12, atol=0.0)
        assert np.all(got <= sp.dist)  # chain infimum never exceeds the direct hop


def test_min_chain_sums_idempotent():
    # the chain infimum is a fixed point of itself
    for seed in range(5):
        sp = random_space(5, seed=(91, seed))
        once = min_chain_sums(sp)
        twice = min_chain_sums(make_space(once))
        assert np.array_equal(once, twice)


def test_reconstruct_chain_walks_valid_paths():
    for seed in range(5):
        sp = random_space(6, seed=(92, seed))
        sums, pred = min_chain_paths(sp)
        for i in range(sp.n):
            for j in range(sp.n):
                if i == j:
                    continue
                chain = reconstruct_chain(pred, i, j)
                assert chain[0] == i and chain[-1] == j
                assert len(set(chain)) == len(chain)  # simple
                s = 0.0
                for a, b in zip(chain, chain[1:]):
                    s += float(sp.dist[a, b])
                assert s == pytest.approx(float(sums[i, j]), rel=1e-12)


def test_reconstruct_chain_tie_break_prefers_direct_and_low_index():
    # equal-sum alternatives: the direct hop wins, then the lowest intermediate
    sp = make_space([[0.0, 1.0, 2.0], [1.0, 0.0, 1.0], [2.0, 1.0, 0.0]])
    sums, pred = min_chain_paths(sp)
    assert reconstruct_chain(pred, 0, 2) == (0, 2)
    two_routes = make_space([[0.0, 2.0, 2.0, 10.0],
                             [2.0, 0.0, 9.0, 3.0],
                             [2.0, 9.0, 0.0, 3.0],
                             [10.0, 3.0, 3.0, 0.0]])
    sums, pred = min_chain_paths(two_routes)
    assert float(sums[0, 3]) == 5.0
    assert reconstruct_chain(pred, 0, 3) == (0, 1, 3)


# ---------------------------------------------------------------------------
# axioms


def test_check_d1_flags_first_offdiagonal_zero():
    sp = make_space([[0.0, 1.0, 0.0], [1.0, 0.0, 2.0], [0.0, 2.0, 0.0]])
    verdict = check_d1(sp)
    assert not verdict.passed and verdict.pair == (0, 2)
    assert check_d1(squared_space(3)).passed


def test_check_d3_squared4_passes_at_ln3(sq4, w_log3):
    verdict = check_d3(sq4, w_log3)
    assert verdict.passed
    assert verdict.note == FINITE_CARRIER_NOTE


def test_check_d3_squared4_fails_below_ln3(sq4):
    w = Witness(Generator("log"), math.log(3.0) - 1e-6)
    assert not check_d3(sq4, w).passed


def test_check_d3_squared3_failure_evidence(sq3):
    # the (0,2) pair: f(4) = ln 4 against ln(1+1) + ln 1.5 = ln 3
    verdict = check_d3(sq3, Witness(Generator("log"), math.log(1.5)))
    assert not verdict.passed
    assert verdict.pair == (0, 2)
    assert verdict.chain == (0, 1, 2)
    assert verdict.lhs == pytest.approx(LN(4.0), abs=1e-15)
    assert verdict.rhs == pytest.approx(LN(2.0) + LN(1.5), abs=1e-15)
    assert verdict.violations == 1


def test_check_d3_counts_all_violations(sq4):
    # alpha = 0 on the squared space: every pair with |i-j| >= 2 violates
    verdict = check_d3(sq4, Witness(Generator("log"), 0.0))
    assert not verdict.passed
    assert verdict.violations == 3
    assert verdict.pair == (0, 2)


def test_check_d3_skips_zero_pairs_and_handles_zero_sums():
    # D(0,1) = D(1,2) = 0 gives a zero minimal sum for the (0,2) pair
    sp = make_space([[0.0, 0.0, 5.0], [0.0, 0.0, 0.0], [5.0, 0.0, 0.0]])
    verdict = check_d3(sp, Witness(Generator("log"), 1.0))
    assert not verdict.passed
    assert verdict.pair == (0, 2)
    assert verdict.rhs == -math.inf
    assert not check_d1(sp).passed  # the zeros themselves are a D1 matter


def test_check_d3_tol_separates_margins():
    # minimal sum for (0,2) is 1.0; alpha = ln 2 - gap leaves margin -gap
    sp = make_space([[0.0, 0.5, 2.0], [0.5, 0.0, 0.5], [2.0, 0.5, 0.0]])
    g = Generator("log")
    assert check_d3(sp, Witness(g, LN(2.0) - 5e-10), tol=1e-9).passed
    assert not check_d3(sp, Witness(g, LN(2.0) - 1e-7), tol=1e-9).passed


def test_check_axioms_aggregates(sq4, w_log3):
    report = check_axioms(sq4, w_log3)
    assert report.passed
    assert report.d1.passed and report.d2.passed and report.d3.passed
    bad = check_axioms(sq4, Witness(Generator("log"), 0.0))
    assert not bad.passed and bad.d1.passed and not bad.d3.passed


def test_metric_always_passes_d3_with_zero_alpha():
    for seed in range(10):
        base = random_space(6, seed=(93, seed))
        metric = make_space(min_chain_sums(base))
        for name in ("log", "neg_inverse", "log_plus_linear"):
            assert check_d3(metric, Witness(Generator(name), 0.0)).passed


@settings(deadline=None, max_examples=30)
@given(seed=st.integers(0, 10_000),
       alpha_lo=st.floats(0.0, 2.0), bump=st.floats(1e-6, 2.0))
def test_d3_monotone_in_alpha(seed, alpha_lo, bump):
    # a passing witness keeps passing when the slack grows
    sp = random_space(5, seed=(94, seed))
    g = Generator("log")
    if check_d3(sp, Witness(g, alpha_lo)).passed:
        assert check_d3(sp, Witness(g, alpha_lo + bump)).passed


# ---------------------------------------------------------------------------
# brute-force oracle route


def test_bruteforce_matches_itertools_enumeration(sq3, sq4):
    cases = [(sq3, "log", LN(1.5), 3), (sq4, "log", LN(3.0), 4),
             (sq4, "neg_inverse", 0.5, 4)]
    for seed in range(6):
        cases.append((random_space(5, seed=(95, seed)), "log", 0.3, 5))
        cases.append((random_space(4, seed=(96, seed)), "log_plus_linear", 1.0, 4))
    for sp, name, alpha, max_len in cases:
        g = Generator(name)
        verdict = check_d3_bruteforce(sp, Witness(g, alpha), max_len=max_len)
        tested, worst, pair = chain_scan_oracle(sp.dist, g, alpha, max_len)
        assert verdict.chains_tested == tested
        assert (verdict.rhs - verdict.lhs) == worst
        assert verdict.pair == pair
        assert verdict.passed == (worst >= -1e-9)


def test_bruteforce_agrees_with_check_d3(sq3, sq4, w_log3):
    assert check_d3_bruteforce(sq4, w_log3, max_len=4).passed
    w_bad = Witness(Generator("log"), LN(1.5))
    fast = check_d3(sq3, w_bad)
    slow = check_d3_bruteforce(sq3, w_bad, max_len=3)
    assert not fast.passed and not slow.passed
    assert fast.pair == slow.pair == (0, 2)
    assert slow.chain == (0, 1, 2)


def test_bruteforce_worst_chain_on_squared4(sq4, w_log3):
    # unique worst margin 0 at pair (0,3) along the unit-step chain
    verdict = check_d3_bruteforce(sq4, w_log3, max_len=4)
    assert verdict.passed
    assert verdict.pair == (0, 3)
    assert verdict.chain == (0, 1, 2, 3)
    assert verdict.rhs - verdict.lhs == 0.0


def test_bruteforce_budget_error(sq4, w_log3):
    with pytest.raises(ChainBudgetError):
        check_d3_bruteforce(sq4, w_log3, max_len=4, cap=5)


def test_bruteforce_argument_validation(sq4, w_log3):
    with pytest.raises(ValueError):
        check_d3_bruteforce(sq4, w_log3, max_len=1)
    with pytest.raises(ValueError):
        check_d3_bruteforce(sq4, w_log3, max_len=3, cap=0)


def test_bruteforce_vacuous_when_no_positive_pairs():
    sp = make_space([[0.0, 0.0], [0.0, 0.0]])
    verdict = check_d3_bruteforce(sp, Witness(Generator("log"), 0.0), max_len=2)
    assert verdict.passed and verdict.chains_tested == 0 and verdict.pair is None


# ---------------------------------------------------------------------------
# plain metric check


def test_is_metric_squared4_evidence(sq4):
    verdict = is_metric(sq4)
    assert not verdict.passed
    assert verdict.triple == (0, 1, 2)
    assert verdict.lhs == 4.0 and verdict.rhs == 2.0


def test_is_metric_accepts_line_metric():
    assert is_metric(line_space(5)).passed


def test_is_metric_two_points_vacuous():
    assert is_metric(random_space(2, seed=1)).passed


def test_is_metric_tol_boundary():
    sp = make_space([[0.0, 1.0, 2.0 + 5e-10], [1.0, 0.0, 1.0], [2.0 + 5e-10, 1.0, 0.0]])
    assert is_metric(sp, tol=1e-9).passed
    assert not is_metric(sp, tol=1e-10).passed
