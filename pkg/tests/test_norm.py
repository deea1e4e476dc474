"""Norm engine tests: oracle examples, DP-vs-oracle equivalence, axioms."""

import itertools
import math
import random
from fractions import Fraction

import pytest

from jamestree.nodes import NodeId, Segment, index_of, node_at
from jamestree.norm import (
    InstanceTooLargeError,
    OverlappingSegmentsError,
    brute_force_norm,
    candidate_segments,
    family_value_squared,
    jt_norm,
    norm_lower_upper,
)
from jamestree.vectors import EXACT, FLOAT, JTVector, basis_vector, zero_scalar
from jamestree.lab import antichain_nodes, random_vector, substream


def vec(entries, backend=EXACT):
    return JTVector.from_entries(entries, backend)


# ---------------------------------------------------------------------------
# family evaluation


def test_family_value_squared_examples():
    x = vec({"": 1, "0": 1})
    assert family_value_squared(x, []) == 0
    assert family_value_squared(x, [Segment.parse("..0")]) == 4
    assert family_value_squared(x, [Segment.parse(".."), Segment.parse("0..0")]) == 2


def test_family_value_squared_rejects_overlap():
    x = vec({"": 1, "0": 1})
    with pytest.raises(OverlappingSegmentsError):
        family_value_squared(x, [Segment.parse("..00"), Segment.parse("0..01")])


# ---------------------------------------------------------------------------
# candidates


def test_candidate_counts():
    assert len(candidate_segments(vec({"": 1}))) == 1
    assert len(candidate_segments(vec({"0": 1, "1": 2}))) == 2
    assert len(candidate_segments(vec({"": 1, "0": 1, "00": 1}))) == 6


def test_candidates_are_sorted_canonically():
    cands = candidate_segments(vec({"": 1, "0": 1, "00": 1}))
    assert [str(seg) for seg in cands] == ["..", "..0", "..00", "0..0", "0..00", "00..00"]


# ---------------------------------------------------------------------------
# oracle


def test_oracle_zero_vector():
    w = brute_force_norm(JTVector.zero())
    assert w.value_squared == 0 and w.family == ()


def test_oracle_stacked_pair():
    w = brute_force_norm(vec({"": 1, "0": 1}))
    assert w.value_squared == 4
    assert [str(seg) for seg in w.family] == ["..0"]


def test_oracle_incomparable_pair():
    w = brute_force_norm(vec({"0": 1, "1": 1}))
    assert w.value_squared == 2
    assert [str(seg) for seg in w.family] == ["0..0", "1..1"]


def test_oracle_instance_too_large():
    x = vec({("0" * k): 1 for k in range(8)})  # chain of 8 support nodes
    assert len(candidate_segments(x)) == 36
    with pytest.raises(InstanceTooLargeError):
        brute_force_norm(x)
    w = brute_force_norm(x, max_candidates=64)
    assert w.value_squared == 64  # one segment collecting all eight ones


def test_oracle_tie_break_prefers_small_keys():
    # both {..0, 1..1} and {..1, 0..0} are worth 5; keys pick the first
    w = brute_force_norm(vec({"": 1, "0": 1, "1": 1}))
    assert w.value_squared == 5
    assert [str(seg) for seg in w.family] == ["..0", "1..1"]


def _all_maximizers(x):
    """Every disjoint family hitting the max, by raw subset enumeration."""
    cands = candidate_segments(x)
    best, arg = zero_scalar(x.backend), []
    for k in range(len(cands) + 1):
        for combo in itertools.combinations(cands, k):
            try:
                val = family_value_squared(x, combo)
            except OverlappingSegmentsError:
                continue
            if val > best:
                best, arg = val, [combo]
            elif val == best:
                arg.append(combo)
    return best, arg


def test_oracle_tie_break_is_min_over_all_maximizers():
    cases = [
        {"": 1, "0": 1, "1": 1},
        {"0": 1, "1": -1},
        {"": 1, "0": -1, "00": 1},
        {"": 2, "0": -1, "01": 1, "1": -2},
    ]
    for entries in cases:
        x = vec(entries)
        best, families = _all_maximizers(x)
        ranked = min(
            families,
            key=lambda fam: (len(fam), [(index_of(s.start), index_of(s.end)) for s in fam]),
        )
        w = brute_force_norm(x)
        assert w.value_squared == best
        assert w.family == ranked


# ---------------------------------------------------------------------------
# dp engine


def test_dp_matches_examples():
    assert jt_norm(vec({"": 1, "0": 1})).value_squared == 4
    assert jt_norm(vec({"0": 1, "1": 1})).value_squared == 2
    for n in (1, 5, 9, 64):
        assert jt_norm(basis_vector(node_at(n))).value_squared == 1


def test_dp_rejects_unknown_method():
    with pytest.raises(ValueError):
        jt_norm(JTVector.zero(), method="guess")


def test_dp_zero_vector():
    w = jt_norm(JTVector.zero())
    assert w.value_squared == 0 and w.family == ()


def test_dp_oracle_equivalence_random():
    for i in range(300):
        rng = substream(424242, i)
        x = random_vector(rng)
        dp = jt_norm(x)
        oracle = brute_force_norm(x, max_candidates=64)
        assert dp.value_squared == oracle.value_squared, str(x)
        assert family_value_squared(x, dp.family) == dp.value_squared
        assert family_value_squared(x, oracle.family) == oracle.value_squared


def test_dp_float_close_to_exact():
    for i in range(150):
        rng = substream(515151, i)
        x = random_vector(rng)
        exact_sq = float(jt_norm(x).value_squared)
        float_sq = jt_norm(x.to_float()).value_squared
        assert math.isclose(float_sq, exact_sq, rel_tol=1e-9, abs_tol=1e-12)


def test_dp_witness_is_deterministic():
    for i in range(40):
        rng = substream(9191, i)
        x = random_vector(rng)
        a = jt_norm(x)
        b = jt_norm(x)
        assert a.family == b.family


def test_dp_on_deep_chain_with_alternating_signs():
    for n in (3, 6, 10):
        entries = {"0" * k: Fraction((-1) ** k, n) for k in range(1, n + 1)}
        x = vec(entries)
        assert jt_norm(x).value_squared == Fraction(1, n)


def test_dp_witness_segments_have_support_endpoints():
    for i in range(60):
        rng = substream(727272, i)
        x = random_vector(rng)
        supp = x.support()
        for seg in jt_norm(x).family:
            assert seg.start in supp and seg.end in supp


def test_antichain_value():
    for n in (2, 3, 8):
        x = vec({node: Fraction(1, n) for node in antichain_nodes(n)})
        assert jt_norm(x).value_squared == Fraction(1, n)
        assert brute_force_norm(x).value_squared == Fraction(1, n)


# ---------------------------------------------------------------------------
# norm axioms


def test_norm_lower_upper_examples():
    assert norm_lower_upper(basis_vector(node_at(5))) == (1, 1)
    assert norm_lower_upper(vec({"": 1, "0": 1})) == (2, 4)
    assert norm_lower_upper(vec({"0": 1, "1": 1})) == (2, 4)


def test_sandwich_random():
    for i in range(100):
        rng = substream(31415, i)
        x = random_vector(rng)
        lo, hi = norm_lower_upper(x)
        v = jt_norm(x).value_squared
        assert lo <= v <= hi


def test_homogeneity_exact():
    for i in range(60):
        rng = substream(2718, i)
        x = random_vector(rng)
        c = Fraction(rng.randint(-6, 6), rng.randint(1, 5))
        assert jt_norm(x.scale(c)).value_squared == c * c * jt_norm(x).value_squared


def test_triangle_inequality_float():
    for i in range(60):
        rng = substream(1618, i)
        x = random_vector(rng)
        y = random_vector(rng)
        nx = math.sqrt(float(jt_norm(x).value_squared))
        ny = math.sqrt(float(jt_norm(y).value_squared))
        nxy = math.sqrt(float(jt_norm(x + y).value_squared))
        assert nxy <= nx + ny + 1e-12


def test_monotone_basis_prefixes():
    for i in range(80):
        rng = substream(888, i)
        x = random_vector(rng)
        n = rng.randint(0, 80)
        a = jt_norm(x.partial_sum(n)).value_squared
        b = jt_norm(x.partial_sum(n + 1)).value_squared
        assert a <= b


def test_super_additivity():
    for i in range(80):
        rng = substream(999, i)
        x = random_vector(rng)
        k = rng.randint(0, 96)
        s = x.partial_sum(k)
        assert (
            jt_norm(s).value_squared + jt_norm(x - s).value_squared
            <= jt_norm(x).value_squared
        )


def test_float_backend_end_to_end():
    x = vec({"": 1.0, "0": -0.5, "11": 2.0}, FLOAT)
    w = jt_norm(x)
    lo, hi = norm_lower_upper(x)
    assert lo <= w.value_squared <= hi
    assert w.value == math.sqrt(w.value_squared)
