import random

import pytest

from gridpins import (
    DomainError,
    Permutation,
    apply_symmetry,
    contains,
    inverse,
    is_simple,
    parse_permutation,
    rect_hull,
    restrict,
    reverse,
)
from gridpins.perm import PATTERN_21_SYMMETRIES, iter_permutations
from gridpins.structures import (
    PARALLEL_SAWTOOTH,
    SKEW12,
    SUM21,
    WEDGE_SAWTOOTH,
    detect,
    erdos_szekeres_extremal_length,
    gen_increasing_oscillation,
    gen_monotone_sum,
    gen_parallel_sawtooth,
    gen_sliced_wedge,
    gen_wedge_sawtooth,
    longest_skew12,
    longest_sum21,
    max_increasing_oscillation,
    max_sawtooth,
    max_sliced_wedge,
    rho,
    sawtooth_classes,
    skew_of_12s,
    sum_of_21s,
)


def P(text):
    return parse_permutation(text)


# --- generators ---------------------------------------------------------------


def test_monotone_sums():
    assert gen_monotone_sum(SUM21, 2) == P("2143")
    assert gen_monotone_sum(SKEW12, 2) == P("3412")
    assert gen_monotone_sum(SUM21, 1) == P("21")
    with pytest.raises(DomainError):
        gen_monotone_sum(SUM21, 0)


def test_sawtooth_golden_instances():
    assert gen_parallel_sawtooth(4) == P("6 1 5 8 2 7 10 3 9 12 4 11")
    assert gen_wedge_sawtooth(4) == P("6 4 5 8 3 7 10 2 9 12 1 11")
    assert gen_sliced_wedge(4, 1) == P("6 1 5 8 4 7 10 3 9 12 2 11")
    assert gen_sliced_wedge(4, 2) == P("6 4 8 3 7 10 2 9 12 1 11 5")
    assert gen_sliced_wedge(4, 3) == P("5 12 4 7 3 6 9 2 8 11 1 10")


def test_parallel_sawtooth_smallest():
    assert gen_parallel_sawtooth(1) == P("312")


def test_wedge_head_is_312():
    w = gen_wedge_sawtooth(4)
    head = restrict(w, rect_hull([(i, w[i - 1]) for i in (1, 2, 3)]))
    assert head == P("312")


def test_simplicity_claims_small():
    for m in range(2, 9):
        assert is_simple(gen_parallel_sawtooth(m))
        assert not is_simple(gen_wedge_sawtooth(m))
        for t in (1, 2, 3):
            assert is_simple(gen_sliced_wedge(m, t))


def test_oscillation_golden():
    assert gen_increasing_oscillation(12, 1) == P("2 4 1 6 3 8 5 10 7 12 9 11")
    assert gen_increasing_oscillation(4, 1) == P("2413")
    for n in range(3, 14):
        assert gen_increasing_oscillation(n, 2) == inverse(gen_increasing_oscillation(n, 1))
    with pytest.raises(DomainError):
        gen_increasing_oscillation(2, 1)


def test_generator_param_errors():
    for bad in (
        lambda: gen_parallel_sawtooth(0),
        lambda: gen_wedge_sawtooth(-1),
        lambda: gen_sliced_wedge(1, 1),
        lambda: gen_sliced_wedge(3, 4),
    ):
        with pytest.raises(DomainError) as exc:
            bad()
        assert exc.value.code == "PARAM"


def test_nesting():
    for m in range(1, 9):
        assert contains(gen_parallel_sawtooth(m + 1), gen_parallel_sawtooth(m))
        assert contains(gen_wedge_sawtooth(m + 1), gen_wedge_sawtooth(m))
    for m in range(2, 9):
        for t in (1, 2, 3):
            assert contains(gen_sliced_wedge(m + 1, t), gen_sliced_wedge(m, t))
    for n in range(3, 13):
        assert contains(gen_increasing_oscillation(n + 1, 1), gen_increasing_oscillation(n, 1))


# --- detectors ----------------------------------------------------------------


def brute_longest_sum21(p):
    k = 0
    while contains(p, sum_of_21s(k + 1)):
        k += 1
    return k


def test_longest_sum21_examples():
    for k in range(1, 7):
        assert longest_sum21(sum_of_21s(k)) == k
    assert longest_sum21(P("54321")) == 1
    assert longest_sum21(gen_parallel_sawtooth(4)) == 4


def test_longest_sum21_matches_oracle_exhaustive():
    for n in range(1, 7):
        for p in iter_permutations(n):
            assert longest_sum21(p) == brute_longest_sum21(p)


def test_longest_sum21_matches_oracle_random():
    rng = random.Random(17)
    for _ in range(1000):
        n = rng.randint(1, 12)
        p = Permutation(rng.sample(range(1, n + 1), n))
        assert longest_sum21(p) == brute_longest_sum21(p)


def test_longest_skew12_is_reversed_sum():
    rng = random.Random(23)
    for _ in range(300):
        n = rng.randint(1, 10)
        p = Permutation(rng.sample(range(1, n + 1), n))
        assert longest_skew12(p) == longest_sum21(reverse(p))
    assert longest_skew12(skew_of_12s(4)) == 4


def test_longest_sum21_witness():
    k, wit = longest_sum21(gen_parallel_sawtooth(3), with_witness=True)
    assert k == 3 and len(wit) == 6
    from gridpins.perm import flatten

    assert flatten(gen_parallel_sawtooth(3)[i - 1] for i in wit) == sum_of_21s(3)


def test_max_sawtooth_examples():
    p4 = gen_parallel_sawtooth(4)
    assert max_sawtooth(p4, PARALLEL_SAWTOOTH) == 4
    assert max_sawtooth(P("12"), PARALLEL_SAWTOOTH) == 0
    assert max_sawtooth(P("12"), WEDGE_SAWTOOTH) == 0
    # cross-detection agrees with direct containment search
    m = 0
    while contains(p4, gen_wedge_sawtooth(m + 1)):
        m += 1
    assert max_sawtooth(p4, WEDGE_SAWTOOTH) == m


def test_max_sliced_wedge_detects_itself():
    for t in (1, 2, 3):
        assert max_sliced_wedge(gen_sliced_wedge(3, t), t) == 3


def test_max_oscillation_examples():
    assert max_increasing_oscillation(gen_increasing_oscillation(12, 1)) == 12
    assert max_increasing_oscillation(P("2413")) == 4
    assert max_increasing_oscillation(P("321")) == 0


def test_detect_returns_witness():
    m, wit = detect(gen_parallel_sawtooth(4), PARALLEL_SAWTOOTH)
    assert m == 4 and len(wit) == 12
    k, wit = detect(P("2143"), SUM21)
    assert k == 2 and len(wit) == 4


# --- rho -----------------------------------------------------------------------


def test_rho_examples():
    assert rho(P("12")) == 0
    p4 = gen_parallel_sawtooth(4)
    assert max_sawtooth(p4, PARALLEL_SAWTOOTH, "id") == 4  # contributes 12 to rho
    assert rho(p4) >= 12
    assert len(sawtooth_classes()) == 8


def test_rho_invariant_under_21_preserving_symmetries():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(3, 7)
        p = Permutation(rng.sample(range(1, n + 1), n))
        base = rho(p)
        for g in PATTERN_21_SYMMETRIES:
            assert rho(apply_symmetry(p, g)) == base


# --- monotone subsequence support check ----------------------------------------


def test_erdos_szekeres_extremal():
    for m in range(2, 5):
        assert erdos_szekeres_extremal_length(m) == (m - 1) ** 2
