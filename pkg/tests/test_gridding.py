import json

import pytest

from gridpins import (
    ClassSpec,
    DomainError,
    Permutation,
    contains,
    inverse,
    parse_permutation,
)
from gridpins.gridding import (
    bound_f,
    bound_g,
    bound_h,
    bound_rect,
    criterion_scan,
    enumerate_class,
    find_monotone_gridding,
    obstruction_scan,
    verify_gridding,
)
from gridpins.perm import iter_permutations
from gridpins.structures import longest_sum21, sum_of_21s


def P(text):
    return parse_permutation(text)


# --- gridding -------------------------------------------------------------------


def test_gridding_examples():
    g = find_monotone_gridding(P("2143"), 0, 1)
    assert g is not None and g.v_cuts == (2.5,)
    assert g.labels[(0, 0)] == "dec" and g.labels[(0, 1)] == "dec"
    for k in range(1, 7):
        assert find_monotone_gridding(sum_of_21s(k), 0, k - 1) is not None
    assert find_monotone_gridding(sum_of_21s(5), 0, 1) is None


def test_gridding_soundness():
    for n in range(1, 6):
        for p in iter_permutations(n):
            for h in range(3):
                for v in range(3 - h):
                    g = find_monotone_gridding(p, h, v)
                    if g is not None:
                        assert verify_gridding(p, g)


def test_gridding_monotone_in_budget():
    for n in range(2, 8):
        for p in iter_permutations(n):
            for h in range(4):
                for v in range(4 - h):
                    if find_monotone_gridding(p, h, v) is not None:
                        assert find_monotone_gridding(p, h + 1, v) is not None
                        assert find_monotone_gridding(p, h, v + 1) is not None


def test_gridding_transpose_symmetry():
    for n in range(2, 7):
        for p in iter_permutations(n):
            for h in range(3):
                for v in range(3):
                    a = find_monotone_gridding(p, h, v) is not None
                    b = find_monotone_gridding(inverse(p), v, h) is not None
                    assert a == b


def test_long_sums_need_many_lines():
    # a permutation whose longest sum of 21s has k teeth cannot be gridded
    # with 2(h+v)+1 < k lines
    for n in range(2, 8):
        for p in iter_permutations(n):
            k = longest_sum21(p)
            for h in range(3):
                for v in range(3):
                    if 2 * (h + v) + 1 < k:
                        assert find_monotone_gridding(p, h, v) is None


# --- class enumeration -------------------------------------------------------------


def test_enumerate_class_examples():
    assert [str(p) for p in enumerate_class(ClassSpec.from_text("21"), 4)[4]] == ["1 2 3 4"]
    assert enumerate_class(ClassSpec.from_text("12;21"), 2)[2] == []
    by_len = enumerate_class(ClassSpec.from_text("123"), 5)
    brute = [p for p in iter_permutations(5) if not contains(p, P("123"))]
    assert sorted(by_len[5]) == sorted(brute)


def test_enumerate_class_debug_check():
    by_len = enumerate_class(ClassSpec.from_text("321;2143"), 5, debug_check=True)
    brute = [
        p
        for p in iter_permutations(5)
        if not contains(p, P("321")) and not contains(p, P("2143"))
    ]
    assert sorted(by_len[5]) == sorted(brute)


def test_basis_normalization():
    spec = ClassSpec.from_text("321;3214;21")
    # 3214 contains 321, and 321 contains 21: only 21 survives
    assert spec.basis == (P("21"),)
    with pytest.raises(DomainError):
        ClassSpec.from_text("")


def test_enumeration_cache_round_trip(tmp_path):
    spec = ClassSpec.from_text("123")
    first = enumerate_class(spec, 5, cache_dir=str(tmp_path))
    again = enumerate_class(spec, 5, cache_dir=str(tmp_path))
    assert first == again
    files = list(tmp_path.rglob("len_*.txt"))
    assert len(files) == 5


# --- scans -------------------------------------------------------------------------


def test_criterion_scan_values():
    rep = criterion_scan(ClassSpec.from_text("123"), 8)
    assert [r.max_skew12 for r in rep.rows] == [n // 2 for n in range(1, 9)]
    assert all(r.max_sum21 <= 2 for r in rep.rows)
    assert rep.rows[-1].skew12_witness
    rep21 = criterion_scan(ClassSpec.from_text("21"), 8)
    assert all(r.max_sum21 == 0 and r.max_skew12 <= 1 for r in rep21.rows)


def test_scan_maxima_nondecreasing():
    rep = criterion_scan(ClassSpec.from_text("321"), 7)
    sums = [r.max_sum21 for r in rep.rows]
    skews = [r.max_skew12 for r in rep.rows]
    assert sums == sorted(sums) and skews == sorted(skews)


def test_obstruction_scan_report(tmp_path):
    rep = obstruction_scan(ClassSpec.from_text("123"), 6, pin_budget=8)
    last = rep.rows[-1].obstructions
    assert set(last) >= {
        "parallel_sawtooth",
        "sliced_wedge_1",
        "sliced_wedge_2",
        "sliced_wedge_3",
        "max_turns",
        "max_extensions",
    }
    out = tmp_path / "report.json"
    rep.write(str(out))
    data = json.loads(out.read_text())
    assert data["basis"] == ["123"]
    assert [row["n"] for row in data["lengths"]] == list(range(1, 7))
    row = data["lengths"][-1]
    assert {"n", "members", "simples", "max_sum21", "max_skew12", "obstructions"} <= set(row)


def test_obstruction_scan_sees_a_sawtooth():
    # a class containing the length-6 parallel sawtooth among its simples
    rep = obstruction_scan(ClassSpec.from_text("654321"), 6, pin_budget=6)
    assert rep.rows[-1].obstructions["parallel_sawtooth"]["max"] >= 2


# --- bounds ----------------------------------------------------------------------


def test_bound_examples():
    assert bound_g(2, 7) == 2
    assert bound_g(3, 99) == 2
    assert bound_g(17, 1) == 2
    assert bound_h(2, 2, 2) == 60
    assert bound_g(4, 2) == 7 * (32**32 * 2) + 1
    assert bound_rect(1, 1) == 8**8
    assert bound_rect(2, 1) == 2 * 8**8


def test_bound_f_matches_g():
    for n in range(1, 5):
        assert bound_f(n) == bound_g(n, 8 * n)


def test_bound_param_errors():
    for bad in (
        lambda: bound_g(0, 1),
        lambda: bound_g(1, -2),
        lambda: bound_f(0),
        lambda: bound_h(1, 0, 1),
        lambda: bound_rect(-1, 1),
    ):
        with pytest.raises(DomainError) as exc:
            bad()
        assert exc.value.code == "PARAM"
