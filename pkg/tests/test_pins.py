import itertools

import pytest

from gridpins import (
    DomainError,
    Permutation,
    contains,
    is_simple,
    parse_permutation,
)
from gridpins.perm import flatten_points, simple_permutations
from gridpins.pins import (
    ExtensionRecord,
    InvalidPinSequence,
    PinWord,
    build_extended_spiral,
    check_pinseq_properties,
    classify_spiral,
    count_turns,
    extension_count,
    find_extensions,
    gen_spiral,
    gen_spiral_with_extensions,
    iter_pin_sequences,
    iter_pin_words,
    pin_violation,
    realize_pin_word,
    right_reaching,
    validate_pin_sequence,
)


def P(text):
    return parse_permutation(text)


# --- validation ----------------------------------------------------------------


def test_validate_accepts_oscillation_walk():
    seq = validate_pin_sequence(P("2413"), (1, 3, 2, 4))
    assert seq.directions == (None, None, "U", "R")


def test_slicing_violation():
    v = pin_violation(P("2143"), (1, 2, 4))
    assert v is not None and v.clause == "SLICING" and v.index == 3
    with pytest.raises(InvalidPinSequence):
        validate_pin_sequence(P("2143"), (1, 2, 4))


def test_maximality_violation():
    # in 265134 the point (3,5) slices rect((4,1),(1,2)) but (2,6) lies above
    v = pin_violation(P("265134"), (4, 1, 3))
    assert v is not None and v.clause == "MAXIMALITY" and v.index == 3


def test_separation_violation_exists():
    found = None
    for host in simple_permutations(5) + simple_permutations(6):
        n = len(host)
        for idxs in itertools.permutations(range(1, n + 1), 4):
            v = pin_violation(host, idxs)
            if v is not None and v.clause == "SEPARATION":
                found = (host, idxs, v)
                break
        if found:
            break
    assert found is not None
    assert found[2].index == 4


def test_validate_preconditions():
    with pytest.raises(DomainError):
        pin_violation(P("2413"), (2,))
    with pytest.raises(DomainError):
        pin_violation(P("2413"), (2, 2))


# --- enumeration ----------------------------------------------------------------


def naive_sequences(host, p1=None, p2=None, max_len=None):
    n = len(host)
    limit = n if max_len is None else min(max_len, n)
    out = set()
    for k in range(2, limit + 1):
        for idxs in itertools.permutations(range(1, n + 1), k):
            if p1 is not None and (idxs[0] != p1 or idxs[1] != p2):
                continue
            if pin_violation(host, idxs) is None:
                out.add(idxs)
    return out


def test_enumerate_on_21():
    host = P("21")
    assert {s.indices for s in iter_pin_sequences(host, 1, 2)} == {(1, 2)}


def test_enumerate_matches_naive_filter():
    for n in range(2, 6):
        for host in simple_permutations(n):
            got = {s.indices for s in iter_pin_sequences(host)}
            assert got == naive_sequences(host)


def test_enumerate_start_pair_and_max_len():
    host = P("2413")
    got = {s.indices for s in iter_pin_sequences(host, 1, 2, max_len=3)}
    assert got == naive_sequences(host, 1, 2, max_len=3)
    assert all(s.indices[:2] == (1, 2) for s in iter_pin_sequences(host, 1, 2))


def test_every_enumerated_sequence_validates():
    for host in simple_permutations(5):
        for seq in iter_pin_sequences(host):
            assert pin_violation(host, seq.indices) is None


# --- right-reaching ---------------------------------------------------------------


def test_right_reaching_examples():
    seq = right_reaching(P("2413"), 1, 2)
    assert seq.indices[-1] == 4
    seq = right_reaching(P("21"), 1, 2)
    assert seq.indices == (1, 2)
    with pytest.raises(DomainError) as exc:
        right_reaching(P("2413"), 4, 1)
    assert exc.value.code == "PARAM"


def test_right_reaching_is_shortest():
    for host in simple_permutations(5):
        n = len(host)
        for p1 in range(1, n):
            for p2 in range(1, n + 1):
                if p1 == p2:
                    continue
                seq = right_reaching(host, p1, p2)
                best = min(
                    len(s)
                    for s in iter_pin_sequences(host, p1, p2)
                    if s.indices[-1] == n
                )
                assert len(seq) == best


# --- turns and spirals ---------------------------------------------------------------


def test_count_turns_oscillation():
    seq = realize_pin_word(PinWord("21", "URURURURUR"))
    assert count_turns(seq) == 8


def test_short_sequences_have_no_turns():
    for host in simple_permutations(4):
        for seq in iter_pin_sequences(host, max_len=4):
            assert count_turns(seq) == 0


def test_classify_spiral():
    cw = realize_pin_word(PinWord("12", "LURDLU"))
    info = classify_spiral(cw)
    assert info.is_spiral and info.chirality == "cw" and info.phase == "L"
    ccw = realize_pin_word(PinWord("12", "LDRULD"))
    info = classify_spiral(ccw)
    assert info.is_spiral and info.chirality == "ccw"
    osc = realize_pin_word(PinWord("21", "URUR"))
    assert not classify_spiral(osc).is_spiral


# --- pin words ---------------------------------------------------------------


def test_realize_examples():
    assert realize_pin_word(PinWord("21", "UR")).host == P("2413")
    assert realize_pin_word(PinWord("21", "URURURURUR")).host == P("2 4 1 6 3 8 5 10 7 12 9 11")
    assert realize_pin_word(PinWord("12", "")).host == P("12")


def test_bad_words_rejected():
    for start, dirs in (("12", "UU"), ("12", "UD"), ("21", "LR"), ("13", "U"), ("12", "UX")):
        with pytest.raises(DomainError) as exc:
            realize_pin_word(PinWord(start, dirs))
        assert exc.value.code == "BAD_WORD"


def test_realizations_validate_in_their_own_host():
    for word in iter_pin_words(8):
        seq = realize_pin_word(word)
        v = pin_violation(seq.host, seq.indices)
        assert v is None, (word, v)
        assert seq.directions[2:] == tuple(word.directions)


def test_pin_word_count():
    words = list(iter_pin_words(4))
    assert len(words) == 2 * (1 + 4 * (2**4 - 1))


def test_properties_on_oscillation_realization():
    seq = realize_pin_word(PinWord("21", "URURUR"))
    props = check_pinseq_properties(seq)
    assert all(props.values())


def test_properties_vacuous_for_pairs():
    seq = validate_pin_sequence(P("21"), (1, 2))
    assert all(check_pinseq_properties(seq).values())


def test_four_pin_simplicity_boundary():
    # the simplicity clause genuinely needs >= 5 pins: this proper 4-pin
    # sequence flattens to 1342 and its 3-point subsets cannot be simple
    host = P("24153")
    seq = validate_pin_sequence(host, (1, 2, 5, 4))
    props = check_pinseq_properties(seq)
    assert props["a"] and props["b"] and props["c"]
    assert not props["d"]


# --- spirals with extensions ---------------------------------------------------------


def test_extended_spiral_goldens():
    assert gen_spiral_with_extensions("cw", 10, [(4, 1, "both"), (8, 1, "next")]) == P(
        "2 4 12 5 8 6 9 3 7 11 1 10"
    )
    assert gen_spiral_with_extensions("cw", 9, [(8, 2, "below")]) == P(
        "4 12 5 8 6 3 7 10 2 9 1 11"
    )


def test_find_extensions_on_goldens():
    ext = build_extended_spiral("cw", 10, [(4, 1, "both"), (8, 1, "next")])
    recs = find_extensions(ext.host, ext.pins)
    assert ExtensionRecord(4, 1, (7,)) in recs
    assert ExtensionRecord(8, 1, (10,)) in recs
    assert all(r.ext_type == 1 for r in recs)
    assert extension_count(recs) == 2
    ext2 = build_extended_spiral("cw", 9, [(8, 2, "below")])
    recs2 = find_extensions(ext2.host, ext2.pins)
    assert recs2 == [ExtensionRecord(8, 2, (8, 9, 10), "next")]
    assert extension_count(recs2) == 1


def test_drawn_pin_sequences_validate():
    # the pin walks of the two extended-spiral reference plots, entered by
    # their drawn plot positions rather than generated
    host1 = P("2 4 12 5 8 6 9 3 7 11 1 10")
    seq1 = validate_pin_sequence(host1, (4, 6, 5, 9, 8, 2, 3, 12, 11, 1))
    assert seq1.directions[2:] == ("U", "R", "D", "L", "U", "R", "D", "L")
    recs = find_extensions(host1, seq1)
    assert ExtensionRecord(4, 1, (7,)) in recs
    assert ExtensionRecord(8, 1, (10,)) in recs
    assert extension_count(recs) == 2

    host2 = P("4 12 5 8 6 3 7 10 2 9 1 11")
    seq2 = validate_pin_sequence(host2, (3, 5, 4, 7, 6, 1, 2, 12, 11))
    assert seq2.directions[2:] == ("U", "R", "D", "L", "U", "R", "D")
    recs2 = find_extensions(host2, seq2)
    assert recs2 == [ExtensionRecord(8, 2, (8, 9, 10), "next")]


def test_bare_spiral_has_no_extensions():
    sp = gen_spiral(10, "cw")
    assert find_extensions(sp.host, sp) == []


def test_find_extensions_needs_a_spiral():
    osc = realize_pin_word(PinWord("21", "URUR"))
    with pytest.raises(DomainError) as exc:
        find_extensions(osc.host, osc)
    assert exc.value.code == "PARAM"


def test_find_extensions_mirrored_chirality():
    cw = build_extended_spiral("cw", 10, [(4, 1, "both"), (8, 1, "next")])
    ccw = build_extended_spiral("ccw", 10, [(4, 1, "both"), (8, 1, "next")])
    recs = find_extensions(ccw.host, ccw.pins)
    # same extended pins as the clockwise instance, mirrored coordinates
    assert {r.pin for r in ccw.extensions} == {4, 8}
    for want in ccw.extensions:
        assert want in recs
    assert extension_count(recs) == extension_count(find_extensions(cw.host, cw.pins))


def test_generated_extensions_are_recovered():
    for chir in ("cw", "ccw"):
        for length, spec in (
            (11, [(5, 1, "next")]),
            (11, [(6, 1, "next"), (9, 2, "below")]),
            (12, [(4, 1, "next"), (6, 1, "both"), (8, 2, "below")]),
        ):
            ext = build_extended_spiral(chir, length, spec)
            assert is_simple(ext.host)
            recs = find_extensions(ext.host, ext.pins)
            for want in ext.extensions:
                assert want in recs
            assert extension_count(recs) >= len(spec)


def test_extension_placement_errors():
    for bad in (
        [(4, 1, "both"), (4, 2, "below")],  # duplicate pin
        [(4, 1, "both"), (5, 1, "both")],  # spacing < 2
        [(3, 1, "both")],  # pin too early
        [(10, 2, "below")],  # type 2 needs a following pin
        [(10, 1, "next")],
        [(4, 2, "beside")],  # degenerate spot: triple sliced by only one pin
    ):
        with pytest.raises(DomainError) as exc:
            build_extended_spiral("cw", 10, bad)
        assert exc.value.code == "PLACEMENT"


def test_ccw_extended_spirals_mirror_cw():
    # legality and output mirror exactly, so clockwise coverage transfers
    from gridpins.perm import reverse
    from gridpins.verify import iter_extension_specs

    for length in (7, 10):
        for spec in iter_extension_specs(length, (1, 2)):
            try:
                cw = build_extended_spiral("cw", length, spec)
            except DomainError:
                cw = None
            try:
                ccw = build_extended_spiral("ccw", length, spec)
            except DomainError:
                ccw = None
            assert (cw is None) == (ccw is None), spec
            if cw is not None:
                assert reverse(cw.host) == ccw.host, spec


def test_spiral_avoids_3412_and_2143():
    for length in range(4, 15):
        sp = gen_spiral(length, "cw")
        assert not contains(sp.host, P("3412"))
        assert not contains(sp.host, P("2143"))
