import pytest

from gridpins import DomainError
from gridpins.verify import SUITES, run_suite, sample_simple_hosts


def test_all_suites_registered():
    assert set(SUITES) == {
        "decomposition",
        "pins",
        "turns",
        "intervals",
        "slicing",
        "corners",
        "extensions",
    }


def test_unknown_suite():
    with pytest.raises(DomainError):
        run_suite("frobnicate")


def test_decomposition_suite_small():
    (res,) = run_suite("decomposition", max_len=6)
    assert res.ok and res.checked == 2 + 6 + 24 + 120 + 720


def test_pins_suite_small():
    results = run_suite("pins", max_len=5)
    assert all(r.ok for r in results)


def test_parallel_chunks_agree():
    (seq,) = run_suite("slicing", max_len=6)
    (par,) = run_suite("slicing", max_len=6, jobs=2)
    assert seq.checked == par.checked and par.ok


def test_sampled_hosts_are_deterministic():
    a = sample_simple_hosts(7, 20)
    b = sample_simple_hosts(7, 20)
    assert a == b and len(a) == 20


def test_turns_suite_small():
    (res,) = run_suite("turns", max_len=7)
    assert res.ok and res.checked == 2 * (1 + 4 * (2**7 - 1))


def test_extensions_suite_small():
    results = run_suite("extensions", max_len=9)
    assert all(r.ok for r in results)
