from pathlib import Path

import pytest

from surfmld.cli import run_command
from surfmld.corpus import generate_corpus
from surfmld.parse import format_rideal, parse_rideal
from surfmld.tower import log_resolve, mld_from_tower
from surfmld.weighted import mld_weighted

GOLDEN = Path(__file__).parent / "data" / "corpus_seed0_count1.txt"


def test_deterministic():
    first = [p.source_text for p in generate_corpus(7, 12)]
    assert first == [p.source_text for p in generate_corpus(7, 12)]
    assert first != [p.source_text for p in generate_corpus(8, 12)]
    assert [p.source_text for p in generate_corpus(7, 5)] == first[:5]


def test_members_resolve_and_agree():
    for p in generate_corpus(11, 25):
        assert format_rideal(parse_rideal(p.source_text)) == p.source_text
        cert = mld_weighted(p.rideal)
        assert not cert.nonsplit
        assert cert.value == mld_from_tower(log_resolve(p.rideal))


def test_count_must_be_positive():
    with pytest.raises(ValueError):
        generate_corpus(0, 0)


def test_golden_report():
    code, out = run_command(["corpus", "--seed", "0", "--count", "1"])
    assert code == 0
    assert out == GOLDEN.read_text()
