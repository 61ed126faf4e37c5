import math

import pytest
from hypothesis import given, strategies as st

from segspectral import CorpusEncodingError, NGramModel, ingest_corpus, iter_corpus_lines


def test_basic_counts():
    m = ingest_corpus(["天安门", "天安门", "天门"])
    assert m.uni == {"天": 3, "安": 2, "门": 3}
    assert m.bi == {"天安": 2, "安门": 2, "天门": 1}
    assert m.tri == {"天安门": 2}
    assert m.total_uni == 8


def test_non_chinese_breaks_ngrams():
    m = ingest_corpus(["天安门a广场"])
    assert "门a" not in m.bi and "a广" not in m.bi
    assert "a" not in m.uni
    assert m.bi == {"天安": 1, "安门": 1, "广场": 1}
    assert m.tri == {"天安门": 1}


def test_ngrams_do_not_span_lines():
    m = ingest_corpus(["天安", "门墙"])
    assert m.bi == {"天安": 1, "门墙": 1}
    assert m.tri == {}


def test_transition_probabilities():
    m = ingest_corpus(["天安门", "天安门", "天门"])
    assert m.p_next_uni("天", "安") == pytest.approx(2 / 3)
    assert m.p_next_uni("天", "门") == pytest.approx(1 / 3)
    assert m.p_next_bi("天", "安", "门") == pytest.approx(1.0)
    assert m.p_prev_bi("天", "安", "门") == pytest.approx(1.0)
    assert m.p_next_two("天", "安", "门") == pytest.approx(2 / 3)


def test_unseen_and_other_class_probabilities_are_zero():
    m = ingest_corpus(["天安门"])
    assert m.p_next_uni("安", "天") == 0.0
    assert m.p_next_uni("a", "天") == 0.0
    assert m.p_next_uni("天", "a") == 0.0
    assert m.p_next_bi("a", "天", "安") == 0.0
    assert m.p_prev_bi("天", "安", "5") == 0.0
    assert m.p_next_two("天", "安", ",") == 0.0
    assert m.p_next_uni("虎", "豹") == 0.0  # both unseen


def test_sd_count_standardization():
    # Distinct bigram counts 4, 2, 1 -> ln counts {ln4, ln2, 0} with
    # population sd ln2*sqrt(2/3); the standardized count-4 value is sqrt(6).
    m = ingest_corpus(["天安"] * 4 + ["地门"] * 2 + ["人口"])
    assert m.log_sd_bi == pytest.approx(math.log(2) * math.sqrt(2 / 3), rel=1e-12)
    assert m.sd_count_bi("天安") == pytest.approx(math.sqrt(6), rel=1e-12)
    assert m.sd_count_bi("人口") == 0.0  # ln 1
    assert m.sd_count_bi("虎豹") == 0.0  # absent


def test_sd_falls_back_to_one_when_degenerate():
    same = ingest_corpus(["天安门", "天安门"])
    assert same.log_sd_bi == 1.0  # two keys, equal counts
    assert same.log_sd_tri == 1.0  # single key
    assert same.sd_count_bi("天安") == pytest.approx(math.log(2))
    empty = ingest_corpus([])
    assert empty.log_sd_bi == 1.0 and empty.log_sd_tri == 1.0


def test_meta():
    m = ingest_corpus(["天", "", "安"], source="toy")
    assert m.meta.source == "toy"
    assert m.meta.line_count == 3


def test_default_model_is_empty():
    m = NGramModel()
    assert m.p_next_uni("天", "安") == 0.0
    assert m.sd_count_bi("天安") == 0.0
    assert m.total_uni == 0


@given(st.lists(st.text(alphabet="天安门广场和的", max_size=8), max_size=6))
def test_count_consistency(lines):
    m = ingest_corpus(lines)
    assert m.total_uni == sum(len(line) for line in lines)
    assert sum(m.bi.values()) == sum(max(len(line) - 1, 0) for line in lines)
    assert sum(m.tri.values()) == sum(max(len(line) - 2, 0) for line in lines)
    assert all(m.uni[k[:1]] >= 1 for k in m.bi)


def test_iter_corpus_lines(tmp_path):
    p = tmp_path / "corpus.txt"
    p.write_bytes("天安门\r\n广场\n最后".encode("utf-8"))
    assert list(iter_corpus_lines(p)) == ["天安门", "广场", "最后"]


def test_iter_corpus_lines_reports_byte_offset(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_bytes("天\n".encode("utf-8") + b"\xffrest\n")  # first line is 4 bytes
    with pytest.raises(CorpusEncodingError, match="byte offset 4"):
        list(iter_corpus_lines(p))
