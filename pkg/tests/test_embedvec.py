"""Vector store loading, document embedding, and cosine similarity."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rulebridge import DataFormatError, VectorStore, cosine, embed, tokenize

finite_vectors = st.lists(
    st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False),
    min_size=4,
    max_size=4,
).map(lambda xs: np.array(xs, dtype=np.float64))


class TestTokenize:
    def test_lowercases_and_splits(self):
        assert tokenize("A C Turned OFF") == ["a", "c", "turned", "off"]

    def test_drops_punctuation(self):
        assert tokenize("new-feed item, matches!") == ["new", "feed", "item", "matches"]

    def test_keeps_digits(self):
        assert tokenize("co2 level 10") == ["co2", "level", "10"]

    def test_empty(self):
        assert tokenize("...") == []


class TestVectorStoreLoad:
    def test_fixture_store(self, vector_store):
        assert vector_store.dimension == 16
        assert vector_store.get("turned") is not None
        assert vector_store.get("TURNED") is not None  # lookup is case-folded

    def test_headerless_file(self, tmp_path):
        path = tmp_path / "vecs.txt"
        path.write_text("foo 1.0 0.0\nbar 0.0 1.0\n", encoding="utf-8")
        store = VectorStore.load(path)
        assert store.dimension == 2
        assert np.allclose(store.get("foo"), [1.0, 0.0])

    def test_header_file(self, tmp_path):
        path = tmp_path / "vecs.txt"
        path.write_text("2 3\nfoo 1 2 3\nbar 4 5 6\n", encoding="utf-8")
        store = VectorStore.load(path)
        assert store.dimension == 3

    def test_duplicate_token_last_wins(self, tmp_path):
        path = tmp_path / "vecs.txt"
        path.write_text("foo 1.0 0.0\nfoo 0.0 2.0\n", encoding="utf-8")
        store = VectorStore.load(path)
        assert np.allclose(store.get("foo"), [0.0, 2.0])

    def test_dimension_mismatch(self, tmp_path):
        path = tmp_path / "vecs.txt"
        path.write_text("foo 1.0 0.0\nbar 1.0\n", encoding="utf-8")
        with pytest.raises(DataFormatError, match="dimension"):
            VectorStore.load(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataFormatError, match="not found"):
            VectorStore.load(tmp_path / "nope.txt")


class TestEmbed:
    def test_coverage_counts(self, vector_store):
        doc = embed("turned off zzzunknown", vector_store)
        assert doc.total_tokens == 3
        assert doc.covered_tokens == 2
        assert not doc.degenerate

    def test_mean_of_token_vectors(self, tmp_path):
        path = tmp_path / "vecs.txt"
        path.write_text("foo 2.0 0.0\nbar 0.0 4.0\n", encoding="utf-8")
        store = VectorStore.load(path)
        doc = embed("foo bar", store)
        assert np.allclose(doc.vector, [1.0, 2.0])

    def test_no_coverage_is_degenerate_zero(self, vector_store):
        doc = embed("zzz qqq", vector_store)
        assert doc.degenerate
        assert not doc.vector.any()

    def test_out_of_vocab_tokens_ignored(self, tmp_path):
        path = tmp_path / "vecs.txt"
        path.write_text("foo 2.0 0.0\n", encoding="utf-8")
        store = VectorStore.load(path)
        doc = embed("foo zzz", store)
        assert np.allclose(doc.vector, [2.0, 0.0])


class TestCosine:
    def test_known_value(self):
        # unit vector against its 45-degree neighbour
        a = np.array([1.0, 0.0])
        b = np.array([1.0, 1.0])
        assert cosine(a, b) == pytest.approx(0.7071067811865475, abs=1e-12)

    def test_identical_vectors(self):
        a = np.array([3.0, 4.0])
        assert cosine(a, a) == pytest.approx(1.0, abs=1e-12)

    def test_zero_norm_side_gives_zero(self):
        a = np.zeros(2)
        b = np.array([1.0, 2.0])
        assert cosine(a, b) == 0.0
        assert cosine(b, a) == 0.0

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            cosine(np.zeros(2), np.zeros(3))

    @given(finite_vectors, finite_vectors)
    def test_symmetry(self, a, b):
        assert cosine(a, b) == pytest.approx(cosine(b, a), abs=1e-12)

    @given(finite_vectors, finite_vectors, st.floats(min_value=1e-3, max_value=1e3))
    def test_positive_scale_invariance(self, a, b, k):
        assert cosine(a, k * b) == pytest.approx(cosine(a, b), abs=1e-9)

    @given(finite_vectors, finite_vectors)
    def test_bounded(self, a, b):
        assert abs(cosine(a, b)) <= 1.0 + 1e-9


class TestEmbedProperties:
    @settings(max_examples=50)
    @given(tokens=st.permutations(["turned", "off", "device", "door", "message"]))
    def test_token_order_does_not_change_meaning(self, vector_store, tokens):
        base = embed(" ".join(["turned", "off", "device", "door", "message"]), vector_store)
        permuted = embed(" ".join(tokens), vector_store)
        assert cosine(base.vector, permuted.vector) == pytest.approx(1.0, abs=1e-9)
        assert permuted.covered_tokens == base.covered_tokens
