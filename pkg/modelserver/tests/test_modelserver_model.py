"""Model-level behavior: triple validity, identity dominance, determinism,
and weights-file validation."""

from __future__ import annotations

import json
import random

import pytest

from entailserver import LexicalNliModel, ModelLoadError, NliWeights, load_model
from entailserver.model import DEFAULT_WEIGHTS_PATH

WORDS = [
    "door", "opened", "closed", "device", "turned", "on", "off", "motion",
    "detected", "message", "received", "sent", "time", "sunset", "sunrise",
    "day", "night", "starts", "stops", "activity", "position", "any", "event",
]


@pytest.fixture(scope="module")
def model() -> LexicalNliModel:
    return load_model()


def assert_valid_triple(triple: dict[str, float]) -> None:
    assert set(triple) == {"entailment", "contradiction", "neutral"}
    for component in triple.values():
        assert component >= 0.0
    total = triple["entailment"] + triple["contradiction"] + triple["neutral"]
    assert abs(total - 100.0) <= 1e-9


def test_identical_pair_scores_entailment_strictly_largest(model):
    for text in ("Any event starts", "Door opened", "A C turned off", "sunset time"):
        triple = model.predict(text, text)
        assert triple["entailment"] > triple["contradiction"]
        assert triple["entailment"] > triple["neutral"]


def test_identity_dominance_holds_across_random_phrases(model):
    rng = random.Random(11)
    for _ in range(500):
        phrase = " ".join(rng.sample(WORDS, rng.randint(1, 6)))
        triple = model.predict(phrase, phrase)
        assert triple["entailment"] > max(triple["contradiction"], triple["neutral"])


def test_random_pairs_always_yield_valid_triples(model):
    rng = random.Random(7)
    for _ in range(2000):
        premise = " ".join(rng.sample(WORDS, rng.randint(1, 6)))
        hypothesis = " ".join(rng.sample(WORDS, rng.randint(1, 6)))
        assert_valid_triple(model.predict(premise, hypothesis))


def test_opposite_direction_words_score_contradiction(model):
    triple = model.predict("the door opened", "Door Closed")
    assert triple["contradiction"] > max(triple["entailment"], triple["neutral"])
    triple = model.predict("A C turned off", "Device Turned On")
    assert triple["contradiction"] > max(triple["entailment"], triple["neutral"])


def test_unrelated_pair_scores_neutral(model):
    triple = model.predict("Any event starts", "Taken")
    assert triple["neutral"] > max(triple["entailment"], triple["contradiction"])


def test_covered_hypothesis_scores_entailment(model):
    triple = model.predict("Every day at sunset", "Sunset Time")
    assert triple["entailment"] > max(triple["contradiction"], triple["neutral"])


def test_token_free_inputs_still_yield_a_valid_triple(model):
    assert_valid_triple(model.predict("###", "!!!"))
    assert_valid_triple(model.predict("the a an", "of and or"))


def test_prediction_is_deterministic_across_calls_and_instances(model):
    first = model.predict("Door opened", "Device Turned On")
    second = model.predict("Door opened", "Device Turned On")
    assert first == second
    fresh = load_model()
    assert fresh.predict("Door opened", "Device Turned On") == first


def test_batch_preserves_pair_order(model):
    pairs = [
        ("Door opened", "Door Opened"),
        ("Any event starts", "Taken"),
        ("A C turned off", "Device Turned On"),
    ]
    results = model.predict_batch(pairs)
    assert len(results) == 3
    assert results[0] == model.predict(*pairs[0])
    assert results[2] == model.predict(*pairs[2])


def test_model_reports_its_weights_version(model):
    assert model.version == "lexical-nli-1"
    assert json.loads(DEFAULT_WEIGHTS_PATH.read_text())["version"] == "lexical-nli-1"


# -- weights-file validation -----------------------------------------------


def good_payload() -> dict:
    return json.loads(DEFAULT_WEIGHTS_PATH.read_text(encoding="utf-8"))


def test_load_model_missing_file(tmp_path):
    with pytest.raises(ModelLoadError, match="cannot read"):
        load_model(tmp_path / "absent.json")


def test_load_model_corrupt_json(tmp_path):
    path = tmp_path / "weights.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(ModelLoadError, match="not valid JSON"):
        load_model(path)


def test_load_model_rejects_non_object(tmp_path):
    path = tmp_path / "weights.json"
    path.write_text("[1, 2, 3]", encoding="utf-8")
    with pytest.raises(ModelLoadError, match="JSON object"):
        load_model(path)


def test_load_model_rejects_missing_label(tmp_path):
    payload = good_payload()
    del payload["logits"]["neutral"]
    path = tmp_path / "weights.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    with pytest.raises(ModelLoadError, match="missing label: neutral"):
        load_model(path)


def test_load_model_rejects_wrong_vector_length(tmp_path):
    payload = good_payload()
    payload["logits"]["entailment"] = payload["logits"]["entailment"][:-1]
    path = tmp_path / "weights.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    with pytest.raises(ModelLoadError, match="entailment weight vector"):
        load_model(path)


def test_load_model_rejects_unknown_feature():
    with pytest.raises(ModelLoadError, match="unknown features"):
        NliWeights(
            version="x",
            features=("bias", "astrology"),
            logits={
                "entailment": (0.0, 0.0),
                "contradiction": (0.0, 0.0),
                "neutral": (0.0, 0.0),
            },
        )


def test_load_model_rejects_non_finite_weight(tmp_path):
    payload = good_payload()
    payload["logits"]["neutral"][0] = "NaN"
    path = tmp_path / "weights.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    with pytest.raises(ModelLoadError, match="non-finite"):
        load_model(path)
