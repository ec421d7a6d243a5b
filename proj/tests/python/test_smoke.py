"""Smoke tests for the Python module: every major operation gets one pass."""

import pytest

import framekit as fk


def test_laplace_published_rows():
    rows = [(193, 9, 95), (49, 0, 98), (23, 3, 84), (4, 0, 83), (5, 1, 71), (2, 0, 75)]
    for n, m, pct in rows:
        assert fk.laplace_percent(n, m) == pct
    assert fk.laplace(193, 9) == pytest.approx(185 / 195)
    with pytest.raises(fk.FramekitError):
        fk.laplace(0, 0)


def test_learn_classify_serialize_roundtrip():
    schema = fk.target_schema()
    examples = []
    for i in range(8):
        fv = [f"f{k}" for k in range(10)]
        fv[3] = "stint"
        fv[0] = f"ctx{i}"
        examples.append((fv, True))
    for i in range(40):
        fv = [f"g{k}" for k in range(10)]
        fv[3] = f"noise{i % 7}"
        examples.append((fv, False))

    ruleset, uncovered = fk.learn_ruleset(examples, "Being_employed", schema)
    assert uncovered == 0
    assert len(ruleset) >= 1
    assert ruleset.rules[0].m == 0

    fv = [f"f{k}" for k in range(10)]
    fv[3] = "stint"
    fv[0] = "ctx0"
    assert fk.classify(ruleset, fv) == pytest.approx(9 / 10)
    miss = ["x"] * 10
    assert fk.classify(ruleset, miss) is None

    text = fk.serialize_ruleset(ruleset)
    back = fk.parse_ruleset(text)
    assert fk.serialize_ruleset(back) == text
    assert back.label == "Being_employed"


def test_corpus_roundtrip(tmp_path):
    tokens = [
        fk.Token("Vera", "vera", "NNP", "PERSON"),
        fk.Token("joined", "join", "VBD"),
        fk.Token("Acme", "acme", "NNP", "ORGANIZATION"),
    ]
    sentence = fk.Sentence(tokens, doc_id="d1", pub_date="2010-06-01")
    sentence.gold = [
        fk.FrameAnnotation(
            "Hiring",
            fk.Span(1, 2),
            [fk.FrameElementSpan("Employee", fk.Span(0, 1))],
        )
    ]
    path = str(tmp_path / "corpus.tsv")
    fk.write_corpus_file([sentence], path)
    back = fk.load_corpus(path)
    assert len(back) == 1
    assert back[0].text() == "Vera joined Acme"
    assert back[0].pub_date == "2010-06-01"
    assert back[0].gold[0].frame == "Hiring"

    window = fk.extract_window(back[0], 0)
    assert window[0] == fk.NONE_MARKER
    assert window[3] == "vera"


def test_registry_and_roundtrip():
    registry = fk.load_registry(fk.default_registry_path())
    assert len(registry) == 26
    assert registry.frame_kind("Attack") == "event"
    assert registry.frame_kind("Being_employed") == "state"
    assert registry.anchor_fes("Being_employed") == ["Employee", "Employer"]

    result = fk.roundtrip_model(registry, "en", instances_per_frame=3, seed=5)
    assert result.report.all_exact()
    assert result.report.summary() == "26/26 frames exact"

    # the learned model parses its own output
    instance = result.instances[0]
    sentence = fk.verbalize(instance, "en", registry, result.gazetteer)
    annotations = fk.parse_sentence(sentence, result.model)
    assert len(annotations) == 1
    assert annotations[0].frame == instance.frame


def test_store_and_profile(tmp_path):
    registry = fk.load_registry(fk.default_registry_path())
    gaz = fk.load_gazetteer(fk.sample_gazetteer_path())
    store = fk.TemporalStore(registry)

    tokens = [
        fk.Token("Marta", "Marta", "NNP", "PERSON"),
        fk.Token("Ozolina", "Ozolina", "NNP", "PERSON"),
        fk.Token("was", "be", "VBD"),
        fk.Token("employed", "employ", "VBN"),
        fk.Token("as", "as", "IN"),
        fk.Token("editor", "editor", "NN"),
    ]
    sentence = fk.Sentence(tokens, doc_id="news-1", pub_date="2011-03-04")
    annotation = fk.FrameAnnotation(
        "Being_employed",
        fk.Span(3, 4),
        [
            fk.FrameElementSpan("Employee", fk.Span(0, 2)),
            fk.FrameElementSpan("Position", fk.Span(5, 6)),
        ],
    )

    for k in range(3):
        instance_id, merged = store.ingest(annotation, sentence, gaz, sentence_index=k)
        assert instance_id == "i1"
        assert merged == (k > 0)
    assert len(store) == 1
    assert store.instances()[0].count == 3
    assert store.instances()[0].fillers["Employee"].entity_id == "p1"

    facts = store.facts_at("2012-01-01")
    assert [f.id for f in facts] == ["i1"]
    assert store.facts_at("2010-01-01") == []

    profile = fk.render_profile(store, "p1", "en", registry)
    assert profile.startswith("[[p1|Marta Ozolina]]")
    assert profile.strip().endswith("[3]")

    path = str(tmp_path / "store.jsonl")
    store.save(path)
    replayed = fk.load_store(path, registry)
    assert len(replayed) == 1
    assert replayed.instance_count("p1") == 1


def test_linking_fallback():
    gaz = fk.load_gazetteer(fk.sample_gazetteer_path())
    hit = fk.link_mention("M. Ozolina", "entity(Person)", gaz)
    assert hit.linked and hit.entity_id == "p1"
    miss = fk.link_mention("a soloist", "entity(Person)", gaz)
    assert not miss.linked and miss.text == "a soloist"


def test_scoring():
    gold = [[fk.FrameAnnotation("A", fk.Span(0, 1)), fk.FrameAnnotation("B", fk.Span(3, 4))]]
    pred = [[fk.FrameAnnotation("A", fk.Span(0, 1))]]
    report = fk.score_targets(gold, pred)
    assert report.tp == 1 and report.fp == 0 and report.fn == 1
    assert report.f1 == pytest.approx(2 / 3)
    assert fk.f1(0.771, 0.537) == pytest.approx(0.633, abs=5e-4)
    rows = dict(fk.per_frame_report(gold, pred))
    assert rows["A"] == 1.0
    assert rows["B"] == 0.0
