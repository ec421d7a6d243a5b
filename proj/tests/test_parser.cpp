#include <doctest.h>

#include "framekit/parser.hpp"
#include "test_support.hpp"

using namespace framekit;
using framekit::test::t;

namespace {

RuleSet lemma_target_rule(const std::string& frame, const std::string& lemma, std::int64_t n,
                          std::int64_t m) {
  RuleSet rs;
  rs.label = frame;
  rs.schema = target_schema();
  rs.threshold = 0.5;
  Pattern p(10, SlotConstraint::wildcard());
  p[3] = SlotConstraint::literal(lemma);
  rs.rules.push_back({p, n, m});
  return rs;
}

RuleSet lemma_fe_rule(const std::string& frame, const std::string& fe,
                      std::vector<std::string> lemmas) {
  RuleSet rs;
  rs.label = fe_label(frame, fe);
  rs.schema = fe_schema();
  rs.threshold = 0.5;
  Pattern p(12, SlotConstraint::wildcard());
  p[3] = SlotConstraint::value_set(std::move(lemmas));
  rs.rules.push_back({p, 10, 0});
  return rs;
}

Sentence fig2_sentence() {
  Sentence s;
  s.doc_id = "d1";
  s.tokens = {t("A", "a", "DT"),
              t("one-year", "one-year", "JJ"),
              t("stint", "stint", "NN", "O", "stint.n.1"),
              t("as", "as", "IN"),
              t("assistant", "assistant", "NN"),
              t("lecturer", "lecturer", "NN", "O", "lecturer.n.1"),
              t("at", "at", "IN"),
              t("University", "University", "NNP", "ORGANIZATION"),
              t("College", "College", "NNP", "ORGANIZATION"),
              t("London", "London", "NNP", "ORGANIZATION")};
  return s;
}

}  // namespace

TEST_CASE("identify_targets finds the stint evocation") {
  FrameRegistry reg = load_registry(framekit::test::data_path("registry.json"));
  ParserModel model(&reg);
  model.add_target_ruleset(lemma_target_rule("Being_employed", "stint", 10, 0));

  Sentence s = fig2_sentence();
  auto hits = identify_targets(s, model);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].index == 2);
  CHECK(hits[0].frame == "Being_employed");
  CHECK(hits[0].confidence.value() == doctest::Approx(11.0 / 12.0));
}

TEST_CASE("one frame per token: higher confidence wins") {
  FrameRegistry reg = load_registry(framekit::test::data_path("registry.json"));
  ParserModel model(&reg);
  // Attack at (4,0) -> 83%, Statement at (193,9) -> 95% on the same lemma
  model.add_target_ruleset(lemma_target_rule("Attack", "strike", 4, 0));
  model.add_target_ruleset(lemma_target_rule("Statement", "strike", 193, 9));

  Sentence s;
  s.doc_id = "x";
  s.tokens = {t("They", "they", "PRP"), t("strike", "strike", "VBP")};
  auto hits = identify_targets(s, model);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].frame == "Statement");

  // exact tie goes to the lexicographically first frame
  ParserModel tied(&reg);
  tied.add_target_ruleset(lemma_target_rule("Statement", "strike", 4, 0));
  tied.add_target_ruleset(lemma_target_rule("Attack", "strike", 4, 0));
  auto tie_hits = identify_targets(s, tied);
  REQUIRE(tie_hits.size() == 1);
  CHECK(tie_hits[0].frame == "Attack");
}

TEST_CASE("no matching rules yields no targets") {
  FrameRegistry reg = load_registry(framekit::test::data_path("registry.json"));
  ParserModel model(&reg);
  model.add_target_ruleset(lemma_target_rule("Attack", "bombard", 5, 0));
  Sentence s = fig2_sentence();
  CHECK(identify_targets(s, model).empty());
  CHECK(parse_sentence(Sentence{}, model).empty());
}

TEST_CASE("frame element runs merge into the published spans") {
  FrameRegistry reg = load_registry(framekit::test::data_path("registry.json"));
  ParserModel model(&reg);
  model.add_target_ruleset(lemma_target_rule("Being_employed", "stint", 10, 0));
  model.add_fe_ruleset(lemma_fe_rule("Being_employed", "Duration", {"one-year"}));
  model.add_fe_ruleset(lemma_fe_rule("Being_employed", "Position", {"as", "assistant", "lecturer"}));
  model.add_fe_ruleset(
      lemma_fe_rule("Being_employed", "Employer", {"at", "University", "College", "London"}));

  Sentence s = fig2_sentence();
  auto annotations = parse_sentence(s, model);
  REQUIRE(annotations.size() == 1);
  const FrameAnnotation& ann = annotations[0];
  CHECK(ann.frame == "Being_employed");
  CHECK(ann.target == Span{2, 3});
  REQUIRE(ann.elements.size() == 3);
  CHECK(ann.elements[0] == FrameElementSpan{"Duration", {1, 2}, 1.0});
  CHECK(ann.elements[1] == FrameElementSpan{"Position", {3, 6}, 1.0});
  CHECK(ann.elements[2] == FrameElementSpan{"Employer", {6, 10}, 1.0});
}

TEST_CASE("no token above threshold leaves a bare-target annotation") {
  FrameRegistry reg = load_registry(framekit::test::data_path("registry.json"));
  ParserModel model(&reg);
  model.add_target_ruleset(lemma_target_rule("Being_employed", "stint", 10, 0));
  auto annotations = parse_sentence(fig2_sentence(), model);
  REQUIRE(annotations.size() == 1);
  CHECK(annotations[0].elements.empty());
}

TEST_CASE("adjacent different labels stay separate spans") {
  FrameRegistry reg = load_registry(framekit::test::data_path("registry.json"));
  ParserModel model(&reg);
  model.add_target_ruleset(lemma_target_rule("Being_employed", "stint", 10, 0));
  model.add_fe_ruleset(lemma_fe_rule("Being_employed", "Employer", {"assistant"}));
  model.add_fe_ruleset(lemma_fe_rule("Being_employed", "Position", {"lecturer"}));

  auto annotations = parse_sentence(fig2_sentence(), model);
  REQUIRE(annotations.size() == 1);
  REQUIRE(annotations[0].elements.size() == 2);
  CHECK(annotations[0].elements[0] == FrameElementSpan{"Employer", {4, 5}, 1.0});
  CHECK(annotations[0].elements[1] == FrameElementSpan{"Position", {5, 6}, 1.0});
}

TEST_CASE("the target token is never labeled as an element") {
  FrameRegistry reg = load_registry(framekit::test::data_path("registry.json"));
  ParserModel model(&reg);
  model.add_target_ruleset(lemma_target_rule("Being_employed", "stint", 10, 0));
  // a rule that would match every token, including the target
  RuleSet greedy;
  greedy.label = fe_label("Being_employed", "Position");
  greedy.schema = fe_schema();
  greedy.threshold = 0.5;
  greedy.rules.push_back({Pattern(12, SlotConstraint::wildcard()), 10, 0});
  model.add_fe_ruleset(greedy);

  auto annotations = parse_sentence(fig2_sentence(), model);
  REQUIRE(annotations.size() == 1);
  for (const auto& fe : annotations[0].elements) {
    CHECK_FALSE(fe.span.contains(2));
  }
}

TEST_CASE("unknown frame in identify_frame_elements is an error") {
  FrameRegistry reg = load_registry(framekit::test::data_path("registry.json"));
  ParserModel model(&reg);
  Sentence s = fig2_sentence();
  CHECK_THROWS_AS(identify_frame_elements(s, 0, "NoSuchFrame", model), LookupError);
}

TEST_CASE("two distinct targets produce two annotations") {
  FrameRegistry reg = load_registry(framekit::test::data_path("registry.json"));
  ParserModel model(&reg);
  model.add_target_ruleset(lemma_target_rule("Hiring", "hire", 6, 0));
  model.add_target_ruleset(lemma_target_rule("Employment_end", "leave", 6, 0));

  Sentence s;
  s.doc_id = "x";
  s.tokens = {t("Acme", "Acme", "NNP", "ORGANIZATION"), t("hired", "hire", "VBD"),
              t("Vera", "Vera", "NNP", "PERSON"), t("and", "and", "CC"),
              t("Igor", "Igor", "NNP", "PERSON"), t("left", "leave", "VBD")};
  auto annotations = parse_sentence(s, model);
  REQUIRE(annotations.size() == 2);
  CHECK(annotations[0].frame == "Hiring");
  CHECK(annotations[0].target == Span{1, 2});
  CHECK(annotations[1].frame == "Employment_end");
  CHECK(annotations[1].target == Span{5, 6});
}

TEST_CASE("model loading checks schema and registry agreement") {
  FrameRegistry reg = load_registry(framekit::test::data_path("registry.json"));
  ParserModel model(&reg);
  RuleSet bad = lemma_target_rule("NoSuchFrame", "x", 5, 0);
  CHECK_THROWS_AS(model.add_target_ruleset(bad), LookupError);

  RuleSet wrong_schema = lemma_target_rule("Attack", "x", 5, 0);
  wrong_schema.schema = {"a", "b"};
  wrong_schema.rules[0].pattern = Pattern(2, SlotConstraint::wildcard());
  CHECK_THROWS_AS(model.add_target_ruleset(wrong_schema), FormatError);

  CHECK_THROWS_AS(model.add_fe_ruleset(lemma_fe_rule("Attack", "Employer", {"x"})), LookupError);
}

TEST_CASE("annotation records round-trip through JSONL") {
  AnnotationRecord record;
  record.doc_id = "d9";
  record.sentence_index = 4;
  record.annotation.frame = "Hiring";
  record.annotation.target = {1, 2};
  record.annotation.elements = {{"Employer", {0, 1}, 0.75}};
  record.annotation.confidence = 0.875;

  std::string line = annotation_to_json(record);
  AnnotationRecord back = annotation_from_json(line, "<mem>", 1);
  CHECK(back.doc_id == record.doc_id);
  CHECK(back.sentence_index == record.sentence_index);
  CHECK(back.annotation == record.annotation);
  CHECK(back.annotation.confidence == record.annotation.confidence);

  CHECK_THROWS_AS(annotation_from_json("{broken", "<mem>", 1), FormatError);
}
