#include <doctest.h>

#include <sstream>

#include "framekit/corpus.hpp"
#include "test_support.hpp"

using namespace framekit;
using framekit::test::t;

namespace {

Sentence three_tokens() {
  Sentence s;
  s.doc_id = "d";
  s.tokens = {t("Riga", "Riga", "NNP", "LOCATION"), t("fell", "fall", "VBD"),
              t("quiet", "quiet", "JJ", "O", "quiet.a.1")};
  return s;
}

}  // namespace

TEST_CASE("extract_window fills boundary slots with the marker") {
  Sentence s = three_tokens();

  FeatureVector first = extract_window(s, 0);
  CHECK(first[0] == kNone);
  CHECK(first[1] == kNone);
  CHECK(first[2] == kNone);
  CHECK(first[3] == "Riga");

  FeatureVector last = extract_window(s, 2);
  CHECK(last[7] == kNone);
  CHECK(last[8] == kNone);
  CHECK(last[9] == kNone);
}

TEST_CASE("extract_window middle token matches hand-read values") {
  Sentence s = three_tokens();
  FeatureVector fv = extract_window(s, 1);
  CHECK(fv == FeatureVector{"Riga", "NNP", "LOCATION", "fall", kNone, "VBD", "O", "quiet", "JJ",
                            "O"});
}

TEST_CASE("extract_window rejects out-of-range indices") {
  Sentence s = three_tokens();
  CHECK_THROWS_AS(extract_window(s, -1), Error);
  CHECK_THROWS_AS(extract_window(s, 3), Error);
}

TEST_CASE("extract_fe_window buckets and target lemma") {
  Sentence s = three_tokens();

  FeatureVector same = extract_fe_window(s, 1, 1);
  CHECK(same[10] == "0");
  CHECK(same[11] == "fall");

  CHECK(rel_pos_bucket(5) == "+3+");
  CHECK(rel_pos_bucket(-5) == "-3+");
  CHECK(rel_pos_bucket(-2) == "-2");
  CHECK(rel_pos_bucket(2) == "+2");

  FeatureVector far = extract_fe_window(s, 2, 0);
  CHECK(far[10] == "+2");
  CHECK(far[11] == "Riga");
}

TEST_CASE("BIO round-trip and dangling-I rejection") {
  std::vector<FrameElementSpan> spans = {{"Employer", {0, 2}, 1.0}, {"Position", {3, 4}, 1.0}};
  auto tags = spans_to_bio(spans, 5);
  CHECK(tags == std::vector<std::string>{"B-Employer", "I-Employer", "O", "B-Position", "O"});
  auto back = bio_to_spans(tags);
  CHECK(back == spans);

  CHECK_THROWS_AS(bio_to_spans({"O", "I-Employer"}), FormatError);
  CHECK_THROWS_AS(bio_to_spans({"B-Employer", "I-Position"}), FormatError);

  // adjacent same-label spans stay separate
  auto two = bio_to_spans({"B-Employer", "B-Employer"});
  CHECK(two.size() == 2);
}

TEST_CASE("load_corpus decodes the employment fixture") {
  auto sentences = load_corpus(framekit::test::fixture_path("employment.tsv"));
  REQUIRE(sentences.size() == 5);

  const Sentence& fig = sentences[0];
  CHECK(fig.doc_id == "d1");
  REQUIRE(fig.pub_date.has_value());
  CHECK(format_date(*fig.pub_date) == "2006-09-01");
  REQUIRE(fig.gold.size() == 1);
  const FrameAnnotation& ann = fig.gold[0];
  CHECK(ann.frame == "Being_employed");
  CHECK(ann.target == Span{2, 3});
  REQUIRE(ann.elements.size() == 3);
  CHECK(ann.elements[0] == FrameElementSpan{"Duration", {1, 2}, 1.0});
  CHECK(ann.elements[1] == FrameElementSpan{"Position", {3, 6}, 1.0});
  CHECK(ann.elements[2] == FrameElementSpan{"Employer", {6, 10}, 1.0});

  CHECK(sentences[2].gold.empty());  // distractor sentence
}

TEST_CASE("two-sentence file with one annotation") {
  std::string text =
      "# doc_id=a\n"
      "The\tthe\tDT\tO\t#NONE#\tO\tO\n"
      "markets\tmarket\tNNS\tO\t#NONE#\tO\tO\n"
      "\n"
      "# doc_id=b\n"
      "Vera\tVera\tNNP\tPERSON\t#NONE#\tO\tB-Employee\n"
      "joined\tjoin\tVBD\tO\t#NONE#\tT:Being_employed\tO\n"
      "Acme\tAcme\tNNP\tORGANIZATION\t#NONE#\tO\tB-Employer\n";
  std::istringstream in(text);
  auto sentences = read_corpus(in, "<mem>");
  REQUIRE(sentences.size() == 2);
  CHECK(sentences[0].gold.empty());
  REQUIRE(sentences[1].gold.size() == 1);
  CHECK(sentences[1].gold[0].frame == "Being_employed");
}

TEST_CASE("empty corpus file loads as empty list") {
  std::istringstream in("");
  CHECK(read_corpus(in, "<mem>").empty());
}

TEST_CASE("corpus loader reports malformed input with line numbers") {
  auto load = [](const std::string& text) {
    std::istringstream in(text);
    return read_corpus(in, "<mem>");
  };

  // wrong column count
  CHECK_THROWS_WITH_AS(load("# doc_id=a\nfoo\tbar\n"), "<mem>:2: expected 7 tab-separated "
                                                       "columns, got 2",
                       FormatError);
  // dangling I- tag
  std::string dangling =
      "# doc_id=a\n"
      "x\tx\tNN\tO\t#NONE#\tT:Attack\tO\n"
      "y\ty\tNN\tO\t#NONE#\tO\tI-Employer\n";
  CHECK_THROWS_AS(load(dangling), FormatError);
  // unparseable date header
  CHECK_THROWS_WITH_AS(load("# doc_id=a\n# date=2010-13-01\nx\tx\tNN\tO\t#NONE#\tO\tO\n"),
                       "<mem>:2: unparseable date '2010-13-01'", FormatError);
  // roles without a target
  CHECK_THROWS_AS(load("# doc_id=a\nx\tx\tNN\tO\t#NONE#\tO\tB-Employer\n"), FormatError);
  // two separate targets in one block
  std::string two_targets =
      "# doc_id=a\n"
      "x\tx\tNN\tO\t#NONE#\tT:Attack\tO\n"
      "y\ty\tNN\tO\t#NONE#\tO\tO\n"
      "z\tz\tNN\tO\t#NONE#\tT:Attack\tO\n";
  CHECK_THROWS_AS(load(two_targets), FormatError);
  // whitespace inside a field
  CHECK_THROWS_AS(load("# doc_id=a\nx y\tx\tNN\tO\t#NONE#\tO\tO\n"), FormatError);
}

TEST_CASE("multi-target sentences round-trip through layer blocks") {
  Sentence s;
  s.doc_id = "multi";
  s.tokens = {t("Acme", "Acme", "NNP", "ORGANIZATION"), t("hired", "hire", "VBD"),
              t("Vera", "Vera", "NNP", "PERSON"), t("who", "who", "WP"),
              t("left", "leave", "VBD"), t("Borodin", "Borodin", "NNP", "ORGANIZATION")};
  FrameAnnotation hiring{"Hiring", {1, 2}, {{"Employer", {0, 1}, 1.0}, {"Employee", {2, 3}, 1.0}},
                         1.0};
  FrameAnnotation end{"Employment_end", {4, 5}, {{"Employee", {2, 3}, 1.0},
                                                 {"Employer", {5, 6}, 1.0}}, 1.0};
  s.gold = {hiring, end};

  std::string text = write_corpus({s});
  CHECK(text.find("# layer=1") != std::string::npos);
  std::istringstream in(text);
  auto back = read_corpus(in, "<mem>");
  REQUIRE(back.size() == 1);
  REQUIRE(back[0].gold.size() == 2);
  CHECK(back[0].gold[0] == hiring);
  CHECK(back[0].gold[1] == end);
  CHECK(write_corpus(back) == text);
}

TEST_CASE("write_corpus of a loaded canonical file is byte-identical") {
  std::string path = framekit::test::fixture_path("employment.tsv");
  auto sentences = load_corpus(path);
  CHECK(write_corpus(sentences) == framekit::test::read_file(path));
}
