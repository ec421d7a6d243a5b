#ifndef FRAMEKIT_CORPUS_HPP
#define FRAMEKIT_CORPUS_HPP

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "framekit/util.hpp"

namespace framekit {

// Marker used both for out-of-sentence window slots and for absent features.
inline constexpr const char* kNone = "#NONE#";

struct Token {
  std::string surface;
  std::string lemma;
  std::string pos;
  std::string ner;       // "O" when none
  std::string hypernym;  // kNone when absent

  bool operator==(const Token&) const = default;
};

// Half-open token range [begin, end).
struct Span {
  int begin = 0;
  int end = 0;

  int size() const { return end - begin; }
  bool contains(int i) const { return begin <= i && i < end; }
  bool operator==(const Span&) const = default;
};

struct FrameElementSpan {
  std::string name;
  Span span;
  double confidence = 1.0;

  bool operator==(const FrameElementSpan& o) const {
    return name == o.name && span == o.span;
  }
};

struct FrameAnnotation {
  std::string frame;
  Span target;
  std::vector<FrameElementSpan> elements;
  double confidence = 1.0;

  bool operator==(const FrameAnnotation& o) const {
    return frame == o.frame && target == o.target && elements == o.elements;
  }
};

struct Sentence {
  std::vector<Token> tokens;
  std::string doc_id;
  std::optional<Day> pub_date;
  std::vector<FrameAnnotation> gold;

  int size() const { return static_cast<int>(tokens.size()); }
  std::string text() const;  // surfaces joined by single spaces

  bool operator==(const Sentence&) const = default;
};

// Fixed feature window schemas. Target rules see 10 slots; frame-element
// rules see the same 10 plus the position bucket and the target lemma.
inline constexpr int kTargetSchemaSize = 10;
inline constexpr int kFeSchemaSize = 12;

const std::vector<std::string>& target_schema();
const std::vector<std::string>& fe_schema();

using FeatureVector = std::vector<std::string>;

FeatureVector extract_window(const Sentence& sentence, int index);
FeatureVector extract_fe_window(const Sentence& sentence, int index, int target_index);

// Signed distance bucket: -3+, -2, -1, 0, +1, +2, +3+.
std::string rel_pos_bucket(int delta);

// BIO tag codec for one annotation layer over a sentence of `length` tokens.
std::vector<std::string> spans_to_bio(const std::vector<FrameElementSpan>& spans, int length);
std::vector<FrameElementSpan> bio_to_spans(const std::vector<std::string>& tags);

std::vector<Sentence> load_corpus(const std::string& path);
std::vector<Sentence> read_corpus(std::istream& in, const std::string& path);

std::string write_corpus(const std::vector<Sentence>& sentences);
void write_corpus_file(const std::vector<Sentence>& sentences, const std::string& path);

}  // namespace framekit

#endif
