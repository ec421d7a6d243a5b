#include "framekit/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace framekit {

namespace {

constexpr const char* kDocPrefix = "# doc_id=";
constexpr const char* kDatePrefix = "# date=";
constexpr const char* kLayerPrefix = "# layer=";

void check_field(const std::string& value, const char* what, const std::string& path,
                 int line) {
  if (value.empty()) {
    throw FormatError(path, line, std::string("empty ") + what + " field");
  }
  if (contains_whitespace(value)) {
    throw FormatError(path, line, std::string(what) + " field contains whitespace: '" + value + "'");
  }
}

struct Block {
  std::string doc_id;
  std::optional<Day> date;
  int layer = 0;
  std::vector<Token> tokens;
  std::optional<FrameAnnotation> annotation;
  int first_line = 0;
};

Block parse_block(const std::vector<std::pair<int, std::string>>& lines,
                  const std::string& path) {
  Block block;
  block.first_line = lines.front().first;
  bool saw_doc = false;
  std::vector<std::string> role_tags;
  std::string target_frame;
  Span target{-1, -1};

  for (const auto& [lineno, raw] : lines) {
    if (raw.rfind(kDocPrefix, 0) == 0) {
      block.doc_id = raw.substr(std::string(kDocPrefix).size());
      saw_doc = true;
      continue;
    }
    if (raw.rfind(kDatePrefix, 0) == 0) {
      std::string value = raw.substr(std::string(kDatePrefix).size());
      auto day = parse_date(value);
      if (!day) throw FormatError(path, lineno, "unparseable date '" + value + "'");
      block.date = *day;
      continue;
    }
    if (raw.rfind(kLayerPrefix, 0) == 0) {
      std::string value = raw.substr(std::string(kLayerPrefix).size());
      try {
        block.layer = std::stoi(value);
      } catch (const std::exception&) {
        throw FormatError(path, lineno, "bad layer index '" + value + "'");
      }
      if (block.layer < 0) throw FormatError(path, lineno, "negative layer index");
      continue;
    }
    if (!raw.empty() && raw[0] == '#') {
      continue;  // unknown comment lines are tolerated
    }

    auto cols = split(raw, '\t');
    if (cols.size() != 7) {
      throw FormatError(path, lineno,
                        "expected 7 tab-separated columns, got " + std::to_string(cols.size()));
    }
    Token tok{cols[0], cols[1], cols[2], cols[3], cols[4]};
    check_field(tok.surface, "SURFACE", path, lineno);
    check_field(tok.lemma, "LEMMA", path, lineno);
    check_field(tok.pos, "POS", path, lineno);
    check_field(tok.ner, "NER", path, lineno);
    check_field(tok.hypernym, "HYPERNYM", path, lineno);

    int index = static_cast<int>(block.tokens.size());
    const std::string& frame_col = cols[5];
    if (frame_col != "O") {
      if (frame_col.rfind("T:", 0) != 0) {
        throw FormatError(path, lineno, "FRAME column must be 'O' or 'T:<frame>', got '" +
                                            frame_col + "'");
      }
      std::string frame = frame_col.substr(2);
      if (frame.empty()) throw FormatError(path, lineno, "empty frame name in FRAME column");
      if (target.begin < 0) {
        target = {index, index + 1};
        target_frame = frame;
      } else if (target.end == index && frame == target_frame) {
        target.end = index + 1;  // contiguous multi-word target
      } else {
        throw FormatError(path, lineno, "more than one target in block (one per layer)");
      }
    }
    role_tags.push_back(cols[6]);
    block.tokens.push_back(std::move(tok));
  }

  if (!saw_doc) {
    throw FormatError(path, block.first_line, "block is missing '# doc_id=' header");
  }
  if (block.tokens.empty()) {
    throw FormatError(path, block.first_line, "block has headers but no token lines");
  }

  bool has_roles =
      std::any_of(role_tags.begin(), role_tags.end(), [](const std::string& t) { return t != "O"; });
  if (target.begin < 0) {
    if (has_roles) {
      throw FormatError(path, block.first_line, "ROLE tags present but block has no target");
    }
    return block;
  }

  FrameAnnotation ann;
  ann.frame = target_frame;
  ann.target = target;
  try {
    ann.elements = bio_to_spans(role_tags);
  } catch (const FormatError& e) {
    throw FormatError(path, block.first_line, e.what());
  }
  block.annotation = std::move(ann);
  return block;
}

}  // namespace

std::string Sentence::text() const {
  std::vector<std::string> surfaces;
  surfaces.reserve(tokens.size());
  for (const auto& t : tokens) surfaces.push_back(t.surface);
  return join(surfaces, " ");
}

const std::vector<std::string>& target_schema() {
  static const std::vector<std::string> schema = {
      "prev.lemma", "prev.pos",      "prev.ner",  "curr.lemma", "curr.hypernym",
      "curr.pos",   "curr.ner",      "next.lemma", "next.pos",  "next.ner"};
  return schema;
}

const std::vector<std::string>& fe_schema() {
  static const std::vector<std::string> schema = [] {
    std::vector<std::string> s = target_schema();
    s.push_back("rel_pos");
    s.push_back("target_lemma");
    return s;
  }();
  return schema;
}

FeatureVector extract_window(const Sentence& sentence, int index) {
  if (index < 0 || index >= sentence.size()) {
    throw Error("token index " + std::to_string(index) + " out of range for sentence of " +
                std::to_string(sentence.size()) + " tokens");
  }
  FeatureVector fv(kTargetSchemaSize, kNone);
  if (index > 0) {
    const Token& prev = sentence.tokens[index - 1];
    fv[0] = prev.lemma;
    fv[1] = prev.pos;
    fv[2] = prev.ner;
  }
  const Token& curr = sentence.tokens[index];
  fv[3] = curr.lemma;
  fv[4] = curr.hypernym;
  fv[5] = curr.pos;
  fv[6] = curr.ner;
  if (index + 1 < sentence.size()) {
    const Token& next = sentence.tokens[index + 1];
    fv[7] = next.lemma;
    fv[8] = next.pos;
    fv[9] = next.ner;
  }
  return fv;
}

std::string rel_pos_bucket(int delta) {
  if (delta <= -3) return "-3+";
  if (delta >= 3) return "+3+";
  switch (delta) {
    case -2: return "-2";
    case -1: return "-1";
    case 0: return "0";
    case 1: return "+1";
    default: return "+2";
  }
}

FeatureVector extract_fe_window(const Sentence& sentence, int index, int target_index) {
  if (target_index < 0 || target_index >= sentence.size()) {
    throw Error("target index " + std::to_string(target_index) + " out of range");
  }
  FeatureVector fv = extract_window(sentence, index);
  fv.push_back(rel_pos_bucket(index - target_index));
  fv.push_back(sentence.tokens[target_index].lemma);
  return fv;
}

std::vector<std::string> spans_to_bio(const std::vector<FrameElementSpan>& spans, int length) {
  std::vector<std::string> tags(length, "O");
  for (const auto& fe : spans) {
    if (fe.span.begin < 0 || fe.span.end > length || fe.span.begin >= fe.span.end) {
      throw Error("frame element span [" + std::to_string(fe.span.begin) + "," +
                  std::to_string(fe.span.end) + ") out of range");
    }
    for (int i = fe.span.begin; i < fe.span.end; ++i) {
      if (tags[i] != "O") throw Error("overlapping frame element spans at token " + std::to_string(i));
      tags[i] = (i == fe.span.begin ? "B-" : "I-") + fe.name;
    }
  }
  return tags;
}

std::vector<FrameElementSpan> bio_to_spans(const std::vector<std::string>& tags) {
  std::vector<FrameElementSpan> spans;
  std::string open_label;
  for (int i = 0; i < static_cast<int>(tags.size()); ++i) {
    const std::string& tag = tags[i];
    if (tag == "O") {
      open_label.clear();
      continue;
    }
    if (tag.size() < 3 || (tag[0] != 'B' && tag[0] != 'I') || tag[1] != '-') {
      throw FormatError("ROLE tag must be O, B-<FE> or I-<FE>, got '" + tag + "' at token " +
                        std::to_string(i));
    }
    std::string label = tag.substr(2);
    if (tag[0] == 'B') {
      spans.push_back({label, {i, i + 1}, 1.0});
      open_label = label;
    } else {
      if (open_label != label) {
        throw FormatError("dangling I-" + label + " at token " + std::to_string(i) +
                          " without preceding B-" + label);
      }
      spans.back().span.end = i + 1;
    }
  }
  return spans;
}

std::vector<Sentence> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus file: " + path);
  return read_corpus(in, path);
}

std::vector<Sentence> read_corpus(std::istream& in, const std::string& path) {
  std::vector<Sentence> sentences;
  std::vector<std::pair<int, std::string>> block_lines;

  auto flush = [&]() {
    if (block_lines.empty()) return;
    Block block = parse_block(block_lines, path);
    block_lines.clear();

    if (block.layer == 0) {
      Sentence s;
      s.tokens = block.tokens;
      s.doc_id = block.doc_id;
      s.pub_date = block.date;
      if (block.annotation) s.gold.push_back(*block.annotation);
      sentences.push_back(std::move(s));
      return;
    }
    if (sentences.empty()) {
      throw FormatError(path, block.first_line, "layer block without a preceding sentence");
    }
    Sentence& s = sentences.back();
    if (block.layer != static_cast<int>(s.gold.size())) {
      throw FormatError(path, block.first_line,
                        "layer " + std::to_string(block.layer) + " does not follow layer " +
                            std::to_string(block.layer - 1));
    }
    if (block.doc_id != s.doc_id || block.date != s.pub_date || block.tokens != s.tokens) {
      throw FormatError(path, block.first_line,
                        "layer block does not repeat the sentence it annotates");
    }
    if (!block.annotation) {
      throw FormatError(path, block.first_line, "layer block carries no annotation");
    }
    s.gold.push_back(*block.annotation);
  };

  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty()) {
      flush();
    } else {
      block_lines.emplace_back(lineno, raw);
    }
  }
  flush();
  return sentences;
}

std::string write_corpus(const std::vector<Sentence>& sentences) {
  std::ostringstream out;
  bool first_block = true;

  for (const auto& s : sentences) {
    int layers = s.gold.empty() ? 1 : static_cast<int>(s.gold.size());
    for (int layer = 0; layer < layers; ++layer) {
      if (!first_block) out << '\n';
      first_block = false;

      out << kDocPrefix << s.doc_id << '\n';
      if (s.pub_date) out << kDatePrefix << format_date(*s.pub_date) << '\n';
      if (layer > 0) out << kLayerPrefix << layer << '\n';

      std::vector<std::string> frame_col(s.tokens.size(), "O");
      std::vector<std::string> role_col(s.tokens.size(), "O");
      if (!s.gold.empty()) {
        const FrameAnnotation& ann = s.gold[layer];
        for (int i = ann.target.begin; i < ann.target.end; ++i) {
          frame_col[i] = "T:" + ann.frame;
        }
        role_col = spans_to_bio(ann.elements, s.size());
      }
      for (int i = 0; i < s.size(); ++i) {
        const Token& t = s.tokens[i];
        out << t.surface << '\t' << t.lemma << '\t' << t.pos << '\t' << t.ner << '\t'
            << t.hypernym << '\t' << frame_col[i] << '\t' << role_col[i] << '\n';
      }
    }
  }
  return out.str();
}

void write_corpus_file(const std::vector<Sentence>& sentences, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write corpus file: " + path);
  out << write_corpus(sentences);
}

}  // namespace framekit
