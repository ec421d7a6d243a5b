#include "framekit/parser.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <mutex>
#include <thread>

#include <json.hpp>

namespace framekit {

namespace fs = std::filesystem;

std::string fe_label(const std::string& frame, const std::string& fe) {
  return frame + kFeLabelSeparator + fe;
}

std::pair<std::string, std::string> split_fe_label(const std::string& label) {
  auto pos = label.find(kFeLabelSeparator);
  if (pos == std::string::npos || pos == 0 || pos + 2 >= label.size()) {
    throw FormatError("frame element rule label must be '<frame>::<fe>', got '" + label + "'");
  }
  return {label.substr(0, pos), label.substr(pos + 2)};
}

void ParserModel::add_target_ruleset(RuleSet rs) {
  if (rs.schema != target_schema()) {
    throw FormatError("target ruleset '" + rs.label + "' does not use the target window schema");
  }
  if (!registry_->find(rs.label)) {
    throw LookupError("target ruleset names unregistered frame '" + rs.label + "'");
  }
  std::string frame = rs.label;
  target_.insert_or_assign(std::move(frame), std::move(rs));
}

void ParserModel::add_fe_ruleset(RuleSet rs) {
  if (rs.schema != fe_schema()) {
    throw FormatError("frame element ruleset '" + rs.label +
                      "' does not use the frame element window schema");
  }
  auto [frame, fe] = split_fe_label(rs.label);
  const FrameDef& def = registry_->at(frame);
  if (!def.has_element(fe)) {
    throw LookupError("frame '" + frame + "' has no element '" + fe + "'");
  }
  fe_[frame].insert_or_assign(fe, std::move(rs));
}

ParserModel load_model(const std::string& dir, const FrameRegistry& registry) {
  ParserModel model(&registry);
  auto load_dir = [](const fs::path& p, auto&& add) {
    if (!fs::exists(p)) return;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(p)) {
      if (entry.path().extension() == ".rules") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) add(load_ruleset(f.string()));
  };
  fs::path root(dir);
  if (!fs::exists(root)) throw IoError("model directory does not exist: " + dir);
  load_dir(root / "target", [&](RuleSet rs) { model.add_target_ruleset(std::move(rs)); });
  load_dir(root / "fe", [&](RuleSet rs) { model.add_fe_ruleset(std::move(rs)); });
  return model;
}

std::vector<TargetHit> identify_targets(const Sentence& sentence, const ParserModel& model) {
  std::vector<TargetHit> hits;
  for (int i = 0; i < sentence.size(); ++i) {
    FeatureVector fv = extract_window(sentence, i);
    const std::string* best_frame = nullptr;
    Confidence best;
    for (const auto& [frame, rs] : model.target_rulesets()) {
      auto conf = classify(rs, fv);
      if (!conf || conf->value() < rs.threshold) continue;
      // Strict improvement keeps the lexicographically first frame on ties.
      if (!best_frame || compare_confidence(*conf, best) > 0) {
        best_frame = &frame;
        best = *conf;
      }
    }
    if (best_frame) hits.push_back(TargetHit{i, *best_frame, best});
  }
  return hits;
}

std::vector<FrameElementSpan> identify_frame_elements(const Sentence& sentence, int target_index,
                                                      const std::string& frame,
                                                      const ParserModel& model) {
  model.registry().at(frame);  // unknown frame -> LookupError
  auto frame_it = model.fe_rulesets().find(frame);
  if (frame_it == model.fe_rulesets().end()) return {};
  const auto& rulesets = frame_it->second;

  // Per-token best frame element label, the target token never labeled.
  std::vector<const std::string*> labels(std::size_t(sentence.size()), nullptr);
  std::vector<Confidence> token_conf(std::size_t(sentence.size()));
  for (int i = 0; i < sentence.size(); ++i) {
    if (i == target_index) continue;
    FeatureVector fv = extract_fe_window(sentence, i, target_index);
    for (const auto& [fe, rs] : rulesets) {
      auto conf = classify(rs, fv);
      if (!conf || conf->value() < rs.threshold) continue;
      if (!labels[std::size_t(i)] || compare_confidence(*conf, token_conf[std::size_t(i)]) > 0) {
        labels[std::size_t(i)] = &fe;
        token_conf[std::size_t(i)] = *conf;
      }
    }
  }

  // Maximal contiguous runs of one label become spans; span confidence is the
  // best token confidence inside the run.
  std::vector<FrameElementSpan> spans;
  int i = 0;
  while (i < sentence.size()) {
    if (!labels[std::size_t(i)]) {
      ++i;
      continue;
    }
    int j = i + 1;
    Confidence best = token_conf[std::size_t(i)];
    while (j < sentence.size() && labels[std::size_t(j)] &&
           *labels[std::size_t(j)] == *labels[std::size_t(i)]) {
      if (compare_confidence(token_conf[std::size_t(j)], best) > 0) {
        best = token_conf[std::size_t(j)];
      }
      ++j;
    }
    spans.push_back(FrameElementSpan{*labels[std::size_t(i)], {i, j}, best.value()});
    i = j;
  }
  return spans;
}

std::vector<FrameAnnotation> parse_sentence(const Sentence& sentence, const ParserModel& model) {
  std::vector<FrameAnnotation> annotations;
  for (const TargetHit& hit : identify_targets(sentence, model)) {
    FrameAnnotation ann;
    ann.frame = hit.frame;
    ann.target = {hit.index, hit.index + 1};
    ann.elements = identify_frame_elements(sentence, hit.index, hit.frame, model);
    ann.confidence = hit.confidence.value();
    annotations.push_back(std::move(ann));
  }
  return annotations;
}

std::vector<std::vector<FrameAnnotation>> parse_corpus(const std::vector<Sentence>& sentences,
                                                       const ParserModel& model, int jobs) {
  std::vector<std::vector<FrameAnnotation>> out(sentences.size());
  if (jobs < 1) jobs = 1;
  jobs = int(std::min<std::size_t>(std::size_t(jobs), sentences.size()));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      out[i] = parse_sentence(sentences[i], model);
    }
    return out;
  }
  std::vector<std::thread> workers;
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&]() {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= sentences.size()) break;
        try {
          out[i] = parse_sentence(sentences[i], model);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

std::string annotation_to_json(const AnnotationRecord& record) {
  nlohmann::ordered_json j;
  j["doc_id"] = record.doc_id;
  j["sentence"] = record.sentence_index;
  j["frame"] = record.annotation.frame;
  j["target"] = {record.annotation.target.begin, record.annotation.target.end};
  nlohmann::ordered_json elements = nlohmann::ordered_json::array();
  for (const auto& fe : record.annotation.elements) {
    elements.push_back(nlohmann::ordered_json{
        {"fe", fe.name}, {"span", {fe.span.begin, fe.span.end}}, {"confidence", fe.confidence}});
  }
  j["elements"] = std::move(elements);
  j["confidence"] = record.annotation.confidence;
  return j.dump();
}

AnnotationRecord annotation_from_json(const std::string& line, const std::string& where,
                                      int lineno) {
  AnnotationRecord record;
  try {
    auto j = nlohmann::ordered_json::parse(line);
    record.doc_id = j.at("doc_id").get<std::string>();
    record.sentence_index = j.at("sentence").get<int>();
    record.annotation.frame = j.at("frame").get<std::string>();
    record.annotation.target = {j.at("target").at(0).get<int>(), j.at("target").at(1).get<int>()};
    for (const auto& fj : j.at("elements")) {
      FrameElementSpan fe;
      fe.name = fj.at("fe").get<std::string>();
      fe.span = {fj.at("span").at(0).get<int>(), fj.at("span").at(1).get<int>()};
      fe.confidence = fj.value("confidence", 1.0);
      record.annotation.elements.push_back(std::move(fe));
    }
    record.annotation.confidence = j.value("confidence", 1.0);
  } catch (const nlohmann::ordered_json::exception& e) {
    throw FormatError(where, lineno, e.what());
  }
  return record;
}

}  // namespace framekit
