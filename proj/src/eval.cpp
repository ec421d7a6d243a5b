#include "framekit/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

namespace framekit {

double f1(double p, double r) {
  if (p < 0.0 || p > 1.0 || r < 0.0 || r > 1.0) {
    throw Error("f1 expects ratios in [0, 1]");
  }
  if (p + r == 0.0) return 0.0;
  return 2.0 * p * r / (p + r);
}

namespace {

void check_same_sentences(const AnnotationLayers& gold, const AnnotationLayers& predicted) {
  if (gold.size() != predicted.size()) {
    throw Error("gold and predicted cover different sentence sets (" +
                std::to_string(gold.size()) + " vs " + std::to_string(predicted.size()) +
                " sentences)");
  }
}

bool same_target(const FrameAnnotation& a, const FrameAnnotation& b) {
  return a.frame == b.frame && a.target == b.target;
}

struct FePair {
  std::string name;
  Span span;
  bool operator==(const FePair&) const = default;
};

}  // namespace

MetricsReport score_targets(const AnnotationLayers& gold, const AnnotationLayers& predicted) {
  check_same_sentences(gold, predicted);
  MetricsReport report;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    std::vector<bool> gold_used(gold[s].size(), false);
    for (const auto& pred : predicted[s]) {
      bool hit = false;
      for (std::size_t g = 0; g < gold[s].size(); ++g) {
        if (!gold_used[g] && same_target(gold[s][g], pred)) {
          gold_used[g] = true;
          hit = true;
          break;
        }
      }
      hit ? ++report.tp : ++report.fp;
    }
    for (bool used : gold_used) {
      if (!used) ++report.fn;
    }
  }
  return report;
}

MetricsReport score_frame_elements(const AnnotationLayers& gold,
                                   const AnnotationLayers& predicted) {
  check_same_sentences(gold, predicted);
  MetricsReport report;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    std::vector<bool> gold_used(gold[s].size(), false);
    for (const auto& pred : predicted[s]) {
      const FrameAnnotation* matched = nullptr;
      for (std::size_t g = 0; g < gold[s].size(); ++g) {
        if (!gold_used[g] && same_target(gold[s][g], pred)) {
          gold_used[g] = true;
          matched = &gold[s][g];
          break;
        }
      }
      if (!matched) continue;  // spurious targets carry no element counts

      std::vector<bool> used(matched->elements.size(), false);
      for (const auto& fe : pred.elements) {
        bool hit = false;
        for (std::size_t g = 0; g < matched->elements.size(); ++g) {
          if (!used[g] && matched->elements[g].name == fe.name &&
              matched->elements[g].span == fe.span) {
            used[g] = true;
            hit = true;
            break;
          }
        }
        hit ? ++report.tp : ++report.fp;
      }
      for (bool u : used) {
        if (!u) ++report.fn;
      }
    }
  }
  return report;
}

std::vector<FrameScore> per_frame_report(const AnnotationLayers& gold,
                                         const AnnotationLayers& predicted) {
  check_same_sentences(gold, predicted);
  std::map<std::string, bool> frames;
  for (const auto& layer : gold) {
    for (const auto& ann : layer) frames[ann.frame] = true;
  }
  for (const auto& layer : predicted) {
    for (const auto& ann : layer) frames[ann.frame] = true;
  }

  std::vector<FrameScore> scores;
  for (const auto& [frame, unused] : frames) {
    auto restrict_to = [&](const AnnotationLayers& layers) {
      AnnotationLayers out(layers.size());
      for (std::size_t s = 0; s < layers.size(); ++s) {
        for (const auto& ann : layers[s]) {
          if (ann.frame == frame) out[s].push_back(ann);
        }
      }
      return out;
    };
    FrameScore fs;
    fs.frame = frame;
    fs.targets = score_targets(restrict_to(gold), restrict_to(predicted));
    fs.f1 = fs.targets.f1_score();
    scores.push_back(std::move(fs));
  }
  std::sort(scores.begin(), scores.end(), [](const FrameScore& a, const FrameScore& b) {
    if (a.f1 != b.f1) return a.f1 > b.f1;
    return a.frame < b.frame;
  });
  return scores;
}

namespace {

std::string pct(double ratio) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%5.1f%%", ratio * 100.0);
  return buf;
}

}  // namespace

std::string render_metrics_table(const MetricsReport& targets, const MetricsReport& elements) {
  std::ostringstream out;
  out << "                       Precision  Recall      F1\n";
  out << "Target identification     " << pct(targets.precision()) << "  " << pct(targets.recall())
      << "  " << pct(targets.f1_score()) << '\n';
  out << "FE identification         " << pct(elements.precision()) << "  "
      << pct(elements.recall()) << "  " << pct(elements.f1_score()) << '\n';
  return out.str();
}

std::string render_per_frame_table(const std::vector<FrameScore>& scores) {
  std::ostringstream out;
  std::size_t width = 0;
  for (const auto& s : scores) width = std::max(width, s.frame.size());
  for (const auto& s : scores) {
    out << s.frame << std::string(width - s.frame.size() + 2, ' ') << pct(s.f1) << '\n';
  }
  return out.str();
}

std::string metrics_to_json(const MetricsReport& targets, const MetricsReport& elements,
                            const std::vector<FrameScore>* per_frame) {
  nlohmann::ordered_json j;
  auto report = [](const MetricsReport& r) {
    return nlohmann::ordered_json{{"precision", r.precision()}, {"recall", r.recall()},
                                  {"f1", r.f1_score()},         {"tp", r.tp},
                                  {"fp", r.fp},                 {"fn", r.fn}};
  };
  j["targets"] = report(targets);
  j["frame_elements"] = report(elements);
  if (per_frame) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& s : *per_frame) {
      rows.push_back(nlohmann::ordered_json{{"frame", s.frame}, {"f1", s.f1}});
    }
    j["per_frame"] = std::move(rows);
  }
  return j.dump();
}

}  // namespace framekit
