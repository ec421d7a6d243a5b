#ifndef FRAMEKIT_EVAL_HPP
#define FRAMEKIT_EVAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "framekit/corpus.hpp"

namespace framekit {

double f1(double p, double r);  // 2pr/(p+r), 0 when p+r == 0

struct MetricsReport {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;

  double precision() const { return tp + fp == 0 ? 0.0 : double(tp) / double(tp + fp); }
  double recall() const { return tp + fn == 0 ? 0.0 : double(tp) / double(tp + fn); }
  double f1_score() const { return f1(precision(), recall()); }
};

// Parallel per-sentence annotation lists; exact-match scoring throughout.
using AnnotationLayers = std::vector<std::vector<FrameAnnotation>>;

// A predicted target counts when a gold annotation has the same target range
// and frame.
MetricsReport score_targets(const AnnotationLayers& gold, const AnnotationLayers& predicted);

// Frame elements are scored only under correctly identified targets; a hit
// needs matching frame, element name and exact span.
MetricsReport score_frame_elements(const AnnotationLayers& gold,
                                   const AnnotationLayers& predicted);

struct FrameScore {
  std::string frame;
  double f1 = 0.0;
  MetricsReport targets;
};

// Target identification per frame, sorted by descending F1.
std::vector<FrameScore> per_frame_report(const AnnotationLayers& gold,
                                         const AnnotationLayers& predicted);

std::string render_metrics_table(const MetricsReport& targets, const MetricsReport& elements);
std::string render_per_frame_table(const std::vector<FrameScore>& scores);
std::string metrics_to_json(const MetricsReport& targets, const MetricsReport& elements,
                            const std::vector<FrameScore>* per_frame);

}  // namespace framekit

#endif
