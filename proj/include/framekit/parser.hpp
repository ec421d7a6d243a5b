#ifndef FRAMEKIT_PARSER_HPP
#define FRAMEKIT_PARSER_HPP

#include <map>
#include <string>
#include <vector>

#include "framekit/corpus.hpp"
#include "framekit/registry.hpp"
#include "framekit/rules.hpp"

namespace framekit {

struct TargetHit {
  int index = 0;
  std::string frame;
  Confidence confidence;
};

// Immutable after load; parsing distinct sentences is freely parallel.
class ParserModel {
 public:
  explicit ParserModel(const FrameRegistry* registry) : registry_(registry) {}

  void add_target_ruleset(RuleSet rs);            // label = frame name
  void add_fe_ruleset(RuleSet rs);                // label = "<frame>::<fe>"

  const FrameRegistry& registry() const { return *registry_; }
  const std::map<std::string, RuleSet>& target_rulesets() const { return target_; }
  const std::map<std::string, std::map<std::string, RuleSet>>& fe_rulesets() const {
    return fe_;
  }

 private:
  const FrameRegistry* registry_;
  std::map<std::string, RuleSet> target_;                     // frame -> rules
  std::map<std::string, std::map<std::string, RuleSet>> fe_;  // frame -> fe -> rules
};

inline constexpr char kFeLabelSeparator[] = "::";

std::string fe_label(const std::string& frame, const std::string& fe);
std::pair<std::string, std::string> split_fe_label(const std::string& label);

// Reads <dir>/target/*.rules and <dir>/fe/*.rules.
ParserModel load_model(const std::string& dir, const FrameRegistry& registry);

std::vector<TargetHit> identify_targets(const Sentence& sentence, const ParserModel& model);

std::vector<FrameElementSpan> identify_frame_elements(const Sentence& sentence, int target_index,
                                                      const std::string& frame,
                                                      const ParserModel& model);

std::vector<FrameAnnotation> parse_sentence(const Sentence& sentence, const ParserModel& model);

// Deterministic: output is identical for any worker count.
std::vector<std::vector<FrameAnnotation>> parse_corpus(const std::vector<Sentence>& sentences,
                                                       const ParserModel& model, int jobs = 1);

// Line-delimited structured record for parsed annotations.
struct AnnotationRecord {
  std::string doc_id;
  int sentence_index = 0;
  FrameAnnotation annotation;
};

std::string annotation_to_json(const AnnotationRecord& record);
AnnotationRecord annotation_from_json(const std::string& line, const std::string& where,
                                      int lineno);

}  // namespace framekit

#endif
