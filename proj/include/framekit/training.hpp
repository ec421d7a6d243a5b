#ifndef FRAMEKIT_TRAINING_HPP
#define FRAMEKIT_TRAINING_HPP

#include <map>
#include <string>
#include <vector>

#include "framekit/corpus.hpp"
#include "framekit/rules.hpp"

namespace framekit {

// Target stage: one window per token over the whole corpus; a token is a
// positive for every frame whose gold target range contains it.
struct TargetTrainingSet {
  WindowMatrix matrix{target_schema()};
  std::map<std::string, std::vector<bool>> positives;  // frame -> per-row mask
};

TargetTrainingSet build_target_training(const std::vector<Sentence>& sentences);

// Frame element stage for one frame: windows over all tokens of its annotated
// sentences except the target tokens, one set per gold annotation layer.
struct FeTrainingSet {
  WindowMatrix matrix{fe_schema()};
  std::map<std::string, std::vector<bool>> positives;  // fe -> per-row mask
};

FeTrainingSet build_fe_training(const std::vector<Sentence>& sentences,
                                const std::string& frame);

}  // namespace framekit

#endif
