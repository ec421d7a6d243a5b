#include "framekit/training.hpp"

namespace framekit {

TargetTrainingSet build_target_training(const std::vector<Sentence>& sentences) {
  TargetTrainingSet set;
  std::vector<std::pair<std::size_t, std::string>> hits;  // (row, frame)
  std::size_t row = 0;
  for (const auto& s : sentences) {
    for (int i = 0; i < s.size(); ++i, ++row) {
      set.matrix.add_row(extract_window(s, i));
      for (const auto& ann : s.gold) {
        if (ann.target.contains(i)) hits.emplace_back(row, ann.frame);
      }
    }
  }
  for (const auto& [r, frame] : hits) {
    auto [it, inserted] = set.positives.try_emplace(frame);
    if (inserted) it->second.assign(set.matrix.rows(), false);
    it->second[r] = true;
  }
  return set;
}

FeTrainingSet build_fe_training(const std::vector<Sentence>& sentences,
                                const std::string& frame) {
  FeTrainingSet set;
  std::vector<std::pair<std::size_t, std::string>> hits;  // (row, fe)
  std::size_t row = 0;
  for (const auto& s : sentences) {
    for (const auto& ann : s.gold) {
      if (ann.frame != frame) continue;
      int target_index = ann.target.begin;
      for (int i = 0; i < s.size(); ++i) {
        if (ann.target.contains(i)) continue;  // targets are never element tokens
        set.matrix.add_row(extract_fe_window(s, i, target_index));
        for (const auto& fe : ann.elements) {
          if (fe.span.contains(i)) hits.emplace_back(row, fe.name);
        }
        ++row;
      }
    }
  }
  for (const auto& [r, fe] : hits) {
    auto [it, inserted] = set.positives.try_emplace(fe);
    if (inserted) it->second.assign(set.matrix.rows(), false);
    it->second[r] = true;
  }
  return set;
}

}  // namespace framekit
