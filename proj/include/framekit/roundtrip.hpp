#ifndef FRAMEKIT_ROUNDTRIP_HPP
#define FRAMEKIT_ROUNDTRIP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "framekit/gazetteer.hpp"
#include "framekit/parser.hpp"
#include "framekit/registry.hpp"
#include "framekit/store.hpp"

namespace framekit {

struct FrameRoundtrip {
  std::string frame;
  int generated = 0;
  int exact = 0;
  std::vector<std::string> failures;
};

struct RoundtripReport {
  std::vector<FrameRoundtrip> frames;
  std::vector<std::string> conflicts;  // e.g. two frames sharing a target lemma

  bool all_exact() const;
  std::string summary() const;  // "<exact>/<total> frames exact"
};

struct RoundtripResult {
  ParserModel model;
  Gazetteer gazetteer;                  // synthetic entities behind the instances
  std::vector<FrameInstance> instances; // the generated coverage set
  RoundtripReport report;
};

// Generates a coverage set of instances per frame, verbalizes them, learns a
// parser model from the verbalizations, then checks that every instance
// survives verbalize -> parse -> ingest with identical frame, fillers and
// dedup key. Deterministic for a fixed seed.
RoundtripResult roundtrip_model(const FrameRegistry& registry, const std::string& lang,
                                int instances_per_frame = 5, std::uint64_t seed = 1);

std::string render_roundtrip_report(const RoundtripReport& report);

}  // namespace framekit

#endif
