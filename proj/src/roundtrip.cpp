#include "framekit/roundtrip.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <unordered_set>

#include "framekit/training.hpp"
#include "framekit/verbalizer.hpp"

namespace framekit {

bool RoundtripReport::all_exact() const {
  if (!conflicts.empty()) return false;
  for (const auto& f : frames) {
    if (f.exact != f.generated) return false;
  }
  return true;
}

std::string RoundtripReport::summary() const {
  int exact_frames = 0;
  for (const auto& f : frames) {
    if (f.exact == f.generated) ++exact_frames;
  }
  return std::to_string(exact_frames) + "/" + std::to_string(frames.size()) + " frames exact";
}

namespace {

// Deterministic pronounceable word factory; every word is unique and distinct
// from all template vocabulary, so synthetic fillers never collide with
// target lemmas or attached literals.
class WordFactory {
 public:
  WordFactory(std::uint64_t seed, const FrameRegistry& registry, const std::string& lang)
      : rng_(seed) {
    for (const auto& [name, def] : registry.frames()) {
      auto tpl = def.templates.find(lang);
      if (tpl == def.templates.end()) continue;
      for (const auto& seg : tpl->second.segments) {
        for (const auto* tokens : {&seg.literal, &seg.pre, &seg.post}) {
          for (const auto& t : *tokens) {
            used_.insert(ascii_lower(t.surface));
            used_.insert(ascii_lower(t.lemma));
          }
        }
      }
    }
  }

  std::string word(bool capitalized) {
    static const char* onsets[] = {"b", "d", "f", "g", "k", "l", "m",
                                   "n", "p", "r", "s", "t", "v", "z"};
    static const char* vowels[] = {"a", "e", "i", "o", "u"};
    for (int attempt = 0; attempt < 1000; ++attempt) {
      int syllables = 2 + int(rng_() % 2);
      std::string w;
      for (int s = 0; s < syllables; ++s) {
        w += onsets[rng_() % 14];
        w += vowels[rng_() % 5];
      }
      if (used_.count(w)) continue;
      used_.insert(w);
      if (capitalized) w[0] = char(w[0] - 'a' + 'A');
      return w;
    }
    throw Error("word factory exhausted");
  }

  std::string phrase(int words, bool capitalized) {
    std::string out;
    for (int i = 0; i < words; ++i) {
      if (i) out += ' ';
      out += word(capitalized);
    }
    return out;
  }

 private:
  std::mt19937_64 rng_;
  std::unordered_set<std::string> used_;
};

struct SlotPool {
  std::string fe;
  bool anchor = false;
  std::vector<Filler> values;
};

LearnerConfig roundtrip_config() {
  LearnerConfig cfg;
  cfg.max_literals = 3;
  cfg.min_laplace = 0.6;
  cfg.min_coverage = 1;
  cfg.set_merge = true;
  return cfg;
}

std::string describe_fillers(const std::map<std::string, Filler>& fillers) {
  std::string out;
  for (const auto& [fe, f] : fillers) {
    if (!out.empty()) out += ", ";
    out += fe + "=" + (f.linked ? "@" + f.entity_id : "'" + f.text + "'");
  }
  return out.empty() ? "(none)" : out;
}

}  // namespace

RoundtripResult roundtrip_model(const FrameRegistry& registry, const std::string& lang,
                                int instances_per_frame, std::uint64_t seed) {
  if (instances_per_frame < 1) throw Error("instances_per_frame must be >= 1");

  WordFactory words(seed, registry, lang);
  RoundtripResult result{ParserModel(&registry), Gazetteer{}, {}, {}};

  // Target lemmas must be distinct across frames or the parser cannot tell
  // the frames apart on their own output.
  std::map<std::string, std::vector<std::string>> lemma_frames;
  for (const auto& [name, def] : registry.frames()) {
    auto tpl = def.templates.find(lang);
    if (tpl == def.templates.end()) {
      throw LookupError("frame '" + name + "' has no template for language '" + lang + "'");
    }
    lemma_frames[tpl->second.target_token().lemma].push_back(name);
  }
  for (const auto& [lemma, frames] : lemma_frames) {
    if (frames.size() > 1) {
      result.report.conflicts.push_back("frames " + join(frames, ", ") +
                                        " share target lemma '" + lemma + "'");
    }
  }

  // Per-frame filler pools, then the instance coverage set.
  int entity_counter = 0;
  std::map<std::string, std::vector<SlotPool>> frame_pools;
  for (const auto& [frame_name, def] : registry.frames()) {
    const Template& tpl = def.templates.at(lang);
    std::vector<SlotPool> pools;
    for (const auto& seg : tpl.segments) {
      if (!seg.is_slot || seg.fe == "Time") continue;
      const FeDef& fe_def = *def.element(seg.fe);
      SlotPool pool;
      pool.fe = seg.fe;
      pool.anchor = std::find(def.anchor_fes.begin(), def.anchor_fes.end(), seg.fe) !=
                    def.anchor_fes.end();
      // Two values per slot: every filler word recurs across the coverage
      // set, so clean per-word rules outscore any context rule with false
      // positives.
      for (int k = 0; k < 2; ++k) {
        if (fe_def.filler == FillerKind::String) {
          pool.values.push_back(Filler::unidentified(words.phrase(1 + k, false)));
        } else {
          Entity e;
          e.id = "rt" + std::to_string(++entity_counter);
          e.kind = fe_def.filler == FillerKind::OrganizationEntity ||
                           (fe_def.filler == FillerKind::AnyEntity && k == 1)
                       ? EntityKind::Organization
                       : EntityKind::Person;
          e.canonical = words.phrase(2, true);
          result.gazetteer.add(e);
          pool.values.push_back(Filler::entity(e.id));
        }
      }
      pools.push_back(std::move(pool));
    }
    frame_pools.emplace(frame_name, std::move(pools));
  }

  for (const auto& [frame_name, def] : registry.frames()) {
    const auto& pools = frame_pools.at(frame_name);
    int last_optional = -1;
    for (int p = 0; p < int(pools.size()); ++p) {
      if (!pools[p].anchor) last_optional = p;
    }
    for (int j = 0; j < instances_per_frame; ++j) {
      FrameInstance inst;
      inst.id = "g-" + frame_name + "-" + std::to_string(j);
      inst.frame = frame_name;
      for (int p = 0; p < int(pools.size()); ++p) {
        if (j % 3 == 2 && p == last_optional) continue;  // exercise slot omission
        inst.fillers.emplace(pools[p].fe, pools[p].values[std::size_t((j + p) % 2)]);
      }
      if (def.templates.at(lang).time_suffix && j % 2 == 0) {
        inst.time = TimeValue::exact(Day{std::chrono::year_month_day{
                        std::chrono::year{2000}, std::chrono::month{1}, std::chrono::day{1}}} +
                    std::chrono::days{37 * j});
      }
      result.instances.push_back(std::move(inst));
    }
  }

  // Verbalize the coverage set; these sentences are the training corpus.
  EntityResolver resolver = resolver_from(result.gazetteer);
  std::vector<Sentence> sentences;
  sentences.reserve(result.instances.size());
  for (const auto& inst : result.instances) {
    sentences.push_back(verbalize(inst, lang, registry, resolver).sentence);
  }

  LearnerConfig cfg = roundtrip_config();

  // Target stage: one matrix over every token of every sentence.
  {
    TargetTrainingSet set = build_target_training(sentences);
    SubsetCounts counts(set.matrix, cfg.max_literals);
    for (const auto& [frame_name, mask] : set.positives) {
      LearnResult learned = learn_over_matrix(set.matrix, mask, counts, frame_name, cfg);
      result.model.add_target_ruleset(std::move(learned.ruleset));
    }
  }

  // Frame element stage: per frame, windows over that frame's sentences.
  for (const auto& [frame_name, def] : registry.frames()) {
    FeTrainingSet set = build_fe_training(sentences, frame_name);
    if (set.matrix.rows() == 0) continue;
    SubsetCounts counts(set.matrix, cfg.max_literals);
    for (const auto& [fe_name, mask] : set.positives) {
      LearnResult learned =
          learn_over_matrix(set.matrix, mask, counts, fe_label(frame_name, fe_name), cfg);
      result.model.add_fe_ruleset(std::move(learned.ruleset));
    }
  }

  // Verification loop: every generated instance must survive the trip.
  std::map<std::string, FrameRoundtrip> by_frame;
  for (const auto& [frame_name, def] : registry.frames()) {
    by_frame.emplace(frame_name, FrameRoundtrip{frame_name, 0, 0, {}});
  }
  for (const auto& inst : result.instances) {
    FrameRoundtrip& fr = by_frame.at(inst.frame);
    ++fr.generated;

    Verbalization v = verbalize(inst, lang, registry, resolver);
    std::vector<FrameAnnotation> parsed = parse_sentence(v.sentence, result.model);
    if (parsed.size() != 1) {
      std::string frames;
      for (const auto& a : parsed) frames += (frames.empty() ? "" : ", ") + a.frame;
      fr.failures.push_back(inst.id + ": expected 1 annotation, got " +
                            std::to_string(parsed.size()) +
                            (frames.empty() ? "" : " (" + frames + ")"));
      continue;
    }
    TemporalStore probe(&registry);
    IngestOutcome outcome;
    try {
      outcome = probe.ingest(parsed[0], v.sentence, result.gazetteer, 0);
    } catch (const Error& e) {
      fr.failures.push_back(inst.id + ": ingest failed: " + e.what());
      continue;
    }
    const FrameInstance& got = probe.instances().back();
    if (got.frame != inst.frame) {
      fr.failures.push_back(inst.id + ": frame '" + got.frame + "' != '" + inst.frame + "'");
    } else if (dedup_key(got.frame, got.fillers) != dedup_key(inst.frame, inst.fillers) ||
               got.fillers != inst.fillers) {
      fr.failures.push_back(inst.id + ": fillers " + describe_fillers(got.fillers) +
                            " != " + describe_fillers(inst.fillers));
    } else {
      ++fr.exact;
    }
  }
  for (auto& [name, fr] : by_frame) result.report.frames.push_back(std::move(fr));

  return result;
}

std::string render_roundtrip_report(const RoundtripReport& report) {
  std::ostringstream out;
  for (const auto& c : report.conflicts) out << "conflict: " << c << '\n';
  for (const auto& f : report.frames) {
    out << f.frame << ": " << f.exact << "/" << f.generated << " exact\n";
    for (const auto& failure : f.failures) out << "  " << failure << '\n';
  }
  out << report.summary() << '\n';
  return out.str();
}

}  // namespace framekit
