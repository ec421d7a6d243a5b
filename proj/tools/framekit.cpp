// Command-line surface for the batch pipeline: rule training, parsing,
// knowledge-base ingestion, temporal queries, profile reports, verbalization,
// evaluation and the generate-parse round trip.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "framekit/corpus.hpp"
#include "framekit/eval.hpp"
#include "framekit/gazetteer.hpp"
#include "framekit/parser.hpp"
#include "framekit/registry.hpp"
#include "framekit/roundtrip.hpp"
#include "framekit/rules.hpp"
#include "framekit/store.hpp"
#include "framekit/training.hpp"
#include "framekit/verbalizer.hpp"

namespace fs = std::filesystem;
using namespace framekit;

namespace {

struct TrainOptions {
  std::string corpus_path;
  std::string registry_path;
  std::string stage;
  std::string frame;
  std::string out_dir;
  int max_literals = 3;
  double min_laplace = 0.66;
  std::int64_t min_coverage = 2;
  bool no_set_merge = false;
  int jobs = 1;
};

LearnerConfig config_from(const TrainOptions& opt) {
  LearnerConfig cfg;
  cfg.max_literals = opt.max_literals;
  cfg.min_laplace = opt.min_laplace;
  cfg.min_coverage = opt.min_coverage;
  cfg.set_merge = !opt.no_set_merge;
  cfg.validate();
  return cfg;
}

template <typename Work>
void run_parallel(std::size_t count, int jobs, Work&& work) {
  if (jobs < 1) jobs = 1;
  jobs = int(std::min<std::size_t>(std::size_t(jobs), count));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&]() {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) break;
        try {
          work(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (error) std::rethrow_exception(error);
}

int cmd_train(const TrainOptions& opt) {
  LearnerConfig cfg = config_from(opt);
  FrameRegistry registry = load_registry(opt.registry_path);
  std::vector<Sentence> sentences = load_corpus(opt.corpus_path);
  check_referential_integrity(sentences, registry);

  fs::path out(opt.out_dir);
  fs::create_directories(out / opt.stage);

  if (opt.stage == "target") {
    TargetTrainingSet set = build_target_training(sentences);
    SubsetCounts counts(set.matrix, cfg.max_literals);
    std::vector<std::string> frames;
    for (const auto& [frame, mask] : set.positives) {
      if (opt.frame.empty() || frame == opt.frame) frames.push_back(frame);
    }
    if (!opt.frame.empty() && frames.empty()) {
      throw LookupError("no gold targets for frame '" + opt.frame + "' in corpus");
    }
    std::vector<LearnResult> results(frames.size());
    run_parallel(frames.size(), opt.jobs, [&](std::size_t i) {
      results[i] = learn_over_matrix(set.matrix, set.positives.at(frames[i]), counts, frames[i],
                                     cfg);
    });
    for (std::size_t i = 0; i < frames.size(); ++i) {
      save_ruleset(results[i].ruleset, (out / "target" / (frames[i] + ".rules")).string());
      std::cout << "frame " << frames[i] << ": " << results[i].ruleset.rules.size()
                << " rules, " << results[i].uncovered_positives << " uncovered positives\n";
    }
    return 0;
  }

  // fe stage
  std::vector<std::string> frames;
  {
    std::map<std::string, bool> seen;
    for (const auto& s : sentences) {
      for (const auto& ann : s.gold) seen[ann.frame] = true;
    }
    for (const auto& [frame, unused] : seen) {
      if (opt.frame.empty() || frame == opt.frame) frames.push_back(frame);
    }
  }
  if (!opt.frame.empty() && frames.empty()) {
    throw LookupError("no gold annotations for frame '" + opt.frame + "' in corpus");
  }
  struct FeResult {
    std::vector<std::pair<std::string, LearnResult>> learned;
  };
  std::vector<FeResult> results(frames.size());
  run_parallel(frames.size(), opt.jobs, [&](std::size_t i) {
    FeTrainingSet set = build_fe_training(sentences, frames[i]);
    if (set.matrix.rows() == 0) return;
    SubsetCounts counts(set.matrix, cfg.max_literals);
    for (const auto& [fe, mask] : set.positives) {
      results[i].learned.emplace_back(
          fe, learn_over_matrix(set.matrix, mask, counts, fe_label(frames[i], fe), cfg));
    }
  });
  for (std::size_t i = 0; i < frames.size(); ++i) {
    for (auto& [fe, learned] : results[i].learned) {
      save_ruleset(learned.ruleset, (out / "fe" / (frames[i] + "__" + fe + ".rules")).string());
      std::cout << "frame " << frames[i] << " element " << fe << ": "
                << learned.ruleset.rules.size() << " rules, " << learned.uncovered_positives
                << " uncovered positives\n";
    }
  }
  return 0;
}

int cmd_parse(const std::string& model_dir, const std::string& registry_path,
              const std::string& corpus_path, const std::string& out_path, int jobs) {
  FrameRegistry registry = load_registry(registry_path);
  ParserModel model = load_model(model_dir, registry);
  std::vector<Sentence> sentences = load_corpus(corpus_path);

  auto parsed = parse_corpus(sentences, model, jobs);

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw IoError("cannot write output file: " + out_path);
  for (std::size_t s = 0; s < parsed.size(); ++s) {
    for (const auto& ann : parsed[s]) {
      out << annotation_to_json({sentences[s].doc_id, int(s), ann}) << '\n';
    }
  }
  return 0;
}

std::vector<AnnotationRecord> load_annotation_records(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open annotation file: " + path);
  std::vector<AnnotationRecord> records;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    records.push_back(annotation_from_json(line, path, lineno));
  }
  return records;
}

int cmd_ingest(const std::string& annotations_path, const std::string& corpus_path,
               const std::string& registry_path, const std::string& gazetteer_path,
               const std::string& store_path) {
  FrameRegistry registry = load_registry(registry_path);
  std::vector<Sentence> sentences = load_corpus(corpus_path);
  Gazetteer gazetteer = load_gazetteer(gazetteer_path);

  bool fresh = !fs::exists(store_path);
  TemporalStore store = fresh ? TemporalStore(&registry) : load_store(store_path, registry);
  std::size_t replayed = store.log().size();

  std::int64_t created = 0, merged = 0;
  for (const auto& record : load_annotation_records(annotations_path)) {
    if (record.sentence_index < 0 || record.sentence_index >= int(sentences.size())) {
      throw LookupError("annotation names sentence " + std::to_string(record.sentence_index) +
                        " outside the corpus");
    }
    const Sentence& sentence = sentences[std::size_t(record.sentence_index)];
    if (sentence.doc_id != record.doc_id) {
      throw LookupError("annotation doc_id '" + record.doc_id + "' does not match sentence " +
                        std::to_string(record.sentence_index) + " doc_id '" + sentence.doc_id +
                        "'");
    }
    IngestOutcome outcome =
        store.ingest(record.annotation, sentence, gazetteer, record.sentence_index);
    outcome.merged ? ++merged : ++created;
  }

  std::ofstream out(store_path, fresh ? std::ios::binary : std::ios::binary | std::ios::app);
  if (!out) throw IoError("cannot write store file: " + store_path);
  if (fresh) out << store_header_line() << '\n';
  for (std::size_t i = replayed; i < store.log().size(); ++i) {
    out << serialize_event(store.log()[i]) << '\n';
  }
  std::cout << created << " new instances, " << merged << " merged\n";
  return 0;
}

int cmd_query(const std::string& store_path, const std::string& registry_path,
              const std::string& at) {
  auto day = parse_date(at);
  if (!day) throw FormatError("--at expects YYYY-MM-DD, got '" + at + "'");
  FrameRegistry registry = load_registry(registry_path);
  TemporalStore store = load_store(store_path, registry);
  for (const FrameInstance* inst : store.facts_at(*day)) {
    std::cout << instance_to_json(store, *inst) << '\n';
  }
  return 0;
}

int cmd_profile(const std::string& store_path, const std::string& registry_path,
                const std::string& entity, const std::string& lang, bool as_json) {
  FrameRegistry registry = load_registry(registry_path);
  TemporalStore store = load_store(store_path, registry);
  auto profile = store.entity_profile(entity);
  std::cout << (as_json ? render_profile_json(profile, lang, registry, store)
                        : render_profile(profile, lang, registry, store));
  return 0;
}

int cmd_verbalize(const std::string& store_path, const std::string& registry_path,
                  const std::string& lang, const std::string& out_path) {
  FrameRegistry registry = load_registry(registry_path);
  TemporalStore store = load_store(store_path, registry);
  std::vector<Sentence> sentences;
  for (const auto& inst : store.instances()) {
    sentences.push_back(verbalize(inst, lang, registry, resolver_from(store)).sentence);
  }
  std::string text = write_corpus(sentences);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot write output file: " + out_path);
    out << text;
  }
  return 0;
}

int cmd_eval(const std::string& gold_path, const std::string& pred_path, bool per_frame,
             bool as_json) {
  std::vector<Sentence> sentences = load_corpus(gold_path);
  AnnotationLayers gold(sentences.size());
  for (std::size_t s = 0; s < sentences.size(); ++s) gold[s] = sentences[s].gold;

  AnnotationLayers predicted(sentences.size());
  for (const auto& record : load_annotation_records(pred_path)) {
    if (record.sentence_index < 0 || record.sentence_index >= int(sentences.size())) {
      throw LookupError("prediction names sentence " + std::to_string(record.sentence_index) +
                        " outside the gold corpus");
    }
    predicted[std::size_t(record.sentence_index)].push_back(record.annotation);
  }

  MetricsReport targets = score_targets(gold, predicted);
  MetricsReport elements = score_frame_elements(gold, predicted);
  std::vector<FrameScore> frames;
  if (per_frame || as_json) frames = per_frame_report(gold, predicted);

  if (as_json) {
    std::cout << metrics_to_json(targets, elements, per_frame ? &frames : nullptr) << '\n';
  } else {
    std::cout << render_metrics_table(targets, elements);
    if (per_frame) std::cout << '\n' << render_per_frame_table(frames);
  }
  return 0;
}

int cmd_roundtrip(const std::string& registry_path, const std::string& lang,
                  int instances_per_frame, std::uint64_t seed) {
  FrameRegistry registry = load_registry(registry_path);
  RoundtripResult result = roundtrip_model(registry, lang, instances_per_frame, seed);
  std::cout << render_roundtrip_report(result.report);
  return result.report.all_exact() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frame-semantic information extraction toolkit"};
  app.require_subcommand(1);

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "learn rule sets from an annotated corpus");
  train_cmd->add_option("--corpus", train.corpus_path, "featurized corpus (TSV)")->required();
  train_cmd->add_option("--registry", train.registry_path, "frame registry (JSON)")->required();
  train_cmd->add_option("--stage", train.stage, "target or fe")
      ->required()
      ->check(CLI::IsMember({"target", "fe"}));
  train_cmd->add_option("--frame", train.frame, "train only this frame");
  train_cmd->add_option("--out", train.out_dir, "model output directory")->required();
  train_cmd->add_option("--max-literals", train.max_literals, "max non-wildcard slots per rule");
  train_cmd->add_option("--min-laplace", train.min_laplace, "laplace pruning threshold");
  train_cmd->add_option("--min-coverage", train.min_coverage, "minimum matches per rule");
  train_cmd->add_flag("--no-set-merge", train.no_set_merge, "disable value-set generalization");
  train_cmd->add_option("--jobs", train.jobs, "worker count");

  std::string model_dir, registry_path, corpus_path, out_path;
  int jobs = 1;
  auto* parse_cmd = app.add_subcommand("parse", "parse a corpus into frame annotations");
  parse_cmd->add_option("--model", model_dir, "model directory")->required();
  parse_cmd->add_option("--registry", registry_path, "frame registry (JSON)")->required();
  parse_cmd->add_option("--corpus", corpus_path, "featurized corpus (TSV)")->required();
  parse_cmd->add_option("--out", out_path, "annotation records output (JSONL)")->required();
  parse_cmd->add_option("--jobs", jobs, "worker count");

  std::string annotations_path, gazetteer_path, store_path;
  auto* ingest_cmd = app.add_subcommand("ingest", "store parsed annotations as frame instances");
  ingest_cmd->add_option("--annotations", annotations_path, "annotation records (JSONL)")
      ->required();
  ingest_cmd->add_option("--corpus", corpus_path, "corpus the annotations refer to")->required();
  ingest_cmd->add_option("--registry", registry_path, "frame registry (JSON)")->required();
  ingest_cmd->add_option("--gazetteer", gazetteer_path, "entity gazetteer (TSV)")->required();
  ingest_cmd->add_option("--store", store_path, "store file (JSONL, appended)")->required();

  std::string at_date;
  auto* query_cmd = app.add_subcommand("query", "facts valid on a given day");
  query_cmd->add_option("--store", store_path, "store file")->required();
  query_cmd->add_option("--registry", registry_path, "frame registry (JSON)")->required();
  query_cmd->add_option("--at", at_date, "day, YYYY-MM-DD")->required();

  std::string entity_id, lang = "en";
  bool as_json = false;
  auto* profile_cmd = app.add_subcommand("profile", "verbalized profile of one entity");
  profile_cmd->add_option("--store", store_path, "store file")->required();
  profile_cmd->add_option("--entity", entity_id, "entity id")->required();
  profile_cmd->add_option("--lang", lang, "template language code")->required();
  profile_cmd->add_option("--registry", registry_path, "frame registry (JSON)")->required();
  profile_cmd->add_flag("--json", as_json, "structured records instead of text");

  auto* verbalize_cmd = app.add_subcommand("verbalize", "render stored facts as a corpus");
  verbalize_cmd->add_option("--store", store_path, "store file")->required();
  verbalize_cmd->add_option("--lang", lang, "template language code")->required();
  verbalize_cmd->add_option("--registry", registry_path, "frame registry (JSON)")->required();
  verbalize_cmd->add_option("--out", out_path, "output corpus file (default stdout)");

  std::string gold_path, pred_path;
  bool per_frame = false;
  auto* eval_cmd = app.add_subcommand("eval", "score predictions against gold annotations");
  eval_cmd->add_option("--gold", gold_path, "gold corpus (TSV)")->required();
  eval_cmd->add_option("--pred", pred_path, "predicted annotations (JSONL)")->required();
  eval_cmd->add_flag("--per-frame", per_frame, "per-frame target F1 breakdown");
  eval_cmd->add_flag("--json", as_json, "structured output");

  int instances_per_frame = 5;
  std::uint64_t seed = 1;
  auto* roundtrip_cmd =
      app.add_subcommand("roundtrip", "verify the generate-parse loop over a registry");
  roundtrip_cmd->add_option("--registry", registry_path, "frame registry (JSON)")->required();
  roundtrip_cmd->add_option("--lang", lang, "template language code")->required();
  roundtrip_cmd->add_option("--instances-per-frame", instances_per_frame,
                            "generated instances per frame");
  roundtrip_cmd->add_option("--seed", seed, "generator seed");

  CLI11_PARSE(app, argc, argv);

  std::string active = app.get_subcommands().front()->get_name();
  try {
    if (train_cmd->parsed()) return cmd_train(train);
    if (parse_cmd->parsed()) {
      return cmd_parse(model_dir, registry_path, corpus_path, out_path, jobs);
    }
    if (ingest_cmd->parsed()) {
      return cmd_ingest(annotations_path, corpus_path, registry_path, gazetteer_path,
                        store_path);
    }
    if (query_cmd->parsed()) return cmd_query(store_path, registry_path, at_date);
    if (profile_cmd->parsed()) {
      return cmd_profile(store_path, registry_path, entity_id, lang, as_json);
    }
    if (verbalize_cmd->parsed()) {
      return cmd_verbalize(store_path, registry_path, lang, out_path);
    }
    if (eval_cmd->parsed()) return cmd_eval(gold_path, pred_path, per_frame, as_json);
    if (roundtrip_cmd->parsed()) {
      return cmd_roundtrip(registry_path, lang, instances_per_frame, seed);
    }
  } catch (const Error& e) {
    std::cerr << "framekit " << active << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "framekit " << active << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}
