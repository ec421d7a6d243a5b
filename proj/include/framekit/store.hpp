#ifndef FRAMEKIT_STORE_HPP
#define FRAMEKIT_STORE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "framekit/corpus.hpp"
#include "framekit/gazetteer.hpp"
#include "framekit/registry.hpp"

namespace framekit {

struct TimeValue {
  enum class Kind { Unknown, Approx, Exact };

  Kind kind = Kind::Unknown;
  Day day{};

  static TimeValue unknown() { return {}; }
  static TimeValue exact(Day d) { return {Kind::Exact, d}; }
  static TimeValue approx(Day d) { return {Kind::Approx, d}; }

  bool known() const { return kind != Kind::Unknown; }
  int precision() const { return kind == Kind::Exact ? 2 : kind == Kind::Approx ? 1 : 0; }

  bool operator==(const TimeValue& o) const {
    return kind == o.kind && (!known() || day == o.day);
  }
};

// Explicit Time element text wins; a bare year becomes July 1 of that year;
// otherwise the article publication date, and failing that, unknown.
TimeValue resolve_time(const FrameAnnotation& annotation, const Sentence& sentence);

struct Provenance {
  std::string doc_id;
  int sentence_index = 0;

  bool operator==(const Provenance&) const = default;
};

struct FrameInstance {
  std::string id;
  std::string frame;
  std::map<std::string, Filler> fillers;  // Time lives in `time`, never here
  TimeValue time;
  std::int64_t count = 1;
  std::vector<Provenance> provenance;
};

// Identity of a frame fact: frame plus canonicalized non-Time fillers.
// Insertion order independent; Time excluded so re-reports merge.
std::string dedup_key(const std::string& frame, const std::map<std::string, Filler>& fillers);

struct EntityRecord {
  EntityKind kind = EntityKind::Person;
  std::string canonical;
};

// One resolved ingest; the persisted log is a sequence of these.
struct IngestEvent {
  std::string frame;
  std::map<std::string, Filler> fillers;
  std::map<std::string, EntityRecord> entities;  // metadata for linked fillers
  TimeValue time;
  Provenance provenance;
};

struct IngestOutcome {
  std::string instance_id;
  bool merged = false;
};

// Append-only collection of frame instances with a derived day index.
// Single writer, readers see consistent snapshots.
class TemporalStore : public EntityUsage {
 public:
  explicit TemporalStore(const FrameRegistry* registry);

  IngestOutcome ingest(const FrameAnnotation& annotation, const Sentence& sentence,
                       const Gazetteer& gazetteer, int sentence_index = 0);
  IngestOutcome apply(const IngestEvent& event);

  // All event instances dated that day plus all states whose validity
  // interval contains it. Unknown-time instances never appear.
  std::vector<const FrameInstance*> facts_at(Day day) const;

  // Every instance referencing the entity, grouped by frame, count-descending
  // within a group, then by time. Throws LookupError for entities the store
  // has never seen.
  std::vector<const FrameInstance*> entity_profile(const std::string& entity_id) const;

  std::int64_t instance_count(const std::string& entity_id) const override;
  bool knows_entity(const std::string& id) const { return entities_.count(id) > 0; }
  const EntityRecord& entity_record(const std::string& id) const;

  const std::vector<FrameInstance>& instances() const { return instances_; }
  const std::vector<IngestEvent>& log() const { return log_; }
  const FrameRegistry& registry() const { return *registry_; }
  std::int64_t total_ingests() const { return std::int64_t(log_.size()); }

 private:
  struct Validity {
    bool indexed = false;
    Day start{};
    std::optional<Day> end;  // exclusive; open-ended when absent
  };

  const FrameRegistry* registry_;
  std::vector<FrameInstance> instances_;
  std::vector<IngestEvent> log_;
  std::unordered_map<std::string, std::size_t> by_key_;
  std::map<std::string, EntityRecord> entities_;
  std::unordered_map<std::string, std::int64_t> usage_;

  mutable bool validity_dirty_ = true;
  mutable std::vector<Validity> validity_;

  void recompute_validity() const;
};

// Gazetteer-aware profile helper: a gazetteer entity the store has never
// seen yields an empty profile instead of an error.
std::vector<const FrameInstance*> entity_profile(const TemporalStore& store,
                                                 const std::string& entity_id,
                                                 const Gazetteer* gazetteer);

// JSONL persistence. The first line is a header naming the format and the
// merge policy for instance times; each further line is one ingest event.
std::string store_header_line();
std::string serialize_event(const IngestEvent& event);
IngestEvent parse_event(const std::string& line, const std::string& where, int lineno);

void save_store(const TemporalStore& store, const std::string& path);
TemporalStore load_store(const std::string& path, const FrameRegistry& registry);

// Structured record for query output.
std::string instance_to_json(const TemporalStore& store, const FrameInstance& instance);

}  // namespace framekit

#endif
