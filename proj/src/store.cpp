#include "framekit/store.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace framekit {

using nlohmann::ordered_json;

namespace {

std::string span_text(const Sentence& sentence, const Span& span) {
  std::vector<std::string> parts;
  for (int i = span.begin; i < span.end; ++i) {
    parts.push_back(sentence.tokens[std::size_t(i)].surface);
  }
  return join(parts, " ");
}

bool is_year(const std::string& s) {
  if (s.size() != 4) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return s[0] != '0';
}

std::string canonical_filler(const Filler& f) {
  if (f.linked) return "E\x1f" + f.entity_id;
  return "S\x1f" + collapse_whitespace(f.text);
}

// Anchor tuple of a state fact; unfilled anchors count as absent.
std::string anchor_key(const FrameDef& def, const std::string& frame,
                       const std::map<std::string, Filler>& fillers) {
  std::string key = frame;
  for (const auto& fe : def.anchor_fes) {
    key += '\x1e';
    auto it = fillers.find(fe);
    key += it == fillers.end() ? std::string("\x1d") : canonical_filler(it->second);
  }
  return key;
}

int compare_time(const TimeValue& a, const TimeValue& b) {
  // Unknown sorts last; otherwise by day.
  if (a.known() != b.known()) return a.known() ? -1 : 1;
  if (!a.known()) return 0;
  if (a.day != b.day) return a.day < b.day ? -1 : 1;
  return 0;
}

}  // namespace

TimeValue resolve_time(const FrameAnnotation& annotation, const Sentence& sentence) {
  for (const auto& fe : annotation.elements) {
    if (fe.name != "Time") continue;
    std::string text = collapse_whitespace(span_text(sentence, fe.span));
    if (auto day = parse_date(text)) return TimeValue::exact(*day);
    if (is_year(text)) {
      int year = std::stoi(text);
      std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{7},
                                      std::chrono::day{1}};
      return TimeValue::approx(Day{ymd});
    }
    break;  // one Time element; unparseable text falls through to metadata
  }
  if (sentence.pub_date) return TimeValue::approx(*sentence.pub_date);
  return TimeValue::unknown();
}

std::string dedup_key(const std::string& frame, const std::map<std::string, Filler>& fillers) {
  std::string key = frame;
  for (const auto& [fe, filler] : fillers) {  // std::map iterates sorted by fe name
    if (fe == "Time") continue;
    key += '\x1e';
    key += fe;
    key += '\x1f';
    key += canonical_filler(filler);
  }
  return key;
}

TemporalStore::TemporalStore(const FrameRegistry* registry) : registry_(registry) {}

IngestOutcome TemporalStore::ingest(const FrameAnnotation& annotation, const Sentence& sentence,
                                    const Gazetteer& gazetteer, int sentence_index) {
  const FrameDef& def = registry_->at(annotation.frame);

  // Best span per frame element: highest confidence, earlier span on ties.
  std::map<std::string, const FrameElementSpan*> best_span;
  for (const auto& fe : annotation.elements) {
    if (!def.has_element(fe.name)) {
      throw LookupError("frame '" + annotation.frame + "' has no element '" + fe.name + "'");
    }
    auto [it, inserted] = best_span.try_emplace(fe.name, &fe);
    if (!inserted && fe.confidence > it->second->confidence) it->second = &fe;
  }

  IngestEvent event;
  event.frame = annotation.frame;
  event.time = resolve_time(annotation, sentence);
  event.provenance = {sentence.doc_id, sentence_index};
  for (const auto& [fe_name, span] : best_span) {
    if (fe_name == "Time") continue;
    std::string text = span_text(sentence, span->span);
    FillerKind kind = def.element(fe_name)->filler;
    Filler filler = link_mention(text, kind, gazetteer, this);
    if (filler.linked) {
      const Entity& e = gazetteer.at(filler.entity_id);
      event.entities[e.id] = EntityRecord{e.kind, e.canonical};
    }
    event.fillers.emplace(fe_name, std::move(filler));
  }
  return apply(event);
}

IngestOutcome TemporalStore::apply(const IngestEvent& event) {
  const FrameDef& def = registry_->at(event.frame);
  for (const auto& [fe, filler] : event.fillers) {
    const FeDef* fe_def = def.element(fe);
    if (!fe_def) {
      throw LookupError("frame '" + event.frame + "' has no element '" + fe + "'");
    }
    if (filler.linked) {
      auto it = event.entities.find(filler.entity_id);
      if (it == event.entities.end()) {
        throw FormatError("event references entity '" + filler.entity_id +
                          "' without metadata");
      }
      if (!kind_satisfies(it->second.kind, fe_def->filler)) {
        throw FormatError("entity '" + filler.entity_id + "' of kind " +
                          entity_kind_name(it->second.kind) + " cannot fill element '" + fe +
                          "' of kind " + filler_kind_name(fe_def->filler));
      }
    }
  }

  log_.push_back(event);
  for (const auto& [id, record] : event.entities) {
    auto [it, inserted] = entities_.emplace(id, record);
    if (!inserted && (it->second.kind != record.kind || it->second.canonical != record.canonical)) {
      throw FormatError("conflicting metadata for entity '" + id + "'");
    }
  }

  std::string key = dedup_key(event.frame, event.fillers);
  validity_dirty_ = true;

  auto existing = by_key_.find(key);
  if (existing != by_key_.end()) {
    FrameInstance& inst = instances_[existing->second];
    inst.count += 1;
    inst.provenance.push_back(event.provenance);
    // Keep the more precise time; on equal precision keep the earlier one.
    if (event.time.precision() > inst.time.precision() ||
        (event.time.precision() == inst.time.precision() && event.time.known() &&
         event.time.day < inst.time.day)) {
      inst.time = event.time;
    }
    return IngestOutcome{inst.id, true};
  }

  FrameInstance inst;
  inst.id = "i" + std::to_string(instances_.size() + 1);
  inst.frame = event.frame;
  inst.fillers = event.fillers;
  inst.time = event.time;
  inst.count = 1;
  inst.provenance = {event.provenance};
  for (const auto& [fe, filler] : inst.fillers) {
    if (filler.linked) ++usage_[filler.entity_id];
  }
  by_key_.emplace(key, instances_.size());
  instances_.push_back(std::move(inst));
  return IngestOutcome{instances_.back().id, false};
}

void TemporalStore::recompute_validity() const {
  validity_.assign(instances_.size(), Validity{});

  // States grouped by anchor tuple; instant events indexed directly.
  std::map<std::string, std::vector<std::size_t>> state_groups;
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    const FrameInstance& inst = instances_[i];
    if (!inst.time.known()) continue;  // undated facts stay out of the day index
    const FrameDef& def = registry_->at(inst.frame);
    if (def.kind == FrameKind::Event) {
      validity_[i] = Validity{true, inst.time.day, inst.time.day + std::chrono::days{1}};
    } else {
      state_groups[anchor_key(def, inst.frame, inst.fillers)].push_back(i);
    }
  }

  for (auto& [key, members] : state_groups) {
    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      if (instances_[a].time.day != instances_[b].time.day) {
        return instances_[a].time.day < instances_[b].time.day;
      }
      return a < b;  // log order on equal starts; the earlier one closes empty
    });
    for (std::size_t j = 0; j < members.size(); ++j) {
      Validity v{true, instances_[members[j]].time.day, std::nullopt};
      if (j + 1 < members.size()) v.end = instances_[members[j + 1]].time.day;
      validity_[members[j]] = v;
    }
  }

  // Terminator events close the state whose interval contains their date.
  std::vector<std::size_t> terminators;
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    if (instances_[i].time.known()) terminators.push_back(i);
  }
  std::sort(terminators.begin(), terminators.end(), [&](std::size_t a, std::size_t b) {
    if (instances_[a].time.day != instances_[b].time.day) {
      return instances_[a].time.day < instances_[b].time.day;
    }
    return a < b;
  });
  for (std::size_t t : terminators) {
    const FrameInstance& term = instances_[t];
    Day when = term.time.day;
    for (const auto& [state_frame, def] : registry_->frames()) {
      if (!def.terminator || *def.terminator != term.frame) continue;
      std::string key = anchor_key(def, state_frame, term.fillers);
      auto group = state_groups.find(key);
      if (group == state_groups.end()) continue;
      for (std::size_t member : group->second) {
        Validity& v = validity_[member];
        if (v.start <= when && (!v.end || when < *v.end)) {
          v.end = when;
          break;
        }
      }
    }
  }

  validity_dirty_ = false;
}

std::vector<const FrameInstance*> TemporalStore::facts_at(Day day) const {
  if (validity_dirty_) recompute_validity();
  std::vector<const FrameInstance*> out;
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    const Validity& v = validity_[i];
    if (!v.indexed) continue;
    if (v.start <= day && (!v.end || day < *v.end)) out.push_back(&instances_[i]);
  }
  return out;
}

std::vector<const FrameInstance*> TemporalStore::entity_profile(
    const std::string& entity_id) const {
  if (!knows_entity(entity_id)) throw LookupError("unknown entity '" + entity_id + "'");
  std::vector<const FrameInstance*> out;
  for (const auto& inst : instances_) {
    for (const auto& [fe, filler] : inst.fillers) {
      if (filler.linked && filler.entity_id == entity_id) {
        out.push_back(&inst);
        break;
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const FrameInstance* a, const FrameInstance* b) {
    if (a->frame != b->frame) return a->frame < b->frame;
    if (a->count != b->count) return a->count > b->count;
    int ct = compare_time(a->time, b->time);
    if (ct != 0) return ct < 0;
    return a->id < b->id;
  });
  return out;
}

std::int64_t TemporalStore::instance_count(const std::string& entity_id) const {
  auto it = usage_.find(entity_id);
  return it == usage_.end() ? 0 : it->second;
}

const EntityRecord& TemporalStore::entity_record(const std::string& id) const {
  auto it = entities_.find(id);
  if (it == entities_.end()) throw LookupError("unknown entity '" + id + "'");
  return it->second;
}

std::vector<const FrameInstance*> entity_profile(const TemporalStore& store,
                                                 const std::string& entity_id,
                                                 const Gazetteer* gazetteer) {
  if (!store.knows_entity(entity_id) && gazetteer && gazetteer->find(entity_id)) {
    return {};
  }
  return store.entity_profile(entity_id);
}

// --- persistence -------------------------------------------------------------

namespace {

ordered_json time_to_json(const TimeValue& t) {
  ordered_json j;
  switch (t.kind) {
    case TimeValue::Kind::Unknown: j["kind"] = "unknown"; break;
    case TimeValue::Kind::Approx:
      j["kind"] = "approx";
      j["day"] = format_date(t.day);
      break;
    case TimeValue::Kind::Exact:
      j["kind"] = "exact";
      j["day"] = format_date(t.day);
      break;
  }
  return j;
}

TimeValue time_from_json(const ordered_json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "unknown") return TimeValue::unknown();
  auto day = parse_date(j.at("day").get<std::string>());
  if (!day) throw FormatError("bad day '" + j.at("day").get<std::string>() + "'");
  if (kind == "approx") return TimeValue::approx(*day);
  if (kind == "exact") return TimeValue::exact(*day);
  throw FormatError("bad time kind '" + kind + "'");
}

ordered_json filler_to_json(const Filler& f, const IngestEvent& event) {
  ordered_json j;
  if (f.linked) {
    const auto& record = event.entities.at(f.entity_id);
    j["entity"] = f.entity_id;
    j["kind"] = entity_kind_name(record.kind);
    j["canonical"] = record.canonical;
  } else {
    j["string"] = f.text;
  }
  return j;
}

}  // namespace

std::string store_header_line() {
  ordered_json j;
  j["format"] = "framekit-store";
  j["version"] = 1;
  j["time_merge"] = "earliest-precise";
  return j.dump();
}

std::string serialize_event(const IngestEvent& event) {
  ordered_json j;
  j["frame"] = event.frame;
  ordered_json fillers = ordered_json::object();
  for (const auto& [fe, filler] : event.fillers) {
    fillers[fe] = filler_to_json(filler, event);
  }
  j["fillers"] = std::move(fillers);
  j["time"] = time_to_json(event.time);
  j["doc"] = event.provenance.doc_id;
  j["sent"] = event.provenance.sentence_index;
  return j.dump();
}

IngestEvent parse_event(const std::string& line, const std::string& where, int lineno) {
  IngestEvent event;
  try {
    ordered_json j = ordered_json::parse(line);
    event.frame = j.at("frame").get<std::string>();
    for (const auto& [fe, fj] : j.at("fillers").items()) {
      if (fj.contains("entity")) {
        std::string id = fj.at("entity").get<std::string>();
        event.entities[id] = EntityRecord{parse_entity_kind(fj.at("kind").get<std::string>()),
                                          fj.at("canonical").get<std::string>()};
        event.fillers.emplace(fe, Filler::entity(id));
      } else {
        event.fillers.emplace(fe, Filler::unidentified(fj.at("string").get<std::string>()));
      }
    }
    event.time = time_from_json(j.at("time"));
    event.provenance.doc_id = j.value("doc", "");
    event.provenance.sentence_index = j.value("sent", 0);
  } catch (const ordered_json::exception& e) {
    throw FormatError(where, lineno, e.what());
  } catch (const FormatError& e) {
    throw FormatError(where, lineno, e.what());
  }
  return event;
}

void save_store(const TemporalStore& store, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write store file: " + path);
  out << store_header_line() << '\n';
  for (const auto& event : store.log()) {
    out << serialize_event(event) << '\n';
  }
}

TemporalStore load_store(const std::string& path, const FrameRegistry& registry) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open store file: " + path);
  TemporalStore store(&registry);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1) {
      try {
        ordered_json j = ordered_json::parse(line);
        if (j.value("format", "") != "framekit-store") {
          throw FormatError(path, lineno, "not a framekit store file");
        }
      } catch (const ordered_json::exception& e) {
        throw FormatError(path, lineno, e.what());
      }
      continue;
    }
    store.apply(parse_event(line, path, lineno));
  }
  return store;
}

std::string instance_to_json(const TemporalStore& store, const FrameInstance& instance) {
  ordered_json j;
  j["id"] = instance.id;
  j["frame"] = instance.frame;
  ordered_json fillers = ordered_json::object();
  for (const auto& [fe, filler] : instance.fillers) {
    ordered_json fj;
    if (filler.linked) {
      const EntityRecord& record = store.entity_record(filler.entity_id);
      fj["entity"] = filler.entity_id;
      fj["kind"] = entity_kind_name(record.kind);
      fj["canonical"] = record.canonical;
    } else {
      fj["string"] = filler.text;
    }
    fillers[fe] = std::move(fj);
  }
  j["fillers"] = std::move(fillers);
  j["time"] = time_to_json(instance.time);
  j["count"] = instance.count;
  ordered_json prov = ordered_json::array();
  for (const auto& p : instance.provenance) {
    prov.push_back(ordered_json{{"doc", p.doc_id}, {"sent", p.sentence_index}});
  }
  j["provenance"] = std::move(prov);
  return j.dump();
}

}  // namespace framekit
