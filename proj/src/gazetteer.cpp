#include "framekit/gazetteer.hpp"

#include <algorithm>
#include <fstream>

namespace framekit {

std::string entity_kind_name(EntityKind k) {
  return k == EntityKind::Person ? "Person" : "Organization";
}

EntityKind parse_entity_kind(const std::string& name) {
  if (name == "Person") return EntityKind::Person;
  if (name == "Organization") return EntityKind::Organization;
  throw FormatError("unknown entity kind '" + name + "'");
}

Filler Filler::entity(std::string id) {
  Filler f;
  f.linked = true;
  f.entity_id = std::move(id);
  return f;
}

Filler Filler::unidentified(std::string text) {
  Filler f;
  f.text = std::move(text);
  return f;
}

std::string normalize_mention(std::string_view text, const NormalizeConfig& cfg) {
  std::string out = collapse_whitespace(text);
  if (cfg.case_fold) out = ascii_lower(out);
  return out;
}

void Gazetteer::add(Entity entity) {
  if (entity.id.empty()) throw FormatError("entity with empty id");
  if (entity.canonical.empty()) {
    throw FormatError("entity '" + entity.id + "' has empty canonical name");
  }
  if (by_id_.count(entity.id)) throw FormatError("duplicate entity id '" + entity.id + "'");

  if (std::find(entity.aliases.begin(), entity.aliases.end(), entity.canonical) ==
      entity.aliases.end()) {
    entity.aliases.push_back(entity.canonical);
  }
  for (const auto& alias : entity.aliases) {
    if (alias.empty()) throw FormatError("entity '" + entity.id + "' has an empty alias");
  }

  std::size_t index = entities_.size();
  by_id_.emplace(entity.id, index);
  for (const auto& alias : entity.aliases) {
    auto& bucket = alias_index_[normalize_mention(alias, norm_)];
    if (std::find(bucket.begin(), bucket.end(), index) == bucket.end()) {
      bucket.push_back(index);
    }
  }
  entities_.push_back(std::move(entity));
}

const Entity* Gazetteer::find(const std::string& id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &entities_[it->second];
}

const Entity& Gazetteer::at(const std::string& id) const {
  const Entity* e = find(id);
  if (!e) throw LookupError("unknown entity '" + id + "'");
  return *e;
}

std::vector<const Entity*> Gazetteer::lookup_alias(std::string_view mention) const {
  std::vector<const Entity*> out;
  auto it = alias_index_.find(normalize_mention(mention, norm_));
  if (it == alias_index_.end()) return out;
  for (std::size_t index : it->second) out.push_back(&entities_[index]);
  return out;
}

Gazetteer load_gazetteer(const std::string& path, NormalizeConfig cfg) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open gazetteer file: " + path);
  Gazetteer gaz(cfg);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cols = split(line, '\t');
    if (cols.size() != 4) {
      throw FormatError(path, lineno,
                        "expected 4 tab-separated columns, got " + std::to_string(cols.size()));
    }
    Entity e;
    e.id = cols[0];
    try {
      e.kind = parse_entity_kind(cols[1]);
    } catch (const FormatError& err) {
      throw FormatError(path, lineno, err.what());
    }
    e.canonical = cols[2];
    if (!cols[3].empty()) {
      for (auto& alias : split(cols[3], '|')) {
        if (!alias.empty()) e.aliases.push_back(std::move(alias));
      }
    }
    try {
      gaz.add(std::move(e));
    } catch (const FormatError& err) {
      throw FormatError(path, lineno, err.what());
    }
  }
  return gaz;
}

bool kind_satisfies(EntityKind kind, FillerKind expected) {
  switch (expected) {
    case FillerKind::PersonEntity: return kind == EntityKind::Person;
    case FillerKind::OrganizationEntity: return kind == EntityKind::Organization;
    case FillerKind::AnyEntity: return true;
    case FillerKind::String: return false;
  }
  return false;
}

Filler link_mention(const std::string& text, FillerKind expected, const Gazetteer& gazetteer,
                    const EntityUsage* usage) {
  if (expected == FillerKind::String) return Filler::unidentified(text);

  std::vector<const Entity*> candidates;
  for (const Entity* e : gazetteer.lookup_alias(text)) {
    if (kind_satisfies(e->kind, expected)) candidates.push_back(e);
  }
  if (candidates.empty()) return Filler::unidentified(text);
  if (candidates.size() == 1) return Filler::entity(candidates[0]->id);

  // Ambiguous alias: prefer the entity with the most stored frame instances;
  // an unresolved tie stays unidentified rather than guessing.
  const Entity* best = nullptr;
  std::int64_t best_count = -1;
  bool tie = false;
  for (const Entity* e : candidates) {
    std::int64_t count = usage ? usage->instance_count(e->id) : 0;
    if (count > best_count) {
      best = e;
      best_count = count;
      tie = false;
    } else if (count == best_count) {
      tie = true;
    }
  }
  if (tie || best == nullptr) return Filler::unidentified(text);
  return Filler::entity(best->id);
}

}  // namespace framekit
