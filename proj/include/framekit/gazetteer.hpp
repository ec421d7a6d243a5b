#ifndef FRAMEKIT_GAZETTEER_HPP
#define FRAMEKIT_GAZETTEER_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "framekit/registry.hpp"
#include "framekit/util.hpp"

namespace framekit {

enum class EntityKind { Person, Organization };

std::string entity_kind_name(EntityKind k);
EntityKind parse_entity_kind(const std::string& name);

struct Entity {
  std::string id;
  EntityKind kind = EntityKind::Person;
  std::string canonical;
  std::vector<std::string> aliases;  // always contains canonical
};

// Either a reference to a gazetteer entity or the raw source string.
struct Filler {
  bool linked = false;
  std::string entity_id;  // linked
  std::string text;       // unidentified string (original, untrimmed)

  static Filler entity(std::string id);
  static Filler unidentified(std::string text);

  bool operator==(const Filler&) const = default;
};

struct NormalizeConfig {
  bool case_fold = true;  // ASCII fold; trimming/collapsing always applies
};

std::string normalize_mention(std::string_view text, const NormalizeConfig& cfg);

class Gazetteer {
 public:
  Gazetteer() = default;
  explicit Gazetteer(NormalizeConfig cfg) : norm_(cfg) {}

  void add(Entity entity);  // throws on duplicate id / empty canonical
  const Entity* find(const std::string& id) const;
  const Entity& at(const std::string& id) const;  // throws LookupError

  // All entities sharing the normalized alias (ambiguity set, maybe empty).
  std::vector<const Entity*> lookup_alias(std::string_view mention) const;

  std::size_t size() const { return entities_.size(); }
  const std::vector<Entity>& entities() const { return entities_; }
  const NormalizeConfig& normalization() const { return norm_; }

 private:
  NormalizeConfig norm_;
  std::vector<Entity> entities_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::unordered_map<std::string, std::vector<std::size_t>> alias_index_;
};

Gazetteer load_gazetteer(const std::string& path, NormalizeConfig cfg = {});

// How many stored frame instances already reference an entity; backed by the
// temporal store, used to resolve ambiguous aliases.
class EntityUsage {
 public:
  virtual ~EntityUsage() = default;
  virtual std::int64_t instance_count(const std::string& entity_id) const = 0;
};

// Exact normalized alias matching restricted to the declared filler kind.
// Unique hit links; ambiguity is resolved by stored-instance counts with
// unidentified-string fallback on ties; anything else stays unidentified.
Filler link_mention(const std::string& text, FillerKind expected, const Gazetteer& gazetteer,
                    const EntityUsage* usage = nullptr);

bool kind_satisfies(EntityKind kind, FillerKind expected);

}  // namespace framekit

#endif
