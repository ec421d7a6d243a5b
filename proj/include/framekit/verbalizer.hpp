#ifndef FRAMEKIT_VERBALIZER_HPP
#define FRAMEKIT_VERBALIZER_HPP

#include <functional>
#include <string>
#include <vector>

#include "framekit/corpus.hpp"
#include "framekit/registry.hpp"
#include "framekit/store.hpp"

namespace framekit {

// Canonical name / kind lookup for linked fillers.
using EntityResolver = std::function<EntityRecord(const std::string& id)>;

EntityResolver resolver_from(const Gazetteer& gazetteer);
EntityResolver resolver_from(const TemporalStore& store);

struct Verbalization {
  Sentence sentence;  // fully featurized, gold annotation attached

  struct EntityTokens {
    Span span;
    std::string entity_id;
  };
  std::vector<EntityTokens> entity_spans;  // where linked fillers landed
};

// Renders the frame's template for `lang`. Filled elements go through their
// slots (entity fillers as canonical-name tokens, strings as their own
// tokens); unfilled slots vanish together with their attached literals; a
// known time renders as a trailing "( <date> )" when the template asks.
Verbalization verbalize(const FrameInstance& instance, const std::string& lang,
                        const FrameRegistry& registry, const EntityResolver& entities);

// One line per profile instance: linked entities as [[id|canonical]], the
// duplicate count as a trailing " [<count>]".
std::string render_profile(const std::vector<const FrameInstance*>& profile,
                           const std::string& lang, const FrameRegistry& registry,
                           const TemporalStore& store);

std::string render_profile_json(const std::vector<const FrameInstance*>& profile,
                                const std::string& lang, const FrameRegistry& registry,
                                const TemporalStore& store);

}  // namespace framekit

#endif
