#include "framekit/verbalizer.hpp"

#include <sstream>

#include <json.hpp>

namespace framekit {

EntityResolver resolver_from(const Gazetteer& gazetteer) {
  return [&gazetteer](const std::string& id) {
    const Entity& e = gazetteer.at(id);
    return EntityRecord{e.kind, e.canonical};
  };
}

EntityResolver resolver_from(const TemporalStore& store) {
  return [&store](const std::string& id) { return store.entity_record(id); };
}

namespace {

std::string ner_tag(EntityKind kind) {
  return kind == EntityKind::Person ? "PERSON" : "ORGANIZATION";
}

std::vector<Token> filler_tokens(const Filler& filler, const TemplateSegment& slot,
                                 const EntityResolver& entities, std::string* entity_id) {
  std::string text;
  std::string ner = "O";
  if (filler.linked) {
    EntityRecord record = entities(filler.entity_id);
    text = record.canonical;
    ner = ner_tag(record.kind);
    *entity_id = filler.entity_id;
  } else {
    text = filler.text;
  }
  std::vector<Token> tokens;
  for (const auto& word : split(collapse_whitespace(text), ' ')) {
    if (word.empty()) continue;
    tokens.push_back(Token{word, word, slot.filler_pos, ner, kNone});
  }
  if (tokens.empty()) {
    throw FormatError("filler for element '" + slot.fe + "' has no tokens");
  }
  return tokens;
}

}  // namespace

Verbalization verbalize(const FrameInstance& instance, const std::string& lang,
                        const FrameRegistry& registry, const EntityResolver& entities) {
  const FrameDef& def = registry.at(instance.frame);
  auto tpl_it = def.templates.find(lang);
  if (tpl_it == def.templates.end()) {
    throw LookupError("frame '" + instance.frame + "' has no template for language '" + lang +
                      "'");
  }
  const Template& tpl = tpl_it->second;

  for (const auto& [fe, filler] : instance.fillers) {
    if (fe == "Time") continue;
    bool slotted = false;
    for (const auto& seg : tpl.segments) {
      if (seg.is_slot && seg.fe == fe) slotted = true;
    }
    if (!slotted) {
      throw FormatError("filled element '" + fe + "' of frame '" + instance.frame +
                        "' has no slot in the '" + lang + "' template");
    }
  }

  Verbalization out;
  Sentence& s = out.sentence;
  s.doc_id = instance.id.empty() ? "verbalized" : instance.id;

  FrameAnnotation ann;
  ann.frame = instance.frame;
  ann.confidence = 1.0;

  for (const auto& seg : tpl.segments) {
    if (!seg.is_slot) {
      for (int i = 0; i < static_cast<int>(seg.literal.size()); ++i) {
        if (i == seg.target_index) {
          int at = s.size();
          ann.target = {at, at + 1};
        }
        s.tokens.push_back(seg.literal[std::size_t(i)]);
      }
      continue;
    }
    auto filler_it = instance.fillers.find(seg.fe);
    if (filler_it == instance.fillers.end()) continue;  // unfilled: slot and literals vanish

    for (const auto& t : seg.pre) s.tokens.push_back(t);
    std::string entity_id;
    std::vector<Token> body = filler_tokens(filler_it->second, seg, entities, &entity_id);
    Span span{s.size(), s.size() + static_cast<int>(body.size())};
    for (auto& t : body) s.tokens.push_back(std::move(t));
    for (const auto& t : seg.post) s.tokens.push_back(t);

    ann.elements.push_back(FrameElementSpan{seg.fe, span, 1.0});
    if (!entity_id.empty()) out.entity_spans.push_back({span, entity_id});
  }

  if (tpl.time_suffix && instance.time.known()) {
    std::string day = format_date(instance.time.day);
    s.tokens.push_back(Token{"(", "(", "(", "O", kNone});
    int at = s.size();
    s.tokens.push_back(Token{day, day, "CD", "DATE", kNone});
    s.tokens.push_back(Token{")", ")", ")", "O", kNone});
    ann.elements.push_back(FrameElementSpan{"Time", {at, at + 1}, 1.0});
  }

  s.gold.push_back(std::move(ann));
  return out;
}

namespace {

std::string profile_line(const FrameInstance& instance, const std::string& lang,
                         const FrameRegistry& registry, const TemporalStore& store) {
  Verbalization v = verbalize(instance, lang, registry, resolver_from(store));
  std::vector<std::string> parts;
  int i = 0;
  while (i < v.sentence.size()) {
    const Verbalization::EntityTokens* hit = nullptr;
    for (const auto& es : v.entity_spans) {
      if (es.span.begin == i) {
        hit = &es;
        break;
      }
    }
    if (hit) {
      const EntityRecord& record = store.entity_record(hit->entity_id);
      parts.push_back("[[" + hit->entity_id + "|" + record.canonical + "]]");
      i = hit->span.end;
    } else {
      parts.push_back(v.sentence.tokens[std::size_t(i)].surface);
      ++i;
    }
  }
  return join(parts, " ") + " [" + std::to_string(instance.count) + "]";
}

}  // namespace

std::string render_profile(const std::vector<const FrameInstance*>& profile,
                           const std::string& lang, const FrameRegistry& registry,
                           const TemporalStore& store) {
  std::ostringstream out;
  for (const FrameInstance* instance : profile) {
    out << profile_line(*instance, lang, registry, store) << '\n';
  }
  return out.str();
}

std::string render_profile_json(const std::vector<const FrameInstance*>& profile,
                                const std::string& lang, const FrameRegistry& registry,
                                const TemporalStore& store) {
  std::ostringstream out;
  for (const FrameInstance* instance : profile) {
    nlohmann::ordered_json j;
    j["id"] = instance->id;
    j["frame"] = instance->frame;
    j["count"] = instance->count;
    j["line"] = profile_line(*instance, lang, registry, store);
    out << j.dump() << '\n';
  }
  return out.str();
}

}  // namespace framekit
