#include "framekit/registry.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace framekit {

using nlohmann::json;

std::string filler_kind_name(FillerKind k) {
  switch (k) {
    case FillerKind::PersonEntity: return "entity(Person)";
    case FillerKind::OrganizationEntity: return "entity(Organization)";
    case FillerKind::AnyEntity: return "entity(any)";
    case FillerKind::String: return "string";
  }
  return "string";
}

FillerKind parse_filler_kind(const std::string& name) {
  if (name == "entity(Person)") return FillerKind::PersonEntity;
  if (name == "entity(Organization)") return FillerKind::OrganizationEntity;
  if (name == "entity(any)") return FillerKind::AnyEntity;
  if (name == "string") return FillerKind::String;
  throw FormatError("unknown filler kind '" + name + "'");
}

const Token& Template::target_token() const {
  for (const auto& seg : segments) {
    if (!seg.is_slot && seg.target_index >= 0) {
      return seg.literal[std::size_t(seg.target_index)];
    }
  }
  throw Error("template has no designated target token");
}

const FeDef* FrameDef::element(const std::string& fe_name) const {
  for (const auto& fe : elements) {
    if (fe.name == fe_name) return &fe;
  }
  return nullptr;
}

void FrameRegistry::add(FrameDef frame) {
  if (frames_.count(frame.name)) {
    throw FormatError("duplicate frame '" + frame.name + "'");
  }
  frames_.emplace(frame.name, std::move(frame));
}

void FrameRegistry::finalize() const {
  for (const auto& [name, frame] : frames_) {
    if (frame.terminator && !frames_.count(*frame.terminator)) {
      throw FormatError("frame '" + name + "' names unknown terminator '" + *frame.terminator +
                        "'");
    }
  }
}

const FrameDef* FrameRegistry::find(const std::string& name) const {
  auto it = frames_.find(name);
  return it == frames_.end() ? nullptr : &it->second;
}

const FrameDef& FrameRegistry::at(const std::string& name) const {
  const FrameDef* f = find(name);
  if (!f) throw LookupError("unknown frame '" + name + "'");
  return *f;
}

namespace {

Token parse_token(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("surface")) {
    throw FormatError(where + ": template token needs a 'surface' field");
  }
  Token t;
  t.surface = j.at("surface").get<std::string>();
  t.lemma = j.value("lemma", t.surface);
  t.pos = j.value("pos", "NN");
  t.ner = j.value("ner", "O");
  t.hypernym = j.value("hypernym", std::string(kNone));
  for (const std::string* field : {&t.surface, &t.lemma, &t.pos, &t.ner, &t.hypernym}) {
    if (field->empty() || contains_whitespace(*field)) {
      throw FormatError(where + ": template token field '" + *field +
                        "' must be a non-empty whitespace-free value");
    }
  }
  return t;
}

std::vector<Token> parse_token_list(const json& j, const std::string& where) {
  std::vector<Token> out;
  for (const auto& item : j) out.push_back(parse_token(item, where));
  return out;
}

Template parse_template(const json& j, const FrameDef& frame, const std::string& where) {
  Template tpl;
  tpl.time_suffix = j.value("time", false);
  if (!j.contains("segments") || !j.at("segments").is_array()) {
    throw FormatError(where + ": template needs a 'segments' array");
  }
  int targets = 0;
  for (const auto& seg_json : j.at("segments")) {
    TemplateSegment seg;
    if (seg_json.contains("slot")) {
      seg.is_slot = true;
      seg.fe = seg_json.at("slot").get<std::string>();
      if (!frame.has_element(seg.fe)) {
        throw FormatError(where + ": slot names undefined frame element '" + seg.fe + "'");
      }
      if (seg_json.contains("pre")) seg.pre = parse_token_list(seg_json.at("pre"), where);
      if (seg_json.contains("post")) seg.post = parse_token_list(seg_json.at("post"), where);
      seg.filler_pos = seg_json.value("pos", "NN");
    } else if (seg_json.contains("lit")) {
      for (const auto& tok_json : seg_json.at("lit")) {
        seg.literal.push_back(parse_token(tok_json, where));
        if (tok_json.value("target", false)) {
          seg.target_index = static_cast<int>(seg.literal.size()) - 1;
          ++targets;
        }
      }
      if (seg.literal.empty()) {
        throw FormatError(where + ": literal segment must carry at least one token");
      }
    } else {
      throw FormatError(where + ": segment needs either 'slot' or 'lit'");
    }
    tpl.segments.push_back(std::move(seg));
  }
  if (targets != 1) {
    throw FormatError(where + ": template must designate exactly one target token, found " +
                      std::to_string(targets));
  }
  return tpl;
}

FrameDef parse_frame(const json& j, const std::string& where) {
  FrameDef frame;
  if (!j.contains("name")) throw FormatError(where + ": frame needs a 'name'");
  frame.name = j.at("name").get<std::string>();
  std::string ctx = where + ": frame '" + frame.name + "'";

  std::string kind = j.value("kind", "event");
  if (kind == "event") {
    frame.kind = FrameKind::Event;
  } else if (kind == "state") {
    frame.kind = FrameKind::State;
  } else {
    throw FormatError(ctx + ": kind must be 'event' or 'state', got '" + kind + "'");
  }

  if (!j.contains("elements") || !j.at("elements").is_array()) {
    throw FormatError(ctx + ": needs an 'elements' array");
  }
  for (const auto& fe_json : j.at("elements")) {
    FeDef fe;
    fe.name = fe_json.at("name").get<std::string>();
    fe.filler = parse_filler_kind(fe_json.value("filler", "string"));
    if (frame.has_element(fe.name)) {
      throw FormatError(ctx + ": duplicate frame element '" + fe.name + "'");
    }
    frame.elements.push_back(std::move(fe));
  }
  if (!frame.has_element("Time")) {
    throw FormatError(ctx + ": every frame must declare a 'Time' element");
  }

  if (j.contains("anchor_fes")) {
    for (const auto& a : j.at("anchor_fes")) {
      std::string name = a.get<std::string>();
      if (!frame.has_element(name)) {
        throw FormatError(ctx + ": anchor '" + name + "' is not a declared element");
      }
      frame.anchor_fes.push_back(std::move(name));
    }
  }
  if (frame.kind == FrameKind::State && frame.anchor_fes.empty()) {
    throw FormatError(ctx + ": state frames need non-empty anchor_fes");
  }
  if (frame.kind == FrameKind::Event && !frame.anchor_fes.empty()) {
    throw FormatError(ctx + ": event frames must not declare anchor_fes");
  }

  if (j.contains("terminator") && !j.at("terminator").is_null()) {
    frame.terminator = j.at("terminator").get<std::string>();
  }

  if (j.contains("templates")) {
    for (const auto& [lang, tpl_json] : j.at("templates").items()) {
      frame.templates.emplace(lang, parse_template(tpl_json, frame, ctx + " template '" + lang + "'"));
    }
  }
  return frame;
}

}  // namespace

FrameRegistry parse_registry(const std::string& json_text, const std::string& where) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw FormatError(where + ": " + e.what());
  }
  if (!root.is_object() || !root.contains("frames") || !root.at("frames").is_array()) {
    throw FormatError(where + ": registry needs a top-level 'frames' array");
  }
  FrameRegistry registry;
  try {
    for (const auto& frame_json : root.at("frames")) {
      registry.add(parse_frame(frame_json, where));
    }
  } catch (const json::exception& e) {
    throw FormatError(where + ": " + e.what());
  }
  registry.finalize();
  return registry;
}

FrameRegistry load_registry(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open registry file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_registry(buf.str(), path);
}

void check_referential_integrity(const std::vector<Sentence>& sentences,
                                 const FrameRegistry& registry) {
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    for (const auto& ann : sentences[s].gold) {
      const FrameDef* def = registry.find(ann.frame);
      if (!def) {
        throw LookupError("sentence " + std::to_string(s) + " (doc " + sentences[s].doc_id +
                          "): unknown frame '" + ann.frame + "'");
      }
      for (const auto& fe : ann.elements) {
        if (!def->has_element(fe.name)) {
          throw LookupError("sentence " + std::to_string(s) + " (doc " + sentences[s].doc_id +
                            "): frame '" + ann.frame + "' has no element '" + fe.name + "'");
        }
      }
    }
  }
}

}  // namespace framekit
