#ifndef FRAMEKIT_REGISTRY_HPP
#define FRAMEKIT_REGISTRY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "framekit/corpus.hpp"

namespace framekit {

enum class FrameKind { Event, State };

enum class FillerKind { PersonEntity, OrganizationEntity, AnyEntity, String };

std::string filler_kind_name(FillerKind k);
FillerKind parse_filler_kind(const std::string& name);

struct FeDef {
  std::string name;
  FillerKind filler = FillerKind::String;
};

// One verbalization template segment: either literal tokens (one of which may
// be the designated frame target), or a filler slot with optional attached
// literals that are dropped together with an unfilled slot.
struct TemplateSegment {
  bool is_slot = false;

  std::vector<Token> literal;        // literal segment tokens
  int target_index = -1;             // index into `literal`, -1 when none

  std::string fe;                    // slot segment
  std::vector<Token> pre;
  std::vector<Token> post;
  std::string filler_pos = "NN";     // default POS for filler tokens
};

struct Template {
  std::vector<TemplateSegment> segments;
  bool time_suffix = false;  // render a trailing "( <date> )" when time is known

  // Lemma of the designated target token.
  const Token& target_token() const;
};

struct FrameDef {
  std::string name;
  FrameKind kind = FrameKind::Event;
  std::vector<FeDef> elements;
  std::vector<std::string> anchor_fes;       // state subject, non-empty iff state
  std::optional<std::string> terminator;     // frame whose instances end this state
  std::map<std::string, Template> templates; // language code -> template

  const FeDef* element(const std::string& fe_name) const;
  bool has_element(const std::string& fe_name) const { return element(fe_name) != nullptr; }
};

class FrameRegistry {
 public:
  void add(FrameDef frame);  // throws on duplicates / bad definitions
  void finalize() const;     // cross-frame checks (terminator resolution)

  const FrameDef* find(const std::string& name) const;
  const FrameDef& at(const std::string& name) const;  // throws LookupError
  const std::map<std::string, FrameDef>& frames() const { return frames_; }
  std::size_t size() const { return frames_.size(); }

 private:
  std::map<std::string, FrameDef> frames_;
};

FrameRegistry load_registry(const std::string& path);
FrameRegistry parse_registry(const std::string& json_text, const std::string& where);

// Every annotated frame and element must resolve in the registry.
void check_referential_integrity(const std::vector<Sentence>& sentences,
                                 const FrameRegistry& registry);

}  // namespace framekit

#endif
