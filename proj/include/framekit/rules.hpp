#ifndef FRAMEKIT_RULES_HPP
#define FRAMEKIT_RULES_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "framekit/util.hpp"

namespace framekit {

// Smoothed accuracy estimate for a rule matching n training windows of which
// m are false positives: (n - m + 1) / (n + 2).
double laplace(std::int64_t n, std::int64_t m);

// Integer percent, round-half-up. Pure integer arithmetic, no FP rounding.
int laplace_percent(std::int64_t n, std::int64_t m);

// Exact three-way comparison of (n-m+1)/(n+2) ratios via cross multiplication.
int compare_laplace(std::int64_t n1, std::int64_t m1, std::int64_t n2, std::int64_t m2);

struct SlotConstraint {
  enum class Kind { Wildcard, Literal, ValueSet };

  Kind kind = Kind::Wildcard;
  std::string value;                // Literal
  std::vector<std::string> values;  // ValueSet, sorted, >= 2 distinct entries

  static SlotConstraint wildcard() { return {}; }
  static SlotConstraint literal(std::string v);
  // Normalizes: one distinct value collapses to Literal.
  static SlotConstraint value_set(std::vector<std::string> vs);

  bool matches(const std::string& feature) const;
  bool is_wildcard() const { return kind == Kind::Wildcard; }

  bool operator==(const SlotConstraint&) const = default;
};

using Pattern = std::vector<SlotConstraint>;

int literal_count(const Pattern& p);  // non-wildcard slots
std::string pattern_to_text(const Pattern& p);

bool match_pattern(const Pattern& pattern, std::span<const std::string> fv);

struct Rule {
  Pattern pattern;
  std::int64_t n = 1;  // training windows matched
  std::int64_t m = 0;  // false positives among them

  double laplace_ratio() const { return laplace(n, m); }
  int percent() const { return laplace_percent(n, m); }

  bool operator==(const Rule&) const = default;
};

struct RuleSet {
  std::string label;
  std::vector<std::string> schema;
  std::vector<Rule> rules;  // learner discovery order; no precedence at apply time
  double threshold = 0.66;

  bool operator==(const RuleSet&) const = default;
};

// Match confidence carrying the exact counts so ties compare exactly.
struct Confidence {
  std::int64_t n = 0;
  std::int64_t m = 0;

  double value() const { return laplace(n, m); }
};

int compare_confidence(const Confidence& a, const Confidence& b);

// Max laplace over matching rules; nullopt when nothing matches.
std::optional<Confidence> classify(const RuleSet& rs, std::span<const std::string> fv);

struct LearnerConfig {
  int max_literals = 3;
  double min_laplace = 0.66;
  std::int64_t min_coverage = 2;
  bool set_merge = true;

  void validate() const;
};

struct LearnResult {
  RuleSet ruleset;
  std::int64_t uncovered_positives = 0;
};

using Example = std::pair<std::vector<std::string>, bool>;

LearnResult learn_ruleset(const std::vector<Example>& examples, const std::string& label,
                          const std::vector<std::string>& schema,
                          const LearnerConfig& config = {});

// Rule-file text format, bit-exact round-trip.
std::string serialize_ruleset(const RuleSet& rs);
RuleSet parse_ruleset(const std::string& text);
RuleSet load_ruleset(const std::string& path);
void save_ruleset(const RuleSet& rs, const std::string& path);

// ---------------------------------------------------------------------------
// Shared training matrix: feature values are interned once so that many
// labels can be learned over the same windows (all target frames see one
// matrix, and the subset counts below are built a single time).

class WindowMatrix {
 public:
  explicit WindowMatrix(std::vector<std::string> schema);

  int width() const { return static_cast<int>(schema_.size()); }
  std::size_t rows() const { return schema_.empty() ? 0 : data_.size() / schema_.size(); }
  const std::vector<std::string>& schema() const { return schema_; }

  void add_row(std::span<const std::string> fv);
  std::span<const std::int32_t> row(std::size_t r) const;
  const std::string& symbol(std::int32_t id) const { return symbols_[std::size_t(id)]; }

 private:
  std::vector<std::string> schema_;
  std::vector<std::int32_t> data_;
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, std::int32_t> ids_;

  std::int32_t intern(const std::string& value);
};

// Occurrence counts for every (slot subset, value combination) with up to
// max_literals slots over a WindowMatrix. One pass over the data answers
// exact match counts for any literal pattern drawn from observed windows.
class SubsetCounts {
 public:
  static constexpr int kMaxLiterals = 5;

  struct Key {
    std::uint16_t mask = 0;                         // subset of slot indices
    std::array<std::int32_t, kMaxLiterals> vals{};  // symbol ids, slot order; -1 padded

    bool operator==(const Key&) const = default;
    bool operator<(const Key& o) const {
      if (mask != o.mask) return mask < o.mask;
      return vals < o.vals;
    }
  };

  SubsetCounts(const WindowMatrix& matrix, int max_literals);

  int max_literals() const { return max_literals_; }
  std::uint32_t count(const Key& k) const;  // 0 when the combination never occurs

  // All keys of one row, sizes 1..max_literals.
  static void row_keys(std::span<const std::int32_t> row, int max_literals,
                       std::vector<Key>& out);

 private:
  int max_literals_;
  std::vector<Key> keys_;  // sorted, unique
  std::vector<std::uint32_t> counts_;
};

LearnResult learn_over_matrix(const WindowMatrix& matrix, const std::vector<bool>& positive,
                              const SubsetCounts& counts, const std::string& label,
                              const LearnerConfig& config);

}  // namespace framekit

#endif
