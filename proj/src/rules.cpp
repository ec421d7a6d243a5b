#include "framekit/rules.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace framekit {

double laplace(std::int64_t n, std::int64_t m) {
  if (n < 1) throw Error("laplace: n must be >= 1, got " + std::to_string(n));
  if (m < 0 || m > n) throw Error("laplace: m must be in [0, n], got m=" + std::to_string(m));
  return double(n - m + 1) / double(n + 2);
}

int laplace_percent(std::int64_t n, std::int64_t m) {
  laplace(n, m);  // precondition check
  // round-half-up of 100*(n-m+1)/(n+2)
  return int((200 * (n - m + 1) + (n + 2)) / (2 * (n + 2)));
}

int compare_laplace(std::int64_t n1, std::int64_t m1, std::int64_t n2, std::int64_t m2) {
  // (n1-m1+1)/(n1+2) vs (n2-m2+1)/(n2+2); denominators positive
  std::int64_t lhs = (n1 - m1 + 1) * (n2 + 2);
  std::int64_t rhs = (n2 - m2 + 1) * (n1 + 2);
  return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
}

int compare_confidence(const Confidence& a, const Confidence& b) {
  return compare_laplace(a.n, a.m, b.n, b.m);
}

SlotConstraint SlotConstraint::literal(std::string v) {
  SlotConstraint c;
  c.kind = Kind::Literal;
  c.value = std::move(v);
  return c;
}

SlotConstraint SlotConstraint::value_set(std::vector<std::string> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  if (vs.empty()) throw Error("value set must not be empty");
  if (vs.size() == 1) return literal(std::move(vs[0]));
  SlotConstraint c;
  c.kind = Kind::ValueSet;
  c.values = std::move(vs);
  return c;
}

bool SlotConstraint::matches(const std::string& feature) const {
  switch (kind) {
    case Kind::Wildcard: return true;
    case Kind::Literal: return value == feature;
    case Kind::ValueSet: return std::binary_search(values.begin(), values.end(), feature);
  }
  return false;
}

int literal_count(const Pattern& p) {
  int k = 0;
  for (const auto& slot : p) {
    if (!slot.is_wildcard()) ++k;
  }
  return k;
}

bool match_pattern(const Pattern& pattern, std::span<const std::string> fv) {
  if (pattern.size() != fv.size()) {
    throw Error("pattern width " + std::to_string(pattern.size()) +
                " does not match feature vector width " + std::to_string(fv.size()));
  }
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (!pattern[i].matches(fv[i])) return false;
  }
  return true;
}

std::optional<Confidence> classify(const RuleSet& rs, std::span<const std::string> fv) {
  if (rs.schema.size() != fv.size()) {
    throw Error("ruleset '" + rs.label + "' schema width " + std::to_string(rs.schema.size()) +
                " does not match feature vector width " + std::to_string(fv.size()));
  }
  std::optional<Confidence> best;
  for (const Rule& r : rs.rules) {
    if (!match_pattern(r.pattern, fv)) continue;
    Confidence c{r.n, r.m};
    if (!best || compare_confidence(c, *best) > 0) best = c;
  }
  return best;
}

void LearnerConfig::validate() const {
  if (max_literals < 1) throw Error("max_literals must be >= 1");
  if (max_literals > SubsetCounts::kMaxLiterals) {
    throw Error("max_literals above supported limit " +
                std::to_string(SubsetCounts::kMaxLiterals));
  }
  if (!(min_laplace > 0.0 && min_laplace < 1.0)) throw Error("min_laplace must be in (0, 1)");
  if (min_coverage < 1) throw Error("min_coverage must be >= 1");
}

// --- text format -------------------------------------------------------------

namespace {

bool needs_quotes(const std::string& v) {
  if (v.empty() || v == "_") return true;
  for (char c : v) {
    if (c == ',' || c == '{' || c == '}' || c == '[' || c == ']' || c == '"' ||
        std::isspace(static_cast<unsigned char>(c))) {
      return true;
    }
  }
  return false;
}

std::string render_value(const std::string& v) {
  if (!needs_quotes(v)) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string render_slot(const SlotConstraint& slot) {
  switch (slot.kind) {
    case SlotConstraint::Kind::Wildcard: return "_";
    case SlotConstraint::Kind::Literal: return render_value(slot.value);
    case SlotConstraint::Kind::ValueSet: {
      std::string out = "{";
      for (std::size_t i = 0; i < slot.values.size(); ++i) {
        if (i) out += ", ";
        out += render_value(slot.values[i]);
      }
      out += "}";
      return out;
    }
  }
  return "_";
}

struct Cursor {
  const std::string& line;
  std::size_t pos = 0;
  int lineno;
  const std::string& where;

  [[noreturn]] void fail(const std::string& msg) const {
    throw FormatError(where, lineno, msg);
  }
  bool done() const { return pos >= line.size(); }
  char peek() const { return done() ? '\0' : line[pos]; }
  void skip_spaces() {
    while (!done() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
  }
  void skip_blanks() {  // spaces only, tabs are field separators elsewhere
    while (!done() && line[pos] == ' ') ++pos;
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
};

std::string parse_value(Cursor& cur) {
  cur.skip_blanks();
  if (cur.peek() == '"') {
    ++cur.pos;
    std::string out;
    while (true) {
      if (cur.done()) cur.fail("unterminated quoted value");
      char c = cur.line[cur.pos++];
      if (c == '\\') {
        if (cur.done()) cur.fail("dangling escape in quoted value");
        out.push_back(cur.line[cur.pos++]);
      } else if (c == '"') {
        return out;
      } else {
        out.push_back(c);
      }
    }
  }
  std::string out;
  while (!cur.done()) {
    char c = cur.peek();
    if (c == ',' || c == ']' || c == '}' || c == '{' || c == ' ' || c == '\t') break;
    out.push_back(c);
    ++cur.pos;
  }
  if (out.empty()) cur.fail("empty value");
  return out;
}

SlotConstraint parse_slot(Cursor& cur) {
  cur.skip_blanks();
  if (cur.peek() == '{') {
    ++cur.pos;
    std::vector<std::string> values;
    while (true) {
      values.push_back(parse_value(cur));
      cur.skip_blanks();
      if (cur.peek() == ',') {
        ++cur.pos;
        continue;
      }
      if (cur.peek() == '}') {
        ++cur.pos;
        break;
      }
      cur.fail("expected ',' or '}' in value set");
    }
    return SlotConstraint::value_set(std::move(values));
  }
  if (cur.peek() == '"') {
    return SlotConstraint::literal(parse_value(cur));
  }
  std::string v = parse_value(cur);
  if (v == "_") return SlotConstraint::wildcard();
  return SlotConstraint::literal(std::move(v));
}

std::int64_t parse_count(Cursor& cur, const char* what) {
  cur.skip_spaces();
  std::int64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(cur.line.data() + cur.pos, cur.line.data() + cur.line.size(), value);
  if (ec != std::errc() || ptr == cur.line.data() + cur.pos) {
    cur.fail(std::string("expected integer for ") + what);
  }
  cur.pos = std::size_t(ptr - cur.line.data());
  return value;
}

Rule parse_rule_line(const std::string& line, std::size_t schema_size, double threshold,
                     const std::string& where, int lineno) {
  Cursor cur{line, 0, lineno, where};
  cur.skip_spaces();
  cur.expect('[');
  Pattern pattern;
  while (true) {
    pattern.push_back(parse_slot(cur));
    cur.skip_blanks();
    if (cur.peek() == ',') {
      ++cur.pos;
      continue;
    }
    if (cur.peek() == ']') {
      ++cur.pos;
      break;
    }
    cur.fail("expected ',' or ']' in pattern");
  }
  if (pattern.size() != schema_size) {
    cur.fail("pattern has " + std::to_string(pattern.size()) + " slots, schema declares " +
             std::to_string(schema_size));
  }
  std::int64_t n = parse_count(cur, "total matches");
  std::int64_t m = parse_count(cur, "false positives");
  std::int64_t pct = parse_count(cur, "laplace percent");
  cur.expect('%');
  cur.skip_spaces();
  if (!cur.done()) cur.fail("trailing characters after rule");

  if (n < 1) cur.fail("rule must have n >= 1");
  if (m < 0 || m > n) cur.fail("rule must have 0 <= m <= n");
  int computed = laplace_percent(n, m);
  if (pct != computed) {
    cur.fail("stated laplace " + std::to_string(pct) + "% is inconsistent with n=" +
             std::to_string(n) + ", m=" + std::to_string(m) + " (computed " +
             std::to_string(computed) + "%)");
  }
  if (laplace(n, m) < threshold) {
    cur.fail("rule laplace " + format_double(laplace(n, m)) + " is below ruleset threshold " +
             format_double(threshold));
  }
  return Rule{std::move(pattern), n, m};
}

std::string header_value(const std::string& line, const char* key, const std::string& where,
                         int lineno) {
  std::string prefix = std::string(key) + "=";
  if (line.rfind(prefix, 0) != 0) {
    throw FormatError(where, lineno, "expected '" + prefix + "...' header line");
  }
  return line.substr(prefix.size());
}

}  // namespace

std::string pattern_to_text(const Pattern& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += render_slot(p[i]);
  }
  out += "]";
  return out;
}

std::string serialize_ruleset(const RuleSet& rs) {
  for (const auto& name : rs.schema) {
    if (name.empty() || name.find(',') != std::string::npos || contains_whitespace(name)) {
      throw Error("schema slot name not serializable: '" + name + "'");
    }
  }
  std::ostringstream out;
  out << "label=" << rs.label << '\n';
  out << "schema=" << join(rs.schema, ",") << '\n';
  out << "threshold=" << format_double(rs.threshold) << '\n';
  for (const Rule& r : rs.rules) {
    out << pattern_to_text(r.pattern) << '\t' << r.n << '\t' << r.m << '\t' << r.percent()
        << "%\n";
  }
  return out.str();
}

RuleSet parse_ruleset(const std::string& text) {
  std::istringstream in(text);
  std::string where = "<ruleset>";
  std::string line;
  std::vector<std::pair<int, std::string>> lines;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    lines.emplace_back(lineno, line);
  }
  if (lines.size() < 3) throw FormatError(where, lineno, "rule file needs 3 header lines");

  RuleSet rs;
  rs.label = header_value(lines[0].second, "label", where, lines[0].first);
  std::string schema_text = header_value(lines[1].second, "schema", where, lines[1].first);
  rs.schema = split(schema_text, ',');
  for (const auto& name : rs.schema) {
    if (name.empty()) throw FormatError(where, lines[1].first, "empty slot name in schema");
  }
  std::string thr_text = header_value(lines[2].second, "threshold", where, lines[2].first);
  {
    double thr = 0.0;
    auto [ptr, ec] = std::from_chars(thr_text.data(), thr_text.data() + thr_text.size(), thr);
    if (ec != std::errc() || ptr != thr_text.data() + thr_text.size()) {
      throw FormatError(where, lines[2].first, "bad threshold '" + thr_text + "'");
    }
    if (!(thr > 0.0 && thr < 1.0)) {
      throw FormatError(where, lines[2].first, "threshold must be in (0, 1)");
    }
    rs.threshold = thr;
  }
  for (std::size_t i = 3; i < lines.size(); ++i) {
    rs.rules.push_back(
        parse_rule_line(lines[i].second, rs.schema.size(), rs.threshold, where, lines[i].first));
  }
  return rs;
}

RuleSet load_ruleset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open rule file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_ruleset(buf.str());
  } catch (const FormatError& e) {
    std::string msg = e.what();
    auto pos = msg.find("<ruleset>");
    if (pos != std::string::npos) msg.replace(pos, 9, path);
    throw FormatError(msg);
  }
}

void save_ruleset(const RuleSet& rs, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write rule file: " + path);
  out << serialize_ruleset(rs);
}

// --- training ----------------------------------------------------------------

WindowMatrix::WindowMatrix(std::vector<std::string> schema) : schema_(std::move(schema)) {
  if (schema_.empty()) throw Error("window schema must not be empty");
  if (schema_.size() > 16) throw Error("window schema wider than 16 slots is not supported");
}

std::int32_t WindowMatrix::intern(const std::string& value) {
  auto it = ids_.find(value);
  if (it != ids_.end()) return it->second;
  std::int32_t id = static_cast<std::int32_t>(symbols_.size());
  symbols_.push_back(value);
  ids_.emplace(value, id);
  return id;
}

void WindowMatrix::add_row(std::span<const std::string> fv) {
  if (fv.size() != schema_.size()) {
    throw Error("feature vector width " + std::to_string(fv.size()) +
                " does not match schema width " + std::to_string(schema_.size()));
  }
  for (const auto& value : fv) data_.push_back(intern(value));
}

std::span<const std::int32_t> WindowMatrix::row(std::size_t r) const {
  return {data_.data() + r * schema_.size(), schema_.size()};
}

void SubsetCounts::row_keys(std::span<const std::int32_t> row, int max_literals,
                            std::vector<Key>& out) {
  const int width = static_cast<int>(row.size());
  std::array<int, kMaxLiterals> slots{};
  for (int size = 1; size <= max_literals && size <= width; ++size) {
    for (int i = 0; i < size; ++i) slots[i] = i;
    while (true) {
      Key key;
      key.vals.fill(-1);
      for (int i = 0; i < size; ++i) {
        key.mask |= std::uint16_t(1u << slots[i]);
        key.vals[i] = row[slots[i]];
      }
      out.push_back(key);
      // next combination
      int i = size - 1;
      while (i >= 0 && slots[i] == width - size + i) --i;
      if (i < 0) break;
      ++slots[i];
      for (int j = i + 1; j < size; ++j) slots[j] = slots[j - 1] + 1;
    }
  }
}

SubsetCounts::SubsetCounts(const WindowMatrix& matrix, int max_literals)
    : max_literals_(max_literals) {
  if (max_literals < 1 || max_literals > kMaxLiterals) {
    throw Error("max_literals must be in [1, " + std::to_string(kMaxLiterals) + "]");
  }
  std::size_t per_row = 0;
  {
    std::vector<Key> probe;
    if (matrix.rows() > 0) {
      row_keys(matrix.row(0), max_literals, probe);
      per_row = probe.size();
    }
  }
  std::vector<Key> all;
  all.reserve(matrix.rows() * per_row);
  std::vector<Key> buf;
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    buf.clear();
    row_keys(matrix.row(r), max_literals, buf);
    all.insert(all.end(), buf.begin(), buf.end());
  }
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j] == all[i]) ++j;
    keys_.push_back(all[i]);
    counts_.push_back(static_cast<std::uint32_t>(j - i));
    i = j;
  }
}

std::uint32_t SubsetCounts::count(const Key& k) const {
  auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
  if (it == keys_.end() || !(*it == k)) return 0;
  return counts_[std::size_t(it - keys_.begin())];
}

namespace {

struct KeyHash {
  std::size_t operator()(const SubsetCounts::Key& k) const {
    std::uint64_t h = std::uint64_t(k.mask) * 0x9e3779b97f4a7c15ULL;
    for (std::int32_t v : k.vals) {
      h ^= std::uint64_t(std::uint32_t(v)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return std::size_t(h);
  }
};

struct Candidate {
  SubsetCounts::Key key;
  int merge_slot = -1;                   // slot carrying a value set; -1 for literal patterns
  std::vector<std::int32_t> merge_ids;   // symbol ids of the value set
  std::int64_t n = 0;
  std::int64_t m = 0;
  int literals = 0;
};

Pattern candidate_pattern(const WindowMatrix& matrix, const Candidate& c) {
  Pattern p(std::size_t(matrix.width()), SlotConstraint::wildcard());
  int vi = 0;
  for (int slot = 0; slot < matrix.width(); ++slot) {
    if (!(c.key.mask & (1u << slot))) continue;
    if (slot == c.merge_slot) {
      std::vector<std::string> values;
      values.reserve(c.merge_ids.size());
      for (std::int32_t id : c.merge_ids) values.push_back(matrix.symbol(id));
      p[std::size_t(slot)] = SlotConstraint::value_set(std::move(values));
    } else {
      p[std::size_t(slot)] = SlotConstraint::literal(matrix.symbol(c.key.vals[vi]));
    }
    ++vi;
  }
  return p;
}

bool candidate_matches_row(const Candidate& c, std::span<const std::int32_t> row) {
  int vi = 0;
  for (int slot = 0; slot < static_cast<int>(row.size()); ++slot) {
    if (!(c.key.mask & (1u << slot))) continue;
    if (slot == c.merge_slot) {
      if (std::find(c.merge_ids.begin(), c.merge_ids.end(), row[slot]) == c.merge_ids.end()) {
        return false;
      }
    } else if (row[slot] != c.key.vals[vi]) {
      return false;
    }
    ++vi;
  }
  return true;
}

// Selection order: max laplace, then max n, then fewest literals, then
// lexicographically smallest pattern text. Returns true when a beats b.
bool candidate_better(const WindowMatrix& matrix, const Candidate& a, const Candidate& b) {
  int c = compare_laplace(a.n, a.m, b.n, b.m);
  if (c != 0) return c > 0;
  if (a.n != b.n) return a.n > b.n;
  if (a.literals != b.literals) return a.literals < b.literals;
  return pattern_to_text(candidate_pattern(matrix, a)) <
         pattern_to_text(candidate_pattern(matrix, b));
}

}  // namespace

LearnResult learn_over_matrix(const WindowMatrix& matrix, const std::vector<bool>& positive,
                              const SubsetCounts& counts, const std::string& label,
                              const LearnerConfig& config) {
  config.validate();
  if (config.max_literals > counts.max_literals()) {
    throw Error("SubsetCounts built for max_literals " + std::to_string(counts.max_literals()) +
                ", config wants " + std::to_string(config.max_literals));
  }
  if (positive.size() != matrix.rows()) {
    throw Error("positive mask size does not match window count");
  }

  std::vector<std::size_t> uncovered;
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    if (positive[r]) uncovered.push_back(r);
  }
  if (uncovered.empty()) throw Error("cannot learn '" + label + "': no positive examples");

  // Positive-occurrence counts; n and m for any candidate follow from these
  // plus the global counts, and never change across covering iterations.
  std::unordered_map<SubsetCounts::Key, std::uint32_t, KeyHash> pos_counts;
  {
    std::vector<SubsetCounts::Key> buf;
    for (std::size_t r : uncovered) {
      buf.clear();
      SubsetCounts::row_keys(matrix.row(r), config.max_literals, buf);
      for (const auto& k : buf) ++pos_counts[k];
    }
  }

  RuleSet rs;
  rs.label = label;
  rs.schema = matrix.schema();
  rs.threshold = config.min_laplace;

  std::vector<SubsetCounts::Key> candidate_keys;
  std::vector<SubsetCounts::Key> buf;

  while (!uncovered.empty()) {
    candidate_keys.clear();
    for (std::size_t r : uncovered) {
      buf.clear();
      SubsetCounts::row_keys(matrix.row(r), config.max_literals, buf);
      candidate_keys.insert(candidate_keys.end(), buf.begin(), buf.end());
    }
    std::sort(candidate_keys.begin(), candidate_keys.end());
    candidate_keys.erase(std::unique(candidate_keys.begin(), candidate_keys.end()),
                         candidate_keys.end());

    std::vector<Candidate> pool;
    for (const auto& key : candidate_keys) {
      std::int64_t n = counts.count(key);
      auto pit = pos_counts.find(key);
      std::int64_t pos_n = pit == pos_counts.end() ? 0 : pit->second;
      std::int64_t m = n - pos_n;
      if (n < config.min_coverage) continue;
      if (laplace(n, m) < config.min_laplace) continue;
      Candidate c;
      c.key = key;
      c.n = n;
      c.m = m;
      c.literals = std::popcount(std::uint32_t(key.mask));
      pool.push_back(std::move(c));
    }

    if (config.set_merge) {
      // Group surviving literal candidates that differ in exactly one slot's
      // value; each group yields one value-set candidate, kept when its
      // laplace is at least the best constituent's.
      struct GroupKey {
        SubsetCounts::Key base;  // varying slot's value replaced by -2
        int slot;
        bool operator==(const GroupKey&) const = default;
      };
      struct GroupKeyHash {
        std::size_t operator()(const GroupKey& g) const {
          return KeyHash{}(g.base) * 31 + std::size_t(g.slot);
        }
      };
      std::unordered_map<GroupKey, std::vector<std::size_t>, GroupKeyHash> groups;
      for (std::size_t ci = 0; ci < pool.size(); ++ci) {
        const Candidate& c = pool[ci];
        if (c.merge_slot != -1) continue;
        int vi = 0;
        for (int slot = 0; slot < matrix.width(); ++slot) {
          if (!(c.key.mask & (1u << slot))) continue;
          GroupKey g{c.key, slot};
          g.base.vals[vi] = -2;
          groups[g].push_back(ci);
          ++vi;
        }
      }
      std::vector<Candidate> merged;
      for (const auto& [group, members] : groups) {
        if (members.size() < 2) continue;
        Candidate mc;
        mc.key = group.base;
        mc.merge_slot = group.slot;
        mc.literals = std::popcount(std::uint32_t(group.base.mask));
        const Candidate* best_member = nullptr;
        int vi = 0;
        for (int slot = 0; slot < group.slot; ++slot) {
          if (group.base.mask & (1u << slot)) ++vi;
        }
        for (std::size_t ci : members) {
          const Candidate& c = pool[ci];
          mc.n += c.n;
          mc.m += c.m;
          mc.merge_ids.push_back(c.key.vals[vi]);
          if (!best_member || compare_laplace(c.n, c.m, best_member->n, best_member->m) > 0) {
            best_member = &c;
          }
        }
        if (compare_laplace(mc.n, mc.m, best_member->n, best_member->m) >= 0) {
          std::sort(mc.merge_ids.begin(), mc.merge_ids.end(),
                    [&](std::int32_t a, std::int32_t b) {
                      return matrix.symbol(a) < matrix.symbol(b);
                    });
          merged.push_back(std::move(mc));
        }
      }
      pool.insert(pool.end(), std::make_move_iterator(merged.begin()),
                  std::make_move_iterator(merged.end()));
    }

    if (pool.empty()) break;

    std::size_t best = 0;
    for (std::size_t ci = 1; ci < pool.size(); ++ci) {
      if (candidate_better(matrix, pool[ci], pool[best])) best = ci;
    }
    const Candidate& chosen = pool[best];
    rs.rules.push_back(Rule{candidate_pattern(matrix, chosen), chosen.n, chosen.m});

    std::vector<std::size_t> still;
    for (std::size_t r : uncovered) {
      if (!candidate_matches_row(chosen, matrix.row(r))) still.push_back(r);
    }
    if (still.size() == uncovered.size()) {
      throw Error("internal: selected rule covers no uncovered positives");
    }
    uncovered = std::move(still);
  }

  return LearnResult{std::move(rs), std::int64_t(uncovered.size())};
}

LearnResult learn_ruleset(const std::vector<Example>& examples, const std::string& label,
                          const std::vector<std::string>& schema, const LearnerConfig& config) {
  config.validate();
  WindowMatrix matrix(schema);
  std::vector<bool> positive;
  positive.reserve(examples.size());
  for (const auto& [fv, is_pos] : examples) {
    matrix.add_row(fv);
    positive.push_back(is_pos);
  }
  SubsetCounts counts(matrix, config.max_literals);
  return learn_over_matrix(matrix, positive, counts, label, config);
}

}  // namespace framekit
