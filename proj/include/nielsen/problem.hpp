#pragma once

// Declarative problem files.  A file describes one problem: a tower of
// lattices with its commuting action, an optional holonomy group, an
// optional sublattice chain, and any number of branch linearisations.
//
// The format is line oriented.  `#` starts a comment, blank lines are
// skipped.  Metadata entries (`name`, `command`, `description`) may appear
// before the first section header.  Sections are opened by `[tower]`,
// `[holonomy]`, `[chain]`, and `[branch j]` headers and hold `key = value`
// lines.  Matrices are bracketed row lists `[[a, b], [c, d]]`, scalars are
// integers or rationals `p/q` with positive denominator, label lists are
// comma separated.
//
// Parsing is split in two stages so a driver can map failures to distinct
// exit codes: parse() enforces only the grammar and reports line/column
// positions, parse_spec() additionally runs the model validators and
// throws a semantic error listing every violated invariant.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nielsen/formulas.hpp"
#include "nielsen/morphism.hpp"
#include "nielsen/tower.hpp"

namespace nielsen {

struct ProblemFile {
  std::string name;         // free-text metadata, may be empty
  std::string command;      // suggested command, may be empty
  std::string description;  // free-text metadata, may be empty
  InfraSpec infra;          // holonomy defaults to the trivial group
  SublatticeChain chain;    // defaults to the identity chain
  // branches[j][i] = linearisation matrix F_i of branch j+1
  std::vector<std::vector<RatMat>> branches;

  bool operator==(const ProblemFile&) const = default;
};

inline const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> cmds = {
      "validate", "netness", "coincidence", "projection", "nielsen", "oracle"};
  return cmds;
}

namespace detail {

// Bounds that keep a malformed file from allocating absurd amounts before
// semantic validation gets a chance to reject it.
inline constexpr long kMaxLevels = 64;
inline constexpr long kMaxRank = 64;
inline constexpr long kMaxBranches = 4096;

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
  int kcol = 0;  // 1-based column of the key
  int vcol = 0;  // 1-based column of the value
  bool used = false;
};

struct Section {
  std::string kind;  // "tower", "holonomy", "chain", "branch"
  std::size_t number = 0;  // branch number, 1-based; 0 otherwise
  int line = 0;
  std::vector<Entry> entries;

  std::string display() const {
    return number == 0 ? kind : kind + " " + std::to_string(number);
  }
};

struct RawFile {
  std::vector<Entry> metadata;
  std::vector<Section> sections;
};

// Scans one value string.  Columns are reported relative to the original
// line so error positions point into the file, not into the substring.
class ValueParser {
public:
  ValueParser(std::string_view text, int line, int col0)
      : text_(text), line_(line), col0_(col0) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, line_, col0_ + static_cast<int>(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t'))
      ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  void expect(char c, const std::string& what) {
    if (peek() != c) fail("expected '" + std::string(1, c) + "' " + what);
    ++pos_;
  }
  bool try_consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect_end() {
    if (!at_end()) fail("unexpected trailing text");
  }

  Int parse_int() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("expected an integer");
    }
    return Int(std::string(text_.substr(start, pos_ - start)), 10);
  }

  // `p` or `p/q`; the denominator is written without sign or spaces and
  // must be positive.
  Rat parse_rat() {
    const Int num = parse_int();
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      const std::size_t dstart = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      if (pos_ == dstart || Int(std::string(text_.substr(dstart, pos_ - dstart)), 10) == 0) {
        pos_ = dstart;
        fail("denominator must be a positive integer");
      }
      return make_rat(num, Int(std::string(text_.substr(dstart, pos_ - dstart)), 10));
    }
    return Rat(num);
  }

  std::size_t parse_size(long max, const std::string& what) {
    skip_ws();
    const std::size_t start = pos_;
    const Int v = parse_int();
    if (v < 0) {
      pos_ = start;
      fail(what + " must be nonnegative");
    }
    if (v > max) {
      pos_ = start;
      fail(what + " exceeds the supported bound " + std::to_string(max));
    }
    return static_cast<std::size_t>(v.get_ui());
  }

  RatMat parse_matrix(bool integral) {
    expect('[', "to open the matrix");
    std::vector<std::vector<Rat>> rows;
    while (true) {
      expect('[', "to open a matrix row");
      if (peek() == ']') fail("matrix row is empty");
      std::vector<Rat> row;
      while (true) {
        skip_ws();
        const std::size_t epos = pos_;
        const Rat v = parse_rat();
        if (integral && !is_integer(v)) {
          pos_ = epos;
          fail("entry must be an integer");
        }
        row.push_back(v);
        if (!try_consume(',')) break;
      }
      expect(']', "to close the matrix row");
      if (!rows.empty() && row.size() != rows.front().size())
        fail("matrix rows have different lengths");
      rows.push_back(std::move(row));
      if (!try_consume(',')) break;
    }
    expect(']', "to close the matrix");
    expect_end();
    RatMat m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
  }

  static bool label_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  // Labels are embedded into keys (`A0_<label>`), so the label alphabet
  // must stay a subset of the key alphabet.
  static bool label_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string parse_label() {
    skip_ws();
    if (pos_ >= text_.size() || !label_start(text_[pos_]))
      fail("expected a label (letters, digits, _; starting with a letter or _)");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && label_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::vector<std::string> parse_label_list() {
    std::vector<std::string> out;
    out.push_back(parse_label());
    while (try_consume(',')) out.push_back(parse_label());
    expect_end();
    return out;
  }

  // `[2, 1, 3]`, entries 1-based; returned 0-based.
  std::vector<std::size_t> parse_permutation() {
    expect('[', "to open the permutation");
    std::vector<std::size_t> out;
    while (true) {
      skip_ws();
      const std::size_t start = pos_;
      const Int v = parse_int();
      if (v < 1 || v > kMaxBranches) {
        pos_ = start;
        fail("permutation entries are 1-based branch positions");
      }
      out.push_back(static_cast<std::size_t>(v.get_ui()) - 1);
      if (!try_consume(',')) break;
    }
    expect(']', "to close the permutation");
    expect_end();
    return out;
  }

private:
  std::string_view text_;
  int line_;
  int col0_;
  std::size_t pos_ = 0;
};

inline std::string_view trim_view(std::string_view s, std::size_t* lead = nullptr) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  if (lead) *lead = b;
  return s.substr(b, e - b);
}

inline bool valid_key(std::string_view k) {
  if (k.empty()) return false;
  for (char c : k)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

inline RawFile split_into_sections(std::string_view text) {
  RawFile out;
  Section* current = nullptr;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t lead = 0;
    const std::string_view body = trim_view(line, &lead);
    if (body.empty()) continue;
    const int col = static_cast<int>(lead) + 1;

    if (body.front() == '[') {
      if (body.back() != ']')
        throw SyntaxError("section header does not end with ']'", line_no,
                          col + static_cast<int>(body.size()) - 1);
      const std::string_view inner = trim_view(body.substr(1, body.size() - 2));
      const std::size_t space = inner.find_first_of(" \t");
      const std::string kind(space == std::string_view::npos
                                 ? inner
                                 : trim_view(inner.substr(0, space)));
      const std::string_view arg =
          space == std::string_view::npos
              ? std::string_view{}
              : trim_view(inner.substr(space + 1));
      Section s;
      s.kind = kind;
      s.line = line_no;
      if (kind == "tower" || kind == "holonomy" || kind == "chain") {
        if (!arg.empty())
          throw SyntaxError("section [" + kind + "] takes no argument", line_no, col);
      } else if (kind == "branch") {
        ValueParser vp(arg, line_no, col);
        const std::size_t n = vp.parse_size(kMaxBranches, "branch number");
        vp.expect_end();
        if (n == 0) throw SyntaxError("branch numbers start at 1", line_no, col);
        s.number = n;
      } else {
        throw SyntaxError("unknown section '" + kind + "'", line_no, col);
      }
      for (const Section& prev : out.sections) {
        if (prev.kind == s.kind && prev.number == s.number)
          throw SyntaxError("duplicate section", line_no, col);
      }
      out.sections.push_back(std::move(s));
      current = &out.sections.back();
      continue;
    }

    const std::size_t eq = body.find('=');
    if (eq == std::string_view::npos)
      throw SyntaxError("expected 'key = value'", line_no, col);
    std::size_t klead = 0;
    const std::string_view key = trim_view(body.substr(0, eq), &klead);
    if (!valid_key(key))
      throw SyntaxError("malformed key", line_no, col + static_cast<int>(klead));
    std::size_t vlead = 0;
    const std::string_view value = trim_view(body.substr(eq + 1), &vlead);
    if (value.empty())
      throw SyntaxError("missing value for key '" + std::string(key) + "'",
                        line_no, col + static_cast<int>(eq) + 1);
    Entry e;
    e.key = std::string(key);
    e.value = std::string(value);
    e.line = line_no;
    e.kcol = col + static_cast<int>(klead);
    e.vcol = col + static_cast<int>(eq) + 1 + static_cast<int>(vlead);
    if (current) {
      current->entries.push_back(std::move(e));
    } else {
      out.metadata.push_back(std::move(e));
    }
  }
  return out;
}

inline Entry* find_entry(Section& s, const std::string& key) {
  for (Entry& e : s.entries)
    if (e.key == key) {
      e.used = true;
      return &e;
    }
  return nullptr;
}

inline Entry& require_entry(Section& s, const std::string& key) {
  Entry* e = find_entry(s, key);
  if (!e)
    throw SyntaxError("missing key '" + key + "' in [" + s.display() + "]",
                      s.line, 1);
  return *e;
}

inline void reject_unused(const Section& s) {
  for (const Entry& e : s.entries)
    if (!e.used)
      throw SyntaxError("unknown key '" + e.key + "' in [" + s.display() + "]",
                        e.line, e.kcol);
}

inline ValueParser value_parser(const Entry& e) {
  return ValueParser(e.value, e.line, e.vcol);
}

inline IntMat entry_int_matrix(const Entry& e) {
  ValueParser vp = value_parser(e);
  return to_integral(vp.parse_matrix(true));
}

inline RatMat entry_rat_matrix(const Entry& e) {
  ValueParser vp = value_parser(e);
  return vp.parse_matrix(false);
}

}  // namespace detail

// Grammar-only parse: the result is structurally complete (defaults for the
// holonomy and the chain are filled in) but not yet validated against the
// model invariants.
inline ProblemFile parse(const std::string& text) {
  using namespace detail;
  RawFile raw = split_into_sections(text);
  ProblemFile p;

  for (const Entry& e : raw.metadata) {
    std::string* slot = nullptr;
    if (e.key == "name") slot = &p.name;
    else if (e.key == "command") slot = &p.command;
    else if (e.key == "description") slot = &p.description;
    if (!slot)
      throw SyntaxError("unknown metadata key '" + e.key + "'", e.line, e.kcol);
    if (!slot->empty())
      throw SyntaxError("duplicate metadata key '" + e.key + "'", e.line, e.kcol);
    *slot = e.value;
    if (e.key == "command") {
      bool known = false;
      for (const std::string& c : known_commands()) known = known || c == e.value;
      if (!known)
        throw SyntaxError("unknown command '" + e.value + "'", e.line, e.vcol);
    }
  }

  Section* tower_sec = nullptr;
  Section* holonomy_sec = nullptr;
  Section* chain_sec = nullptr;
  std::vector<Section*> branch_secs;
  for (Section& s : raw.sections) {
    if (s.kind == "tower") tower_sec = &s;
    else if (s.kind == "holonomy") holonomy_sec = &s;
    else if (s.kind == "chain") chain_sec = &s;
    else branch_secs.push_back(&s);
  }
  if (!tower_sec) throw SyntaxError("missing [tower] section");

  // --- tower ---
  TowerSpec& t = p.infra.tower;
  {
    Entry& ce = require_entry(*tower_sec, "c");
    ValueParser vp = value_parser(ce);
    const std::size_t c = vp.parse_size(kMaxLevels, "level count");
    vp.expect_end();
    for (std::size_t i = 0; i <= c; ++i) {
      Entry& ke = require_entry(*tower_sec, "k" + std::to_string(i));
      ValueParser kp = value_parser(ke);
      t.ranks.push_back(kp.parse_size(kMaxRank, "rank"));
      kp.expect_end();
    }
    for (std::size_t i = 1; i <= c; ++i) {
      std::vector<IntMat> gens;
      for (std::size_t s = 1; s <= t.ranks[0]; ++s)
        gens.push_back(entry_int_matrix(require_entry(
            *tower_sec, "M" + std::to_string(i) + "_" + std::to_string(s))));
      t.gens.push_back(std::move(gens));
    }
    reject_unused(*tower_sec);
  }

  // --- holonomy ---
  HolonomySpec& h = p.infra.holonomy;
  if (!holonomy_sec) {
    h = trivial_holonomy(t);
  } else {
    Section& sec = *holonomy_sec;
    {
      Entry& le = require_entry(sec, "labels");
      ValueParser vp = value_parser(le);
      h.labels = vp.parse_label_list();
      for (std::size_t i = 0; i < h.labels.size(); ++i)
        for (std::size_t j = i + 1; j < h.labels.size(); ++j)
          if (h.labels[i] == h.labels[j])
            throw SyntaxError("duplicate label '" + h.labels[i] + "'", le.line,
                              le.vcol);
    }
    auto label_index = [&](const std::string& l, const Entry& e) {
      for (std::size_t i = 0; i < h.labels.size(); ++i)
        if (h.labels[i] == l) return i;
      throw SyntaxError("unknown label '" + l + "'", e.line, e.vcol);
    };
    {
      Entry& ie = require_entry(sec, "identity");
      ValueParser vp = value_parser(ie);
      const std::string l = vp.parse_label();
      vp.expect_end();
      h.identity = label_index(l, ie);
    }
    for (const std::string& l : h.labels) {
      Entry& te = require_entry(sec, "table_" + l);
      ValueParser vp = value_parser(te);
      std::vector<std::size_t> row;
      for (const std::string& entry_label : vp.parse_label_list())
        row.push_back(label_index(entry_label, te));
      h.table.push_back(std::move(row));
    }
    for (std::size_t q = 0; q < h.labels.size(); ++q) {
      std::vector<IntMat> acts;
      for (std::size_t i = 0; i < t.levels(); ++i)
        acts.push_back(entry_int_matrix(require_entry(
            sec, "A" + std::to_string(i) + "_" + h.labels[q])));
      h.action.push_back(std::move(acts));
    }
    std::size_t sigma_count = 0;
    for (const std::string& l : h.labels)
      for (const Entry& e : sec.entries)
        if (e.key == "sigma_" + l) ++sigma_count;
    if (sigma_count != 0) {
      if (sigma_count != h.labels.size())
        throw SyntaxError(
            "either every label has a sigma entry or none does", sec.line, 1);
      for (const std::string& l : h.labels) {
        Entry& se = require_entry(sec, "sigma_" + l);
        ValueParser vp = value_parser(se);
        h.sigma.push_back(vp.parse_permutation());
      }
    }
    reject_unused(sec);
  }

  // --- chain ---
  if (!chain_sec) {
    p.chain = identity_chain(t);
  } else {
    for (std::size_t i = 0; i < t.levels(); ++i)
      p.chain.b.push_back(
          entry_int_matrix(require_entry(*chain_sec, "B" + std::to_string(i))));
    reject_unused(*chain_sec);
  }

  // --- branches ---
  std::sort(branch_secs.begin(), branch_secs.end(),
            [](const Section* a, const Section* b) { return a->number < b->number; });
  for (std::size_t j = 0; j < branch_secs.size(); ++j) {
    Section& sec = *branch_secs[j];
    if (sec.number != j + 1)
      throw SyntaxError("branch numbers must be 1..n with no gaps", sec.line, 1);
    std::vector<RatMat> fs;
    for (std::size_t i = 0; i < t.levels(); ++i)
      fs.push_back(entry_rat_matrix(require_entry(sec, "F" + std::to_string(i))));
    p.branches.push_back(std::move(fs));
    reject_unused(sec);
  }

  return p;
}

// All model invariants for a structurally complete file: the infra data,
// the chain, every branch morphism, and the sigma/branch-count coherence.
inline Diagnostics validate_problem(const ProblemFile& p) {
  Diagnostics d = validate_infra(p.infra);
  if (d.ok()) {
    d.merge(validate_chain(p.chain, p.infra.tower));
    if (d.ok())
      for (std::size_t j = 0; j < p.branches.size(); ++j) {
        const Diagnostics dm =
            validate_morphism(TowerMorphism{p.chain, p.branches[j]}, p.infra.tower);
        for (const std::string& issue : dm.issues)
          d.add("branch " + std::to_string(j + 1) + ": " + issue);
      }
  }
  if (!p.infra.holonomy.sigma.empty() &&
      p.infra.holonomy.sigma[0].size() != p.branches.size())
    d.add("sigma permutations act on " +
          std::to_string(p.infra.holonomy.sigma[0].size()) + " branches but " +
          std::to_string(p.branches.size()) + " branches are defined");
  return d;
}

inline void require_valid_problem(const ProblemFile& p) {
  const Diagnostics d = validate_problem(p);
  if (!d.ok()) {
    std::string msg;
    for (const std::string& issue : d.issues) {
      if (!msg.empty()) msg += "; ";
      msg += issue;
    }
    throw SemanticError(msg);
  }
}

// Full parse: grammar plus model validation.  Throws SyntaxError with a
// position for text-level problems and SemanticError listing every violated
// invariant for well-formed but inconsistent data.
inline ProblemFile parse_spec(const std::string& text) {
  ProblemFile p = parse(text);
  require_valid_problem(p);
  return p;
}

// Canonical text form; parse(serialize(p)) == p for every structurally
// complete ProblemFile.
inline std::string serialize(const ProblemFile& p) {
  std::string out;
  auto kv = [&out](const std::string& key, const std::string& value) {
    out += key + " = " + value + "\n";
  };
  auto meta = [&](const std::string& key, const std::string& value) {
    if (value.empty()) return;
    if (value.find('\n') != std::string::npos ||
        value.find('#') != std::string::npos)
      throw SemanticError("metadata value for '" + key +
                          "' cannot contain '#' or line breaks");
    kv(key, value);
  };
  meta("name", p.name);
  meta("command", p.command);
  meta("description", p.description);
  if (!out.empty()) out += "\n";

  const TowerSpec& t = p.infra.tower;
  out += "[tower]\n";
  kv("c", std::to_string(t.c()));
  for (std::size_t i = 0; i < t.levels(); ++i)
    kv("k" + std::to_string(i), std::to_string(t.ranks[i]));
  for (std::size_t i = 1; i <= t.c(); ++i)
    for (std::size_t s = 0; s < t.gens[i - 1].size(); ++s)
      kv("M" + std::to_string(i) + "_" + std::to_string(s + 1),
         t.gens[i - 1][s].str());

  const HolonomySpec& h = p.infra.holonomy;
  out += "\n[holonomy]\n";
  {
    std::string labels;
    for (std::size_t q = 0; q < h.labels.size(); ++q) {
      if (q) labels += ", ";
      labels += h.labels[q];
    }
    kv("labels", labels);
    kv("identity", h.labels.at(h.identity));
    for (std::size_t q = 0; q < h.labels.size(); ++q) {
      std::string row;
      for (std::size_t r = 0; r < h.table[q].size(); ++r) {
        if (r) row += ", ";
        row += h.labels.at(h.table[q][r]);
      }
      kv("table_" + h.labels[q], row);
    }
    for (std::size_t i = 0; i < t.levels(); ++i)
      for (std::size_t q = 0; q < h.labels.size(); ++q)
        kv("A" + std::to_string(i) + "_" + h.labels[q], h.action[q][i].str());
    for (std::size_t q = 0; q < h.sigma.size(); ++q) {
      std::string perm = "[";
      for (std::size_t j = 0; j < h.sigma[q].size(); ++j) {
        if (j) perm += ", ";
        perm += std::to_string(h.sigma[q][j] + 1);
      }
      kv("sigma_" + h.labels[q], perm + "]");
    }
  }

  out += "\n[chain]\n";
  for (std::size_t i = 0; i < p.chain.b.size(); ++i)
    kv("B" + std::to_string(i), p.chain.b[i].str());

  for (std::size_t j = 0; j < p.branches.size(); ++j) {
    out += "\n[branch " + std::to_string(j + 1) + "]\n";
    for (std::size_t i = 0; i < p.branches[j].size(); ++i)
      kv("F" + std::to_string(i), p.branches[j][i].str());
  }
  return out;
}

// --- builders from a parsed file to module inputs ---

inline TowerMorphism branch_morphism(const ProblemFile& p, std::size_t j) {
  if (j >= p.branches.size())
    throw SemanticError("branch " + std::to_string(j + 1) +
                        " requested but the file defines " +
                        std::to_string(p.branches.size()));
  return TowerMorphism{p.chain, p.branches[j]};
}

inline TowerMorphism identity_on_chain(const ProblemFile& p) {
  TowerMorphism m;
  m.chain = p.chain;
  for (std::size_t i = 0; i < p.infra.tower.levels(); ++i)
    m.f.push_back(to_rational(IntMat::identity(p.infra.tower.ranks[i])));
  return m;
}

inline NValuedInput make_nvalued(const ProblemFile& p) {
  if (p.branches.empty())
    throw SemanticError("the command needs at least one [branch] section");
  NValuedInput in;
  in.infra = p.infra;
  for (std::size_t j = 0; j < p.branches.size(); ++j)
    in.branches.push_back(branch_morphism(p, j));
  return in;
}

// One branch compares against the identity map; two branches compare
// against each other.  The coincidence formulas carry no holonomy, so a
// nontrivial group in the file is rejected rather than silently ignored.
inline CoincidenceInput make_coincidence(const ProblemFile& p) {
  if (p.infra.holonomy.size() != 1)
    throw SemanticError(
        "coincidence counts apply to the trivial-holonomy case; this file "
        "declares a holonomy group of order " +
        std::to_string(p.infra.holonomy.size()));
  if (p.branches.empty() || p.branches.size() > 2)
    throw SemanticError(
        "coincidence needs one branch (compared against the identity) or "
        "two branches; the file defines " + std::to_string(p.branches.size()));
  CoincidenceInput in;
  in.tower = p.infra.tower;
  in.f = branch_morphism(p, 0);
  in.g = p.branches.size() == 2 ? branch_morphism(p, 1) : identity_on_chain(p);
  return in;
}

}  // namespace nielsen
