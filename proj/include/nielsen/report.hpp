#pragma once

// Report construction shared by the command drivers: one result tree (held
// as JSON) plus a plain-text rendering.  Numbers stay exact end to end —
// integers are JSON numbers only when they fit losslessly in 64 bits and
// decimal strings otherwise; non-integral rationals are "p/q" strings.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "nielsen/formulas.hpp"
#include "nielsen/netness.hpp"
#include "nielsen/numeric.hpp"

namespace nielsen {

using Json = nlohmann::json;

inline Json json_int(const Int& v) {
  if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(to_string(v));
}

inline Json json_rat(const Rat& v) {
  if (is_integer(v)) return json_int(v.get_num());
  return Json(to_string(v));
}

inline Json json_int_vec(const IntVec& v) {
  Json a = Json::array();
  for (const Int& x : v) a.push_back(json_int(x));
  return a;
}

inline Json json_rat_vec(const std::vector<Rat>& v) {
  Json a = Json::array();
  for (const Rat& x : v) a.push_back(json_rat(x));
  return a;
}

inline Json json_netness(const NetnessVerdict& v) {
  Json j;
  j["overall"] = to_string(v.overall());
  j["box_bound"] = v.box_bound;
  Json levels = Json::array();
  for (const LevelVerdict& l : v.levels) {
    Json jl;
    jl["level"] = l.level;
    jl["status"] = to_string(l.status);
    jl["certificate"] = l.certificate;
    if (l.witness) {
      Json w;
      w["exponent"] = json_int_vec(l.witness->exponent);
      w["order"] = l.witness->order;
      jl["witness"] = w;
    }
    levels.push_back(jl);
  }
  j["levels"] = levels;
  return j;
}

inline Json json_independence(const IndepResult& r) {
  Json j;
  j["status"] = to_string(r.status);
  j["detail"] = r.detail;
  return j;
}

inline Json json_terms(const std::vector<TermRow>& terms,
                       const std::vector<std::string>& labels) {
  Json a = Json::array();
  for (const TermRow& t : terms) {
    Json j;
    j["branch"] = t.branch + 1;
    j["label"] = labels.at(t.q);
    j["level_factors"] = json_rat_vec(t.level_factors);
    j["product"] = json_rat(t.product);
    j["isolated"] = t.isolated;
    a.push_back(j);
  }
  return a;
}

// Left-aligned column layout for the text renderings.
class TextTable {
public:
  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

  std::string str(const std::string& indent = "  ") const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_)
      for (std::size_t c = 0; c < r.size(); ++c) {
        if (width.size() <= c) width.resize(c + 1, 0);
        width[c] = std::max(width[c], r[c].size());
      }
    std::string out;
    for (const auto& r : rows_) {
      out += indent;
      for (std::size_t c = 0; c < r.size(); ++c) {
        out += r[c];
        if (c + 1 < r.size())
          out += std::string(width[c] - r[c].size() + 2, ' ');
      }
      out += "\n";
    }
    return out;
  }

private:
  std::vector<std::vector<std::string>> rows_;
};

inline std::string rat_vec_str(const std::vector<Rat>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s;
}

struct Report {
  Json data = Json::object();
  std::string text;
  int exit_code = 0;
};

inline std::string emit_report(const Report& r, const std::string& format) {
  if (format == "structured") return r.data.dump(2) + "\n";
  if (format == "text") return r.text;
  throw Error("unknown format '" + format + "' (expected text or structured)");
}

}  // namespace nielsen
