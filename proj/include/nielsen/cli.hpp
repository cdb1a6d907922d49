#pragma once

// Command drivers.  Each command takes a parsed ProblemFile plus the
// shared options and produces a Report: one JSON tree, one plain-text
// rendering, and the process exit code.  Every command except `validate`
// refuses semantically invalid files up front, so the layers below can
// assume their preconditions; `validate` instead reports all findings as a
// checklist.

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "nielsen/oracle.hpp"
#include "nielsen/problem.hpp"
#include "nielsen/report.hpp"

namespace nielsen {

struct Options {
  long box_bound = 3;           // radius for netness/independence/closure sweeps
  bool oracle = false;          // append independent cross-checks
  std::string format = "text";  // "text" | "structured"
};

namespace exit_codes {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int syntax = 2;
inline constexpr int semantic = 3;
inline constexpr int computation = 4;
inline constexpr int oracle_mismatch = 5;
inline constexpr int internal = 70;
}  // namespace exit_codes

namespace detail {

inline Report make_report(const std::string& cmd, const ProblemFile& p) {
  Report rep;
  rep.data["command"] = cmd;
  rep.text = "command: " + cmd + "\n";
  if (!p.name.empty()) {
    rep.data["name"] = p.name;
    rep.text += "name: " + p.name + "\n";
  }
  return rep;
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

// Independent verification of every factor and of the averaged value.
// Each |det| factor is recomputed as a Smith-form cokernel order on the
// chain (integer data), and the average is re-derived through the
// projection identity on a refined chain.
inline bool render_oracle(Json& dst, std::string& text, const NValuedInput& in,
                          long bound) {
  const TowerSpec& t = in.infra.tower;
  const HolonomySpec& h = in.infra.holonomy;
  Json checks = Json::array();
  bool all = true;
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    all = all && pass;
    Json j;
    j["name"] = name;
    j["pass"] = pass;
    j["detail"] = detail;
    checks.push_back(j);
    text += std::string(pass ? "PASS " : "FAIL ") + name + ": " + detail + "\n";
  };

  for (std::size_t j = 0; j < in.branches.size(); ++j)
    for (std::size_t q = 0; q < h.size(); ++q)
      for (std::size_t i = 0; i < t.levels(); ++i) {
        const RatMat b = to_rational(in.branches[j].chain.b[i]);
        const IntMat m = to_integral(
            b - to_rational(h.action[q][i]) * in.branches[j].f[i] * b);
        const ExtendedNat via_smith = oracle::reidemeister_order(m);
        Int det = determinant(m);
        if (det < 0) det = -det;
        const ExtendedNat via_det{det != 0, det};
        add("cokernel[branch " + std::to_string(j + 1) + ", " + h.labels[q] +
                ", level " + std::to_string(i) + "]",
            via_smith == via_det,
            "smith " + via_smith.str() + ", determinant " + via_det.str());
      }

  const oracle::CrosscheckReport cc = oracle::averaging_crosscheck(in, bound);
  add("averaging crosscheck", cc.match,
      "direct " + to_string(cc.expected) + ", recomputed " +
          to_string(cc.recomputed) + " via projection counts on a chain "
          "refined by 2 (index " + to_string(cc.refined_index) + ")");

  dst["checks"] = checks;
  dst["all_pass"] = all;
  dst["value"] = json_int(cc.expected);
  return all;
}

inline Report cmd_validate(const ProblemFile& p, const Options& o) {
  Report rep = make_report("validate", p);
  Json checks = Json::array();
  bool any_issue = false;
  auto add_check = [&](const std::string& name, bool ran, const Diagnostics& d) {
    Json j;
    j["name"] = name;
    j["status"] = !ran ? "skipped" : d.ok() ? "ok" : "failed";
    j["issues"] = d.issues;
    checks.push_back(j);
    if (!ran) {
      rep.text += "skip  " + name + "\n";
      return;
    }
    if (d.ok()) {
      rep.text += "ok    " + name + "\n";
      return;
    }
    any_issue = true;
    rep.text += "fail  " + name + "\n";
    for (const std::string& issue : d.issues)
      rep.text += "        - " + issue + "\n";
  };

  const TowerSpec& t = p.infra.tower;
  const Diagnostics dt = validate_tower(t);
  add_check("tower structure", true, dt);
  const bool tower_ok = dt.ok();

  Diagnostics dh;
  if (tower_ok) dh = validate_holonomy(p.infra.holonomy, t);
  add_check("holonomy group", tower_ok, dh);

  Diagnostics dc;
  if (tower_ok) dc = validate_chain(p.chain, t);
  add_check("sublattice chain", tower_ok, dc);
  const bool chain_ok = tower_ok && dc.ok();

  for (std::size_t j = 0; j < p.branches.size(); ++j) {
    Diagnostics dm;
    if (chain_ok)
      dm = validate_morphism(TowerMorphism{p.chain, p.branches[j]}, t);
    add_check("branch " + std::to_string(j + 1) + " morphism", chain_ok, dm);
  }

  if (!p.infra.holonomy.sigma.empty()) {
    Diagnostics ds;
    if (p.infra.holonomy.sigma[0].size() != p.branches.size())
      ds.add("sigma permutations act on " +
             std::to_string(p.infra.holonomy.sigma[0].size()) +
             " branches but " + std::to_string(p.branches.size()) +
             " branches are defined");
    add_check("sigma branch coverage", true, ds);
  }

  const bool structure_ok = !any_issue && tower_ok && dh.ok() && chain_ok;
  Diagnostics dclosure;
  if (structure_ok) {
    const ClosureReport cr = holonomy_closure_check(p.infra, o.box_bound);
    for (const ClosureEntry& e : cr.entries)
      if (!e.verified)
        dclosure.add(
            "level " + std::to_string(e.level) + ", labels " +
            p.infra.holonomy.labels[e.q1] + "*" + p.infra.holonomy.labels[e.q2] +
            ": no exponent in the radius-" + std::to_string(o.box_bound) +
            " box closes the product");
  }
  add_check("holonomy closure (box radius " + std::to_string(o.box_bound) + ")",
            structure_ok, dclosure);

  if (tower_ok) {
    const NetnessVerdict nr = nr_check(t, o.box_bound);
    const NetnessVerdict net = netness_check(t, o.box_bound);
    rep.data["nr"] = json_netness(nr);
    rep.data["netness"] = json_netness(net);
    rep.text += "info  netness: " + to_string(net.overall()) +
                " (nr: " + to_string(nr.overall()) + ")\n";
  }

  rep.data["checks"] = checks;
  rep.data["ok"] = !any_issue;
  rep.exit_code = any_issue ? exit_codes::semantic : exit_codes::ok;
  return rep;
}

inline Report cmd_netness(const ProblemFile& p, const Options& o) {
  Report rep = make_report("netness", p);
  const TowerSpec& t = p.infra.tower;
  const NetnessVerdict nr = nr_check(t, o.box_bound);
  const NetnessVerdict net = netness_check(t, o.box_bound);
  rep.data["box_bound"] = o.box_bound;
  rep.data["nr"] = json_netness(nr);
  rep.data["netness"] = json_netness(net);
  rep.text += "nr: " + to_string(nr.overall()) + "\n";
  rep.text += "netness: " + to_string(net.overall()) + "\n";
  if (net.levels.empty()) {
    rep.text += "no upper levels; the tower is vacuously net\n";
    return rep;
  }
  TextTable table;
  table.row({"level", "nr", "netness", "certificate"});
  for (std::size_t i = 0; i < net.levels.size(); ++i)
    table.row({std::to_string(net.levels[i].level),
               to_string(nr.levels[i].status), to_string(net.levels[i].status),
               net.levels[i].certificate});
  rep.text += table.str();
  return rep;
}

inline Report cmd_coincidence(const ProblemFile& p, const Options& o) {
  Report rep = make_report("coincidence", p);
  const CoincidenceInput in = make_coincidence(p);
  const SolvResult r = solv_coincidence(in, o.box_bound);
  rep.data["against"] = p.branches.size() == 2 ? "branch 2" : "identity";
  rep.data["value"] = json_rat(r.value);
  rep.data["condition2"] = to_string(r.condition2);
  rep.data["condition2_detail"] = r.condition2_detail;

  std::vector<Rat> factors;
  for (std::size_t i = 0; i < in.f.f.size(); ++i) {
    Rat d = determinant(in.g.f[i] - in.f.f[i]);
    if (d < 0) d = -d;
    factors.push_back(d);
  }
  rep.data["level_factors"] = json_rat_vec(factors);
  const NetnessVerdict net = netness_check(p.infra.tower, o.box_bound);
  rep.data["netness"] = json_netness(net);

  Json warnings = Json::array();
  if (r.condition2 == Condition2::Unverified)
    warnings.push_back(
        "level-factor independence (condition (2)) is unverified; the "
        "product is formal");
  rep.data["warnings"] = warnings;

  rep.text += "coincidence count: " + to_string(r.value) + "\n";
  rep.text += "compared against: " + rep.data["against"].get<std::string>() + "\n";
  rep.text += "level factors: " + rat_vec_str(factors) + "\n";
  rep.text += "condition (2): " + to_string(r.condition2) + " — " +
              r.condition2_detail + "\n";
  rep.text += "netness: " + to_string(net.overall()) + "\n";
  for (const auto& w : warnings)
    rep.text += "warning: " + w.get<std::string>() + "\n";
  return rep;
}

inline Report cmd_projection(const ProblemFile& p, const Options& o) {
  Report rep = make_report("projection", p);
  if (p.branches.size() != 1)
    throw SemanticError("projection uses exactly one branch; the file defines " +
                        std::to_string(p.branches.size()));
  const ProjectionResult r = projection_coincidence(
      branch_morphism(p, 0), p.chain, p.infra.tower, o.box_bound);

  rep.data["value"] = json_int(r.value);
  rep.data["chain_index"] = json_int(r.index);
  Json lf = Json::array();
  for (const Int& f : r.level_factors) lf.push_back(json_int(f));
  rep.data["level_factors"] = lf;
  rep.data["unscaled_product"] = json_rat(r.unscaled_product);
  Json paths;
  paths["index_times_unscaled"] = json_rat(Rat(r.index) * r.unscaled_product);
  paths["integer_factor_product"] = json_int(r.value);
  paths["agree"] = true;  // enforced inside the computation
  rep.data["paths"] = paths;
  rep.data["netness"] = json_netness(r.netness);
  rep.data["independence"] = json_independence(r.independence);

  Json warnings = Json::array();
  if (r.independence.status == IndepStatus::Unverified)
    warnings.push_back(
        "level-factor independence is unverified; the product is formal");
  rep.data["warnings"] = warnings;

  std::string lf_text;
  for (std::size_t i = 0; i < r.level_factors.size(); ++i) {
    if (i) lf_text += ", ";
    lf_text += to_string(r.level_factors[i]);
  }
  rep.text += "projection count: " + to_string(r.value) + "\n";
  rep.text += "chain index: " + to_string(r.index) + "\n";
  rep.text += "integer level factors: " + lf_text + "\n";
  rep.text += "path A (index x product of |det(I - F_i)|): " +
              to_string(Rat(r.index) * r.unscaled_product) + "\n";
  rep.text += "path B (product of |det(B_i - F_i B_i)|): " +
              to_string(r.value) + "\n";
  rep.text += "paths agree: yes\n";
  rep.text += "netness: " + to_string(r.netness.overall()) + "\n";
  rep.text += "independence: " + to_string(r.independence.status) + " — " +
              r.independence.detail + "\n";
  for (const auto& w : warnings)
    rep.text += "warning: " + w.get<std::string>() + "\n";
  return rep;
}

inline Report cmd_nielsen(const ProblemFile& p, const Options& o) {
  Report rep = make_report("nielsen", p);
  const NValuedInput in = make_nvalued(p);
  const NielsenReport r = in.branches.size() == 1
                              ? single_valued_nielsen(in, o.box_bound)
                              : nvalued_nielsen(in, o.box_bound);

  rep.data["value"] = json_int(r.value);
  rep.data["branches"] = in.branches.size();
  rep.data["holonomy_order"] = json_int(r.divisor);
  rep.data["raw_sum"] = json_rat(r.raw_sum);
  rep.data["integrality"] = "ok";
  rep.data["terms"] = json_terms(r.terms, in.infra.holonomy.labels);
  rep.data["netness"] = json_netness(r.netness);
  Json indep = Json::array();
  for (const IndepResult& b : r.branch_independence)
    indep.push_back(json_independence(b));
  rep.data["branch_independence"] = indep;
  rep.data["conditional"] = r.conditional;
  if (r.product_form) rep.data["product_form"] = json_rat(*r.product_form);
  rep.data["warnings"] = r.warnings;

  rep.text += "nielsen number: " + to_string(r.value) + "\n";
  rep.text += "raw sum: " + to_string(r.raw_sum) + " over holonomy order " +
              to_string(r.divisor) + " (integrality: ok)\n";
  if (r.product_form)
    rep.text += "product form cross-check: " + to_string(*r.product_form) + "\n";
  rep.text += "netness: " + to_string(r.netness.overall()) + "\n";
  for (std::size_t j = 0; j < r.branch_independence.size(); ++j)
    rep.text += "independence[branch " + std::to_string(j + 1) + "]: " +
                to_string(r.branch_independence[j].status) + "\n";
  TextTable table;
  table.row({"branch", "label", "level factors", "product", "isolated"});
  for (const TermRow& row : r.terms)
    table.row({std::to_string(row.branch + 1),
               in.infra.holonomy.labels.at(row.q),
               rat_vec_str(row.level_factors), to_string(row.product),
               yes_no(row.isolated)});
  rep.text += table.str();
  for (const std::string& w : r.warnings) rep.text += "warning: " + w + "\n";
  return rep;
}

inline Report cmd_oracle(const ProblemFile& p, const Options& o) {
  Report rep = make_report("oracle", p);
  const NValuedInput in = make_nvalued(p);
  std::string text;
  const bool all = render_oracle(rep.data, text, in, o.box_bound);
  rep.text += text;
  rep.text += all ? "all checks passed\n" : "MISMATCH DETECTED\n";
  rep.exit_code = all ? exit_codes::ok : exit_codes::oracle_mismatch;
  return rep;
}

}  // namespace detail

inline Report run_command(const std::string& cmd, const ProblemFile& p,
                          const Options& o = {}) {
  bool known = false;
  for (const std::string& c : known_commands()) known = known || c == cmd;
  if (!known) throw Error("unknown command '" + cmd + "'");
  if (cmd != "validate") require_valid_problem(p);

  Report rep;
  if (cmd == "validate") rep = detail::cmd_validate(p, o);
  else if (cmd == "netness") rep = detail::cmd_netness(p, o);
  else if (cmd == "coincidence") rep = detail::cmd_coincidence(p, o);
  else if (cmd == "projection") rep = detail::cmd_projection(p, o);
  else if (cmd == "nielsen") rep = detail::cmd_nielsen(p, o);
  else rep = detail::cmd_oracle(p, o);

  if (o.oracle && cmd != "oracle") {
    if (p.branches.empty()) {
      rep.data["oracle"] = "skipped: no branches";
      rep.text += "oracle cross-checks skipped: no branches\n";
    } else if (rep.exit_code != exit_codes::ok) {
      rep.data["oracle"] = "skipped: command reported a failure";
      rep.text += "oracle cross-checks skipped: command reported a failure\n";
    } else {
      Json sub;
      std::string text;
      const bool all =
          detail::render_oracle(sub, text, make_nvalued(p), o.box_bound);
      rep.data["oracle"] = sub;
      rep.text += "oracle cross-checks:\n" + text;
      if (!all) rep.exit_code = exit_codes::oracle_mismatch;
    }
  }
  return rep;
}

inline Report run_on_text(const std::string& cmd, const std::string& text,
                          const Options& o = {}) {
  return run_command(cmd, parse(text), o);
}

inline Report run_on_file(const std::string& cmd, const std::string& path,
                          const Options& o = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return run_command(cmd, parse(ss.str()), o);
}

// Maps the error taxonomy onto process exit codes.  The driver and the
// tests share this so the published codes cannot drift.
inline int run_guarded(const std::function<int()>& fn, std::ostream& err) {
  try {
    return fn();
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << "\n";
    return exit_codes::syntax;
  } catch (const SemanticError& e) {
    err << "semantic error: " << e.what() << "\n";
    return exit_codes::semantic;
  } catch (const ComputationError& e) {
    err << "computation error: " << e.what() << "\n";
    return exit_codes::computation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_codes::usage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_codes::internal;
  }
}

}  // namespace nielsen
