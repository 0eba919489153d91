#pragma once

// Command-line front end: argument parsing into a RunConfig and its execution.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ohno/error.hpp"
#include "ohno/index.hpp"
#include "ohno/integral.hpp"
#include "ohno/options.hpp"
#include "ohno/relations.hpp"
#include "ohno/report_io.hpp"

namespace ohno::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitVerification = 3;

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c = {"eval", "dual", "region", "verify", "suite", "lemma-check"};
  return c;
}

inline const std::vector<std::string>& relations() {
  static const std::vector<std::string> r = {"ohno", "ohno-integer", "sum-formula", "linear", "zero", "hypothesis"};
  return r;
}

struct RunConfig {
  std::string command;
  std::string index;
  std::string s = "0";
  std::string method = "auto";
  /// Engine target for eval; identity tolerance for verify and lemma-check.
  std::optional<double> tol;
  std::int64_t max_terms = SeriesOptions{}.max_terms;
  int nodes = QuadratureOptions{}.nodes;
  std::int64_t qmc_points = QuadratureOptions{}.qmc_points;
  std::uint64_t seed = QuadratureOptions{}.seed;
  double T = 0.0;
  std::string format = "json";
  std::string out;

  std::string suite;              // suite name
  std::string relation = "ohno";  // verify target
  std::optional<int> m;           // integer argument of ohno-integer
  std::optional<int> n;           // negative integer of zero
  std::optional<int> a;           // T-interpolated depth parameter
  std::optional<int> l;           // shifted position of linear / hypothesis
  std::string c;                  // exponential-integral check: distinct positive reals
  std::string t;                  // change-of-variables check: increasing points of (0,1)
  bool qmc = false;               // force randomized QMC for the integral
};

namespace detail {

inline bool one_of(const std::string& v, const std::vector<std::string>& set) {
  return std::find(set.begin(), set.end(), v) != set.end();
}

inline std::string joined(const std::vector<std::string>& set) {
  std::string out;
  for (const auto& v : set) out += (out.empty() ? "" : ", ") + v;
  return out;
}

inline std::vector<double> parse_reals(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size() || !std::isfinite(v))
      throw error(errc::invalid_input, std::string(what) + ": cannot parse '" + text +
                                           "' as comma-separated finite reals");
    out.push_back(v);
  }
  if (out.empty()) throw error(errc::invalid_input, std::string(what) + " must not be empty");
  return out;
}

inline void need(bool ok, const std::string& message) {
  if (!ok) throw error(errc::invalid_input, message);
}

}  // namespace detail

/// Checks every field before any computation; throws invalid_input naming the violated precondition.
inline void validate(const RunConfig& cfg) {
  using detail::need;
  need(detail::one_of(cfg.command, commands()),
       "command must be one of " + detail::joined(commands()) + "; got '" + cfg.command + "'");
  need(cfg.format == "json" || cfg.format == "csv" || cfg.format == "text",
       "--format must be json, csv or text; got '" + cfg.format + "'");
  need(!cfg.tol || (*cfg.tol > 0.0 && std::isfinite(*cfg.tol)), "--tol must be a positive finite real");
  need(cfg.max_terms >= 1000, "--max-terms must be at least 1000");
  need(cfg.nodes >= 1 && cfg.nodes <= 8, "--nodes must lie in 1..8");
  need(cfg.qmc_points >= 256 && cfg.qmc_points <= (std::int64_t{1} << 26), "--qmc-points must lie in 256..2^26");
  need(std::isfinite(cfg.T), "--T must be finite");
  (void)parse_method(cfg.method);
  (void)parse_complex(cfg.s);
  const bool needs_index = cfg.command == "dual" || cfg.command == "region" ||
                           (cfg.command == "eval" && !cfg.a) ||
                           (cfg.command == "verify" && cfg.relation != "sum-formula");
  if (needs_index) {
    need(!cfg.index.empty(), "--index is required for " + cfg.command);
    (void)parse_index(cfg.index);
  }
  if (cfg.command == "eval" && cfg.a) need(*cfg.a >= 1, "--a must be a positive integer");
  if (cfg.command == "suite") {
    need(detail::one_of(cfg.suite, suite_names()),
         "suite name must be one of " + detail::joined(suite_names()) + "; got '" + cfg.suite + "'");
    need(!cfg.tol, "suite tolerances are fixed by the suite grids; --tol is not accepted");
  }
  if (cfg.command == "verify") {
    need(detail::one_of(cfg.relation, relations()),
         "--relation must be one of " + detail::joined(relations()) + "; got '" + cfg.relation + "'");
    if (cfg.relation == "ohno-integer") need(cfg.m && *cfg.m >= 0, "--m >= 0 is required for ohno-integer");
    if (cfg.relation == "zero") need(cfg.n && *cfg.n < 0, "--n < 0 is required for zero");
    if (cfg.relation == "sum-formula") need(cfg.a && *cfg.a >= 1, "--a >= 1 is required for sum-formula");
    if (cfg.relation == "linear" || cfg.relation == "hypothesis")
      need(cfg.l.has_value(), "--l is required for " + cfg.relation);
  }
  if (cfg.command == "lemma-check") {
    need(cfg.c.empty() != cfg.t.empty(), "lemma-check needs exactly one of --c or --t");
    if (!cfg.c.empty()) {
      const auto c = detail::parse_reals(cfg.c, "--c");
      need(c.size() <= 3, "--c supports at most 3 values");
      for (double v : c) need(v > 0.0, "--c values must be positive");
    } else {
      const auto t = detail::parse_reals(cfg.t, "--t");
      need(t.size() == 2 || t.size() == 4, "--t must hold 2 or 4 points");
      for (std::size_t i = 0; i < t.size(); ++i)
        need(t[i] > 0.0 && t[i] < 1.0 && (i == 0 || t[i] > t[i - 1]),
             "--t must be strictly increasing points of (0,1)");
    }
  }
}

inline EngineOptions engine_options(const RunConfig& cfg) {
  EngineOptions eng;
  eng.series.max_terms = cfg.max_terms;
  eng.quadrature.nodes = cfg.nodes;
  eng.quadrature.qmc_points = cfg.qmc_points;
  eng.quadrature.seed = cfg.seed;
  eng.quadrature.force_qmc = cfg.qmc;
  if (cfg.command == "eval" && cfg.tol) eng.series.tol = eng.quadrature.tol = *cfg.tol;
  return eng;
}

/// Effective configuration, echoed into JSON output.
inline json config_json(const RunConfig& cfg) {
  json j{{"command", cfg.command}};
  if (!cfg.index.empty()) j["index"] = cfg.index;
  j["s"] = cfg.s;
  j["method"] = cfg.method;
  j["tol"] = cfg.tol ? json(*cfg.tol) : json(nullptr);
  j["max_terms"] = cfg.max_terms;
  j["nodes"] = cfg.nodes;
  j["qmc_points"] = cfg.qmc_points;
  j["seed"] = cfg.seed;
  j["T"] = cfg.T;
  j["format"] = cfg.format;
  j["qmc"] = cfg.qmc;
  if (cfg.command == "suite") j["suite"] = cfg.suite;
  if (cfg.command == "verify") j["relation"] = cfg.relation;
  for (auto [key, v] : {std::pair{"m", cfg.m}, {"n", cfg.n}, {"a", cfg.a}, {"l", cfg.l}})
    if (v) j[key] = *v;
  if (!cfg.c.empty()) j["c"] = cfg.c;
  if (!cfg.t.empty()) j["t"] = cfg.t;
  return j;
}

namespace detail {

inline std::string report_text(const RelationReport& r) {
  return std::string(r.pass ? "PASS " : "FAIL ") + to_string(r.relation_id) + " [" + ohno::detail::inputs_text(r.inputs) +
         "] lhs=" + format_complex(r.lhs) + " rhs=" + format_complex(r.rhs) + " |diff|=" + format_real(r.abs_diff) +
         " tol=" + format_real(r.tolerance) + " err=" + format_real(r.lhs_err) + "+" + format_real(r.rhs_err);
}

inline std::string reports_output(const RunConfig& cfg, const std::vector<RelationReport>& reports) {
  const SuiteSummary sum = summarize(reports);
  if (cfg.format == "csv") return to_csv(reports);
  if (cfg.format == "text") {
    std::string out;
    for (const auto& r : reports) out += report_text(r) + "\n";
    return out + "summary: total " + std::to_string(sum.total) + ", passed " + std::to_string(sum.passed) +
           ", failed " + std::to_string(sum.failed()) + "\n";
  }
  json j{{"config", config_json(cfg)}, {"reports", json::array()}};
  for (const auto& r : reports) j["reports"].push_back(to_json(r));
  j["summary"] = to_json(sum);
  return j.dump(2) + "\n";
}

inline RelationReport verify_one(const RunConfig& cfg, const EngineOptions& eng) {
  const cplx s = parse_complex(cfg.s);
  const std::string& rel = cfg.relation;
  if (rel == "sum-formula") return verify_sum_formula(*cfg.a, cfg.T, s, cfg.tol.value_or(kCrossTolerance), eng.quadrature);
  const Index k = parse_index(cfg.index);
  if (rel == "ohno-integer") return verify_ohno_integer(k, *cfg.m, cfg.tol.value_or(kMzvTolerance));
  if (rel == "ohno") return verify_ohno(k, s, parse_method(cfg.method), cfg.tol.value_or(kCrossTolerance), eng);
  if (rel == "linear") return verify_linear_relation(k, *cfg.l, s, cfg.tol.value_or(kCrossTolerance), eng.series);
  if (rel == "zero") return verify_zero(k, *cfg.n, cfg.tol.value_or(kCrossTolerance), eng.series);
  return hypothesis_report(k, *cfg.l);
}

/// Returns {output text, exit status}.
inline std::pair<std::string, int> execute(const RunConfig& cfg) {
  const EngineOptions eng = engine_options(cfg);
  if (cfg.command == "eval") {
    const cplx s = parse_complex(cfg.s);
    EvalResult r;
    std::string label;
    if (cfg.a) {
      r = t_integral_eval(*cfg.a, cfg.T, s, eng.quadrature);
      label = "I^T_" + std::to_string(*cfg.a) + "(" + format_complex(s) + "), T=" + format_real(cfg.T);
    } else {
      const Index k = parse_index(cfg.index);
      r = evaluate(k, s, parse_method(cfg.method), eng);
      label = "I_(" + k.str() + ")(" + format_complex(s) + ")";
    }
    if (cfg.format == "csv") return {to_csv(r), kExitOk};
    if (cfg.format == "text")
      return {label + " = " + format_complex(r.value) + " +/- " + format_real(r.err_est) + " [" + to_string(r.method) +
                  "]\n",
              kExitOk};
    return {json{{"config", config_json(cfg)}, {"result", to_json(r)}}.dump(2) + "\n", kExitOk};
  }
  if (cfg.command == "dual") {
    const Index k = parse_index(cfg.index);
    require_admissible(k);
    const Index d = dual(k);
    if (cfg.format == "text") return {d.str() + "\n", kExitOk};
    if (cfg.format == "csv") return {"index,dual\n\"" + k.str() + "\",\"" + d.str() + "\"\n", kExitOk};
    return {json{{"config", config_json(cfg)}, {"index", k.str()}, {"dual", d.str()}}.dump(2) + "\n", kExitOk};
  }
  if (cfg.command == "region") {
    const Index k = parse_index(cfg.index);
    const RegionInfo info = abscissa(k);
    if (cfg.format == "text") {
      std::string out = "abscissa " + format_real(info.abscissa) + "\nslack";
      for (double v : info.slack) out += " " + format_real(v);
      return {out + "\n", kExitOk};
    }
    if (cfg.format == "csv") {
      std::string out = "j,slack\n";
      for (std::size_t j = 0; j < info.slack.size(); ++j)
        out += std::to_string(j + 1) + "," + format_real(info.slack[j]) + "\n";
      return {out, kExitOk};
    }
    return {json{{"config", config_json(cfg)}, {"index", k.str()}, {"region", to_json(info)}}.dump(2) + "\n", kExitOk};
  }
  std::vector<RelationReport> reports;
  if (cfg.command == "verify") {
    reports.push_back(verify_one(cfg, eng));
  } else if (cfg.command == "suite") {
    reports = run_suite(cfg.suite, SuiteOptions{eng, cfg.seed});
  } else {  // lemma-check
    if (!cfg.c.empty()) {
      const auto c = parse_reals(cfg.c, "--c");
      reports.push_back(lemma_report(c, parse_complex(cfg.s), cfg.tol.value_or(1e-5), eng.quadrature));
    } else {
      reports = ulanskii_reports(parse_reals(cfg.t, "--t"));
    }
  }
  const bool all_pass = summarize(reports).failed() == 0;
  return {reports_output(cfg, reports), all_pass ? kExitOk : kExitVerification};
}

}  // namespace detail

/// Executes the command; output goes to cfg.out when set, else to `out`. Errors go to `err`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    auto [text, status] = detail::execute(cfg);
    if (cfg.out.empty()) {
      out << text;
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file) {
        err << "error: cannot open output file '" << cfg.out << "'\n";
        return kExitUsage;
      }
      file << text;
    }
    return status;
  } catch (const error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return e.is_usage() ? kExitUsage : kExitDomain;
  }
}

namespace detail {

template <class T>
void env_default(const char* name, T& target) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return;
  std::istringstream in(raw);
  T v{};
  if (!(in >> v) || !in.eof())
    throw error(errc::invalid_input, std::string("environment variable ") + name + " is not a valid number: '" + raw + "'");
  target = v;
}

}  // namespace detail

/// Parses argv into a RunConfig. Returns an exit status when the program should stop
/// (help printed or a usage error), nullopt to proceed.
inline std::optional<int> parse(int argc, const char* const* argv, RunConfig& cfg, std::ostream& out,
                                std::ostream& err) {
  try {
    detail::env_default("OHNO_MAX_TERMS", cfg.max_terms);
    detail::env_default("OHNO_NODES", cfg.nodes);
    detail::env_default("OHNO_QMC_POINTS", cfg.qmc_points);
  } catch (const error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App app{"Numerical evaluation and verification of Ohno functions I_k(s)"};
  app.footer(
      "Commands:\n"
      "  eval         evaluate I_k(s) (or I^T_a(s) with --a)\n"
      "  dual         print the dual index\n"
      "  region       abscissa of absolute convergence and per-position slack\n"
      "  verify       check one identity instance (--relation)\n"
      "  suite NAME   run a verification grid: " +
      detail::joined(suite_names()) +
      "\n"
      "  lemma-check  exponential-integral identity (--c) or change of variables (--t)\n\n"
      "Environment (defaults, overridden by flags): OHNO_MAX_TERMS, OHNO_NODES, OHNO_QMC_POINTS\n"
      "Exit status: 0 ok, 1 usage error, 2 domain error, 3 verification failure");
  app.add_option("command", cfg.command, "eval | dual | region | verify | suite | lemma-check")->required();
  app.add_option("name", cfg.suite, "suite name (suite command only)");
  app.add_option("--index,-k", cfg.index, "index k1,k2,... (k1 innermost)");
  app.add_option("--s", cfg.s, "complex argument a, bi or a+bi")->capture_default_str();
  app.add_option("--method", cfg.method, "auto | series | integral | mellin")->capture_default_str();
  app.add_option("--tol", cfg.tol, "engine target (eval) or identity tolerance (verify, lemma-check)");
  app.add_option("--max-terms", cfg.max_terms, "summand budget of the series engines")->capture_default_str();
  app.add_option("--nodes", cfg.nodes, "double-exponential level: finest step 2^-nodes")->capture_default_str();
  app.add_option("--qmc-points", cfg.qmc_points, "points per QMC replicate")->capture_default_str();
  app.add_option("--seed", cfg.seed, "base seed for QMC and random suites")->capture_default_str();
  app.add_option("--T", cfg.T, "parameter of the T-interpolated sum")->capture_default_str();
  app.add_option("--format", cfg.format, "json | csv | text")->capture_default_str();
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--relation", cfg.relation, "verify target: " + detail::joined(relations()))->capture_default_str();
  app.add_option("--m", cfg.m, "integer argument (ohno-integer)");
  app.add_option("--n", cfg.n, "negative integer (zero)");
  app.add_option("--a", cfg.a, "depth parameter of I^T_a (eval, sum-formula)");
  app.add_option("--l", cfg.l, "shifted position, 1-based (linear, hypothesis)");
  app.add_option("--c", cfg.c, "distinct positive reals c1,..,cr, r <= 3 (lemma-check)");
  app.add_option("--t", cfg.t, "increasing points of (0,1), 2 or 4 of them (lemma-check)");
  app.add_flag("--qmc", cfg.qmc, "force randomized QMC for the integral representation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  return std::nullopt;
}

}  // namespace ohno::cli
