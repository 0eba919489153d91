#pragma once

// JSON and CSV serialization of results and relation reports.

#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ohno/eval_result.hpp"
#include "ohno/index.hpp"
#include "ohno/relations.hpp"

namespace ohno {

using json = nlohmann::ordered_json;

inline json to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline json to_json(const EvalResult& r) {
  json out{{"value", to_json(r.value)},
           {"err_est", r.err_est},
           {"method", to_string(r.method)},
           {"terms_used", r.terms_used},
           {"nodes_used", r.nodes_used}};
  out["seed"] = r.seed ? json(*r.seed) : json(nullptr);
  return out;
}

inline json to_json(const ReportInputs& inputs) {
  json out = json::object();
  for (const auto& [key, value] : inputs) out[key] = value;
  return out;
}

inline json to_json(const RelationReport& r) {
  return json{{"relation_id", to_string(r.relation_id)},
              {"inputs", to_json(r.inputs)},
              {"lhs", to_json(r.lhs)},
              {"rhs", to_json(r.rhs)},
              {"lhs_err", r.lhs_err},
              {"rhs_err", r.rhs_err},
              {"abs_diff", r.abs_diff},
              {"tolerance", r.tolerance},
              {"pass", r.pass}};
}

inline json to_json(const RegionInfo& info) { return json{{"abscissa", info.abscissa}, {"slack", info.slack}}; }

struct SuiteSummary {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t failed() const { return total - passed; }
};

inline SuiteSummary summarize(std::span<const RelationReport> reports) {
  SuiteSummary s{reports.size(), 0};
  for (const auto& r : reports) s.passed += r.pass ? 1 : 0;
  return s;
}

inline json to_json(const SuiteSummary& s) {
  return json{{"total", s.total}, {"passed", s.passed}, {"failed", s.failed()}};
}

namespace detail {

/// RFC 4180 quoting when the field holds a delimiter, quote or newline.
inline std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string inputs_text(const ReportInputs& inputs) {
  std::string out;
  for (const auto& [key, value] : inputs) out += (out.empty() ? "" : ";") + key + "=" + value;
  return out;
}

}  // namespace detail

inline constexpr const char* kReportCsvHeader =
    "relation_id,inputs,lhs_re,lhs_im,rhs_re,rhs_im,lhs_err,rhs_err,abs_diff,tolerance,pass";

inline std::string to_csv_row(const RelationReport& r) {
  std::string row = to_string(r.relation_id);
  row += "," + detail::csv_field(detail::inputs_text(r.inputs));
  for (double v : {r.lhs.real(), r.lhs.imag(), r.rhs.real(), r.rhs.imag(), r.lhs_err, r.rhs_err, r.abs_diff,
                   r.tolerance})
    row += "," + format_real(v);
  row += r.pass ? ",true" : ",false";
  return row;
}

inline std::string to_csv(std::span<const RelationReport> reports) {
  std::string out = std::string(kReportCsvHeader) + "\n";
  for (const auto& r : reports) out += to_csv_row(r) + "\n";
  return out;
}

inline constexpr const char* kEvalCsvHeader = "value_re,value_im,err_est,method,terms_used,nodes_used,seed";

inline std::string to_csv(const EvalResult& r) {
  std::string out = std::string(kEvalCsvHeader) + "\n";
  out += format_real(r.value.real()) + "," + format_real(r.value.imag()) + "," + format_real(r.err_est) + "," +
         to_string(r.method) + "," + std::to_string(r.terms_used) + "," + std::to_string(r.nodes_used) + "," +
         (r.seed ? std::to_string(*r.seed) : std::string()) + "\n";
  return out;
}

}  // namespace ohno
