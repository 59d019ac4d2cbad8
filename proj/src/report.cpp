// Report documents and their json / text serializations.

#include <json.hpp>
#include <sstream>

#include "realsing/cli.hpp"

namespace realsing {

namespace {

using Json = nlohmann::ordered_json;

std::vector<std::vector<std::string>> clause_strings(const DnfFormula& f) {
  std::vector<std::vector<std::string>> out;
  for (const auto& clause : f.clauses()) {
    std::vector<std::string> atoms;
    for (const auto& a : clause.atoms()) atoms.push_back(a.to_string());
    out.push_back(std::move(atoms));
  }
  return out;
}

std::string text_label(const std::string& cls) {
  std::string s = cls;
  for (auto& c : s)
    if (c == '-') c = ' ';
  return s;
}

std::string dnf_text(const std::vector<std::vector<std::string>>& clauses, const std::string& indent) {
  if (clauses.empty()) return indent + "false\n";
  std::string out;
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    std::string line;
    for (const auto& a : clauses[i]) line += (line.empty() ? "" : " and ") + a;
    if (line.empty()) line = "true";
    out += indent + (i ? "or " : "   ") + line + "\n";
  }
  return out;
}

Json clauses_json(const std::vector<std::vector<std::string>>& clauses) {
  Json arr = Json::array();
  for (const auto& c : clauses) arr.push_back(c);
  return arr;
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(0, 0, std::string("report: missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(0, 0, std::string("report: field '") + key + "' has the wrong type");
  }
}

}  // namespace

std::string tool_version() { return "0.1.0"; }

ReportDocument make_report(const DifferentialSystem& analyzed, const SingularAnalysis& analysis) {
  ReportDocument doc;
  doc.version = tool_version();
  doc.functions = analyzed.functions;
  doc.parameters = analyzed.parameters;
  doc.order = analyzed.order;
  for (const auto& e : analyzed.equations) doc.equations.push_back(e.to_string());
  for (const auto& a : analyzed.inequalities) doc.inequalities.push_back(a.to_string());
  for (const auto& c : analysis.cases) {
    CaseDocument cd;
    cd.cls = to_string(c.cls);
    cd.vessiot_dim = c.vessiot_dim;
    cd.clauses = clause_strings(c.guard);
    cd.solution = c.solution.equations(c.unknowns);
    if (c.parameter_condition) cd.parameter_condition = clause_strings(*c.parameter_condition);
    cd.verified = c.verification.verified;
    cd.reason = c.verification.reason;
    doc.cases.push_back(std::move(cd));
  }
  doc.warnings = analysis.warnings;
  return doc;
}

std::string serialize_report(const ReportDocument& doc, ReportFormat format) {
  if (format == ReportFormat::Json) {
    Json j;
    j["tool"] = doc.tool;
    j["version"] = doc.version;
    j["system"] = {{"functions", doc.functions},
                   {"parameters", doc.parameters},
                   {"order", doc.order},
                   {"equations", doc.equations},
                   {"inequalities", doc.inequalities}};
    j["config"] = {{"backend", doc.backend}, {"reduce", doc.reduce}, {"rows", doc.rows}};
    Json cases = Json::array();
    for (const auto& c : doc.cases) {
      Json cj;
      cj["class"] = c.cls;
      cj["vessiot_dim"] = c.vessiot_dim;
      cj["guard"] = clauses_json(c.clauses);
      cj["solution"] = c.solution;
      cj["parameter_condition"] = c.parameter_condition ? clauses_json(*c.parameter_condition) : Json(nullptr);
      cj["verification"] = {{"verified", c.verified}, {"reason", c.reason}};
      cases.push_back(std::move(cj));
    }
    j["cases"] = std::move(cases);
    j["warnings"] = doc.warnings;
    if (doc.elapsed_ms) j["timings"] = {{"elapsed_ms", *doc.elapsed_ms}};
    return j.dump(2) + "\n";
  }

  std::ostringstream out;
  out << doc.tool << " " << doc.version << "\n";
  out << "functions: ";
  for (std::size_t i = 0; i < doc.functions.size(); ++i) out << (i ? ", " : "") << doc.functions[i];
  out << "\n";
  if (!doc.parameters.empty()) {
    out << "parameters: ";
    for (std::size_t i = 0; i < doc.parameters.size(); ++i) out << (i ? ", " : "") << doc.parameters[i];
    out << "\n";
  }
  out << "order: " << doc.order << "\n";
  for (const auto& e : doc.equations) out << "  " << e << " = 0\n";
  for (const auto& a : doc.inequalities) out << "  " << a << "\n";
  out << "backend: " << doc.backend << ", reduce: " << (doc.reduce ? "on" : "off") << ", rows: " << doc.rows << "\n";
  out << doc.cases.size() << (doc.cases.size() == 1 ? " case\n" : " cases\n");
  for (std::size_t i = 0; i < doc.cases.size(); ++i) {
    const auto& c = doc.cases[i];
    out << "\n[" << i + 1 << "] " << text_label(c.cls) << " (Vessiot dimension " << c.vessiot_dim << ")\n";
    out << "  guard:\n" << dnf_text(c.clauses, "    ");
    out << "  solution:\n";
    for (const auto& s : c.solution) out << "    " << s << "\n";
    if (c.parameter_condition) out << "  parameter condition:\n" << dnf_text(*c.parameter_condition, "    ");
    if (!c.verified) out << "  unverified: " << c.reason << "\n";
  }
  if (!doc.warnings.empty()) {
    out << "\nwarnings:\n";
    for (const auto& w : doc.warnings) out << "  " << w << "\n";
  }
  if (doc.elapsed_ms) out << "\nelapsed: " << *doc.elapsed_ms << " ms\n";
  return out.str();
}

ReportDocument parse_report(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, 0, std::string("report: ") + e.what());
  }
  ReportDocument doc;
  doc.tool = field<std::string>(j, "tool");
  doc.version = field<std::string>(j, "version");
  auto sys = field<Json>(j, "system");
  doc.functions = field<std::vector<std::string>>(sys, "functions");
  doc.parameters = field<std::vector<std::string>>(sys, "parameters");
  doc.order = field<unsigned>(sys, "order");
  doc.equations = field<std::vector<std::string>>(sys, "equations");
  doc.inequalities = field<std::vector<std::string>>(sys, "inequalities");
  auto config = field<Json>(j, "config");
  doc.backend = field<std::string>(config, "backend");
  doc.reduce = field<bool>(config, "reduce");
  doc.rows = field<std::string>(config, "rows");
  for (const auto& cj : field<Json>(j, "cases")) {
    CaseDocument c;
    c.cls = field<std::string>(cj, "class");
    if (!singularity_class_from(c.cls)) throw ParseError(0, 0, "report: unknown class '" + c.cls + "'");
    c.vessiot_dim = field<std::size_t>(cj, "vessiot_dim");
    c.clauses = field<std::vector<std::vector<std::string>>>(cj, "guard");
    c.solution = field<std::vector<std::string>>(cj, "solution");
    auto pc = field<Json>(cj, "parameter_condition");
    if (!pc.is_null()) c.parameter_condition = field<std::vector<std::vector<std::string>>>(cj, "parameter_condition");
    auto ver = field<Json>(cj, "verification");
    c.verified = field<bool>(ver, "verified");
    c.reason = field<std::string>(ver, "reason");
    doc.cases.push_back(std::move(c));
  }
  doc.warnings = field<std::vector<std::string>>(j, "warnings");
  if (j.contains("timings")) doc.elapsed_ms = field<double>(field<Json>(j, "timings"), "elapsed_ms");
  return doc;
}

}  // namespace realsing
