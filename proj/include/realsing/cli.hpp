#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "realsing/jet.hpp"
#include "realsing/singular.hpp"

namespace realsing {

/// Input error with a 1-based position; line 0 means no position.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_, column_;
  std::string message_;
};

/// Names that resolve identifiers in expressions.
struct Declarations {
  std::vector<std::string> functions;
  std::vector<std::string> parameters;
};

Poly parse_poly(const std::string& text, const Declarations& decls);
/// Relations joined by `and` / `or`; parentheses group sub-formulas.
DnfFormula parse_formula(const std::string& text, const Declarations& decls);

struct SystemFile {
  DifferentialSystem system;
  std::optional<unsigned> prolong;
  std::optional<bool> reduce;

  friend bool operator==(const SystemFile&, const SystemFile&) = default;
};

SystemFile parse_system(const std::string& text);
/// Text that parse_system maps back to an equal SystemFile.
std::string print_system(const SystemFile& file);

struct CaseDocument {
  std::string cls;
  std::size_t vessiot_dim = 0;
  std::vector<std::vector<std::string>> clauses;
  std::vector<std::string> solution;
  std::optional<std::vector<std::vector<std::string>>> parameter_condition;
  bool verified = true;
  std::string reason;

  friend bool operator==(const CaseDocument&, const CaseDocument&) = default;
};

struct ReportDocument {
  std::string tool = "realsing";
  std::string version;
  std::vector<std::string> functions;
  std::vector<std::string> parameters;
  unsigned order = 0;
  std::vector<std::string> equations;
  std::vector<std::string> inequalities;
  std::string backend = "internal";
  bool reduce = true;
  std::string rows = "top";
  std::vector<CaseDocument> cases;
  std::vector<std::string> warnings;
  /// Only present when requested; excluded from determinism guarantees.
  std::optional<double> elapsed_ms;

  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

std::string tool_version();

ReportDocument make_report(const DifferentialSystem& analyzed, const SingularAnalysis& analysis);

enum class ReportFormat { Json, Text };

std::string serialize_report(const ReportDocument& doc, ReportFormat format);
/// Inverse of the json serialization; throws ParseError on malformed input.
ReportDocument parse_report(const std::string& json);

/// Command line driver; args exclude the program name. Returns the exit code:
/// 0 on success, 1 on input errors, 2 on internal defects.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace realsing
