// Expression, formula and system-file parsing.

#include <algorithm>
#include <cctype>
#include <sstream>

#include "realsing/cli.hpp"

namespace realsing {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(line == 0 ? message
                                   : std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

enum class Tok { Number, Ident, Primes, Op, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;  // 1-based within the parsed text
};

std::vector<Token> lex(const std::string& s, std::size_t line, std::size_t col0) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto fail = [&](std::size_t at, const std::string& msg) { throw ParseError(line, col0 + at, msg); };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::Number, s.substr(start, i - start), start + 1});
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, s.substr(start, i - start), start + 1});
    } else if (c == '\'') {
      while (i < s.size() && s[i] == '\'') ++i;
      out.push_back({Tok::Primes, s.substr(start, i - start), start + 1});
    } else if (c == '!' || c == '<' || c == '>') {
      ++i;
      if (i < s.size() && s[i] == '=') ++i;
      std::string op = s.substr(start, i - start);
      if (op == "!") fail(start, "expected '!='");
      out.push_back({Tok::Op, op, start + 1});
    } else if (std::string("+-*/^(),=").find(c) != std::string::npos) {
      ++i;
      out.push_back({Tok::Op, std::string(1, c), start + 1});
    } else {
      fail(start, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", s.size() + 1});
  return out;
}

std::optional<Relation> relation_token(const std::string& op) {
  if (op == "=") return Relation::Eq;
  if (op == "!=") return Relation::Ne;
  if (op == "<") return Relation::Lt;
  if (op == "<=") return Relation::Le;
  if (op == ">") return Relation::Gt;
  if (op == ">=") return Relation::Ge;
  return std::nullopt;
}

class Parser {
 public:
  Parser(const std::string& text, const Declarations& decls, std::size_t line, std::size_t col0)
      : toks_(lex(text, line, col0)), decls_(decls), line_(line), col0_(col0) {}

  Poly expression() {
    Poly acc = term();
    while (peek_op("+") || peek_op("-")) {
      bool minus = next().text == "-";
      Poly t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  Atom relation() {
    Poly lhs = expression();
    const Token& t = peek();
    auto rel = t.kind == Tok::Op ? relation_token(t.text) : std::nullopt;
    if (!rel) fail(t, "expected a relation (= != < <= > >=)");
    next();
    Poly rhs = expression();
    return Atom(lhs - rhs, *rel);
  }

  Formula disjunction() {
    std::vector<Formula> parts{conjunction()};
    while (peek_word("or")) {
      next();
      parts.push_back(conjunction());
    }
    return parts.size() == 1 ? parts[0] : Formula::any(std::move(parts));
  }

  bool accept(const char* op) {
    if (!peek_op(op)) return false;
    next();
    return true;
  }

  void expect_end() {
    if (peek().kind == Tok::End) return;
    if (peek().kind == Tok::Op && relation_token(peek().text)) fail(peek(), "unexpected relation '" + peek().text + "'");
    fail(peek(), "unexpected '" + peek().text + "'");
  }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(line_, col0_ + t.column - 1, msg);
  }

 private:
  Formula conjunction() {
    std::vector<Formula> parts{formula_item()};
    while (peek_word("and")) {
      next();
      parts.push_back(formula_item());
    }
    return parts.size() == 1 ? parts[0] : Formula::all(std::move(parts));
  }

  Formula formula_item() {
    if (peek_word("true") || peek_word("false")) return next().text == "true" ? Formula::truth() : Formula::falsity();
    if (peek_op("(")) {
      // A parenthesized sub-formula, or a relation whose left side starts with '('.
      std::size_t saved = pos_;
      try {
        next();
        Formula f = disjunction();
        if (!peek_op(")")) fail(peek(), "expected ')'");
        next();
        if (peek().kind == Tok::Op && relation_token(peek().text)) throw ParseError(0, 0, "relation follows");
        return f;
      } catch (const ParseError&) {
        pos_ = saved;
      }
    }
    return Formula::of(relation());
  }

  Poly term() {
    Poly acc = unary();
    while (peek_op("*") || peek_op("/")) {
      Token op = next();
      Token at = peek();
      Poly rhs = unary();
      if (op.text == "*") {
        acc = acc * rhs;
      } else {
        if (!rhs.is_constant() || rhs.is_zero()) fail(at, "division only by a nonzero constant");
        acc *= Rational(1) / rhs.constant_value();
      }
    }
    return acc;
  }

  Poly unary() {
    if (peek_op("-")) {
      next();
      return -unary();
    }
    if (peek_op("+")) {
      next();
      return unary();
    }
    return power();
  }

  Poly power() {
    Poly base = primary();
    if (!peek_op("^")) return base;
    next();
    const Token& e = peek();
    if (e.kind != Tok::Number) fail(e, "exponent must be a nonnegative integer");
    next();
    if (e.text.size() > 4) fail(e, "exponent too large");
    return base.pow(static_cast<unsigned>(std::stoul(e.text)));
  }

  Poly primary() {
    Token t = next();
    if (t.kind == Tok::Number) return Poly(Rational(mpz_class(t.text)));
    if (t.kind == Tok::Op && t.text == "(") {
      Poly p = expression();
      if (!peek_op(")")) fail(peek(), "expected ')'");
      next();
      return p;
    }
    if (t.kind != Tok::Ident) fail(t, t.kind == Tok::End ? "unexpected end of expression" : "unexpected '" + t.text + "'");
    if (t.text == "D" && peek_op("(")) return derivative_token();
    unsigned primes = 0;
    if (peek().kind == Tok::Primes) primes = static_cast<unsigned>(next().text.size());
    return Poly::variable(resolve(t, primes));
  }

  Poly derivative_token() {
    next();  // (
    const Token name = next();
    if (name.kind != Tok::Ident) fail(name, "expected a function name in D(...)");
    if (!peek_op(",")) fail(peek(), "expected ','");
    next();
    const Token k = next();
    if (k.kind != Tok::Number || k.text.size() > 4) fail(k, "expected a derivative order");
    if (!peek_op(")")) fail(peek(), "expected ')'");
    next();
    auto it = std::find(decls_.functions.begin(), decls_.functions.end(), name.text);
    if (it == decls_.functions.end()) fail(name, "'" + name.text + "' is not a declared function");
    return Poly::variable(VariableId::dependent(name.text, static_cast<unsigned>(it - decls_.functions.begin()),
                                                static_cast<unsigned>(std::stoul(k.text))));
  }

  VariableId resolve(const Token& t, unsigned primes) {
    if (t.text == "t") {
      if (primes) fail(t, "the independent variable t cannot be differentiated");
      return VariableId::time();
    }
    auto f = std::find(decls_.functions.begin(), decls_.functions.end(), t.text);
    if (f != decls_.functions.end())
      return VariableId::dependent(t.text, static_cast<unsigned>(f - decls_.functions.begin()), primes);
    auto p = std::find(decls_.parameters.begin(), decls_.parameters.end(), t.text);
    if (p != decls_.parameters.end()) {
      if (primes) fail(t, "parameter '" + t.text + "' cannot be differentiated");
      return VariableId::parameter(t.text, static_cast<unsigned>(p - decls_.parameters.begin()));
    }
    fail(t, "undeclared identifier '" + t.text + "'");
  }

  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool peek_op(const char* op) const { return peek().kind == Tok::Op && peek().text == op; }
  bool peek_word(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Declarations& decls_;
  std::size_t line_, col0_;
};

// DNF without simplification, so parsed guards keep their atoms.
DnfFormula plain_dnf(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::True:
      return DnfFormula::truth();
    case Formula::Kind::False:
      return DnfFormula::falsity();
    case Formula::Kind::Atom:
      return DnfFormula({Guard({*f.atom})});
    case Formula::Kind::And: {
      DnfFormula acc = DnfFormula::truth();
      for (const auto& c : f.children) acc = dnf_and(acc, plain_dnf(c));
      return acc;
    }
    case Formula::Kind::Or: {
      DnfFormula acc;
      for (const auto& c : f.children) acc = dnf_or(acc, plain_dnf(c));
      return acc;
    }
  }
  return {};
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::pair<std::string, std::size_t>> names_in(const std::string& s) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == ',' || std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < s.size() && s[i] != ',' && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    out.emplace_back(s.substr(start, i - start), start);
  }
  return out;
}

bool valid_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

unsigned parse_count(const std::string& s, std::size_t line, std::size_t col, const std::string& what) {
  std::string v = trim(s);
  if (v.empty() || v.size() > 4 || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError(line, col, what + " must be a nonnegative integer");
  return static_cast<unsigned>(std::stoul(v));
}

}  // namespace

Poly parse_poly(const std::string& text, const Declarations& decls) {
  Parser p(text, decls, 0, 1);
  Poly r = p.expression();
  p.expect_end();
  return r;
}

DnfFormula parse_formula(const std::string& text, const Declarations& decls) {
  Parser p(text, decls, 0, 1);
  Formula f = p.disjunction();
  p.expect_end();
  return plain_dnf(f);
}

SystemFile parse_system(const std::string& text) {
  SystemFile file;
  DifferentialSystem& sys = file.system;
  Declarations decls;
  std::optional<unsigned> order;
  std::size_t order_line = 0;

  struct Pending {
    std::string body;
    std::size_t line, col;
    bool inequality;
  };
  std::vector<Pending> pending;

  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string content = raw.substr(0, raw.find('#'));
    if (trim(content).empty()) continue;
    auto colon = content.find(':');
    std::size_t key_col = content.find_first_not_of(" \t") + 1;
    if (colon == std::string::npos) throw ParseError(line, key_col, "expected 'directive: value'");
    std::string key = trim(content.substr(0, colon));
    std::string value = content.substr(colon + 1);
    std::size_t value_col = colon + 2;

    if (key == "funcs" || key == "params") {
      auto& target = key == "funcs" ? decls.functions : decls.parameters;
      for (const auto& [name, off] : names_in(value)) {
        if (!valid_name(name) || name == "t" || name == "D" || name == "and" || name == "or")
          throw ParseError(line, value_col + off, "invalid name '" + name + "'");
        if (std::find(decls.functions.begin(), decls.functions.end(), name) != decls.functions.end() ||
            std::find(decls.parameters.begin(), decls.parameters.end(), name) != decls.parameters.end())
          throw ParseError(line, value_col + off, "'" + name + "' declared twice");
        target.push_back(name);
      }
    } else if (key == "order") {
      order = parse_count(value, line, value_col, "order");
      order_line = line;
    } else if (key == "prolong") {
      file.prolong = parse_count(value, line, value_col, "prolongation order");
    } else if (key == "reduce") {
      std::string v = trim(value);
      if (v != "on" && v != "off") throw ParseError(line, value_col, "reduce must be 'on' or 'off'");
      file.reduce = v == "on";
    } else if (key == "eq" || key == "ineq") {
      pending.push_back({value, line, value_col, key == "ineq"});
    } else {
      throw ParseError(line, key_col, "unknown directive '" + key + "'");
    }
  }
  if (decls.functions.empty()) throw ParseError(0, 0, "no unknown functions declared (funcs:)");

  unsigned max_order = 0;
  for (const auto& p : pending) {
    Parser parser(p.body, decls, p.line, p.col);
    if (p.inequality) {
      Atom a = parser.relation();
      parser.expect_end();
      if (a.relation() == Relation::Eq) throw ParseError(p.line, p.col, "equations belong in 'eq:'");
      sys.inequalities.push_back(a);
      max_order = std::max(max_order, jet_order(a.poly()));
    } else {
      Poly lhs = parser.expression();
      if (parser.accept("=")) lhs -= parser.expression();
      parser.expect_end();
      bool has_dependent = false;
      for (const auto& x : lhs.variables()) has_dependent = has_dependent || x.is_dependent();
      if (!has_dependent)
        throw ParseError(p.line, p.col, "equation involves no unknown function; it does not define a differential equation");
      sys.equations.push_back(lhs);
      max_order = std::max(max_order, jet_order(lhs));
    }
  }
  if (sys.equations.empty()) throw ParseError(0, 0, "no equations given (eq:)");
  if (order && *order < max_order)
    throw ParseError(order_line, 1, "declared order " + std::to_string(*order) + " is below the equation order " +
                                        std::to_string(max_order));
  sys.functions = decls.functions;
  sys.parameters = decls.parameters;
  sys.order = order ? *order : std::max(1u, max_order);
  if (file.prolong && *file.prolong < sys.order)
    throw ParseError(0, 0, "prolongation order " + std::to_string(*file.prolong) + " is below the system order");
  return file;
}

std::string print_system(const SystemFile& file) {
  const auto& sys = file.system;
  auto join = [](const std::vector<std::string>& xs) {
    std::string s;
    for (const auto& x : xs) s += (s.empty() ? "" : ", ") + x;
    return s;
  };
  std::string out = "funcs: " + join(sys.functions) + "\n";
  if (!sys.parameters.empty()) out += "params: " + join(sys.parameters) + "\n";
  out += "order: " + std::to_string(sys.order) + "\n";
  for (const auto& e : sys.equations) out += "eq: " + e.to_string() + "\n";
  for (const auto& a : sys.inequalities) out += "ineq: " + a.to_string() + "\n";
  if (file.prolong) out += "prolong: " + std::to_string(*file.prolong) + "\n";
  if (file.reduce) out += std::string("reduce: ") + (*file.reduce ? "on" : "off") + "\n";
  return out;
}

}  // namespace realsing
