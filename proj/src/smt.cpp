#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cctype>
#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "realsing/qelim.hpp"

namespace realsing {

namespace {

std::string symbol(const VariableId& v) {
  std::string s = v.to_string();
  bool simple = !s.empty() && (std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_');
  for (char ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') simple = false;
  return simple ? s : "|" + s + "|";
}

std::string number(const Rational& q) {
  mpz_class num = abs(q.get_num());
  std::string s = q.get_den() == 1 ? num.get_str() : "(/ " + num.get_str() + " " + q.get_den().get_str() + ")";
  return q < 0 ? "(- " + s + ")" : s;
}

// Product of the coefficient magnitude and the monomial factors.
std::string term(const Monomial& m, const Rational& magnitude) {
  std::vector<std::string> parts;
  if (magnitude != 1 || m.is_one()) parts.push_back(number(magnitude));
  for (const auto& [v, e] : m.factors())
    for (unsigned k = 0; k < e; ++k) parts.push_back(symbol(v));
  if (parts.size() == 1) return parts[0];
  std::string s = "(*";
  for (const auto& p : parts) s += " " + p;
  return s + ")";
}

std::string expression(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string acc;
  for (const auto& [m, c] : p.terms()) {
    Rational mag = abs(c);
    std::string t = term(m, mag);
    if (acc.empty())
      acc = c < 0 ? "(- " + t + ")" : t;
    else
      acc = "(" + std::string(c < 0 ? "-" : "+") + " " + acc + " " + t + ")";
  }
  return acc;
}

std::string atom_text(const Atom& a) {
  std::string p = expression(a.poly());
  switch (a.relation()) {
    case Relation::Eq:
      return "(= " + p + " 0)";
    case Relation::Ne:
      return "(not (= " + p + " 0))";
    case Relation::Lt:
      return "(< " + p + " 0)";
    case Relation::Le:
      return "(<= " + p + " 0)";
    case Relation::Gt:
      return "(> " + p + " 0)";
    case Relation::Ge:
      return "(>= " + p + " 0)";
  }
  return "true";
}

std::string clause_text(const Guard& g) {
  auto atoms = g.atoms();
  if (atoms.empty()) return "true";
  if (atoms.size() == 1) return atom_text(atoms[0]);
  std::string s = "(and";
  for (const auto& a : atoms) s += " " + atom_text(a);
  return s + ")";
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

std::string export_smtlib(const ExistentialQuery& q) {
  if (!q.free.empty()) throw UnsupportedExport("query has free variables; only closed queries can be exported");
  std::set<VariableId> vars(q.quantified.begin(), q.quantified.end());
  for (const auto& c : q.body.clauses())
    for (const auto& v : c.variables()) vars.insert(v);

  std::string out = "(set-logic QF_NRA)\n";
  for (const auto& v : vars) out += "(declare-const " + symbol(v) + " Real)\n";
  const auto& clauses = q.body.clauses();
  if (clauses.empty()) {
    out += "(assert false)\n";
  } else if (clauses.size() == 1) {
    for (const auto& a : clauses[0].atoms()) out += "(assert " + atom_text(a) + ")\n";
  } else {
    out += "(assert (or";
    for (const auto& c : clauses) out += " " + clause_text(c);
    out += "))\n";
  }
  out += "(check-sat)\n";
  return out;
}

QueryResult run_external(const ExistentialQuery& q, const SolverConfig& config) {
  QueryResult result;
  result.backend = "external";
  std::vector<std::string> argv = split_words(config.command);
  if (argv.empty()) {
    result.reason = "empty solver command";
    return result;
  }

  char path[] = "/tmp/realsing-XXXXXX.smt2";
  int fd = mkstemps(path, 5);
  if (fd < 0) {
    result.reason = "cannot create a temporary file";
    return result;
  }
  std::string script = export_smtlib(q);
  bool written = ::write(fd, script.data(), script.size()) == static_cast<ssize_t>(script.size());
  ::close(fd);
  if (!written) {
    ::unlink(path);
    result.reason = "cannot write the temporary file";
    return result;
  }
  argv.push_back(path);

  int pipefd[2];
  if (::pipe(pipefd) != 0) {
    ::unlink(path);
    result.reason = "pipe failed";
    return result;
  }
  pid_t pid = ::fork();
  if (pid == 0) {
    ::dup2(pipefd[1], STDOUT_FILENO);
    int devnull = ::open("/dev/null", O_WRONLY);
    if (devnull >= 0) ::dup2(devnull, STDERR_FILENO);
    ::close(pipefd[0]);
    ::close(pipefd[1]);
    std::vector<char*> args;
    for (auto& a : argv) args.push_back(a.data());
    args.push_back(nullptr);
    ::execvp(args[0], args.data());
    ::_exit(127);
  }
  ::close(pipefd[1]);
  if (pid < 0) {
    ::close(pipefd[0]);
    ::unlink(path);
    result.reason = "fork failed";
    return result;
  }

  std::string output;
  bool timed_out = false;
  auto deadline = std::chrono::steady_clock::now() + config.timeout;
  char buf[4096];
  for (;;) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      timed_out = true;
      break;
    }
    pollfd pfd{pipefd[0], POLLIN, 0};
    int r = ::poll(&pfd, 1, static_cast<int>(left.count()));
    if (r < 0 && errno == EINTR) continue;
    if (r <= 0) {
      timed_out = r == 0;
      break;
    }
    ssize_t n = ::read(pipefd[0], buf, sizeof buf);
    if (n <= 0) break;
    output.append(buf, static_cast<std::size_t>(n));
  }
  ::close(pipefd[0]);
  if (timed_out) ::kill(pid, SIGKILL);
  int status = 0;
  ::waitpid(pid, &status, 0);
  ::unlink(path);

  if (timed_out) {
    result.reason = "solver timed out";
    return result;
  }
  if (WIFEXITED(status) && WEXITSTATUS(status) == 127) {
    result.reason = "cannot run solver '" + argv[0] + "'";
    return result;
  }
  auto words = split_words(output);
  std::string first = words.empty() ? "" : words[0];
  if (first == "sat") {
    result.verdict = Verdict::Sat;
    result.condition = DnfFormula::truth();
  } else if (first == "unsat") {
    result.verdict = Verdict::Unsat;
  } else {
    result.reason = first.empty() ? "solver produced no answer" : "solver answered '" + first + "'";
  }
  return result;
}

}  // namespace realsing
