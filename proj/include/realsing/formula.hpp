#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "realsing/poly.hpp"

namespace realsing {

enum class Relation : std::uint8_t { Eq, Ne, Lt, Le, Gt, Ge };

/// Set of admissible signs of a polynomial: bit 0 negative, bit 1 zero, bit 2 positive.
using SignMask = std::uint8_t;
inline constexpr SignMask kNeg = 1;
inline constexpr SignMask kZero = 2;
inline constexpr SignMask kPos = 4;
inline constexpr SignMask kAnySign = 7;

SignMask mask_of(Relation r);
/// Relation with exactly this mask; mask must be in 1..6.
Relation relation_of(SignMask m);
Relation negate(Relation r);
/// The relation r' with (-p r 0) <=> (p r' 0).
Relation mirror(Relation r);
std::string to_string(Relation r);
bool holds(Relation r, int sign);

/// p rel 0 with p canonical primitive; the content is folded into rel.
class Atom {
 public:
  Atom(const Poly& p, Relation rel);

  const Poly& poly() const { return poly_; }
  Relation relation() const { return rel_; }
  Atom negated() const { return {poly_, realsing::negate(rel_), Raw{}}; }

  bool holds(const Point& point) const;
  std::string to_string() const;

  friend bool operator==(const Atom&, const Atom&) = default;

 private:
  struct Raw {};
  Atom(Poly p, Relation rel, Raw) : poly_(std::move(p)), rel_(rel) {}

  Poly poly_;
  Relation rel_;
};

/// Conjunction of atoms, stored as one sign mask per canonical polynomial.
class Guard {
 public:
  Guard() = default;
  explicit Guard(const std::vector<Atom>& atoms);

  /// Conjoins `mask` on a polynomial that is canonicalized first.
  void add(const Poly& p, SignMask mask);
  void add(const Atom& a) { add(a.poly(), mask_of(a.relation())); }
  void conjoin(const Guard& other);

  bool is_false() const { return false_; }
  bool is_true() const { return !false_ && masks_.empty(); }
  const std::map<Poly, SignMask>& masks() const { return masks_; }
  /// Mask for p (canonical), kAnySign if unconstrained.
  SignMask mask(const Poly& canonical) const;
  std::vector<Atom> atoms() const;
  std::vector<VariableId> variables() const;

  bool holds(const Point& point) const;
  /// Atoms joined by " and "; "true"/"false" for the trivial guards.
  std::string to_string() const;

  friend bool operator==(const Guard&, const Guard&) = default;
  friend auto operator<=>(const Guard& a, const Guard& b) {
    if (auto c = a.false_ <=> b.false_; c != 0) return c;
    return a.masks_ <=> b.masks_;
  }

 private:
  void set_false() {
    false_ = true;
    masks_.clear();
  }

  std::map<Poly, SignMask> masks_;
  bool false_ = false;
};

/// Disjunction of guards. No clause is false; no clauses means false.
class DnfFormula {
 public:
  DnfFormula() = default;
  explicit DnfFormula(std::vector<Guard> clauses);

  static DnfFormula truth() { return DnfFormula(std::vector<Guard>{Guard{}}); }
  static DnfFormula falsity() { return {}; }

  const std::vector<Guard>& clauses() const { return clauses_; }
  bool is_false() const { return clauses_.empty(); }
  bool is_true() const;

  bool holds(const Point& point) const;
  std::string to_string() const;

  friend bool operator==(const DnfFormula&, const DnfFormula&) = default;

 private:
  std::vector<Guard> clauses_;
};

DnfFormula dnf_or(const DnfFormula& a, const DnfFormula& b);
/// Clause-wise conjunction without simplification.
DnfFormula dnf_and(const DnfFormula& a, const DnfFormula& b);

/// Boolean combination of atoms.
struct Formula {
  enum class Kind { True, False, Atom, And, Or };

  Kind kind = Kind::True;
  std::shared_ptr<const Atom> atom;
  std::vector<Formula> children;

  static Formula truth() { return {}; }
  static Formula falsity() { return {Kind::False, nullptr, {}}; }
  static Formula of(const Atom& a) { return {Kind::Atom, std::make_shared<const Atom>(a), {}}; }
  static Formula all(std::vector<Formula> fs) { return {Kind::And, nullptr, std::move(fs)}; }
  static Formula any(std::vector<Formula> fs) { return {Kind::Or, nullptr, std::move(fs)}; }

  bool holds(const Point& point) const;
};

Formula negate(const Formula& f);

/// Equivalent DNF with every clause simplified.
DnfFormula to_dnf(const Formula& f);

/// Equivalent DNF using the rule set documented in simplify.cpp.
DnfFormula simplify(const Guard& g);
/// Simplifies every clause and removes duplicate and subsumed clauses.
DnfFormula simplify(const DnfFormula& f);

enum class Deduction { Derivable, Unknown };
enum class Refutation { DerivablyFalse, Unknown };

/// Sound, incomplete entailment check g |= a over the reals.
Deduction deduce(const Guard& g, const Atom& a);
/// Sound, incomplete unsatisfiability check.
Refutation is_false(const Guard& g);

}  // namespace realsing
