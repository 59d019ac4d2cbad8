#include "realsing/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace realsing {

SignMask mask_of(Relation r) {
  switch (r) {
    case Relation::Eq: return kZero;
    case Relation::Ne: return kNeg | kPos;
    case Relation::Lt: return kNeg;
    case Relation::Le: return kNeg | kZero;
    case Relation::Gt: return kPos;
    case Relation::Ge: return kPos | kZero;
  }
  throw std::logic_error("bad relation");
}

Relation relation_of(SignMask m) {
  switch (m) {
    case kZero: return Relation::Eq;
    case kNeg | kPos: return Relation::Ne;
    case kNeg: return Relation::Lt;
    case kNeg | kZero: return Relation::Le;
    case kPos: return Relation::Gt;
    case kPos | kZero: return Relation::Ge;
    default: throw std::logic_error("sign mask has no relation");
  }
}

namespace {

SignMask mirror_mask(SignMask m) {
  return static_cast<SignMask>((m & kZero) | ((m & kNeg) ? kPos : 0) | ((m & kPos) ? kNeg : 0));
}

SignMask sign_bit(int s) { return s < 0 ? kNeg : (s == 0 ? kZero : kPos); }

}  // namespace

Relation negate(Relation r) { return relation_of(static_cast<SignMask>(kAnySign & ~mask_of(r))); }

Relation mirror(Relation r) { return relation_of(mirror_mask(mask_of(r))); }

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Eq: return "=";
    case Relation::Ne: return "!=";
    case Relation::Lt: return "<";
    case Relation::Le: return "<=";
    case Relation::Gt: return ">";
    case Relation::Ge: return ">=";
  }
  throw std::logic_error("bad relation");
}

bool holds(Relation r, int sign) { return (mask_of(r) & sign_bit(sign)) != 0; }

// ---------------------------------------------------------------------------

Atom::Atom(const Poly& p, Relation rel) : rel_(rel) {
  auto c = canonicalize(p);
  poly_ = std::move(c.primitive);
  if (c.content < 0) rel_ = mirror(rel_);
  if (c.content != 0 && poly_.is_zero()) poly_ = Poly(1);
}

bool Atom::holds(const Point& point) const { return realsing::holds(rel_, sgn(evaluate(poly_, point))); }

std::string Atom::to_string() const { return poly_.to_string() + " " + realsing::to_string(rel_) + " 0"; }

// ---------------------------------------------------------------------------

Guard::Guard(const std::vector<Atom>& atoms) {
  for (const auto& a : atoms) add(a);
}

void Guard::add(const Poly& p, SignMask mask) {
  if (false_) return;
  mask &= kAnySign;
  if (mask == 0) {
    set_false();
    return;
  }
  if (p.is_constant()) {
    Rational v = p.constant_term();
    if ((mask & sign_bit(sgn(v))) == 0) set_false();
    return;
  }
  auto c = canonicalize(p);
  if (c.content < 0) mask = mirror_mask(mask);
  auto it = masks_.find(c.primitive);
  SignMask m = it == masks_.end() ? mask : static_cast<SignMask>(it->second & mask);
  if (m == 0) {
    set_false();
  } else if (m == kAnySign) {
    if (it != masks_.end()) masks_.erase(it);
  } else if (it == masks_.end()) {
    masks_.emplace(std::move(c.primitive), m);
  } else {
    it->second = m;
  }
}

void Guard::conjoin(const Guard& other) {
  if (other.false_) {
    set_false();
    return;
  }
  for (const auto& [p, m] : other.masks_) add(p, m);
}

SignMask Guard::mask(const Poly& canonical) const {
  auto it = masks_.find(canonical);
  return it == masks_.end() ? kAnySign : it->second;
}

std::vector<Atom> Guard::atoms() const {
  std::vector<Atom> out;
  if (false_) {
    out.emplace_back(Poly(), Relation::Ne);
    return out;
  }
  for (const auto& [p, m] : masks_) out.emplace_back(p, relation_of(m));
  return out;
}

std::vector<VariableId> Guard::variables() const {
  std::vector<VariableId> vars;
  for (const auto& [p, m] : masks_)
    for (const auto& x : p.variables()) vars.push_back(x);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

bool Guard::holds(const Point& point) const {
  if (false_) return false;
  for (const auto& [p, m] : masks_)
    if ((m & sign_bit(sgn(evaluate(p, point)))) == 0) return false;
  return true;
}

std::string Guard::to_string() const {
  if (false_) return "false";
  if (masks_.empty()) return "true";
  std::string s;
  for (const auto& a : atoms()) {
    if (!s.empty()) s += " and ";
    s += a.to_string();
  }
  return s;
}

// ---------------------------------------------------------------------------

DnfFormula::DnfFormula(std::vector<Guard> clauses) {
  for (auto& g : clauses)
    if (!g.is_false()) clauses_.push_back(std::move(g));
}

bool DnfFormula::is_true() const {
  return std::any_of(clauses_.begin(), clauses_.end(), [](const Guard& g) { return g.is_true(); });
}

bool DnfFormula::holds(const Point& point) const {
  return std::any_of(clauses_.begin(), clauses_.end(), [&](const Guard& g) { return g.holds(point); });
}

std::string DnfFormula::to_string() const {
  if (clauses_.empty()) return "false";
  if (clauses_.size() == 1) return clauses_.front().to_string();
  std::string s;
  for (const auto& g : clauses_) {
    if (!s.empty()) s += " or ";
    s += "(" + g.to_string() + ")";
  }
  return s;
}

DnfFormula dnf_or(const DnfFormula& a, const DnfFormula& b) {
  std::vector<Guard> cs = a.clauses();
  cs.insert(cs.end(), b.clauses().begin(), b.clauses().end());
  return DnfFormula(std::move(cs));
}

DnfFormula dnf_and(const DnfFormula& a, const DnfFormula& b) {
  std::vector<Guard> cs;
  for (const auto& x : a.clauses())
    for (const auto& y : b.clauses()) {
      Guard g = x;
      g.conjoin(y);
      if (!g.is_false()) cs.push_back(std::move(g));
    }
  return DnfFormula(std::move(cs));
}

// ---------------------------------------------------------------------------

bool Formula::holds(const Point& point) const {
  switch (kind) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Atom: return atom->holds(point);
    case Kind::And:
      return std::all_of(children.begin(), children.end(), [&](const Formula& f) { return f.holds(point); });
    case Kind::Or:
      return std::any_of(children.begin(), children.end(), [&](const Formula& f) { return f.holds(point); });
  }
  return false;
}

Formula negate(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::True: return Formula::falsity();
    case Formula::Kind::False: return Formula::truth();
    case Formula::Kind::Atom: return Formula::of(f.atom->negated());
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> cs;
      for (const auto& c : f.children) cs.push_back(negate(c));
      return f.kind == Formula::Kind::And ? Formula::any(std::move(cs)) : Formula::all(std::move(cs));
    }
  }
  return f;
}

namespace {

DnfFormula raw_dnf(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::True: return DnfFormula::truth();
    case Formula::Kind::False: return DnfFormula::falsity();
    case Formula::Kind::Atom: return DnfFormula({Guard({*f.atom})});
    case Formula::Kind::And: {
      DnfFormula acc = DnfFormula::truth();
      for (const auto& c : f.children) {
        acc = simplify(dnf_and(acc, raw_dnf(c)));
        if (acc.is_false()) break;
      }
      return acc;
    }
    case Formula::Kind::Or: {
      DnfFormula acc;
      for (const auto& c : f.children) acc = dnf_or(acc, raw_dnf(c));
      return acc;
    }
  }
  return {};
}

}  // namespace

DnfFormula to_dnf(const Formula& f) { return simplify(raw_dnf(f)); }

}  // namespace realsing
