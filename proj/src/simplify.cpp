// Guard simplification and the deduction procedure.
//
// Rules applied to each clause until a fixpoint is reached:
//   - constant atoms are evaluated, equal polynomials merge their sign masks;
//   - positivity: sums of even monomials with positive coefficients are >= 0
//     (> 0 with a positive constant term);
//   - factor splitting through factor_basic: f*g = 0 becomes a disjunction,
//     f*g != 0 a conjunction, ordered relations split when at most one factor
//     has odd multiplicity;
//   - substitution of defining equations x = c into the remaining atoms. The
//     refutation mode also substitutes equations a*x + r = 0 with constant a.
// Clauses are then deduplicated, subsumed clauses removed and clauses that
// differ in a single mask merged.

#include <algorithm>
#include <set>

#include "realsing/formula.hpp"

namespace realsing {
namespace {

enum class SubstMode { Constant, Linear };

const Factorization& cached_factor(const Poly& p) {
  thread_local std::map<Poly, Factorization> cache;
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;
  if (cache.size() > 20000) cache.clear();
  return cache.emplace(p, factor_basic(p)).first->second;
}

SignMask mirror_mask(SignMask m) {
  return static_cast<SignMask>((m & kZero) | ((m & kNeg) ? kPos : 0) | ((m & kPos) ? kNeg : 0));
}

SignMask positivity(const Poly& p) {
  for (const auto& [m, c] : p.terms()) {
    if (c < 0) return kAnySign;
    for (const auto& [x, e] : m.factors())
      if (e % 2 != 0) return kAnySign;
  }
  return p.constant_term() > 0 ? kPos : static_cast<SignMask>(kPos | kZero);
}

Guard single(const Poly& p, SignMask m) {
  Guard g;
  g.add(p, m);
  return g;
}

// Replacement of the atom p in mask m by its factors, if p factors.
std::optional<DnfFormula> split_atom(const Poly& p, SignMask m) {
  const Factorization& f = cached_factor(p);
  if (f.factors.size() == 1 && f.factors[0].second == 1) return std::nullopt;
  if (m == kZero) {
    std::vector<Guard> cs;
    for (const auto& [g, e] : f.factors) cs.push_back(single(g, kZero));
    return DnfFormula(std::move(cs));
  }
  if (m == (kNeg | kPos)) {
    Guard g;
    for (const auto& [h, e] : f.factors) g.add(h, kNeg | kPos);
    return DnfFormula({g});
  }
  std::vector<const Poly*> odd, even;
  for (const auto& [g, e] : f.factors) (e % 2 ? odd : even).push_back(&g);
  if (odd.size() > 1) return std::nullopt;
  SignMask mc = f.content < 0 ? mirror_mask(m) : m;
  SignMask nonzero = mc & (kNeg | kPos);
  std::vector<Guard> cs;
  if (odd.empty()) {
    if ((m & kZero) && (nonzero & kPos)) return DnfFormula::truth();
    if (nonzero & kPos) {
      Guard g;
      for (const Poly* h : even) g.add(*h, kNeg | kPos);
      cs.push_back(g);
    }
    if (m & kZero)
      for (const Poly* h : even) cs.push_back(single(*h, kZero));
    return DnfFormula(std::move(cs));
  }
  if (m & kZero) {
    cs.push_back(single(*odd[0], nonzero | kZero));
    for (const Poly* h : even) cs.push_back(single(*h, kZero));
  } else {
    Guard g;
    g.add(*odd[0], nonzero);
    for (const Poly* h : even) g.add(*h, kNeg | kPos);
    cs.push_back(g);
  }
  return DnfFormula(std::move(cs));
}

struct Item {
  Guard guard;
  std::set<VariableId> defined;
};

bool occurs_elsewhere(const Guard& g, const Poly& self, const VariableId& x) {
  for (const auto& [p, m] : g.masks())
    if (!(p == self) && p.contains(x)) return true;
  return false;
}

// Substitutes one defining equation into the other atoms; false if none applies.
bool substitute_once(Item& item, SubstMode mode) {
  const Poly* best_def = nullptr;
  std::optional<VariableId> best_x;
  for (const auto& [p, m] : item.guard.masks()) {
    if (m != kZero) continue;
    auto vars = p.variables();
    if (mode == SubstMode::Constant && vars.size() != 1) continue;
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      const VariableId& x = *it;
      if (item.defined.count(x) || p.degree(x) != 1) continue;
      if (best_x && !(*best_x < x)) continue;
      auto cs = p.coefficients(x);
      if (!cs[1].is_constant()) continue;
      bool clean = std::none_of(vars.begin(), vars.end(),
                                [&](const VariableId& y) { return !(y == x) && item.defined.count(y); });
      if (!clean || !occurs_elsewhere(item.guard, p, x)) continue;
      best_x = x;
      best_def = &p;
      break;
    }
  }
  if (!best_def) return false;
  const VariableId x = *best_x;
  auto cs = best_def->coefficients(x);
  Poly value = cs[0] * (Rational(-1) / cs[1].constant_value());
  std::map<VariableId, Poly> binding{{x, value}};
  Guard next;
  Poly def = *best_def;
  next.add(def, kZero);
  for (const auto& [p, m] : item.guard.masks()) {
    if (p == def) continue;
    next.add(p.contains(x) ? substitute(p, binding) : p, m);
  }
  item.guard = std::move(next);
  item.defined.insert(x);
  return true;
}

bool apply_positivity(Guard& g) {
  bool changed = false;
  Guard next;
  for (const auto& [p, m] : g.masks()) {
    SignMask pm = positivity(p);
    if ((m & pm) != m) changed = true;
    next.add(p, static_cast<SignMask>(m & pm));
  }
  if (changed) g = std::move(next);
  return changed;
}

// Every point satisfying `strong` satisfies `weak`.
bool subsumes(const Guard& weak, const Guard& strong) {
  for (const auto& [p, m] : weak.masks())
    if ((strong.mask(p) & ~m) != 0) return false;
  return true;
}

// Merges two clauses that differ in the mask of exactly one polynomial.
std::optional<Guard> merge(const Guard& a, const Guard& b) {
  if (a.masks().size() != b.masks().size()) return std::nullopt;
  const Poly* diff = nullptr;
  SignMask ma = 0, mb = 0;
  auto ib = b.masks().begin();
  for (auto ia = a.masks().begin(); ia != a.masks().end(); ++ia, ++ib) {
    if (!(ia->first == ib->first)) return std::nullopt;
    if (ia->second == ib->second) continue;
    if (diff) return std::nullopt;
    diff = &ia->first;
    ma = ia->second;
    mb = ib->second;
  }
  if (!diff) return a;
  Guard g;
  for (const auto& [p, m] : a.masks())
    if (!(p == *diff)) g.add(p, m);
  g.add(*diff, ma | mb);
  return g;
}

DnfFormula clean(std::vector<Guard> clauses) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(clauses.begin(), clauses.end());
    clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
    for (const auto& c : clauses)
      if (c.is_true()) return DnfFormula::truth();
    for (std::size_t i = 0; i < clauses.size() && !changed; ++i)
      for (std::size_t j = 0; j < clauses.size() && !changed; ++j) {
        if (i == j) continue;
        if (subsumes(clauses[i], clauses[j])) {
          clauses.erase(clauses.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
        } else if (auto m = merge(clauses[i], clauses[j])) {
          clauses[i] = *m;
          clauses.erase(clauses.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
        }
      }
  }
  return DnfFormula(std::move(clauses));
}

std::vector<Guard> simplify_clause(const Guard& g, SubstMode mode, bool stop_at_first) {
  std::vector<Guard> out;
  std::vector<Item> work{{g, {}}};
  while (!work.empty()) {
    Item item = std::move(work.back());
    work.pop_back();
    bool emitted = false;
    bool split = false;
    while (!item.guard.is_false()) {
      apply_positivity(item.guard);
      if (item.guard.is_false()) break;
      for (const auto& [p, m] : item.guard.masks()) {
        auto s = split_atom(p, m);
        if (!s) continue;
        Guard rest;
        for (const auto& [q, n] : item.guard.masks())
          if (!(q == p)) rest.add(q, n);
        // Push in reverse so the first factor is processed first.
        DnfFormula branches = dnf_and(DnfFormula({rest}), *s);
        const auto& cs = branches.clauses();
        for (auto it = cs.rbegin(); it != cs.rend(); ++it) work.push_back({*it, item.defined});
        split = true;
        break;
      }
      if (split) break;
      if (substitute_once(item, mode)) continue;
      out.push_back(item.guard);
      emitted = true;
      break;
    }
    if (emitted && stop_at_first) break;
  }
  return out;
}

}  // namespace

DnfFormula simplify(const Guard& g) { return clean(simplify_clause(g, SubstMode::Constant, false)); }

DnfFormula simplify(const DnfFormula& f) {
  std::vector<Guard> all;
  for (const auto& c : f.clauses()) {
    auto cs = simplify_clause(c, SubstMode::Constant, false);
    all.insert(all.end(), cs.begin(), cs.end());
  }
  return clean(std::move(all));
}

Refutation is_false(const Guard& g) {
  if (g.is_false()) return Refutation::DerivablyFalse;
  return simplify_clause(g, SubstMode::Linear, true).empty() ? Refutation::DerivablyFalse : Refutation::Unknown;
}

Deduction deduce(const Guard& g, const Atom& a) {
  if (g.is_false()) return Deduction::Derivable;
  if (a.poly().is_constant()) {
    return holds(a.relation(), sgn(a.poly().constant_term())) ? Deduction::Derivable : Deduction::Unknown;
  }
  SignMask want = mask_of(a.relation());
  if ((g.mask(a.poly()) & ~want) == 0) return Deduction::Derivable;
  Guard h = g;
  h.add(a.negated());
  return is_false(h) == Refutation::DerivablyFalse ? Deduction::Derivable : Deduction::Unknown;
}

}  // namespace realsing
