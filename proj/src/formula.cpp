#include "coverlab/formula.hpp"

#include <algorithm>

namespace coverlab {
namespace {

constexpr int kMaxSolveVariables = 20;

std::string clauseText(const Clause& c) {
  std::string out = c.sign == Sign::Pos ? "pos{" : "neg{";
  for (size_t i = 0; i < c.vars.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(c.vars[i]);
  }
  out += "}";
  return out;
}

bool varsSubset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Closed span containment: [lo_b, hi_b] inside [lo_a, hi_a].
bool spanContains(const Clause& outer, const Clause& inner) {
  return outer.spanLo() <= inner.spanLo() && inner.spanHi() <= outer.spanHi();
}

}  // namespace

const char* formulaErrorCodeName(FormulaErrorCode code) {
  switch (code) {
    case FormulaErrorCode::ClauseTooSmall: return "ClauseTooSmall";
    case FormulaErrorCode::ClauseTooLarge: return "ClauseTooLarge";
    case FormulaErrorCode::VariableOutOfRange: return "VariableOutOfRange";
    case FormulaErrorCode::VarsNotAscending: return "VarsNotAscending";
    case FormulaErrorCode::DuplicateClause: return "DuplicateClause";
    case FormulaErrorCode::ClauseContainment: return "ClauseContainment";
    case FormulaErrorCode::InterleavingSpans: return "InterleavingSpans";
    case FormulaErrorCode::TooManyVariables: return "TooManyVariables";
  }
  return "UnknownFormulaError";
}

MonotoneFormula validate(const MonotoneFormula& formula) {
  MonotoneFormula out = formula;
  const int n = out.variableCount;

  for (size_t i = 0; i < out.clauses.size(); ++i) {
    const Clause& c = out.clauses[i];
    const int idx = static_cast<int>(i);
    if (c.vars.size() < 2)
      throw FormulaError(FormulaErrorCode::ClauseTooSmall, idx, -1,
                         "clause " + std::to_string(i) + " has fewer than 2 variables");
    if (c.vars.size() > 3)
      throw FormulaError(FormulaErrorCode::ClauseTooLarge, idx, -1,
                         "clause " + std::to_string(i) + " has more than 3 variables");
    for (size_t k = 0; k < c.vars.size(); ++k) {
      if (c.vars[k] < 1 || c.vars[k] > n)
        throw FormulaError(FormulaErrorCode::VariableOutOfRange, idx, -1,
                           "clause " + std::to_string(i) + " references variable " +
                               std::to_string(c.vars[k]) + " outside 1.." +
                               std::to_string(n));
      if (k > 0 && c.vars[k] <= c.vars[k - 1])
        throw FormulaError(FormulaErrorCode::VarsNotAscending, idx, -1,
                           "clause " + std::to_string(i) +
                               " variables are not strictly ascending");
    }
  }

  for (size_t i = 0; i < out.clauses.size(); ++i) {
    for (size_t j = i + 1; j < out.clauses.size(); ++j) {
      const Clause& a = out.clauses[i];
      const Clause& b = out.clauses[j];
      const int ia = static_cast<int>(i), ib = static_cast<int>(j);
      if (a.sign == b.sign && a.vars == b.vars)
        throw FormulaError(FormulaErrorCode::DuplicateClause, ia, ib,
                           "clauses " + std::to_string(i) + " and " +
                               std::to_string(j) + " are identical: " +
                               clauseText(a));
      if (a.vars != b.vars && (varsSubset(a.vars, b.vars) || varsSubset(b.vars, a.vars)))
        throw FormulaError(FormulaErrorCode::ClauseContainment, ia, ib,
                           "clause " + clauseText(a) + " is contained in " +
                               clauseText(b) + " (or vice versa)");
      if (a.sign == b.sign) {
        // Equal extreme variables on the same side would collapse both
        // clause anchors onto one location; there is no planar placement
        // for that pair in this layout, so it is rejected as containment
        // (the closed spans contain each other).
        if (a.spanLo() == b.spanLo() && a.spanHi() == b.spanHi())
          throw FormulaError(FormulaErrorCode::ClauseContainment, ia, ib,
                             "same-sign clauses " + clauseText(a) + " and " +
                                 clauseText(b) + " share both extreme variables");
        const Clause& l = a.spanLo() <= b.spanLo() ? a : b;
        const Clause& r = a.spanLo() <= b.spanLo() ? b : a;
        if (l.spanLo() < r.spanLo() && r.spanLo() < l.spanHi() &&
            l.spanHi() < r.spanHi())
          throw FormulaError(FormulaErrorCode::InterleavingSpans, ia, ib,
                             "same-sign clauses " + clauseText(a) + " and " +
                                 clauseText(b) + " have interleaving spans");
      }
    }
  }

  for (size_t i = 0; i < out.clauses.size(); ++i) {
    int level = 0;
    for (size_t j = 0; j < out.clauses.size(); ++j) {
      if (i == j) continue;
      if (out.clauses[i].sign != out.clauses[j].sign) continue;
      if (spanContains(out.clauses[j], out.clauses[i])) ++level;
    }
    out.clauses[i].level = level;
  }

  out.validated = true;
  return out;
}

bool satisfies(const MonotoneFormula& formula, const Assignment& assignment) {
  for (const Clause& c : formula.clauses) {
    bool ok = false;
    for (int v : c.vars) {
      const bool val = assignment.value(v);
      if ((c.sign == Sign::Pos && val) || (c.sign == Sign::Neg && !val)) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

namespace {

bool solveRec(const MonotoneFormula& f, std::vector<bool>& values, int next) {
  const int n = f.variableCount;
  // prune: a clause whose variables are all decided must be satisfied
  for (const Clause& c : f.clauses) {
    if (c.spanHi() >= next) continue;
    bool ok = false;
    for (int v : c.vars) {
      const bool val = values[static_cast<size_t>(v) - 1];
      if ((c.sign == Sign::Pos && val) || (c.sign == Sign::Neg && !val)) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  if (next > n) return true;
  for (const bool tryValue : {false, true}) {
    values[static_cast<size_t>(next) - 1] = tryValue;
    if (solveRec(f, values, next + 1)) return true;
  }
  return false;
}

}  // namespace

std::optional<Assignment> satSolve(const MonotoneFormula& formula) {
  if (formula.variableCount > kMaxSolveVariables)
    throw FormulaError(FormulaErrorCode::TooManyVariables, -1, -1,
                       "satSolve enumerates at most " +
                           std::to_string(kMaxSolveVariables) + " variables");
  std::vector<bool> values(static_cast<size_t>(formula.variableCount), false);
  if (!solveRec(formula, values, 1)) return std::nullopt;
  return Assignment{std::move(values)};
}

}  // namespace coverlab
