#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace coverlab {

enum class Sign { Pos, Neg };

// A monotone clause: two or three distinct variables, all of them plain for
// Pos clauses and all negated for Neg clauses. Variables are 1-based and kept
// strictly ascending. `level` is the nesting depth among same-sign clauses,
// filled in by validate().
struct Clause {
  Sign sign = Sign::Pos;
  std::vector<int> vars;
  int level = -1;

  int spanLo() const { return vars.front(); }
  int spanHi() const { return vars.back(); }
};

struct MonotoneFormula {
  int variableCount = 0;
  std::vector<Clause> clauses;
  bool validated = false;

  int n() const { return variableCount; }
  int m() const { return static_cast<int>(clauses.size()); }
};

enum class FormulaErrorCode {
  ClauseTooSmall,
  ClauseTooLarge,
  VariableOutOfRange,
  VarsNotAscending,
  DuplicateClause,
  ClauseContainment,
  InterleavingSpans,
  TooManyVariables,
};

const char* formulaErrorCodeName(FormulaErrorCode code);

struct FormulaError : std::runtime_error {
  FormulaErrorCode code;
  int clauseA = -1;  // offending clause index, -1 when not applicable
  int clauseB = -1;  // second clause for pairwise violations

  FormulaError(FormulaErrorCode code, int a, int b, const std::string& what)
      : std::runtime_error(what), code(code), clauseA(a), clauseB(b) {}
};

// Checks the well-formedness rules for the planar monotone fragment and
// returns a copy with nesting levels assigned. Rejections identify the
// offending clause indices. Idempotent: validating a validated formula
// returns it unchanged.
MonotoneFormula validate(const MonotoneFormula& formula);

struct Assignment {
  std::vector<bool> values;  // values[i] is variable i+1

  bool value(int var) const { return values[static_cast<size_t>(var) - 1]; }
};

bool satisfies(const MonotoneFormula& formula, const Assignment& assignment);

// Exhaustive decision with early clause pruning; supports up to 20 variables.
// Returns the lexicographically smallest satisfying assignment (false sorts
// before true), or nothing when unsatisfiable.
std::optional<Assignment> satSolve(const MonotoneFormula& formula);

}  // namespace coverlab
