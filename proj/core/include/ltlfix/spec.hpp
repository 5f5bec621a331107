#pragma once

#include <string>
#include <vector>

#include "ltlfix/formula.hpp"
#include "ltlfix/lasso.hpp"

namespace ltlfix {

// Assume-guarantee specification A -> G over a partitioned alphabet:
// inputs are environment-controlled, outputs system-controlled.
struct Spec {
    std::string name;
    std::vector<std::string> inputs;  // declaration order
    std::vector<std::string> outputs; // declaration order
    std::vector<FormulaPtr> assumptions; // may be empty
    std::vector<FormulaPtr> guarantees;  // at least one

    Alphabet alphabet() const { return Alphabet(variables()); }
    std::vector<std::string> variables() const; // inputs then outputs

    // Conjunction of assumptions; `true` when there are none.
    FormulaPtr assumptionConjunction() const { return conjoin(assumptions); }
    FormulaPtr guaranteeConjunction() const { return conjoin(guarantees); }
    // (/\A) -> (/\G): the realizability objective.
    FormulaPtr implicationFormula() const;
    // (/\A) /\ (/\G): the model-counting/satisfiability view of the spec.
    FormulaPtr conjunctionFormula() const;

    // Union of subformulas over all assumptions and guarantees (set, as in
    // the syntactic-similarity metric).
    std::vector<FormulaPtr> allSubformulas() const;

    // Stable text form used for deduplication and memoization keys.
    std::string canonicalKey() const;

    // Throws SpecFormatError on partition violations, undeclared atoms,
    // or an empty guarantee list.
    void validate() const;
};

} // namespace ltlfix
