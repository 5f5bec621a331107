#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ltlfix/analysis.hpp"
#include "ltlfix/formula.hpp"
#include "ltlfix/lasso.hpp"
#include "ltlfix/spec.hpp"

namespace ltlfix::harness {

// A spec loaded from disk, keeping its origin for error messages.
struct SpecFile {
    std::string path;
    Spec spec;
};

// Line-oriented spec format, `#` starts a comment:
//   NAME: arbiter
//   INPUTS: r1 r2 a
//   OUTPUTS: g1 g2
//   ASSUMPTION: <ltl>      (zero or more)
//   GUARANTEE: <ltl>       (one or more)
// Throws SpecFormatError with a line number on malformed input.
Spec parseSpecText(const std::string& text, const std::string& sourceName = "<string>");
SpecFile loadSpecFile(const std::string& path);

std::string specToText(const Spec& s);
void saveSpecFile(const Spec& s, const std::string& path);

// Classification of one candidate repair against one reference repair,
// comparing the full implication formulas (/\A) -> (/\G).
struct OverlapRecord {
    size_t ourIndex = 0;
    size_t referenceIndex = 0;
    analysis::Relation relation = analysis::Relation::Incomparable;
};

struct OverlapSummary {
    // Per our-repair primary classification: `equivalent` counts repairs
    // matching some reference as equivalent; `stronger`/`weaker` count the
    // rest by their strictest relation to any reference; `unique` counts
    // repairs equivalent to no reference (so unique + equivalent = |ours|).
    int unique = 0;
    int equivalent = 0;
    int weaker = 0;
    int stronger = 0;
    std::vector<OverlapRecord> records; // full |ours| x |reference| matrix
};

OverlapSummary compareRepairSets(const std::vector<Spec>& ours,
                                 const std::vector<Spec>& reference);

// Vargha-Delaney probability of superiority: P(a > b) + 0.5 P(a = b) over
// all pairs. Throws std::invalid_argument on an empty sample.
double varghaDelaneyA12(const std::vector<double>& samplesA,
                        const std::vector<double>& samplesB);

// Random well-formed formula over `atoms`, at most `maxDepth` operator
// levels. Used by the ranking study and the property tests.
FormulaPtr randomFormula(std::mt19937_64& rng, const std::vector<std::string>& atoms,
                         int maxDepth);

// One set of the approximate-vs-exact ranking comparison.
struct RankingSetResult {
    uint64_t k = 0;
    int formulaCount = 0;  // formulas actually ranked (after skips)
    int skipped = 0;       // formulas whose exact count was infeasible
    // Misranked formulas: the fewest whose removal leaves the two rankings
    // free of strict pairwise inversions. Ties never count as inversions, so
    // equal-count clusters that one ranking resolves differently don't
    // inflate the measure.
    int discrepancy = 0;
    double rankCorrelation = 1.0; // tie-corrected Spearman rho
};

struct RankingStudyReport {
    std::vector<RankingSetResult> sets;
};

// For each set: draw `formulasPerSet` random formulas over `alphabet`, pick
// k uniformly in [kMin, kMax], rank by countModelsApprox and by
// countLassosExact, and compare positions. Formulas whose exact count is
// infeasible are skipped and recorded.
RankingStudyReport runRankingStudy(int setCount, int formulasPerSet,
                                   const Alphabet& alphabet, uint64_t kMin,
                                   uint64_t kMax, uint64_t rngSeed);

} // namespace ltlfix::harness
