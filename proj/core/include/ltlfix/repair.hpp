#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ltlfix/analysis.hpp"
#include "ltlfix/counting.hpp"
#include "ltlfix/spec.hpp"

namespace ltlfix::repair {

struct Fitness {
    double statusScore = 0.0; // in {0, 0.1, 0.2, 0.5, 1}
    double synSim = 0.0;
    double semSim = 0.0;
    double combined = 0.0; // alpha*status + beta*synSim + gamma*semSim
};

enum class Provenance { Seed, Crossover, Mutation };

struct Individual {
    Spec spec;
    Fitness fitness;
    Provenance provenance = Provenance::Seed;
    std::vector<std::string> provenanceChain; // oldest first
    uint64_t creationIndex = 0;
    bool evaluated = false;
    bool quarantined = false; // evaluation failed; combined forced to 0
    std::string errorNote;
};

struct GAConfig {
    int populationSize = 100;
    int maxIndividuals = 1000;
    int budgetSeconds = 7200;
    uint64_t countingBound = 20; // k for semSim model counts
    double alpha = 0.7;
    double beta = 0.1;
    double gamma = 0.2;
    double crossoverFraction = 0.10;
    // Per-gene mutation probability; unset means the 1/N rule, N = size of
    // the formula picked for mutation.
    std::optional<double> perGeneRate;
    uint64_t rngSeed = 0;
    int jobs = 1; // worker threads for fitness evaluation
    // Structural resource caps for per-candidate analysis. Candidates that
    // blow past them are quarantined (counting) or scored unknown
    // (realizability) instead of stalling the search. Construct the shared
    // ModelCounter with the same caps: ModelCounter(alphabet, stateCap, matrixCap).
    int stateCap = 2000;
    int matrixCap = 192;

    // Throws std::invalid_argument: weights must sum to 1 (1e-9), rates lie
    // in [0,1], populationSize >= 2, maxIndividuals/budget positive.
    void validate() const;
};

struct RepairEntry {
    int rank = 0;
    Spec spec;
    Fitness fitness;
    std::vector<std::string> provenanceChain;
};

struct RepairReport {
    GAConfig config;
    analysis::BackendConfig backend;
    std::string mode; // "ga" or "random-baseline"
    Spec originalSpec;
    std::vector<RepairEntry> repairs;
    uint64_t individualsEvaluated = 0;
    double wallClockSeconds = 0.0;
    uint64_t backendCalls = 0;
    bool incomplete = false; // interrupted before normal termination
};

// Cooperative cancellation flag, set by the CLI's SIGINT handler and polled
// between individual evaluations.
std::atomic<bool>& interruptRequested();

// Initial population: (A u {a0}, G) for each pattern a0 in
//   { G F x_i | x_i input } u { G !(x_0 & ... & x_n), G F (x_0 & ... & x_n) },
// input variables only. Seeds with unsatisfiable assumption sets are
// dropped; the population is padded with the unmodified spec.
std::vector<Individual> seedPopulation(const Spec& s, int size, std::mt19937_64& rng);

// replaceSub / combineSub over uniformly drawn subformulas; the binary
// connective for combineSub is drawn from { ||, &&, U, R, W }.
FormulaPtr replaceSub(const FormulaPtr& f, const FormulaPtr& donor, std::mt19937_64& rng);
FormulaPtr combineSub(const FormulaPtr& f, const FormulaPtr& donor, std::mt19937_64& rng);

// Child takes each assumption slot from s1, from s2, or from
// replaceSub/combineSub of the pair; guarantees likewise.
Spec crossover(const Spec& s1, const Spec& s2, std::mt19937_64& rng);

// Picks one assumption or guarantee uniformly and rewrites it with the
// syntactic mutation grammar; every node mutates with probability
// perGeneRate (default 1/N). Atoms introduced into assumptions come from
// the inputs only; guarantees draw from inputs and outputs.
Spec mutate(const Spec& s, std::mt19937_64& rng,
            std::optional<double> perGeneRate = std::nullopt);

// The five-valued realizability-oriented score:
//   0    assumptions unsatisfiable
//   0.1  assumptions sat, guarantees unsat
//   0.2  both sat, conjunction unsat
//   0.5  conjunction sat, A -> G unrealizable (or unknown)
//   1    conjunction sat, A -> G realizable
double statusScore(const Spec& s, const analysis::BackendConfig& backend,
                   analysis::AnalysisCache& cache,
                   int stateCap = automata::kDefaultStateCap);

// 0.5 * (|SF(S) n SF(S')| / |SF(S)| + |SF(S) n SF(S')| / |SF(S')|).
double synSim(const Spec& s, const Spec& sPrime);

// 0.5 * (#(S & S', k)/#(S, k) + #(S & S', k)/#(S', k)); 0 when any of the
// three counts is 0.
double semSim(const Spec& s, const Spec& sPrime, uint64_t k,
              counting::ModelCounter& counter);

// Fills all fitness fields; semSim is only computed when statusScore > 0.
// Component failures quarantine the individual (combined = 0, error noted).
void evaluateFitness(Individual& ind, const Spec& original, const GAConfig& cfg,
                     const analysis::BackendConfig& backend,
                     analysis::AnalysisCache& cache, counting::ModelCounter& counter);

// Collapses duplicates (same canonical print, keeping the earliest), sorts
// by combined desc with ties broken by semSim, synSim, then creation order,
// and truncates to `size`.
std::vector<Individual> selectBest(std::vector<Individual> population, size_t size);

RepairReport runGA(const Spec& original, const GAConfig& cfg,
                   const analysis::BackendConfig& backend,
                   counting::ModelCounter& counter);

// Mutation-only baseline: maxIndividuals variants of the original, each
// with at least one changed subformula; same verification and report shape.
RepairReport runRandomBaseline(const Spec& original, const GAConfig& cfg,
                               const analysis::BackendConfig& backend,
                               counting::ModelCounter& counter);

// JSON serialization of a report (stable key order, 2-space indent).
std::string reportToJson(const RepairReport& report);
void writeReport(const RepairReport& report, const std::string& outPath); // "-" = stdout

} // namespace ltlfix::repair
