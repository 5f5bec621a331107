// ltlfix command line: count models, check realizability, repair specs,
// run the random baseline, the ranking study, and repair-set comparison.
//
// Exit codes: 0 success, 1 domain failure (no repair / unrealizable result
// where one was required), 2 usage or input-format error, 3 backend or
// resource error (including "unknown" realizability verdicts).

#include <csignal>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#if defined(LTLFIX_VENDORED_JSON)
#include "json.hpp"
#else
#include <nlohmann/json.hpp>
#endif

#include "ltlfix/analysis.hpp"
#include "ltlfix/counting.hpp"
#include "ltlfix/errors.hpp"
#include "ltlfix/formula.hpp"
#include "ltlfix/harness.hpp"
#include "ltlfix/repair.hpp"
#include "ltlfix/spec.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBackend = 3;

std::vector<std::string> splitCsv(const std::string& csv) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(csv);
    while (std::getline(in, item, ',')) {
        size_t a = item.find_first_not_of(" \t");
        size_t b = item.find_last_not_of(" \t");
        if (a == std::string::npos) continue;
        parts.push_back(item.substr(a, b - a + 1));
    }
    return parts;
}

void writeTextOut(const std::string& text, const std::string& outPath) {
    if (outPath.empty() || outPath == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(outPath, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + outPath);
    out << text;
}

void onInterrupt(int) { ltlfix::repair::interruptRequested().store(true); }

// Shared flags for `repair` and `random-baseline`.
struct RepairOptions {
    std::string specPath;
    std::string backendText = "builtin:6";
    std::string outPath = "-";
    ltlfix::repair::GAConfig cfg;
    std::optional<uint64_t> seed;
    std::optional<double> perGeneRate;
    bool verbose = false;
};

void addRepairFlags(CLI::App* cmd, RepairOptions& opt) {
    cmd->add_option("--spec", opt.specPath, "specification file")->required();
    cmd->add_option("--seed", opt.seed, "rng seed (generated and printed if absent)");
    cmd->add_option("--alpha", opt.cfg.alpha, "status-score weight")->capture_default_str();
    cmd->add_option("--beta", opt.cfg.beta, "syntactic-similarity weight")->capture_default_str();
    cmd->add_option("--gamma", opt.cfg.gamma, "semantic-similarity weight")->capture_default_str();
    cmd->add_option("--population", opt.cfg.populationSize, "population size")
        ->capture_default_str();
    cmd->add_option("--max-individuals", opt.cfg.maxIndividuals,
                    "evaluation budget in individuals")
        ->capture_default_str();
    cmd->add_option("--budget-seconds", opt.cfg.budgetSeconds, "wall-clock budget")
        ->capture_default_str();
    cmd->add_option("--bound", opt.cfg.countingBound, "k for semantic-similarity counts")
        ->capture_default_str();
    cmd->add_option("--crossover-fraction", opt.cfg.crossoverFraction,
                    "fraction of the population crossed per generation")
        ->capture_default_str();
    cmd->add_option("--per-gene-rate", opt.perGeneRate,
                    "per-node mutation probability (default: 1/N per formula)");
    cmd->add_option("--state-cap", opt.cfg.stateCap,
                    "automaton state cap per candidate analysis")
        ->capture_default_str();
    cmd->add_option("--matrix-cap", opt.cfg.matrixCap,
                    "transfer-matrix dimension cap per candidate count")
        ->capture_default_str();
    cmd->add_option("--backend", opt.backendText,
                    "builtin:<maxBound> or external:<command template>")
        ->capture_default_str();
    cmd->add_option("--out", opt.outPath, "report path, - for stdout")->capture_default_str();
    cmd->add_option("--jobs", opt.cfg.jobs, "worker threads for fitness evaluation")
        ->capture_default_str();
    cmd->add_flag("--verbose", opt.verbose, "progress notes on stderr");
}

int runRepairCommand(RepairOptions& opt, bool randomBaseline) {
    ltlfix::harness::SpecFile file = ltlfix::harness::loadSpecFile(opt.specPath);
    if (!opt.seed) {
        opt.seed = std::random_device{}();
        std::cerr << "seed: " << *opt.seed << "\n";
    }
    opt.cfg.rngSeed = *opt.seed;
    opt.cfg.perGeneRate = opt.perGeneRate;
    ltlfix::analysis::BackendConfig backend =
        ltlfix::analysis::BackendConfig::parse(opt.backendText);

    ltlfix::counting::ModelCounter counter(file.spec.alphabet(), opt.cfg.stateCap,
                                           opt.cfg.matrixCap);
    std::signal(SIGINT, onInterrupt);
    std::signal(SIGTERM, onInterrupt);
    ltlfix::repair::RepairReport report =
        randomBaseline
            ? ltlfix::repair::runRandomBaseline(file.spec, opt.cfg, backend, counter)
            : ltlfix::repair::runGA(file.spec, opt.cfg, backend, counter);
    std::signal(SIGINT, SIG_DFL);
    std::signal(SIGTERM, SIG_DFL);

    if (opt.verbose)
        std::cerr << "evaluated " << report.individualsEvaluated << " individuals in "
                  << report.wallClockSeconds << "s; " << report.repairs.size()
                  << " verified repairs; " << report.backendCalls << " backend calls\n";
    ltlfix::repair::writeReport(report, opt.outPath);
    return report.repairs.empty() ? kExitDomain : kExitOk;
}

int runCount(const std::string& formulaText, const std::string& alphabetCsv, uint64_t bound,
             bool exact) {
    std::vector<std::string> atoms = splitCsv(alphabetCsv);
    ltlfix::FormulaPtr f = ltlfix::parse(formulaText, atoms);
    ltlfix::Alphabet alphabet(atoms);
    ltlfix::counting::BigInt n = exact
                                     ? ltlfix::counting::countLassosExact(f, bound, alphabet)
                                     : ltlfix::counting::countModelsApprox(f, bound, alphabet);
    std::cout << n.str() << "\n";
    return kExitOk;
}

int runCheck(const std::string& specPath, const std::string& backendText) {
    ltlfix::harness::SpecFile file = ltlfix::harness::loadSpecFile(specPath);
    ltlfix::analysis::BackendConfig backend =
        ltlfix::analysis::BackendConfig::parse(backendText);
    ltlfix::analysis::RealizabilityVerdict v =
        ltlfix::analysis::checkRealizability(file.spec, backend);
    std::cout << v.toString() << "\n";
    if (v.kind == ltlfix::analysis::RealizabilityVerdict::Kind::Unknown) return kExitBackend;
    return kExitOk;
}

int runRankingStudy(int sets, int perSet, const std::string& alphabetCsv, uint64_t kMin,
                    uint64_t kMax, std::optional<uint64_t> seed, const std::string& outPath) {
    if (!seed) {
        seed = std::random_device{}();
        std::cerr << "seed: " << *seed << "\n";
    }
    ltlfix::Alphabet alphabet(splitCsv(alphabetCsv));
    ltlfix::harness::RankingStudyReport report =
        ltlfix::harness::runRankingStudy(sets, perSet, alphabet, kMin, kMax, *seed);

    nlohmann::ordered_json j;
    j["config"] = {{"sets", sets},   {"formulasPerSet", perSet},
                   {"kMin", kMin},   {"kMax", kMax},
                   {"seed", *seed},  {"alphabet", splitCsv(alphabetCsv)}};
    j["sets"] = nlohmann::ordered_json::array();
    for (const auto& set : report.sets)
        j["sets"].push_back({{"k", set.k},
                             {"formulaCount", set.formulaCount},
                             {"skipped", set.skipped},
                             {"discrepancy", set.discrepancy},
                             {"rankCorrelation", set.rankCorrelation}});
    writeTextOut(j.dump(2) + "\n", outPath);
    return kExitOk;
}

int runCompare(const std::vector<std::string>& ourPaths,
               const std::vector<std::string>& referencePaths, bool verbose) {
    std::vector<ltlfix::Spec> ours, reference;
    for (const auto& p : ourPaths) ours.push_back(ltlfix::harness::loadSpecFile(p).spec);
    for (const auto& p : referencePaths)
        reference.push_back(ltlfix::harness::loadSpecFile(p).spec);
    ltlfix::harness::OverlapSummary s = ltlfix::harness::compareRepairSets(ours, reference);
    if (verbose)
        for (const auto& r : s.records)
            std::cerr << ourPaths[r.ourIndex] << " vs " << referencePaths[r.referenceIndex]
                      << ": " << ltlfix::analysis::relationName(r.relation) << "\n";
    std::cout << "unique: " << s.unique << "\n"
              << "equivalent: " << s.equivalent << "\n"
              << "weaker: " << s.weaker << "\n"
              << "stronger: " << s.stronger << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"LTL assume-guarantee specification repair toolkit"};
    app.require_subcommand(1);

    // count
    std::string formulaText, alphabetCsv;
    uint64_t bound = 0;
    bool exact = false;
    CLI::App* count = app.add_subcommand("count", "count bounded models of a formula");
    count->add_option("--formula", formulaText, "LTL formula")->required();
    count->add_option("--alphabet", alphabetCsv, "comma-separated atoms")->required();
    count->add_option("--bound", bound, "lasso length k")->required();
    count->add_flag("--exact", exact, "exact lasso count instead of the approximation");

    // check
    std::string checkSpecPath, checkBackend = "builtin:6";
    CLI::App* check = app.add_subcommand("check", "check realizability of a spec file");
    check->add_option("--spec", checkSpecPath, "specification file")->required();
    check->add_option("--backend", checkBackend,
                      "builtin:<maxBound> or external:<command template>")
        ->capture_default_str();

    // repair / random-baseline
    RepairOptions repairOpt, baselineOpt;
    repairOpt.cfg.jobs = std::max(1u, std::thread::hardware_concurrency());
    baselineOpt.cfg.jobs = repairOpt.cfg.jobs;
    CLI::App* repair = app.add_subcommand("repair", "genetic repair of an unrealizable spec");
    addRepairFlags(repair, repairOpt);
    CLI::App* baseline =
        app.add_subcommand("random-baseline", "mutation-only baseline at equal budget");
    addRepairFlags(baseline, baselineOpt);

    // ranking-study
    int sets = 5, perSet = 20;
    std::string studyAlphabet = "p,q";
    uint64_t kMin = 6, kMax = 8;
    std::optional<uint64_t> studySeed;
    std::string studyOut = "-";
    CLI::App* study = app.add_subcommand(
        "ranking-study", "approximate-vs-exact count ranking comparison on random formulas");
    study->add_option("--sets", sets, "number of formula sets")->capture_default_str();
    study->add_option("--per-set", perSet, "formulas per set")->capture_default_str();
    study->add_option("--alphabet", studyAlphabet, "comma-separated atoms")
        ->capture_default_str();
    study->add_option("--k-min", kMin, "smallest lasso length")->capture_default_str();
    study->add_option("--k-max", kMax, "largest lasso length")->capture_default_str();
    study->add_option("--seed", studySeed, "rng seed (generated and printed if absent)");
    study->add_option("--out", studyOut, "report path, - for stdout")->capture_default_str();

    // compare
    std::vector<std::string> ourPaths, referencePaths;
    bool compareVerbose = false;
    CLI::App* compare =
        app.add_subcommand("compare", "classify repair spec files against references");
    compare->add_option("--ours", ourPaths, "our repair spec files")->required();
    compare->add_option("--reference", referencePaths, "reference repair spec files")
        ->required();
    compare->add_flag("--verbose", compareVerbose, "print the full relation matrix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*count) return runCount(formulaText, alphabetCsv, bound, exact);
        if (*check) return runCheck(checkSpecPath, checkBackend);
        if (*repair) return runRepairCommand(repairOpt, false);
        if (*baseline) return runRepairCommand(baselineOpt, true);
        if (*study)
            return runRankingStudy(sets, perSet, studyAlphabet, kMin, kMax, studySeed,
                                   studyOut);
        if (*compare) return runCompare(ourPaths, referencePaths, compareVerbose);
    } catch (const ltlfix::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ltlfix::SpecFormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ltlfix::ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBackend;
    } catch (const ltlfix::BackendError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBackend;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
