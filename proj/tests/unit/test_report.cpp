// End-to-end shape and determinism checks on the GA entry points and the
// JSON report. Budgets are kept tiny; the real workout lives in the
// acceptance binary.
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ltlfix/analysis.hpp"
#include "ltlfix/counting.hpp"
#include "ltlfix/harness.hpp"
#include "ltlfix/repair.hpp"

using namespace ltlfix;
using namespace ltlfix::repair;

#ifndef LTLFIX_FIXTURE_DIR
#define LTLFIX_FIXTURE_DIR "tests/fixtures"
#endif

namespace {

Spec arbiter() {
    return harness::loadSpecFile(std::string(LTLFIX_FIXTURE_DIR) + "/arbiter.spec").spec;
}

GAConfig tinyConfig(uint64_t seed) {
    GAConfig cfg;
    cfg.maxIndividuals = 60;
    cfg.budgetSeconds = 300;
    cfg.rngSeed = seed;
    return cfg;
}

// The wall clock is the one sanctioned nondeterministic report field.
std::string withoutWallClock(const std::string& json) {
    std::istringstream in(json);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.find("wallClockSeconds") == std::string::npos) out << line << "\n";
    return out.str();
}

} // namespace

TEST_CASE("runGA finds verified repairs on the arbiter at a tiny budget") {
    Spec original = arbiter();
    GAConfig cfg = tinyConfig(1);
    analysis::BackendConfig builtin;
    counting::ModelCounter counter(original.alphabet(), cfg.stateCap, cfg.matrixCap);
    RepairReport report = runGA(original, cfg, builtin, counter);

    CHECK(report.mode == "ga");
    CHECK(report.individualsEvaluated == 60);
    CHECK(report.backendCalls > 0);
    CHECK_FALSE(report.incomplete);
    REQUIRE(!report.repairs.empty());

    analysis::AnalysisCache fresh;
    for (size_t i = 0; i < report.repairs.size(); ++i) {
        const RepairEntry& r = report.repairs[i];
        CHECK(r.rank == static_cast<int>(i) + 1);
        CHECK(r.fitness.statusScore == doctest::Approx(1.0));
        CHECK_FALSE(r.provenanceChain.empty());
        // Every reported repair re-verifies from scratch.
        CHECK(analysis::isSat(r.spec.conjunctionFormula()));
        CHECK(analysis::checkRealizability(r.spec, builtin).isRealizable());
    }
    // Ranking is by combined fitness, descending.
    for (size_t i = 1; i < report.repairs.size(); ++i)
        CHECK(report.repairs[i - 1].fitness.combined >=
              doctest::Approx(report.repairs[i].fitness.combined));
}

TEST_CASE("identical seeds give identical reports modulo the wall clock") {
    Spec original = arbiter();
    analysis::BackendConfig builtin;
    GAConfig cfg = tinyConfig(42);
    counting::ModelCounter c1(original.alphabet(), cfg.stateCap, cfg.matrixCap);
    counting::ModelCounter c2(original.alphabet(), cfg.stateCap, cfg.matrixCap);
    std::string j1 = reportToJson(runGA(original, cfg, builtin, c1));
    std::string j2 = reportToJson(runGA(original, cfg, builtin, c2));
    CHECK(withoutWallClock(j1) == withoutWallClock(j2));
}

TEST_CASE("random baseline shares the report shape and verification gate") {
    Spec original = arbiter();
    GAConfig cfg = tinyConfig(3);
    analysis::BackendConfig builtin;
    counting::ModelCounter counter(original.alphabet(), cfg.stateCap, cfg.matrixCap);
    RepairReport report = runRandomBaseline(original, cfg, builtin, counter);

    CHECK(report.mode == "random-baseline");
    CHECK(report.individualsEvaluated == 60);
    analysis::BackendConfig fresh;
    for (const RepairEntry& r : report.repairs) {
        CHECK(analysis::isSat(r.spec.conjunctionFormula()));
        CHECK(analysis::checkRealizability(r.spec, fresh).isRealizable());
        // Baseline variants are single mutations of the original.
        REQUIRE(r.provenanceChain.size() == 1);
        CHECK(r.provenanceChain[0].find("random-mutation") != std::string::npos);
    }
}

TEST_CASE("reportToJson keeps the schema key order") {
    Spec original = arbiter();
    GAConfig cfg = tinyConfig(5);
    cfg.maxIndividuals = 12;
    analysis::BackendConfig builtin;
    counting::ModelCounter counter(original.alphabet(), cfg.stateCap, cfg.matrixCap);
    std::string json = reportToJson(runGA(original, cfg, builtin, counter));

    size_t configPos = json.find("\"config\"");
    size_t originalPos = json.find("\"originalSpec\"");
    size_t repairsPos = json.find("\"repairs\"");
    size_t statsPos = json.find("\"stats\"");
    REQUIRE(configPos != std::string::npos);
    REQUIRE(originalPos != std::string::npos);
    REQUIRE(repairsPos != std::string::npos);
    REQUIRE(statsPos != std::string::npos);
    CHECK(configPos < originalPos);
    CHECK(originalPos < repairsPos);
    CHECK(repairsPos < statsPos);
    for (const char* key :
         {"\"rngSeed\"", "\"individualsEvaluated\"", "\"wallClockSeconds\"",
          "\"backendCalls\"", "\"incomplete\"", "\"alpha\"", "\"beta\"", "\"gamma\"",
          "\"stateCap\"", "\"matrixCap\""})
        CHECK(json.find(key) != std::string::npos);
}

TEST_CASE("writeReport handles files and stdout spelling") {
    Spec original = arbiter();
    GAConfig cfg = tinyConfig(6);
    cfg.maxIndividuals = 12;
    analysis::BackendConfig builtin;
    counting::ModelCounter counter(original.alphabet(), cfg.stateCap, cfg.matrixCap);
    RepairReport report = runGA(original, cfg, builtin, counter);

    std::string path = "/tmp/ltlfix-report-test.json";
    writeReport(report, path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == reportToJson(report));
    std::remove(path.c_str());
}

TEST_CASE("runGA warns but proceeds on an already realizable spec") {
    Spec fine = harness::loadSpecFile(std::string(LTLFIX_FIXTURE_DIR) + "/echo.spec").spec;
    GAConfig cfg = tinyConfig(7);
    cfg.maxIndividuals = 30;
    analysis::BackendConfig builtin;
    counting::ModelCounter counter(fine.alphabet(), cfg.stateCap, cfg.matrixCap);
    RepairReport report = runGA(fine, cfg, builtin, counter);
    // The original itself is realizable, so it comes back as a repair.
    CHECK(!report.repairs.empty());
}
