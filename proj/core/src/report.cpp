#include <fstream>
#include <iostream>
#include <stdexcept>

#ifdef LTLFIX_VENDORED_JSON
#include "json.hpp"
#else
#include <nlohmann/json.hpp>
#endif

#include "ltlfix/repair.hpp"

namespace ltlfix::repair {

namespace {

using Json = nlohmann::ordered_json;

Json formulaList(const std::vector<FormulaPtr>& fs) {
    Json arr = Json::array();
    for (const FormulaPtr& f : fs) arr.push_back(print(f));
    return arr;
}

Json specJson(const Spec& s) {
    Json j;
    j["name"] = s.name;
    j["inputs"] = s.inputs;
    j["outputs"] = s.outputs;
    j["assumptions"] = formulaList(s.assumptions);
    j["guarantees"] = formulaList(s.guarantees);
    return j;
}

} // namespace

std::string reportToJson(const RepairReport& report) {
    Json j;
    Json config;
    config["mode"] = report.mode;
    config["populationSize"] = report.config.populationSize;
    config["maxIndividuals"] = report.config.maxIndividuals;
    config["budgetSeconds"] = report.config.budgetSeconds;
    config["countingBound"] = report.config.countingBound;
    config["alpha"] = report.config.alpha;
    config["beta"] = report.config.beta;
    config["gamma"] = report.config.gamma;
    config["crossoverFraction"] = report.config.crossoverFraction;
    if (report.config.perGeneRate)
        config["perGeneRate"] = *report.config.perGeneRate;
    else
        config["perGeneRate"] = "1/N";
    config["rngSeed"] = report.config.rngSeed;
    config["jobs"] = report.config.jobs;
    config["stateCap"] = report.config.stateCap;
    config["matrixCap"] = report.config.matrixCap;
    config["backend"] = report.backend.toString();
    j["config"] = std::move(config);

    j["originalSpec"] = specJson(report.originalSpec);

    Json repairs = Json::array();
    for (const RepairEntry& r : report.repairs) {
        Json e;
        e["rank"] = r.rank;
        e["assumptions"] = formulaList(r.spec.assumptions);
        e["guarantees"] = formulaList(r.spec.guarantees);
        e["statusScore"] = r.fitness.statusScore;
        e["synSim"] = r.fitness.synSim;
        e["semSim"] = r.fitness.semSim;
        e["combined"] = r.fitness.combined;
        e["provenanceChain"] = r.provenanceChain;
        repairs.push_back(std::move(e));
    }
    j["repairs"] = std::move(repairs);

    Json stats;
    stats["individualsEvaluated"] = report.individualsEvaluated;
    stats["wallClockSeconds"] = report.wallClockSeconds;
    stats["backendCalls"] = report.backendCalls;
    stats["incomplete"] = report.incomplete;
    j["stats"] = std::move(stats);

    return j.dump(2) + "\n";
}

void writeReport(const RepairReport& report, const std::string& outPath) {
    std::string text = reportToJson(report);
    if (outPath.empty() || outPath == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(outPath, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open report file '" + outPath + "'");
    out << text;
    if (!out.flush()) throw std::runtime_error("write failed for '" + outPath + "'");
}

} // namespace ltlfix::repair
