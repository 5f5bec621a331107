#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <thread>

#include "ltlfix/repair.hpp"

namespace ltlfix::repair {

namespace {

using Clock = std::chrono::steady_clock;

uint64_t pick(std::mt19937_64& rng, uint64_t n) { return rng() % n; }

// The builtin backend inherits the run's structural cap so a single bloated
// candidate cannot stall the whole search; external backends are untouched.
analysis::BackendConfig cappedBackend(const analysis::BackendConfig& backend,
                                      const GAConfig& cfg) {
    analysis::BackendConfig eff = backend;
    if (eff.kind == analysis::BackendConfig::Kind::BuiltinBounded)
        eff.stateCap = std::min(eff.stateCap, cfg.stateCap);
    return eff;
}

struct RunContext {
    const Spec& original;
    const GAConfig& cfg;
    analysis::BackendConfig backend; // capped copy, see cappedBackend
    analysis::AnalysisCache& cache;
    counting::ModelCounter& counter;
    Clock::time_point start = Clock::now();
    uint64_t nextIndex = 0;

    double elapsedSeconds() const {
        return std::chrono::duration<double>(Clock::now() - start).count();
    }
    bool expired() const {
        return interruptRequested().load() || elapsedSeconds() >= cfg.budgetSeconds;
    }
};

// Scores every unevaluated individual in the batch, deduplicating identical
// canonical forms so each distinct spec is scored once. Individuals left
// unscored by budget expiry are removed. Returns the number evaluated.
uint64_t evaluateBatch(std::vector<Individual>& batch, RunContext& ctx) {
    std::vector<std::string> keys;
    std::map<std::string, std::vector<size_t>> groups;
    for (size_t i = 0; i < batch.size(); ++i) {
        if (batch[i].evaluated) continue;
        std::string key = batch[i].spec.canonicalKey();
        auto [it, fresh] = groups.try_emplace(key);
        if (fresh) keys.push_back(key);
        it->second.push_back(i);
    }

    std::vector<Individual> prototypes;
    prototypes.reserve(keys.size());
    for (const std::string& k : keys) prototypes.push_back(batch[groups[k].front()]);

    std::atomic<size_t> cursor{0};
    auto work = [&]() {
        for (;;) {
            size_t i = cursor.fetch_add(1);
            if (i >= prototypes.size() || ctx.expired()) return;
            evaluateFitness(prototypes[i], ctx.original, ctx.cfg, ctx.backend, ctx.cache,
                            ctx.counter);
        }
    };
    if (ctx.cfg.jobs <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        int n = std::min<int>(ctx.cfg.jobs, static_cast<int>(prototypes.size()));
        for (int t = 0; t < n; ++t) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }

    uint64_t evaluated = 0;
    for (size_t i = 0; i < keys.size(); ++i) {
        if (!prototypes[i].evaluated) continue;
        for (size_t idx : groups[keys[i]]) {
            batch[idx].fitness = prototypes[i].fitness;
            batch[idx].quarantined = prototypes[i].quarantined;
            batch[idx].errorNote = prototypes[i].errorNote;
            batch[idx].evaluated = true;
            ++evaluated;
        }
    }
    batch.erase(std::remove_if(batch.begin(), batch.end(),
                               [](const Individual& ind) { return !ind.evaluated; }),
                batch.end());
    return evaluated;
}

bool betterThan(const Individual& a, const Individual& b) {
    if (a.fitness.combined != b.fitness.combined) return a.fitness.combined > b.fitness.combined;
    if (a.fitness.semSim != b.fitness.semSim) return a.fitness.semSim > b.fitness.semSim;
    if (a.fitness.synSim != b.fitness.synSim) return a.fitness.synSim > b.fitness.synSim;
    return a.creationIndex < b.creationIndex;
}

void harvest(const std::vector<Individual>& batch,
             std::map<std::string, Individual>& archive) {
    for (const Individual& ind : batch) {
        if (!ind.evaluated || ind.fitness.statusScore != 1.0) continue;
        auto [it, fresh] = archive.try_emplace(ind.spec.canonicalKey(), ind);
        if (!fresh && ind.creationIndex < it->second.creationIndex) it->second = ind;
    }
}

// Independent re-check of every harvested repair: satisfiable conjunction
// and realizable implication, computed outside the memo cache.
void finishReport(RepairReport& report, std::map<std::string, Individual>& archive,
                  RunContext& ctx, uint64_t evaluatedTotal) {
    std::vector<Individual> verified;
    for (auto& [key, ind] : archive) {
        if (!analysis::isSat(ind.spec.conjunctionFormula())) continue;
        if (!analysis::checkRealizability(ind.spec, ctx.backend).isRealizable()) continue;
        verified.push_back(ind);
    }
    std::stable_sort(verified.begin(), verified.end(), betterThan);

    report.repairs.clear();
    for (size_t i = 0; i < verified.size(); ++i) {
        RepairEntry entry;
        entry.rank = static_cast<int>(i) + 1;
        entry.spec = verified[i].spec;
        entry.fitness = verified[i].fitness;
        entry.provenanceChain = verified[i].provenanceChain;
        report.repairs.push_back(std::move(entry));
    }
    report.individualsEvaluated = evaluatedTotal;
    report.wallClockSeconds = ctx.elapsedSeconds();
    report.backendCalls = ctx.cache.backendCalls();
    report.incomplete = interruptRequested().load();
}

Individual makeChild(Spec spec, Provenance kind, std::vector<std::string> chain,
                     RunContext& ctx) {
    Individual ind;
    ind.spec = std::move(spec);
    ind.provenance = kind;
    ind.provenanceChain = std::move(chain);
    ind.creationIndex = ctx.nextIndex++;
    return ind;
}

} // namespace

std::vector<Individual> selectBest(std::vector<Individual> population, size_t size) {
    std::map<std::string, size_t> slotByKey;
    std::vector<Individual> unique;
    for (Individual& ind : population) {
        std::string key = ind.spec.canonicalKey();
        auto [it, fresh] = slotByKey.try_emplace(key, unique.size());
        if (fresh)
            unique.push_back(std::move(ind));
        else if (ind.creationIndex < unique[it->second].creationIndex)
            unique[it->second] = std::move(ind);
    }
    std::stable_sort(unique.begin(), unique.end(), betterThan);
    if (unique.size() > size) unique.resize(size);
    return unique;
}

RepairReport runGA(const Spec& original, const GAConfig& cfg,
                   const analysis::BackendConfig& backend,
                   counting::ModelCounter& counter) {
    cfg.validate();
    original.validate();

    analysis::AnalysisCache cache;
    RunContext ctx{original, cfg, cappedBackend(backend, cfg), cache, counter};
    std::mt19937_64 rng(cfg.rngSeed);

    RepairReport report;
    report.config = cfg;
    report.backend = backend;
    report.mode = "ga";
    report.originalSpec = original;

    if (cache.checkRealizabilityCached(original, ctx.backend).isRealizable())
        std::cerr << "warning: specification is already realizable; searching anyway\n";

    int seedCount = std::min<int>(cfg.populationSize, cfg.maxIndividuals);
    std::vector<Individual> population = seedPopulation(original, seedCount, rng);
    ctx.nextIndex = population.size();

    uint64_t evaluatedTotal = evaluateBatch(population, ctx);
    std::map<std::string, Individual> archive;
    harvest(population, archive);

    while (evaluatedTotal < static_cast<uint64_t>(cfg.maxIndividuals) && !ctx.expired() &&
           !population.empty()) {
        std::vector<Individual> offspring;
        size_t popSize = population.size();

        auto crossCount = static_cast<size_t>(std::llround(cfg.crossoverFraction *
                                                           static_cast<double>(popSize)));
        for (size_t i = 0; i < crossCount; ++i) {
            const Individual& p1 = population[pick(rng, popSize)];
            const Individual& p2 = population[pick(rng, popSize)];
            std::vector<std::string> chain = p1.provenanceChain;
            chain.push_back("crossover(" + std::to_string(p1.creationIndex) + "," +
                            std::to_string(p2.creationIndex) + ")");
            offspring.push_back(makeChild(crossover(p1.spec, p2.spec, rng),
                                          Provenance::Crossover, std::move(chain), ctx));
        }
        for (const Individual& parent : population) {
            std::vector<std::string> chain = parent.provenanceChain;
            chain.push_back("mutation(" + std::to_string(parent.creationIndex) + ")");
            offspring.push_back(makeChild(mutate(parent.spec, rng, cfg.perGeneRate),
                                          Provenance::Mutation, std::move(chain), ctx));
        }

        uint64_t quota = static_cast<uint64_t>(cfg.maxIndividuals) - evaluatedTotal;
        if (offspring.size() > quota) offspring.resize(quota);
        if (offspring.empty()) break;

        evaluatedTotal += evaluateBatch(offspring, ctx);
        harvest(offspring, archive);

        population.reserve(population.size() + offspring.size());
        for (Individual& ind : offspring) population.push_back(std::move(ind));
        population = selectBest(std::move(population), cfg.populationSize);
    }

    finishReport(report, archive, ctx, evaluatedTotal);
    return report;
}

RepairReport runRandomBaseline(const Spec& original, const GAConfig& cfg,
                               const analysis::BackendConfig& backend,
                               counting::ModelCounter& counter) {
    cfg.validate();
    original.validate();

    analysis::AnalysisCache cache;
    RunContext ctx{original, cfg, cappedBackend(backend, cfg), cache, counter};
    std::mt19937_64 rng(cfg.rngSeed);

    RepairReport report;
    report.config = cfg;
    report.backend = backend;
    report.mode = "random-baseline";
    report.originalSpec = original;

    std::string originalKey = original.canonicalKey();
    std::map<std::string, Individual> archive;
    uint64_t evaluatedTotal = 0;

    while (evaluatedTotal < static_cast<uint64_t>(cfg.maxIndividuals) && !ctx.expired()) {
        uint64_t quota = static_cast<uint64_t>(cfg.maxIndividuals) - evaluatedTotal;
        size_t batchSize = static_cast<size_t>(
            std::min<uint64_t>(quota, static_cast<uint64_t>(cfg.populationSize)));

        std::vector<Individual> batch;
        batch.reserve(batchSize);
        for (size_t i = 0; i < batchSize; ++i) {
            // The baseline requires a real syntactic change; retry the
            // mutation until the canonical form moves.
            Spec variant = original;
            for (int attempt = 0; attempt < 200; ++attempt) {
                variant = mutate(original, rng, cfg.perGeneRate);
                if (variant.canonicalKey() != originalKey) break;
            }
            batch.push_back(makeChild(std::move(variant), Provenance::Mutation,
                                      {"random-mutation(original)"}, ctx));
        }
        evaluatedTotal += evaluateBatch(batch, ctx);
        harvest(batch, archive);
    }

    finishReport(report, archive, ctx, evaluatedTotal);
    return report;
}

} // namespace ltlfix::repair
