#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ltlfix/repair.hpp"

namespace ltlfix::repair {

std::atomic<bool>& interruptRequested() {
    static std::atomic<bool> flag{false};
    return flag;
}

void GAConfig::validate() const {
    if (populationSize < 2) throw std::invalid_argument("populationSize must be >= 2");
    if (maxIndividuals < 1) throw std::invalid_argument("maxIndividuals must be >= 1");
    if (budgetSeconds < 1) throw std::invalid_argument("budgetSeconds must be >= 1");
    if (countingBound < 1) throw std::invalid_argument("countingBound must be >= 1");
    auto inUnit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!inUnit(alpha) || !inUnit(beta) || !inUnit(gamma))
        throw std::invalid_argument("fitness weights must lie in [0,1]");
    if (std::fabs(alpha + beta + gamma - 1.0) > 1e-9)
        throw std::invalid_argument("fitness weights must sum to 1");
    if (!inUnit(crossoverFraction))
        throw std::invalid_argument("crossoverFraction must lie in [0,1]");
    if (perGeneRate && !inUnit(*perGeneRate))
        throw std::invalid_argument("perGeneRate must lie in [0,1]");
    if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
}

double statusScore(const Spec& s, const analysis::BackendConfig& backend,
                   analysis::AnalysisCache& cache, int stateCap) {
    // Empty assumption list counts as the trivially satisfiable `true`.
    bool satA =
        s.assumptions.empty() || cache.isSatCached(s.assumptionConjunction(), stateCap);
    if (!satA) return 0.0;
    if (!cache.isSatCached(s.guaranteeConjunction(), stateCap)) return 0.1;
    if (!s.assumptions.empty() && !cache.isSatCached(s.conjunctionFormula(), stateCap))
        return 0.2;
    analysis::RealizabilityVerdict v = cache.checkRealizabilityCached(s, backend);
    return v.isRealizable() ? 1.0 : 0.5;
}

double synSim(const Spec& s, const Spec& sPrime) {
    std::vector<FormulaPtr> sfA = s.allSubformulas();
    std::vector<FormulaPtr> sfB = sPrime.allSubformulas();
    FormulaSet setB(sfB.begin(), sfB.end());
    size_t shared = 0;
    for (const FormulaPtr& f : sfA)
        if (setB.count(f)) ++shared;
    double ratioA = static_cast<double>(shared) / static_cast<double>(sfA.size());
    double ratioB = static_cast<double>(shared) / static_cast<double>(sfB.size());
    return 0.5 * (ratioA + ratioB);
}

double semSim(const Spec& s, const Spec& sPrime, uint64_t k,
              counting::ModelCounter& counter) {
    counting::BigInt countS = counter.countApprox(s.conjunctionFormula(), k);
    if (countS == 0) return 0.0;
    counting::BigInt countSPrime = counter.countApprox(sPrime.conjunctionFormula(), k);
    if (countSPrime == 0) return 0.0;
    FormulaPtr both =
        Formula::binary(Op::And, s.conjunctionFormula(), sPrime.conjunctionFormula());
    counting::BigInt countBoth = counter.countApprox(both, k);
    if (countBoth == 0) return 0.0;
    double b = countBoth.convert_to<double>();
    double value = 0.5 * (b / countS.convert_to<double>() + b / countSPrime.convert_to<double>());
    // Prefix counting is approximate, so the conjunction count may slightly
    // exceed a conjunct's; keep the score inside [0,1].
    return std::min(1.0, value);
}

void evaluateFitness(Individual& ind, const Spec& original, const GAConfig& cfg,
                     const analysis::BackendConfig& backend,
                     analysis::AnalysisCache& cache, counting::ModelCounter& counter) {
    Fitness f{};
    try {
        f.statusScore = statusScore(ind.spec, backend, cache, cfg.stateCap);
        f.synSim = synSim(original, ind.spec);
        // An unsatisfiable candidate shares no bounded models with anything;
        // skip the counting work.
        f.semSim = f.statusScore > 0.0
                       ? semSim(original, ind.spec, cfg.countingBound, counter)
                       : 0.0;
        f.combined = cfg.alpha * f.statusScore + cfg.beta * f.synSim + cfg.gamma * f.semSim;
    } catch (const std::exception& e) {
        ind.quarantined = true;
        ind.errorNote = e.what();
        f.combined = 0.0;
    }
    ind.fitness = f;
    ind.evaluated = true;
}

} // namespace ltlfix::repair
