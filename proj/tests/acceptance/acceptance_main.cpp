// End-to-end acceptance gate. Each criterion prints exactly one PASS/FAIL
// line with its wall time; the binary exits 0 iff every criterion passes.
// Progress chatter goes to stderr so stdout stays one line per criterion.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ltlfix/analysis.hpp"
#include "ltlfix/automaton.hpp"
#include "ltlfix/counting.hpp"
#include "ltlfix/errors.hpp"
#include "ltlfix/formula.hpp"
#include "ltlfix/harness.hpp"
#include "ltlfix/lasso.hpp"
#include "ltlfix/repair.hpp"
#include "ltlfix/spec.hpp"

using namespace ltlfix;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double secondsSince(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fixturePath(const std::string& name) {
    return std::string(LTLFIX_FIXTURE_DIR) + "/" + name;
}

// ---------------------------------------------------------------- A1 / A2

Outcome criterionA1() {
    Alphabet ab({"p", "q"});
    auto t0 = Clock::now();
    counting::BigInt n = counting::countModelsApprox(parse("G (p -> X q)"), 4, ab);
    double secs = secondsSince(t0);
    std::ostringstream d;
    d << "countModelsApprox(G(p->Xq), k=4) = " << n << " (want 108, <1s)";
    return {n == 108 && secs < 1.0, d.str()};
}

Outcome criterionA2() {
    Alphabet ab({"p", "q"});
    auto t0 = Clock::now();
    counting::BigInt n = counting::countLassosExact(parse("G (p -> X q)"), 4, ab);
    double secs = secondsSince(t0);
    std::ostringstream d;
    d << "countLassosExact(G(p->Xq), k=4) = " << n
      << " (want 351 under the (base, loop-index) convention, <10s)";
    return {n == 351 && secs < 10.0, d.str()};
}

// --------------------------------------------------------------------- A3

automata::DetAutomaton randomDfa(std::mt19937_64& rng, const Alphabet& ab) {
    automata::DetAutomaton d;
    d.alphabet = ab;
    d.stateCount = 1 + static_cast<int>(rng() % 5);
    d.initialState = static_cast<int>(rng() % d.stateCount);
    d.finalStates.resize(static_cast<size_t>(d.stateCount));
    for (auto& f : d.finalStates) f = rng() % 2 ? 1 : 0;
    d.next.assign(static_cast<size_t>(d.stateCount) * ab.valuationCount(), -1);
    for (int s = 0; s < d.stateCount; ++s)
        for (Valuation v = 0; v < ab.valuationCount(); ++v)
            d.next[static_cast<size_t>(s) * ab.valuationCount() + v] =
                static_cast<int>(rng() % d.stateCount);
    return d;
}

uint64_t enumerateAccepted(const automata::DetAutomaton& d, int k) {
    uint64_t total = 1, accepted = 0;
    for (int i = 0; i < k; ++i) total *= d.alphabet.valuationCount();
    for (uint64_t enc = 0; enc < total; ++enc) {
        int s = d.initialState;
        uint64_t rest = enc;
        for (int i = 0; i < k; ++i) {
            s = d.step(s, static_cast<Valuation>(rest % d.alphabet.valuationCount()));
            rest /= d.alphabet.valuationCount();
        }
        if (d.finalStates[static_cast<size_t>(s)]) ++accepted;
    }
    return accepted;
}

Outcome criterionA3() {
    Alphabet ab({"p", "q"});
    std::mt19937_64 rng(7);
    auto t0 = Clock::now();
    int checked = 0, mismatches = 0;
    for (int i = 0; i < 200; ++i) {
        automata::DetAutomaton d = automata::minimize(randomDfa(rng, ab));
        counting::TransferMatrix t = counting::buildTransferMatrix(d);
        for (int k = 0; k <= 8; ++k) {
            ++checked;
            if (counting::countPrefixes(t, static_cast<uint64_t>(k)) !=
                enumerateAccepted(d, k))
                ++mismatches;
        }
    }
    double secs = secondsSince(t0);
    std::ostringstream d;
    d << "countPrefixes vs enumeration on 200 random minimized DFAs, k=0..8: "
      << mismatches << "/" << checked << " mismatches (want 0, <1min)";
    return {mismatches == 0 && secs < 60.0, d.str()};
}

// --------------------------------------------------------------------- A4

Outcome criterionA4() {
    auto t0 = Clock::now();
    harness::RankingStudyReport report =
        harness::runRankingStudy(5, 20, Alphabet({"p", "q"}), 6, 8, 3);
    double secs = secondsSince(t0);
    int good = 0;
    std::ostringstream d;
    d << "ranking study, per-set (k, misranked, rho):";
    for (const auto& set : report.sets) {
        if (set.discrepancy <= 2) ++good;
        char buf[64];
        std::snprintf(buf, sizeof buf, " (%llu, %d, %.3f)",
                      static_cast<unsigned long long>(set.k), set.discrepancy,
                      set.rankCorrelation);
        d << buf;
    }
    d << " — want <=2 misranked in >=4/5 sets, <10min";
    return {good >= 4 && secs < 600.0, d.str()};
}

// ----------------------------------------------------------- A5 / A6 / A7

struct PairedRuns {
    std::vector<repair::RepairReport> ga;
    std::vector<repair::RepairReport> random;
};

PairedRuns runPairedExperiments(const Spec& arbiter) {
    PairedRuns out;
    analysis::BackendConfig backend; // builtin, maxBound 6
    repair::GAConfig cfg;
    cfg.maxIndividuals = 1000;
    cfg.budgetSeconds = 600;
    counting::ModelCounter counter(arbiter.alphabet(), cfg.stateCap, cfg.matrixCap);
    for (uint64_t seed = 0; seed < 10; ++seed) {
        cfg.rngSeed = seed;
        auto t0 = Clock::now();
        out.ga.push_back(repair::runGA(arbiter, cfg, backend, counter));
        double gaSecs = secondsSince(t0);
        t0 = Clock::now();
        out.random.push_back(repair::runRandomBaseline(arbiter, cfg, backend, counter));
        std::fprintf(stderr,
                     "[A5/A6] seed %llu: ga %zu repairs (%.0fs), random %zu repairs (%.0fs)\n",
                     static_cast<unsigned long long>(seed), out.ga.back().repairs.size(),
                     gaSecs, out.random.back().repairs.size(), secondsSince(t0));
    }
    return out;
}

Outcome criterionA5(const PairedRuns& runs, const Spec& fixGfa, const Spec& fixMutex) {
    int seedsWithRepair = 0;
    for (const auto& report : runs.ga)
        if (!report.repairs.empty()) ++seedsWithRepair;

    // Some produced repair must be equivalent to one of the two known
    // manual fixes (assumption G F a, or mutual-exclusion guarantee).
    FormulaPtr refGfa = fixGfa.implicationFormula();
    FormulaPtr refMutex = fixMutex.implicationFormula();
    bool knownFixFound = false;
    std::string witness;
    for (const auto& report : runs.ga) {
        for (const auto& entry : report.repairs) {
            FormulaPtr got = entry.spec.implicationFormula();
            if (analysis::classifyRelation(got, refGfa) == analysis::Relation::Equivalent ||
                analysis::classifyRelation(got, refMutex) == analysis::Relation::Equivalent) {
                knownFixFound = true;
                witness = entry.spec.canonicalKey();
                break;
            }
        }
        if (knownFixFound) break;
    }

    std::ostringstream d;
    d << seedsWithRepair << "/10 seeds produced repairs (want >=8); known fix "
      << (knownFixFound ? "recovered" : "NOT recovered");
    return {seedsWithRepair >= 8 && knownFixFound, d.str()};
}

Outcome criterionA6(const PairedRuns& runs) {
    std::vector<double> gaCounts, randomCounts;
    uint64_t gaTotal = 0, randomTotal = 0;
    for (const auto& r : runs.ga) {
        gaCounts.push_back(static_cast<double>(r.repairs.size()));
        gaTotal += r.repairs.size();
    }
    for (const auto& r : runs.random) {
        randomCounts.push_back(static_cast<double>(r.repairs.size()));
        randomTotal += r.repairs.size();
    }
    double a12 = harness::varghaDelaneyA12(gaCounts, randomCounts);
    bool doubled = gaTotal >= 2 * randomTotal;
    std::ostringstream d;
    d << "ga " << gaTotal << " vs random " << randomTotal
      << " repairs over 10 paired runs (want >=2x); A12 = " << a12 << " (want >=0.8)";
    return {doubled && a12 >= 0.8, d.str()};
}

Outcome criterionA7(const PairedRuns& runs) {
    analysis::BackendConfig fresh; // independent builtin instance, no cache
    std::map<std::string, bool> verdicts;
    uint64_t total = 0, failures = 0;
    auto verify = [&](const Spec& s) {
        auto [it, inserted] = verdicts.try_emplace(s.canonicalKey(), false);
        if (inserted)
            it->second = analysis::isSat(s.conjunctionFormula()) &&
                         analysis::checkRealizability(s, fresh).isRealizable();
        return it->second;
    };
    for (const auto& batch : {runs.ga, runs.random})
        for (const auto& report : batch)
            for (const auto& entry : report.repairs) {
                ++total;
                if (!verify(entry.spec)) ++failures;
            }
    std::ostringstream d;
    d << failures << "/" << total
      << " reported repairs failed independent re-verification (want 0)";
    return {failures == 0 && total > 0, d.str()};
}

// --------------------------------------------------------------------- A8

Spec microSpec(std::vector<std::string> assumptions, std::vector<std::string> guarantees) {
    Spec s;
    s.name = "micro";
    s.inputs = {"x"};
    s.outputs = {"y"};
    for (const auto& a : assumptions) s.assumptions.push_back(parse(a));
    for (const auto& g : guarantees) s.guarantees.push_back(parse(g));
    s.validate();
    return s;
}

Outcome criterionA8() {
    auto t0 = Clock::now();
    analysis::BackendConfig backend;
    analysis::AnalysisCache cache;

    // Curated table: four specs per status class.
    struct Case {
        std::vector<std::string> assumptions, guarantees;
        double want;
    };
    const std::vector<Case> table = {
        // assumptions unsatisfiable -> 0
        {{"x && ! x"}, {"G (y)"}, 0.0},
        {{"x", "! x"}, {"G (y)"}, 0.0},
        {{"G (x)", "F (! x)"}, {"G (y)"}, 0.0},
        {{"X (x) && ! (X (x))"}, {"F (y)"}, 0.0},
        // assumptions sat, guarantees unsat -> 0.1
        {{}, {"y && ! y"}, 0.1},
        {{"G (F (x))"}, {"G (y)", "G (! y)"}, 0.1},
        {{"x"}, {"false"}, 0.1},
        {{}, {"F (y) && G (! y)"}, 0.1},
        // both sat, conjunction unsat -> 0.2
        {{"G (x)"}, {"G (! x)"}, 0.2},
        {{"F (x)"}, {"G (! x)"}, 0.2},
        {{"x"}, {"! x"}, 0.2},
        {{"G (x)"}, {"F (! x)"}, 0.2},
        // conjunction sat, unrealizable -> 0.5
        {{}, {"G (y <-> X (x))"}, 0.5},
        {{}, {"F (x)"}, 0.5},
        {{}, {"G (F (x))"}, 0.5},
        {{"G (F (x))"}, {"G (y <-> X (x))"}, 0.5},
        // realizable -> 1
        {{}, {"G (y <-> x)"}, 1.0},
        {{}, {"G (x -> F (y))"}, 1.0},
        {{"G (F (x))"}, {"G (F (y))"}, 1.0},
        {{}, {"F (y)"}, 1.0},
    };
    int wrong = 0;
    for (const auto& c : table) {
        double got = repair::statusScore(microSpec(c.assumptions, c.guarantees),
                                         backend, cache);
        if (got != c.want) {
            ++wrong;
            std::fprintf(stderr, "[A8] statusScore(%s) = %g, want %g\n",
                         microSpec(c.assumptions, c.guarantees).canonicalKey().c_str(),
                         got, c.want);
        }
    }

    // 500 random spec pairs: both similarities stay inside [0,1]; identity
    // properties hold on every generated spec. Pairs whose counting automata
    // exceed the default resource caps are resampled and reported.
    Alphabet ab({"x", "y"});
    counting::ModelCounter counter(ab);
    std::mt19937_64 rng(2026);
    auto randomSpec = [&]() {
        std::vector<std::string> none;
        Spec s;
        s.name = "rand";
        s.inputs = {"x"};
        s.outputs = {"y"};
        if (rng() % 2)
            s.assumptions.push_back(harness::randomFormula(rng, {"x"}, 3));
        int gs = 1 + static_cast<int>(rng() % 2);
        for (int i = 0; i < gs; ++i)
            s.guarantees.push_back(harness::randomFormula(rng, {"x", "y"}, 3));
        s.validate();
        return s;
    };
    int outOfRange = 0, identityBad = 0, infeasible = 0, measured = 0;
    while (measured < 500) {
        Spec a = randomSpec(), b = randomSpec();
        try {
            double syn = repair::synSim(a, b);
            double sem = repair::semSim(a, b, 6, counter);
            if (syn < 0.0 || syn > 1.0 || sem < 0.0 || sem > 1.0) ++outOfRange;
            if (repair::synSim(a, a) != 1.0) ++identityBad;
            if (counter.countApprox(a.conjunctionFormula(), 6) > 0 &&
                repair::semSim(a, a, 6, counter) != 1.0)
                ++identityBad;
        } catch (const ResourceError&) {
            ++infeasible;
            continue;
        }
        ++measured;
    }

    // semSim touches zero exactly when a count vanishes.
    double zero = repair::semSim(microSpec({}, {"G (y)"}), microSpec({}, {"G (! y)"}),
                                 6, counter);

    // Weight/parameter validation rejects bad configs.
    int rejected = 0;
    auto expectThrow = [&](auto&& tweak) {
        repair::GAConfig bad;
        tweak(bad);
        try {
            bad.validate();
        } catch (const std::invalid_argument&) {
            ++rejected;
        }
    };
    expectThrow([](repair::GAConfig& c) { c.alpha = 0.5; c.beta = 0.5; c.gamma = 0.5; });
    expectThrow([](repair::GAConfig& c) { c.alpha = -0.1; c.beta = 0.9; c.gamma = 0.2; });
    expectThrow([](repair::GAConfig& c) { c.populationSize = 1; });

    double secs = secondsSince(t0);
    std::ostringstream d;
    d << wrong << "/20 curated statusScore cases wrong; " << outOfRange
      << "/500 similarity pairs out of [0,1] (" << infeasible
      << " resampled); " << identityBad << " identity violations; "
      << "semSim(unsat pair) = " << zero << "; " << rejected
      << "/3 bad configs rejected (<5min)";
    return {wrong == 0 && outOfRange == 0 && identityBad == 0 && zero == 0.0 &&
                rejected == 3 && secs < 300.0,
            d.str()};
}

// --------------------------------------------------------------------- A9

// Exhaustive bounded strategy-tree oracle, independent of the builtin's
// counting-function game: the system survives `depth` rounds iff for every
// input valuation it can pick an output valuation keeping the subset of
// live Büchi states (of A -> G) nonempty. Specs whose automaton admits no
// live run at all are doomed immediately.
class StrategyTreeOracle {
public:
    StrategyTreeOracle(const Spec& s, int stateCap)
        : automaton_(automata::pruneToLive(
              automata::ltlToBuchi(normalizeToCore(s.implicationFormula()),
                                   s.alphabet(), stateCap))) {
        const Alphabet& ab = automaton_.alphabet;
        for (const auto& name : s.inputs) inputBits_.push_back(ab.index(name));
        for (const auto& name : s.outputs) outputBits_.push_back(ab.index(name));
    }

    bool survives(int depth) const {
        std::vector<char> initial(static_cast<size_t>(automaton_.stateCount), 0);
        for (int s : automaton_.initialStates) initial[static_cast<size_t>(s)] = 1;
        return survives(initial, depth);
    }

private:
    static Valuation compose(const std::vector<int>& bits, uint64_t choice) {
        Valuation v = 0;
        for (size_t i = 0; i < bits.size(); ++i)
            if ((choice >> i) & 1u) v |= Valuation(1) << bits[i];
        return v;
    }

    std::vector<char> step(const std::vector<char>& subset, Valuation v) const {
        std::vector<char> next(subset.size(), 0);
        for (int s = 0; s < automaton_.stateCount; ++s) {
            if (!subset[static_cast<size_t>(s)]) continue;
            for (const auto& [label, dst] : automaton_.edges[static_cast<size_t>(s)])
                if (label.matches(v)) next[static_cast<size_t>(dst)] = 1;
        }
        return next;
    }

    bool survives(const std::vector<char>& subset, int depth) const {
        bool alive = false;
        for (char c : subset) alive = alive || c;
        if (!alive) return false;
        if (depth == 0) return true;
        for (uint64_t in = 0; in < (uint64_t(1) << inputBits_.size()); ++in) {
            bool answered = false;
            for (uint64_t out = 0; !answered && out < (uint64_t(1) << outputBits_.size());
                 ++out) {
                Valuation v = compose(inputBits_, in) | compose(outputBits_, out);
                answered = survives(step(subset, v), depth - 1);
            }
            if (!answered) return false;
        }
        return true;
    }

    automata::NondetAutomaton automaton_;
    std::vector<int> inputBits_;
    std::vector<int> outputBits_;
};

Outcome criterionA9(const Spec& arbiter, const Spec& arbiterGfa) {
    auto t0 = Clock::now();
    analysis::BackendConfig backend;
    Spec echo = microSpec({}, {"G (y <-> x)"});
    Spec predict = microSpec({}, {"G (y <-> X (x))"});
    Spec doomed = microSpec({}, {"false"});

    auto verdict = [&](const Spec& s) { return analysis::checkRealizability(s, backend); };
    bool builtinOk = verdict(echo).isRealizable() && verdict(predict).isUnrealizable() &&
                     verdict(doomed).isUnrealizable() &&
                     verdict(arbiter).isUnrealizable() &&
                     verdict(arbiterGfa).isRealizable();

    // The depth-3 strategy-tree oracle must agree with the builtin verdicts
    // on the three micro cases: realizable specs survive, these unrealizable
    // ones are eliminated within three rounds.
    bool oracleOk = StrategyTreeOracle(echo, 100000).survives(3) &&
                    !StrategyTreeOracle(predict, 100000).survives(3) &&
                    !StrategyTreeOracle(doomed, 100000).survives(3);

    double secs = secondsSince(t0);
    std::ostringstream d;
    d << "builtin verdicts " << (builtinOk ? "all correct" : "WRONG")
      << "; strategy-tree oracle " << (oracleOk ? "agrees" : "DISAGREES")
      << " on the micro-suite (<2min)";
    return {builtinOk && oracleOk && secs < 120.0, d.str()};
}

} // namespace

int main() {
    int failures = 0;
    auto run = [&](const char* id, auto&& fn) {
        auto t0 = Clock::now();
        Outcome r;
        try {
            r = fn();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        if (!r.pass) ++failures;
        std::printf("%s %s %8.2fs  %s\n", id, r.pass ? "PASS" : "FAIL",
                    secondsSince(t0), r.detail.c_str());
        std::fflush(stdout);
    };

    run("A1", criterionA1);
    run("A2", criterionA2);
    run("A3", criterionA3);
    run("A4", criterionA4);

    try {
        Spec arbiter = harness::loadSpecFile(fixturePath("arbiter.spec")).spec;
        Spec fixGfa = harness::loadSpecFile(fixturePath("arbiter_gfa.spec")).spec;
        Spec fixMutex = harness::loadSpecFile(fixturePath("arbiter_mutex.spec")).spec;
        PairedRuns runs = runPairedExperiments(arbiter);
        run("A5", [&] { return criterionA5(runs, fixGfa, fixMutex); });
        run("A6", [&] { return criterionA6(runs); });
        run("A7", [&] { return criterionA7(runs); });
        run("A8", criterionA8);
        run("A9", [&] { return criterionA9(arbiter, fixGfa); });
    } catch (const std::exception& e) {
        std::printf("A5-A9 FAIL fixture setup failed: %s\n", e.what());
        failures += 5;
    }

    std::printf("%d/9 criteria passed\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}
