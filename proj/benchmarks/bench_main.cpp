#include <benchmark/benchmark.h>

#include <random>

#include "ltlfix/analysis.hpp"
#include "ltlfix/automaton.hpp"
#include "ltlfix/counting.hpp"
#include "ltlfix/formula.hpp"
#include "ltlfix/harness.hpp"
#include "ltlfix/repair.hpp"
#include "ltlfix/spec.hpp"

using namespace ltlfix;

namespace {

Spec arbiterSpec() {
    Spec s;
    s.name = "arbiter";
    s.inputs = {"r1", "r2", "a"};
    s.outputs = {"g1", "g2"};
    s.guarantees = {parse("G (r1 -> F (g1))"), parse("G (r2 -> F (g2))"),
                    parse("G (! a -> (! g1 && ! g2))")};
    return s;
}

} // namespace

// Full approximate-counting pipeline (tableau through matrix power) at
// growing bounds; the automaton is rebuilt every iteration.
static void BM_CountModelsApprox(benchmark::State& state) {
    Alphabet ab({"p", "q"});
    FormulaPtr f = parse("G (p -> X q)");
    uint64_t k = static_cast<uint64_t>(state.range(0));
    for (auto _ : state) {
        counting::BigInt n = counting::countModelsApprox(f, k, ab);
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_CountModelsApprox)->RangeMultiplier(4)->Range(4, 1024);

// Matrix power alone, isolating the big-integer arithmetic cost.
static void BM_MatrixPower(benchmark::State& state) {
    Alphabet ab({"p", "q"});
    FormulaPtr f = normalizeToCore(parse("G (p -> X q)"));
    automata::DetAutomaton d = automata::minimize(
        automata::determinize(automata::finitize(automata::ltlToBuchi(f, ab))));
    counting::TransferMatrix t = counting::buildTransferMatrix(d);
    uint64_t k = static_cast<uint64_t>(state.range(0));
    for (auto _ : state) {
        auto p = counting::matrixPower(t, k);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_MatrixPower)->RangeMultiplier(8)->Range(8, 32768);

// Tableau construction for formulas of growing syntactic size.
static void BM_LtlToBuchi(benchmark::State& state) {
    Alphabet ab({"p", "q"});
    std::mt19937_64 rng(11);
    FormulaPtr f = normalizeToCore(
        harness::randomFormula(rng, ab.names(), static_cast<int>(state.range(0))));
    for (auto _ : state) {
        automata::NondetAutomaton b = automata::ltlToBuchi(f, ab);
        benchmark::DoNotOptimize(b.stateCount);
    }
    state.SetLabel("size " + std::to_string(formulaSize(f)));
}
BENCHMARK(BM_LtlToBuchi)->DenseRange(2, 6);

// Bounded realizability of the unrealizable arbiter at growing bounds.
static void BM_BoundedRealizability(benchmark::State& state) {
    Spec arbiter = arbiterSpec();
    int maxBound = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto v = analysis::builtinBoundedRealizability(arbiter, maxBound);
        benchmark::DoNotOptimize(v.kind);
    }
}
BENCHMARK(BM_BoundedRealizability)->DenseRange(1, 6);

// Exact lasso enumeration, the oracle the approximation is calibrated on.
static void BM_CountLassosExact(benchmark::State& state) {
    Alphabet ab({"p", "q"});
    FormulaPtr f = parse("G (p -> X q)");
    uint64_t k = static_cast<uint64_t>(state.range(0));
    for (auto _ : state) {
        counting::BigInt n = counting::countLassosExact(f, k, ab);
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_CountLassosExact)->DenseRange(2, 8);

// One full fitness evaluation (realizability + both similarities) of the
// unmodified arbiter against itself.
static void BM_EvaluateFitness(benchmark::State& state) {
    Spec arbiter = arbiterSpec();
    repair::GAConfig cfg;
    analysis::BackendConfig backend;
    counting::ModelCounter counter(arbiter.alphabet(), cfg.stateCap, cfg.matrixCap);
    for (auto _ : state) {
        analysis::AnalysisCache cache; // fresh cache: measure real work
        repair::Individual ind;
        ind.spec = arbiter;
        repair::evaluateFitness(ind, arbiter, cfg, backend, cache, counter);
        benchmark::DoNotOptimize(ind.fitness.combined);
    }
}
BENCHMARK(BM_EvaluateFitness);

BENCHMARK_MAIN();
