#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "ltlfix/automaton.hpp"
#include "ltlfix/formula.hpp"
#include "ltlfix/lasso.hpp"

namespace ltlfix::counting {

using BigInt = boost::multiprecision::cpp_int;

// Transfer matrix of a deterministic automaton: entry[i][j] counts the
// concrete valuations taking state i to state j; I marks the initial state,
// F the final states. I * T^k * F counts accepted words of length k.
struct TransferMatrix {
    int dimension = 0;
    std::vector<std::vector<BigInt>> entries; // dimension x dimension
    std::vector<BigInt> initialVector;        // 1 x dimension, 0/1
    std::vector<BigInt> finalVector;          // dimension x 1, 0/1
};

TransferMatrix buildTransferMatrix(const automata::DetAutomaton& d);

// Exact big-integer matrix power via repeated squaring; k = 0 gives identity.
std::vector<std::vector<BigInt>> matrixPower(const TransferMatrix& t, uint64_t k);

// I * T^k * F: number of length-k words accepted by the underlying DFA.
BigInt countPrefixes(const TransferMatrix& t, uint64_t k);

// Approximate model count of f at bound k: the number of length-k prefixes
// accepted by the finitized automaton of f. Pipeline: normalizeToCore ->
// ltlToBuchi -> finitize -> determinize -> minimize -> transfer matrix.
// Throws ResourceError when the automata exceed stateCap or the minimized
// transfer matrix would be larger than matrixCap x matrixCap.
BigInt countModelsApprox(const FormulaPtr& f, uint64_t k, const Alphabet& alphabet,
                         int stateCap = automata::kDefaultStateCap, int matrixCap = 4096);

// Exact count of lasso traces (base of length k, loop index l) whose induced
// infinite word satisfies f. Guarded: throws ResourceError when
// 2^(|AP|*k) * k enumeration is infeasible.
BigInt countLassosExact(const FormulaPtr& f, uint64_t k, const Alphabet& alphabet);

enum class CountMode { Approx, Exact };

// Indices of `formulas` in ascending count order; ties keep input order.
std::vector<size_t> rankByCount(const std::vector<FormulaPtr>& formulas, uint64_t k,
                                CountMode mode, const Alphabet& alphabet);

// Memoizing wrapper around countModelsApprox for one alphabet. Thread-safe;
// shared across a repair run so repeated #(S, k) queries are free.
class ModelCounter {
public:
    explicit ModelCounter(Alphabet alphabet, int stateCap = automata::kDefaultStateCap,
                          int matrixCap = 4096)
        : alphabet_(std::move(alphabet)), stateCap_(stateCap), matrixCap_(matrixCap) {}

    BigInt countApprox(const FormulaPtr& f, uint64_t k);
    const Alphabet& alphabet() const { return alphabet_; }
    size_t cacheSize() const;

private:
    Alphabet alphabet_;
    int stateCap_;
    int matrixCap_;
    mutable std::mutex mutex_;
    std::unordered_map<std::string, BigInt> cache_;
};

} // namespace ltlfix::counting
