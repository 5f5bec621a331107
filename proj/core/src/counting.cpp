#include "ltlfix/counting.hpp"

#include <algorithm>
#include <numeric>

namespace ltlfix::counting {

TransferMatrix buildTransferMatrix(const automata::DetAutomaton& d) {
    TransferMatrix t;
    t.dimension = d.stateCount;
    t.entries.assign(d.stateCount, std::vector<BigInt>(d.stateCount, 0));
    t.initialVector.assign(d.stateCount, 0);
    t.finalVector.assign(d.stateCount, 0);
    if (d.stateCount == 0) return t;
    t.initialVector[d.initialState] = 1;
    const uint64_t vals = d.alphabet.valuationCount();
    for (int s = 0; s < d.stateCount; ++s) {
        t.finalVector[s] = d.finalStates[s] ? 1 : 0;
        for (Valuation v = 0; v < vals; ++v) {
            int tgt = d.step(s, v);
            if (tgt >= 0) t.entries[s][tgt] += 1;
        }
    }
    return t;
}

namespace {

using Matrix = std::vector<std::vector<BigInt>>;

Matrix multiply(const Matrix& a, const Matrix& b) {
    const size_t n = a.size();
    Matrix c(n, std::vector<BigInt>(n, 0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t l = 0; l < n; ++l) {
            if (a[i][l] == 0) continue;
            const BigInt& ail = a[i][l];
            for (size_t j = 0; j < n; ++j) {
                if (b[l][j] != 0) c[i][j] += ail * b[l][j];
            }
        }
    }
    return c;
}

Matrix identity(size_t n) {
    Matrix m(n, std::vector<BigInt>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

} // namespace

Matrix matrixPower(const TransferMatrix& t, uint64_t k) {
    Matrix result = identity(static_cast<size_t>(t.dimension));
    Matrix base = t.entries;
    while (k > 0) {
        if (k & 1) result = multiply(result, base);
        k >>= 1;
        if (k > 0) base = multiply(base, base);
    }
    return result;
}

BigInt countPrefixes(const TransferMatrix& t, uint64_t k) {
    if (t.dimension == 0) return 0;
    Matrix p = matrixPower(t, k);
    BigInt total = 0;
    for (int i = 0; i < t.dimension; ++i) {
        if (t.initialVector[i] == 0) continue;
        for (int j = 0; j < t.dimension; ++j) {
            if (t.finalVector[j] != 0) total += t.initialVector[i] * p[i][j] * t.finalVector[j];
        }
    }
    return total;
}

BigInt countModelsApprox(const FormulaPtr& f, uint64_t k, const Alphabet& alphabet,
                         int stateCap, int matrixCap) {
    using namespace automata;
    NondetAutomaton buchi = ltlToBuchi(f, alphabet, stateCap);
    NondetAutomaton finite = finitize(buchi);
    DetAutomaton dfa = minimize(determinize(finite, stateCap));
    if (dfa.stateCount > matrixCap) {
        throw ResourceError("countModelsApprox: transfer matrix dimension " +
                            std::to_string(dfa.stateCount) + " exceeds cap " +
                            std::to_string(matrixCap));
    }
    return countPrefixes(buildTransferMatrix(dfa), k);
}

BigInt countLassosExact(const FormulaPtr& f, uint64_t k, const Alphabet& alphabet) {
    const uint64_t ap = static_cast<uint64_t>(alphabet.size());
    const uint64_t bits = ap * k;
    // 2^bits bases, k loop indices each: keep the full enumeration sane.
    if (k < 1 || bits > 26 || (uint64_t{1} << bits) * k > (uint64_t{1} << 26)) {
        throw ResourceError("countLassosExact: 2^(|AP|*k)*k enumeration infeasible for |AP|=" +
                            std::to_string(ap) + ", k=" + std::to_string(k));
    }
    LassoEvaluator eval(f, alphabet);
    const Valuation valMask = static_cast<Valuation>((uint64_t{1} << ap) - 1);
    std::vector<Valuation> base(k);
    BigInt count = 0;
    const uint64_t baseCount = uint64_t{1} << bits;
    for (uint64_t code = 0; code < baseCount; ++code) {
        uint64_t c = code;
        for (uint64_t i = 0; i < k; ++i) {
            base[i] = static_cast<Valuation>(c) & valMask;
            c >>= ap;
        }
        for (uint64_t l = 0; l < k; ++l) {
            if (eval.evaluate(base, static_cast<int>(l))) ++count;
        }
    }
    return count;
}

std::vector<size_t> rankByCount(const std::vector<FormulaPtr>& formulas, uint64_t k,
                                CountMode mode, const Alphabet& alphabet) {
    std::vector<BigInt> counts;
    counts.reserve(formulas.size());
    for (const FormulaPtr& f : formulas) {
        counts.push_back(mode == CountMode::Approx ? countModelsApprox(f, k, alphabet)
                                                   : countLassosExact(f, k, alphabet));
    }
    std::vector<size_t> order(formulas.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return counts[a] < counts[b]; });
    return order;
}

BigInt ModelCounter::countApprox(const FormulaPtr& f, uint64_t k) {
    std::string key = print(f) + "\x1f" + std::to_string(k);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    BigInt result = countModelsApprox(f, k, alphabet_, stateCap_, matrixCap_);
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, fresh] = cache_.try_emplace(std::move(key), std::move(result));
    return it->second;
}

size_t ModelCounter::cacheSize() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.size();
}

} // namespace ltlfix::counting
