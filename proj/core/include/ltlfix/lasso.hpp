#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ltlfix/formula.hpp"

namespace ltlfix {

// A valuation over an Alphabet, encoded as a bit mask: bit i is the truth
// value of alphabet.names()[i]. Canonical integer form in [0, 2^|AP|).
using Valuation = uint32_t;

// Sorted, deduplicated atom names; fixes the bit layout of Valuation.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);

    const std::vector<std::string>& names() const noexcept { return names_; }
    int size() const noexcept { return static_cast<int>(names_.size()); }
    int index(const std::string& name) const; // -1 if absent
    bool contains(const std::string& name) const { return index(name) >= 0; }
    uint64_t valuationCount() const { return uint64_t{1} << names_.size(); }

    bool operator==(const Alphabet& other) const { return names_ == other.names_; }

private:
    std::vector<std::string> names_;
};

// Ultimately periodic word: base[0..k-1] followed by base[loop..k-1] forever.
// Position i >= k denotes base[loop + ((i - loop) mod (k - loop))].
struct LassoWord {
    Alphabet alphabet;
    std::vector<Valuation> base; // length k >= 1
    int loop = 0;                // 0 <= loop < k
};

// Truth of f on the infinite word induced by w, via two-pass fixed-point
// evaluation of the temporal operators over the k positions.
// Throws std::invalid_argument if atoms of f are outside w.alphabet or the
// lasso shape is invalid.
bool evaluateOnLasso(const FormulaPtr& f, const LassoWord& w);

// Compiled form of a formula for bulk evaluation over many lassos of one
// alphabet: flattens the AST into a post-order program once, then evaluates
// with reused buffers. Not thread-safe; use one instance per thread.
class LassoEvaluator {
public:
    LassoEvaluator(const FormulaPtr& f, const Alphabet& alphabet);

    bool evaluate(const std::vector<Valuation>& base, int loop);

private:
    struct Instr {
        Op op;
        int a = -1;      // child register (left)
        int b = -1;      // child register (right)
        int atomBit = -1;
    };
    std::vector<Instr> prog_;            // children precede parents
    std::vector<std::vector<char>> regs_; // one truth table per instruction
};

} // namespace ltlfix
