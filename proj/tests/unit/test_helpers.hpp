// Shared helpers for the unit suites: an independent lasso-semantics oracle
// (direct position-walk evaluation, nothing shared with the library's
// fixed-point evaluator) and small generators.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "ltlfix/automaton.hpp"
#include "ltlfix/formula.hpp"
#include "ltlfix/lasso.hpp"

namespace testutil {

using ltlfix::Alphabet;
using ltlfix::FormulaPtr;
using ltlfix::Op;
using ltlfix::Valuation;

// Successor position on the lasso base[0..k-1] with loop index `loop`.
inline int lassoSucc(int i, int k, int loop) { return i + 1 < k ? i + 1 : loop; }

// The deterministic walk from position i visits every reachable position
// within (k - i) + (k - loop) steps; after that both position and valuation
// repeat, so any temporal obligation unresolved by then never resolves.
inline int walkLength(int i, int k, int loop) { return (k - i) + (k - loop); }

// Direct recursive evaluation of f at position i of the lasso.
inline bool oracleEval(const FormulaPtr& f, const ltlfix::LassoWord& w, int i) {
    int k = static_cast<int>(w.base.size());
    switch (f->op()) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom: {
        int bit = w.alphabet.index(f->atomName());
        return (w.base[static_cast<size_t>(i)] >> bit) & 1u;
    }
    case Op::Not: return !oracleEval(f->left(), w, i);
    case Op::Next: return oracleEval(f->left(), w, lassoSucc(i, k, w.loop));
    case Op::And: return oracleEval(f->left(), w, i) && oracleEval(f->right(), w, i);
    case Op::Or: return oracleEval(f->left(), w, i) || oracleEval(f->right(), w, i);
    case Op::Implies: return !oracleEval(f->left(), w, i) || oracleEval(f->right(), w, i);
    case Op::Iff: return oracleEval(f->left(), w, i) == oracleEval(f->right(), w, i);
    case Op::Finally: {
        int j = i;
        for (int s = 0; s < walkLength(i, k, w.loop); ++s, j = lassoSucc(j, k, w.loop))
            if (oracleEval(f->left(), w, j)) return true;
        return false;
    }
    case Op::Globally: {
        int j = i;
        for (int s = 0; s < walkLength(i, k, w.loop); ++s, j = lassoSucc(j, k, w.loop))
            if (!oracleEval(f->left(), w, j)) return false;
        return true;
    }
    case Op::Until: {
        int j = i;
        for (int s = 0; s < walkLength(i, k, w.loop); ++s, j = lassoSucc(j, k, w.loop)) {
            if (oracleEval(f->right(), w, j)) return true;
            if (!oracleEval(f->left(), w, j)) return false;
        }
        return false; // right never holds on any reachable position
    }
    case Op::WeakUntil: {
        int j = i;
        for (int s = 0; s < walkLength(i, k, w.loop); ++s, j = lassoSucc(j, k, w.loop)) {
            if (oracleEval(f->right(), w, j)) return true;
            if (!oracleEval(f->left(), w, j)) return false;
        }
        return true; // left held everywhere reachable
    }
    case Op::Release: {
        // left releases right: right holds up to and including the first
        // position where left holds; if left never holds, right forever.
        int j = i;
        for (int s = 0; s < walkLength(i, k, w.loop); ++s, j = lassoSucc(j, k, w.loop)) {
            if (!oracleEval(f->right(), w, j)) return false;
            if (oracleEval(f->left(), w, j)) return true;
        }
        return true;
    }
    }
    return false;
}

inline bool oracleEval(const FormulaPtr& f, const ltlfix::LassoWord& w) {
    return oracleEval(f, w, 0);
}

// All (base, loop) lassos of length exactly k over the alphabet.
inline std::vector<ltlfix::LassoWord> allLassos(const Alphabet& alphabet, int k) {
    std::vector<ltlfix::LassoWord> out;
    uint64_t words = 1;
    for (int i = 0; i < k; ++i) words *= alphabet.valuationCount();
    for (uint64_t enc = 0; enc < words; ++enc) {
        std::vector<Valuation> base(static_cast<size_t>(k));
        uint64_t rest = enc;
        for (int i = 0; i < k; ++i) {
            base[static_cast<size_t>(i)] = static_cast<Valuation>(rest % alphabet.valuationCount());
            rest /= alphabet.valuationCount();
        }
        for (int loop = 0; loop < k; ++loop)
            out.push_back(ltlfix::LassoWord{alphabet, base, loop});
    }
    return out;
}

// Brute-force nondeterministic-automaton membership for a finite word:
// subset simulation, accepting iff some reachable end state is final.
inline bool nfaAcceptsWord(const ltlfix::automata::NondetAutomaton& a,
                           const std::vector<Valuation>& word) {
    std::vector<char> cur(static_cast<size_t>(a.stateCount), 0);
    for (int s : a.initialStates) cur[static_cast<size_t>(s)] = 1;
    for (Valuation v : word) {
        std::vector<char> nxt(static_cast<size_t>(a.stateCount), 0);
        for (int s = 0; s < a.stateCount; ++s) {
            if (!cur[static_cast<size_t>(s)]) continue;
            for (const auto& [label, dst] : a.edges[static_cast<size_t>(s)])
                if (label.matches(v)) nxt[static_cast<size_t>(dst)] = 1;
        }
        cur.swap(nxt);
    }
    for (int s = 0; s < a.stateCount; ++s)
        if (cur[static_cast<size_t>(s)] && a.isAccepting(s)) return true;
    return false;
}

// All words of length exactly n over the alphabet, lexicographic.
inline std::vector<std::vector<Valuation>> allWords(const Alphabet& alphabet, int n) {
    std::vector<std::vector<Valuation>> out;
    uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= alphabet.valuationCount();
    for (uint64_t enc = 0; enc < total; ++enc) {
        std::vector<Valuation> w(static_cast<size_t>(n));
        uint64_t rest = enc;
        for (int i = 0; i < n; ++i) {
            w[static_cast<size_t>(i)] = static_cast<Valuation>(rest % alphabet.valuationCount());
            rest /= alphabet.valuationCount();
        }
        out.push_back(std::move(w));
    }
    return out;
}

} // namespace testutil
