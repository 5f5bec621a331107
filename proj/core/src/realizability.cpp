// Builtin bounded realizability: a counting-function safety game in the
// bounded-synthesis style. The protagonist must keep every run of a Büchi
// automaton below b+1 visits to accepting states; escalating b yields sound
// (if incomplete) verdicts for both players.
#include <algorithm>
#include <unordered_map>

#include "ltlfix/analysis.hpp"

namespace ltlfix::analysis {

namespace {

constexpr int kGameArenaCap = 50000;
constexpr int kGameAlphabetCap = 12; // 2^12 letters per round is already generous

std::vector<Valuation> subsetsOf(Valuation mask) {
    std::vector<Valuation> out;
    Valuation sub = 0;
    while (true) {
        out.push_back(sub);
        if (sub == mask) break;
        sub = (sub - mask) & mask; // next subset of mask in increasing order
    }
    std::sort(out.begin(), out.end());
    return out;
}

class BoundedGame {
public:
    // systemSide: protagonist controls outputs and moves second (checks the
    // automaton of !(A->G)); otherwise the protagonist is the environment,
    // controls inputs and moves first (automaton of A->G).
    BoundedGame(const Spec& s, bool systemSide, int stateCap) : systemSide_(systemSide) {
        Alphabet alphabet = s.alphabet();
        if (alphabet.size() > kGameAlphabetCap) {
            throw ResourceError("realizability game alphabet too large: " +
                                std::to_string(alphabet.size()) + " atoms");
        }
        FormulaPtr objective = systemSide
                                   ? Formula::unary(Op::Not, s.implicationFormula())
                                   : s.implicationFormula();
        nbw_ = automata::pruneToLive(automata::ltlToBuchi(objective, alphabet, stateCap));

        Valuation inMask = 0, outMask = 0;
        for (const auto& v : s.inputs) inMask |= Valuation{1} << alphabet.index(v);
        for (const auto& v : s.outputs) outMask |= Valuation{1} << alphabet.index(v);
        xs_ = subsetsOf(inMask);
        ys_ = subsetsOf(outMask);

        const size_t letterCount = xs_.size() * ys_.size();
        succ_.assign(static_cast<size_t>(nbw_.stateCount),
                     std::vector<std::vector<int>>(letterCount));
        for (int q = 0; q < nbw_.stateCount; ++q) {
            for (size_t xi = 0; xi < xs_.size(); ++xi) {
                for (size_t yi = 0; yi < ys_.size(); ++yi) {
                    Valuation letter = xs_[xi] | ys_[yi];
                    auto& targets = succ_[q][xi * ys_.size() + yi];
                    for (const auto& [lbl, t] : nbw_.edges[q]) {
                        if (lbl.matches(letter)) targets.push_back(t);
                    }
                }
            }
        }
    }

    // The objective automaton has an empty language: the protagonist wins
    // without playing (no run can ever accept).
    bool trivialWin() const { return automata::isEmptyLanguage(nbw_); }

    bool protagonistWins(int b) const {
        const int n = nbw_.stateCount;
        const size_t yCount = ys_.size();
        const size_t letterCount = xs_.size() * yCount;

        // Arena states are counting functions nbw-state -> {-1 (no run), 0..b}.
        std::vector<std::string> states;
        std::unordered_map<std::string, int> ids;
        auto getId = [&](const std::string& g) {
            auto [it, fresh] = ids.try_emplace(g, static_cast<int>(states.size()));
            if (fresh) {
                states.push_back(g);
                if (static_cast<int>(states.size()) > kGameArenaCap) {
                    throw ResourceError("realizability game arena exceeds cap");
                }
            }
            return it->second;
        };

        std::string g0(static_cast<size_t>(n), static_cast<char>(-1));
        for (int q : nbw_.initialStates) {
            g0[static_cast<size_t>(q)] = static_cast<char>(nbw_.isAccepting(q) ? 1 : 0);
        }
        getId(g0);

        constexpr int kOverflow = -2;
        std::vector<std::vector<int>> succIds; // [state][letter] -> id or kOverflow
        std::string g2(static_cast<size_t>(n), static_cast<char>(-1));
        for (size_t w = 0; w < states.size(); ++w) {
            const std::string g = states[w]; // copy: states grows below
            std::vector<int> row(letterCount, 0);
            for (size_t letter = 0; letter < letterCount; ++letter) {
                std::fill(g2.begin(), g2.end(), static_cast<char>(-1));
                bool overflow = false;
                for (int q = 0; q < n && !overflow; ++q) {
                    int c = static_cast<signed char>(g[static_cast<size_t>(q)]);
                    if (c < 0) continue;
                    for (int t : succ_[q][letter]) {
                        int c2 = c + (nbw_.isAccepting(t) ? 1 : 0);
                        if (c2 > b) {
                            overflow = true;
                            break;
                        }
                        if (c2 > static_cast<signed char>(g2[static_cast<size_t>(t)])) {
                            g2[static_cast<size_t>(t)] = static_cast<char>(c2);
                        }
                    }
                }
                row[letter] = overflow ? kOverflow : getId(g2);
            }
            succIds.push_back(std::move(row));
        }

        // Backward fixpoint of the antagonist attractor to overflow.
        std::vector<char> losing(states.size(), 0);
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t s = 0; s < states.size(); ++s) {
                if (losing[s]) continue;
                bool lost;
                if (systemSide_) {
                    // antagonist picks x, protagonist answers with y
                    lost = false;
                    for (size_t xi = 0; xi < xs_.size() && !lost; ++xi) {
                        bool escape = false;
                        for (size_t yi = 0; yi < yCount; ++yi) {
                            int t = succIds[s][xi * yCount + yi];
                            if (t != kOverflow && !losing[t]) {
                                escape = true;
                                break;
                            }
                        }
                        if (!escape) lost = true;
                    }
                } else {
                    // protagonist picks x, antagonist answers with y
                    lost = true;
                    for (size_t xi = 0; xi < xs_.size() && lost; ++xi) {
                        bool allSafe = true;
                        for (size_t yi = 0; yi < yCount; ++yi) {
                            int t = succIds[s][xi * yCount + yi];
                            if (t == kOverflow || losing[t]) {
                                allSafe = false;
                                break;
                            }
                        }
                        if (allSafe) lost = false;
                    }
                }
                if (lost) {
                    losing[s] = 1;
                    changed = true;
                }
            }
        }
        return !losing[0];
    }

private:
    bool systemSide_;
    automata::NondetAutomaton nbw_;
    std::vector<Valuation> xs_, ys_;
    std::vector<std::vector<std::vector<int>>> succ_; // [state][letter] -> targets
};

} // namespace

RealizabilityVerdict builtinBoundedRealizability(const Spec& s, int maxBound, int stateCap) {
    try {
        BoundedGame system(s, true, stateCap);
        BoundedGame environment(s, false, stateCap);
        // Empty objective languages decide the spec outright.
        if (system.trivialWin()) return RealizabilityVerdict::realizable();
        if (environment.trivialWin()) return RealizabilityVerdict::unrealizable();
        for (int b = 1; b <= maxBound; ++b) {
            if (system.protagonistWins(b)) return RealizabilityVerdict::realizable();
            if (environment.protagonistWins(b)) return RealizabilityVerdict::unrealizable();
        }
        return RealizabilityVerdict::unknown("bound-exhausted");
    } catch (const ResourceError& e) {
        return RealizabilityVerdict::unknown(std::string("resource-cap: ") + e.what());
    }
}

} // namespace ltlfix::analysis
