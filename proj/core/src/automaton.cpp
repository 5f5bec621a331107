#include "ltlfix/automaton.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <sstream>

#include "graph_util.hpp"

namespace ltlfix::automata {

uint64_t EdgeLabel::concreteCount(int apSize) const {
    int fixed = std::popcount(posMask | negMask);
    return uint64_t{1} << (apSize - fixed);
}

bool DetAutomaton::acceptsWord(const std::vector<Valuation>& word) const {
    int s = initialState;
    for (Valuation v : word) {
        s = step(s, v);
        if (s < 0) return false;
    }
    return finalStates[static_cast<size_t>(s)] != 0;
}

namespace {

std::vector<char> forwardReachable(const NondetAutomaton& a) {
    std::vector<char> seen(a.stateCount, 0);
    std::vector<int> work;
    for (int s : a.initialStates) {
        if (!seen[s]) {
            seen[s] = 1;
            work.push_back(s);
        }
    }
    while (!work.empty()) {
        int s = work.back();
        work.pop_back();
        for (const auto& [lbl, t] : a.edges[s]) {
            if (!seen[t]) {
                seen[t] = 1;
                work.push_back(t);
            }
        }
    }
    return seen;
}

NondetAutomaton restrictTo(const NondetAutomaton& a, const std::vector<char>& keep, Kind kind) {
    NondetAutomaton out;
    out.kind = kind;
    out.alphabet = a.alphabet;
    std::vector<int> remap(a.stateCount, -1);
    for (int s = 0; s < a.stateCount; ++s) {
        if (keep[s]) remap[s] = out.stateCount++;
    }
    out.accepting.assign(out.stateCount, 0);
    out.edges.resize(out.stateCount);
    for (int s = 0; s < a.stateCount; ++s) {
        if (remap[s] < 0) continue;
        out.accepting[remap[s]] = a.accepting[s];
        for (const auto& [lbl, t] : a.edges[s]) {
            if (remap[t] >= 0) out.edges[remap[s]].emplace_back(lbl, remap[t]);
        }
    }
    for (int s : a.initialStates) {
        if (remap[s] >= 0) out.initialStates.push_back(remap[s]);
    }
    return out;
}

std::vector<char> canReach(const NondetAutomaton& a, const std::vector<char>& targets) {
    // backward reachability over reversed edges
    std::vector<std::vector<int>> rev(a.stateCount);
    for (int s = 0; s < a.stateCount; ++s) {
        for (const auto& [lbl, t] : a.edges[s]) rev[t].push_back(s);
    }
    std::vector<char> seen(a.stateCount, 0);
    std::vector<int> work;
    for (int s = 0; s < a.stateCount; ++s) {
        if (targets[s]) {
            seen[s] = 1;
            work.push_back(s);
        }
    }
    while (!work.empty()) {
        int s = work.back();
        work.pop_back();
        for (int p : rev[s]) {
            if (!seen[p]) {
                seen[p] = 1;
                work.push_back(p);
            }
        }
    }
    return seen;
}

// States lying on a cycle that passes through an accepting state.
std::vector<char> acceptingCycleStates(const NondetAutomaton& a) {
    std::vector<std::vector<int>> adj(a.stateCount);
    for (int s = 0; s < a.stateCount; ++s) {
        for (const auto& [lbl, t] : a.edges[s]) adj[s].push_back(t);
    }
    auto [compCount, comp] = tarjanSCC(adj);
    // An SCC is cyclic if it has more than one state or a self-loop.
    std::vector<char> cyclic(compCount, 0), hasAcc(compCount, 0), sizeGt1(compCount, 0);
    std::vector<int> first(compCount, -1);
    for (int s = 0; s < a.stateCount; ++s) {
        int c = comp[s];
        if (first[c] == -1) first[c] = s;
        else sizeGt1[c] = 1;
        if (a.accepting[s]) hasAcc[c] = 1;
    }
    for (int s = 0; s < a.stateCount; ++s) {
        for (const auto& [lbl, t] : a.edges[s]) {
            if (comp[t] == comp[s] && (t == s || sizeGt1[comp[s]])) cyclic[comp[s]] = 1;
        }
    }
    std::vector<char> result(a.stateCount, 0);
    for (int s = 0; s < a.stateCount; ++s) {
        result[s] = cyclic[comp[s]] && hasAcc[comp[s]];
    }
    return result;
}

} // namespace

NondetAutomaton finitize(const NondetAutomaton& buchi) {
    // Keep states that are reachable and can still reach an accepting state;
    // acceptance switches from Büchi to finite-final interpretation.
    std::vector<char> acc(buchi.accepting.begin(), buchi.accepting.end());
    std::vector<char> live = canReach(buchi, acc);
    std::vector<char> reach = forwardReachable(buchi);
    std::vector<char> keep(buchi.stateCount, 0);
    for (int s = 0; s < buchi.stateCount; ++s) keep[s] = live[s] && reach[s];
    return restrictTo(buchi, keep, Kind::Finite);
}

NondetAutomaton pruneToLive(const NondetAutomaton& buchi) {
    // A run is accepting iff it eventually stays inside states that can reach
    // an accepting cycle, so dropping the rest preserves the language.
    std::vector<char> core = acceptingCycleStates(buchi);
    std::vector<char> keep = canReach(buchi, core);
    return restrictTo(buchi, keep, Kind::Buchi);
}

bool isEmptyLanguage(const NondetAutomaton& buchi) {
    std::vector<char> core = acceptingCycleStates(buchi);
    std::vector<char> reach = forwardReachable(buchi);
    for (int s = 0; s < buchi.stateCount; ++s) {
        if (core[s] && reach[s]) return false;
    }
    return true;
}

bool acceptsLasso(const NondetAutomaton& buchi, const std::vector<Valuation>& base, int loop) {
    const int k = static_cast<int>(base.size());
    if (k < 1 || loop < 0 || loop >= k) {
        throw std::invalid_argument("acceptsLasso: invalid lasso shape");
    }
    // Product of the lasso positions with the automaton; node = pos * N + q.
    const int n = buchi.stateCount;
    NondetAutomaton prod;
    prod.kind = Kind::Buchi;
    prod.stateCount = k * n;
    prod.accepting.assign(prod.stateCount, 0);
    prod.edges.resize(prod.stateCount);
    auto succPos = [&](int i) { return i + 1 < k ? i + 1 : loop; };
    for (int i = 0; i < k; ++i) {
        for (int q = 0; q < n; ++q) {
            prod.accepting[i * n + q] = buchi.accepting[q];
            for (const auto& [lbl, t] : buchi.edges[q]) {
                if (lbl.matches(base[i])) {
                    prod.edges[i * n + q].emplace_back(EdgeLabel{}, succPos(i) * n + t);
                }
            }
        }
    }
    for (int q0 : buchi.initialStates) prod.initialStates.push_back(q0);
    return !isEmptyLanguage(prod);
}

std::string exportAutomaton(const NondetAutomaton& a) {
    std::ostringstream os;
    os << (a.kind == Kind::Buchi ? "buchi" : "finite") << " states: " << a.stateCount << "\n";
    os << "alphabet:";
    for (const auto& n : a.alphabet.names()) os << ' ' << n;
    os << "\ninitial:";
    for (int s : a.initialStates) os << ' ' << s;
    os << "\naccepting:";
    for (int s = 0; s < a.stateCount; ++s) {
        if (a.accepting[s]) os << ' ' << s;
    }
    os << "\n";
    for (int s = 0; s < a.stateCount; ++s) {
        for (const auto& [lbl, t] : a.edges[s]) {
            os << s << " -> " << t << " [";
            bool any = false;
            for (int b = 0; b < a.alphabet.size(); ++b) {
                if (lbl.posMask & (Valuation{1} << b)) {
                    os << (any ? " & " : "") << a.alphabet.names()[b];
                    any = true;
                }
                if (lbl.negMask & (Valuation{1} << b)) {
                    os << (any ? " & " : "") << '!' << a.alphabet.names()[b];
                    any = true;
                }
            }
            if (!any) os << "true";
            os << "]\n";
        }
    }
    return os.str();
}

std::string exportAutomaton(const DetAutomaton& d) {
    std::ostringstream os;
    os << "dfa states: " << d.stateCount << (d.minimized ? " (minimized)" : "") << "\n";
    os << "alphabet:";
    for (const auto& n : d.alphabet.names()) os << ' ' << n;
    os << "\ninitial: " << d.initialState << "\nfinal:";
    for (int s = 0; s < d.stateCount; ++s) {
        if (d.finalStates[s]) os << ' ' << s;
    }
    os << "\nsink: " << d.sinkState << "\n";
    const uint64_t vals = d.alphabet.valuationCount();
    for (int s = 0; s < d.stateCount; ++s) {
        for (Valuation v = 0; v < vals; ++v) {
            int t = d.step(s, v);
            if (t >= 0) os << s << " -" << v << "-> " << t << "\n";
        }
    }
    return os.str();
}

} // namespace ltlfix::automata
