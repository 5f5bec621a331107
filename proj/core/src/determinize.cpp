#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "ltlfix/automaton.hpp"

namespace ltlfix::automata {

DetAutomaton determinize(const NondetAutomaton& finite, int stateCap) {
    if (finite.kind != Kind::Finite) {
        throw std::invalid_argument("determinize: expects a finite-word automaton");
    }
    const uint64_t vals = finite.alphabet.valuationCount();
    DetAutomaton d;
    d.alphabet = finite.alphabet;

    std::map<std::vector<int>, int> subsetId;
    std::vector<std::vector<int>> subsets;
    auto getId = [&](std::vector<int> subset) {
        auto [it, fresh] = subsetId.try_emplace(std::move(subset), static_cast<int>(subsets.size()));
        if (fresh) {
            subsets.push_back(it->first);
            if (static_cast<int>(subsets.size()) > stateCap) {
                throw ResourceError("determinization exceeds state cap");
            }
        }
        return it->second;
    };

    std::vector<int> init = finite.initialStates;
    std::sort(init.begin(), init.end());
    init.erase(std::unique(init.begin(), init.end()), init.end());
    d.initialState = getId(std::move(init)); // possibly the empty subset (sink)

    std::vector<int> next;
    for (size_t s = 0; s < subsets.size(); ++s) {
        const std::vector<int> subset = subsets[s]; // copy: subsets grows below
        for (Valuation v = 0; v < vals; ++v) {
            std::vector<int> target;
            for (int q : subset) {
                for (const auto& [lbl, t] : finite.edges[q]) {
                    if (lbl.matches(v)) target.push_back(t);
                }
            }
            std::sort(target.begin(), target.end());
            target.erase(std::unique(target.begin(), target.end()), target.end());
            next.push_back(getId(std::move(target)));
        }
    }

    d.stateCount = static_cast<int>(subsets.size());
    d.next = std::move(next);
    d.next.resize(static_cast<size_t>(d.stateCount) * vals); // in case sink appeared last
    // Any subset discovered after the main loop ended is the empty subset;
    // make it total (self-loops) and locate the sink.
    for (int s = 0; s < d.stateCount; ++s) {
        if (subsets[s].empty()) {
            d.sinkState = s;
            for (Valuation v = 0; v < vals; ++v) {
                d.next[static_cast<size_t>(s) * vals + v] = s;
            }
        }
    }
    d.finalStates.assign(d.stateCount, 0);
    for (int s = 0; s < d.stateCount; ++s) {
        for (int q : subsets[s]) {
            if (finite.accepting[q]) d.finalStates[s] = 1;
        }
    }
    return d;
}

namespace {

// Moore partition refinement: split classes by (finality, successor-class
// signature) until stable. Computes the exact Myhill-Nerode classes of a
// reachable, total DFA.
std::vector<int> refineClasses(const DetAutomaton& d) {
    const int n = d.stateCount;
    const int vals = static_cast<int>(d.alphabet.valuationCount());

    std::vector<int> cls(n);
    for (int s = 0; s < n; ++s) cls[s] = d.finalStates[s] ? 1 : 0;

    std::vector<int> sig;
    sig.reserve(static_cast<size_t>(vals) + 1);
    while (true) {
        std::map<std::vector<int>, int> sigId;
        std::vector<int> next(n);
        for (int s = 0; s < n; ++s) {
            sig.clear();
            sig.push_back(cls[s]);
            for (int v = 0; v < vals; ++v) sig.push_back(cls[d.step(s, static_cast<Valuation>(v))]);
            auto [it, fresh] = sigId.try_emplace(sig, static_cast<int>(sigId.size()));
            next[s] = it->second;
        }
        if (next == cls) break;
        cls = std::move(next);
    }
    return cls;
}

} // namespace

DetAutomaton minimize(const DetAutomaton& d) {
    const uint64_t vals = d.alphabet.valuationCount();
    for (int x : d.next) {
        if (x < 0) throw std::invalid_argument("minimize: automaton must be total");
    }
    // Drop unreachable states first.
    std::vector<char> reach(d.stateCount, 0);
    std::vector<int> work{d.initialState};
    reach[d.initialState] = 1;
    while (!work.empty()) {
        int s = work.back();
        work.pop_back();
        for (Valuation v = 0; v < vals; ++v) {
            int t = d.step(s, v);
            if (!reach[t]) {
                reach[t] = 1;
                work.push_back(t);
            }
        }
    }
    DetAutomaton r;
    r.alphabet = d.alphabet;
    std::vector<int> remap(d.stateCount, -1);
    for (int s = 0; s < d.stateCount; ++s) {
        if (reach[s]) remap[s] = r.stateCount++;
    }
    r.finalStates.assign(r.stateCount, 0);
    r.next.assign(static_cast<size_t>(r.stateCount) * vals, -1);
    for (int s = 0; s < d.stateCount; ++s) {
        if (remap[s] < 0) continue;
        r.finalStates[remap[s]] = d.finalStates[s];
        for (Valuation v = 0; v < vals; ++v) {
            r.next[static_cast<size_t>(remap[s]) * vals + v] = remap[d.step(s, v)];
        }
    }
    r.initialState = remap[d.initialState];

    std::vector<int> cls = refineClasses(r);
    int classCount = *std::max_element(cls.begin(), cls.end()) + 1;

    // Renumber classes in BFS order from the initial class for stable output.
    DetAutomaton m;
    m.alphabet = d.alphabet;
    m.minimized = true;
    std::vector<int> classRep(classCount, -1);
    for (int s = 0; s < r.stateCount; ++s) {
        if (classRep[cls[s]] == -1) classRep[cls[s]] = s;
    }
    std::vector<int> order(classCount, -1);
    std::vector<int> bfs{cls[r.initialState]};
    order[cls[r.initialState]] = 0;
    m.stateCount = 1;
    for (size_t i = 0; i < bfs.size(); ++i) {
        int c = bfs[i];
        int rep = classRep[c];
        for (Valuation v = 0; v < vals; ++v) {
            int tc = cls[r.step(rep, v)];
            if (order[tc] == -1) {
                order[tc] = m.stateCount++;
                bfs.push_back(tc);
            }
        }
    }
    m.initialState = 0;
    m.finalStates.assign(m.stateCount, 0);
    m.next.assign(static_cast<size_t>(m.stateCount) * vals, -1);
    for (int c = 0; c < classCount; ++c) {
        if (order[c] == -1) continue; // class unreachable after merging
        int rep = classRep[c];
        m.finalStates[order[c]] = r.finalStates[rep];
        for (Valuation v = 0; v < vals; ++v) {
            m.next[static_cast<size_t>(order[c]) * vals + v] = order[cls[r.step(rep, v)]];
        }
    }
    // Locate the sink (unique non-final total trap) if one survived.
    m.sinkState = -1;
    for (int s = 0; s < m.stateCount; ++s) {
        if (m.finalStates[s]) continue;
        bool trap = true;
        for (Valuation v = 0; v < vals; ++v) {
            if (m.step(s, v) != s) trap = false;
        }
        if (trap) {
            m.sinkState = s;
            break;
        }
    }
    return m;
}

} // namespace ltlfix::automata
