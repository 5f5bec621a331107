#pragma once

#include <vector>

namespace ltlfix::automata {

// Iterative Tarjan SCC. Returns (componentCount, componentOf); component ids
// are assigned in reverse topological order of the condensation.
inline std::pair<int, std::vector<int>> tarjanSCC(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> comp(n, -1), low(n, 0), idx(n, -1), stack;
    std::vector<char> onStack(n, 0);
    int nextIndex = 0, compCount = 0;

    struct Frame {
        int v;
        size_t edge;
    };
    std::vector<Frame> call;
    for (int root = 0; root < n; ++root) {
        if (idx[root] != -1) continue;
        call.push_back({root, 0});
        idx[root] = low[root] = nextIndex++;
        stack.push_back(root);
        onStack[root] = 1;
        while (!call.empty()) {
            Frame& fr = call.back();
            if (fr.edge < adj[fr.v].size()) {
                int w = adj[fr.v][fr.edge++];
                if (idx[w] == -1) {
                    idx[w] = low[w] = nextIndex++;
                    stack.push_back(w);
                    onStack[w] = 1;
                    call.push_back({w, 0});
                } else if (onStack[w] && idx[w] < low[fr.v]) {
                    low[fr.v] = idx[w];
                }
            } else {
                int v = fr.v;
                call.pop_back();
                if (!call.empty() && low[v] < low[call.back().v]) low[call.back().v] = low[v];
                if (low[v] == idx[v]) {
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        onStack[w] = 0;
                        comp[w] = compCount;
                        if (w == v) break;
                    }
                    ++compCount;
                }
            }
        }
    }
    return {compCount, comp};
}

} // namespace ltlfix::automata
