#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ltlfix/formula.hpp"
#include "ltlfix/lasso.hpp"

namespace ltlfix::automata {

inline constexpr int kDefaultStateCap = 100000;

// Conjunction of literals over the alphabet bits: a valuation v matches iff
// all posMask bits are set in v and no negMask bit is. posMask & negMask = 0.
struct EdgeLabel {
    Valuation posMask = 0;
    Valuation negMask = 0;

    bool matches(Valuation v) const { return (v & posMask) == posMask && (v & negMask) == 0; }
    // Number of concrete valuations matching the label.
    uint64_t concreteCount(int apSize) const;
};

enum class Kind { Buchi, Finite };

// Nondeterministic automaton with symbolic (literal-conjunction) edge labels.
// kind=Buchi: accepts infinite words visiting `accepting` infinitely often.
// kind=Finite: accepts finite words ending in an `accepting` state.
struct NondetAutomaton {
    Kind kind = Kind::Buchi;
    Alphabet alphabet;
    int stateCount = 0;
    std::vector<int> initialStates;
    std::vector<char> accepting; // indexed by state
    std::vector<std::vector<std::pair<EdgeLabel, int>>> edges; // per source state

    bool isAccepting(int s) const { return accepting[static_cast<size_t>(s)] != 0; }
};

// Deterministic finite automaton over concrete valuations. `next` may be
// partial (-1 = no transition); `determinize` always returns a total
// automaton whose added trap state is recorded in `sinkState`.
struct DetAutomaton {
    Alphabet alphabet;
    int stateCount = 0;
    int initialState = 0;
    std::vector<char> finalStates;
    std::vector<int> next; // next[s * valuationCount + v], -1 if absent
    bool minimized = false;
    int sinkState = -1; // unique non-final total trap, -1 if none

    int step(int s, Valuation v) const {
        return next[static_cast<size_t>(s) * alphabet.valuationCount() + v];
    }
    bool acceptsWord(const std::vector<Valuation>& word) const;
};

// Tableau construction to a generalized Büchi automaton, degeneralized with
// a counter. `f` must use core operators only (see normalizeToCore);
// negations are pushed to atoms internally. A fresh pseudo-initial state
// reads the first letter, so edge labels live on edges, not states.
// Throws ResourceError when the state count exceeds `stateCap`.
NondetAutomaton ltlToBuchi(const FormulaPtr& f, const Alphabet& alphabet,
                           int stateCap = kDefaultStateCap);

// Reinterprets accepting states as finite-word final states and prunes
// states that cannot reach an accepting state (dead prefixes count zero).
NondetAutomaton finitize(const NondetAutomaton& buchi);

// Subset construction over concrete valuations; total via sink completion.
// The sink is non-final and recorded in `sinkState`.
DetAutomaton determinize(const NondetAutomaton& finite, int stateCap = kDefaultStateCap);

// Hopcroft-style partition refinement; preserves the accepted language and
// totality, drops unreachable states.
DetAutomaton minimize(const DetAutomaton& d);

// True iff the Büchi automaton accepts the infinite word induced by
// (base, loop): some accepting state lies on a reachable product cycle.
bool acceptsLasso(const NondetAutomaton& buchi, const std::vector<Valuation>& base, int loop);

// Language emptiness of a Büchi automaton via SCC analysis.
bool isEmptyLanguage(const NondetAutomaton& buchi);

// Debug export: plain-text states/initial/accepting/edges listing.
std::string exportAutomaton(const NondetAutomaton& a);
std::string exportAutomaton(const DetAutomaton& d);

// Restrict a Büchi automaton to states that can reach a cycle through an
// accepting state. Preserves exactly the accepted language; used to shrink
// the realizability game arena.
NondetAutomaton pruneToLive(const NondetAutomaton& buchi);

} // namespace ltlfix::automata
