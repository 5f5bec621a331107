#pragma once

#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "ltlfix/automaton.hpp"
#include "ltlfix/formula.hpp"
#include "ltlfix/spec.hpp"

namespace ltlfix::analysis {

// Satisfiability via Büchi emptiness: some accepting state on a reachable
// cycle of the tableau automaton.
bool isSat(const FormulaPtr& f, int stateCap = automata::kDefaultStateCap);

enum class Relation { Equivalent, AStrongerThanB, AWeakerThanB, Incomparable };

// Decided by isSat(a && !b) and isSat(b && !a); Equivalent iff both unsat.
Relation classifyRelation(const FormulaPtr& a, const FormulaPtr& b);

std::string relationName(Relation r);

struct RealizabilityVerdict {
    enum class Kind { Realizable, Unrealizable, Unknown };
    Kind kind = Kind::Unknown;
    std::string reason; // set for Unknown: timeout, bound-exhausted, backend-failure, ...

    static RealizabilityVerdict realizable() { return {Kind::Realizable, {}}; }
    static RealizabilityVerdict unrealizable() { return {Kind::Unrealizable, {}}; }
    static RealizabilityVerdict unknown(std::string why) {
        return {Kind::Unknown, std::move(why)};
    }
    bool isRealizable() const { return kind == Kind::Realizable; }
    bool isUnrealizable() const { return kind == Kind::Unrealizable; }
    bool isUnknown() const { return kind == Kind::Unknown; }
    std::string toString() const;
};

struct BackendConfig {
    enum class Kind { BuiltinBounded, External };
    Kind kind = Kind::BuiltinBounded;
    int maxBound = 6;            // builtin: largest rejection-visit bound tried
    int stateCap = automata::kDefaultStateCap; // builtin: game automaton size cap
    std::string commandTemplate; // external: command with {formula} {ins} {outs} or {file}
    int timeoutSeconds = 60;     // external: per-call wall clock limit

    // Parses "builtin:<maxBound>" (or "builtin") and "external:<template>".
    static BackendConfig parse(const std::string& text);
    std::string toString() const;
};

// Dispatches to the configured backend. Definite verdicts are sound;
// backend failures come back as unknown, never as exceptions.
RealizabilityVerdict checkRealizability(const Spec& s, const BackendConfig& cfg);

// Two-sided bounded determinacy check, escalating b = 1..maxBound:
// system side solves a bounded-visit safety game on the Büchi automaton of
// !(A -> G) (inputs move first, then outputs); environment side plays the
// symmetric game on the automaton of A -> G. Neither winning within maxBound
// yields unknown(bound-exhausted).
RealizabilityVerdict builtinBoundedRealizability(const Spec& s, int maxBound,
                                                 int stateCap = automata::kDefaultStateCap);

// Serializes the spec per the command template, runs the external tool with
// a timeout, and scans stdout for REALIZABLE/UNREALIZABLE (case-insensitive).
RealizabilityVerdict externalRealizability(const Spec& s, const std::string& commandTemplate,
                                           int timeoutSeconds);

// Shared memo for satisfiability and realizability verdicts, keyed by
// canonical formula/spec text. Thread-safe.
class AnalysisCache {
public:
    bool isSatCached(const FormulaPtr& f, int stateCap = automata::kDefaultStateCap);
    RealizabilityVerdict checkRealizabilityCached(const Spec& s, const BackendConfig& cfg);
    uint64_t backendCalls() const;
    void resetCounters();

private:
    mutable std::mutex mutex_;
    std::unordered_map<std::string, bool> satCache_;
    std::unordered_map<std::string, RealizabilityVerdict> realCache_;
    uint64_t backendCalls_ = 0;
};

} // namespace ltlfix::analysis
