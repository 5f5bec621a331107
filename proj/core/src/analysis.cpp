#include "ltlfix/analysis.hpp"

#include <stdexcept>

namespace ltlfix::analysis {

bool isSat(const FormulaPtr& f, int stateCap) {
    Alphabet alphabet(atomsOf(f));
    automata::NondetAutomaton buchi = automata::ltlToBuchi(f, alphabet, stateCap);
    return !automata::isEmptyLanguage(buchi);
}

Relation classifyRelation(const FormulaPtr& a, const FormulaPtr& b) {
    FormulaPtr notB = Formula::unary(Op::Not, b);
    FormulaPtr notA = Formula::unary(Op::Not, a);
    bool aAndNotB = isSat(Formula::binary(Op::And, a, notB));
    bool bAndNotA = isSat(Formula::binary(Op::And, b, notA));
    if (!aAndNotB && !bAndNotA) return Relation::Equivalent;
    if (!aAndNotB) return Relation::AStrongerThanB; // a -> b valid
    if (!bAndNotA) return Relation::AWeakerThanB;   // b -> a valid
    return Relation::Incomparable;
}

std::string relationName(Relation r) {
    switch (r) {
    case Relation::Equivalent: return "equivalent";
    case Relation::AStrongerThanB: return "stronger";
    case Relation::AWeakerThanB: return "weaker";
    case Relation::Incomparable: return "incomparable";
    }
    return "?";
}

std::string RealizabilityVerdict::toString() const {
    switch (kind) {
    case Kind::Realizable: return "realizable";
    case Kind::Unrealizable: return "unrealizable";
    case Kind::Unknown: return "unknown(" + reason + ")";
    }
    return "?";
}

BackendConfig BackendConfig::parse(const std::string& text) {
    BackendConfig cfg;
    if (text == "builtin" || text.rfind("builtin:", 0) == 0) {
        cfg.kind = Kind::BuiltinBounded;
        if (text.size() > 8 && text[7] == ':') {
            try {
                cfg.maxBound = std::stoi(text.substr(8));
            } catch (const std::exception&) {
                throw std::invalid_argument("bad builtin backend bound in '" + text + "'");
            }
            if (cfg.maxBound < 1) {
                throw std::invalid_argument("backend bound must be >= 1");
            }
        }
        return cfg;
    }
    if (text.rfind("external:", 0) == 0) {
        cfg.kind = Kind::External;
        cfg.commandTemplate = text.substr(9);
        if (cfg.commandTemplate.empty()) {
            throw std::invalid_argument("external backend needs a command template");
        }
        bool hasPlaceholder = cfg.commandTemplate.find("{formula}") != std::string::npos ||
                              cfg.commandTemplate.find("{file}") != std::string::npos;
        if (!hasPlaceholder) {
            throw std::invalid_argument(
                "external backend template needs an input placeholder {formula} or {file}");
        }
        return cfg;
    }
    throw std::invalid_argument("unknown backend spec '" + text +
                                "' (expected builtin:<bound> or external:<template>)");
}

std::string BackendConfig::toString() const {
    if (kind == Kind::BuiltinBounded) return "builtin:" + std::to_string(maxBound);
    return "external:" + commandTemplate;
}

RealizabilityVerdict checkRealizability(const Spec& s, const BackendConfig& cfg) {
    try {
        if (cfg.kind == BackendConfig::Kind::BuiltinBounded) {
            return builtinBoundedRealizability(s, cfg.maxBound, cfg.stateCap);
        }
        return externalRealizability(s, cfg.commandTemplate, cfg.timeoutSeconds);
    } catch (const ResourceError& e) {
        return RealizabilityVerdict::unknown(std::string("resource-cap: ") + e.what());
    } catch (const BackendError& e) {
        return RealizabilityVerdict::unknown(std::string("backend-failure: ") + e.what());
    }
}

bool AnalysisCache::isSatCached(const FormulaPtr& f, int stateCap) {
    std::string key = print(f);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (auto it = satCache_.find(key); it != satCache_.end()) return it->second;
    }
    bool result = isSat(f, stateCap);
    std::lock_guard<std::mutex> lock(mutex_);
    return satCache_.try_emplace(std::move(key), result).first->second;
}

RealizabilityVerdict AnalysisCache::checkRealizabilityCached(const Spec& s,
                                                             const BackendConfig& cfg) {
    std::string key = s.canonicalKey() + "\x1f" + cfg.toString();
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (auto it = realCache_.find(key); it != realCache_.end()) return it->second;
    }
    RealizabilityVerdict v = checkRealizability(s, cfg);
    std::lock_guard<std::mutex> lock(mutex_);
    ++backendCalls_;
    return realCache_.try_emplace(std::move(key), v).first->second;
}

uint64_t AnalysisCache::backendCalls() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return backendCalls_;
}

void AnalysisCache::resetCounters() {
    std::lock_guard<std::mutex> lock(mutex_);
    backendCalls_ = 0;
}

} // namespace ltlfix::analysis
